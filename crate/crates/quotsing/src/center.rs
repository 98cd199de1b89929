//! The contraction-algebra side: ideals `bar I_chi` and their radicals,
//! conductors between module summands, the center and reduced center of the
//! contraction algebra degree by degree, restricted subsystems, and a dense
//! linear-algebra oracle for cross-checking the block reduction.
//!
//! Everything is monomial-spanned, so a central element decouples into one
//! constraint system per invariant monomial `m`: characters are vertices,
//! and an edge joins `chi, chi'` when `m` lies outside the symmetric
//! conductor. Blocks of that graph carry one free coefficient each; a block
//! survives in the reduced center iff some vertex keeps `m` outside the
//! radical `I_chi`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Bounds, Error, Result};
use crate::group::{AbelianGroup, Character};
use crate::monomial::{
    colon_module, intersect_ideals, minimalize, radical, InvariantIdeal, Monomial, RadicalFamily,
    WeightClasses, WeightedGens,
};

/// Per-character ideal data plus the cached weight classes of the group.
pub struct CenterTables<'g> {
    pub group: &'g AbelianGroup,
    pub classes: WeightClasses<'g>,
    chars: Vec<Character>,
    inv_idx: Vec<usize>,
    bar: Vec<InvariantIdeal>,
    rad: Vec<RadicalFamily>,
    rad_meet: RadicalFamily,
}

/// Center Hilbert data per total degree in R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterHilbert {
    pub max_degree: u32,
    pub dim_z: Vec<usize>,
    pub dim_r: Vec<usize>,
}

/// Full per-monomial block data, for the subsystem and restriction checks.
pub struct BlockScan {
    pub monomials: Vec<Monomial>,
    /// Per monomial: blocks of active characters, as global character
    /// indices, each block sorted, blocks sorted by first member.
    pub blocks: Vec<Vec<Vec<u16>>>,
    /// Per monomial, per block: whether the block carries a non-nilpotent
    /// coefficient (some member keeps the monomial outside its radical).
    pub live: Vec<Vec<bool>>,
}

/// All invariant monomials of total degree at most `max_degree`, ordered by
/// (degree, lex).
pub fn invariant_monomials_up_to(group: &AbelianGroup, max_degree: u32) -> Vec<Monomial> {
    let n = group.n;
    let mut out = Vec::new();
    let mut m = vec![0u32; n];
    let mut chi = vec![0u64; group.snf.len()];
    fn rec(
        group: &AbelianGroup,
        i: usize,
        budget: u32,
        m: &mut Vec<u32>,
        chi: &mut Vec<u64>,
        out: &mut Vec<Monomial>,
    ) {
        if i == group.n {
            if chi.iter().all(|&c| c == 0) {
                out.push(Monomial::new(m.clone()));
            }
            return;
        }
        for v in 0..=budget {
            m[i] = v;
            if v > 0 {
                group.char_add_assign(chi, group.var_weight(i));
            }
            rec(group, i + 1, budget - v, m, chi, out);
        }
        group.char_sub_scaled_assign(chi, group.var_weight(i), budget as u64);
        m[i] = 0;
    }
    rec(group, 0, max_degree, &mut m, &mut chi, &mut out);
    out.sort_by_key(|m| m.degree());
    out
}

impl<'g> CenterTables<'g> {
    pub fn new(group: &'g AbelianGroup, bounds: &Bounds) -> Result<Self> {
        let classes = WeightClasses::new(group, bounds)?;
        let chars: Vec<Character> = group.characters().collect();
        let inv_idx: Vec<usize> = chars
            .iter()
            .map(|c| group.char_index(&group.char_neg(c)))
            .collect();
        let bar: Vec<InvariantIdeal> = (0..chars.len())
            .into_par_iter()
            .map(|idx| {
                if idx == 0 {
                    InvariantIdeal::unit(group.n)
                } else {
                    InvariantIdeal::from_gens(
                        group.n,
                        pair_products(
                            classes.min_gens_by_index(inv_idx[idx]),
                            classes.min_gens_by_index(idx),
                        ),
                    )
                }
            })
            .collect();
        let rad: Vec<RadicalFamily> = bar.iter().map(radical).collect();
        let rad_meet = rad
            .iter()
            .skip(1)
            .fold(RadicalFamily::unit(group.n), |acc, f| {
                acc.intersect(f).expect("same dimension")
            });
        Ok(CenterTables {
            group,
            classes,
            chars,
            inv_idx,
            bar,
            rad,
            rad_meet,
        })
    }

    /// `bar I_chi = e_chi Lambda e Lambda e_chi` as an ideal of S.
    pub fn bar_ideal(&self, chi: &Character) -> &InvariantIdeal {
        &self.bar[self.group.char_index(chi)]
    }

    pub fn bar_ideal_by_index(&self, idx: usize) -> &InvariantIdeal {
        &self.bar[idx]
    }

    /// `I_chi`, the radical of `bar I_chi`.
    pub fn rad_family(&self, chi: &Character) -> &RadicalFamily {
        &self.rad[self.group.char_index(chi)]
    }

    pub fn rad_family_by_index(&self, idx: usize) -> &RadicalFamily {
        &self.rad[idx]
    }

    /// The reduced-center family: the intersection of all `I_chi`.
    pub fn reduced_center_family(&self) -> &RadicalFamily {
        &self.rad_meet
    }

    /// Hom-space generators from the summand of `src` to the one of `tgt`:
    /// the minimal monomials of weight `chi_tgt^{-1} chi_src`.
    fn hom_gens(&self, tgt: usize, src: usize) -> &[Monomial] {
        let w = self
            .group
            .char_add(&self.chars[self.inv_idx[tgt]], &self.chars[src]);
        self.classes.min_gens(&w)
    }

    /// Generators of the part of Hom factoring through projectives:
    /// products of the weight-(chi_tgt^{-1}) and weight-(chi_src) minimal
    /// monomials.
    fn kernel_gens(&self, tgt: usize, src: usize) -> Vec<Monomial> {
        minimalize(pair_products(
            self.classes.min_gens_by_index(self.inv_idx[tgt]),
            self.classes.min_gens_by_index(src),
        ))
    }

    /// The conductor C(chi, chi'): invariant `s` whose multiplication sends
    /// every hom `M_src -> M_tgt` into the projective part. The diagonal
    /// conductor is the unit ideal since End_S(M_chi) = S is commutative.
    pub fn conductor(&self, tgt: usize, src: usize) -> InvariantIdeal {
        assert!(
            tgt != 0 && src != 0,
            "conductors live between nontrivial characters"
        );
        let n = self.group.n;
        if tgt == src {
            return InvariantIdeal::unit(n);
        }
        let homs = self.hom_gens(tgt, src);
        if homs.is_empty() {
            return InvariantIdeal::unit(n);
        }
        let k = WeightedGens {
            weight: self
                .group
                .char_add(&self.chars[self.inv_idx[tgt]], &self.chars[src]),
            gens: self.kernel_gens(tgt, src),
        };
        homs.iter().fold(InvariantIdeal::unit(n), |acc, h| {
            let col = colon_module(&self.classes, &k, h).expect("hom weight matches");
            intersect_ideals(&self.classes, &acc, &col)
        })
    }

    /// The symmetric conductor `C(a,b) meet C(b,a)` governing the centrality
    /// constraint between two vertices.
    pub fn conductor_sym(&self, a: usize, b: usize) -> InvariantIdeal {
        intersect_ideals(&self.classes, &self.conductor(a, b), &self.conductor(b, a))
    }

    /// Reconstruction verdict: the reduced center family against the
    /// stabilizer-route singular locus.
    pub fn verify_reconstruction(&self, sing: &RadicalFamily) -> (bool, Vec<u64>) {
        let ok = self.rad_meet.equal(sing).unwrap_or(false);
        if ok {
            (true, Vec::new())
        } else {
            (false, self.rad_meet.symmetric_difference(sing))
        }
    }

    /// Every `I_chi` contains the reduced singular locus ideal.
    pub fn char_radicals_contain_locus(&self, sing: &RadicalFamily) -> bool {
        self.rad
            .iter()
            .skip(1)
            .all(|f| f.contains(sing).unwrap_or(false))
    }

    /// Hilbert function of `End_CM(M_chi) = S / bar I_chi` up to `max_degree`.
    pub fn end_hilbert(&self, idx: usize, max_degree: u32) -> Vec<usize> {
        let monos = invariant_monomials_up_to(self.group, max_degree);
        let mut dims = vec![0usize; max_degree as usize + 1];
        for m in &monos {
            if !self.bar[idx].contains(m) {
                dims[m.degree() as usize] += 1;
            }
        }
        dims
    }

    /// Per-monomial block partitions over the given vertex subset (all
    /// nontrivial characters when `None`).
    pub fn block_scan(&self, max_degree: u32, subset: Option<&[usize]>) -> BlockScan {
        let group = self.group;
        let monomials = invariant_monomials_up_to(group, max_degree);
        let vertices: Vec<usize> = match subset {
            Some(s) => {
                let mut v: Vec<usize> = s.iter().copied().filter(|&c| c != 0).collect();
                v.sort();
                v.dedup();
                v
            }
            None => (1..group.num_chars()).collect(),
        };

        // Active monomial indices per vertex.
        let masks: Vec<u64> = monomials.iter().map(|m| m.support_mask()).collect();
        let act_by_vertex: Vec<Vec<u32>> = vertices
            .par_iter()
            .map(|&c| {
                monomials
                    .iter()
                    .zip(&masks)
                    .enumerate()
                    .filter(|(_, (m, &mask))| !self.bar[c].contains_masked(m, mask))
                    .map(|(i, _)| i as u32)
                    .collect()
            })
            .collect();

        let mut active: Vec<Vec<u16>> = vec![Vec::new(); monomials.len()];
        for (vi, list) in act_by_vertex.iter().enumerate() {
            for &idx in list {
                active[idx as usize].push(vertices[vi] as u16);
            }
        }

        // Candidate pairs: both vertices active at a common monomial.
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if !sorted_intersection(&act_by_vertex[i], &act_by_vertex[j]).is_empty() {
                    pairs.push((i, j));
                }
            }
        }

        let pair_edges: Vec<Vec<u32>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let shared = sorted_intersection(&act_by_vertex[i], &act_by_vertex[j]);
                self.pair_edge_sweep(vertices[i], vertices[j], &monomials, &shared)
            })
            .collect();

        let mut edges: Vec<Vec<(u16, u16)>> = vec![Vec::new(); monomials.len()];
        for (p, (i, j)) in pairs.iter().enumerate() {
            let (a, b) = (vertices[*i] as u16, vertices[*j] as u16);
            for &idx in &pair_edges[p] {
                edges[idx as usize].push((a, b));
            }
        }

        let results: Vec<(Vec<Vec<u16>>, Vec<bool>)> = (0..monomials.len())
            .into_par_iter()
            .map(|idx| self.partition_one(&monomials[idx], &active[idx], &edges[idx]))
            .collect();

        let mut blocks = Vec::with_capacity(monomials.len());
        let mut live = Vec::with_capacity(monomials.len());
        for (b, l) in results {
            blocks.push(b);
            live.push(l);
        }
        BlockScan {
            monomials,
            blocks,
            live,
        }
    }

    fn partition_one(
        &self,
        m: &Monomial,
        active: &[u16],
        edges: &[(u16, u16)],
    ) -> (Vec<Vec<u16>>, Vec<bool>) {
        let local = |c: u16| active.binary_search(&c).expect("edge endpoint is active");
        let mut parent: Vec<usize> = (0..active.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in edges {
            let (ra, rb) = (find(&mut parent, local(a)), find(&mut parent, local(b)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: HashMap<usize, Vec<u16>> = HashMap::new();
        for (i, &c) in active.iter().enumerate() {
            groups.entry(find(&mut parent, i)).or_default().push(c);
        }
        let mut blocks: Vec<Vec<u16>> = groups.into_values().collect();
        blocks.sort_by_key(|b| b[0]);
        let live = blocks
            .iter()
            .map(|b| b.iter().any(|&c| !self.rad[c as usize].member(m)))
            .collect();
        (blocks, live)
    }

    /// Sweep one vertex pair over the monomials where both are active, in
    /// degree order. Membership in the symmetric conductor is an ideal
    /// condition, so confirmed members prune everything they divide; for
    /// edge monomials a move-to-front pass over the hom generators finds a
    /// witness `h` with `m + h` outside the projective part.
    fn pair_edge_sweep(
        &self,
        a: usize,
        b: usize,
        monomials: &[Monomial],
        shared: &[u32],
    ) -> Vec<u32> {
        let homs_ab: Vec<Monomial> = self.hom_gens(a, b).to_vec();
        let homs_ba: Vec<Monomial> = self.hom_gens(b, a).to_vec();
        let k_ab = MaskedGens::new(self.kernel_gens(a, b));
        let k_ba = MaskedGens::new(self.kernel_gens(b, a));
        let mut mtf_ab: Vec<usize> = (0..homs_ab.len()).collect();
        let mut mtf_ba: Vec<usize> = (0..homs_ba.len()).collect();
        let mut confirmed: Vec<Monomial> = Vec::new();
        let mut out = Vec::new();
        for &idx in shared {
            let m = &monomials[idx as usize];
            if confirmed.iter().any(|c| c.divides(m)) {
                continue;
            }
            if witness_outside(m, &homs_ab, &k_ab, &mut mtf_ab)
                || witness_outside(m, &homs_ba, &k_ba, &mut mtf_ba)
            {
                out.push(idx);
            } else {
                confirmed.push(m.clone());
            }
        }
        out
    }

    /// Center and reduced-center dimensions per degree, with the
    /// per-monomial consistency check: away from the intersected radical a
    /// monomial must carry exactly one live block, inside it none.
    pub fn center_hilbert(&self, max_degree: u32) -> Result<CenterHilbert> {
        let scan = self.block_scan(max_degree, None);
        let mut dim_z = vec![0usize; max_degree as usize + 1];
        let mut dim_r = vec![0usize; max_degree as usize + 1];
        for (i, m) in scan.monomials.iter().enumerate() {
            let d = m.degree() as usize;
            let nl = scan.live[i].iter().filter(|&&l| l).count();
            dim_z[d] += scan.blocks[i].len();
            dim_r[d] += nl;
            let expected = usize::from(!self.rad_meet.member(m));
            if nl != expected {
                return Err(Error::CenterConsistency {
                    monomial: m.exp.clone(),
                    live: nl,
                    expected,
                });
            }
        }
        Ok(CenterHilbert {
            max_degree,
            dim_z,
            dim_r,
        })
    }

    /// The same block computation restricted to a subset of nontrivial
    /// characters (the summands of `M = (+)_{chi in T} M_chi`). Ideals and
    /// conductors are unchanged: factoring through add(S) does not depend
    /// on the ambient sum.
    pub fn subsystem_center(&self, subset: &[usize], max_degree: u32) -> Result<CenterHilbert> {
        if subset.iter().all(|&c| c == 0) {
            return Err(Error::EmptySubset);
        }
        let scan = self.block_scan(max_degree, Some(subset));
        let mut dim_z = vec![0usize; max_degree as usize + 1];
        let mut dim_r = vec![0usize; max_degree as usize + 1];
        for (i, m) in scan.monomials.iter().enumerate() {
            let d = m.degree() as usize;
            dim_z[d] += scan.blocks[i].len();
            dim_r[d] += scan.live[i].iter().filter(|&&l| l).count();
        }
        Ok(CenterHilbert {
            max_degree,
            dim_z,
            dim_r,
        })
    }

    /// Restriction compatibility for nested subsets `small <= big`: dropping
    /// coordinates outside `small` must send central classes to central
    /// classes, i.e. per monomial every block over `small` sits inside a
    /// single block over `big`.
    pub fn restriction_check(
        &self,
        small: &[usize],
        big: &[usize],
        max_degree: u32,
    ) -> Result<bool> {
        if small.iter().all(|&c| c == 0) || big.iter().all(|&c| c == 0) {
            return Err(Error::EmptySubset);
        }
        if !small.iter().all(|c| big.contains(c)) {
            return Err(Error::MalformedInput(
                "restriction_check requires nested character subsets".into(),
            ));
        }
        let s_small = self.block_scan(max_degree, Some(small));
        let s_big = self.block_scan(max_degree, Some(big));
        for i in 0..s_small.monomials.len() {
            let mut big_block_of: HashMap<u16, usize> = HashMap::new();
            for (bi, block) in s_big.blocks[i].iter().enumerate() {
                for &c in block {
                    big_block_of.insert(c, bi);
                }
            }
            for block in &s_small.blocks[i] {
                let target = big_block_of[&block[0]];
                if block.iter().any(|c| big_block_of[c] != target) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Negative-control hook: drop one generator from the ideal of the
    /// `pos`-th nontrivial character and rebuild the radical data, so a
    /// deliberately wrong table can be driven through the verify suite.
    pub fn corrupt_bar_ideal(&mut self, pos: usize) {
        let nc = self.group.num_chars();
        if nc <= 1 {
            return;
        }
        let idx = 1 + pos % (nc - 1);
        let mut gens = self.bar[idx].gens().to_vec();
        gens.pop();
        self.bar[idx] = InvariantIdeal::from_gens(self.group.n, gens);
        self.rad = self.bar.iter().map(radical).collect();
        self.rad_meet = self
            .rad
            .iter()
            .skip(1)
            .fold(RadicalFamily::unit(self.group.n), |acc, f| {
                acc.intersect(f).expect("same dimension")
            });
    }

    /// Dense oracle: materialize the contraction algebra as monomial Hom
    /// classes up to degree `max_degree + 1`, and per degree count the
    /// solutions of the commutator system against the idempotents and the
    /// arrow classes (which generate the algebra). Exact integer
    /// elimination; every row has at most two nonzero entries.
    pub fn dense_center_oracle(&self, max_degree: u32, bounds: &Bounds) -> Result<Vec<usize>> {
        let group = self.group;
        if group.order() as u64 > bounds.oracle_max_order || max_degree > bounds.oracle_max_degree {
            return Err(Error::ScaleExceeded {
                max_order: bounds.oracle_max_order,
                max_degree: bounds.oracle_max_degree,
            });
        }
        let nc = group.num_chars();
        let n = group.n;
        let top = max_degree + 1;

        // Every monomial to degree top, bucketed by weight class.
        let mut by_class: Vec<Vec<Monomial>> = vec![Vec::new(); nc];
        let mut m = vec![0u32; n];
        fn rec(
            group: &AbelianGroup,
            i: usize,
            budget: u32,
            m: &mut Vec<u32>,
            by_class: &mut [Vec<Monomial>],
        ) {
            if i == group.n {
                let w = group.weight_of_monomial(m);
                by_class[group.char_index(&w)].push(Monomial::new(m.clone()));
                return;
            }
            for v in 0..=budget {
                m[i] = v;
                rec(group, i + 1, budget - v, m, by_class);
            }
            m[i] = 0;
        }
        rec(group, 0, top, &mut m, &mut by_class);

        let mut kernel: HashMap<(usize, usize), Vec<Monomial>> = HashMap::new();
        for a in 1..nc {
            for b in 1..nc {
                kernel.insert((a, b), self.kernel_gens(a, b));
            }
        }

        // Basis classes (tgt, src, monomial) per degree.
        let mut basis: Vec<Vec<(usize, usize, Monomial)>> = vec![Vec::new(); top as usize + 1];
        for a in 1..nc {
            for b in 1..nc {
                let w = group.char_add(&self.chars[self.inv_idx[a]], &self.chars[b]);
                let widx = group.char_index(&w);
                let k = &kernel[&(a, b)];
                for mono in &by_class[widx] {
                    if !k.iter().any(|g| g.divides(mono)) {
                        basis[mono.degree() as usize].push((a, b, mono.clone()));
                    }
                }
            }
        }
        let index: Vec<ClassIndex> = basis
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, (a, b, m))| ((*a, *b, m.exp.clone()), i))
                    .collect()
            })
            .collect();

        // Surviving arrow classes.
        let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
        for src in 1..nc {
            for i in 0..n {
                let tgt_chr = group.char_sub(&self.chars[src], group.var_weight(i));
                let tgt = group.char_index(&tgt_chr);
                if tgt == 0 {
                    continue;
                }
                let mut unit = Monomial::zero(n);
                unit.exp[i] = 1;
                if !kernel[&(tgt, src)].iter().any(|g| g.divides(&unit)) {
                    arrows.push((tgt, src, i));
                }
            }
        }

        let mut dims = Vec::with_capacity(max_degree as usize + 1);
        for dd in 0..=max_degree as usize {
            let unknowns = &basis[dd];
            let mut rows: Vec<Vec<i128>> = Vec::new();
            // Commutation with idempotents kills off-diagonal classes.
            for (j, (a, b, _)) in unknowns.iter().enumerate() {
                if a != b {
                    let mut row = vec![0i128; unknowns.len()];
                    row[j] = 1;
                    rows.push(row);
                }
            }
            // Commutation with each arrow class, one row per product class.
            let mut arrow_rows: HashMap<(usize, usize), Vec<(usize, i128)>> = HashMap::new();
            for (j, (a, b, mono)) in unknowns.iter().enumerate() {
                for (ar, &(tgt, src, i)) in arrows.iter().enumerate() {
                    let mut f = mono.clone();
                    f.exp[i] += 1;
                    if *b == tgt {
                        if let Some(&ridx) = index[dd + 1].get(&(*a, src, f.exp.clone())) {
                            arrow_rows.entry((ar, ridx)).or_default().push((j, 1));
                        }
                    }
                    if *a == src {
                        if let Some(&ridx) = index[dd + 1].get(&(tgt, *b, f.exp.clone())) {
                            arrow_rows.entry((ar, ridx)).or_default().push((j, -1));
                        }
                    }
                }
            }
            for entries in arrow_rows.into_values() {
                let mut row = vec![0i128; unknowns.len()];
                for (j, c) in entries {
                    row[j] += c;
                }
                if row.iter().any(|&e| e != 0) {
                    rows.push(row);
                }
            }
            dims.push(unknowns.len() - rank_dense(rows, unknowns.len()));
        }
        Ok(dims)
    }
}

fn pair_products(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for u in a {
        for v in b {
            out.push(u.add(v));
        }
    }
    out
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

type ClassIndex = HashMap<(usize, usize, Vec<u32>), usize>;

/// A generator list with cached support masks, for fast domination tests on
/// weighted (non-invariant) monomial sets.
struct MaskedGens {
    gens: Vec<Monomial>,
    masks: Vec<u64>,
}

impl MaskedGens {
    fn new(gens: Vec<Monomial>) -> Self {
        let masks = gens.iter().map(|g| g.support_mask()).collect();
        MaskedGens { gens, masks }
    }

    fn dominates(&self, m: &Monomial) -> bool {
        let mask = m.support_mask();
        self.gens
            .iter()
            .zip(&self.masks)
            .any(|(g, &gm)| gm & mask == gm && g.divides(m))
    }
}

/// Does some hom generator `h` witness `m + h` outside the projective part?
/// Successful witnesses move to the front; along a branch the same witness
/// keeps working, so the scan is near-constant amortized.
fn witness_outside(
    m: &Monomial,
    homs: &[Monomial],
    kernel: &MaskedGens,
    mtf: &mut [usize],
) -> bool {
    for pos in 0..mtf.len() {
        let h = &homs[mtf[pos]];
        let f = m.add(h);
        if !kernel.dominates(&f) {
            mtf[..=pos].rotate_right(1);
            return true;
        }
    }
    false
}

/// Rank of an integer matrix by fraction-free elimination. The commutator
/// rows form a network-type matrix (at most two entries, both units), so
/// entries stay small.
fn rank_dense(mut rows: Vec<Vec<i128>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c];
        for r in rank + 1..rows.len() {
            if rows[r][c] != 0 {
                let v = rows[r][c];
                let g = gcd_i128(pivot, v);
                let (pm, vm) = (pivot / g, v / g);
                let pivot_row = rows[rank].clone();
                for (e, &p) in rows[r].iter_mut().zip(&pivot_row) {
                    *e = *e * pm - p * vm;
                }
                let rg = rows[r].iter().fold(0i128, |acc, &e| gcd_i128(acc, e));
                if rg > 1 {
                    for e in rows[r].iter_mut() {
                        *e /= rg;
                    }
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
