//! Lattice-point combinatorics of the invariant semigroup `ker(wt)` in N^n:
//! Hilbert bases, weighted module generators, invariant monomial ideals,
//! colon modules, and radicals as support antichains.

use serde::Serialize;

use crate::error::{Bounds, Error, Result};
use crate::group::{AbelianGroup, Character};

/// A monomial of `k[x_1..x_n]` as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub exp: Vec<u32>,
}

impl Monomial {
    pub fn new(exp: Vec<u32>) -> Self {
        Monomial { exp }
    }

    pub fn zero(n: usize) -> Self {
        Monomial { exp: vec![0; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.exp.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exp.iter().sum()
    }

    /// Bitmask of coordinates with positive exponent.
    pub fn support_mask(&self) -> u64 {
        self.exp
            .iter()
            .enumerate()
            .fold(0, |m, (i, &e)| if e > 0 { m | 1 << i } else { m })
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exp.iter().zip(&other.exp).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        Monomial {
            exp: self
                .exp
                .iter()
                .zip(&other.exp)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise max.
    pub fn join(&self, other: &Monomial) -> Monomial {
        Monomial {
            exp: self
                .exp
                .iter()
                .zip(&other.exp)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Componentwise `max(self - other, 0)`.
    pub fn clamped_sub(&self, other: &Monomial) -> Monomial {
        Monomial {
            exp: self
                .exp
                .iter()
                .zip(&other.exp)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial {
            exp: self.exp.iter().map(|e| e * k).collect(),
        }
    }
}

/// Keep only the minimal elements under componentwise divisibility,
/// deduplicated, sorted by (degree, lex). Ties in minimalization are broken
/// by this order, which makes every generator list canonical.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| (a.degree(), &a.exp).cmp(&(b.degree(), &b.exp)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

/// Minimal monomial generators of every weight class, computed in one sweep
/// of the box `prod [0, o_i]` where `o_i` is the order of `wt(x_i)`.
///
/// The sweep runs in lexicographic order with staircase pruning: once a
/// prefix is divisible by an already-found invariant generator, the whole
/// subtree is reducible. Lexicographic order guarantees every divisor is
/// discovered before anything it divides, so the growing Hilbert basis is
/// always a sound pruning filter.
pub struct WeightClasses<'g> {
    pub group: &'g AbelianGroup,
    hilbert: Vec<Monomial>,
    by_char: Vec<Vec<Monomial>>,
}

impl<'g> WeightClasses<'g> {
    pub fn new(group: &'g AbelianGroup, bounds: &Bounds) -> Result<Self> {
        let n = group.n;
        let points = (0..n)
            .map(|i| group.var_order(i) as u128 + 1)
            .try_fold(1u128, |acc, o| acc.checked_mul(o))
            .unwrap_or(u128::MAX);
        if points > bounds.max_box_points {
            return Err(Error::BoxTooLarge {
                points,
                bound: bounds.max_box_points,
            });
        }

        let mut sweep = Sweep {
            group,
            orders: (0..n).map(|i| group.var_order(i) as u32).collect(),
            hilbert: Vec::new(),
            by_char: vec![Vec::new(); group.num_chars()],
            m: vec![0; n],
        };
        let mut chi0 = vec![0u64; group.snf.len()];
        sweep.run(0, &mut chi0);

        let mut by_char = sweep.by_char;
        let trivial = group.char_index(&group.trivial_char());
        by_char[trivial] = vec![Monomial::zero(n)];
        Ok(WeightClasses {
            group,
            hilbert: sweep.hilbert,
            by_char,
        })
    }

    /// Minimal algebra generators of the invariant ring.
    pub fn hilbert_basis(&self) -> &[Monomial] {
        &self.hilbert
    }

    /// Minimal monomials of the given weight. For the trivial weight this is
    /// the module generator {0} of S over itself, not the Hilbert basis.
    pub fn min_gens(&self, w: &Character) -> &[Monomial] {
        &self.by_char[self.group.char_index(w)]
    }

    pub fn min_gens_by_index(&self, idx: usize) -> &[Monomial] {
        &self.by_char[idx]
    }

    /// Minimal invariant monomials that dominate `base`: `base + t` over the
    /// minimal monomials `t` of the complementary weight class.
    pub fn invariant_cover(&self, base: &Monomial) -> impl Iterator<Item = Monomial> + '_ {
        let w = self.group.weight_of_monomial(&base.exp);
        let neg = self.group.char_neg(&w);
        let base = base.clone();
        self.min_gens(&neg).iter().map(move |t| base.add(t))
    }
}

struct Sweep<'g> {
    group: &'g AbelianGroup,
    orders: Vec<u32>,
    hilbert: Vec<Monomial>,
    by_char: Vec<Vec<Monomial>>,
    m: Vec<u32>,
}

impl Sweep<'_> {
    fn prefix_reducible(&self, upto: usize) -> bool {
        self.hilbert.iter().any(|h| {
            h.exp[upto + 1..].iter().all(|&e| e == 0)
                && h.exp[..=upto].iter().zip(&self.m).all(|(a, b)| a <= b)
        })
    }

    fn run(&mut self, i: usize, chi: &mut Vec<u64>) {
        let n = self.group.n;
        let order = self.orders[i];
        for v in 0..=order {
            self.m[i] = v;
            if v > 0 {
                self.group.char_add_assign(chi, self.group.var_weight(i));
            }
            if !self.prefix_reducible(i) {
                if i + 1 == n {
                    if self.m.iter().any(|&e| e > 0) {
                        let mono = Monomial::new(self.m.clone());
                        if chi.iter().all(|&c| c == 0) {
                            self.hilbert.push(mono);
                        } else {
                            self.by_char[self.group.char_index_of(chi)].push(mono);
                        }
                    }
                } else {
                    self.run(i + 1, chi);
                }
            }
        }
        self.group
            .char_sub_scaled_assign(chi, self.group.var_weight(i), order as u64);
        self.m[i] = 0;
    }
}

/// An invariant monomial ideal of S, generated by a minimal antichain of
/// weight-zero monomials. The empty list is the zero ideal and the single
/// zero vector is the unit ideal. Generator support masks are cached for
/// fast membership tests.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantIdeal {
    pub n: usize,
    gens: Vec<Monomial>,
    #[serde(skip)]
    masks: Vec<u64>,
}

impl PartialEq for InvariantIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.gens == other.gens
    }
}

impl Eq for InvariantIdeal {}

impl InvariantIdeal {
    pub fn from_gens(n: usize, gens: Vec<Monomial>) -> Self {
        let gens = minimalize(gens);
        let masks = gens.iter().map(|g| g.support_mask()).collect();
        InvariantIdeal { n, gens, masks }
    }

    pub fn unit(n: usize) -> Self {
        InvariantIdeal::from_gens(n, vec![Monomial::zero(n)])
    }

    pub fn zero(n: usize) -> Self {
        InvariantIdeal {
            n,
            gens: Vec::new(),
            masks: Vec::new(),
        }
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Membership of an invariant monomial: some generator divides it, and
    /// the quotient is then automatically invariant.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.contains_masked(m, m.support_mask())
    }

    /// Membership with the support mask of `m` already known.
    pub fn contains_masked(&self, m: &Monomial, mask: u64) -> bool {
        self.gens
            .iter()
            .zip(&self.masks)
            .any(|(g, &gm)| gm & mask == gm && g.divides(m))
    }
}

/// Membership with the invariance precondition checked.
pub fn ideal_membership(
    group: &AbelianGroup,
    ideal: &InvariantIdeal,
    m: &Monomial,
) -> Result<bool> {
    if !group.weight_of_monomial(&m.exp).is_trivial() {
        return Err(Error::NotInvariant(m.exp.clone()));
    }
    Ok(ideal.contains(m))
}

/// A finite generating antichain of the monomials of one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGens {
    pub weight: Character,
    pub gens: Vec<Monomial>,
}

/// The colon module `(K : h)` = invariant monomials `s` with `s + h` in the
/// submodule generated by `K`. Each generator `u` of `K` contributes the
/// minimal invariant monomials dominating `max(u - h, 0)`.
pub fn colon_module(
    classes: &WeightClasses,
    k: &WeightedGens,
    h: &Monomial,
) -> Result<InvariantIdeal> {
    let group = classes.group;
    if group.weight_of_monomial(&h.exp) != k.weight {
        return Err(Error::WeightMismatch);
    }
    let mut gens = Vec::new();
    for u in &k.gens {
        let c = u.clamped_sub(h);
        gens.extend(classes.invariant_cover(&c));
    }
    Ok(InvariantIdeal::from_gens(group.n, gens))
}

/// Intersection of two invariant ideals. The join of two invariant
/// generators need not be invariant, so each pairwise join is completed to
/// the minimal invariant monomials dominating it.
pub fn intersect_ideals(
    classes: &WeightClasses,
    a: &InvariantIdeal,
    b: &InvariantIdeal,
) -> InvariantIdeal {
    if a.is_unit() {
        return b.clone();
    }
    if b.is_unit() {
        return a.clone();
    }
    let mut gens = Vec::new();
    for u in a.gens() {
        for v in b.gens() {
            gens.extend(classes.invariant_cover(&u.join(v)));
        }
    }
    InvariantIdeal::from_gens(a.n, gens)
}

fn minimalize_masks(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for m in masks {
        if !kept.iter().any(|k| k & m == *k) {
            kept.push(m);
        }
    }
    kept
}

/// A radical invariant-monomial ideal as an antichain of supports: an
/// invariant monomial lies in the radical iff its support contains a member.
/// `{emptyset}` is the unit ideal; the empty family is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalFamily {
    pub n: usize,
    pub supports: Vec<u64>,
}

impl RadicalFamily {
    pub fn from_supports(n: usize, supports: Vec<u64>) -> Self {
        RadicalFamily {
            n,
            supports: minimalize_masks(supports),
        }
    }

    pub fn unit(n: usize) -> Self {
        RadicalFamily {
            n,
            supports: vec![0],
        }
    }

    pub fn zero(n: usize) -> Self {
        RadicalFamily {
            n,
            supports: Vec::new(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.supports.first() == Some(&0)
    }

    pub fn is_zero(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn contains_support(&self, mask: u64) -> bool {
        self.supports.iter().any(|&s| s | mask == mask)
    }

    pub fn member(&self, m: &Monomial) -> bool {
        self.contains_support(m.support_mask())
    }

    fn check_dim(&self, other: &RadicalFamily) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Ideal intersection: pairwise unions of supports, minimalized.
    pub fn intersect(&self, other: &RadicalFamily) -> Result<RadicalFamily> {
        self.check_dim(other)?;
        let mut supports = Vec::with_capacity(self.supports.len() * other.supports.len());
        for &a in &self.supports {
            for &b in &other.supports {
                supports.push(a | b);
            }
        }
        Ok(RadicalFamily::from_supports(self.n, supports))
    }

    /// Ideal sum: union of the antichains, minimalized.
    pub fn sum(&self, other: &RadicalFamily) -> Result<RadicalFamily> {
        self.check_dim(other)?;
        let mut supports = self.supports.clone();
        supports.extend(&other.supports);
        Ok(RadicalFamily::from_supports(self.n, supports))
    }

    /// Whether `other` is contained in `self` as ideals: every support of
    /// `other` dominates a support of `self`.
    pub fn contains(&self, other: &RadicalFamily) -> Result<bool> {
        self.check_dim(other)?;
        Ok(other.supports.iter().all(|&s| self.contains_support(s)))
    }

    pub fn equal(&self, other: &RadicalFamily) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.supports == other.supports)
    }

    /// Supports present in exactly one of the two families, for diff reports.
    pub fn symmetric_difference(&self, other: &RadicalFamily) -> Vec<u64> {
        let mut diff: Vec<u64> = self
            .supports
            .iter()
            .filter(|s| !other.supports.contains(s))
            .chain(other.supports.iter().filter(|s| !self.supports.contains(s)))
            .copied()
            .collect();
        diff.sort_by_key(|m| (m.count_ones(), *m));
        diff
    }
}

/// The radical of an invariant ideal: the minimal supports of its
/// generators. For invariant monomials this is exact: `m` has a power in
/// the ideal iff some generator's support is contained in `supp(m)`.
pub fn radical(ideal: &InvariantIdeal) -> RadicalFamily {
    RadicalFamily::from_supports(
        ideal.n,
        ideal.gens().iter().map(|g| g.support_mask()).collect(),
    )
}
