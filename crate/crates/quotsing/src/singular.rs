//! The reduced singular locus of Spec(S) through stabilizer pairs: in SL(n)
//! only the identity is a pseudo-reflection, so a point is singular exactly
//! when its isotropy group is nontrivial, and the locus is the union of the
//! fixed subspaces `W_H / (G/H)` over maximal stabilizer pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Character, Subgroup};
use crate::monomial::RadicalFamily;

/// A pair (H, W_H): a closed coordinate set `T` with its pointwise
/// stabilizer, which is the maximal subgroup fixing `span{E_i : i in T}`.
#[derive(Debug, Clone)]
pub struct StabilizerPair {
    pub t_mask: u64,
    pub subgroup: Subgroup,
}

/// Fixed coordinates of the cyclic subgroup generated by one element.
fn fix_mask(group: &AbelianGroup, elem: usize) -> u64 {
    let mut mask = 0u64;
    for (i, &w) in group.weights_of(elem).iter().enumerate() {
        if w == 0 {
            mask |= 1 << i;
        }
    }
    mask
}

/// All closed T with nontrivial stabilizer: the fixed sets of single
/// elements, closed under intersection, deduplicated and sorted.
pub fn stabilizer_pairs(group: &AbelianGroup) -> Vec<StabilizerPair> {
    let mut masks: Vec<u64> = (1..group.order()).map(|e| fix_mask(group, e)).collect();
    masks.sort();
    masks.dedup();
    loop {
        let mut grew = false;
        let len = masks.len();
        for i in 0..len {
            for j in i + 1..len {
                let meet = masks[i] & masks[j];
                if !masks.contains(&meet) {
                    masks.push(meet);
                    grew = true;
                }
            }
        }
        masks.sort();
        masks.dedup();
        if !grew {
            break;
        }
    }
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|t_mask| StabilizerPair {
            t_mask,
            subgroup: group.pointwise_stabilizer(t_mask),
        })
        .collect()
}

/// Maximal T's among the pairs: the irreducible components of the locus.
pub fn components(pairs: &[StabilizerPair]) -> Vec<u64> {
    let mut out: Vec<u64> = pairs
        .iter()
        .map(|p| p.t_mask)
        .filter(|&t| !pairs.iter().any(|p| p.t_mask != t && p.t_mask & t == t))
        .collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

/// The prime radical family of the component `W_H/(G/H)`: invariant
/// monomials touching a coordinate outside T.
pub fn component_ideal(n: usize, t_mask: u64) -> RadicalFamily {
    let supports = (0..n)
        .filter(|&i| t_mask >> i & 1 == 0)
        .map(|i| 1u64 << i)
        .collect();
    RadicalFamily::from_supports(n, supports)
}

/// Reduced singular locus by the stabilizer-pair route; the unit family for
/// a smooth (trivial-group) quotient.
pub fn singular_locus_cst(group: &AbelianGroup) -> RadicalFamily {
    stabilizer_pairs(group)
        .iter()
        .fold(RadicalFamily::unit(group.n), |acc, p| {
            acc.intersect(&component_ideal(group.n, p.t_mask))
                .expect("same ambient dimension")
        })
}

/// Independent route: intersect the component ideals of the per-element
/// fixed sets directly, with no closure step.
pub fn singular_locus_elementwise(group: &AbelianGroup) -> RadicalFamily {
    (1..group.order()).fold(RadicalFamily::unit(group.n), |acc, e| {
        acc.intersect(&component_ideal(group.n, fix_mask(group, e)))
            .expect("same ambient dimension")
    })
}

#[derive(Debug, Clone)]
pub struct MeetResult {
    pub pair: StabilizerPair,
    /// Whether `T meet T'` equals the plain intersection of coordinate sets.
    pub closed: bool,
}

fn is_closed(group: &AbelianGroup, t_mask: u64) -> bool {
    group.fixed_support(&group.pointwise_stabilizer(t_mask)) == t_mask
}

/// The pair attached to two closed coordinate sets: the stabilizer of the
/// intersection and its fixed support. Also checks the ideal identity
/// `I_T + I_{T'} = I_{T meet T'}` at family level.
pub fn meet(group: &AbelianGroup, t1: u64, t2: u64) -> Result<MeetResult> {
    for t in [t1, t2] {
        if !is_closed(group, t) {
            let coords = (0..group.n).filter(|&i| t >> i & 1 == 1).collect();
            return Err(Error::NotClosed(coords));
        }
    }
    let inter = t1 & t2;
    let subgroup = group.pointwise_stabilizer(inter);
    let t_meet = group.fixed_support(&subgroup);
    let lhs = component_ideal(group.n, t1)
        .sum(&component_ideal(group.n, t2))
        .expect("same ambient dimension");
    assert!(
        lhs.equal(&component_ideal(group.n, inter)).unwrap(),
        "component ideal sum identity"
    );
    Ok(MeetResult {
        pair: StabilizerPair {
            t_mask: t_meet,
            subgroup,
        },
        closed: t_meet == inter,
    })
}

/// One class of the set indexing the component cover: a stabilizer pair
/// together with a nontrivial character of H (in H's own SNF coordinates).
#[derive(Debug, Clone, Serialize)]
pub struct TildeClass {
    pub pair_index: usize,
    pub h_snf: Vec<u64>,
    pub h_char: Character,
}

/// For each stabilizer pair, the nontrivial characters of H. Classes are
/// keyed by (T, chi|_H): characters of G with equal restriction coincide.
pub fn tilde_g0(group: &AbelianGroup, pairs: &[StabilizerPair]) -> Vec<TildeClass> {
    let mut out = Vec::new();
    for (pair_index, p) in pairs.iter().enumerate() {
        let hg = group.subgroup_as_group(&p.subgroup);
        for c in hg.characters() {
            if !c.is_trivial() {
                out.push(TildeClass {
                    pair_index,
                    h_snf: hg.snf.clone(),
                    h_char: c,
                });
            }
        }
    }
    out
}

/// JSON fragment of the locus report.
#[derive(Debug, Clone, Serialize)]
pub struct SingularLocusReport {
    pub pairs: Vec<PairSummary>,
    pub components: Vec<Vec<usize>>,
    pub reduced_ideal: Vec<Vec<usize>>,
    pub tilde_g0_count: usize,
    pub tilde_g0: Vec<TildeClass>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub h_order: usize,
}

pub fn mask_to_coords(n: usize, mask: u64) -> Vec<usize> {
    (0..n)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

pub fn locus_report(group: &AbelianGroup) -> SingularLocusReport {
    let pairs = stabilizer_pairs(group);
    let comps = components(&pairs);
    let reduced = singular_locus_cst(group);
    let classes = tilde_g0(group, &pairs);
    SingularLocusReport {
        pairs: pairs
            .iter()
            .map(|p| PairSummary {
                t: mask_to_coords(group.n, p.t_mask),
                h_order: p.subgroup.order(),
            })
            .collect(),
        components: comps.iter().map(|&m| mask_to_coords(group.n, m)).collect(),
        reduced_ideal: reduced
            .supports
            .iter()
            .map(|&m| mask_to_coords(group.n, m))
            .collect(),
        tilde_g0_count: classes.len(),
        tilde_g0: classes,
    }
}
