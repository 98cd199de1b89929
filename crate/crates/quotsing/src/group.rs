//! Finite abelian diagonal subgroups of SL(n), their dual groups, subgroups,
//! and the stabilizer / fixed-support correspondence.
//!
//! A group element is its weight vector: `g` acts on the variable `x_i` by
//! `zeta_L^{w_i(g)} x_i` where `L` is the group exponent. The weight map
//! sends a monomial `x^m` to the character `g -> zeta_L^{<w(g), m>}`; all
//! ideal and quiver computations downstream are phrased in terms of it.
//!
//! Since elements are identified with their weight vectors, duplicates
//! collapse on closure and the action is faithful by construction; there is
//! no separate faithfulness check to run or to fail.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Bounds, Error, Result};
use crate::snf;

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// One diagonal generator: `Diag(zeta_d^{w_1}, ..., zeta_d^{w_n})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub order: u64,
    pub weights: Vec<u64>,
}

/// A validated group presentation. `sl` records whether every generator
/// satisfies the determinant-one condition; [`parse_group_spec`] only ever
/// produces `sl: true`, while [`AbelianGroup::quotient_group_on`] may not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub dim: usize,
    pub generators: Vec<Generator>,
    #[serde(default = "default_true", skip_serializing_if = "is_true")]
    pub sl: bool,
}

fn default_true() -> bool {
    true
}

#[allow(clippy::trivially_copy_pass_by_ref)]
fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Deserialize)]
struct RawGenerator {
    order: i64,
    weights: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSpec {
    dim: usize,
    generators: Vec<RawGenerator>,
}

/// Parse and validate the JSON wire format
/// `{"dim": n, "generators": [{"order": d, "weights": [...]}]}`.
/// Weights are reduced into `[0, d)` and the SL condition is enforced.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    if raw.dim == 0 {
        return Err(Error::MalformedInput("dim must be positive".into()));
    }
    let mut generators = Vec::with_capacity(raw.generators.len());
    for g in raw.generators {
        if g.order <= 0 {
            return Err(Error::NonPositiveOrder);
        }
        let order = g.order as u64;
        if g.weights.len() != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                got: g.weights.len(),
            });
        }
        let weights: Vec<u64> = g
            .weights
            .iter()
            .map(|&w| w.rem_euclid(g.order) as u64)
            .collect();
        let sum: u64 = weights.iter().fold(0, |acc, &w| (acc + w) % order);
        if sum != 0 {
            return Err(Error::NotSpecialLinear {
                weights: g.weights.clone(),
                sum: g.weights.iter().sum::<i64>().rem_euclid(g.order),
                order,
            });
        }
        generators.push(Generator { order, weights });
    }
    Ok(GroupSpec {
        dim: raw.dim,
        generators,
        sl: true,
    })
}

/// A character of the group in the Smith-normal-form coordinates of the dual
/// group: `coords[j]` lives in `Z/s_j`. The derived lexicographic order on
/// tuples is the canonical order used for every report.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character {
    pub coords: Vec<u64>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// A subgroup given by its element indices into the parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    /// Indices into `AbelianGroup::elements`, sorted.
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// A finite abelian diagonal subgroup of SL(n), stored extensionally.
#[derive(Debug, Clone)]
pub struct AbelianGroup {
    pub n: usize,
    /// Group exponent: lcm of element orders; weight vectors live mod this.
    pub exponent: u64,
    /// All elements as weight vectors mod `exponent`, sorted lexicographically.
    pub elements: Vec<Vec<u64>>,
    /// Invariant factors `s_1 | s_2 | ... | s_r`, each > 1 (empty when trivial).
    pub snf: Vec<u64>,
    /// SNF coordinate tuple of each element, aligned with `elements`.
    tuples: Vec<Vec<u64>>,
    elem_index: HashMap<Vec<u64>, usize>,
    /// `wt(x_i)` for each variable.
    var_weights: Vec<Character>,
    /// Order of `wt(x_i)` in the dual group.
    var_orders: Vec<u64>,
}

/// Close a generating set of weight vectors under addition mod `modulus`.
fn close_under_addition(
    n: usize,
    modulus: u64,
    gens: &[Vec<u64>],
    bound: u64,
) -> Result<Vec<Vec<u64>>> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(vec![0; n]);
    let mut queue: VecDeque<Vec<u64>> = VecDeque::new();
    queue.push_back(vec![0; n]);
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w: Vec<u64> = v.iter().zip(g).map(|(&a, &b)| (a + b) % modulus).collect();
            if seen.insert(w.clone()) {
                if seen.len() as u64 > bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn element_order(v: &[u64], modulus: u64) -> u64 {
    let g = v.iter().fold(modulus, |acc, &w| gcd_u64(acc, w));
    modulus / g
}

/// Build the group from a validated spec: close the generators, compute the
/// exponent, and fix SNF canonical coordinates from the full (sorted) element
/// list so the structure is independent of the presentation.
pub fn build_group(spec: &GroupSpec, bounds: &Bounds) -> Result<AbelianGroup> {
    if !spec.sl {
        return Err(Error::NotSpecialLinear {
            weights: vec![],
            sum: 0,
            order: 0,
        });
    }
    let n = spec.dim;
    let modulus = spec
        .generators
        .iter()
        .fold(1u64, |acc, g| lcm_u64(acc, g.order));
    let scaled: Vec<Vec<u64>> = spec
        .generators
        .iter()
        .map(|g| {
            let f = modulus / g.order;
            g.weights.iter().map(|&w| w * f % modulus).collect()
        })
        .collect();
    let elements = close_under_addition(n, modulus, &scaled, bounds.max_group_order)?;

    // Shrink the ambient modulus to the actual exponent.
    let exponent = elements
        .iter()
        .fold(1u64, |acc, v| lcm_u64(acc, element_order(v, modulus)));
    let shrink = modulus / exponent;
    let mut elements: Vec<Vec<u64>> = elements
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|w| {
                    debug_assert_eq!(w % shrink, 0);
                    w / shrink
                })
                .collect()
        })
        .collect();
    elements.sort();
    elements.dedup();

    for v in &elements {
        let s: u64 = v.iter().fold(0, |acc, &w| (acc + w) % exponent);
        debug_assert_eq!(s, 0, "closure left SL(n)");
    }
    AbelianGroup::from_sorted_elements(n, exponent, elements)
}

impl AbelianGroup {
    /// Internal constructor from a sorted, closed element set.
    fn from_sorted_elements(n: usize, exponent: u64, elements: Vec<Vec<u64>>) -> Result<Self> {
        let ell = exponent as i128;
        // Lattice spanned by the elements together with L*Z^n, as columns.
        let cols = elements.len() + n;
        let mut a = vec![vec![0i128; cols]; n];
        for (j, e) in elements.iter().enumerate() {
            for i in 0..n {
                a[i][j] = e[i] as i128;
            }
        }
        for i in 0..n {
            a[i][elements.len() + i] = ell;
        }
        let (d1, u1) = snf::smith_normal_form(a);
        debug_assert!(d1.iter().all(|&d| d > 0));

        // C = L * D1^{-1} * U1 expresses L*Z^n in a basis of the lattice.
        let c: snf::Mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = ell * u1[i][j];
                        debug_assert_eq!(v % d1[i], 0);
                        v / d1[i]
                    })
                    .collect()
            })
            .collect();
        let (d2, u2) = snf::smith_normal_form(c);
        debug_assert!(d2.iter().all(|&d| d > 0));

        let snf_factors: Vec<u64> = d2.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
        let expected: u64 = snf_factors.iter().product();
        debug_assert_eq!(expected as usize, elements.len());

        let coord_positions: Vec<usize> = (0..n).filter(|&i| d2[i] > 1).collect();
        let tuple_of = |w: &[u64]| -> Vec<u64> {
            let y: Vec<i128> = (0..n)
                .map(|i| {
                    let s: i128 = (0..n).map(|j| u1[i][j] * w[j] as i128).sum();
                    debug_assert_eq!(s % d1[i], 0);
                    s / d1[i]
                })
                .collect();
            coord_positions
                .iter()
                .map(|&i| {
                    let t: i128 = (0..n).map(|j| u2[i][j] * y[j]).sum();
                    t.rem_euclid(d2[i]) as u64
                })
                .collect()
        };

        let tuples: Vec<Vec<u64>> = elements.iter().map(|e| tuple_of(e)).collect();
        let elem_index: HashMap<Vec<u64>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();

        // Basis elements: the element mapped to each unit tuple.
        let rank = snf_factors.len();
        let mut basis = vec![usize::MAX; rank];
        for (idx, t) in tuples.iter().enumerate() {
            if t.iter().filter(|&&c| c != 0).count() == 1 {
                if let Some(j) = t.iter().position(|&c| c == 1) {
                    if t.iter().enumerate().all(|(k, &c)| k == j || c == 0) {
                        basis[j] = idx;
                    }
                }
            }
        }
        debug_assert!(basis.iter().all(|&b| b != usize::MAX));

        let var_weights: Vec<Character> = (0..n)
            .map(|i| {
                let coords = (0..rank)
                    .map(|j| {
                        let s_j = snf_factors[j];
                        let w = elements[basis[j]][i];
                        debug_assert_eq!(w * s_j % exponent, 0);
                        w * s_j / exponent % s_j
                    })
                    .collect();
                Character { coords }
            })
            .collect();

        let var_orders: Vec<u64> = var_weights
            .iter()
            .map(|c| {
                c.coords
                    .iter()
                    .zip(&snf_factors)
                    .fold(1, |acc, (&x, &s)| lcm_u64(acc, s / gcd_u64(s, x)))
            })
            .collect();

        Ok(AbelianGroup {
            n,
            exponent,
            elements,
            snf: snf_factors,
            tuples,
            elem_index,
            var_weights,
            var_orders,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Weight vector of an element.
    pub fn weights_of(&self, elem: usize) -> &[u64] {
        &self.elements[elem]
    }

    pub fn trivial_char(&self) -> Character {
        Character {
            coords: vec![0; self.snf.len()],
        }
    }

    /// Number of characters (= |G|).
    pub fn num_chars(&self) -> usize {
        self.snf.iter().product::<u64>() as usize
    }

    /// Canonical index of a character: mixed-radix with the most significant
    /// coordinate first, matching lexicographic order on tuples.
    pub fn char_index(&self, c: &Character) -> usize {
        let mut idx = 0u64;
        for (j, &s) in self.snf.iter().enumerate() {
            idx = idx * s + c.coords[j];
        }
        idx as usize
    }

    /// Canonical index from raw SNF coordinates.
    pub fn char_index_of(&self, coords: &[u64]) -> usize {
        let mut idx = 0u64;
        for (j, &s) in self.snf.iter().enumerate() {
            idx = idx * s + coords[j];
        }
        idx as usize
    }

    pub fn char_from_index(&self, mut idx: usize) -> Character {
        let mut coords = vec![0u64; self.snf.len()];
        for j in (0..self.snf.len()).rev() {
            coords[j] = (idx as u64) % self.snf[j];
            idx /= self.snf[j] as usize;
        }
        Character { coords }
    }

    /// All characters in canonical order.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.num_chars()).map(|i| self.char_from_index(i))
    }

    pub fn char_add(&self, a: &Character, b: &Character) -> Character {
        Character {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.snf)
                .map(|((&x, &y), &s)| (x + y) % s)
                .collect(),
        }
    }

    pub fn char_neg(&self, a: &Character) -> Character {
        Character {
            coords: a
                .coords
                .iter()
                .zip(&self.snf)
                .map(|(&x, &s)| (s - x) % s)
                .collect(),
        }
    }

    pub fn char_sub(&self, a: &Character, b: &Character) -> Character {
        self.char_add(a, &self.char_neg(b))
    }

    /// In-place accumulate: `acc += c`, coordinatewise mod the SNF factors.
    pub fn char_add_assign(&self, acc: &mut [u64], c: &Character) {
        for (j, a) in acc.iter_mut().enumerate() {
            *a = (*a + c.coords[j]) % self.snf[j];
        }
    }

    /// In-place `acc -= k * c`, used to rewind accumulators in sweeps.
    pub fn char_sub_scaled_assign(&self, acc: &mut [u64], c: &Character, k: u64) {
        for (j, a) in acc.iter_mut().enumerate() {
            let s = self.snf[j];
            *a = (*a + (s - c.coords[j]) % s * (k % s)) % s;
        }
    }

    /// Order of a character in the dual group.
    pub fn char_order(&self, c: &Character) -> u64 {
        c.coords
            .iter()
            .zip(&self.snf)
            .fold(1, |acc, (&x, &s)| lcm_u64(acc, s / gcd_u64(s, x)))
    }

    /// Evaluate a character on an element, as an exponent of `zeta_L`.
    pub fn char_eval(&self, c: &Character, elem: usize) -> u64 {
        let t = &self.tuples[elem];
        let ell = self.exponent;
        c.coords
            .iter()
            .zip(t)
            .zip(&self.snf)
            .fold(0u64, |acc, ((&cj, &tj), &sj)| {
                (acc + cj * tj % ell * (ell / sj)) % ell
            })
    }

    /// `wt(x_i)`.
    pub fn var_weight(&self, i: usize) -> &Character {
        &self.var_weights[i]
    }

    /// Order of `wt(x_i)`; `x_i^{order}` is the minimal invariant pure power.
    pub fn var_order(&self, i: usize) -> u64 {
        self.var_orders[i]
    }

    /// The weight character of the monomial `x^m`.
    pub fn weight_of_monomial(&self, m: &[u32]) -> Character {
        assert_eq!(m.len(), self.n);
        let mut coords = vec![0u64; self.snf.len()];
        for (i, &e) in m.iter().enumerate() {
            for (j, c) in coords.iter_mut().enumerate() {
                let s = self.snf[j];
                *c = (*c + (e as u64 % s) * self.var_weights[i].coords[j]) % s;
            }
        }
        Character { coords }
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            members: (0..self.order()).collect(),
        }
    }

    /// `H_T`: elements whose weight vanishes on every coordinate in `t_mask`.
    pub fn pointwise_stabilizer(&self, t_mask: u64) -> Subgroup {
        let members = (0..self.order())
            .filter(|&e| (0..self.n).all(|i| t_mask >> i & 1 == 0 || self.elements[e][i] == 0))
            .collect();
        Subgroup { members }
    }

    /// `Fix(H)`: coordinates on which every element of `H` acts trivially.
    pub fn fixed_support(&self, h: &Subgroup) -> u64 {
        let mut mask = 0u64;
        for i in 0..self.n {
            if h.members.iter().all(|&e| self.elements[e][i] == 0) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Build a subgroup as an abelian group in its own right (same ambient
    /// dimension, its own exponent and SNF coordinates).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> AbelianGroup {
        let mut elems: Vec<Vec<u64>> = h
            .members
            .iter()
            .map(|&e| self.elements[e].clone())
            .collect();
        let sub_exp = elems
            .iter()
            .fold(1u64, |acc, v| lcm_u64(acc, element_order(v, self.exponent)));
        let shrink = self.exponent / sub_exp;
        for v in elems.iter_mut() {
            for w in v.iter_mut() {
                *w /= shrink;
            }
        }
        elems.sort();
        AbelianGroup::from_sorted_elements(self.n, sub_exp, elems)
            .expect("subgroup reconstruction cannot fail")
    }

    /// Restrict a character of `G` to `H`, in the SNF coordinates of `H`.
    pub fn restrict_character(&self, c: &Character, h: &Subgroup) -> (AbelianGroup, Character) {
        let hg = self.subgroup_as_group(h);
        let coords = (0..hg.snf.len())
            .map(|j| {
                // Basis element of H with unit tuple e_j, as a weight vector
                // of the parent, evaluated under the parent character.
                let unit: Vec<u64> = (0..hg.snf.len()).map(|k| u64::from(k == j)).collect();
                let pos = hg
                    .tuples
                    .iter()
                    .position(|t| *t == unit)
                    .expect("SNF basis element exists");
                let shrink = self.exponent / hg.exponent;
                let parent_vec: Vec<u64> = hg.elements[pos].iter().map(|&w| w * shrink).collect();
                let parent_idx = self.elem_index[&parent_vec];
                let v = self.char_eval(c, parent_idx);
                let s_j = hg.snf[j];
                debug_assert_eq!(v * s_j % self.exponent, 0);
                v * s_j / self.exponent % s_j
            })
            .collect();
        (hg, Character { coords })
    }

    /// Whether `c` restricts to the trivial character of `H`.
    pub fn is_trivial_on(&self, c: &Character, h: &Subgroup) -> bool {
        h.members.iter().all(|&e| self.char_eval(c, e) == 0)
    }

    /// Spec describing `G/H_T` acting on the coordinates in `t_mask`.
    /// Requires `t_mask` closed under the stabilizer correspondence. The
    /// quotient action need not be special linear; `sl` records that.
    pub fn quotient_group_on(&self, t_mask: u64) -> Result<GroupSpec> {
        let h = self.pointwise_stabilizer(t_mask);
        if self.fixed_support(&h) != t_mask {
            let coords = (0..self.n).filter(|&i| t_mask >> i & 1 == 1).collect();
            return Err(Error::NotClosed(coords));
        }
        let coords: Vec<usize> = (0..self.n).filter(|&i| t_mask >> i & 1 == 1).collect();
        let mut restricted: Vec<Vec<u64>> = self
            .elements
            .iter()
            .map(|e| coords.iter().map(|&i| e[i]).collect())
            .collect();
        restricted.sort();
        restricted.dedup();
        let sl = restricted
            .iter()
            .all(|v| v.iter().fold(0, |acc, &w| (acc + w) % self.exponent) == 0);
        Ok(GroupSpec {
            dim: coords.len(),
            generators: restricted
                .into_iter()
                .map(|weights| Generator {
                    order: self.exponent,
                    weights,
                })
                .collect(),
            sl,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn klein_four() -> AbelianGroup {
        let spec = parse_group_spec(
            r#"{"dim": 3, "generators": [{"order": 2, "weights": [0,1,1]}, {"order": 2, "weights": [1,0,1]}]}"#,
        )
        .unwrap();
        build_group(&spec, &Bounds::default()).unwrap()
    }

    pub(crate) fn z4_112() -> AbelianGroup {
        let spec =
            parse_group_spec(r#"{"dim": 3, "generators": [{"order": 4, "weights": [1,1,2]}]}"#)
                .unwrap();
        build_group(&spec, &Bounds::default()).unwrap()
    }

    #[test]
    fn parse_rejects_non_sl() {
        let err =
            parse_group_spec(r#"{"dim": 3, "generators": [{"order": 4, "weights": [1,1,1]}]}"#)
                .unwrap_err();
        assert!(matches!(err, Error::NotSpecialLinear { .. }));
    }

    #[test]
    fn parse_rejects_bad_dimension() {
        let err = parse_group_spec(r#"{"dim": 3, "generators": [{"order": 2, "weights": [0,1]}]}"#)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                got: 2
            }
        ));
    }

    #[test]
    fn parse_trivial_group() {
        let spec = parse_group_spec(r#"{"dim": 2, "generators": []}"#).unwrap();
        let g = build_group(&spec, &Bounds::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent, 1);
        assert_eq!(g.elements, vec![vec![0, 0]]);
        assert!(g.snf.is_empty());
    }

    #[test]
    fn klein_four_elements() {
        let g = klein_four();
        assert_eq!(
            g.elements,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(g.snf, vec![2, 2]);
    }

    #[test]
    fn z4_112_elements() {
        let g = z4_112();
        assert_eq!(
            g.elements,
            vec![vec![0, 0, 0], vec![1, 1, 2], vec![2, 2, 0], vec![3, 3, 2]]
        );
        assert_eq!(g.snf, vec![4]);
    }

    #[test]
    fn weight_map_examples() {
        let g = klein_four();
        assert!(g.weight_of_monomial(&[2, 0, 0]).is_trivial());
        assert!(g.weight_of_monomial(&[0, 0, 0]).is_trivial());
        assert!(g.weight_of_monomial(&[1, 1, 1]).is_trivial());
        assert!(!g.weight_of_monomial(&[1, 0, 0]).is_trivial());

        let g2 = z4_112();
        assert!(g2.weight_of_monomial(&[0, 0, 2]).is_trivial());
        assert!(!g2.weight_of_monomial(&[0, 0, 1]).is_trivial());
    }

    #[test]
    fn weight_map_is_additive() {
        let g = z4_112();
        let a = [1u32, 2, 1];
        let b = [0u32, 3, 2];
        let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = g.weight_of_monomial(&sum);
        let rhs = g.char_add(&g.weight_of_monomial(&a), &g.weight_of_monomial(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn stabilizers_and_fixed_supports() {
        let g = klein_four();
        let h = g.pointwise_stabilizer(0b001);
        let elems: Vec<_> = h.members.iter().map(|&e| g.elements[e].clone()).collect();
        assert_eq!(elems, vec![vec![0, 0, 0], vec![0, 1, 1]]);
        assert_eq!(g.fixed_support(&h), 0b001);

        assert_eq!(g.pointwise_stabilizer(0).order(), 4);
        let trivial = g.pointwise_stabilizer(0b111);
        assert!(trivial.is_trivial());
        assert_eq!(g.fixed_support(&trivial), 0b111);

        let g2 = z4_112();
        assert!(g2.pointwise_stabilizer(0b001).is_trivial());
        assert_eq!(g2.fixed_support(&g2.full_subgroup()), 0);
    }

    #[test]
    fn characters_separate_elements() {
        for g in [klein_four(), z4_112()] {
            assert_eq!(g.num_chars(), g.order());
            for e in 1..g.order() {
                assert!(
                    g.characters().any(|c| g.char_eval(&c, e) != 0),
                    "element {e} not separated"
                );
            }
        }
    }

    #[test]
    fn character_evaluation_is_multiplicative() {
        let g = z4_112();
        for c in g.characters() {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let sum: Vec<u64> = g.elements[a]
                        .iter()
                        .zip(&g.elements[b])
                        .map(|(&x, &y)| (x + y) % g.exponent)
                        .collect();
                    let s = g.elem_index[&sum];
                    assert_eq!(
                        (g.char_eval(&c, a) + g.char_eval(&c, b)) % g.exponent,
                        g.char_eval(&c, s)
                    );
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let g = klein_four();
        let h = g.pointwise_stabilizer(0b001);
        let chi = g.weight_of_monomial(&[1, 0, 0]);
        // (0,1,1) fixes x_1, so wt(x_1) restricts trivially to H_{1}.
        assert!(g.is_trivial_on(&chi, &h));
        let (hg, r) = g.restrict_character(&chi, &h);
        assert_eq!(hg.order(), 2);
        assert!(r.is_trivial());

        // wt(x_2) is nontrivial on H_{1}.
        let chi2 = g.weight_of_monomial(&[0, 1, 0]);
        assert!(!g.is_trivial_on(&chi2, &h));
        let (_, r2) = g.restrict_character(&chi2, &h);
        assert!(!r2.is_trivial());

        let trivial_sub = g.pointwise_stabilizer(0b111);
        assert!(g.is_trivial_on(&chi2, &trivial_sub));
    }

    #[test]
    fn quotient_examples() {
        let g2 = z4_112();
        let spec = g2.quotient_group_on(0b100).unwrap();
        assert_eq!(spec.dim, 1);
        let mut ws: Vec<Vec<u64>> = spec.generators.iter().map(|g| g.weights.clone()).collect();
        ws.sort();
        assert_eq!(ws, vec![vec![0], vec![2]]);
        assert!(!spec.sl);

        let g1 = klein_four();
        let spec1 = g1.quotient_group_on(0b001).unwrap();
        assert_eq!(spec1.dim, 1);
        let mut ws1: Vec<Vec<u64>> = spec1.generators.iter().map(|g| g.weights.clone()).collect();
        ws1.sort();
        assert_eq!(ws1, vec![vec![0], vec![1]]);
        // Non-closed T is rejected: Fix(H_{3}) = {3} for 5.2 but {1,2} is not closed.
        assert!(matches!(
            g2.quotient_group_on(0b011),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn parse_rejects_zero_order() {
        let err = parse_group_spec(r#"{"dim": 2, "generators": [{"order": 0, "weights": [0,0]}]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::NonPositiveOrder));
    }

    #[test]
    fn quotient_of_trivial_group_on_everything() {
        let spec = parse_group_spec(r#"{"dim": 2, "generators": []}"#).unwrap();
        let g = build_group(&spec, &Bounds::default()).unwrap();
        let q = g.quotient_group_on(0b11).unwrap();
        assert_eq!(q.dim, 2);
        assert!(q.sl);
        let qg = build_group(&q, &Bounds::default()).unwrap();
        assert!(qg.is_trivial());
    }

    #[test]
    fn rebuild_from_elements_is_identity() {
        for g in [klein_four(), z4_112()] {
            let spec = GroupSpec {
                dim: g.n,
                generators: g
                    .elements
                    .iter()
                    .map(|e| Generator {
                        order: g.exponent,
                        weights: e.clone(),
                    })
                    .collect(),
                sl: true,
            };
            let g2 = build_group(&spec, &Bounds::default()).unwrap();
            assert_eq!(g.elements, g2.elements);
            assert_eq!(g.snf, g2.snf);
            assert_eq!(g.tuples, g2.tuples);
        }
    }

    #[test]
    fn group_too_large() {
        let spec =
            parse_group_spec(r#"{"dim": 2, "generators": [{"order": 101, "weights": [1, 100]}]}"#)
                .unwrap();
        let bounds = Bounds {
            max_group_order: 100,
            ..Bounds::default()
        };
        assert!(matches!(
            build_group(&spec, &bounds),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn var_orders_examples() {
        let g = z4_112();
        assert_eq!(g.var_order(0), 4);
        assert_eq!(g.var_order(1), 4);
        assert_eq!(g.var_order(2), 2);
    }
}
