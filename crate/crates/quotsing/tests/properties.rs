//! Cross-module properties exercised over a seeded pool of random groups:
//! the stabilizer correspondence, character separation, quiver regularity
//! and connectivity, component maximality, meet closure statistics, and the
//! ideal symmetries of the center machinery.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quotsing::center::{invariant_monomials_up_to, CenterTables};
use quotsing::group::Generator;
use quotsing::monomial::{Monomial, RadicalFamily};
use quotsing::quiver::{build_mckay, contraction, is_connected, Connectivity};
use quotsing::singular::{
    components, meet, singular_locus_cst, singular_locus_elementwise, stabilizer_pairs,
};
use quotsing::{build_group, parse_group_spec, AbelianGroup, Bounds, GroupSpec};

/// A deterministic pool of groups with n <= 4 and |G| <= 60.
fn sweep_pool() -> Vec<AbelianGroup> {
    let bounds = Bounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(991);
    let mut out = vec![
        build_group(
            &parse_group_spec(
                r#"{"dim":3,"generators":[{"order":2,"weights":[0,1,1]},{"order":2,"weights":[1,0,1]}]}"#,
            )
            .unwrap(),
            &bounds,
        )
        .unwrap(),
        build_group(
            &parse_group_spec(r#"{"dim":3,"generators":[{"order":4,"weights":[1,1,2]}]}"#).unwrap(),
            &bounds,
        )
        .unwrap(),
    ];
    while out.len() < 30 {
        let dim = rng.gen_range(2..=4usize);
        let gens = rng.gen_range(1..=2usize);
        let generators: Vec<Generator> = (0..gens)
            .map(|_| {
                let order = rng.gen_range(2..=60u64);
                let mut weights: Vec<u64> = (0..dim - 1).map(|_| rng.gen_range(0..order)).collect();
                let sum: u64 = weights.iter().sum();
                weights.push((order - sum % order) % order);
                Generator { order, weights }
            })
            .collect();
        let spec = GroupSpec {
            dim,
            generators,
            sl: true,
        };
        if let Ok(g) = build_group(
            &spec,
            &Bounds {
                max_group_order: 60,
                ..bounds
            },
        ) {
            out.push(g);
        }
    }
    out
}

#[test]
fn galois_connection_holds_exhaustively() {
    for g in sweep_pool() {
        // All coordinate subsets on one side.
        for t_mask in 0..(1u64 << g.n) {
            let h = g.pointwise_stabilizer(t_mask);
            let closure = g.fixed_support(&h);
            assert_eq!(closure & t_mask, t_mask, "T inside Fix(H_T)");
            // Closure is idempotent.
            let h2 = g.pointwise_stabilizer(closure);
            assert_eq!(g.fixed_support(&h2), closure);
            // Inclusion-reversing in T.
            for t2 in 0..(1u64 << g.n) {
                if t_mask & t2 == t_mask {
                    let h_big = g.pointwise_stabilizer(t2);
                    assert!(
                        h_big.members.iter().all(|m| h.members.contains(m)),
                        "stabilizer not inclusion-reversing"
                    );
                }
            }
        }
        // Cyclic subgroups on the other side: H inside H_{Fix(H)}.
        for e in 0..g.order() {
            let mut members = vec![0usize];
            let mut cur = e;
            while cur != 0 {
                members.push(cur);
                let next: Vec<u64> = g
                    .weights_of(cur)
                    .iter()
                    .zip(g.weights_of(e))
                    .map(|(&a, &b)| (a + b) % g.exponent)
                    .collect();
                cur = g
                    .elements
                    .iter()
                    .position(|v| *v == next)
                    .expect("closed under addition");
            }
            members.sort();
            members.dedup();
            let h = quotsing::Subgroup { members };
            let closure_h = g.pointwise_stabilizer(g.fixed_support(&h));
            assert!(h.members.iter().all(|m| closure_h.members.contains(m)));
        }
    }
}

#[test]
fn characters_separate_and_count() {
    for g in sweep_pool() {
        assert_eq!(g.num_chars(), g.order());
        for e in 1..g.order() {
            assert!(g.characters().any(|c| g.char_eval(&c, e) != 0));
        }
    }
}

#[test]
fn rebuild_idempotence_over_sweep() {
    for g in sweep_pool() {
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
    }
}

#[test]
fn quiver_regular_and_contraction_connected() {
    for g in sweep_pool() {
        let q = build_mckay(&g);
        assert_eq!(q.vertices.len(), g.order());
        assert_eq!(q.arrows.len(), g.order() * g.n);
        for v in 0..q.vertices.len() {
            assert_eq!(q.arrows.iter().filter(|a| a.source == v).count(), g.n);
            assert_eq!(q.arrows.iter().filter(|a| a.target == v).count(), g.n);
        }
        let con = contraction(&q);
        let verdict = is_connected(&con);
        if g.is_trivial() {
            assert_eq!(verdict, Connectivity::Empty);
        } else {
            assert_eq!(verdict, Connectivity::Connected, "order {}", g.order());
        }
    }
}

#[test]
fn arrow_weights_compose_along_random_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for g in sweep_pool().into_iter().take(10) {
        let q = build_mckay(&g);
        for _ in 0..20 {
            let start = rng.gen_range(0..q.vertices.len());
            let mut v = start;
            let mut acc = g.trivial_char();
            for _ in 0..rng.gen_range(1..=12usize) {
                let var = rng.gen_range(0..g.n);
                let arrow = q
                    .arrows
                    .iter()
                    .find(|a| a.source == v && a.var == var)
                    .unwrap();
                acc = g.char_add(&acc, g.var_weight(var));
                v = arrow.target;
            }
            // The walk closes up iff the accumulated label weight is trivial.
            assert_eq!(v == start, acc.is_trivial());
        }
    }
}

#[test]
fn locus_routes_agree_and_components_are_maximal() {
    for g in sweep_pool() {
        let cst = singular_locus_cst(&g);
        let elw = singular_locus_elementwise(&g);
        assert!(cst.equal(&elw).unwrap());

        let pairs = stabilizer_pairs(&g);
        let comps = components(&pairs);
        for (i, &a) in comps.iter().enumerate() {
            for &b in comps.iter().skip(i + 1) {
                assert_ne!(a & b, a, "nested components");
                assert_ne!(a & b, b, "nested components");
            }
        }
        for p in &pairs {
            assert!(comps.iter().any(|&c| p.t_mask & c == p.t_mask));
        }

        // Smoothness boundary.
        if g.is_trivial() {
            assert!(pairs.is_empty());
            assert!(cst.is_unit());
        } else {
            assert!(!pairs.is_empty());
            assert!(!cst.is_unit());
        }
    }
}

#[test]
fn meet_closure_statistics() {
    let mut closed = 0usize;
    let mut open = 0usize;
    for g in sweep_pool() {
        let pairs = stabilizer_pairs(&g);
        for a in &pairs {
            for b in &pairs {
                // meet() itself asserts the component-ideal sum identity.
                let r = meet(&g, a.t_mask, b.t_mask).unwrap();
                if r.closed {
                    closed += 1;
                } else {
                    open += 1;
                }
                assert_eq!(
                    r.pair.t_mask & (a.t_mask & b.t_mask),
                    a.t_mask & b.t_mask,
                    "meet support contains the intersection"
                );
            }
        }
    }
    // The flag is data, not a theorem; record what the sweep saw.
    println!("meet closure: {closed} closed, {open} open");
    assert!(closed > 0);
}

#[test]
fn bar_ideal_symmetry_and_containment_over_sweep() {
    let bounds = Bounds::default();
    for g in sweep_pool().into_iter().take(12) {
        let t = CenterTables::new(&g, &bounds).unwrap();
        let sing = singular_locus_cst(&g);
        assert!(t.char_radicals_contain_locus(&sing));
        for idx in 1..g.num_chars() {
            let inv = g.char_index(&g.char_neg(&g.char_from_index(idx)));
            assert_eq!(t.bar_ideal_by_index(idx), t.bar_ideal_by_index(inv));
        }
        let (ok, diff) = t.verify_reconstruction(&sing);
        assert!(ok, "reconstruction diff {diff:?}");
    }
}

#[test]
fn dim_r_monotone_under_invariant_count() {
    let bounds = Bounds::default();
    for g in sweep_pool().into_iter().take(6) {
        let d = (2 * g.order() as u32).min(24);
        let t = CenterTables::new(&g, &bounds).unwrap();
        let ch = t.center_hilbert(d).unwrap();
        let mut counts = vec![0usize; d as usize + 1];
        for m in invariant_monomials_up_to(&g, d) {
            counts[m.degree() as usize] += 1;
        }
        for (deg, &count) in counts.iter().enumerate() {
            assert!(ch.dim_r[deg] <= count);
            assert!(ch.dim_r[deg] <= ch.dim_z[deg]);
        }
    }
}

#[test]
fn subsystem_restriction_cocycle_over_sweep() {
    let bounds = Bounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for g in sweep_pool().into_iter().take(6) {
        if g.num_chars() < 4 {
            continue;
        }
        let t = CenterTables::new(&g, &bounds).unwrap();
        let d = (g.order() as u32).min(12);
        let all: Vec<usize> = (1..g.num_chars()).collect();
        // Random nested chain T inside T' inside T''.
        let mut mid: Vec<usize> = all.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
        if mid.is_empty() {
            mid.push(all[0]);
        }
        let mut small: Vec<usize> = mid.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if small.is_empty() {
            small.push(mid[0]);
        }
        assert!(t.restriction_check(&small, &mid, d).unwrap());
        assert!(t.restriction_check(&mid, &all, d).unwrap());
        assert!(t.restriction_check(&small, &all, d).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_map_is_a_homomorphism(
        a in prop::collection::vec(0u32..12, 3),
        b in prop::collection::vec(0u32..12, 3),
    ) {
        let g = build_group(
            &parse_group_spec(r#"{"dim":3,"generators":[{"order":4,"weights":[1,1,2]}]}"#).unwrap(),
            &Bounds::default(),
        )
        .unwrap();
        let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = g.weight_of_monomial(&sum);
        let rhs = g.char_add(&g.weight_of_monomial(&a), &g.weight_of_monomial(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn radical_family_lattice_laws(
        s1 in prop::collection::vec(0u64..16, 1..5),
        s2 in prop::collection::vec(0u64..16, 1..5),
        probe in 0u64..16,
    ) {
        let f1 = RadicalFamily::from_supports(4, s1);
        let f2 = RadicalFamily::from_supports(4, s2);
        let meet = f1.intersect(&f2).unwrap();
        let join = f1.sum(&f2).unwrap();
        // Membership algebra on an arbitrary support.
        prop_assert_eq!(
            meet.contains_support(probe),
            f1.contains_support(probe) && f2.contains_support(probe)
        );
        prop_assert_eq!(
            join.contains_support(probe),
            f1.contains_support(probe) || f2.contains_support(probe)
        );
        // Containment is consistent with the lattice operations.
        prop_assert!(f1.contains(&meet).unwrap());
        prop_assert!(join.contains(&f1).unwrap());
    }

    #[test]
    fn minimal_generators_stay_minimal(
        picks in prop::collection::vec(0usize..9, 1..6),
    ) {
        let g = build_group(
            &parse_group_spec(r#"{"dim":3,"generators":[{"order":4,"weights":[1,1,2]}]}"#).unwrap(),
            &Bounds::default(),
        )
        .unwrap();
        let classes = quotsing::monomial::WeightClasses::new(&g, &Bounds::default()).unwrap();
        let hb = classes.hilbert_basis();
        let gens: Vec<Monomial> = picks.iter().map(|&i| hb[i % hb.len()].clone()).collect();
        let ideal = quotsing::monomial::InvariantIdeal::from_gens(3, gens.clone());
        // Every original generator is still in the ideal, and the kept
        // generators form an antichain.
        for m in &gens {
            prop_assert!(ideal.contains(m));
        }
        for (i, u) in ideal.gens().iter().enumerate() {
            for (j, v) in ideal.gens().iter().enumerate() {
                if i != j {
                    prop_assert!(!u.divides(v));
                }
            }
        }
    }
}
