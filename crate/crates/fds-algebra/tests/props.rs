//! Property tests for the algebraic laws and the structural invariants the
//! operations promise, on randomly drawn systems and trees.

use fds_algebra::division::{divide_by_cancellative, divide_trees};
use fds_algebra::fds::{iso_eq, Fds};
use fds_algebra::forest::{decode_code, tree_product, Tree};
use fds_algebra::roots::{kth_root, poly_eval, NatPolynomial};
use fds_algebra::unrolling::{reroll, unroll, unroll_truncated};
use proptest::prelude::*;

fn arb_fds(max_states: u32) -> impl Strategy<Value = Fds> {
    (0..=max_states).prop_flat_map(|n| {
        if n == 0 {
            Just(Fds::empty()).boxed()
        } else {
            proptest::collection::vec(0..n, n as usize)
                .prop_map(|succ| Fds::from_succ(succ).unwrap())
                .boxed()
        }
    })
}

fn arb_nonempty_fds(max_states: u32) -> impl Strategy<Value = Fds> {
    (1..=max_states).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n as usize).prop_map(|succ| Fds::from_succ(succ).unwrap())
    })
}

/// Random tree built by attaching each vertex to an earlier one.
fn arb_tree(max_vertices: u32) -> impl Strategy<Value = Tree> {
    (
        1..=max_vertices,
        proptest::collection::vec(any::<u32>(), max_vertices as usize),
    )
        .prop_map(|(n, picks)| {
            let mut children: Vec<Vec<Tree>> = vec![Vec::new(); n as usize];
            for i in (1..n).rev() {
                let parent = picks[i as usize] % i;
                let t = Tree::new(std::mem::take(&mut children[i as usize]));
                children[parent as usize].push(t);
            }
            Tree::new(std::mem::take(&mut children[0]))
        })
}

fn code_eq(a: &Fds, b: &Fds) -> bool {
    iso_eq(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn semiring_laws(a in arb_fds(6), b in arb_fds(6), c in arb_fds(6)) {
        prop_assert!(code_eq(&a.sum(&b), &b.sum(&a)));
        prop_assert!(code_eq(&a.sum(&b).sum(&c), &a.sum(&b.sum(&c))));
        prop_assert!(code_eq(&a.product(&b), &b.product(&a)));
        prop_assert!(code_eq(&a.product(&b).product(&c), &a.product(&b.product(&c))));
        prop_assert!(code_eq(&a.product(&b.sum(&c)), &a.product(&b).sum(&a.product(&c))));
        prop_assert!(code_eq(&a.sum(&Fds::empty()), &a));
        prop_assert!(code_eq(&a.product(&Fds::identity()), &a));
        prop_assert!(a.product(&Fds::empty()).is_empty());
    }

    #[test]
    fn sizes_are_homomorphic(a in arb_fds(8), b in arb_fds(8)) {
        prop_assert_eq!(a.sum(&b).size(), a.size() + b.size());
        prop_assert_eq!(a.product(&b).size(), a.size() * b.size());
    }

    #[test]
    fn truncation_is_multiplicative(a in arb_fds(7), b in arb_fds(7), k in 0u32..4) {
        prop_assert!(code_eq(
            &a.product(&b).truncate(k),
            &a.truncate(k).product(&b.truncate(k))
        ));
    }

    #[test]
    fn supp_commutes_with_polynomials(
        a in arb_fds(5),
        c0 in arb_fds(3),
        c1 in arb_fds(3),
        c2 in arb_fds(2),
        limit in 1u64..5,
    ) {
        let p = NatPolynomial::new(vec![c0, c1, c2]);
        prop_assert!(code_eq(
            &poly_eval(&p, &a).supp_le(limit),
            &poly_eval(&p, &a.supp_le(limit)).supp_le(limit)
        ));
    }

    #[test]
    fn canonical_code_survives_relabelling(a in arb_nonempty_fds(8), seed in any::<u64>()) {
        let n = a.size() as u32;
        let mut perm: Vec<u32> = (0..n).collect();
        let mut state = seed;
        for i in (1..n as usize).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let mut succ = vec![0u32; n as usize];
        for s in 0..n {
            succ[perm[s as usize] as usize] = perm[a.successor(s) as usize];
        }
        let relabelled = Fds::from_succ(succ).unwrap();
        prop_assert_eq!(a.canonical_code(), relabelled.canonical_code());
    }

    #[test]
    fn tree_code_round_trip(t in arb_tree(10)) {
        let code = t.code();
        prop_assert_eq!(code.len() as u64, t.vertex_count());
        prop_assert_eq!(decode_code(&code).unwrap(), t);
    }

    #[test]
    fn tree_product_structure(a in arb_tree(8), b in arb_tree(8)) {
        let p = tree_product(&a, &b);
        prop_assert_eq!(p.depth(), a.depth().min(b.depth()));
        prop_assert_eq!(p.child_multiset(), a.child_multiset().product(&b.child_multiset()));
    }

    #[test]
    fn tree_order_is_product_compatible(a in arb_tree(7), b in arb_tree(7), c in arb_tree(7)) {
        let d = c.depth();
        if a.truncate(d) < b.truncate(d) {
            prop_assert!(tree_product(&a, &c) < tree_product(&b, &c));
        }
    }

    #[test]
    fn tree_division_recovers_truncated_factor(a in arb_tree(7), b in arb_tree(7)) {
        let c = tree_product(&a, &b);
        let q = divide_trees(&c, &a).unwrap();
        prop_assert_eq!(q, b.truncate(a.depth()));
    }

    #[test]
    fn unrolling_is_a_product_homomorphism(a in arb_fds(8), b in arb_fds(8), k in 0u32..7) {
        let lhs = unroll(&a).truncate_to(k).product(&unroll(&b).truncate_to(k));
        prop_assert_eq!(lhs, unroll_truncated(&a.product(&b), k));
    }

    #[test]
    fn reroll_inverts_unroll_on_connected(a in arb_nonempty_fds(7)) {
        let comp = a.components().remove(0);
        for part in unroll(&comp).parts {
            prop_assert!(iso_eq(&reroll(&part), &comp));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cancellative_division_round_trip(a in arb_nonempty_fds(5), b in arb_fds(6)) {
        prop_assume!(a.has_fixpoint());
        let d = a.product(&b);
        let q = divide_by_cancellative(&d, &a).unwrap();
        prop_assert!(iso_eq(&q, &b));
    }

    #[test]
    fn kth_root_inverts_powers(a in arb_fds(4), k in 2u32..4) {
        let power = a.pow(k);
        let root = kth_root(&power, k).unwrap();
        prop_assert!(iso_eq(&root, &a));
    }

    #[test]
    fn ldk_round_trip_two_factors(l1 in 1u32..4, l2 in 1u32..4, l3 in 1u32..4, l4 in 1u32..4) {
        use fds_algebra::ldk::{factor_ldk, LinearDendron};
        let f1 = LinearDendron::new(vec![l1, l2]);
        let f2 = LinearDendron::new(vec![l3, l4]);
        let p = f1.to_fds().product(&f2.to_fds());
        let mut expected = vec![f1, f2];
        expected.sort();
        prop_assert_eq!(factor_ldk(&p, 2).unwrap(), expected);
    }
}
