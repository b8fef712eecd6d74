//! Group construction and action laws.

mod common;

use common::*;
use irred_core::ffield::Field;
use irred_core::gaction::{coset_action, decomposition_count, share};
use irred_core::grp::{
    general_linear, projective_general_linear, projective_special_linear, special_linear,
    sylow2_and_index2,
};
use irred_core::liebounds::{group_order, lie_data, Family};
use num_bigint::BigUint;
use proptest::prelude::*;

fn sl_order(n: u32, q: u64) -> u64 {
    let qn = |k: u32| q.pow(k);
    qn(n * (n - 1) / 2) * (2..=n).map(|i| qn(i) - 1).product::<u64>()
}

#[test]
fn orders_match_formulas_and_the_bound_tables() {
    for (n, p, f) in [
        (2usize, 2u32, 1u32),
        (2, 2, 2),
        (2, 3, 1),
        (2, 5, 1),
        (2, 2, 3),
        (3, 2, 1),
        (3, 3, 1),
        (2, 7, 1),
    ] {
        let field = Field::new(p, f).unwrap();
        let q = field.q() as u64;
        let sl = special_linear(n, &field, &lim()).unwrap().order() as u64;
        assert_eq!(sl, sl_order(n as u32, q));
        let datum = lie_data(Family::A, n as u32 - 1).unwrap();
        assert_eq!(
            group_order(&datum, q),
            BigUint::from(sl),
            "A_{} over F_{q}",
            n - 1
        );
        let gl = general_linear(n, &field, &lim()).unwrap().order() as u64;
        assert_eq!(gl, sl * (q - 1));
        let pgl = projective_general_linear(n, &field, &lim())
            .unwrap()
            .order() as u64;
        assert_eq!(pgl, sl);
        let g = num_integer::gcd(n as u64, q - 1);
        let psl = projective_special_linear(n, &field, &lim())
            .unwrap()
            .order() as u64;
        assert_eq!(psl, sl / g);
    }
}

#[test]
fn decomposition_counts_match_enumeration() {
    for (p, f, n) in [
        (3u32, 1u32, 2usize),
        (2, 2, 2),
        (5, 1, 2),
        (2, 1, 3),
        (3, 1, 3),
    ] {
        let field = Field::new(p, f).unwrap();
        let g = share(projective_general_linear(n, &field, &lim()).unwrap());
        let a = irred_core::gaction::decomposition_action(g, n, &lim()).unwrap();
        assert_eq!(
            a.omega_size() as u128,
            decomposition_count(field.q() as u64, n as u32)
        );
    }
}

#[test]
fn coset_action_on_hyperplane_subgroup() {
    let (g, u, h) = sylow2_and_index2(3, &lim()).unwrap();
    assert_eq!((g.order(), u.order(), h.order()), (504, 8, 4));
    assert!(h.is_subset_of(&u));
    let a = coset_action(share(g), &h, &lim()).unwrap();
    assert_eq!(a.omega_size(), 126);
    assert!(a.is_faithful());
}

fn action_index() -> impl Strategy<Value = usize> {
    0usize..16
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn right_action_law(i in action_index(), w in 0u32..12, x in 0u32..20_000, y in 0u32..20_000) {
        let a = &oracle_instances()[i];
        let g = a.group();
        let (w, x, y) = (w % a.omega_size() as u32, x % g.order() as u32, y % g.order() as u32);
        prop_assert_eq!(a.apply(a.apply(w, x), y), a.apply(w, g.mul(x, y)));
        prop_assert_eq!(a.apply(w, g.identity_id()), w);
    }

    #[test]
    fn group_axioms(i in action_index(), x in 0u32..20_000, y in 0u32..20_000, z in 0u32..20_000) {
        let g = oracle_instances()[i].group().clone();
        let n = g.order() as u32;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity_id());
        // ids agree with elementwise arithmetic
        let prod = g.ops().mul(&g.elem(x), &g.elem(y));
        prop_assert_eq!(g.id_of(&prod), Some(g.mul(x, y)));
    }
}
