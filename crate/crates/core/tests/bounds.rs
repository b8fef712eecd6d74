//! Bound arithmetic: exact identities and monotonicity.

use irred_core::liebounds::*;
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn expanded(r: u64) -> BigInt {
    let r = BigInt::from(r);
    BigInt::from(128) * r.pow(8)
        + BigInt::from(40) * r.pow(6)
        + BigInt::from(2) * r.pow(4)
        + BigInt::from(4) * r.pow(2)
}

proptest! {
    #[test]
    fn raw_matches_its_expansion(r in 1u64..100_000) {
        prop_assert_eq!(theorem_raw(r), expanded(r));
        prop_assert!(theorem_bound(r).unwrap().holds);
    }

    #[test]
    fn leng_is_monotone(d in 1u64..300, e in 0u64..5000, coeff in 1u32..1000) {
        let c = |coeff: u32, e: u64| BoundValue {
            exact: ExactValue::ScaledPow2 { coeff: BigUint::from(coeff), exp2: e },
            log2: (coeff as f64).log2() + e as f64,
            formula_tag: "c".into(),
        };
        let base = leng_bound(d, &c(coeff, e)).unwrap().upper_f64();
        prop_assert!(leng_bound(d + 1, &c(coeff, e)).unwrap().upper_f64() >= base);
        prop_assert!(leng_bound(d, &c(coeff + 1, e)).unwrap().upper_f64() >= base);
        prop_assert!(leng_bound(d, &c(coeff, e + 1)).unwrap().upper_f64() >= base);
    }

    #[test]
    fn leng_over_estimates(d in 1u64..300, n in 2u64..1_000_000) {
        let c = BoundValue::integer(n, "c");
        let b = leng_bound(d, &c).unwrap();
        let truth = d as f64 + (d * (d + 1)) as f64 / 2.0 * (n as f64).log2();
        let up = b.ceil().unwrap().to_f64().unwrap();
        prop_assert!(up >= truth.floor());
        prop_assert!(b.upper_f64() >= truth * (1.0 - 1e-12));
    }
}

#[test]
fn e8_constant_is_kept_symbolic() {
    let e8 = lie_data(Family::E8, 8).unwrap();
    let c = degree_constant(&e8);
    assert!(matches!(
        c.exact,
        ExactValue::ScaledPow2 { exp2: 61_504, .. }
    ));
    assert!((c.log2 - (696_729_600f64.log2() + 61_504.0)).abs() < 1e-6);
    let b = leng_bound_for(&e8).unwrap();
    let truth = 248.0 + 124.0 * 249.0 * (696_729_600f64.log2() + 61_504.0);
    assert!(b.upper_f64() >= truth);
    assert!((b.upper_f64() - truth) / truth < 1e-9);
}

#[test]
fn heuristic_over_families() {
    for (fam, r) in [
        (Family::A, 3),
        (Family::B, 2),
        (Family::C, 3),
        (Family::D, 4),
        (Family::G2, 2),
        (Family::E6, 6),
    ] {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let h = length_heuristic(fam, r, q).unwrap();
            assert!(h.holds && h.phi_log < h.log2_order, "{fam} {r} {q}");
        }
    }
}

#[test]
fn bound_json_fields() {
    let e8 = lie_data(Family::E8, 8).unwrap();
    let b = leng_bound_for(&e8).unwrap();
    let j = serde_json::to_value(BoundJson::new(&e8, "leng", &b, true)).unwrap();
    for key in ["family", "rank", "d", "weyl_order", "bound_name", "valid"] {
        assert!(j.get(key).is_some(), "missing {key}");
    }
    assert!(j.get("log2").is_some() || j.get("exact").is_some());
}
