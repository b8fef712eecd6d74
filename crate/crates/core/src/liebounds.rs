//! Closed-form rank bounds evaluated with exact integers.
//!
//! Anything irrational (a base-2 logarithm of a non-power of two) is carried as a
//! rational upper bound, so every reported bound over-estimates.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{factorize, is_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "G2" | "G" => Family::G2,
            "F4" | "F" => Family::F4,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "2A" | "2B2" | "2D" | "3D4" | "2E6" | "2F4" | "2G2" => {
                return Err(Error::Unsupported(format!("twisted type {s}")))
            }
            _ => return Err(Error::InvalidParameter(format!("unknown Lie family {s}"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        f.write_str(s)
    }
}

/// Structural constants of a simple Lie type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDatum {
    pub family: Family,
    pub rank: u32,
    /// Dimension of the adjoint group.
    pub dim: u64,
    pub weyl_order: BigUint,
    pub pos_roots: u64,
    /// Degrees of the basic invariants.
    pub degrees: Vec<u32>,
}

pub fn lie_data(family: Family, r: u32) -> Result<LieDatum> {
    let invalid = || Error::InvalidParameter(format!("rank {r} is not valid for type {family}"));
    let degrees: Vec<u32> = match family {
        Family::A if r >= 1 => (2..=r + 1).collect(),
        Family::B | Family::C if r >= 2 => (1..=r).map(|i| 2 * i).collect(),
        Family::D if r >= 3 => {
            let mut d: Vec<u32> = (1..r).map(|i| 2 * i).collect();
            d.push(r);
            d.sort_unstable();
            d
        }
        Family::G2 if r == 2 => vec![2, 6],
        Family::F4 if r == 4 => vec![2, 6, 8, 12],
        Family::E6 if r == 6 => vec![2, 5, 6, 8, 9, 12],
        Family::E7 if r == 7 => vec![2, 6, 8, 10, 12, 14, 18],
        Family::E8 if r == 8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        _ => return Err(invalid()),
    };
    let r64 = r as u64;
    let (dim, weyl, pos) = match family {
        Family::A => (r64 * r64 + 2 * r64, factorial(r64 + 1), r64 * (r64 + 1) / 2),
        Family::B | Family::C => (
            2 * r64 * r64 + r64,
            BigUint::from(2u32).pow(r) * factorial(r64),
            r64 * r64,
        ),
        Family::D => (
            2 * r64 * r64 - r64,
            BigUint::from(2u32).pow(r - 1) * factorial(r64),
            r64 * r64 - r64,
        ),
        Family::G2 => (14, BigUint::from(12u32), 6),
        Family::F4 => (52, BigUint::from(1152u32), 24),
        Family::E6 => (78, BigUint::from(51_840u32), 36),
        Family::E7 => (133, BigUint::from(2_903_040u32), 63),
        Family::E8 => (248, BigUint::from(696_729_600u32), 120),
    };
    Ok(LieDatum {
        family,
        rank: r,
        dim,
        weyl_order: weyl,
        pos_roots: pos,
        degrees,
    })
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact content of a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactValue {
    Integer(BigInt),
    Rational(BigRational),
    /// `coeff * 2^exp2`, for constants too large to expand.
    ScaledPow2 {
        coeff: BigUint,
        exp2: u64,
    },
    /// Irrational; `upper` is a rational over-estimate.
    Real {
        upper: BigRational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub exact: ExactValue,
    /// Base-2 logarithm of the value.
    pub log2: f64,
    pub formula_tag: String,
}

impl BoundValue {
    pub fn integer(v: impl Into<BigInt>, tag: &str) -> Self {
        let v = v.into();
        let log2 = log2_big(&v.magnitude().clone());
        BoundValue {
            exact: ExactValue::Integer(v),
            log2,
            formula_tag: tag.into(),
        }
    }

    fn rational(v: BigRational, tag: &str) -> Self {
        if v.is_integer() {
            return Self::integer(v.to_integer(), tag);
        }
        let log2 = v.to_f64().map(f64::log2).unwrap_or(f64::NAN);
        BoundValue {
            exact: ExactValue::Rational(v),
            log2,
            formula_tag: tag.into(),
        }
    }

    fn real_upper(upper: BigRational, tag: &str) -> Self {
        let log2 = upper.to_f64().map(f64::log2).unwrap_or(f64::NAN);
        BoundValue {
            exact: ExactValue::Real { upper },
            log2,
            formula_tag: tag.into(),
        }
    }

    /// `log2` of the value when that is an exact integer.
    pub fn exact_log2(&self) -> Option<u64> {
        let pow2 = |n: &BigUint| -> Option<u64> {
            let b = n.bits();
            (b > 0 && n.trailing_zeros() == Some(b - 1)).then_some(b - 1)
        };
        match &self.exact {
            ExactValue::Integer(v) if v.sign() == num_bigint::Sign::Plus => pow2(v.magnitude()),
            ExactValue::ScaledPow2 { coeff, exp2 } => pow2(coeff).map(|k| k + exp2),
            _ => None,
        }
    }

    /// Smallest integer at least the value.
    pub fn ceil(&self) -> Option<BigInt> {
        match &self.exact {
            ExactValue::Integer(v) => Some(v.clone()),
            ExactValue::Rational(v) | ExactValue::Real { upper: v } => Some(v.ceil().to_integer()),
            ExactValue::ScaledPow2 { coeff, exp2 } => {
                Some(BigInt::from(coeff.clone() << *exp2 as usize))
            }
        }
    }

    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.exact {
            ExactValue::Integer(v) => Some(v),
            _ => None,
        }
    }

    /// A finite approximation rounded upward, when it fits in an `f64`.
    pub fn upper_f64(&self) -> f64 {
        match &self.exact {
            ExactValue::Integer(v) => v.to_f64().unwrap_or(f64::INFINITY),
            ExactValue::Rational(v) | ExactValue::Real { upper: v } => {
                v.to_f64().map(next_up).unwrap_or(f64::INFINITY)
            }
            ExactValue::ScaledPow2 { .. } => self.log2.exp2(),
        }
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

/// `log2 n` from the leading 64 bits.
pub fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (n >> shift as usize).to_u64().expect("64 bits");
    shift as f64 + (top as f64).log2()
}

/// Rational upper bound on `log2 n`.
pub fn log2_upper(n: &BigUint) -> BigRational {
    let mut l = log2_big(n);
    // a few ulps of headroom cover the rounding of the float log and the truncation
    for _ in 0..4 {
        l = next_up(l);
    }
    l += l.abs() * 4.0 * f64::EPSILON + 2f64.powi(-60);
    BigRational::from_float(l).expect("finite")
}

fn ratio(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `c = |W| * 2^(d^2)` for a Lie type.
pub fn degree_constant(datum: &LieDatum) -> BoundValue {
    let exp2 = datum.dim * datum.dim;
    BoundValue {
        log2: log2_big(&datum.weyl_order) + exp2 as f64,
        exact: ExactValue::ScaledPow2 {
            coeff: datum.weyl_order.clone(),
            exp2,
        },
        formula_tag: "|W|*2^(d^2)".into(),
    }
}

/// Chain-length bound `d + d(d+1)/2 * log2 c`.
pub fn leng_bound(d: u64, c: &BoundValue) -> Result<BoundValue> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let tri = ratio(d * (d + 1)) / ratio(2u32);
    let tag = "d + d(d+1)/2 * log2(c)";
    if let Some(l) = c.exact_log2() {
        return Ok(BoundValue::rational(ratio(d) + tri * ratio(l), tag));
    }
    let log_upper = match &c.exact {
        ExactValue::Integer(v) if v.sign() == num_bigint::Sign::Plus => log2_upper(v.magnitude()),
        ExactValue::ScaledPow2 { coeff, exp2 } => log2_upper(coeff) + ratio(*exp2),
        ExactValue::Rational(v) | ExactValue::Real { upper: v } if v >= &BigRational::one() => {
            let num = v.numer().magnitude().clone();
            let den = v.denom().magnitude().clone();
            log2_upper(&num)
                - BigRational::from_float(log2_big(&den) - 1e-9 * log2_big(&den).max(1.0))
                    .expect("finite")
        }
        _ => return Err(Error::InvalidParameter("c must be at least 1".into())),
    };
    Ok(BoundValue::real_upper(ratio(d) + tri * log_upper, tag))
}

/// The chain bound evaluated for a type directly, using `c = |W| 2^(d^2)`.
pub fn leng_bound_for(datum: &LieDatum) -> Result<BoundValue> {
    leng_bound(datum.dim, &degree_constant(datum))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremBound {
    /// `4r^2 + (1/2)(4r^2)(4r^2+1)(r^2+16r^4)`.
    pub raw: BoundValue,
    /// `174 r^8`.
    pub cr8: BoundValue,
    pub holds: bool,
}

pub fn theorem_raw(r: u64) -> BigInt {
    let r = BigInt::from(r);
    let r2 = &r * &r;
    let four_r2 = BigInt::from(4) * &r2;
    let r4 = &r2 * &r2;
    // (1/2)(4r^2) is 2r^2, so the product stays integral
    &four_r2 + BigInt::from(2) * &r2 * (&four_r2 + 1) * (&r2 + BigInt::from(16) * r4)
}

pub fn theorem_bound(r: u64) -> Result<TheoremBound> {
    if r == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    let raw = theorem_raw(r);
    let cr8 = BigInt::from(174) * BigInt::from(r).pow(8);
    let holds = raw <= cr8;
    Ok(TheoremBound {
        raw: BoundValue::integer(raw, "4r^2 + (1/2)(4r^2)(4r^2+1)(r^2+16r^4)"),
        cr8: BoundValue::integer(cr8, "174 r^8"),
        holds,
    })
}

/// Prime factors of `f` counted with multiplicity.
pub fn pi(f: u64) -> u32 {
    factorize(f).len() as u32
}

/// Distinct prime factors of `f`.
pub fn pi_distinct(f: u64) -> u32 {
    let mut v = factorize(f);
    v.dedup();
    v.len() as u32
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryBounds {
    /// `174 r^8`.
    pub simple: BoundValue,
    /// `177 r^8 + pi(f)`.
    pub almost_simple: BoundValue,
    pub pi: u32,
    pub pi_d: u32,
    /// `174 r^8 + log2(6r) + pi(f) <= 177 r^8 + pi(f)`.
    pub intermediate_holds: bool,
}

pub fn cor_bounds(r: u64, f: u64) -> Result<CorollaryBounds> {
    if r == 0 || f == 0 {
        return Err(Error::InvalidParameter("r and f must be positive".into()));
    }
    let r8 = BigInt::from(r).pow(8);
    let pi_f = pi(f);
    // log2(6r) <= 3 r^8  <=>  6r <= 2^(3 r^8); compare bit lengths exactly
    let six_r = BigUint::from(6u32) * r;
    let three_r8 = BigUint::from(3u32) * BigUint::from(r).pow(8);
    let intermediate_holds = BigUint::from(six_r.bits()) <= three_r8;
    Ok(CorollaryBounds {
        simple: BoundValue::integer(BigInt::from(174) * &r8, "174 r^8"),
        almost_simple: BoundValue::integer(BigInt::from(177) * &r8 + pi_f, "177 r^8 + pi(f)"),
        pi: pi_f,
        pi_d: pi_distinct(f),
        intermediate_holds,
    })
}

/// `n^4 log2 n` for parabolic actions of `PSL_n`.
pub fn parabolic_bound(n: u64) -> Result<BoundValue> {
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let n4 = BigUint::from(n).pow(4);
    let tag = "n^4 log2(n)";
    if n.is_power_of_two() {
        return Ok(BoundValue::integer(
            BigInt::from(n4 * n.trailing_zeros()),
            tag,
        ));
    }
    let upper = ratio(n4) * log2_upper(&BigUint::from(n));
    Ok(BoundValue::real_upper(upper, tag))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthHeuristic {
    /// `|Phi+| log_p q`, the length of a Sylow `p`-subgroup chain.
    pub phi_log: f64,
    pub log2_order: f64,
    pub order: BigUint,
    /// `|Phi+| / r^2`; reported instead of asserting an unspecified constant.
    pub phi_over_r2: f64,
    pub holds: bool,
}

/// Order of the untwisted group `q^{|Phi+|} prod (q^{d_i} - 1)`, before the center quotient.
pub fn group_order(datum: &LieDatum, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    datum
        .degrees
        .iter()
        .fold(qb.pow(datum.pos_roots as u32), |acc, &d| {
            acc * (qb.pow(d) - 1u32)
        })
}

pub fn length_heuristic(family: Family, r: u32, q: u64) -> Result<LengthHeuristic> {
    let fac = factorize(q);
    if fac.is_empty() || fac.iter().any(|&p| p != fac[0]) || !is_prime(fac[0]) {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let e = fac.len() as u64;
    let datum = lie_data(family, r)?;
    let order = group_order(&datum, q);
    let phi_log = (datum.pos_roots * e) as f64;
    let log2_order = log2_big(&order);
    // exact form of the strict inequality: p^(|Phi+| e) < |G|
    let holds = BigUint::from(q).pow(datum.pos_roots as u32) < order;
    Ok(LengthHeuristic {
        phi_log,
        log2_order,
        order,
        phi_over_r2: datum.pos_roots as f64 / (r as f64 * r as f64),
        holds,
    })
}

/// Output record for the `bound` subcommand.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundJson {
    pub family: String,
    pub rank: u32,
    pub d: u64,
    pub weyl_order: String,
    pub bound_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log2: Option<f64>,
    pub valid: bool,
}

impl BoundJson {
    pub fn new(datum: &LieDatum, name: &str, value: &BoundValue, valid: bool) -> Self {
        let exact = match &value.exact {
            ExactValue::Integer(v) => Some(v.to_string()),
            ExactValue::Rational(v) => Some(v.to_string()),
            ExactValue::ScaledPow2 { coeff, exp2 } => Some(format!("{coeff}*2^{exp2}")),
            ExactValue::Real { .. } => None,
        };
        BoundJson {
            family: datum.family.to_string(),
            rank: datum.rank,
            d: datum.dim,
            weyl_order: datum.weyl_order.to_string(),
            bound_name: name.into(),
            log2: exact.is_none().then_some(value.log2),
            exact,
            valid,
        }
    }
}

/// Which bound a [`bound_report`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Leng,
    Theorem,
    Cor,
    Parabolic,
    Heuristic,
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leng" => Ok(BoundKind::Leng),
            "theorem" => Ok(BoundKind::Theorem),
            "cor" => Ok(BoundKind::Cor),
            "parabolic" => Ok(BoundKind::Parabolic),
            "heuristic" => Ok(BoundKind::Heuristic),
            _ => Err(Error::InvalidParameter(format!(
                "unknown bound {s}; expected leng, theorem, cor, parabolic or heuristic"
            ))),
        }
    }
}

/// A [`BoundJson`] record plus a `detail` object for the bounds that carry more.
/// `f` is used by the corollary bounds and `q` by the length heuristic.
pub fn bound_report(
    family: Family,
    rank: u32,
    which: BoundKind,
    f: u64,
    q: u64,
) -> Result<(serde_json::Value, bool)> {
    let datum = lie_data(family, rank)?;
    let r = rank as u64;
    let (name, value, valid, detail) = match which {
        BoundKind::Leng => ("leng", leng_bound_for(&datum)?, true, None),
        BoundKind::Theorem => {
            let t = theorem_bound(r)?;
            let detail = serde_json::to_value(&t).ok();
            ("theorem", t.raw, t.holds, detail)
        }
        BoundKind::Cor => {
            let c = cor_bounds(r, f)?;
            let detail = serde_json::json!({
                "f": f,
                "simple": c.simple.as_integer().map(|v| v.to_string()),
                "pi": c.pi,
                "pi_d": c.pi_d,
            });
            (
                "almost_simple",
                c.almost_simple,
                c.intermediate_holds,
                Some(detail),
            )
        }
        BoundKind::Parabolic => {
            if family != Family::A {
                return Err(Error::Unsupported(
                    "the parabolic bound is for PSL_n (family A)".into(),
                ));
            }
            let detail = serde_json::json!({ "n": r + 1 });
            ("parabolic", parabolic_bound(r + 1)?, true, Some(detail))
        }
        BoundKind::Heuristic => {
            let h = length_heuristic(family, rank, q)?;
            let order = BoundValue::integer(h.order.clone(), "|G(q)|");
            let holds = h.holds;
            ("heuristic", order, holds, serde_json::to_value(&h).ok())
        }
    };
    let mut v = serde_json::to_value(BoundJson::new(&datum, name, &value, valid))
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    if let Some(d) = detail {
        v["detail"] = d;
    }
    Ok((v, valid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_and_e8_rows() {
        let a2 = lie_data(Family::A, 2).unwrap();
        assert_eq!(
            (a2.dim, a2.weyl_order.clone(), a2.pos_roots),
            (8, BigUint::from(6u32), 3)
        );
        let e8 = lie_data(Family::E8, 8).unwrap();
        assert_eq!((e8.dim, e8.pos_roots), (248, 120));
        assert_eq!(e8.weyl_order, BigUint::from(696_729_600u32));
    }

    #[test]
    fn invalid_ranks() {
        assert!(lie_data(Family::D, 2).is_err());
        assert!(lie_data(Family::E8, 7).is_err());
        assert!(lie_data(Family::A, 0).is_err());
        assert!(matches!(
            "3D4".parse::<Family>(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn table_consistency() {
        let mut rows = Vec::new();
        for r in 1..=12 {
            rows.push(lie_data(Family::A, r).unwrap());
        }
        for r in 2..=12 {
            rows.push(lie_data(Family::B, r).unwrap());
            rows.push(lie_data(Family::C, r).unwrap());
        }
        for r in 3..=12 {
            rows.push(lie_data(Family::D, r).unwrap());
        }
        for (fam, r) in [
            (Family::G2, 2),
            (Family::F4, 4),
            (Family::E6, 6),
            (Family::E7, 7),
            (Family::E8, 8),
        ] {
            rows.push(lie_data(fam, r).unwrap());
        }
        for row in rows {
            assert_eq!(row.dim, row.rank as u64 + 2 * row.pos_roots, "{row:?}");
            let prod = row.degrees.iter().fold(BigUint::one(), |a, &d| a * d);
            assert_eq!(prod, row.weyl_order, "{row:?}");
            let sum: u64 = row.degrees.iter().map(|&d| d as u64 - 1).sum();
            assert_eq!(sum, row.pos_roots);
            assert!(row.dim <= 4 * (row.rank as u64).pow(2));
        }
    }

    #[test]
    fn leng_examples() {
        let one = BoundValue::integer(1, "c");
        assert_eq!(
            leng_bound(5, &one).unwrap().as_integer(),
            Some(&BigInt::from(5))
        );
        let two = BoundValue::integer(2, "c");
        assert_eq!(
            leng_bound(1, &two).unwrap().as_integer(),
            Some(&BigInt::from(2))
        );
        let c = BoundValue {
            exact: ExactValue::ScaledPow2 {
                coeff: BigUint::from(8u32),
                exp2: 64,
            },
            log2: 67.0,
            formula_tag: "c".into(),
        };
        assert_eq!(
            leng_bound(8, &c).unwrap().as_integer(),
            Some(&BigInt::from(8 + 36 * 67))
        );
        assert!(leng_bound(0, &one).is_err());
    }

    #[test]
    fn leng_for_a2_is_an_overestimate() {
        let a2 = lie_data(Family::A, 2).unwrap();
        let b = leng_bound_for(&a2).unwrap();
        let truth = 8.0 + 36.0 * (6f64.log2() + 64.0);
        let ExactValue::Real { upper } = &b.exact else {
            panic!("irrational")
        };
        let up = upper.to_f64().unwrap();
        assert!(up >= truth && up - truth < 1e-6, "{up} vs {truth}");
    }

    #[test]
    fn theorem_examples() {
        let t1 = theorem_bound(1).unwrap();
        assert_eq!(t1.raw.as_integer(), Some(&BigInt::from(174)));
        assert_eq!(t1.cr8.as_integer(), Some(&BigInt::from(174)));
        let t2 = theorem_bound(2).unwrap();
        assert_eq!(t2.raw.as_integer(), Some(&BigInt::from(35_376)));
        assert_eq!(t2.cr8.as_integer(), Some(&BigInt::from(44_544)));
        assert!(t2.holds);
    }

    #[test]
    fn cor_examples() {
        let c = cor_bounds(1, 1).unwrap();
        assert_eq!((c.pi, c.pi_d), (0, 0));
        let c = cor_bounds(1, 12).unwrap();
        assert_eq!((c.pi, c.pi_d), (3, 2));
        let c = cor_bounds(1, 4).unwrap();
        assert_eq!(c.almost_simple.as_integer(), Some(&BigInt::from(179)));
        assert!(c.intermediate_holds);
    }

    #[test]
    fn parabolic_examples() {
        assert_eq!(
            parabolic_bound(2).unwrap().as_integer(),
            Some(&BigInt::from(16))
        );
        assert_eq!(
            parabolic_bound(4).unwrap().as_integer(),
            Some(&BigInt::from(512))
        );
        let b3 = parabolic_bound(3).unwrap();
        assert_eq!(b3.ceil(), Some(BigInt::from(129)));
        assert!(b3.upper_f64() >= 81.0 * 3f64.log2());
        assert!(parabolic_bound(1).is_err());
    }

    #[test]
    fn heuristic_examples() {
        let h = length_heuristic(Family::A, 1, 4).unwrap();
        assert_eq!(h.phi_log, 2.0);
        assert_eq!(h.order, BigUint::from(60u32));
        let h = length_heuristic(Family::A, 2, 2).unwrap();
        assert_eq!(h.phi_log, 3.0);
        assert_eq!(h.order, BigUint::from(168u32));
        assert!((h.log2_order - 168f64.log2()).abs() < 1e-12);
        assert!(h.holds);
        assert!(length_heuristic(Family::A, 1, 6).is_err());
    }

    #[test]
    fn log2_big_precision() {
        let n = BigUint::from(3u32).pow(200);
        let exact = 200.0 * 3f64.log2();
        assert!(((log2_big(&n) - exact) / exact).abs() < 1e-9);
        let up = log2_upper(&n).to_f64().unwrap();
        assert!(up >= exact);
    }
}
