//! Browser bindings. Each export returns a JSON string; the `*_json` functions behind
//! them are plain Rust so they can be tested natively.

use std::collections::BTreeMap;

use irred_core::chainstats::{all_stats, check_inequalities, SearchConfig};
use irred_core::ffield::{factorize, Field};
use irred_core::gaction::{projective_line, share};
use irred_core::grp::{projective_general_linear, projective_special_linear, semilinear_extension};
use irred_core::liebounds::{bound_report, BoundKind, Family};
use irred_core::verify::{run_named, RunConfig};
use irred_core::{Error, Limits};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Groups above this order would freeze the page.
pub const MAX_ORDER: usize = 20_000;

fn to_string(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("json")
}

/// All four statistics of `group` (psl, pgl or pgammal) on the projective line over F_q.
pub fn line_stats_json(group: &str, q: u64) -> Result<String, Error> {
    let fac = factorize(q);
    let p = *fac
        .first()
        .ok_or_else(|| Error::InvalidParameter("q must be at least 2".into()))?;
    if fac.iter().any(|&x| x != p) {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    let limits = Limits {
        group_cap: MAX_ORDER,
        ..Limits::default()
    };
    let field = Field::new(p as u32, fac.len() as u32)?;
    let g = match group {
        "psl" => projective_special_linear(2, &field, &limits)?,
        "pgl" => projective_general_linear(2, &field, &limits)?,
        "pgammal" => {
            semilinear_extension(&projective_general_linear(2, &field, &limits)?, &limits)?
        }
        _ => return Err(Error::InvalidParameter(format!("unknown group {group}"))),
    };
    let action = projective_line(share(g), &limits)?;
    let reports = all_stats(&action, &SearchConfig::default())?;
    let stats: Vec<_> = reports.iter().map(|r| r.to_json(&action)).collect();
    Ok(to_string(&json!({
        "group": action.group().name(),
        "order": action.group().order(),
        "points": action.omega_size(),
        "stats": stats,
        "inequalities_hold": check_inequalities(reports.values()).is_ok(),
    })))
}

pub fn bound_json(family: &str, rank: u32, which: &str, f: u64, q: u64) -> Result<String, Error> {
    let (v, _) = bound_report(
        family.parse::<Family>()?,
        rank,
        which.parse::<BoundKind>()?,
        f,
        q,
    )?;
    Ok(to_string(&v))
}

/// Runs a named experiment. `params` is `k=v` pairs separated by commas.
pub fn experiment_json(name: &str, params: &str) -> Result<String, Error> {
    let mut map = BTreeMap::new();
    for kv in params.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {kv}")))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    let cfg = RunConfig {
        max_group_order: MAX_ORDER,
        ..RunConfig::default()
    };
    let exp = run_named(name, &map, &cfg)?;
    Ok(serde_json::to_string(&exp).expect("json"))
}

fn js(r: Result<String, Error>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn line_stats(group: &str, q: u32) -> Result<String, JsError> {
    js(line_stats_json(group, q as u64))
}

#[wasm_bindgen]
pub fn bound(family: &str, rank: u32, which: &str, f: u32, q: u32) -> Result<String, JsError> {
    js(bound_json(family, rank, which, f as u64, q as u64))
}

#[wasm_bindgen]
pub fn experiment(name: &str, params: &str) -> Result<String, JsError> {
    js(experiment_json(name, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn line_stats_values() {
        let v = parse(&line_stats_json("pgammal", 16).unwrap());
        assert_eq!(v["order"], 16320);
        assert_eq!(v["stats"][3]["value"], 5);
        assert_eq!(v["inequalities_hold"], true);
        assert!(line_stats_json("pgl", 6).is_err());
        assert!(line_stats_json("pgl", 64).is_err(), "over the page budget");
        assert!(line_stats_json("sp", 4).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(
            parse(&bound_json("A", 1, "cor", 4, 2).unwrap())["exact"],
            "179"
        );
        assert!(bound_json("E8", 8, "nope", 1, 2).is_err());
    }

    #[test]
    fn experiments() {
        let v = parse(&experiment_json("hyperplane", "c=3,exhaustive=true").unwrap());
        assert_eq!(v["status"], "pass");
        let v = parse(&experiment_json("pif", "p=2,f=6").unwrap());
        assert_eq!(v["status"], "skipped-budget");
    }
}
