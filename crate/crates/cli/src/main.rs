use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use irred_core::cache::{build_group, GroupSpec, LinearKind};
use irred_core::chainstats::{all_stats, check_inequalities, stat, SearchConfig, Stat};
use irred_core::ffield::factorize;
use irred_core::gaction::{projective_space, share};
use irred_core::liebounds::{bound_report, BoundKind, Family};
use irred_core::verify::{run_named, RunConfig, Status, EXAMPLES};
use irred_core::{Error, Limits};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "irred-lab",
    version,
    about = "Irredundant-base statistics for groups of Lie type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment and check its assertions.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(EXAMPLES))]
        example: String,
        /// Comma-separated key=value pairs, e.g. `p=2,f=4`.
        #[arg(long, default_value = "")]
        params: String,
        /// Largest group order the experiment may enumerate.
        #[arg(long, default_value_t = 500_000)]
        budget: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute statistics of a linear group acting on projective space.
    Stats {
        #[arg(long, default_value = "A")]
        family: String,
        /// Dimension of the natural module.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Use SL instead of GL.
        #[arg(long)]
        special: bool,
        #[arg(long)]
        projective: bool,
        #[arg(long)]
        extend_semilinear: bool,
        /// base, Base, height, irred, or all.
        #[arg(long, default_value = "all")]
        stat: String,
        #[arg(long, default_value_t = 500_000)]
        budget: usize,
        #[arg(long, default_value_t = 50_000_000)]
        node_cap: u64,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Evaluate a bound for a family of Lie type.
    Bound {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: u32,
        /// leng, theorem, cor, parabolic, or heuristic.
        #[arg(long, default_value = "leng")]
        which: BoundKind,
        /// Field degree, for the corollary bounds.
        #[arg(long, default_value_t = 1)]
        f: u64,
        /// Field order, for the length heuristic.
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

fn parse_params(s: &str) -> Result<BTreeMap<String, String>, Error> {
    s.split(',')
        .filter(|kv| !kv.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {kv}")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn prime_power(q: u64) -> Result<(u32, u32), Error> {
    let fac = factorize(q);
    match fac.first() {
        Some(&p) if fac.iter().all(|&x| x == p) => Ok((p as u32, fac.len() as u32)),
        _ => Err(Error::InvalidParameter(format!("{q} is not a prime power"))),
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn verify(example: &str, params: &str, budget: usize, out: Option<PathBuf>) -> Result<bool, Error> {
    let cfg = RunConfig {
        max_group_order: budget,
        ..RunConfig::default()
    };
    let exp = run_named(example, &parse_params(params)?, &cfg)?;
    for c in &exp.checks {
        let mark = if c.passed {
            "ok  "
        } else if c.gating {
            "FAIL"
        } else {
            "info"
        };
        eprintln!("{mark} {}", c.name);
    }
    eprintln!(
        "status: {:?} ({:.0} ms, {} nodes)",
        exp.status, exp.ms, exp.nodes
    );
    let v = serde_json::to_value(&exp).expect("json");
    match out {
        Some(path) => std::fs::write(path, serde_json::to_string_pretty(&v).expect("json"))?,
        None => print(&v),
    }
    if exp.status == Status::SkippedBudget {
        eprintln!("over budget; rerun with a larger --budget");
    }
    Ok(exp.passed())
}

#[allow(clippy::too_many_arguments)]
fn stats(
    family: &str,
    n: usize,
    q: u64,
    special: bool,
    projective: bool,
    semilinear: bool,
    which: &str,
    budget: usize,
    node_cap: u64,
    cache_dir: Option<PathBuf>,
) -> Result<bool, Error> {
    if family.parse::<Family>()? != Family::A {
        return Err(Error::Unsupported(format!(
            "stats for family {family}; only A (linear groups)"
        )));
    }
    if !projective {
        return Err(Error::Unsupported(
            "the linear group is not faithful on projective space; pass --projective".into(),
        ));
    }
    let (p, f) = prime_power(q)?;
    let kind = if special {
        LinearKind::Special
    } else {
        LinearKind::General
    };
    let spec = GroupSpec {
        kind,
        n,
        p,
        f,
        projective,
        semilinear,
    };
    let limits = Limits {
        group_cap: budget,
        cache_dir,
        ..Limits::default()
    };
    let action = projective_space(share(build_group(&spec, &limits)?), &limits)?;
    let cfg = SearchConfig {
        node_cap,
        ..SearchConfig::default()
    };
    let header = json!({
        "group": action.group().name(),
        "order": action.group().order(),
        "points": action.omega_size(),
    });
    if which == "all" {
        let reports = all_stats(&action, &cfg)?;
        let ineq = check_inequalities(reports.values());
        let ok = reports.exact() && ineq.is_ok();
        let stats: Vec<_> = reports.iter().map(|r| r.to_json(&action)).collect();
        print(&json!({
            "action": header,
            "stats": stats,
            "rc_upper_bound": reports.height.value + 1,
            "inequalities_hold": ineq.is_ok(),
        }));
        return Ok(ok);
    }
    let s = Stat::parse(which).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "unknown statistic {which}; expected base, Base, height, irred or all"
        ))
    })?;
    let report = stat(&action, s, &cfg)?;
    print(&json!({ "action": header, "stats": [report.to_json(&action)] }));
    Ok(report.exact)
}

fn bound(family: &str, rank: u32, which: BoundKind, f: u64, q: u64) -> Result<bool, Error> {
    let (v, valid) = bound_report(family.parse::<Family>()?, rank, which, f, q)?;
    print(&v);
    Ok(valid)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            example,
            params,
            budget,
            json,
        } => verify(&example, &params, budget, json),
        Command::Stats {
            family,
            n,
            q,
            special,
            projective,
            extend_semilinear,
            stat,
            budget,
            node_cap,
            cache_dir,
        } => stats(
            &family,
            n,
            q,
            special,
            projective,
            extend_semilinear,
            &stat,
            budget,
            node_cap,
            cache_dir,
        ),
        Command::Bound {
            family,
            rank,
            which,
            f,
            q,
        } => bound(&family, rank, which, f, q),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
