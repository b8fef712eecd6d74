//! Named experiments: concrete groups and actions with exact expected values.
//!
//! Each run returns an [`Experiment`] record listing every check performed. Claims
//! that can only be tested below the parameter range where they are proved are
//! tagged [`Provenance::Derived`].

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use web_time::Instant;

use crate::chainstats::{
    all_stats, base_max_minimal, check_inequalities, irred_max, oracle_stats, predicates,
    ChainReport, SearchConfig, ORACLE_MAX_ORDER, ORACLE_MAX_POINTS,
};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffield::{factorize, is_prime, Field, FieldElem};
use crate::gaction::{
    basis_vector, coset_action, decomposition_action, projective_line, share, Decomposition,
    DecompositionGeometry, LocalFamily, PointId,
};
use crate::grp::{
    index2_by_functional, mat_frobenius, projective_general_linear, projective_special_linear,
    semilinear_extension, singer_normalizer, special_linear, sylow2_and_index2, Group, GroupElem,
    Subgroup,
};
use crate::liebounds::pi;

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    /// A value claimed by the theory being tested.
    Claimed,
    /// Immediate from definitions.
    Trivial,
    /// Computed here; the theory says nothing at these parameters.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub provenance: Provenance,
    pub passed: bool,
    /// Informational checks are recorded but do not decide the status.
    pub gating: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub expected: Expected,
    pub actual: Value,
    pub status: Status,
    pub nodes: u64,
    pub ms: f64,
    /// Null unless the experiment samples randomly.
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Experiment {
    fn new(name: &str, expected: Value, provenance: Provenance) -> Self {
        Experiment {
            experiment: name.into(),
            params: BTreeMap::new(),
            expected: Expected {
                value: expected,
                provenance,
            },
            actual: Value::Null,
            status: Status::Fail,
            nodes: 0,
            ms: 0.0,
            seed: None,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.into(), v.into());
        self
    }

    fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<Value>,
        actual: impl Into<Value>,
        provenance: Provenance,
        passed: bool,
    ) {
        self.checks.push(Check {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
            provenance,
            passed,
            gating: true,
        });
    }

    fn info(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<Value>,
        actual: impl Into<Value>,
        provenance: Provenance,
        passed: bool,
    ) {
        self.check(name, expected, actual, provenance, passed);
        self.checks.last_mut().expect("just pushed").gating = false;
    }

    fn count(&mut self, r: &ChainReport) {
        self.nodes += r.nodes_visited;
    }

    fn finish(mut self, start: Instant) -> Self {
        self.ms = start.elapsed().as_secs_f64() * 1e3;
        if self.status != Status::SkippedBudget {
            self.status = if self.all_passed() {
                Status::Pass
            } else {
                Status::Fail
            };
        }
        self
    }

    fn skipped(mut self, start: Instant, why: String) -> Self {
        self.status = Status::SkippedBudget;
        self.notes.push(why);
        self.ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.gating).all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks
            .iter()
            .filter(|c| c.gating && !c.passed)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Resources an experiment may use.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub limits: Limits,
    pub search: SearchConfig,
    /// Largest group order an experiment will enumerate.
    pub max_group_order: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            limits: Limits::default(),
            search: SearchConfig::default(),
            max_group_order: 500_000,
        }
    }
}

impl RunConfig {
    fn limits(&self) -> Limits {
        Limits {
            group_cap: self.limits.group_cap.min(self.max_group_order.max(1)),
            ..self.limits.clone()
        }
    }
}

fn element_order(g: &Group, x: u32) -> usize {
    let e = g.identity_id();
    let mut y = x;
    let mut k = 1;
    while y != e {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

fn is_cyclic(g: &Group, s: &Subgroup) -> bool {
    s.members()
        .iter()
        .any(|&x| element_order(g, x) == s.order())
}

/// `Irred <= 174 r^8` for an instance of Lie rank `r`.
fn per_instance_bound(exp: &mut Experiment, irred: u32, rank: u64) {
    let bound = 174u128 * (rank as u128).pow(8);
    exp.check(
        format!("Irred <= 174 r^8 (r = {rank})"),
        json!(bound.to_string()),
        irred,
        Provenance::Claimed,
        (irred as u128) <= bound,
    );
}

fn prime_power(q: u64) -> Result<(u32, u32)> {
    let fac = factorize(q);
    if fac.is_empty() || fac.iter().any(|&p| p != fac[0]) {
        return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
    }
    Ok((fac[0] as u32, fac.len() as u32))
}

// --- PGammaL_2(p^f) on the projective line ------------------------------------------

pub fn pgammal_order(p: u64, f: u32) -> u128 {
    let q = (p as u128).pow(f);
    (q + 1) * q * (q - 1) * f as u128
}

/// `Irred(PGammaL_2(p^f), P^1) = 3 + pi(f)`, the explicit chain, and the 3-point stabilizers.
pub fn run_pif(p: u32, f: u32, cfg: &RunConfig) -> Result<Experiment> {
    let start = Instant::now();
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if f == 0 {
        return Err(Error::InvalidParameter("f must be positive".into()));
    }
    let expected = 3 + pi(f as u64);
    let mut exp = Experiment::new("pif", json!(expected), Provenance::Claimed)
        .param("p", p)
        .param("f", f)
        .param("q", (p as u64).pow(f));
    let order = pgammal_order(p as u64, f);
    if order > cfg.max_group_order as u128 {
        return Ok(exp.skipped(
            start,
            format!("|PΓL_2| = {order} exceeds budget {}", cfg.max_group_order),
        ));
    }
    let limits = cfg.limits();
    let field = Field::with_cap(p, f, limits.field_cap)?;
    let pgl = projective_general_linear(2, &field, &limits)?;
    let g = share(semilinear_extension(&pgl, &limits)?);
    let action = projective_line(g.clone(), &limits)?.with_lie_rank(1);

    let report = irred_max(&action, &cfg.search)?;
    exp.count(&report);
    exp.actual = json!(report.value);
    exp.check(
        "Irred = 3 + pi(f)",
        expected,
        report.value,
        Provenance::Claimed,
        report.exact && report.value == expected,
    );
    exp.check(
        "engine witness is an irredundant base",
        true,
        {
            let pr = predicates(&action, &report.witness);
            pr.is_irredundant && pr.is_base
        },
        Provenance::Trivial,
        {
            let pr = predicates(&action, &report.witness);
            pr.is_irredundant && pr.is_base && report.witness.len() == report.value as usize
        },
    );
    per_instance_bound(&mut exp, report.value, 1);

    // the explicit chain <e1>, <e2>, <e1+e2>, <e1 + zeta_i e2>
    let e1 = basis_vector(2, 0);
    let e2 = basis_vector(2, 1);
    let line = |v: Vec<FieldElem>| action.projective_point(&v).ok_or(Error::NotInGroup);
    let mut chain = vec![
        line(e1.clone())?,
        line(e2.clone())?,
        line(vec![FieldElem::ONE, FieldElem::ONE])?,
    ];
    let mut degree = 1;
    for r in factorize(f as u64) {
        degree *= r as u32;
        let zeta = field.subfield_primitive(degree)?;
        chain.push(line(vec![FieldElem::ONE, zeta])?);
    }
    let _ = (e1, e2);
    let pr = predicates(&action, &chain);
    exp.check(
        "explicit chain is an irredundant base of length 3 + pi(f)",
        json!({"length": expected, "irredundant": true, "base": true}),
        json!({"length": chain.len(), "irredundant": pr.is_irredundant, "base": pr.is_base}),
        Provenance::Claimed,
        pr.is_irredundant && pr.is_base && chain.len() == expected as usize,
    );

    // every 3-point stabilizer is cyclic of order f
    let n = action.omega_size() as u32;
    let full = g.full();
    let mut bad = 0u64;
    let mut triples = 0u64;
    for a in 0..n {
        let sa = action.stabilizer(&full, a);
        for b in a + 1..n {
            let sab = action.stabilizer(&sa, b);
            for c in b + 1..n {
                let s = action.stabilizer(&sab, c);
                triples += 1;
                if s.order() != f as usize || !is_cyclic(&g, &s) {
                    bad += 1;
                }
            }
        }
    }
    exp.check(
        "every 3-point stabilizer is cyclic of order f",
        json!({"order": f, "cyclic": true, "failures": 0}),
        json!({"triples": triples, "failures": bad}),
        Provenance::Claimed,
        bad == 0,
    );
    Ok(exp.finish(start))
}

// --- SL_2(2^c) on cosets of an index-2 subgroup of a Sylow 2-subgroup -----------------

fn field_sqrt_char2(field: &Field, y: FieldElem) -> FieldElem {
    field.frobenius(y, field.f() - 1)
}

/// The hyperplane `{ t : coefficient k of t is 0 }` of `F_{2^c}` as a set of raw values.
fn coordinate_hyperplane(q: u32, k: u32) -> Vec<u32> {
    (0..q).filter(|t| t >> k & 1 == 0).collect()
}

/// Finds `d = diag(a, a^-1)` with `d^-1 H d = { u(t) : <mask, t> = 0 }`, where `H` is the
/// subgroup for mask 1.
fn torus_conjugator(g: &Group, mask: u32) -> Option<u32> {
    let field = g.field();
    let q = field.q();
    let mut target: Vec<u32> = (0..q)
        .filter(|t| (t & mask).count_ones().is_multiple_of(2))
        .collect();
    target.sort_unstable();
    let base = coordinate_hyperplane(q, 0);
    for s in 1..q {
        let s = FieldElem(s);
        let mut img: Vec<u32> = base.iter().map(|&t| field.mul(s, FieldElem(t)).0).collect();
        img.sort_unstable();
        if img == target {
            // conjugation by diag(a, a^-1) scales t by a^-2
            let a = field.inv(field_sqrt_char2(field, s)).ok()?;
            let d = GroupElem::linear(vec![
                a,
                FieldElem::ZERO,
                FieldElem::ZERO,
                field.inv(a).ok()?,
            ]);
            return g.id_of(&d);
        }
    }
    None
}

/// `Base(SL_2(2^c), H-cosets) = c`: the coordinate hyperplanes form a minimal base of
/// size `c`, and with `exhaustive` the maximum over all minimal bases is computed.
pub fn run_hyperplane(c: u32, exhaustive: bool, cfg: &RunConfig) -> Result<Experiment> {
    let start = Instant::now();
    if !(2..=6).contains(&c) {
        return Err(Error::InvalidParameter(format!("c = {c} is outside 2..6")));
    }
    let mut exp = Experiment::new("hyperplane", json!(c), Provenance::Claimed)
        .param("c", c)
        .param("exhaustive", exhaustive);
    let q = 1u64 << c;
    let order = q * (q * q - 1);
    if order > cfg.max_group_order as u64 {
        return Ok(exp.skipped(start, format!("|SL_2({q})| = {order} exceeds budget")));
    }
    let limits = cfg.limits();
    let (g, u, h) = sylow2_and_index2(c, &limits)?;
    let g = share(g);
    let action = coset_action(g.clone(), &h, &limits)?.with_lie_rank(1);
    exp.info(
        "|Omega| = |G| / 2^(c-1)",
        order / (q / 2),
        action.omega_size() as u64,
        Provenance::Trivial,
        action.omega_size() as u64 == order / (q / 2),
    );

    // every index-2 subgroup of U is a torus conjugate of H
    let unconjugated: Vec<u32> = (1..q as u32)
        .filter(|&m| torus_conjugator(&g, m).is_none())
        .collect();
    exp.check(
        "every index-2 subgroup of U is conjugate to H",
        json!([]),
        json!(unconjugated),
        Provenance::Derived,
        unconjugated.is_empty(),
    );

    // H_i = { t : coefficient i-1 vanishes } realized as the coset H d_i
    let mut points: Vec<PointId> = Vec::new();
    let mut stab_ok = true;
    for i in 0..c {
        let d = torus_conjugator(&g, 1 << i).ok_or(Error::NotInGroup)?;
        let w = action.coset_point(d).ok_or(Error::NotInGroup)?;
        let want = index2_by_functional(&g, 1 << i);
        stab_ok &= action.stabilizer(&g.full(), w) == want;
        points.push(w);
    }
    exp.check(
        "stabilizer of the point H_i is the hyperplane H_i",
        true,
        stab_ok,
        Provenance::Claimed,
        stab_ok,
    );
    let pr = predicates(&action, &points);
    exp.check(
        "{H_1..H_c} is a minimal base",
        json!({"size": c, "minimal_base": true}),
        json!({"size": points.len(), "minimal_base": pr.is_minimal_base, "independent": pr.is_independent}),
        Provenance::Claimed,
        pr.is_minimal_base && points.len() == c as usize,
    );
    let mut deletions_ok = true;
    for j in 0..c as usize {
        let rest: Vec<PointId> = points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, &w)| w)
            .collect();
        let s = action.pointwise_stabilizer(&g.full(), &rest);
        let ej = g
            .id_of(&crate::grp::unipotent(FieldElem(1 << j)))
            .ok_or(Error::NotInGroup)?;
        deletions_ok &= s == Subgroup::from_members(vec![g.identity_id(), ej]);
    }
    exp.check(
        "stabilizer of Lambda_j is <e_j>",
        true,
        deletions_ok,
        Provenance::Claimed,
        deletions_ok,
    );
    let _ = u;

    // Irred <= 1 + Omega(|H|) = c
    let irred_cap = 1 + c - 1;
    if exhaustive {
        let base_max = base_max_minimal(&action, &cfg.search)?;
        exp.count(&base_max);
        exp.actual = json!(base_max.value);
        exp.check(
            "Base = c (exhaustive)",
            c,
            base_max.value,
            Provenance::Claimed,
            base_max.exact && base_max.value == c,
        );
        let all = all_stats(&action, &cfg.search)?;
        for r in all.iter() {
            exp.count(r);
        }
        let stats = all.values();
        exp.check(
            "Irred <= c",
            irred_cap,
            stats.irred,
            Provenance::Claimed,
            all.exact() && stats.irred <= irred_cap,
        );
        let ineq = check_inequalities(stats).is_ok();
        exp.check(
            "base <= Base <= Height <= Irred",
            true,
            json!(stats),
            Provenance::Claimed,
            ineq,
        );
        per_instance_bound(&mut exp, stats.irred, 1);

        // the restriction to B = N_G(U) acting on H-cosets in B, for the record
        let bsub = g.full().filter(|id| g.matrix(id)[2].is_zero());
        let b = g.subgroup_as_group(&bsub, format!("B < SL_2({q})"))?;
        let hb = Subgroup::from_members(
            h.members()
                .iter()
                .map(|&x| b.id_of(&g.elem(x)).expect("H < B"))
                .collect(),
        );
        let b = share(b);
        let delta = coset_action(b, &hb, &limits)?;
        let restricted = base_max_minimal(&delta, &cfg.search)?;
        exp.count(&restricted);
        exp.info(
            "Base(B, Delta) >= c",
            json!({"at_least": c, "delta": 2 * (q - 1)}),
            json!({"value": restricted.value, "delta": delta.omega_size()}),
            Provenance::Derived,
            restricted.value >= c && delta.omega_size() as u64 == 2 * (q - 1),
        );
    } else {
        exp.actual = json!({"lower_bound": points.len()});
        exp.notes
            .push("exhaustive maximum not computed; lower bound from the construction only".into());
        exp.expected = Expected {
            value: json!({"lower_bound": c}),
            provenance: Provenance::Claimed,
        };
    }
    Ok(exp.finish(start))
}

// --- decompositions of F_q^n under PSL_n(q) ----------------------------------------

/// `D_i = <e_1> + ... + <e_{i-1}> + <e_i + e_{i+1}> + <e_{i+1}> + ... + <e_n>`.
fn decomposition_lines(field: &Field, n: usize, i: usize) -> Vec<Vec<FieldElem>> {
    let mut lines = Vec::with_capacity(n);
    for k in 0..n {
        if k == i {
            let mut v = basis_vector(n, i);
            v[i + 1] = FieldElem::ONE;
            lines.push(v);
        } else {
            lines.push(basis_vector(n, k));
        }
    }
    let _ = field;
    lines
}

/// The permutation matrix swapping `e_j` and `e_n`, with one sign flipped so that it
/// has determinant one.
fn swap_element(field: &Field, n: usize, j: usize) -> GroupElem {
    let mut m = vec![FieldElem::ZERO; n * n];
    for k in 0..n {
        let to = if k == j {
            n - 1
        } else if k == n - 1 {
            j
        } else {
            k
        };
        m[k * n + to] = FieldElem::ONE;
    }
    m[j * n + n - 1] = field.neg(FieldElem::ONE);
    GroupElem::linear(m)
}

/// The decompositions `D_1..D_{n-1}` form a minimal base for `PSL_n(q)`.
pub fn run_decompositions(n: usize, q: u64, cfg: &RunConfig) -> Result<Experiment> {
    let start = Instant::now();
    if n < 3 {
        return Err(Error::InvalidParameter("n must be at least 3".into()));
    }
    let (p, f) = prime_power(q)?;
    let mut exp = Experiment::new(
        "decomp",
        json!({"construction_is_minimal_base": true, "base_lower_bound": n - 1}),
        Provenance::Derived,
    )
    .param("n", n as u64)
    .param("q", q);
    let field = Field::with_cap(p, f, cfg.limits.field_cap)?;
    let geo = DecompositionGeometry::new(field.clone(), n);
    let ds: Vec<Decomposition> = (0..n - 1)
        .map(|i| geo.decomposition(&decomposition_lines(&field, n, i)))
        .collect::<Result<_>>()?;

    let all = geo.pointwise_stabilizer(&ds, LocalFamily::Special)?;
    let identity = geo.ops().identity();
    let is_base = all.len() == 1 && all[0] == identity;
    exp.check(
        "{D_1..D_(n-1)} is a base",
        1,
        all.len() as u64,
        Provenance::Derived,
        is_base,
    );

    let mut deleted_sizes = Vec::new();
    let mut witnesses_ok = true;
    let mut swap_fixes = Vec::new();
    for j in 0..n - 1 {
        let lambda: Vec<Decomposition> = ds
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, d)| d.clone())
            .collect();
        let stab = geo.pointwise_stabilizer(&lambda, LocalFamily::Special)?;
        deleted_sizes.push(stab.len());
        let witness = stab.iter().find(|g| **g != identity);
        witnesses_ok &= witness
            .is_some_and(|g| lambda.iter().all(|d| geo.fixes(g, d)) && !geo.fixes(g, &ds[j]));
        let s = swap_element(&field, n, j);
        swap_fixes.push(lambda.iter().all(|d| geo.fixes(&s, d)));
    }
    let minimal = is_base && deleted_sizes.iter().all(|&s| s > 1);
    exp.check(
        "every Lambda_j has nontrivial stabilizer",
        json!("all > 1"),
        json!(deleted_sizes),
        Provenance::Derived,
        deleted_sizes.iter().all(|&s| s > 1),
    );
    exp.check(
        "each Lambda_j has a witness fixing Lambda_j and moving D_j",
        true,
        witnesses_ok,
        Provenance::Derived,
        witnesses_ok,
    );
    // the literal swap element (e_j <-> e_n, other <e_i> fixed) is reported, not required
    exp.info(
        "swap element g_j fixes Lambda_j",
        json!(vec![true; n - 1]),
        json!(swap_fixes),
        Provenance::Claimed,
        swap_fixes.iter().all(|&b| b),
    );
    if swap_fixes.iter().any(|&b| !b) {
        exp.notes.push(
            "the element swapping <e_j> and <e_n> and fixing the other <e_i> does not fix Lambda_j"
                .into(),
        );
    }

    let mut other = None;
    if !minimal {
        // the construction does work one level up, where diagonal elements are available
        let pgl_sizes: Vec<usize> = (0..n - 1)
            .map(|j| {
                let lambda: Vec<Decomposition> = ds
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, d)| d.clone())
                    .collect();
                geo.pointwise_stabilizer(&lambda, LocalFamily::General)
                    .map(|s| s.len())
            })
            .collect::<Result<_>>()?;
        let pgl_base = geo.pointwise_stabilizer(&ds, LocalFamily::General)?.len() == 1;
        exp.info(
            "construction is a minimal base for PGL_n(q)",
            true,
            json!({"base": pgl_base, "deleted_stabilizer_orders": pgl_sizes}),
            Provenance::Derived,
            pgl_base && pgl_sizes.iter().all(|&s| s > 1),
        );
        other = search_minimal_base(&geo, &field, n - 1, 4000, DEFAULT_SEED)?;
        exp.seed = Some(DEFAULT_SEED);
        exp.info(
            "another set of n - 1 decompositions is a minimal base for PSL_n(q)",
            true,
            json!({"found": other.is_some(), "witness": other.as_ref().map(|w| w.iter().map(decomposition_label).collect::<Vec<_>>())}),
            Provenance::Derived,
            other.is_some(),
        );
    }
    let lower = if minimal || other.is_some() { n - 1 } else { 0 };
    exp.check(
        "Base >= n - 1",
        n as u64 - 1,
        lower as u64,
        Provenance::Derived,
        lower == n - 1,
    );
    exp.actual = json!({
        "construction_is_minimal_base": minimal,
        "deleted_stabilizer_orders": deleted_sizes,
        "base_lower_bound": lower,
    });

    // cross-check against the enumerated action when it fits
    let q64 = q as u128;
    let qn = q64.pow(n as u32);
    let gl: u128 = (0..n as u32).map(|i| qn - q64.pow(i)).product();
    let psl_order = gl / (q64 - 1) / num_integer::gcd(n as u128, q64 - 1);
    if psl_order <= cfg.max_group_order as u128 {
        let limits = cfg.limits();
        let g = share(projective_special_linear(n, &field, &limits)?);
        let action = decomposition_action(g, n, &limits)?;
        let pts: Vec<PointId> = (0..n - 1)
            .map(|i| {
                action
                    .decomposition_point(&decomposition_lines(&field, n, i))
                    .ok_or(Error::NotInGroup)
            })
            .collect::<Result<_>>()?;
        let pr = predicates(&action, &pts);
        exp.check(
            "enumerated action agrees: minimal base",
            true,
            json!({"minimal_base": pr.is_minimal_base, "points": action.omega_size()}),
            Provenance::Derived,
            pr.is_minimal_base == minimal && pr.is_minimal_base,
        );
    } else {
        exp.notes.push(format!(
            "|PSL_{n}({q})| = {psl_order} is over budget; enumerated cross-check skipped"
        ));
    }
    Ok(exp.finish(start))
}

fn decomposition_label(d: &Decomposition) -> String {
    let lines: Vec<String> =
        d.0.iter()
            .map(|v| {
                format!(
                    "<{}>",
                    v.iter()
                        .map(|x| x.0.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
    lines.join("+")
}

/// Decompositions built from coordinate lines and lines `<e_i + t e_k>`.
fn random_near_standard(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElem>> {
    loop {
        let mut lines: Vec<Vec<FieldElem>> = (0..n).map(|i| basis_vector(n, i)).collect();
        let changed = rng.gen_range(1..=2);
        for _ in 0..changed {
            let i = rng.gen_range(0..n);
            let k = rng.gen_range(0..n);
            if i != k {
                lines[i][k] = FieldElem(rng.gen_range(1..field.q()));
            }
        }
        let flat: Vec<FieldElem> = lines.iter().flatten().copied().collect();
        if !crate::grp::det(field, n, &flat).is_zero() {
            return lines;
        }
    }
}

/// Seeded random search for a minimal base of `size` decompositions in `PSL_n(q)`.
fn search_minimal_base(
    geo: &DecompositionGeometry,
    field: &Field,
    size: usize,
    tries: usize,
    seed: u64,
) -> Result<Option<Vec<Decomposition>>> {
    let n = geo.ops().dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut set: Vec<Decomposition> = Vec::with_capacity(size);
        while set.len() < size {
            let d = geo.decomposition(&random_near_standard(field, n, &mut rng))?;
            if !set.contains(&d) {
                set.push(d);
            }
        }
        if geo.pointwise_stabilizer(&set, LocalFamily::Special)?.len() != 1 {
            continue;
        }
        let mut minimal = true;
        for j in 0..size {
            let rest: Vec<Decomposition> = set
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, d)| d.clone())
                .collect();
            if !rest.is_empty() && geo.pointwise_stabilizer(&rest, LocalFamily::Special)?.len() == 1
            {
                minimal = false;
                break;
            }
        }
        if minimal {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

// --- Singer normalizer cosets -----------------------------------------------------

/// `SL_r(2)` on cosets of a Singer normalizer: conjugates of the Singer cycle meet
/// trivially and `Irred <= 3`.
pub fn run_singer(r: usize, cfg: &RunConfig) -> Result<Experiment> {
    let start = Instant::now();
    if r < 2 {
        return Err(Error::InvalidParameter("r must be at least 2".into()));
    }
    let mut exp = Experiment::new("singer", json!({"irred_at_most": 3}), Provenance::Derived)
        .param("r", r as u64);
    let limits = cfg.limits();
    let (g, h, cycle) = match singer_normalizer(r, &limits) {
        Ok(x) => x,
        Err(Error::GroupTooLarge { reached, .. }) => {
            return Ok(exp.skipped(
                start,
                format!("SL_{r}(2) exceeds budget (reached {reached})"),
            ))
        }
        Err(e) => return Err(e),
    };
    let g = share(g);
    let mut conjugates: Vec<Subgroup> = (0..g.order() as u32)
        .map(|x| g.conjugate(&cycle, x))
        .collect();
    conjugates.sort_by(|a, b| a.members().cmp(b.members()));
    conjugates.dedup();
    let expected_count = g.order() / h.order();
    exp.check(
        "number of Singer-cycle conjugates",
        expected_count as u64,
        conjugates.len() as u64,
        Provenance::Derived,
        conjugates.len() == expected_count,
    );
    let mut bad_pairs = 0u64;
    for i in 0..conjugates.len() {
        for j in i + 1..conjugates.len() {
            if !conjugates[i].intersect(&conjugates[j]).is_trivial() {
                bad_pairs += 1;
            }
        }
    }
    exp.check(
        "distinct conjugates intersect trivially",
        0,
        bad_pairs,
        Provenance::Derived,
        bad_pairs == 0,
    );

    let action = coset_action(g.clone(), &h, &limits)?.with_lie_rank(r as u32 - 1);
    let all = all_stats(&action, &cfg.search)?;
    for rep in all.iter() {
        exp.count(rep);
    }
    let stats = all.values();
    exp.actual = json!(stats);
    exp.check(
        "Irred <= 3",
        3,
        stats.irred,
        Provenance::Derived,
        all.exact() && stats.irred <= 3,
    );
    exp.info(
        "base = Irred",
        stats.irred,
        stats.base,
        Provenance::Derived,
        stats.base == stats.irred,
    );
    exp.check(
        "base <= Base <= Height <= Irred",
        true,
        json!(stats),
        Provenance::Claimed,
        check_inequalities(stats).is_ok(),
    );
    per_instance_bound(&mut exp, stats.irred, r as u64 - 1);
    if action.omega_size() <= ORACLE_MAX_POINTS && g.order() <= ORACLE_MAX_ORDER {
        let oracle = oracle_stats(&action)?;
        exp.check(
            "engines agree with brute force",
            json!(oracle),
            json!(stats),
            Provenance::Trivial,
            oracle == stats,
        );
    }
    Ok(exp.finish(start))
}

// --- intersections of subfield subgroups ------------------------------------------

/// `G1 ∩ G1^x = C_{G1}(x^-1 x^{F0})` for random `x` in `SL_2(q0^e)`, where `G1` is the
/// subgroup fixed by `F0: a -> a^{q0}`.
pub fn run_subfield_lemma(
    q0: u64,
    e: u32,
    samples: usize,
    seed: u64,
    cfg: &RunConfig,
) -> Result<Experiment> {
    let start = Instant::now();
    let (p, a) = prime_power(q0)?;
    if e == 0 {
        return Err(Error::InvalidParameter("e must be positive".into()));
    }
    let mut exp = Experiment::new("subfield", json!({"failures": 0}), Provenance::Claimed)
        .param("q0", q0)
        .param("e", e)
        .param("samples", samples as u64);
    exp.seed = Some(seed);
    let q = (q0 as u128).pow(e);
    let order = q * (q * q - 1);
    if order > cfg.max_group_order as u128 {
        return Ok(exp.skipped(start, format!("|SL_2({q})| = {order} exceeds budget")));
    }
    let limits = cfg.limits();
    let field = Field::with_cap(p, a * e, limits.field_cap)?;
    let g = special_linear(2, &field, &limits)?;
    let g1 = g.frobenius_fixed(a);
    let q0_order = (q0 * (q0 * q0 - 1)) as usize;
    exp.check(
        "|G1| = |SL_2(q0)|",
        q0_order as u64,
        g1.order() as u64,
        Provenance::Trivial,
        g1.order() == q0_order,
    );

    let f0 = |id: u32| -> u32 {
        let img = GroupElem::linear(mat_frobenius(&field, g.matrix(id), a));
        g.id_of(&img)
            .expect("SL_2 is closed under field automorphisms")
    };
    let identity_holds = |x: u32| -> bool {
        let xinv = g.inv(x);
        let lhs = g1.filter(|h| g1.contains(g.mul(g.mul(x, h), xinv)));
        let y = g.mul(xinv, f0(x));
        let rhs = g1.filter(|h| g.mul(h, y) == g.mul(y, h));
        lhs == rhs
    };
    exp.check(
        "x = identity",
        true,
        identity_holds(g.identity_id()),
        Provenance::Trivial,
        identity_holds(g.identity_id()),
    );
    let in_g1 = g1.members().iter().all(|&x| identity_holds(x));
    exp.check("every x in G1", true, in_g1, Provenance::Trivial, in_g1);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = rng.gen_range(0..g.order() as u32);
        if !identity_holds(x) {
            failures.push(x);
        }
    }
    exp.actual = json!({"failures": failures.len(), "samples": samples});
    exp.check(
        format!("{samples} random x"),
        json!({"failures": 0}),
        json!({"failures": failures.len(), "failing_ids": failures}),
        Provenance::Claimed,
        failures.is_empty(),
    );
    Ok(exp.finish(start))
}

// --- field-automorphism stabilizers of decompositions of F_q^2 -----------------------

fn frobenius_power(n: usize, r: u32) -> GroupElem {
    GroupElem {
        matrix: crate::grp::identity_matrix(n),
        frobexp: r,
    }
}

/// For `q = 2^(f1 f2)` and `D_i = <e1> + <e1 + zeta_i e2>`, the stabilizer in `<sigma>`
/// of the set without `D_j` is `<sigma^(d/f_j)>`, and `{D_1, D_2}` is independent in
/// `PGammaL_2(q)`.
pub fn run_gammal_partial(f1: u32, f2: u32, cfg: &RunConfig) -> Result<Experiment> {
    let start = Instant::now();
    if !is_prime(f1 as u64) || !is_prime(f2 as u64) || f1 == f2 {
        return Err(Error::InvalidParameter(
            "f1 and f2 must be distinct primes".into(),
        ));
    }
    let d = f1 * f2;
    let fs = [f1, f2];
    let mut exp = Experiment::new(
        "gammaL",
        json!({"lambda_1": format!("<sigma^{}>", d / f1), "lambda_2": format!("<sigma^{}>", d / f2)}),
        Provenance::Claimed,
    )
    .param("f1", f1)
    .param("f2", f2)
    .param("q", 1u64 << d);
    let field = Field::with_cap(2, d, cfg.limits.field_cap)?;
    let geo = DecompositionGeometry::new(field.clone(), 2);
    let e1 = basis_vector(2, 0);
    let ds: Vec<Decomposition> = fs
        .iter()
        .map(|&fi| {
            let zeta = field.subfield_primitive(fi)?;
            geo.decomposition(&[e1.clone(), vec![FieldElem::ONE, zeta]])
        })
        .collect::<Result<_>>()?;

    // (a) stabilizers inside <sigma>
    let mut actual = serde_json::Map::new();
    for (j, &fj) in fs.iter().enumerate() {
        let lambda: Vec<&Decomposition> = ds
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, x)| x)
            .collect();
        let fixed: Vec<u32> = (0..d)
            .filter(|&r| lambda.iter().all(|x| geo.fixes(&frobenius_power(2, r), x)))
            .collect();
        let step = d / fj;
        let want: Vec<u32> = (0..d).step_by(step as usize).collect();
        let found = match fixed.get(1) {
            Some(&s) => format!("<sigma^{s}>"),
            None => "1".into(),
        };
        actual.insert(format!("lambda_{}", j + 1), json!(found));
        exp.check(
            format!(
                "stabilizer of Lambda_{} in <sigma> is <sigma^{}>",
                j + 1,
                step
            ),
            json!(want),
            json!(fixed),
            Provenance::Claimed,
            fixed == want,
        );
    }
    exp.actual = Value::Object(actual);

    // (b) independence in PGammaL_2(q) through the monomial stabilizers
    let s1 = geo.pointwise_stabilizer(&ds[..1], LocalFamily::Semilinear)?;
    let s2 = geo.pointwise_stabilizer(&ds[1..], LocalFamily::Semilinear)?;
    let s12 = geo.pointwise_stabilizer(&ds, LocalFamily::Semilinear)?;
    let independent = s1.len() != s12.len() && s2.len() != s12.len();
    exp.check(
        "{D_1, D_2} independent in PΓL_2(q)",
        true,
        json!({"stab_D1": s1.len(), "stab_D2": s2.len(), "stab_both": s12.len()}),
        Provenance::Derived,
        independent,
    );

    let order = pgammal_order(2, d);
    if order <= cfg.max_group_order as u128 {
        let limits = cfg.limits();
        let pgl = projective_general_linear(2, &field, &limits)?;
        let g = share(semilinear_extension(&pgl, &limits)?);
        let action = decomposition_action(g, 2, &limits)?;
        let pts: Vec<PointId> = ds
            .iter()
            .map(|x| action.decomposition_point(&x.0).ok_or(Error::NotInGroup))
            .collect::<Result<_>>()?;
        let pr = predicates(&action, &pts);
        let full = action.group().full();
        let orders = json!({
            "stab_D1": action.pointwise_stabilizer(&full, &pts[..1]).order(),
            "stab_D2": action.pointwise_stabilizer(&full, &pts[1..]).order(),
            "stab_both": action.pointwise_stabilizer(&full, &pts).order(),
        });
        exp.check(
            "enumerated PΓL_2(q) agrees",
            json!({"stab_D1": s1.len(), "stab_D2": s2.len(), "stab_both": s12.len()}),
            orders.clone(),
            Provenance::Derived,
            pr.is_independent == independent
                && orders
                    == json!({"stab_D1": s1.len(), "stab_D2": s2.len(), "stab_both": s12.len()}),
        );
    } else {
        exp.notes.push(format!(
            "|PΓL_2(q)| = {order} is over budget; enumerated cross-check skipped"
        ));
    }
    Ok(exp.finish(start))
}

/// Experiment names accepted by [`run_named`].
pub const EXAMPLES: [&str; 6] = [
    "pif",
    "hyperplane",
    "decomp",
    "singer",
    "subfield",
    "gammaL",
];

/// Runs a named experiment with parameters from a string map; missing keys take
/// the default instance.
pub fn run_named(
    name: &str,
    params: &BTreeMap<String, String>,
    cfg: &RunConfig,
) -> Result<Experiment> {
    fn get<T: std::str::FromStr>(
        params: &BTreeMap<String, String>,
        key: &str,
        default: T,
    ) -> Result<T> {
        match params.get(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad value for {key}: {v}"))),
        }
    }
    match name {
        "pif" => run_pif(get(params, "p", 2)?, get(params, "f", 4)?, cfg),
        "hyperplane" => {
            let c = get(params, "c", 3)?;
            run_hyperplane(c, get(params, "exhaustive", c <= 3)?, cfg)
        }
        "decomp" => run_decompositions(get(params, "n", 3)?, get(params, "q", 5)?, cfg),
        "singer" => run_singer(get(params, "r", 3)?, cfg),
        "subfield" => run_subfield_lemma(
            get(params, "q0", 4)?,
            get(params, "e", 2)?,
            get(params, "samples", 100)?,
            get(params, "seed", DEFAULT_SEED)?,
            cfg,
        ),
        "gammaL" | "gammal" => {
            run_gammal_partial(get(params, "f1", 2)?, get(params, "f2", 3)?, cfg)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown example {name}; expected one of {EXAMPLES:?}"
        ))),
    }
}
