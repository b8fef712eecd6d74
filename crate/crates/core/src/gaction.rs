//! Finite G-sets with interned points.
//!
//! Points are integers indexing a canonical table. Images are stored per point as a
//! column `g -> omega^g` over all group element IDs; small actions fill every column up
//! front, large ones compute a column the first time it is needed.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElem, FieldHandle};
use crate::grp::{
    apply_to_vector, det, mat_frobenius, mat_inv, mat_mul, normalize_projective, ElemOps, Group,
    GroupElem, GroupHandle, Subgroup,
};

/// Index into an action's point table.
pub type PointId = u32;

/// Normalized nonzero vectors of `F_q^n`, one per 1-space.
#[derive(Debug)]
pub struct ProjectiveSpace {
    field: FieldHandle,
    n: usize,
    vectors: Vec<Vec<FieldElem>>,
    index: HashMap<Vec<FieldElem>, u32>,
}

impl ProjectiveSpace {
    pub fn new(field: FieldHandle, n: usize, cap: usize) -> Result<Self> {
        let q = field.q() as u64;
        let count = (q.pow(n as u32) - 1) / (q - 1);
        if count > cap as u64 {
            return Err(Error::TooManyPoints {
                cap,
                points: count as usize,
            });
        }
        let mut vectors = Vec::with_capacity(count as usize);
        // Enumerate normalized vectors in lexicographic order: leading one at position
        // `lead`, zeros before, anything after.
        for lead in 0..n {
            let tail = n - lead - 1;
            let total = q.pow(tail as u32);
            for t in 0..total {
                let mut v = vec![FieldElem::ZERO; n];
                v[lead] = FieldElem::ONE;
                let mut rest = t;
                for j in (lead + 1..n).rev() {
                    v[j] = FieldElem((rest % q) as u32);
                    rest /= q;
                }
                vectors.push(v);
            }
        }
        vectors.sort();
        let index = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        Ok(ProjectiveSpace {
            field,
            n,
            vectors,
            index,
        })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, id: u32) -> &[FieldElem] {
        &self.vectors[id as usize]
    }

    /// The line spanned by a nonzero vector.
    pub fn line_of(&self, v: &[FieldElem]) -> Option<u32> {
        let mut v = v.to_vec();
        normalize_projective(&self.field, &mut v);
        self.index.get(&v).copied()
    }

    pub fn image(&self, line: u32, g: &GroupElem) -> u32 {
        let w = apply_to_vector(&self.field, g, self.vector(line));
        self.line_of(&w)
            .expect("invertible maps send lines to lines")
    }

    pub fn label(&self, line: u32) -> String {
        let parts: Vec<String> = self.vector(line).iter().map(|x| x.0.to_string()).collect();
        format!("<{}>", parts.join(","))
    }
}

/// How points are represented.
#[derive(Debug)]
pub enum PointKind {
    ProjectiveLine {
        space: ProjectiveSpace,
    },
    Decomposition {
        space: ProjectiveSpace,
        points: Vec<Vec<u32>>,
        index: HashMap<Vec<u32>, u32>,
    },
    Coset {
        subgroup: Subgroup,
        reps: Vec<u32>,
        coset_of: Vec<u32>,
    },
}

/// A finite transitive G-set.
pub struct Action {
    name: String,
    group: GroupHandle,
    kind: PointKind,
    columns: Vec<OnceLock<Vec<u32>>>,
    faithful: bool,
    lie_rank: Option<u32>,
}

impl std::fmt::Debug for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Action")
            .field("name", &self.name)
            .field("group", &self.group.name())
            .field("points", &self.omega_size())
            .field("faithful", &self.faithful)
            .finish()
    }
}

/// Debug dump of an action's point table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ActionDump {
    pub action_name: String,
    pub group_name: String,
    pub omega_size: usize,
    pub points: Vec<String>,
}

impl Action {
    fn build(name: String, group: GroupHandle, kind: PointKind, limits: &Limits) -> Result<Action> {
        let n = match &kind {
            PointKind::ProjectiveLine { space } => space.len(),
            PointKind::Decomposition { points, .. } => points.len(),
            PointKind::Coset { reps, .. } => reps.len(),
        };
        if n > limits.point_cap {
            return Err(Error::TooManyPoints {
                cap: limits.point_cap,
                points: n,
            });
        }
        let mut action = Action {
            name,
            group,
            kind,
            columns: (0..n).map(|_| OnceLock::new()).collect(),
            faithful: false,
            lie_rank: None,
        };
        if (action.group.order() as u64) * (n as u64) <= limits.table_budget {
            for w in 0..n as u32 {
                action.column(w);
            }
        }
        if n > 0 && action.orbit(0, &action.group.full()).len() != n {
            return Err(Error::NotTransitive);
        }
        action.faithful = action.kernel().is_trivial();
        Ok(action)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn kind(&self) -> &PointKind {
        &self.kind
    }

    pub fn omega_size(&self) -> usize {
        self.columns.len()
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful
    }

    /// Rank of the ambient group of Lie type, when known.
    pub fn lie_rank(&self) -> Option<u32> {
        self.lie_rank
    }

    pub fn with_lie_rank(mut self, r: u32) -> Self {
        self.lie_rank = Some(r);
        self
    }

    fn image_of_elem(&self, w: PointId, g: &GroupElem, gid: u32) -> PointId {
        match &self.kind {
            PointKind::ProjectiveLine { space } => space.image(w, g),
            PointKind::Decomposition {
                space,
                points,
                index,
            } => {
                let mut img: Vec<u32> = points[w as usize]
                    .iter()
                    .map(|&l| space.image(l, g))
                    .collect();
                img.sort_unstable();
                index[&img]
            }
            PointKind::Coset { reps, coset_of, .. } => {
                coset_of[self.group.mul(reps[w as usize], gid) as usize]
            }
        }
    }

    /// `omega^g`.
    pub fn apply(&self, w: PointId, g: u32) -> PointId {
        if let Some(col) = self.columns[w as usize].get() {
            return col[g as usize];
        }
        self.image_of_elem(w, &self.group.elem(g), g)
    }

    /// Images of `w` under every group element, computed once.
    pub fn column(&self, w: PointId) -> &[u32] {
        self.columns[w as usize].get_or_init(|| {
            (0..self.group.order() as u32)
                .map(|g| self.image_of_elem(w, &self.group.elem(g), g))
                .collect()
        })
    }

    fn use_column(&self, w: PointId, subset: usize) -> bool {
        self.columns[w as usize].get().is_some() || subset * 4 >= self.group.order()
    }

    /// `{ s in S : w^s = w }`.
    pub fn stabilizer(&self, s: &Subgroup, w: PointId) -> Subgroup {
        if self.use_column(w, s.order()) {
            let col = self.column(w);
            s.filter(|g| col[g as usize] == w)
        } else {
            s.filter(|g| self.apply(w, g) == w)
        }
    }

    /// Pointwise stabilizer of a sequence; the empty sequence gives `s` itself.
    pub fn pointwise_stabilizer(&self, s: &Subgroup, pts: &[PointId]) -> Subgroup {
        pts.iter().fold(s.clone(), |acc, &w| {
            if acc.is_trivial() {
                acc
            } else {
                self.stabilizer(&acc, w)
            }
        })
    }

    /// Sorted orbit of `w` under `s`.
    pub fn orbit(&self, w: PointId, s: &Subgroup) -> Vec<PointId> {
        let mut seen = vec![false; self.omega_size()];
        let mut out = Vec::new();
        let mut push = |x: u32| {
            if !seen[x as usize] {
                seen[x as usize] = true;
                out.push(x);
            }
        };
        if self.use_column(w, s.order()) {
            let col = self.column(w);
            s.members().iter().for_each(|&g| push(col[g as usize]));
        } else {
            s.members().iter().for_each(|&g| push(self.apply(w, g)));
        }
        out.sort_unstable();
        out
    }

    /// Orbits of `s`, each sorted, listed by least element.
    pub fn orbits(&self, s: &Subgroup) -> Vec<Vec<PointId>> {
        let mut assigned = vec![false; self.omega_size()];
        let mut out = Vec::new();
        for w in 0..self.omega_size() as u32 {
            if assigned[w as usize] {
                continue;
            }
            let orb = self.orbit(w, s);
            for &x in &orb {
                assigned[x as usize] = true;
            }
            out.push(orb);
        }
        out
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Subgroup {
        let mut s = self.group.full();
        for w in 0..self.omega_size() as u32 {
            if s.is_trivial() {
                break;
            }
            s = self.stabilizer(&s, w);
        }
        s
    }

    pub fn label(&self, w: PointId) -> String {
        match &self.kind {
            PointKind::ProjectiveLine { space } => space.label(w),
            PointKind::Decomposition { space, points, .. } => {
                let parts: Vec<String> =
                    points[w as usize].iter().map(|&l| space.label(l)).collect();
                format!("{{{}}}", parts.join("+"))
            }
            PointKind::Coset { reps, .. } => format!("H*g{}", reps[w as usize]),
        }
    }

    pub fn dump(&self) -> ActionDump {
        ActionDump {
            action_name: self.name.clone(),
            group_name: self.group.name().to_string(),
            omega_size: self.omega_size(),
            points: (0..self.omega_size() as u32)
                .map(|w| self.label(w))
                .collect(),
        }
    }

    /// Point whose stabilizer is the given vectors' 1-space (projective actions).
    pub fn projective_point(&self, v: &[FieldElem]) -> Option<PointId> {
        match &self.kind {
            PointKind::ProjectiveLine { space } => space.line_of(v),
            _ => None,
        }
    }

    /// Point for a decomposition given by spanning vectors.
    pub fn decomposition_point(&self, vecs: &[Vec<FieldElem>]) -> Option<PointId> {
        match &self.kind {
            PointKind::Decomposition { space, index, .. } => {
                let mut lines = vecs
                    .iter()
                    .map(|v| space.line_of(v))
                    .collect::<Option<Vec<_>>>()?;
                lines.sort_unstable();
                index.get(&lines).copied()
            }
            _ => None,
        }
    }

    /// Point containing group element `g` (coset actions).
    pub fn coset_point(&self, g: u32) -> Option<PointId> {
        match &self.kind {
            PointKind::Coset { coset_of, .. } => coset_of.get(g as usize).copied(),
            _ => None,
        }
    }
}

/// Action on the 1-spaces of `F_q^2`.
pub fn projective_line(group: GroupHandle, limits: &Limits) -> Result<Action> {
    if group.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: group.dim(),
        });
    }
    let space = ProjectiveSpace::new(group.field().clone(), 2, limits.point_cap)?;
    let name = format!("{} on P^1({})", group.name(), group.field().q());
    Action::build(name, group, PointKind::ProjectiveLine { space }, limits)
}

/// Action on 1-spaces of `F_q^n` for any `n`.
pub fn projective_space(group: GroupHandle, limits: &Limits) -> Result<Action> {
    let n = group.dim();
    let space = ProjectiveSpace::new(group.field().clone(), n, limits.point_cap)?;
    let name = format!("{} on P^{}({})", group.name(), n - 1, group.field().q());
    Action::build(name, group, PointKind::ProjectiveLine { space }, limits)
}

fn rank(field: &Field, n: usize, rows: &[&[FieldElem]]) -> usize {
    let m: Vec<FieldElem> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    if rows.len() == n {
        return if det(field, n, &m).is_zero() {
            n - 1
        } else {
            n
        };
    }
    unreachable!("only square rank tests are needed")
}

/// Number of decompositions of `F_q^n` into `n` lines: `|GL_n(q)| / ((q-1)^n n!)`.
pub fn decomposition_count(q: u64, n: u32) -> u128 {
    let qn = (q as u128).pow(n);
    let gl: u128 = (0..n).map(|i| qn - (q as u128).pow(i)).product();
    let fact: u128 = (1..=n as u128).product();
    gl / ((q as u128 - 1).pow(n) * fact)
}

/// Action on unordered direct-sum decompositions of `F_q^n` into `n` lines.
pub fn decomposition_action(group: GroupHandle, n: usize, limits: &Limits) -> Result<Action> {
    if group.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: group.dim(),
        });
    }
    let field = group.field().clone();
    let expected = decomposition_count(field.q() as u64, n as u32);
    if expected > limits.point_cap as u128 {
        return Err(Error::TooManyPoints {
            cap: limits.point_cap,
            points: expected.min(usize::MAX as u128) as usize,
        });
    }
    let space = ProjectiveSpace::new(field.clone(), n, limits.point_cap)?;
    let mut points = Vec::with_capacity(expected as usize);
    let mut combo: Vec<u32> = (0..n as u32).collect();
    let l = space.len() as u32;
    loop {
        let rows: Vec<&[FieldElem]> = combo.iter().map(|&i| space.vector(i)).collect();
        if rank(&field, n, &rows) == n {
            points.push(combo.clone());
        }
        // next combination
        let mut i = n;
        while i > 0 && combo[i - 1] == l - (n - i + 1) as u32 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        combo[i - 1] += 1;
        for j in i..n {
            combo[j] = combo[j - 1] + 1;
        }
    }
    debug_assert_eq!(points.len() as u128, expected);
    let index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i as u32))
        .collect();
    let name = format!("{} on decompositions of F_{}^{n}", group.name(), field.q());
    Action::build(
        name,
        group,
        PointKind::Decomposition {
            space,
            points,
            index,
        },
        limits,
    )
}

/// Right multiplication on the right cosets of `h`.
pub fn coset_action(group: GroupHandle, h: &Subgroup, limits: &Limits) -> Result<Action> {
    let order = group.order();
    if !order.is_multiple_of(h.order()) || !h.contains(group.identity_id()) {
        return Err(Error::InvalidParameter("not a subgroup".into()));
    }
    let index = order / h.order();
    if index > limits.point_cap {
        return Err(Error::TooManyPoints {
            cap: limits.point_cap,
            points: index,
        });
    }
    const UNSET: u32 = u32::MAX;
    let mut coset_of = vec![UNSET; order];
    let mut reps = Vec::with_capacity(index);
    for x in 0..order as u32 {
        if coset_of[x as usize] != UNSET {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &hh in h.members() {
            let y = group.mul(hh, x);
            if coset_of[y as usize] != UNSET {
                return Err(Error::InvalidParameter("not a subgroup".into()));
            }
            coset_of[y as usize] = c;
        }
    }
    let name = format!(
        "{} on cosets of a subgroup of order {}",
        group.name(),
        h.order()
    );
    Action::build(
        name,
        group,
        PointKind::Coset {
            subgroup: h.clone(),
            reps,
            coset_of,
        },
        limits,
    )
}

// --- decompositions without a point table --------------------------------------

/// Which group the local stabilizer computation works in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalFamily {
    /// `PSL_n(q)`.
    Special,
    /// `PGL_n(q)`.
    General,
    /// `PGammaL_n(q)`.
    Semilinear,
}

/// A decomposition as its sorted list of normalized spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition(pub Vec<Vec<FieldElem>>);

/// Decompositions of `F_q^n` handled one at a time, for sizes where the full point
/// table is out of reach. Stabilizers are enumerated inside the monomial group of a
/// decomposition's basis.
#[derive(Clone)]
pub struct DecompositionGeometry {
    ops: ElemOps,
}

impl DecompositionGeometry {
    pub fn new(field: FieldHandle, n: usize) -> Self {
        DecompositionGeometry {
            ops: ElemOps {
                field,
                dim: n,
                projective: true,
            },
        }
    }

    pub fn ops(&self) -> &ElemOps {
        &self.ops
    }

    pub fn decomposition(&self, vecs: &[Vec<FieldElem>]) -> Result<Decomposition> {
        let n = self.ops.dim;
        if vecs.len() != n || vecs.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: vecs.len(),
            });
        }
        let flat: Vec<FieldElem> = vecs.iter().flatten().copied().collect();
        if det(&self.ops.field, n, &flat).is_zero() {
            return Err(Error::Singular);
        }
        let mut lines: Vec<Vec<FieldElem>> = vecs.to_vec();
        for l in &mut lines {
            normalize_projective(&self.ops.field, l);
        }
        lines.sort();
        Ok(Decomposition(lines))
    }

    pub fn image(&self, d: &Decomposition, g: &GroupElem) -> Decomposition {
        let mut lines: Vec<Vec<FieldElem>> =
            d.0.iter()
                .map(|v| {
                    let mut w = apply_to_vector(&self.ops.field, g, v);
                    normalize_projective(&self.ops.field, &mut w);
                    w
                })
                .collect();
        lines.sort();
        Decomposition(lines)
    }

    pub fn fixes(&self, g: &GroupElem, d: &Decomposition) -> bool {
        &self.image(d, g) == d
    }

    fn in_family(&self, a: &[FieldElem], family: LocalFamily) -> bool {
        match family {
            LocalFamily::General | LocalFamily::Semilinear => true,
            LocalFamily::Special => {
                let field = &self.ops.field;
                let d = det(field, self.ops.dim, a);
                let l = field.log(d).expect("invertible") as u64;
                let gcd = num_integer::gcd(self.ops.dim as u64, field.q() as u64 - 1);
                l.is_multiple_of(gcd)
            }
        }
    }

    /// Setwise stabilizer of `d`, as canonical projective elements.
    pub fn stabilizer(&self, d: &Decomposition, family: LocalFamily) -> Vec<GroupElem> {
        let field = &self.ops.field;
        let n = self.ops.dim;
        let target: Vec<FieldElem> = d.0.iter().flatten().copied().collect();
        let frobs = if family == LocalFamily::Semilinear {
            field.f()
        } else {
            1
        };
        let units: Vec<FieldElem> = field.elements().filter(|x| !x.is_zero()).collect();
        let perms = permutations(n);
        let mut out = Vec::new();
        for r in 0..frobs {
            let source = mat_frobenius(field, &target, r);
            let source_inv = mat_inv(field, n, &source).expect("decomposition basis");
            let mut scal = vec![0usize; n];
            loop {
                for perm in &perms {
                    let mut p = vec![FieldElem::ZERO; n * n];
                    for i in 0..n {
                        // first scalar pinned to one: projective classes
                        let lam = if i == 0 {
                            FieldElem::ONE
                        } else {
                            units[scal[i]]
                        };
                        p[i * n + perm[i]] = lam;
                    }
                    let a = mat_mul(field, n, &source_inv, &mat_mul(field, n, &p, &target));
                    if self.in_family(&a, family) {
                        out.push(self.ops.canonical(GroupElem {
                            matrix: a,
                            frobexp: r,
                        }));
                    }
                }
                // odometer over scal[1..]
                let mut i = 1;
                while i < n {
                    scal[i] += 1;
                    if scal[i] < units.len() {
                        break;
                    }
                    scal[i] = 0;
                    i += 1;
                }
                if i >= n {
                    break;
                }
            }
        }
        out.sort_by(|a, b| (&a.matrix, a.frobexp).cmp(&(&b.matrix, b.frobexp)));
        out.dedup();
        out
    }

    /// Pointwise stabilizer of a nonempty sequence of decompositions.
    pub fn pointwise_stabilizer(
        &self,
        pts: &[Decomposition],
        family: LocalFamily,
    ) -> Result<Vec<GroupElem>> {
        let (first, rest) = pts.split_first().ok_or_else(|| {
            Error::InvalidParameter("empty sequence has the whole group as stabilizer".into())
        })?;
        Ok(self
            .stabilizer(first, family)
            .into_iter()
            .filter(|g| rest.iter().all(|d| self.fixes(g, d)))
            .collect())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Helper for experiments: the standard basis vector `e_i` of `F^n`.
pub fn basis_vector(n: usize, i: usize) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::ZERO; n];
    v[i] = FieldElem::ONE;
    v
}

/// Shares one group between several actions.
pub fn share(group: Group) -> GroupHandle {
    Arc::new(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{
        projective_general_linear, projective_special_linear, semilinear_extension,
        singer_normalizer, sylow2_and_index2,
    };

    fn lim() -> Limits {
        Limits::default()
    }

    fn pgaml(p: u32, f: u32) -> GroupHandle {
        let field = Field::new(p, f).unwrap();
        let pgl = projective_general_linear(2, &field, &lim()).unwrap();
        share(semilinear_extension(&pgl, &lim()).unwrap())
    }

    #[test]
    fn projective_line_sizes() {
        for (p, f) in [(2, 2), (2, 4)] {
            let g = pgaml(p, f);
            let a = projective_line(g, &lim()).unwrap();
            assert_eq!(a.omega_size(), (p.pow(f) + 1) as usize);
            assert!(a.is_faithful());
        }
    }

    #[test]
    fn three_point_stabilizer_in_pgammal_16() {
        let a = projective_line(pgaml(2, 4), &lim()).unwrap();
        let e1 = a.projective_point(&basis_vector(2, 0)).unwrap();
        let e2 = a.projective_point(&basis_vector(2, 1)).unwrap();
        let e12 = a
            .projective_point(&[FieldElem::ONE, FieldElem::ONE])
            .unwrap();
        let s = a.pointwise_stabilizer(&a.group().full(), &[e1, e2, e12]);
        assert_eq!(s.order(), 4);
        // generated by the pure Frobenius
        let sigma = a
            .group()
            .id_of(&GroupElem {
                matrix: crate::grp::identity_matrix(2),
                frobexp: 1,
            })
            .unwrap();
        assert_eq!(a.group().generate(&[sigma]), s);
    }

    #[test]
    fn pointwise_stabilizer_conventions() {
        let a = projective_line(pgaml(2, 2), &lim()).unwrap();
        let full = a.group().full();
        assert_eq!(a.pointwise_stabilizer(&full, &[]), full);
        let all: Vec<u32> = (0..a.omega_size() as u32).collect();
        assert!(a.pointwise_stabilizer(&full, &all).is_trivial());
    }

    #[test]
    fn orbits_of_point_stabilizer() {
        let a = projective_line(pgaml(2, 4), &lim()).unwrap();
        let s = a.stabilizer(&a.group().full(), 0);
        let mut sizes: Vec<usize> = a.orbits(&s).iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 16]);
        assert_eq!(a.orbits(&a.group().full()).len(), 1);
        assert_eq!(a.orbits(&a.group().trivial()).len(), 17);
    }

    #[test]
    fn decomposition_counts() {
        let f4 = Field::new(2, 2).unwrap();
        let g = share(projective_general_linear(2, &f4, &lim()).unwrap());
        assert_eq!(decomposition_action(g, 2, &lim()).unwrap().omega_size(), 10);
        let g16 = pgaml(2, 4);
        assert_eq!(
            decomposition_action(g16, 2, &lim()).unwrap().omega_size(),
            136
        );
        assert_eq!(decomposition_count(5, 3), 1_488_000 / (64 * 6));
    }

    #[test]
    fn coset_actions() {
        let (g, h, _) = singer_normalizer(3, &lim()).unwrap();
        let g = share(g);
        let a = coset_action(g.clone(), &h, &lim()).unwrap();
        assert_eq!(a.omega_size(), 8);
        assert!(a.is_faithful());
        let whole = coset_action(g.clone(), &g.full(), &lim()).unwrap();
        assert_eq!(whole.omega_size(), 1);
        assert!(!whole.is_faithful());
        let (g8, _, h8) = sylow2_and_index2(3, &lim()).unwrap();
        let a8 = coset_action(share(g8), &h8, &lim()).unwrap();
        assert_eq!(a8.omega_size(), 126);
    }

    #[test]
    fn coset_stabilizers_are_conjugates() {
        let (g, h, _) = singer_normalizer(3, &lim()).unwrap();
        let g = share(g);
        let a = coset_action(g.clone(), &h, &lim()).unwrap();
        let PointKind::Coset { reps, .. } = a.kind() else {
            unreachable!()
        };
        for (w, &x) in reps.iter().enumerate() {
            assert_eq!(a.stabilizer(&g.full(), w as u32), g.conjugate(&h, x));
        }
    }

    #[test]
    fn apply_is_an_action() {
        let a = projective_line(pgaml(3, 2), &lim()).unwrap();
        let g = a.group().clone();
        let n = g.order() as u32;
        for (x, y) in [(5u32, 77u32), (100, 3), (n - 1, n / 2)] {
            let xy = g.mul(x, y);
            for w in 0..a.omega_size() as u32 {
                assert_eq!(a.apply(w, xy), a.apply(a.apply(w, x), y));
                assert_eq!(a.apply(w, g.identity_id()), w);
            }
        }
    }

    #[test]
    fn dump_shape() {
        let a = projective_line(pgaml(2, 2), &lim()).unwrap();
        let d = a.dump();
        assert_eq!(d.omega_size, 5);
        assert_eq!(d.points.len(), 5);
        let json = serde_json::to_value(&d).unwrap();
        for key in ["action_name", "group_name", "omega_size", "points"] {
            assert!(json.get(key).is_some());
        }
    }

    #[test]
    fn local_stabilizer_matches_enumeration() {
        let f5 = Field::new(5, 1).unwrap();
        let g = share(projective_special_linear(2, &f5, &lim()).unwrap());
        let a = decomposition_action(g.clone(), 2, &lim()).unwrap();
        let geo = DecompositionGeometry::new(f5, 2);
        let d = geo
            .decomposition(&[basis_vector(2, 0), basis_vector(2, 1)])
            .unwrap();
        let w = a
            .decomposition_point(&[basis_vector(2, 0), basis_vector(2, 1)])
            .unwrap();
        let enumerated = a.stabilizer(&g.full(), w);
        let local = geo.stabilizer(&d, LocalFamily::Special);
        assert_eq!(local.len(), enumerated.order());
        for e in &local {
            assert!(enumerated.contains(g.id_of(e).unwrap()));
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        let f2 = Field::new(2, 1).unwrap();
        let g = share(crate::grp::general_linear(3, &f2, &lim()).unwrap());
        assert!(matches!(
            projective_line(g, &lim()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
