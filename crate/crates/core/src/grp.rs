//! Fully enumerated matrix and semilinear groups over a finite field.
//!
//! An element is a pair `(A, r)` acting on row vectors by `v -> (v^{sigma^r}) A`,
//! where `sigma` is the entrywise Frobenius `x -> x^p`. Composition under this right
//! action is `(A, r)(B, s) = (A^{sigma^s} B, r + s mod f)`. Linear groups carry `r = 0`.
//!
//! Projective groups store one representative per class modulo all scalar matrices,
//! scaled so that the first nonzero entry is `1`.
//!
//! Every group is enumerated once; element IDs follow the integer order of the packed
//! encoding (matrix entries row-major, then the Frobenius exponent).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffield::{self, Field, FieldElem, FieldHandle};

/// A semilinear pair `(matrix, frobexp)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElem {
    pub matrix: Vec<FieldElem>,
    pub frobexp: u32,
}

impl GroupElem {
    pub fn linear(matrix: Vec<FieldElem>) -> Self {
        GroupElem { matrix, frobexp: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(identity_matrix(n))
    }

    pub fn dim(&self) -> usize {
        (self.matrix.len() as f64).sqrt() as usize
    }
}

pub fn identity_matrix(n: usize) -> Vec<FieldElem> {
    let mut m = vec![FieldElem::ZERO; n * n];
    for i in 0..n {
        m[i * n + i] = FieldElem::ONE;
    }
    m
}

pub fn mat_mul(field: &Field, n: usize, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut out = vec![FieldElem::ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] = field.add(out[i * n + j], field.mul(x, y));
                }
            }
        }
    }
    out
}

pub fn mat_frobenius(field: &Field, a: &[FieldElem], r: u32) -> Vec<FieldElem> {
    a.iter().map(|&x| field.frobenius(x, r)).collect()
}

/// Gauss-Jordan inverse.
pub fn mat_inv(field: &Field, n: usize, a: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let mut m = a.to_vec();
    let mut inv = identity_matrix(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r * n + col].is_zero())
            .ok_or(Error::Singular)?;
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let s = field.inv_nonzero(m[col * n + col]);
        for j in 0..n {
            m[col * n + j] = field.mul(m[col * n + j], s);
            inv[col * n + j] = field.mul(inv[col * n + j], s);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let c = m[r * n + col];
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                m[r * n + j] = field.sub(m[r * n + j], field.mul(c, m[col * n + j]));
                inv[r * n + j] = field.sub(inv[r * n + j], field.mul(c, inv[col * n + j]));
            }
        }
    }
    Ok(inv)
}

pub fn det(field: &Field, n: usize, a: &[FieldElem]) -> FieldElem {
    let mut m = a.to_vec();
    let mut d = FieldElem::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
            return FieldElem::ZERO;
        };
        if pivot != col {
            for j in 0..n {
                m.swap(pivot * n + j, col * n + j);
            }
            d = field.neg(d);
        }
        let piv = m[col * n + col];
        d = field.mul(d, piv);
        let pinv = field.inv_nonzero(piv);
        for r in col + 1..n {
            let c = field.mul(m[r * n + col], pinv);
            if c.is_zero() {
                continue;
            }
            for j in col..n {
                m[r * n + j] = field.sub(m[r * n + j], field.mul(c, m[col * n + j]));
            }
        }
    }
    d
}

/// Scales so the first nonzero entry is one.
pub fn normalize_projective(field: &Field, v: &mut [FieldElem]) {
    if let Some(&lead) = v.iter().find(|x| !x.is_zero()) {
        if lead != FieldElem::ONE {
            let s = field.inv_nonzero(lead);
            for x in v.iter_mut() {
                *x = field.mul(*x, s);
            }
        }
    }
}

/// `v^{sigma^r} A` for a row vector `v`.
pub fn apply_to_vector(field: &Field, g: &GroupElem, v: &[FieldElem]) -> Vec<FieldElem> {
    let n = v.len();
    let mut out = vec![FieldElem::ZERO; n];
    for (k, &x) in v.iter().enumerate() {
        let x = field.frobenius(x, g.frobexp);
        if x.is_zero() {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(&g.matrix[k * n..(k + 1) * n]) {
            if !y.is_zero() {
                *o = field.add(*o, field.mul(x, y));
            }
        }
    }
    out
}

/// Element arithmetic over a fixed field and dimension.
#[derive(Clone)]
pub struct ElemOps {
    pub field: FieldHandle,
    pub dim: usize,
    pub projective: bool,
}

impl ElemOps {
    pub fn mul(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        let f = self.field.f();
        let a = if y.frobexp == 0 {
            x.matrix.clone()
        } else {
            mat_frobenius(&self.field, &x.matrix, y.frobexp)
        };
        let mut out = GroupElem {
            matrix: mat_mul(&self.field, self.dim, &a, &y.matrix),
            frobexp: (x.frobexp + y.frobexp) % f,
        };
        self.canonicalize(&mut out);
        out
    }

    pub fn inv(&self, x: &GroupElem) -> Result<GroupElem> {
        let f = self.field.f();
        let ainv = mat_inv(&self.field, self.dim, &x.matrix)?;
        let back = (f - x.frobexp % f) % f;
        let mut out = GroupElem {
            matrix: mat_frobenius(&self.field, &ainv, back),
            frobexp: back,
        };
        self.canonicalize(&mut out);
        Ok(out)
    }

    pub fn canonicalize(&self, x: &mut GroupElem) {
        if self.projective {
            normalize_projective(&self.field, &mut x.matrix);
        }
    }

    pub fn canonical(&self, mut x: GroupElem) -> GroupElem {
        self.canonicalize(&mut x);
        x
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::identity(self.dim)
    }

    pub fn is_scalar(&self, x: &GroupElem) -> bool {
        if x.frobexp != 0 {
            return false;
        }
        let n = self.dim;
        let d = x.matrix[0];
        (0..n).all(|i| {
            (0..n).all(|j| x.matrix[i * n + j] == if i == j { d } else { FieldElem::ZERO })
        })
    }
}

/// Packs an element into a `u128` key whose integer order is the canonical order.
#[derive(Clone, Debug)]
pub(crate) struct KeyPacker {
    entry_bits: u32,
    frob_bits: u32,
}

impl KeyPacker {
    pub(crate) fn new(field: &Field, dim: usize) -> Result<Self> {
        let entry_bits = 32 - (field.q() - 1).max(1).leading_zeros();
        let frob_bits = 32 - field.f().saturating_sub(1).leading_zeros();
        let total = entry_bits as usize * dim * dim + frob_bits as usize;
        if total > 128 {
            return Err(Error::Unsupported(format!(
                "{dim}x{dim} matrices over F_{} do not fit a 128-bit key",
                field.q()
            )));
        }
        Ok(KeyPacker {
            entry_bits,
            frob_bits,
        })
    }

    #[inline]
    pub(crate) fn key(&self, x: &GroupElem) -> u128 {
        let mut k: u128 = 0;
        for e in &x.matrix {
            k = (k << self.entry_bits) | e.0 as u128;
        }
        (k << self.frob_bits) | x.frobexp as u128
    }
}

/// A sorted set of element IDs of a parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<u32>,
}

impl Subgroup {
    /// Wraps a member list; sorts and dedups.
    pub fn from_members(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub(crate) fn from_sorted(members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { members }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, id: u32) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let mut out = Vec::with_capacity(self.order().min(other.order()));
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Subgroup { members: out }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn filter(&self, mut keep: impl FnMut(u32) -> bool) -> Subgroup {
        Subgroup {
            members: self.members.iter().copied().filter(|&m| keep(m)).collect(),
        }
    }
}

/// A finite group with every element enumerated.
pub struct Group {
    name: String,
    ops: ElemOps,
    semilinear: bool,
    packer: KeyPacker,
    /// Row-major matrices, `dim * dim` entries per element.
    data: Vec<FieldElem>,
    frobs: Vec<u32>,
    index: HashMap<u128, u32>,
    identity: u32,
}

pub type GroupHandle = Arc<Group>;

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("dim", &self.ops.dim)
            .field("q", &self.ops.field.q())
            .finish()
    }
}

impl Group {
    /// Builds a group from an already closed list of canonical elements.
    pub(crate) fn from_elements(
        name: impl Into<String>,
        ops: ElemOps,
        semilinear: bool,
        mut elems: Vec<GroupElem>,
    ) -> Result<Group> {
        let packer = KeyPacker::new(&ops.field, ops.dim)?;
        elems.sort_by_cached_key(|e| packer.key(e));
        elems.dedup();
        let n2 = ops.dim * ops.dim;
        let mut data = Vec::with_capacity(elems.len() * n2);
        let mut frobs = Vec::with_capacity(elems.len());
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            data.extend_from_slice(&e.matrix);
            frobs.push(e.frobexp);
            index.insert(packer.key(e), i as u32);
        }
        let id = ops.identity();
        let identity = *index.get(&packer.key(&id)).ok_or(Error::NotInGroup)?;
        Ok(Group {
            name: name.into(),
            ops,
            semilinear,
            packer,
            data,
            frobs,
            index,
            identity,
        })
    }

    /// Breadth-first product closure of `gens`.
    pub fn closure(
        name: impl Into<String>,
        field: FieldHandle,
        dim: usize,
        gens: &[GroupElem],
        projective: bool,
        limits: &Limits,
    ) -> Result<Group> {
        for g in gens {
            if g.matrix.len() != dim * dim {
                return Err(Error::DimensionMismatch {
                    expected: dim * dim,
                    got: g.matrix.len(),
                });
            }
            if g.matrix.iter().any(|x| x.0 >= field.q()) || g.frobexp >= field.f() {
                return Err(Error::FieldMismatch);
            }
            if det(&field, dim, &g.matrix).is_zero() {
                return Err(Error::Singular);
            }
        }
        let semilinear = gens.iter().any(|g| g.frobexp != 0);
        let ops = ElemOps {
            field,
            dim,
            projective,
        };
        let packer = KeyPacker::new(&ops.field, dim)?;
        let gens: Vec<GroupElem> = gens.iter().cloned().map(|g| ops.canonical(g)).collect();
        let mut seen: HashMap<u128, ()> = HashMap::new();
        let id = ops.identity();
        seen.insert(packer.key(&id), ());
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in &gens {
                let prod = ops.mul(&elems[i], g);
                let k = packer.key(&prod);
                if seen.insert(k, ()).is_none() {
                    elems.push(prod);
                    if elems.len() > limits.group_cap {
                        return Err(Error::GroupTooLarge {
                            cap: limits.group_cap,
                            reached: elems.len(),
                        });
                    }
                }
            }
            i += 1;
        }
        Self::from_elements(name, ops, semilinear, elems)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &FieldHandle {
        &self.ops.field
    }

    pub fn dim(&self) -> usize {
        self.ops.dim
    }

    pub fn ops(&self) -> &ElemOps {
        &self.ops
    }

    pub fn is_projective(&self) -> bool {
        self.ops.projective
    }

    pub fn is_semilinear(&self) -> bool {
        self.semilinear
    }

    pub fn order(&self) -> usize {
        self.frobs.len()
    }

    pub fn identity_id(&self) -> u32 {
        self.identity
    }

    pub fn matrix(&self, id: u32) -> &[FieldElem] {
        let n2 = self.ops.dim * self.ops.dim;
        &self.data[id as usize * n2..(id as usize + 1) * n2]
    }

    pub fn frobexp(&self, id: u32) -> u32 {
        self.frobs[id as usize]
    }

    pub fn elem(&self, id: u32) -> GroupElem {
        GroupElem {
            matrix: self.matrix(id).to_vec(),
            frobexp: self.frobexp(id),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order() as u32).map(|i| self.elem(i))
    }

    /// ID of an element, after canonicalizing it.
    pub fn id_of(&self, x: &GroupElem) -> Option<u32> {
        if x.matrix.len() != self.ops.dim * self.ops.dim {
            return None;
        }
        let x = self.ops.canonical(x.clone());
        self.index.get(&self.packer.key(&x)).copied()
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        self.id_of(x).is_some()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.ops.mul(&self.elem(a), &self.elem(b));
        self.index[&self.packer.key(&p)]
    }

    pub fn inv(&self, a: u32) -> u32 {
        let p = self
            .ops
            .inv(&self.elem(a))
            .expect("group elements are invertible");
        self.index[&self.packer.key(&p)]
    }

    /// `x^{-1} a x` for IDs.
    pub fn conj(&self, a: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn full(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order() as u32).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![self.identity])
    }

    /// Subgroup generated by the given IDs.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![self.identity];
        let mut set: std::collections::HashSet<u32> = seen.iter().copied().collect();
        let mut i = 0;
        while i < seen.len() {
            for &g in gens {
                let p = self.mul(seen[i], g);
                if set.insert(p) {
                    seen.push(p);
                }
            }
            i += 1;
        }
        Subgroup::from_members(seen)
    }

    /// Checks identity, products and inverses exhaustively.
    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        if !s.contains(self.identity) {
            return false;
        }
        s.members().iter().all(|&a| {
            s.contains(self.inv(a)) && s.members().iter().all(|&b| s.contains(self.mul(a, b)))
        })
    }

    pub fn conjugate(&self, s: &Subgroup, x: u32) -> Subgroup {
        let xi = self.inv(x);
        Subgroup::from_members(
            s.members()
                .iter()
                .map(|&a| self.mul(self.mul(xi, a), x))
                .collect(),
        )
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        (0..self.order() as u32).all(|x| &self.conjugate(s, x) == s)
    }

    /// Re-enumerates a subgroup as a group in its own right.
    pub fn subgroup_as_group(&self, s: &Subgroup, name: impl Into<String>) -> Result<Group> {
        let elems = s.members().iter().map(|&m| self.elem(m)).collect();
        Self::from_elements(name, self.ops.clone(), self.semilinear, elems)
    }

    /// Scalar matrices lying in the group.
    pub fn scalars(&self) -> Subgroup {
        self.full().filter(|id| self.ops.is_scalar(&self.elem(id)))
    }

    /// Elements fixed by the entrywise map `x -> x^{p^r}`.
    pub fn frobenius_fixed(&self, r: u32) -> Subgroup {
        let field = self.field();
        self.full().filter(|id| {
            let m = self.matrix(id);
            let mut img = GroupElem {
                matrix: mat_frobenius(field, m, r),
                frobexp: self.frobexp(id),
            };
            self.ops.canonicalize(&mut img);
            img.matrix == m
        })
    }
}

// --- named constructions ---------------------------------------------------

fn transvection_gens(field: &Field, n: usize) -> Vec<GroupElem> {
    let basis: Vec<FieldElem> = (0..field.f())
        .map(|k| {
            let mut c = vec![0; field.f() as usize];
            c[k as usize] = 1;
            field.from_coeffs(&c).expect("basis vector")
        })
        .collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &b in &basis {
                let mut m = identity_matrix(n);
                m[i * n + j] = b;
                gens.push(GroupElem::linear(m));
            }
        }
    }
    if gens.is_empty() {
        gens.push(GroupElem::identity(n));
    }
    gens
}

fn gl_gens(field: &Field, n: usize) -> Vec<GroupElem> {
    let mut gens = transvection_gens(field, n);
    let mut d = identity_matrix(n);
    d[0] = field.generator();
    gens.push(GroupElem::linear(d));
    gens
}

pub fn special_linear(n: usize, field: &FieldHandle, limits: &Limits) -> Result<Group> {
    let name = format!("SL_{n}({})", field.q());
    Group::closure(
        name,
        field.clone(),
        n,
        &transvection_gens(field, n),
        false,
        limits,
    )
}

pub fn general_linear(n: usize, field: &FieldHandle, limits: &Limits) -> Result<Group> {
    let name = format!("GL_{n}({})", field.q());
    Group::closure(name, field.clone(), n, &gl_gens(field, n), false, limits)
}

/// `PSL_n(q)`, enumerated directly modulo scalars.
pub fn projective_special_linear(n: usize, field: &FieldHandle, limits: &Limits) -> Result<Group> {
    let name = format!("PSL_{n}({})", field.q());
    Group::closure(
        name,
        field.clone(),
        n,
        &transvection_gens(field, n),
        true,
        limits,
    )
}

/// `PGL_n(q)`, enumerated directly modulo scalars.
pub fn projective_general_linear(n: usize, field: &FieldHandle, limits: &Limits) -> Result<Group> {
    let name = format!("PGL_{n}({})", field.q());
    Group::closure(name, field.clone(), n, &gl_gens(field, n), true, limits)
}

/// All pairs `(A, r)` with `A` in `g` and `0 <= r < f`. `g` must be normalized by the
/// entrywise Frobenius, which is checked.
pub fn semilinear_extension(g: &Group, limits: &Limits) -> Result<Group> {
    let field = g.field().clone();
    let f = field.f();
    if f == 1 || g.is_semilinear() {
        return Group::from_elements(
            g.name(),
            g.ops.clone(),
            g.semilinear,
            g.elements().collect(),
        );
    }
    let size = g.order() * f as usize;
    if size > limits.group_cap {
        return Err(Error::GroupTooLarge {
            cap: limits.group_cap,
            reached: size,
        });
    }
    for id in 0..g.order() as u32 {
        let img = GroupElem::linear(mat_frobenius(&field, g.matrix(id), 1));
        if !g.contains(&img) {
            return Err(Error::InvalidParameter(format!(
                "{} is not normalized by the field automorphism",
                g.name()
            )));
        }
    }
    let mut elems = Vec::with_capacity(size);
    for id in 0..g.order() as u32 {
        for r in 0..f {
            elems.push(GroupElem {
                matrix: g.matrix(id).to_vec(),
                frobexp: r,
            });
        }
    }
    let name = match g.name().strip_prefix("PGL") {
        Some(rest) => format!("PΓL{rest}"),
        None => match g.name().strip_prefix("GL") {
            Some(rest) => format!("ΓL{rest}"),
            None => format!("{}.{f}", g.name()),
        },
    };
    Group::from_elements(name, g.ops.clone(), true, elems)
}

/// Quotient by the scalar matrices of `g`.
pub fn projective_quotient(g: &Group) -> Result<Group> {
    if g.is_projective() {
        return Group::from_elements(
            g.name(),
            g.ops.clone(),
            g.semilinear,
            g.elements().collect(),
        );
    }
    let ops = ElemOps {
        projective: true,
        ..g.ops.clone()
    };
    let elems: Vec<GroupElem> = g.elements().map(|e| ops.canonical(e)).collect();
    let name = format!("P{}", g.name());
    Group::from_elements(name, ops, g.semilinear, elems)
}

/// `SL_r(2)` with the normalizer of a Singer cycle: the companion matrix of the least
/// primitive polynomial of degree `r` together with the squaring map of the induced
/// `F_{2^r}` structure.
pub fn singer_normalizer(r: usize, limits: &Limits) -> Result<(Group, Subgroup, Subgroup)> {
    let field = Field::with_cap(2, 1, limits.field_cap)?;
    let g = special_linear(r, &field, limits)?;
    let m = ffield::least_primitive_polynomial(2, r as u32)?;
    let to_row = |c: Vec<u32>| c.into_iter().map(FieldElem).collect::<Vec<_>>();
    // rows are images of the basis 1, x, ..., x^{r-1}
    let companion: Vec<FieldElem> = (0..r)
        .flat_map(|i| to_row(ffield::power_of_x_mod(i as u64 + 1, &m, 2)))
        .collect();
    let frob: Vec<FieldElem> = (0..r)
        .flat_map(|i| to_row(ffield::power_of_x_mod(2 * i as u64, &m, 2)))
        .collect();
    let c = g
        .id_of(&GroupElem::linear(companion))
        .ok_or(Error::NotInGroup)?;
    let s = g.id_of(&GroupElem::linear(frob)).ok_or(Error::NotInGroup)?;
    let cycle = g.generate(&[c]);
    let h = g.generate(&[c, s]);
    Ok((g, h, cycle))
}

/// `SL_2(2^c)`, its upper unitriangular Sylow 2-subgroup `U`, and
/// `H = { u(t) : t has zero constant coefficient }` of index 2 in `U`.
pub fn sylow2_and_index2(c: u32, limits: &Limits) -> Result<(Group, Subgroup, Subgroup)> {
    if c == 0 {
        return Err(Error::InvalidParameter("c must be positive".into()));
    }
    let field = Field::with_cap(2, c, limits.field_cap)?;
    let g = special_linear(2, &field, limits)?;
    let u = unitriangular(&g);
    let h = index2_by_functional(&g, 1);
    Ok((g, u, h))
}

pub(crate) fn unipotent(t: FieldElem) -> GroupElem {
    GroupElem::linear(vec![FieldElem::ONE, t, FieldElem::ZERO, FieldElem::ONE])
}

fn unitriangular(g: &Group) -> Subgroup {
    Subgroup::from_members(
        g.field()
            .elements()
            .map(|t| g.id_of(&unipotent(t)).expect("unipotent lies in SL_2"))
            .collect(),
    )
}

/// `{ u(t) : <mask, t> = 0 }` where `t` is read as a bit vector over `F_2`.
pub fn index2_by_functional(g: &Group, mask: u32) -> Subgroup {
    Subgroup::from_members(
        g.field()
            .elements()
            .filter(|t| (t.0 & mask).count_ones().is_multiple_of(2))
            .map(|t| g.id_of(&unipotent(t)).expect("unipotent lies in SL_2"))
            .collect(),
    )
}

/// Every index-2 subgroup of the unitriangular group of `SL_2(2^c)`, one per nonzero
/// functional on `F_2^c`.
pub fn index2_subgroups(g: &Group) -> Vec<Subgroup> {
    let q = g.field().q();
    (1..q).map(|mask| index2_by_functional(g, mask)).collect()
}

/// `{ g : g x = x g }`; `x` need not lie in the group.
pub fn centralizer(g: &Group, x: &GroupElem) -> Subgroup {
    let ops = g.ops();
    let x = ops.canonical(x.clone());
    g.full().filter(|id| {
        let e = g.elem(id);
        ops.mul(&e, &x) == ops.mul(&x, &e)
    })
}
