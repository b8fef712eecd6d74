//! On-disk cache of enumerated classical groups.
//!
//! One little-endian binary file per group: a header (magic, format version, field
//! and dimension), the element list, and a trailing FNV-1a checksum. A file that
//! fails any check is ignored and rebuilt.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldElem};
use crate::grp::{
    general_linear, projective_general_linear, projective_special_linear, semilinear_extension,
    special_linear, ElemOps, Group, GroupElem,
};

const MAGIC: &[u8; 4] = b"IRGC";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinearKind {
    Special,
    General,
}

/// A classical group determined by its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub kind: LinearKind,
    pub n: usize,
    pub p: u32,
    pub f: u32,
    pub projective: bool,
    pub semilinear: bool,
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<Group> {
        let field = Field::with_cap(self.p, self.f, limits.field_cap)?;
        let base = match (self.kind, self.projective) {
            (LinearKind::Special, false) => special_linear(self.n, &field, limits)?,
            (LinearKind::General, false) => general_linear(self.n, &field, limits)?,
            (LinearKind::Special, true) => projective_special_linear(self.n, &field, limits)?,
            (LinearKind::General, true) => projective_general_linear(self.n, &field, limits)?,
        };
        if self.semilinear {
            semilinear_extension(&base, limits)
        } else {
            Ok(base)
        }
    }

    pub fn file_name(&self) -> String {
        let kind = match self.kind {
            LinearKind::Special => "sl",
            LinearKind::General => "gl",
        };
        format!(
            "{}{kind}_{}_{}_{}{}.grp",
            if self.projective { "p" } else { "" },
            self.n,
            self.p,
            self.f,
            if self.semilinear { "_semi" } else { "" }
        )
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
    })
}

pub fn encode(spec: &GroupSpec, g: &Group) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    for v in [spec.p, spec.f, spec.n as u32] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.push(spec.projective as u8);
    out.push(spec.semilinear as u8);
    out.push(matches!(spec.kind, LinearKind::General) as u8);
    let name = g.name().as_bytes();
    out.extend_from_slice(&(name.len() as u32).to_le_bytes());
    out.extend_from_slice(name);
    out.extend_from_slice(&(g.order() as u64).to_le_bytes());
    for id in 0..g.order() as u32 {
        for e in g.matrix(id) {
            out.extend_from_slice(&e.0.to_le_bytes());
        }
        out.extend_from_slice(&g.frobexp(id).to_le_bytes());
    }
    let sum = fnv1a(&out);
    out.extend_from_slice(&sum.to_le_bytes());
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, k: usize) -> Result<&[u8]> {
        let end = self
            .pos
            .checked_add(k)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| Error::Cache("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
}

pub fn decode(spec: &GroupSpec, bytes: &[u8], limits: &Limits) -> Result<Group> {
    if bytes.len() < 8 {
        return Err(Error::Cache("truncated".into()));
    }
    let (body, tail) = bytes.split_at(bytes.len() - 8);
    if fnv1a(body) != u64::from_le_bytes(tail.try_into().expect("8 bytes")) {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let mut r = Reader {
        bytes: body,
        pos: 0,
    };
    if r.take(4)? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(Error::Cache(format!(
            "format version {version}, expected {FORMAT_VERSION}"
        )));
    }
    let (p, f, n) = (r.u32()?, r.u32()?, r.u32()? as usize);
    let (projective, semilinear, general) = (r.u8()? != 0, r.u8()? != 0, r.u8()? != 0);
    let kind = if general {
        LinearKind::General
    } else {
        LinearKind::Special
    };
    let stored = GroupSpec {
        kind,
        n,
        p,
        f,
        projective,
        semilinear,
    };
    if &stored != spec {
        return Err(Error::Cache(format!(
            "file holds {stored:?}, wanted {spec:?}"
        )));
    }
    let name_len = r.u32()? as usize;
    let name = String::from_utf8(r.take(name_len)?.to_vec())
        .map_err(|_| Error::Cache("bad name".into()))?;
    let count = r.u64()? as usize;
    if count > limits.group_cap {
        return Err(Error::GroupTooLarge {
            cap: limits.group_cap,
            reached: count,
        });
    }
    let field = Field::with_cap(p, f, limits.field_cap)?;
    let mut elems = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let x = r.u32()?;
            if x >= field.q() {
                return Err(Error::Cache("entry outside the field".into()));
            }
            m.push(FieldElem(x));
        }
        let frobexp = r.u32()?;
        if frobexp >= f {
            return Err(Error::Cache("bad Frobenius exponent".into()));
        }
        elems.push(GroupElem { matrix: m, frobexp });
    }
    if r.pos != body.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    let ops = ElemOps {
        field,
        dim: n,
        projective,
    };
    let g = Group::from_elements(name, ops, semilinear, elems)?;
    if g.order() != count {
        return Err(Error::Cache("duplicate elements".into()));
    }
    Ok(g)
}

/// Directory of cached groups.
#[derive(Clone, Debug)]
pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(GroupCache { dir })
    }

    pub fn path(&self, spec: &GroupSpec) -> PathBuf {
        self.dir.join(spec.file_name())
    }

    pub fn load(&self, spec: &GroupSpec, limits: &Limits) -> Result<Option<Group>> {
        let path = self.path(spec);
        if !path.exists() {
            return Ok(None);
        }
        let mut bytes = Vec::new();
        fs::File::open(&path)?.read_to_end(&mut bytes)?;
        decode(spec, &bytes, limits).map(Some)
    }

    pub fn store(&self, spec: &GroupSpec, g: &Group) -> Result<()> {
        let path = self.path(spec);
        let tmp = path.with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&encode(spec, g))?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Loads the group, rebuilding and rewriting the file when it is missing or invalid.
    pub fn get_or_build(&self, spec: &GroupSpec, limits: &Limits) -> Result<Group> {
        match self.load(spec, limits) {
            Ok(Some(g)) => return Ok(g),
            Ok(None) | Err(Error::Cache(_)) => {}
            Err(e) => return Err(e),
        }
        let g = spec.build(limits)?;
        self.store(spec, &g)?;
        Ok(g)
    }
}

/// Builds through the cache when a directory is configured.
pub fn build_group(spec: &GroupSpec, limits: &Limits) -> Result<Group> {
    match &limits.cache_dir {
        Some(dir) => GroupCache::new(dir)?.get_or_build(spec, limits),
        None => spec.build(limits),
    }
}

/// Removes every cache file in `dir` written by this module.
pub fn clear(dir: &Path) -> Result<usize> {
    let mut removed = 0;
    if dir.exists() {
        for entry in fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "grp") {
                fs::remove_file(path)?;
                removed += 1;
            }
        }
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(
        kind: LinearKind,
        n: usize,
        p: u32,
        f: u32,
        projective: bool,
        semilinear: bool,
    ) -> GroupSpec {
        GroupSpec {
            kind,
            n,
            p,
            f,
            projective,
            semilinear,
        }
    }

    #[test]
    fn round_trip() {
        let lim = Limits::default();
        for s in [
            spec(LinearKind::Special, 2, 2, 2, false, false),
            spec(LinearKind::General, 2, 2, 2, true, true),
            spec(LinearKind::Special, 3, 2, 1, false, false),
        ] {
            let g = s.build(&lim).unwrap();
            let back = decode(&s, &encode(&s, &g), &lim).unwrap();
            assert_eq!(back.order(), g.order());
            assert_eq!(back.name(), g.name());
            for id in 0..g.order() as u32 {
                assert_eq!(back.elem(id), g.elem(id));
            }
        }
    }

    #[test]
    fn rejects_corruption() {
        let lim = Limits::default();
        let s = spec(LinearKind::Special, 2, 3, 1, false, false);
        let g = s.build(&lim).unwrap();
        let mut bytes = encode(&s, &g);
        bytes[20] ^= 1;
        assert!(matches!(decode(&s, &bytes, &lim), Err(Error::Cache(_))));
        let good = encode(&s, &g);
        let other = spec(LinearKind::General, 2, 3, 1, false, false);
        assert!(matches!(decode(&other, &good, &lim), Err(Error::Cache(_))));
        assert!(matches!(
            decode(&s, &good[..10], &lim),
            Err(Error::Cache(_))
        ));
    }

    #[test]
    fn version_is_checked() {
        let lim = Limits::default();
        let s = spec(LinearKind::Special, 2, 2, 1, false, false);
        let g = s.build(&lim).unwrap();
        let mut bytes = encode(&s, &g);
        bytes[4] = 99;
        let n = bytes.len() - 8;
        let sum = fnv1a(&bytes[..n]);
        bytes[n..].copy_from_slice(&sum.to_le_bytes());
        let err = decode(&s, &bytes, &lim).unwrap_err();
        assert!(err.to_string().contains("version"), "{err}");
    }

    #[test]
    fn cache_directory() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GroupCache::new(dir.path()).unwrap();
        let lim = Limits::default();
        let s = spec(LinearKind::Special, 2, 2, 2, true, true);
        assert!(cache.load(&s, &lim).unwrap().is_none());
        let g = cache.get_or_build(&s, &lim).unwrap();
        assert_eq!(g.order(), 120);
        assert!(cache.path(&s).exists());
        let again = cache.load(&s, &lim).unwrap().unwrap();
        assert_eq!(again.order(), 120);
        // a damaged file is rebuilt
        fs::write(cache.path(&s), b"junk").unwrap();
        assert_eq!(cache.get_or_build(&s, &lim).unwrap().order(), 120);
        assert_eq!(clear(dir.path()).unwrap(), 1);
    }
}
