//! Process-wide universal-polynomial registry, optionally backed by JSON
//! files in `$WITTFORGE_CACHE_DIR`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock, RwLock};

use sha2::{Digest, Sha256};
use wittforge_core::witt::{WittOp, WittPolynomials};
use wittforge_core::{IndexSet, Ring, WittRing};

use crate::json;
use crate::{Error, Result};

pub const CACHE_ENV: &str = "WITTFORGE_CACHE_DIR";

type Registry = RwLock<HashMap<IndexSet, Arc<WittPolynomials>>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

/// Shared polynomials for `index`, created on first request.
pub fn polynomials(index: &IndexSet) -> Result<Arc<WittPolynomials>> {
    if let Some(p) = registry().read().unwrap().get(index) {
        return Ok(p.clone());
    }
    let fresh = Arc::new(WittPolynomials::new(index)?);
    let mut map = registry().write().unwrap();
    Ok(map.entry(index.clone()).or_insert(fresh).clone())
}

pub fn witt_ring(ring: Ring, index: &IndexSet) -> Result<WittRing> {
    Ok(WittRing::with_polynomials(ring, polynomials(index)?))
}

/// The families a command over `index` may need.
pub fn default_ops(index: &IndexSet) -> Vec<WittOp> {
    let mut ops = vec![WittOp::Sum, WittOp::Product, WittOp::Negation];
    ops.extend(index.elements().iter().filter(|&&n| n > 1).map(|&n| WittOp::Frobenius(n)));
    ops
}

#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> DiskCache {
        DiskCache { dir: dir.into() }
    }

    pub fn from_env() -> Option<DiskCache> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(DiskCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// `<sha256 of "E|op">.json`.
    pub fn path(&self, index: &IndexSet, op: WittOp) -> PathBuf {
        let digest = Sha256::digest(format!("{index}|{op}").as_bytes());
        let mut name = String::with_capacity(69);
        for b in digest.iter() {
            write!(name, "{b:02x}").unwrap();
        }
        name.push_str(".json");
        self.dir.join(name)
    }

    /// Installs `op` from disk if a file exists. A file that fails to parse
    /// or fails the ghost spot check is an error, not a silent miss.
    pub fn load(&self, polys: &WittPolynomials, op: WittOp) -> Result<bool> {
        if polys.is_ready(op) {
            return Ok(true);
        }
        let path = self.path(polys.index(), op);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(false),
            Err(e) => return Err(e.into()),
        };
        let bad = |reason: String| Error::Cache { path: path.display().to_string(), reason };
        let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        let (index, stored_op, list) = json::polynomials_from_json(polys, &value).map_err(|e| bad(e.to_string()))?;
        if &index != polys.index() || stored_op != op {
            return Err(bad(format!("holds {stored_op} over {index}")));
        }
        polys.install(op, list).map_err(|e| bad(e.to_string()))?;
        Ok(true)
    }

    pub fn store(&self, polys: &WittPolynomials, op: WittOp) -> Result<()> {
        let list = polys.get(op)?;
        fs::create_dir_all(&self.dir)?;
        let path = self.path(polys.index(), op);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&json::polynomials_to_json(polys, op, list))?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    /// Loads every family in `ops` that is on disk.
    pub fn warm(&self, polys: &WittPolynomials, ops: &[WittOp]) -> Result<()> {
        for &op in ops {
            self.load(polys, op)?;
        }
        Ok(())
    }

    /// Writes every generated family in `ops` that is not yet on disk.
    pub fn persist(&self, polys: &WittPolynomials, ops: &[WittOp]) -> Result<()> {
        for &op in ops {
            if polys.is_ready(op) && !self.path(polys.index(), op).exists() {
                self.store(polys, op)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let e = IndexSet::divisors_of(6).unwrap();
        let fresh = WittPolynomials::new(&e).unwrap();
        assert!(!cache.load(&fresh, WittOp::Product).unwrap());
        cache.store(&fresh, WittOp::Product).unwrap();
        let other = WittPolynomials::new(&e).unwrap();
        assert!(cache.load(&other, WittOp::Product).unwrap());
        assert_eq!(other.get(WittOp::Product).unwrap(), fresh.get(WittOp::Product).unwrap());
        assert_ne!(cache.path(&e, WittOp::Sum), cache.path(&e, WittOp::Product));
    }

    #[test]
    fn corrupted_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(dir.path());
        let e = IndexSet::divisors_of(2).unwrap();
        let polys = WittPolynomials::new(&e).unwrap();
        cache.store(&polys, WittOp::Sum).unwrap();
        let path = cache.path(&e, WittOp::Sum);
        let text = fs::read_to_string(&path).unwrap().replace("\"-1\"", "\"-3\"");
        fs::write(&path, text).unwrap();
        let other = WittPolynomials::new(&e).unwrap();
        assert!(matches!(cache.load(&other, WittOp::Sum), Err(Error::Cache { .. })));
    }

    #[test]
    fn registry_shares_polynomials() {
        let e = IndexSet::p_typical(3, 2).unwrap();
        assert!(Arc::ptr_eq(&polynomials(&e).unwrap(), &polynomials(&e).unwrap()));
    }
}
