//! Content-addressed on-disk cache for Gröbner bases.
//!
//! Keys hash the generators, the monomial order and the cofactor flag.
//! Writes go through a temporary file and a rename, so readers never see a
//! partial entry; any I/O failure silently degrades to recomputation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::groebner::GroebnerBasis;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::Rational;

pub const CACHE_ENV: &str = "UMROW_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct StoredPoly(Vec<(Vec<u32>, String)>);

#[derive(Serialize, Deserialize)]
struct Entry {
    nvars: usize,
    inputs: usize,
    basis: Vec<StoredPoly>,
    cofactors: Option<Vec<Vec<StoredPoly>>>,
}

fn store_poly(p: &Poly) -> StoredPoly {
    StoredPoly(p.terms().iter().map(|(m, c)| (m.0.clone(), c.to_string())).collect())
}

fn load_poly(nvars: usize, s: &StoredPoly) -> Option<Poly> {
    let mut terms = Vec::with_capacity(s.0.len());
    for (e, c) in &s.0 {
        if e.len() != nvars {
            return None;
        }
        let c: Rational = c.parse().ok()?;
        terms.push((Monomial(e.clone()), c));
    }
    Some(Poly::from_terms(nvars, terms))
}

impl GbCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GbCache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(GbCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(gens: &[Poly], order: MonomialOrder, with_cofactors: bool) -> String {
        let mut h = Sha256::new();
        h.update(order.name().as_bytes());
        h.update([with_cofactors as u8]);
        for g in gens {
            h.update((g.nvars() as u64).to_le_bytes());
            for (m, c) in g.terms() {
                for e in &m.0 {
                    h.update(e.to_le_bytes());
                }
                h.update(c.to_string().as_bytes());
                h.update(b";");
            }
            h.update(b"|");
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("gb-{key}.json"))
    }

    pub fn load(&self, gens: &[Poly], order: MonomialOrder, with_cofactors: bool) -> Option<GroebnerBasis> {
        let key = Self::key(gens, order, with_cofactors);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        let nvars = entry.nvars;
        let basis: Option<Vec<Poly>> = entry.basis.iter().map(|p| load_poly(nvars, p)).collect();
        let cofactors = match entry.cofactors {
            Some(rows) => Some(
                rows.iter()
                    .map(|r| r.iter().map(|p| load_poly(nvars, p)).collect::<Option<Vec<_>>>())
                    .collect::<Option<Vec<_>>>()?,
            ),
            None => None,
        };
        if with_cofactors && cofactors.is_none() {
            return None;
        }
        Some(GroebnerBasis::from_parts(nvars, order, basis?, cofactors, entry.inputs))
    }

    pub fn store(&self, gens: &[Poly], order: MonomialOrder, with_cofactors: bool, gb: &GroebnerBasis) {
        let key = Self::key(gens, order, with_cofactors);
        let entry = Entry {
            nvars: gb.nvars(),
            inputs: gb.input_count(),
            basis: gb.basis().iter().map(store_poly).collect(),
            cofactors: gb.cofactors().map(|rows| rows.iter().map(|r| r.iter().map(store_poly).collect()).collect()),
        };
        let Ok(text) = serde_json::to_string(&entry) else { return };
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let tmp = self.dir.join(format!(".gb-{key}.{}.tmp", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, self.path(&key)).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::groebner::{groebner_with, GbConfig};
    use super::super::parse::parse_poly;
    use super::*;

    #[test]
    fn roundtrip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let gens: Vec<Poly> =
            ["x^2+y^2+z^2-1", "x", "y"].iter().map(|s| parse_poly(s, &vars).unwrap()).collect();
        let cfg = GbConfig { pair_limit: 1000, cache: Some(GbCache::new(dir.path())) };
        let first = groebner_with(&gens, MonomialOrder::DegRevLex, true, &cfg).unwrap();
        let key = GbCache::key(&gens, MonomialOrder::DegRevLex, true);
        assert!(dir.path().join(format!("gb-{key}.json")).exists());
        let hit = cfg.cache.as_ref().unwrap().load(&gens, MonomialOrder::DegRevLex, true).unwrap();
        assert_eq!(hit, first);
        // a corrupt entry is ignored
        fs::write(dir.path().join(format!("gb-{key}.json")), "{not json").unwrap();
        assert!(cfg.cache.as_ref().unwrap().load(&gens, MonomialOrder::DegRevLex, true).is_none());
        let again = groebner_with(&gens, MonomialOrder::DegRevLex, true, &cfg).unwrap();
        assert_eq!(again, first);
    }

    #[test]
    fn unwritable_directory_degrades() {
        let cache = GbCache::new("/proc/definitely/not/writable");
        let vars = vec!["x".to_string()];
        let gens = vec![parse_poly("x^2-1", &vars).unwrap()];
        let cfg = GbConfig { pair_limit: 100, cache: Some(cache) };
        assert!(groebner_with(&gens, MonomialOrder::DegRevLex, false, &cfg).is_ok());
    }
}
