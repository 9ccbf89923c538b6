//! On-disk cache of Macdonald polynomials for one `(n, k)`.
//!
//! ```json
//! {"n": 3, "k": 2, "entries": [{"lambda": "2,1,0", "coeffs": [{"mu": "2,1,0", "value": "1"}, ...]}]}
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::MacdonaldContext;
use crate::error::{Error, Result};
use crate::exactalg::ExactScalar;
use crate::roota::{dominance_leq, Weight};
use crate::weightalg::GroupAlgebraElement;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoeffRecord {
    pub mu: Weight,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheEntry {
    pub lambda: Weight,
    pub coeffs: Vec<CoeffRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheFile {
    pub n: usize,
    pub k: i64,
    pub entries: Vec<CacheEntry>,
}

fn invalid<T>(msg: String) -> Result<T> {
    Err(Error::InvalidCache(msg))
}

impl CacheEntry {
    /// Checks triangularity and parses the coefficients.
    fn validate(&self, n: usize) -> Result<Vec<(Weight, ExactScalar)>> {
        let lam = &self.lambda;
        if lam.rank() != n || !lam.is_dominant() {
            return invalid(format!("lambda {lam} is not a dominant weight of rank {n}"));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut leading = None;
        for rec in &self.coeffs {
            let mu = &rec.mu;
            if mu.rank() != n || !mu.is_dominant() {
                return invalid(format!(
                    "{lam}: mu {mu} is not a dominant weight of rank {n}"
                ));
            }
            if !dominance_leq(mu, lam) {
                return invalid(format!("{lam}: mu {mu} is not below lambda"));
            }
            if !seen.insert(mu.clone()) {
                return invalid(format!("{lam}: mu {mu} appears twice"));
            }
            let value: ExactScalar = rec.value.parse()?;
            if mu == lam {
                leading = Some(value.clone());
            }
            out.push((mu.clone(), value));
        }
        match leading {
            Some(c) if c.is_one() => Ok(out),
            Some(c) => invalid(format!("{lam}: leading coefficient is {c}, expected 1")),
            None => invalid(format!("{lam}: leading coefficient missing")),
        }
    }
}

impl MacdonaldContext {
    /// Snapshot of the polynomial cache, sorted by `lambda`.
    pub fn to_cache_file(&self) -> CacheFile {
        let entries = self
            .cached_weights()
            .into_iter()
            .map(|lam| {
                let p = self.macdonald_poly(&lam).expect("cached weight is valid");
                let coeffs = p
                    .to_orbit_basis()
                    .expect("Macdonald polynomials are W-invariant")
                    .into_iter()
                    .map(|(mu, c)| CoeffRecord {
                        mu,
                        value: c.to_string(),
                    })
                    .collect();
                CacheEntry {
                    lambda: lam,
                    coeffs,
                }
            })
            .collect();
        CacheFile {
            n: self.n,
            k: self.k,
            entries,
        }
    }

    /// Validates every entry, then adds the ones not already cached.
    /// Returns the number of entries accepted.
    pub fn load_cache_file(&self, file: &CacheFile) -> Result<usize> {
        if file.n != self.n || file.k != self.k {
            return invalid(format!(
                "cache is for (n, k) = ({}, {}), context is ({}, {})",
                file.n, file.k, self.n, self.k
            ));
        }
        let parsed = file
            .entries
            .iter()
            .map(|e| Ok((e.lambda.clone(), e.validate(self.n)?)))
            .collect::<Result<Vec<_>>>()?;
        let count = parsed.len();
        for (lam, coeffs) in parsed {
            let p =
                GroupAlgebraElement::from_orbit_basis(self.n, coeffs.iter().map(|(w, c)| (w, c)))?;
            self.insert_poly(lam, p);
        }
        Ok(count)
    }

    pub fn save_cache(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let json = serde_json::to_string_pretty(&self.to_cache_file())?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, json)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Loads `path` if it exists; a missing file is not an error.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        if !path.exists() {
            return Ok(0);
        }
        let text = fs::read_to_string(path)?;
        let file: CacheFile = serde_json::from_str(&text)?;
        self.load_cache_file(&file)
    }
}
