//! Append-only persistence for the chromatic memo table.
//!
//! One entry per line: `KEY<TAB>c0 c1 ... cn`. Lines that do not parse, or
//! whose polynomial cannot be the chromatic polynomial of a connected
//! component on `n` vertices, are skipped with a warning.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use hyperchroma::chromatic::{ChromaticCache, ComponentKey};
use hyperchroma::{Error, IntPoly, Result};
use num_bigint::BigInt;

pub struct CacheFile {
    path: PathBuf,
    loaded: HashSet<ComponentKey>,
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn parse_line(line: &str) -> Option<(ComponentKey, IntPoly)> {
    let (key, coeffs) = line.split_once('\t')?;
    let key = ComponentKey::decode(key)?;
    let coeffs = coeffs
        .split_whitespace()
        .map(|c| c.parse::<BigInt>().ok())
        .collect::<Option<Vec<_>>>()?;
    let poly = IntPoly::from_coeffs(coeffs);
    // a connected component on n >= 1 vertices: monic of degree n, P(0) = 0
    let plausible = poly.degree() == Some(key.n as usize)
        && poly.leading() == Some(&BigInt::from(1))
        && (key.n == 0 || poly.coeff(0) == BigInt::from(0));
    plausible.then_some((key, poly))
}

impl CacheFile {
    /// Loads `path` into `cache`; a missing file is an empty cache.
    pub fn load(path: PathBuf, cache: &mut ChromaticCache) -> Result<Self> {
        let mut loaded = HashSet::new();
        match std::fs::read_to_string(&path) {
            Ok(text) => {
                for (i, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    match parse_line(line) {
                        Some((key, poly)) => {
                            loaded.insert(key.clone());
                            cache.insert(key, poly);
                        }
                        None => {
                            log::warn!("{}:{}: skipping corrupt cache entry", path.display(), i + 1)
                        }
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(io_error(&path, e)),
        }
        Ok(CacheFile { path, loaded })
    }

    /// Appends the entries computed during this run.
    pub fn save(&self, cache: &ChromaticCache) -> Result<()> {
        let mut out = String::new();
        for (key, poly) in cache.entries() {
            if self.loaded.contains(key) {
                continue;
            }
            let coeffs: Vec<String> = poly.to_coeff_strings();
            out.push_str(&format!("{}\t{}\n", key.encode(), coeffs.join(" ")));
        }
        if out.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| io_error(&self.path, e))?;
        file.write_all(out.as_bytes())
            .map_err(|e| io_error(&self.path, e))
    }
}
