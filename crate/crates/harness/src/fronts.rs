use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use ktdmoea::problems::{sample_true_pf, ProblemKind, ReferenceFront};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};

/// Overrides the directory sampled fronts are cached in.
pub const CACHE_ENV: &str = "KTDMOEA_PF_CACHE";

/// Cache directory: the environment override if set, else `<output>/pf`.
pub fn cache_dir(output: &Path) -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| output.join("pf"))
}

pub fn front_file(dir: &Path, kind: ProblemKind, m: usize, points: usize) -> PathBuf {
    dir.join(format!("{kind}_M{m}_{points}.csv"))
}

/// Load a cached front or sample and cache it.
pub fn load_or_sample(dir: Option<&Path>, kind: ProblemKind, m: usize, points: usize) -> Result<ReferenceFront> {
    if let Some(dir) = dir {
        let path = front_file(dir, kind, m, points);
        if path.exists() {
            return ReferenceFront::load(&path).map_err(|e| HarnessError::io(&path, e));
        }
        let front = sample_true_pf(kind, m, points)?;
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        let tmp = path.with_extension(format!("csv.{}.tmp", std::process::id()));
        front.save(&tmp).map_err(|e| HarnessError::io(&tmp, e))?;
        std::fs::rename(&tmp, &path).map_err(|e| HarnessError::io(&path, e))?;
        return Ok(front);
    }
    Ok(sample_true_pf(kind, m, points)?)
}

/// Sampled true fronts keyed by problem and objective count, shared
/// read-only between runs.
#[derive(Debug, Default, Clone)]
pub struct FrontSet {
    fronts: HashMap<(ProblemKind, usize), Arc<ReferenceFront>>,
}

impl FrontSet {
    pub fn prepare(dir: Option<&Path>, points: usize, needed: &[(ProblemKind, usize)]) -> Result<Self> {
        let mut keys = needed.to_vec();
        keys.sort_by_key(|(k, m)| (k.to_string(), *m));
        keys.dedup();
        let loaded: Vec<_> = keys
            .par_iter()
            .map(|&(kind, m)| load_or_sample(dir, kind, m, points).map(|f| ((kind, m), Arc::new(f))))
            .collect::<Result<_>>()?;
        Ok(Self {
            fronts: loaded.into_iter().collect(),
        })
    }

    pub fn get(&self, kind: ProblemKind, m: usize) -> Option<&ReferenceFront> {
        self.fronts.get(&(kind, m)).map(|f| f.as_ref())
    }
}
