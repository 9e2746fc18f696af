//! Batches of seeded instances, their summary, and failure artifacts that
//! can be replayed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::generate::{combination, generate, InstanceSpec};
use crate::harness::verify::{
    verify_instance, Counts, Tolerances, VerificationReport, THEOREM_IDS,
};
use crate::matrix::CMatrix;
use crate::sampling;

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub trials: usize,
    pub dims: Vec<usize>,
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Worker threads; results do not depend on it.
    pub threads: usize,
}

impl CampaignConfig {
    pub fn new(trials: usize, dims: Vec<usize>, seed: u64) -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        Self {
            trials,
            dims,
            seed,
            tolerances: Tolerances::default(),
            threads,
        }
    }

    /// Instance `i`: dimension `dims[i % len]`, combination `(i / len) % 16`.
    pub fn spec(&self, index: usize) -> InstanceSpec {
        let len = self.dims.len();
        let dim = self.dims[index % len];
        let seed = sampling::derive_seed(self.seed, index as u64);
        let (w, o) = combination(index / len, dim, seed);
        InstanceSpec::new(dim, w, o, seed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceLine {
    pub index: usize,
    pub spec: InstanceSpec,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failing: Vec<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inconclusive: Vec<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub tolerances: Tolerances,
    pub verdicts: Counts,
    pub instances_with_fail: usize,
    pub instances_with_inconclusive: usize,
    pub errors: usize,
    pub by_theorem: BTreeMap<&'static str, Counts>,
    pub instances: Vec<InstanceLine>,
}

impl CampaignSummary {
    /// Any `fail` verdict or any instance that could not be verified.
    pub fn has_hard_failure(&self) -> bool {
        self.verdicts.fail > 0 || self.errors > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

pub struct Campaign {
    pub summary: CampaignSummary,
    /// Per-instance reports, in index order.
    pub reports: Vec<std::result::Result<VerificationReport, String>>,
}

/// Everything needed to rerun one instance without the generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayFile {
    pub spec: InstanceSpec,
    pub t: CMatrix,
    pub a: CMatrix,
    pub tolerances: Tolerances,
}

impl ReplayFile {
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

/// Verifies the stored matrices with the stored tolerances.
pub fn replay(file: &ReplayFile) -> Result<VerificationReport> {
    let mut report = verify_instance(&file.t, &file.a, &file.tolerances)?;
    report.instance = Some(file.spec);
    Ok(report)
}

pub fn replay_path(path: impl AsRef<Path>) -> Result<VerificationReport> {
    replay(&ReplayFile::read(path)?)
}

fn run_one(
    spec: &InstanceSpec,
    tols: &Tolerances,
) -> std::result::Result<VerificationReport, String> {
    let (t, a) = generate(spec).map_err(|e| e.to_string())?;
    let mut report = verify_instance(&t, &a, tols).map_err(|e| e.to_string())?;
    report.instance = Some(*spec);
    Ok(report)
}

pub fn campaign(cfg: &CampaignConfig) -> Result<Campaign> {
    if cfg.trials == 0 {
        return Err(Error::BadSpec("trials must be at least 1".into()));
    }
    if cfg.dims.is_empty() || cfg.dims.contains(&0) {
        return Err(Error::BadSpec(
            "dimensions must be a non-empty list of positive integers".into(),
        ));
    }
    let specs: Vec<InstanceSpec> = (0..cfg.trials).map(|i| cfg.spec(i)).collect();
    let slots: Mutex<Vec<Option<std::result::Result<VerificationReport, String>>>> =
        Mutex::new(vec![None; cfg.trials]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..cfg.threads.clamp(1, cfg.trials) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= specs.len() {
                    break;
                }
                let out = run_one(&specs[i], &cfg.tolerances);
                slots.lock().expect("no poisoned workers")[i] = Some(out);
            });
        }
    });
    let reports: Vec<_> = slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect();

    let mut verdicts = Counts::default();
    let mut by_theorem: BTreeMap<&'static str, Counts> = THEOREM_IDS
        .iter()
        .map(|&id| (id, Counts::default()))
        .collect();
    let mut instances = Vec::with_capacity(reports.len());
    let (mut with_fail, mut with_inconclusive, mut errors) = (0, 0, 0);
    for (index, (spec, rep)) in specs.iter().zip(&reports).enumerate() {
        let line = match rep {
            Ok(r) => {
                verdicts.merge(&r.summary);
                for t in &r.theorems {
                    by_theorem.entry(t.id).or_default().add(t.verdict);
                }
                InstanceLine {
                    index,
                    spec: *spec,
                    counts: r.summary,
                    failing: r.failing(),
                    inconclusive: r.inconclusive(),
                    error: None,
                }
            }
            Err(e) => {
                errors += 1;
                InstanceLine {
                    index,
                    spec: *spec,
                    counts: Counts::default(),
                    failing: vec![],
                    inconclusive: vec![],
                    error: Some(e.clone()),
                }
            }
        };
        with_fail += usize::from(!line.failing.is_empty());
        with_inconclusive += usize::from(!line.inconclusive.is_empty());
        instances.push(line);
    }
    let summary = CampaignSummary {
        seed: cfg.seed,
        trials: cfg.trials,
        dims: cfg.dims.clone(),
        tolerances: cfg.tolerances,
        verdicts,
        instances_with_fail: with_fail,
        instances_with_inconclusive: with_inconclusive,
        errors,
        by_theorem,
        instances,
    };
    Ok(Campaign { summary, reports })
}

impl Campaign {
    /// Writes `instance_XXXX.json` replay files for every instance with a
    /// failing verdict or an error; returns the paths written.
    pub fn write_failures(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        let mut written = Vec::new();
        for line in &self.summary.instances {
            if line.failing.is_empty() && line.error.is_none() {
                continue;
            }
            std::fs::create_dir_all(dir)?;
            let (t, a) = generate(&line.spec)?;
            let file = ReplayFile {
                spec: line.spec,
                t,
                a,
                tolerances: self.summary.tolerances,
            };
            let path = dir.join(format!("instance_{:04}.json", line.index));
            file.write(&path)?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Parses `2..6` (inclusive), `2..=6`, `4` or `2,3,5`.
pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::BadSpec(format!("cannot parse dimensions '{s}'"));
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.trim_start_matches('=');
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    let dims: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(bad());
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_campaign_passes() {
        let c = campaign(&CampaignConfig::new(1, vec![1], 0)).unwrap();
        assert_eq!(c.summary.verdicts.fail, 0);
        assert_eq!(c.summary.verdicts.inconclusive, 0);
        assert_eq!(c.summary.verdicts.pass, THEOREM_IDS.len());
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let mut cfg = CampaignConfig::new(6, vec![2, 3], 5);
        cfg.threads = 1;
        let a = campaign(&cfg).unwrap().summary.to_json();
        cfg.threads = 4;
        let b = campaign(&cfg).unwrap().summary.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn dims_parsing() {
        assert_eq!(parse_dims("2..6").unwrap(), vec![2, 3, 4, 5, 6]);
        assert_eq!(parse_dims("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_dims("1,4").unwrap(), vec![1, 4]);
        assert!(parse_dims("0..2").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(campaign(&CampaignConfig::new(0, vec![2], 1)).is_err());
    }

    #[test]
    fn replay_file_round_trip() {
        let cfg = CampaignConfig::new(3, vec![3], 9);
        let spec = cfg.spec(2);
        let (t, a) = generate(&spec).unwrap();
        let file = ReplayFile {
            spec,
            t,
            a,
            tolerances: Tolerances::default(),
        };
        let dir = std::env::temp_dir().join(format!("semihilbert-replay-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r.json");
        file.write(&path).unwrap();
        let back = ReplayFile::read(&path).unwrap();
        assert_eq!(back, file);
        let direct = run_one(&spec, &Tolerances::default()).unwrap();
        assert_eq!(replay(&back).unwrap().to_json(), direct.to_json());
        std::fs::remove_dir_all(&dir).ok();
    }
}
