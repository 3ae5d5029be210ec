//! Seeded Monte-Carlo decoding experiments comparing the subspace-distance
//! decoder (M1) with the atomic-distance decoder (M2).
//!
//! Trial `i` draws all of its randomness from `derive_seed(master_seed, i)`,
//! so the CSV body is identical whether trials run serially or in parallel.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{max_decomposition_size, redundant_decomposition, transmit, ChannelParams, ErasureModel};
use crate::codes::{random_constant_dimension_code, Code};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::invariant::{d_atomic, d_subspace, gaussian_binomial, BigCount, Metric};
use crate::lattice::Subspace;
use crate::rng::{derive_seed, rng_from_seed};

pub const CSV_HEADER: &str = "trial,sent,dim_sent,dim_received,d_subspace,d_atomic,m1,m2,half_distance";
pub const SUMMARY_HEADER: &str =
    "summary_trials,m1_success,m2_success,m1_success_rate,m2_success_rate,m2_succ_m1_fail,m1_succ_m2_fail";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    /// Random codewords of dimension `k`.
    Constant,
    /// Codeword 0 of dimension `k`, codeword 1 a `(k+1)`-dimensional
    /// superspace of it, the rest random of dimension `k`.
    Nested,
}

/// A positive rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    /// `ceil(self · x)`.
    pub fn ceil_mul(self, x: usize) -> usize {
        ((x as u64 * self.num).div_ceil(self.den)) as usize
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
        let s = s.trim();
        let (num, den) = if let Some((a, b)) = s.split_once('/') {
            (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?)
        } else if let Some((int, frac)) = s.split_once('.') {
            let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
            (int * den + frac, den)
        } else {
            (s.parse::<u64>().map_err(|_| bad())?, 1)
        };
        if den == 0 {
            return Err(bad());
        }
        Ok(Ratio { num, den })
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub code_size: usize,
    pub code_kind: CodeKind,
    pub redundancy_multiple: Ratio,
    pub erasures: ErasureModel,
    pub insertions: usize,
    pub trials: usize,
    pub master_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            q: 2,
            n: 6,
            k: 3,
            code_size: 8,
            code_kind: CodeKind::Constant,
            redundancy_multiple: Ratio { num: 2, den: 1 },
            erasures: ErasureModel::FixedCount(1),
            insertions: 1,
            trials: 100,
            master_seed: 0,
        }
    }
}

impl ExperimentConfig {
    /// Parses flat `key = value` lines; `#` starts a comment. Unset keys
    /// keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(prev) = seen.insert(key.to_string(), lineno) {
                return Err(Error::parse(lineno, format!("`{key}` already set on line {prev}")));
            }
            let int = |v: &str| v.parse::<u64>().map_err(|_| Error::parse(lineno, format!("`{key}` needs an integer")));
            match key {
                "q" => cfg.q = int(value)?,
                "N" => cfg.n = int(value)? as usize,
                "k" => cfg.k = int(value)? as usize,
                "code_size" => cfg.code_size = int(value)? as usize,
                "code_kind" => {
                    cfg.code_kind = match value {
                        "constant" => CodeKind::Constant,
                        "nested" => CodeKind::Nested,
                        _ => return Err(Error::parse(lineno, "code_kind is `constant` or `nested`")),
                    }
                }
                "redundancy_multiple" => {
                    cfg.redundancy_multiple = value.parse().map_err(|e: Error| Error::parse(lineno, e.to_string()))?
                }
                "erasures" => cfg.erasures = ErasureModel::FixedCount(int(value)? as usize),
                "erasure_prob" => {
                    let p: f64 = value
                        .parse()
                        .map_err(|_| Error::parse(lineno, "`erasure_prob` needs a number"))?;
                    cfg.erasures = ErasureModel::Iid(p);
                }
                "insertions" => cfg.insertions = int(value)? as usize,
                "trials" => cfg.trials = int(value)? as usize,
                "master_seed" => cfg.master_seed = int(value)?,
                other => return Err(Error::parse(lineno, format!("unknown key `{other}`"))),
            }
        }
        if seen.contains_key("erasures") && seen.contains_key("erasure_prob") {
            return Err(Error::parse(0, "set either `erasures` or `erasure_prob`, not both"));
        }
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "q = {}", self.q);
        let _ = writeln!(out, "N = {}", self.n);
        let _ = writeln!(out, "k = {}", self.k);
        let _ = writeln!(out, "code_size = {}", self.code_size);
        let kind = match self.code_kind {
            CodeKind::Constant => "constant",
            CodeKind::Nested => "nested",
        };
        let _ = writeln!(out, "code_kind = {kind}");
        let _ = writeln!(out, "redundancy_multiple = {}", self.redundancy_multiple);
        match self.erasures {
            ErasureModel::FixedCount(e) => {
                let _ = writeln!(out, "erasures = {e}");
            }
            ErasureModel::Iid(p) => {
                let _ = writeln!(out, "erasure_prob = {p}");
            }
        }
        let _ = writeln!(out, "insertions = {}", self.insertions);
        let _ = writeln!(out, "trials = {}", self.trials);
        let _ = writeln!(out, "master_seed = {}", self.master_seed);
        out
    }

    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.q).map_err(|e| Error::Infeasible(e.to_string()))
    }

    /// Checks joint feasibility of the parameters.
    pub fn validate(&self) -> Result<()> {
        let infeasible = |m: String| Err(Error::Infeasible(m));
        self.field()?;
        if self.trials == 0 {
            return infeasible("trials must be at least 1".into());
        }
        if self.k == 0 || self.k > self.n {
            return infeasible(format!("need 1 ≤ k ≤ N, got k={} N={}", self.k, self.n));
        }
        if self.code_size < 2 {
            return infeasible("decoding experiments need at least two codewords".into());
        }
        if self.redundancy_multiple.num < self.redundancy_multiple.den {
            return infeasible("redundancy_multiple must be at least 1".into());
        }
        let pool = gaussian_binomial(self.n, self.k, self.q)?;
        let needed = match self.code_kind {
            CodeKind::Constant => self.code_size,
            CodeKind::Nested => {
                if self.k >= self.n {
                    return infeasible("nested codes need k < N".into());
                }
                self.code_size - 1
            }
        };
        if BigCount::from(needed as u64) > pool {
            return infeasible(format!("{needed} codewords of dimension {} requested, only {pool} exist", self.k));
        }
        let min_dim = self.k;
        let atoms = self.decomposition_size(min_dim);
        match self.erasures {
            ErasureModel::FixedCount(e) if e > atoms => {
                return infeasible(format!("{e} erasures exceed the {atoms} transmitted atoms"));
            }
            ErasureModel::Iid(p) if !(0.0..=1.0).contains(&p) => {
                return infeasible(format!("erasure probability {p} outside [0, 1]"));
            }
            _ => {}
        }
        let max_dim = if self.code_kind == CodeKind::Nested { self.k + 1 } else { self.k };
        if self.insertions > 0 && max_dim == self.n {
            return infeasible("insertions are impossible when a codeword fills the ambient space".into());
        }
        Ok(())
    }

    fn decomposition_size(&self, dim: usize) -> usize {
        let want = self.redundancy_multiple.ceil_mul(dim).max(dim);
        let q = self.q;
        let avail = crate::lattice::projective_count(q, dim, u64::MAX / 2).unwrap_or(u64::MAX);
        (want as u64).min(avail.max(dim as u64)) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Correct,
    Wrong,
    Ambiguous,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Correct => "correct",
            Verdict::Wrong => "wrong",
            Verdict::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub sent: usize,
    pub dim_sent: usize,
    pub dim_received: usize,
    pub d_subspace: BigCount,
    pub d_atomic: BigCount,
    pub m1: Verdict,
    pub m2: Verdict,
    /// `2 d_𝔑(U, S) < D(C)`.
    pub half_distance: bool,
}

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.sent,
            self.dim_sent,
            self.dim_received,
            self.d_subspace,
            self.d_atomic,
            self.m1.as_str(),
            self.m2.as_str(),
            u8::from(self.half_distance)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub trials: usize,
    pub m1_success: usize,
    pub m2_success: usize,
    pub m2_succ_m1_fail: usize,
    pub m1_succ_m2_fail: usize,
}

impl Summary {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let ok = |v: Verdict| v == Verdict::Correct;
        Summary {
            trials: records.len(),
            m1_success: records.iter().filter(|r| ok(r.m1)).count(),
            m2_success: records.iter().filter(|r| ok(r.m2)).count(),
            m2_succ_m1_fail: records.iter().filter(|r| ok(r.m2) && !ok(r.m1)).count(),
            m1_succ_m2_fail: records.iter().filter(|r| ok(r.m1) && !ok(r.m2)).count(),
        }
    }

    pub fn csv_row(&self) -> String {
        let rate = |x: usize| x as f64 / self.trials.max(1) as f64;
        format!(
            "{},{},{},{:.6},{:.6},{},{}",
            self.trials,
            self.m1_success,
            self.m2_success,
            rate(self.m1_success),
            rate(self.m2_success),
            self.m2_succ_m1_fail,
            self.m1_succ_m2_fail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentReport {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.records.len() + 4));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out.push_str(SUMMARY_HEADER);
        out.push('\n');
        out.push_str(&self.summary.csv_row());
        out.push('\n');
        out
    }
}

fn build_code(cfg: &ExperimentConfig, spec: FieldSpec, seed: u64) -> Result<Code> {
    match cfg.code_kind {
        CodeKind::Constant => random_constant_dimension_code(spec, cfg.n, cfg.k, cfg.code_size, seed),
        CodeKind::Nested => {
            let base = random_constant_dimension_code(spec, cfg.n, cfg.k, cfg.code_size - 1, seed)?;
            let mut words = base.codewords().to_vec();
            let mut rng = rng_from_seed(derive_seed(seed, 1));
            let s0 = words[0].clone();
            let sup = loop {
                let v: Vec<u32> = (0..cfg.n).map(|_| rng.gen_range(0..spec.p())).collect();
                if !s0.contains_vector(&v)? {
                    break s0.join(&Subspace::from_rows(spec, cfg.n, &[v])?)?;
                }
            };
            words.insert(1, sup);
            Code::new(spec, cfg.n, words)
        }
    }
}

fn verdict(outcome: &crate::codes::DecodeResult, sent: usize) -> Verdict {
    match outcome.unique() {
        Some(i) if i == sent => Verdict::Correct,
        Some(_) => Verdict::Wrong,
        None => Verdict::Ambiguous,
    }
}

/// Runs one trial.
pub fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialRecord> {
    let spec = cfg.field()?;
    let seed = derive_seed(cfg.master_seed, trial as u64);
    let code = build_code(cfg, spec, derive_seed(seed, 1))?;
    let sent = rng_from_seed(derive_seed(seed, 2)).gen_range(0..code.len());
    let s = &code.codewords()[sent];
    let k_atoms = cfg.decomposition_size(s.dim()).min(max_decomposition_size(s) as usize);
    let decomposition = redundant_decomposition(s, k_atoms, derive_seed(seed, 3))?;
    let erasures = match cfg.erasures {
        ErasureModel::FixedCount(e) => ErasureModel::FixedCount(e.min(k_atoms)),
        other => other,
    };
    let params = ChannelParams { erasures, insertions: cfg.insertions, seed: derive_seed(seed, 4) };
    let transcript = transmit(&decomposition, &params)?;
    let u = &transcript.output;

    let m1 = code.decode(u, Metric::Subspace)?;
    let m2 = code.decode(u, Metric::Atomic)?;
    let d_at = d_atomic(u, s)?.value;
    let min = code.min_distance(Metric::Atomic)?.value;
    Ok(TrialRecord {
        trial,
        sent,
        dim_sent: s.dim(),
        dim_received: u.dim(),
        d_subspace: d_subspace(u, s)?.value,
        half_distance: d_at.double() < min,
        d_atomic: d_at,
        m1: verdict(&m1, sent),
        m2: verdict(&m2, sent),
    })
}

pub fn run_experiment(cfg: &ExperimentConfig, parallel: bool) -> Result<ExperimentReport> {
    cfg.validate()?;
    let records: Vec<TrialRecord> = if parallel {
        (0..cfg.trials).into_par_iter().map(|t| run_trial(cfg, t)).collect::<Result<_>>()?
    } else {
        (0..cfg.trials).map(|t| run_trial(cfg, t)).collect::<Result<_>>()?
    };
    let summary = Summary::from_records(&records);
    Ok(ExperimentReport { records, summary })
}
