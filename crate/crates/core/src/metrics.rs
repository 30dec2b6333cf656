//! Transposition widths and total motion, and the comparison between the
//! combination lists of this crate's generator and Eades-McKay.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiperm::for_each_move;
use crate::multiset::{binomial, check_count, GrayTrace, MultisetSpec, Transposition};
use crate::refgens::{eades_mckay, ruskey_c};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MotionStats {
    /// Sum of all widths, `W`.
    pub total_motion: u64,
    pub width_histogram: BTreeMap<usize, u64>,
    pub step_count: u64,
}

impl MotionStats {
    pub fn record(&mut self, t: &Transposition) {
        let w = t.width();
        *self.width_histogram.entry(w).or_insert(0) += 1;
        self.total_motion += w as u64;
        self.step_count += 1;
    }

    pub fn from_steps<'a>(steps: impl IntoIterator<Item = &'a Transposition>) -> Self {
        let mut stats = Self::default();
        for t in steps {
            stats.record(t);
        }
        stats
    }

    /// `{1:15, 2:4}`
    pub fn histogram_text(&self) -> String {
        let parts: Vec<String> = self
            .width_histogram
            .iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Open-path accounting: the wrap-around from last to first is not counted.
pub fn motion_stats<S>(trace: &GrayTrace<S>) -> MotionStats {
    MotionStats::from_steps(trace.steps())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
pub enum Algo {
    /// This crate's generator on `{1:k, 2:n-k}`.
    Ours,
    Eades,
    Ruskey,
}

pub fn motion_for(algo: Algo, n: usize, k: usize, cap: u64) -> Result<MotionStats> {
    match algo {
        Algo::Ours => motion_ours(n, k, cap),
        Algo::Eades => Ok(motion_stats(&eades_mckay(n, k, cap)?)),
        Algo::Ruskey => {
            let list = ruskey_c(n, k, cap)?;
            let trace = GrayTrace::from_states(list).ok_or_else(|| {
                Error::InvalidArgs("revolving door list is not a Gray list".into())
            })?;
            Ok(motion_stats(&trace))
        }
    }
}

/// Streams the generator on `{1:k, 2:n-k}`; nothing is stored.
pub fn motion_ours(n: usize, k: usize, cap: u64) -> Result<MotionStats> {
    if k > n {
        return Err(Error::InvalidArgs(format!(
            "need 0 <= k <= n, got n={n} k={k}"
        )));
    }
    check_count("combination list", &binomial(n as u64, k as u64), cap)?;
    if k == 0 || k == n {
        return Ok(MotionStats::default());
    }
    let spec = MultisetSpec::combination(n, k)?;
    let mut stats = MotionStats::default();
    for_each_move(&spec, |mv| stats.record(&mv.transposition));
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub k: usize,
    pub w_b: u64,
    pub w_e: u64,
    /// `W` of `E(n, n-k)`.
    pub w_e_complement: u64,
    /// `W_E(n,n-k) == W_B(n,k)`.
    pub exp_a: bool,
    /// `W_E > W_B`; only defined for `k < n/2`.
    pub exp_b: Option<bool>,
    /// `W_E < W_B`; only defined for `k > n/2`.
    pub exp_c: Option<bool>,
}

impl ComparisonRow {
    pub fn passed(&self) -> bool {
        self.exp_a && self.exp_b.unwrap_or(true) && self.exp_c.unwrap_or(true)
    }

    pub fn csv_line(&self) -> String {
        let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.w_b,
            self.w_e,
            self.w_e_complement,
            self.exp_a,
            opt(self.exp_b),
            opt(self.exp_c)
        )
    }
}

pub const CSV_HEADER: &str = "n,k,W_B,W_E,W_E_complement,exp_a,exp_b,exp_c";

pub fn comparison_row(n: usize, k: usize, cap: u64) -> Result<ComparisonRow> {
    let w_b = motion_ours(n, k, cap)?.total_motion;
    let w_e = motion_stats(&eades_mckay(n, k, cap)?).total_motion;
    let w_e_complement = motion_stats(&eades_mckay(n, n - k, cap)?).total_motion;
    Ok(ComparisonRow {
        n,
        k,
        w_b,
        w_e,
        w_e_complement,
        exp_a: w_e_complement == w_b,
        exp_b: (2 * k < n).then_some(w_e > w_b),
        exp_c: (2 * k > n).then_some(w_e < w_b),
    })
}

/// Every cell `2 <= n <= n_max`, `0 < k < n`, in row-major order. Cells
/// are evaluated on separate threads, one per `n`.
pub fn compare_motion(n_max: usize, cap: u64) -> Result<Vec<ComparisonRow>> {
    if n_max < 2 {
        return Err(Error::InvalidArgs(format!(
            "n_max must be at least 2, got {n_max}"
        )));
    }
    check_count(
        "largest combination list",
        &binomial(n_max as u64, n_max as u64 / 2),
        cap,
    )?;
    let per_n: Vec<Result<Vec<ComparisonRow>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (2..=n_max)
            .map(|n| scope.spawn(move || (1..n).map(|k| comparison_row(n, k, cap)).collect()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("comparison worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{}", r.csv_line());
    }
    out
}
