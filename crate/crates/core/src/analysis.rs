//! Branching-recurrence roots and empirical leaf-count checks.

use std::io::Write;
use std::time::Duration;

use thiserror::Error;

use crate::instance::Instance;
use crate::solver::{SolveError, Solver};

/// Growth rate used for the `leaf_ratio` column of benchmark reports.
pub const BENCH_ROOT: f64 = 1.3248;

pub const CSV_HEADER: [&str; 10] = [
    "m",
    "n",
    "covered",
    "weight",
    "branch_nodes",
    "leaves",
    "max_depth",
    "elapsed_s",
    "leaf_ratio",
    "status",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("recurrence needs at least one branch")]
    Empty,
    #[error("branch gaps must be at least 1")]
    ZeroGap,
}

/// `T(m) <= sum_j T(m - gaps[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    gaps: Vec<usize>,
}

impl Recurrence {
    pub fn new(gaps: Vec<usize>) -> Result<Self, RecurrenceError> {
        if gaps.is_empty() {
            return Err(RecurrenceError::Empty);
        }
        if gaps.contains(&0) {
            return Err(RecurrenceError::ZeroGap);
        }
        Ok(Self { gaps })
    }

    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    /// `t^D - sum_j t^(D - d_j)` with `D` the largest gap.
    pub fn characteristic(&self, t: f64) -> f64 {
        let d = *self.gaps.iter().max().expect("nonempty");
        t.powi(d as i32) - self.gaps.iter().map(|&g| t.powi((d - g) as i32)).sum::<f64>()
    }
}

/// The branching number: the root `>= 1` of the characteristic polynomial,
/// found by bisection to an absolute error below `1e-12`.
///
/// The polynomial is negative at `t = 1` (or zero for a single branch) and
/// increasing past its root, so the bracket `[1, 2]` is doubled upward
/// until it contains a sign change.
pub fn branching_root(r: &Recurrence) -> f64 {
    let f = |t: f64| r.characteristic(t);
    let mut lo = 1.0;
    if f(lo) >= 0.0 {
        return lo;
    }
    let mut hi = 2.0;
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Polynomial factor allowed on top of `root^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slack {
    /// `m + 1`.
    LinearPlusOne,
    /// `2 m^2`; paired with root 1 this is the path/ring leaf bound.
    TwiceSquare,
    Constant(f64),
}

impl Slack {
    pub fn eval(self, m: usize) -> f64 {
        let m = m as f64;
        match self {
            Slack::LinearPlusOne => m + 1.0,
            Slack::TwiceSquare => 2.0 * m * m,
            Slack::Constant(c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub leaves: u64,
    pub m: usize,
    pub root: f64,
    pub slack: Slack,
    /// `slack(m) * root^m`.
    pub bound: f64,
    /// `leaves / root^m`.
    pub ratio: f64,
    pub pass: bool,
}

/// Passes iff `leaves <= slack(m) * root^m`.
pub fn check_bound(leaves: u64, m: usize, root: f64, slack: Slack) -> BoundReport {
    let growth = root.powi(m as i32);
    let bound = slack.eval(m) * growth;
    BoundReport {
        leaves,
        m,
        root,
        slack,
        bound,
        ratio: leaves as f64 / growth,
        pass: leaves as f64 <= bound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchStatus {
    Ok,
    Timeout,
    Error,
}

impl BenchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchStatus::Ok => "ok",
            BenchStatus::Timeout => "timeout",
            BenchStatus::Error => "error",
        }
    }
}

/// One benchmark row. Result fields are `None` unless the solve finished.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub covered: Option<usize>,
    pub weight: Option<f64>,
    pub branch_nodes: Option<u64>,
    pub leaves: Option<u64>,
    pub max_depth: Option<usize>,
    pub elapsed_s: f64,
    pub leaf_ratio: Option<f64>,
    pub status: BenchStatus,
}

impl BenchRow {
    fn record(&self) -> [String; 10] {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        [
            self.m.to_string(),
            self.n.to_string(),
            opt(self.covered),
            opt(self.weight),
            opt(self.branch_nodes),
            opt(self.leaves),
            opt(self.max_depth),
            self.elapsed_s.to_string(),
            opt(self.leaf_ratio),
            self.status.as_str().to_string(),
        ]
    }
}

/// Solves each instance in order, with an optional per-instance time limit.
pub fn bench_corpus(corpus: &[Instance], timeout: Option<Duration>) -> Vec<BenchRow> {
    let mut solver = Solver::new();
    if let Some(t) = timeout {
        solver = solver.with_timeout(t);
    }
    corpus
        .iter()
        .map(|inst| {
            let started = std::time::Instant::now();
            let outcome = solver.solve(inst);
            let elapsed_s = started.elapsed().as_secs_f64();
            let mut row = BenchRow {
                m: inst.m(),
                n: inst.n(),
                covered: None,
                weight: None,
                branch_nodes: None,
                leaves: None,
                max_depth: None,
                elapsed_s,
                leaf_ratio: None,
                status: BenchStatus::Ok,
            };
            match outcome {
                Ok((sol, stats)) => {
                    row.covered = Some(sol.covered);
                    row.weight = Some(sol.weight);
                    row.branch_nodes = Some(stats.branch_nodes);
                    row.leaves = Some(stats.leaves);
                    row.max_depth = Some(stats.max_depth);
                    row.elapsed_s = stats.elapsed_secs();
                    row.leaf_ratio = Some(check_bound(stats.leaves, inst.m(), BENCH_ROOT, Slack::LinearPlusOne).ratio);
                }
                Err(SolveError::Timeout) => row.status = BenchStatus::Timeout,
                Err(_) => row.status = BenchStatus::Error,
            }
            row
        })
        .collect()
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}
