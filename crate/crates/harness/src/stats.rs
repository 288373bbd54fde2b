//! Per-cell summary statistics over run records.

use std::collections::BTreeMap;
use std::fmt::Write;

use agemoa_core::ProblemKind;

use crate::algorithm::Algorithm;
use crate::records::RunRecord;

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub kind: ProblemKind,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub algorithm: Algorithm,
    pub mu: usize,
    pub tau: Option<u64>,
    /// Runs that covered the whole front.
    pub successes: usize,
    /// Runs stopped by the iteration cap; excluded from the statistics.
    pub failures: usize,
    /// Mean evaluations over successful runs; `None` when there are none.
    pub mean_evaluations: Option<f64>,
    /// Sample standard deviation (divisor `count − 1`), 0 for one sample.
    pub std_evaluations: Option<f64>,
    pub mean_iterations: Option<f64>,
}

impl CellSummary {
    /// A cell with no successful run; shown in tables, never dropped.
    pub fn flagged(&self) -> bool {
        self.successes == 0
    }
}

fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() == 1 {
        return Some((mean, 0.0));
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

type Key = (String, usize, usize, usize, Algorithm, usize, Option<u64>);

/// Groups records by `(kind, m, k, n, algorithm, μ, τ)` in that sort order.
pub fn summarize(records: &[RunRecord]) -> Vec<CellSummary> {
    let mut cells: BTreeMap<Key, (ProblemKind, Vec<&RunRecord>)> = BTreeMap::new();
    for r in records {
        let key = (
            r.kind.as_str().to_owned(),
            r.m,
            r.k,
            r.n,
            r.algorithm,
            r.mu,
            r.tau,
        );
        cells
            .entry(key)
            .or_insert_with(|| (r.kind, Vec::new()))
            .1
            .push(r);
    }
    cells
        .into_iter()
        .map(|((_, m, k, n, algorithm, mu, tau), (kind, rs))| {
            let ok: Vec<&RunRecord> = rs.iter().copied().filter(|r| r.covered_all).collect();
            let evals: Vec<f64> = ok.iter().map(|r| r.evaluations as f64).collect();
            let iters: Vec<f64> = ok.iter().map(|r| r.iterations as f64).collect();
            let stats = mean_std(&evals);
            CellSummary {
                kind,
                m,
                k,
                n,
                algorithm,
                mu,
                tau,
                successes: ok.len(),
                failures: rs.len() - ok.len(),
                mean_evaluations: stats.map(|s| s.0),
                std_evaluations: stats.map(|s| s.1),
                mean_iterations: mean_std(&iters).map(|s| s.0),
            }
        })
        .collect()
}

/// Looks up the summary of one `(algorithm, n)` cell.
pub fn find(summaries: &[CellSummary], algorithm: Algorithm, n: usize) -> Option<&CellSummary> {
    summaries
        .iter()
        .find(|s| s.algorithm == algorithm && s.n == n)
}

/// Fixed-width text table, one row per cell.
pub fn format_table(summaries: &[CellSummary]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:>2} {:>2} {:>4} {:<18} {:>6} {:>6} {:>5} {:>6} {:>16} {:>16}",
        "kind",
        "m",
        "k",
        "n",
        "algorithm",
        "mu",
        "tau",
        "runs",
        "failed",
        "mean_evals",
        "std_evals"
    );
    for s in summaries {
        let tau = s.tau.map(|t| t.to_string()).unwrap_or_else(|| "-".into());
        let num = |v: Option<f64>| {
            v.map(|x| format!("{x:.2}"))
                .unwrap_or_else(|| "NO SUCCESS".into())
        };
        let _ = writeln!(
            out,
            "{:<6} {:>2} {:>2} {:>4} {:<18} {:>6} {:>6} {:>5} {:>6} {:>16} {:>16}",
            s.kind.as_str(),
            s.m,
            s.k,
            s.n,
            s.algorithm.label(),
            s.mu,
            tau,
            s.successes + s.failures,
            s.failures,
            num(s.mean_evaluations),
            num(s.std_evaluations),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(algorithm: Algorithm, n: usize, evaluations: u64, covered_all: bool) -> RunRecord {
        RunRecord {
            algorithm,
            kind: ProblemKind::Ojzj,
            n,
            m: 2,
            k: 4,
            mu: 12,
            tau: None,
            run: 0,
            seed: 0,
            iterations: evaluations - 12,
            evaluations,
            covered_all,
            first_hit_k: None,
            first_hit_c: None,
        }
    }

    #[test]
    fn single_sample_has_zero_std() {
        let s = summarize(&[rec(Algorithm::Classic, 10, 100, true)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mean_evaluations, Some(100.0));
        assert_eq!(s[0].std_evaluations, Some(0.0));
        assert_eq!(s[0].mean_iterations, Some(88.0));
    }

    #[test]
    fn two_samples() {
        let s = summarize(&[
            rec(Algorithm::Classic, 10, 100, true),
            rec(Algorithm::Classic, 10, 200, true),
        ]);
        assert_eq!(s[0].mean_evaluations, Some(150.0));
        assert!((s[0].std_evaluations.unwrap() - 70.710_678).abs() < 1e-5);
    }

    #[test]
    fn failures_are_counted_and_empty_cells_flagged() {
        let s = summarize(&[
            rec(Algorithm::Aging, 10, 100, true),
            rec(Algorithm::Aging, 10, 5000, false),
            rec(Algorithm::Classic, 10, 5000, false),
            rec(Algorithm::Classic, 15, 300, true),
        ]);
        assert_eq!(s.len(), 3);
        let aging = find(&s, Algorithm::Aging, 10).unwrap();
        assert_eq!(
            (aging.successes, aging.failures, aging.mean_evaluations),
            (1, 1, Some(100.0))
        );
        let classic = find(&s, Algorithm::Classic, 10).unwrap();
        assert!(classic.flagged());
        assert_eq!(classic.mean_evaluations, None);
        let table = format_table(&s);
        assert_eq!(table.lines().count(), 4);
        assert!(table.contains("NO SUCCESS"));
    }
}
