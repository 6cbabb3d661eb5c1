use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::Write;

use statrs::distribution::{ContinuousCDF, StudentsT};

use super::{BenchError, BenchRecord};

/// Mean of the samples and the half width of its two-sided 95% Student-t
/// interval. The half width is NaN for fewer than two samples.
pub fn mean_ci95(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, f64::NAN);
    }
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975);
    (mean, t * (var / n as f64).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Evaluations,
    WallTime,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Evaluations => "n_evaluations",
            Metric::WallTime => "wall_time_us",
        }
    }

    fn of(self, r: &BenchRecord) -> f64 {
        match self {
            Metric::Evaluations => r.n_evaluations as f64,
            Metric::WallTime => r.wall_time_us as f64,
        }
    }
}

/// Mean difference `metric(algorithm) - metric(baseline)` over paired
/// instances of one group, with its 95% interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub scene: String,
    /// Size token of the instance id, such as `e2000`.
    pub size: String,
    /// `feasible`, `infeasible` or `mixed`.
    pub class: &'static str,
    pub algorithm: String,
    pub metric: Metric,
    pub n: usize,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Comparison {
    /// Whether the interval lies strictly on one side of zero.
    pub fn excludes_zero(&self) -> bool {
        self.ci_low > 0.0 || self.ci_high < 0.0
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} {:<10} {:<10} {:<10} {:<14} {:>5} {:>12.2} {:>12.2} {:>12.2}",
            self.scene,
            self.size,
            self.class,
            self.algorithm,
            self.metric.name(),
            self.n,
            self.mean,
            self.ci_low,
            self.ci_high
        )
    }
}

pub const SUMMARY_HEADER: &str = "scene      size       class      algorithm  metric             n         mean       ci_low      ci_high";

fn size_token(r: &BenchRecord) -> String {
    r.instance_id
        .strip_prefix(&format!("{}-", r.scene))
        .and_then(|rest| rest.split('-').next())
        .map_or_else(|| format!("e{}", r.n_edges), str::to_string)
}

/// Differences to `baseline` per (scene, size, class) for every algorithm
/// in the records, the baseline included.
pub fn compare(records: &[BenchRecord], baseline: &str) -> Result<Vec<Comparison>, BenchError> {
    if !records.iter().any(|r| r.algorithm == baseline) {
        return Err(BenchError::Analysis(format!("baseline `{baseline}` has no rows")));
    }
    let base: HashMap<&str, &BenchRecord> = records
        .iter()
        .filter(|r| r.algorithm == baseline)
        .map(|r| (r.instance_id.as_str(), r))
        .collect();

    type Key = (String, String, &'static str, String, Metric);
    let mut groups: BTreeMap<Key, Vec<f64>> = BTreeMap::new();
    for r in records {
        let Some(b) = base.get(r.instance_id.as_str()) else {
            continue;
        };
        let class = if r.ground_truth_feasible { "feasible" } else { "infeasible" };
        for metric in [Metric::Evaluations, Metric::WallTime] {
            let d = metric.of(r) - metric.of(b);
            for c in [class, "mixed"] {
                groups
                    .entry((r.scene.clone(), size_token(r), c, r.algorithm.clone(), metric))
                    .or_default()
                    .push(d);
            }
        }
    }
    Ok(groups
        .into_iter()
        .map(|((scene, size, class, algorithm, metric), diffs)| {
            let (mean, half) = mean_ci95(&diffs);
            Comparison {
                scene,
                size,
                class,
                algorithm,
                metric,
                n: diffs.len(),
                mean,
                ci_low: mean - half,
                ci_high: mean + half,
            }
        })
        .collect())
}

pub fn write_summary(mut w: impl Write, rows: &[Comparison]) -> std::io::Result<()> {
    writeln!(w, "{SUMMARY_HEADER}")?;
    for r in rows {
        writeln!(w, "{r}")?;
    }
    Ok(())
}
