use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest combined sample size handled by the exact distribution.
pub const EXACT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum RankSumMethod {
    /// Enumerated permutation distribution of the (mid)rank sum.
    Exact,
    /// Normal approximation with tie and continuity correction.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RankSum {
    /// Sum of the (mid)ranks of the first sample in the pooled data.
    pub statistic: f64,
    pub p_value: f64,
    pub method: RankSumMethod,
}

fn check(x: &[f64], y: &[f64]) -> Result<()> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySample);
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFiniteSample);
    }
    Ok(())
}

/// Doubled midranks of the pooled sample (integers even under ties) and the
/// tie group sizes.
fn doubled_midranks(pooled: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = alloc::vec![0usize; pooled.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        // positions i..=j hold ranks i+1..=j+1; doubled midrank is their sum
        let doubled = i + j + 2;
        for &k in &order[i..=j] {
            ranks[k] = doubled;
        }
        ties.push(j - i + 1);
        i = j + 1;
    }
    (ranks, ties)
}

fn exact_p(ranks: &[usize], n: usize, observed: usize) -> f64 {
    let max_sum: usize = ranks.iter().sum();
    // ways[c][s]: subsets of size c with doubled rank sum s
    let mut ways = alloc::vec![alloc::vec![0.0f64; max_sum + 1]; n + 1];
    ways[0][0] = 1.0;
    for (i, &r) in ranks.iter().enumerate() {
        for c in (1..=n.min(i + 1)).rev() {
            for s in (r..=max_sum).rev() {
                let add = ways[c - 1][s - r];
                if add != 0.0 {
                    ways[c][s] += add;
                }
            }
        }
    }
    let total: f64 = ways[n].iter().sum();
    let le: f64 = ways[n][..=observed].iter().sum();
    let ge: f64 = ways[n][observed..].iter().sum();
    (2.0 * (le / total).min(ge / total)).min(1.0)
}

fn normal_p(rank_sum: f64, n: usize, m: usize, ties: &[usize]) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let mean = nf * (total + 1.0) / 2.0;
    let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum();
    let var = nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((rank_sum - mean).abs() - 0.5).max(0.0) / libm::sqrt(var);
    libm::erfc(z / core::f64::consts::SQRT_2).min(1.0)
}

/// Two-sided Wilcoxon rank-sum test of `x` against `y`.
///
/// The exact null distribution is enumerated, with midranks for ties, when
/// the combined size is at most [`EXACT_LIMIT`]; larger samples use the
/// normal approximation.
pub fn wilcoxon_rank_sum(x: &[f64], y: &[f64]) -> Result<RankSum> {
    check(x, y)?;
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let (ranks, ties) = doubled_midranks(&pooled);
    let doubled_sum: usize = ranks[..x.len()].iter().sum();
    let statistic = doubled_sum as f64 / 2.0;
    if pooled.len() <= EXACT_LIMIT {
        Ok(RankSum {
            statistic,
            p_value: exact_p(&ranks, x.len(), doubled_sum),
            method: RankSumMethod::Exact,
        })
    } else {
        Ok(RankSum {
            statistic,
            p_value: normal_p(statistic, x.len(), y.len(), &ties),
            method: RankSumMethod::Normal,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Magnitude {
    Negligible,
    Small,
    Medium,
    Large,
}

impl Magnitude {
    /// Thresholds 0.15, 0.33 and 0.47; each bound belongs to the larger class.
    pub fn of(delta: f64) -> Self {
        if delta < 0.15 {
            Magnitude::Negligible
        } else if delta < 0.33 {
            Magnitude::Small
        } else if delta < 0.47 {
            Magnitude::Medium
        } else {
            Magnitude::Large
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Magnitude::Negligible => "negligible",
            Magnitude::Small => "small",
            Magnitude::Medium => "medium",
            Magnitude::Large => "large",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CliffsDelta {
    /// Absolute dominance difference in [0, 1].
    pub delta: f64,
    pub magnitude: Magnitude,
}

/// `|#(x > y) − #(x < y)| / (n·m)` by pair counting.
pub fn cliffs_delta(x: &[f64], y: &[f64]) -> Result<CliffsDelta> {
    check(x, y)?;
    let (mut greater, mut less) = (0i64, 0i64);
    for a in x {
        for b in y {
            if a > b {
                greater += 1;
            } else if a < b {
                less += 1;
            }
        }
    }
    let delta = ((greater - less).abs() as f64) / (x.len() * y.len()) as f64;
    Ok(CliffsDelta {
        delta,
        magnitude: Magnitude::of(delta),
    })
}

/// Significance and effect size of one sample against another.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StatResult {
    pub p_value: f64,
    pub method: RankSumMethod,
    pub cliffs_delta: f64,
    pub magnitude: Magnitude,
}

pub fn compare(x: &[f64], y: &[f64]) -> Result<StatResult> {
    let w = wilcoxon_rank_sum(x, y)?;
    let d = cliffs_delta(x, y)?;
    Ok(StatResult {
        p_value: w.p_value,
        method: w.method,
        cliffs_delta: d.delta,
        magnitude: d.magnitude,
    })
}
