//! Rank-based comparison of score vectors across periods.

use statrs::function::gamma::checked_gamma_ur;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieCorrection {
    Applied,
    Omitted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KwResult {
    pub h_statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub tie_corrected: bool,
    /// Size of every group of tied values in the pooled sample (sizes > 1).
    pub tie_counts: Vec<usize>,
}

/// Midranks (1-based); tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = mid;
        }
        i = j + 1;
    }
    ranks
}

fn tie_groups(values: &[f64]) -> Vec<usize> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .chunk_by(|a, b| a == b)
        .map(<[f64]>::len)
        .filter(|&t| t > 1)
        .collect()
}

pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KwResult> {
    kruskal_wallis_with(groups, TieCorrection::Applied)
}

pub fn kruskal_wallis_with(groups: &[Vec<f64>], ties: TieCorrection) -> Result<KwResult> {
    if groups.len() < 2 {
        return Err(Error::InvalidArgument("the Kruskal-Wallis test needs at least two groups".into()));
    }
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::InvalidArgument("every group needs at least one value".into()));
    }
    if groups.iter().flatten().any(|v| v.is_nan()) {
        return Err(Error::InvalidArgument("NaN in Kruskal-Wallis input".into()));
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    let ranks = average_ranks(&pooled);
    let n = pooled.len() as f64;

    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let mut h = 12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0);
    let tie_counts = tie_groups(&pooled);
    if ties == TieCorrection::Applied {
        let t: f64 = tie_counts.iter().map(|&t| (t as f64).powi(3) - t as f64).sum();
        let denom = 1.0 - t / (n.powi(3) - n);
        h = if denom > 0.0 { h / denom } else { 0.0 };
    }
    // rounding can leave a tiny negative H for identical rank sums
    let h = h.max(0.0);
    let df = groups.len() - 1;
    Ok(KwResult {
        h_statistic: h,
        degrees_of_freedom: df,
        p_value: chi_square_sf(h, df)?,
        tie_corrected: ties == TieCorrection::Applied,
        tie_counts,
    })
}

/// Upper-tail chi-square probability, `Q(df/2, x/2)`.
pub fn chi_square_sf(x: f64, df: usize) -> Result<f64> {
    if df == 0 {
        return Err(Error::InvalidArgument("degrees of freedom must be positive".into()));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::InvalidArgument(format!("chi-square statistic must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    checked_gamma_ur(df as f64 / 2.0, x / 2.0).map_err(|e| Error::InvalidArgument(e.to_string()))
}
