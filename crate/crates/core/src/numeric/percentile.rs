use crate::error::{Error, Result};

/// A percentile request resolved to a 1-indexed, possibly fractional rank
/// `rank = rho / 100 * (eta + 1)` over `eta` sorted values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PercentileQuery {
    pub rho: f64,
    pub eta: usize,
    pub rank: f64,
}

impl PercentileQuery {
    pub fn new(rho: f64, eta: usize) -> Result<Self> {
        if !(rho > 0.0 && rho <= 100.0) {
            return Err(Error::InvalidConfig(format!(
                "percentile must lie in (0, 100], got {rho}"
            )));
        }
        Ok(Self {
            rho,
            eta,
            rank: rho / 100.0 * (eta as f64 + 1.0),
        })
    }
}

/// Value at percentile `rho` of an ascending slice.
///
/// Integer ranks select the rank-th smallest value; fractional ranks
/// interpolate linearly between its neighbours. The rank is clamped to
/// `[1, len]`.
pub fn percentile_value(sorted_values: &[f64], rho: f64) -> Result<f64> {
    if sorted_values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(i) = sorted_values.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::UnsortedInput { index: i + 1 });
    }
    let q = PercentileQuery::new(rho, sorted_values.len())?;
    let eta = sorted_values.len();
    let rank = q.rank.clamp(1.0, eta as f64);
    let lower = rank.floor();
    let frac = rank - lower;
    let lo = lower as usize - 1;
    if frac == 0.0 || lo + 1 >= eta {
        return Ok(sorted_values[lo]);
    }
    let (a, b) = (sorted_values[lo], sorted_values[lo + 1]);
    Ok((a + frac * (b - a)).clamp(a, b))
}
