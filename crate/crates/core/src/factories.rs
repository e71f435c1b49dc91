//! Parameter constructors for the classical special cases: weighted means,
//! arithmetic (Cesàro-type) means, binomial (Euler-type) means, and the
//! shifted-geometric family.

use crate::error::{Error, Result};
use crate::types::GeneralizedMeansParams;

/// Largest truncation for the factorial-weighted constructor; 20! is the
/// last factorial a double holds with the accuracy the row-sum checks need.
pub const FACTORIAL_MAX: usize = 20;

/// Weighted-mean parameters: r_n = 1/u_n, t_n = v_n, s = 1. The means
/// matrix entry becomes u_n v_k.
pub fn weighted_mean_params(u: &[f64], v: &[f64]) -> Result<GeneralizedMeansParams> {
    if u.is_empty() {
        return Err(Error::EmptyPrefix { seq: "u" });
    }
    if v.is_empty() {
        return Err(Error::EmptyPrefix { seq: "v" });
    }
    for (index, &x) in u.iter().enumerate() {
        if x == 0.0 {
            return Err(Error::ZeroEntry { seq: "u", index });
        }
    }
    for (index, &x) in v.iter().enumerate() {
        if x == 0.0 {
            return Err(Error::ZeroEntry { seq: "v", index });
        }
    }
    let n = u.len().min(v.len());
    let r: Vec<f64> = u.iter().take(n).map(|x| 1.0 / x).collect();
    let t: Vec<f64> = v[..n].to_vec();
    GeneralizedMeansParams::new(r, vec![1.0; n], t)
}

/// Arithmetic-mean parameters: r_n = n + 1, s = t = 1. Every row of the
/// means matrix is constant 1/(n+1).
pub fn cesaro_params(n: usize) -> Result<GeneralizedMeansParams> {
    if n == 0 {
        return Err(Error::EmptyPrefix { seq: "r" });
    }
    let r: Vec<f64> = (0..n).map(|i| (i + 1) as f64).collect();
    GeneralizedMeansParams::new(r, vec![1.0; n], vec![1.0; n])
}

/// Binomial-mean parameters: r_n = 1/n!, t_n = alpha^n/n!,
/// s_n = (1-alpha)^n/n!. The means matrix entry is
/// binomial(n,k) alpha^k (1-alpha)^{n-k}.
pub fn euler_params(alpha: f64, n: usize) -> Result<GeneralizedMeansParams> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n == 0 {
        return Err(Error::EmptyPrefix { seq: "r" });
    }
    if n > FACTORIAL_MAX {
        return Err(Error::TruncationTooLarge {
            requested: n,
            max: FACTORIAL_MAX,
        });
    }
    let mut fact = Vec::with_capacity(n);
    let mut acc = 1.0f64;
    for i in 0..n {
        if i > 0 {
            acc *= i as f64;
        }
        fact.push(acc);
    }
    let r: Vec<f64> = fact.iter().map(|f| 1.0 / f).collect();
    let t: Vec<f64> = (0..n).map(|i| alpha.powi(i as i32) / fact[i]).collect();
    let s: Vec<f64> = (0..n)
        .map(|i| (1.0 - alpha).powi(i as i32) / fact[i])
        .collect();
    GeneralizedMeansParams::new(r, s, t)
}

/// Binomial matrix entry binomial(n,k) alpha^k (1-alpha)^{n-k} by the
/// multiplicative recurrence; stable for any n, used as the oracle for the
/// factorial parameterization.
pub fn euler_matrix_entry(alpha: f64, n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    // walk binomial(n,j) alpha^j from j = 0 to k, then damp the rest
    let mut v = (1.0 - alpha).powi(n as i32);
    for j in 0..k {
        v *= (n - j) as f64 / (j + 1) as f64 * alpha / (1.0 - alpha);
    }
    v
}

/// Shifted-geometric parameters: r_n = n + 1, t_n = 1 + alpha^n, s = 1.
/// The means matrix entry is (1 + alpha^k)/(n + 1).
pub fn a_alpha_params(alpha: f64, n: usize) -> Result<GeneralizedMeansParams> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if n == 0 {
        return Err(Error::EmptyPrefix { seq: "r" });
    }
    let r: Vec<f64> = (0..n).map(|i| (i + 1) as f64).collect();
    let t: Vec<f64> = (0..n).map(|i| 1.0 + alpha.powi(i as i32)).collect();
    GeneralizedMeansParams::new(r, vec![1.0; n], t)
}
