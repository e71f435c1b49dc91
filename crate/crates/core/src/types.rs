//! Validated domain types shared by every module: the parameter triple
//! (r, s, t) of a generalized-means operator, variable exponent sequences,
//! finite sequence prefixes, and lower-triangular matrices.
//!
//! All sequences are stored as finite prefixes with an explicit truncation
//! length; every asymptotic quantity downstream is evaluated "up to N" and
//! reported as such.

use crate::error::{Error, Result};

/// Hard validation floor for the divisors r_n, t_n and s_0. Values at or
/// below this magnitude are rejected as effectively zero. Legitimate
/// parameterizations reach ~1e-19 (factorial weights), so the floor sits
/// near the subnormal boundary rather than at a coarse epsilon.
pub const DIVISOR_FLOOR: f64 = 1e-300;

fn check_finite(seq: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyPrefix { seq });
    }
    for (index, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteParam { seq, index });
        }
    }
    Ok(())
}

/// The sequences r, t (nowhere zero) and s (s_0 nonzero) defining a
/// generalized-means matrix. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedMeansParams {
    r: Vec<f64>,
    s: Vec<f64>,
    t: Vec<f64>,
}

impl GeneralizedMeansParams {
    pub fn new(r: Vec<f64>, s: Vec<f64>, t: Vec<f64>) -> Result<Self> {
        check_finite("r", &r)?;
        check_finite("s", &s)?;
        check_finite("t", &t)?;
        for (index, &v) in r.iter().enumerate() {
            if v.abs() <= DIVISOR_FLOOR {
                return Err(Error::ZeroEntry { seq: "r", index });
            }
        }
        for (index, &v) in t.iter().enumerate() {
            if v.abs() <= DIVISOR_FLOOR {
                return Err(Error::ZeroEntry { seq: "t", index });
            }
        }
        if s[0].abs() <= DIVISOR_FLOOR {
            return Err(Error::ZeroLeading);
        }
        Ok(Self { r, s, t })
    }

    /// Parameters for which the means matrix is the identity:
    /// r = t = (1, 1, ...), s = (1, 0, 0, ...).
    pub fn identity(n: usize) -> Self {
        let mut s = vec![0.0; n.max(1)];
        s[0] = 1.0;
        Self {
            r: vec![1.0; n.max(1)],
            s,
            t: vec![1.0; n.max(1)],
        }
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    /// Largest truncation the stored prefixes support.
    pub fn max_truncation(&self) -> usize {
        self.r.len().min(self.s.len()).min(self.t.len())
    }

    /// Errors unless all three prefixes cover a truncation of length `n`.
    pub fn require_truncation(&self, n: usize) -> Result<()> {
        let available = self.max_truncation();
        if n > available {
            return Err(Error::LengthMismatch {
                needed: n,
                available,
            });
        }
        Ok(())
    }
}

/// Validates a parameter triple given as raw prefixes.
pub fn validate_params(r: &[f64], s: &[f64], t: &[f64]) -> Result<GeneralizedMeansParams> {
    GeneralizedMeansParams::new(r.to_vec(), s.to_vec(), t.to_vec())
}

/// A bounded sequence of strictly positive exponents p, together with the
/// derived data every functional needs: H = max p_k, M = max(1, H), the
/// index split K1 = {k : p_k <= 1} / K2 = {k : p_k > 1}, and the conjugate
/// exponents p'_k = p_k / (p_k - 1) on K2.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSequence {
    p: Vec<f64>,
    h: f64,
    m: f64,
    k1: Vec<usize>,
    k2: Vec<usize>,
    conjugate: Vec<Option<f64>>,
}

impl ExponentSequence {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::EmptyPrefix { seq: "p" });
        }
        for (index, &v) in p.iter().enumerate() {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::NonPositiveExponent { index });
            }
        }
        let h = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let m = h.max(1.0);
        let mut k1 = Vec::new();
        let mut k2 = Vec::new();
        let mut conjugate = Vec::with_capacity(p.len());
        for (k, &pk) in p.iter().enumerate() {
            if pk > 1.0 {
                k2.push(k);
                conjugate.push(Some(pk / (pk - 1.0)));
            } else {
                k1.push(k);
                conjugate.push(None);
            }
        }
        Ok(Self {
            p,
            h,
            m,
            k1,
            k2,
            conjugate,
        })
    }

    /// Constant exponent sequence of the given length.
    pub fn constant(value: f64, len: usize) -> Result<Self> {
        Self::new(vec![value; len.max(1)])
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// H = max of the stored exponents.
    pub fn sup(&self) -> f64 {
        self.h
    }

    /// M = max(1, H); the paranorm scale.
    pub fn scale(&self) -> f64 {
        self.m
    }

    /// inf of the stored exponents (strictly positive by construction).
    pub fn inf(&self) -> f64 {
        self.p.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Indices with p_k <= 1.
    pub fn k1(&self) -> &[usize] {
        &self.k1
    }

    /// Indices with p_k > 1.
    pub fn k2(&self) -> &[usize] {
        &self.k2
    }

    /// Conjugate exponent p'_k, defined only where p_k > 1.
    pub fn conjugate(&self, k: usize) -> Option<f64> {
        self.conjugate.get(k).copied().flatten()
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.p.get(k).copied()
    }

    /// True when every stored exponent exceeds 1 (the rotundity setting).
    pub fn all_above_one(&self) -> bool {
        self.k1.is_empty()
    }

    /// Errors unless the prefix covers `n` indices.
    pub fn require_len(&self, n: usize) -> Result<()> {
        if self.p.len() < n {
            return Err(Error::LengthMismatch {
                needed: n,
                available: self.p.len(),
            });
        }
        Ok(())
    }

    /// Errors at the first index (below `upto`) with p_k <= 1.
    pub fn require_above_one(&self, upto: usize) -> Result<()> {
        for (index, &value) in self.p.iter().take(upto).enumerate() {
            if value <= 1.0 {
                return Err(Error::ExponentNotAboveOne { index, value });
            }
        }
        Ok(())
    }
}

/// Computes the derived exponent data for a raw positive prefix.
pub fn exponent_stats(p: &[f64]) -> Result<ExponentSequence> {
    ExponentSequence::new(p.to_vec())
}

/// A real sequence prefix x_0 .. x_{N-1}; N >= 1 and every value finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSequence {
    values: Vec<f64>,
}

impl FiniteSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPrefix { seq: "x" });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { index });
            }
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            values: vec![0.0; n.max(1)],
        }
    }

    /// Standard unit sequence e_j at truncation n.
    pub fn unit(j: usize, n: usize) -> Self {
        let mut values = vec![0.0; n.max(j + 1)];
        values[j] = 1.0;
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for FiniteSequence {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Lower-triangular N x N matrix in packed row-major storage. Entries above
/// the diagonal do not exist in storage, so the triangle invariant holds by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl TriangleMatrix {
    /// Builds row by row from `f(n, k)` for 0 <= k <= n < dim.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = Vec::with_capacity(dim * (dim + 1) / 2);
        for n in 0..dim {
            for k in 0..=n {
                entries.push(f(n, k));
            }
        }
        Self { n: dim, entries }
    }

    /// Builds from already materialized rows (row n must have n + 1 entries).
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * (n + 1) / 2);
        for (i, row) in rows.into_iter().enumerate() {
            debug_assert_eq!(row.len(), i + 1);
            entries.extend(row);
        }
        Self { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry a_{nk}; zero above the diagonal.
    pub fn get(&self, n: usize, k: usize) -> f64 {
        if k > n || n >= self.n {
            return 0.0;
        }
        self.entries[n * (n + 1) / 2 + k]
    }

    /// The stored part of row n (columns 0..=n).
    pub fn row(&self, n: usize) -> &[f64] {
        let start = n * (n + 1) / 2;
        &self.entries[start..start + n + 1]
    }

    /// Triangle product self * other.
    pub fn mul(&self, other: &TriangleMatrix) -> TriangleMatrix {
        assert_eq!(self.n, other.n);
        TriangleMatrix::from_fn(self.n, |n, k| {
            (k..=n).map(|j| self.get(n, j) * other.get(j, k)).sum()
        })
    }

    /// Largest |a_{nk} - i_{nk}| against the identity.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..self.n {
            for k in 0..=n {
                let target = if n == k { 1.0 } else { 0.0 };
                worst = worst.max((self.get(n, k) - target).abs());
            }
        }
        worst
    }
}
