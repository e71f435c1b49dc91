//! The operator algebra: entries of the generalized-means matrix, the
//! difference operator, their composition, the inverse coefficient sequence
//! D_n (determinant oracle and production recursion), and the forward and
//! inverse transforms between a sequence and its image.
//!
//! The forward transform sends x to
//!
//! ```text
//! y_n = (1/r_n) * sum_{k=0}^{n} s_{n-k} t_k (x_k - x_{k-1})
//! ```
//!
//! and the inverse recovers x from y through the coefficients D_m defined
//! by D_0 = 1/s_0 and the convolution identity
//! `sum_{j=0}^{m} (-1)^j D_j s_{m-j} = 0` for m >= 1.

use crate::error::{Error, Result};
use crate::par;
use crate::types::{FiniteSequence, GeneralizedMeansParams, TriangleMatrix};

/// Largest size the literal determinant oracle accepts.
pub const DET_ORACLE_MAX: usize = 12;

/// How the coefficients were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffSource {
    Recursion,
    Determinant,
}

/// The inverse coefficient prefix D_0 .. D_{N-1} together with its
/// conditioning diagnostic (the coefficients can grow geometrically when
/// |s_1/s_0| > 1, so callers surface `max_abs` instead of failing).
#[derive(Debug, Clone, PartialEq)]
pub struct InverseCoeffs {
    d: Vec<f64>,
    source: CoeffSource,
    max_abs: f64,
}

impl InverseCoeffs {
    pub fn values(&self) -> &[f64] {
        &self.d
    }

    pub fn source(&self) -> CoeffSource {
        self.source
    }

    /// Conditioning diagnostic: max |D_m| over the stored prefix.
    pub fn max_abs(&self) -> f64 {
        self.max_abs
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }
}

/// Entry of the generalized-means matrix: s_{n-k} t_k / r_n for k <= n,
/// zero above the diagonal.
pub fn means_matrix_entry(params: &GeneralizedMeansParams, n: usize, k: usize) -> Result<f64> {
    let trunc = params.max_truncation();
    if n >= trunc || k >= trunc {
        return Err(Error::IndexOutOfRange {
            n,
            k,
            truncation: trunc,
        });
    }
    if k > n {
        return Ok(0.0);
    }
    Ok(params.s()[n - k] * params.t()[k] / params.r()[n])
}

/// The difference operator: (dx)_k = x_k - x_{k-1} with x_{-1} = 0.
pub fn difference_apply(x: &FiniteSequence) -> FiniteSequence {
    let v = x.values();
    let mut out = Vec::with_capacity(v.len());
    let mut prev = 0.0;
    for &cur in v {
        out.push(cur - prev);
        prev = cur;
    }
    FiniteSequence::new(out).expect("difference of a finite sequence is finite")
}

fn forward_row(params: &GeneralizedMeansParams, dx: &[f64], n: usize) -> f64 {
    let s = params.s();
    let t = params.t();
    let mut acc = 0.0;
    for k in 0..=n {
        acc += s[n - k] * t[k] * dx[k];
    }
    acc / params.r()[n]
}

fn forward_with(
    params: &GeneralizedMeansParams,
    x: &FiniteSequence,
    map: impl Fn(usize, &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>,
) -> Result<FiniteSequence> {
    let n = x.len();
    params.require_truncation(n)?;
    let dx = difference_apply(x);
    let rows = map(n, &|i| forward_row(params, dx.values(), i));
    FiniteSequence::new(rows)
}

/// Forward transform y_n = (1/r_n) sum s_{n-k} t_k (dx)_k.
pub fn forward_transform(
    params: &GeneralizedMeansParams,
    x: &FiniteSequence,
) -> Result<FiniteSequence> {
    forward_with(params, x, |n, f| par::map_indexed(n, f))
}

/// Sequential reference path for [`forward_transform`].
pub fn forward_transform_seq(
    params: &GeneralizedMeansParams,
    x: &FiniteSequence,
) -> Result<FiniteSequence> {
    forward_with(params, x, |n, f| par::map_indexed_seq(n, f))
}

/// Forced-parallel path for [`forward_transform`]; benchmark surface.
#[cfg(feature = "parallel")]
pub fn forward_transform_par(
    params: &GeneralizedMeansParams,
    x: &FiniteSequence,
) -> Result<FiniteSequence> {
    forward_with(params, x, |n, f| par::map_indexed_par(n, f))
}

/// D_n by literal cofactor expansion of the n x n determinant display,
/// divided by s_0^{n+1}. Exponential-state memoized expansion; intended as
/// a test oracle for n <= 12 only.
pub fn inverse_coeffs_det(s: &[f64], n: usize) -> Result<f64> {
    if n > DET_ORACLE_MAX {
        return Err(Error::OracleSizeExceeded {
            requested: n,
            max: DET_ORACLE_MAX,
        });
    }
    if s.is_empty() {
        return Err(Error::EmptyPrefix { seq: "s" });
    }
    if s[0] == 0.0 {
        return Err(Error::ZeroLeading);
    }
    if s.len() < n + 1 {
        return Err(Error::LengthMismatch {
            needed: n + 1,
            available: s.len(),
        });
    }
    if n == 0 {
        return Ok(1.0 / s[0]);
    }

    // Matrix entry (i, j) of the display: s_{i-j+1} for j <= i + 1, else 0.
    let entry = |i: usize, j: usize| -> f64 {
        if j > i + 1 {
            0.0
        } else {
            s[i + 1 - j]
        }
    };

    // Cofactor expansion row by row over the remaining column set.
    let full: u32 = (1u32 << n) - 1;
    let mut memo: Vec<Option<f64>> = vec![None; 1 << n];
    fn expand(
        row: usize,
        mask: u32,
        n: usize,
        full: u32,
        entry: &dyn Fn(usize, usize) -> f64,
        memo: &mut Vec<Option<f64>>,
    ) -> f64 {
        if mask == full {
            return 1.0;
        }
        if let Some(v) = memo[mask as usize] {
            return v;
        }
        let mut acc = 0.0;
        let mut pos = 0u32;
        for j in 0..n {
            if mask & (1 << j) != 0 {
                continue;
            }
            let a = entry(row, j);
            if a != 0.0 {
                let minor = expand(row + 1, mask | (1 << j), n, full, entry, memo);
                let signed = if pos.is_multiple_of(2) { a } else { -a };
                acc += signed * minor;
            }
            pos += 1;
        }
        memo[mask as usize] = Some(acc);
        acc
    }
    let det = expand(0, 0, n, full, &entry, &mut memo);
    Ok(det / s[0].powi(n as i32 + 1))
}

fn coeffs_from(d: Vec<f64>, source: CoeffSource) -> InverseCoeffs {
    let max_abs = d.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    InverseCoeffs { d, source, max_abs }
}

/// D_0 .. D_{N-1} by the O(N^2) recursion
/// `D_m = (1/s_0) sum_{j<m} (-1)^{m-1-j} D_j s_{m-j}`,
/// which is the convolution identity solved for the leading term.
pub fn inverse_coeffs(s: &[f64], n: usize) -> Result<InverseCoeffs> {
    if s.is_empty() {
        return Err(Error::EmptyPrefix { seq: "s" });
    }
    if s[0] == 0.0 {
        return Err(Error::ZeroLeading);
    }
    if s.len() < n {
        return Err(Error::LengthMismatch {
            needed: n,
            available: s.len(),
        });
    }
    let mut d = Vec::with_capacity(n);
    if n == 0 {
        return Ok(coeffs_from(d, CoeffSource::Recursion));
    }
    d.push(1.0 / s[0]);
    for m in 1..n {
        let mut acc = 0.0;
        for (j, dj) in d.iter().enumerate() {
            let sign = if (m - 1 - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            acc += sign * dj * s[m - j];
        }
        d.push(acc / s[0]);
    }
    Ok(coeffs_from(d, CoeffSource::Recursion))
}

/// Same prefix produced entry by entry through the determinant oracle.
pub fn inverse_coeffs_via_det(s: &[f64], n: usize) -> Result<InverseCoeffs> {
    let mut d = Vec::with_capacity(n);
    for m in 0..n {
        d.push(inverse_coeffs_det(s, m)?);
    }
    Ok(coeffs_from(d, CoeffSource::Determinant))
}

/// Row m of the inverse triangle applied to y:
/// (By)_m = sum_{j<=m} (-1)^{m-j} (D_{m-j}/t_m) r_j y_j.
fn inverse_row(params: &GeneralizedMeansParams, d: &[f64], y: &[f64], m: usize) -> f64 {
    let r = params.r();
    let t = params.t();
    let mut acc = 0.0;
    for j in 0..=m {
        let sign = if (m - j).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * d[m - j] * r[j] * y[j];
    }
    acc / t[m]
}

fn inverse_with(
    params: &GeneralizedMeansParams,
    y: &FiniteSequence,
    map: impl Fn(usize, &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>,
) -> Result<FiniteSequence> {
    let n = y.len();
    params.require_truncation(n)?;
    let d = inverse_coeffs(params.s(), n)?;
    let z = map(n, &|m| inverse_row(params, d.values(), y.values(), m));
    // The outer double sum of the inverse formula telescopes to a running
    // prefix sum of the inverse-triangle rows.
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for zm in z {
        acc += zm;
        out.push(acc);
    }
    FiniteSequence::new(out)
}

/// Inverse transform: recovers x from y = forward_transform(x) via
/// x_n = sum_{j=0}^{n} sum_{k=0}^{n-j} (-1)^k (D_k/t_{k+j}) r_j y_j,
/// evaluated with the inner partial sums cached per row.
pub fn inverse_transform(
    params: &GeneralizedMeansParams,
    y: &FiniteSequence,
) -> Result<FiniteSequence> {
    inverse_with(params, y, |n, f| par::map_indexed(n, f))
}

/// Sequential reference path for [`inverse_transform`].
pub fn inverse_transform_seq(
    params: &GeneralizedMeansParams,
    y: &FiniteSequence,
) -> Result<FiniteSequence> {
    inverse_with(params, y, |n, f| par::map_indexed_seq(n, f))
}

/// Forced-parallel path for [`inverse_transform`]; benchmark surface.
#[cfg(feature = "parallel")]
pub fn inverse_transform_par(
    params: &GeneralizedMeansParams,
    y: &FiniteSequence,
) -> Result<FiniteSequence> {
    inverse_with(params, y, |n, f| par::map_indexed_par(n, f))
}

/// Which operator to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// The generalized-means triangle itself.
    Means,
    /// The difference operator (1 on the diagonal, -1 below it).
    Difference,
    /// The composed operator: means matrix applied after the difference.
    Composed,
    /// The inverse of the means triangle.
    MeansInverse,
}

/// Materializes the chosen operator as an N x N lower triangle.
pub fn materialize_operator(
    params: &GeneralizedMeansParams,
    n: usize,
    which: OperatorKind,
) -> Result<TriangleMatrix> {
    let trunc = params.max_truncation();
    if n > trunc {
        return Err(Error::IndexOutOfRange {
            n,
            k: 0,
            truncation: trunc,
        });
    }
    let r = params.r();
    let s = params.s();
    let t = params.t();
    let m = match which {
        OperatorKind::Means => TriangleMatrix::from_fn(n, |i, k| s[i - k] * t[k] / r[i]),
        OperatorKind::Difference => TriangleMatrix::from_fn(n, |i, k| {
            if i == k {
                1.0
            } else if i == k + 1 {
                -1.0
            } else {
                0.0
            }
        }),
        OperatorKind::Composed => TriangleMatrix::from_fn(n, |i, k| {
            // Row of the means matrix times the difference triangle:
            // entry k picks up s_{i-k} t_k minus the k+1 column's sign flip.
            let lead = s[i - k] * t[k];
            let trail = if k < i { s[i - k - 1] * t[k + 1] } else { 0.0 };
            (lead - trail) / r[i]
        }),
        OperatorKind::MeansInverse => {
            let d = inverse_coeffs(s, n)?;
            let dv = d.values().to_vec();
            TriangleMatrix::from_fn(n, |i, k| {
                let sign = if (i - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * dv[i - k] / t[i] * r[k]
            })
        }
    };
    Ok(m)
}
