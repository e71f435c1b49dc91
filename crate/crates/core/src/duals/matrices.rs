//! Matrix sources for the condition evaluator and the dual-characterization
//! matrices built from a multiplier sequence: the alpha-dual test matrix C,
//! the beta/gamma test matrix E, and the mapping matrix built from the rows
//! of another matrix.
//!
//! Sources are row oriented: `row(n, cols)` materializes row n truncated to
//! `cols` columns. External matrices arrive as JSON with either an explicit
//! dense lower-triangular block or a named generator from a fixed catalog.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::triangle::{forward_transform, inverse_coeffs};
use crate::types::{FiniteSequence, GeneralizedMeansParams, TriangleMatrix};

/// Row-oriented access to a (possibly unbounded) real matrix.
pub trait MatrixSource: Sync {
    /// Row `n` truncated to the first `cols` columns, padded with zeros.
    fn row(&self, n: usize, cols: usize) -> Vec<f64>;

    /// Number of rows available; `None` when rows can be generated forever.
    fn max_rows(&self) -> Option<usize>;

    /// Number of meaningful columns; `None` when unbounded.
    fn max_cols(&self) -> Option<usize> {
        self.max_rows()
    }
}

/// Dense matrix given row by row (rows may be ragged; missing entries are
/// zero).
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitMatrix {
    rows: Vec<Vec<f64>>,
    cols: usize,
}

impl ExplicitMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut cols = 0;
        for (n, row) in rows.iter().enumerate() {
            cols = cols.max(row.len());
            for (k, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidMatrix(format!(
                        "non-finite entry at row {n}, column {k}"
                    )));
                }
            }
        }
        Ok(Self { rows, cols })
    }
}

impl MatrixSource for ExplicitMatrix {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        let mut out = vec![0.0; cols];
        if let Some(row) = self.rows.get(n) {
            for (k, v) in row.iter().take(cols).enumerate() {
                out[k] = *v;
            }
        }
        out
    }

    fn max_rows(&self) -> Option<usize> {
        Some(self.rows.len())
    }

    fn max_cols(&self) -> Option<usize> {
        Some(self.cols)
    }
}

/// Closed-form generators available in matrix files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSpec {
    Identity,
    Summation,
    DiagonalGeometric { ratio: f64 },
    RowConstant { values: Vec<f64> },
}

impl MatrixSource for GeneratorSpec {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        let mut out = vec![0.0; cols];
        match self {
            GeneratorSpec::Identity => {
                if n < cols {
                    out[n] = 1.0;
                }
            }
            GeneratorSpec::Summation => {
                for v in out.iter_mut().take(n + 1) {
                    *v = 1.0;
                }
            }
            GeneratorSpec::DiagonalGeometric { ratio } => {
                if n < cols {
                    out[n] = ratio.powi(n as i32);
                }
            }
            GeneratorSpec::RowConstant { values } => {
                let c = values.get(n).copied().unwrap_or(0.0);
                for v in out.iter_mut().take(n + 1) {
                    *v = c;
                }
            }
        }
        out
    }

    fn max_rows(&self) -> Option<usize> {
        match self {
            GeneratorSpec::RowConstant { values } => Some(values.len()),
            _ => None,
        }
    }

    fn max_cols(&self) -> Option<usize> {
        match self {
            GeneratorSpec::RowConstant { values } => Some(values.len()),
            _ => None,
        }
    }
}

/// On-disk matrix description: exactly one of `entries` or `generator`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
}

/// A matrix loaded from a file description.
#[derive(Debug, Clone)]
pub enum LoadedMatrix {
    Explicit(ExplicitMatrix),
    Generator(GeneratorSpec),
}

impl MatrixSource for LoadedMatrix {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        match self {
            LoadedMatrix::Explicit(m) => m.row(n, cols),
            LoadedMatrix::Generator(g) => g.row(n, cols),
        }
    }

    fn max_rows(&self) -> Option<usize> {
        match self {
            LoadedMatrix::Explicit(m) => m.max_rows(),
            LoadedMatrix::Generator(g) => g.max_rows(),
        }
    }

    fn max_cols(&self) -> Option<usize> {
        match self {
            LoadedMatrix::Explicit(m) => m.max_cols(),
            LoadedMatrix::Generator(g) => g.max_cols(),
        }
    }
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<LoadedMatrix> {
        match (self.entries, self.generator) {
            (Some(rows), None) => Ok(LoadedMatrix::Explicit(ExplicitMatrix::new(rows)?)),
            (None, Some(g)) => {
                if let GeneratorSpec::DiagonalGeometric { ratio } = &g {
                    if !ratio.is_finite() {
                        return Err(Error::InvalidMatrix("non-finite ratio".into()));
                    }
                }
                Ok(LoadedMatrix::Generator(g))
            }
            _ => Err(Error::InvalidMatrix(
                "expected exactly one of \"entries\" or \"generator\"".into(),
            )),
        }
    }

    pub fn load(path: &std::path::Path) -> Result<LoadedMatrix> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: MatrixFile = serde_json::from_str(&text).map_err(|e| Error::InvalidJson {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        file.into_matrix()
    }
}

fn coeffs_for(params: &GeneralizedMeansParams, rows: usize) -> Result<Vec<f64>> {
    Ok(inverse_coeffs(params.s(), rows)?.values().to_vec())
}

/// The alpha-dual test matrix:
/// c_{nk} = a_n r_k sum_{j=0}^{n-k} (-1)^j D_j / t_{j+k}, zero above the
/// diagonal.
#[derive(Debug)]
pub struct AlphaDualMatrix<'a> {
    params: &'a GeneralizedMeansParams,
    a: &'a [f64],
    d: Vec<f64>,
}

impl<'a> AlphaDualMatrix<'a> {
    pub fn new(params: &'a GeneralizedMeansParams, a: &'a [f64], rows: usize) -> Result<Self> {
        params.require_truncation(rows.min(a.len()))?;
        let d = coeffs_for(params, rows.min(a.len()))?;
        Ok(Self { params, a, d })
    }
}

impl MatrixSource for AlphaDualMatrix<'_> {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        let mut out = vec![0.0; cols];
        if n >= self.d.len() {
            return out;
        }
        let t = self.params.t();
        let r = self.params.r();
        let an = self.a[n];
        for (k, slot) in out.iter_mut().enumerate().take(cols.min(n + 1)) {
            let mut inner = 0.0;
            for (j, dj) in self.d.iter().enumerate().take(n - k + 1) {
                let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
                inner += sign * dj / t[j + k];
            }
            *slot = an * r[k] * inner;
        }
        out
    }

    fn max_rows(&self) -> Option<usize> {
        Some(self.d.len())
    }
}

/// One row of the beta/gamma test matrix for the coefficient slice
/// `a[0..=n]`:
///
/// ```text
/// e_{nk} = r_k [ a_k/(s_0 t_k) + (D_0/t_k - D_1/t_{k+1}) S_{k+1}
///              + sum_{l=k+2}^{n} (-1)^{l-k} (D_{l-k}/t_l) S_l ]
/// ```
///
/// with S_l the suffix sums of a over l..=n and empty sums zero.
fn series_dual_row(
    params: &GeneralizedMeansParams,
    d: &[f64],
    a: &[f64],
    n: usize,
    cols: usize,
) -> Vec<f64> {
    let r = params.r();
    let s0 = params.s()[0];
    let t = params.t();
    // suffix[l] = sum_{j=l}^{n} a_j
    let mut suffix = vec![0.0; n + 2];
    for l in (0..=n).rev() {
        suffix[l] = suffix[l + 1] + a.get(l).copied().unwrap_or(0.0);
    }
    let mut out = vec![0.0; cols];
    for (k, slot) in out.iter_mut().enumerate().take(cols.min(n + 1)) {
        let mut acc = a.get(k).copied().unwrap_or(0.0) / (s0 * t[k]);
        if k < n {
            acc += (d[0] / t[k] - d[1] / t[k + 1]) * suffix[k + 1];
        }
        for l in (k + 2)..=n {
            let sign = if (l - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            acc += sign * d[l - k] / t[l] * suffix[l];
        }
        *slot = r[k] * acc;
    }
    out
}

/// The beta/gamma test matrix for a fixed multiplier sequence.
#[derive(Debug)]
pub struct SeriesDualMatrix<'a> {
    params: &'a GeneralizedMeansParams,
    a: &'a [f64],
    d: Vec<f64>,
}

impl<'a> SeriesDualMatrix<'a> {
    pub fn new(params: &'a GeneralizedMeansParams, a: &'a [f64], rows: usize) -> Result<Self> {
        let rows = rows.min(a.len());
        params.require_truncation(rows)?;
        let d = coeffs_for(params, rows)?;
        Ok(Self { params, a, d })
    }
}

impl MatrixSource for SeriesDualMatrix<'_> {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        if n >= self.d.len() {
            return vec![0.0; cols];
        }
        series_dual_row(self.params, &self.d, self.a, n, cols)
    }

    fn max_rows(&self) -> Option<usize> {
        Some(self.d.len())
    }
}

/// The mapping test matrix: the beta/gamma formula applied row by row to
/// the rows of a base matrix (row n uses the coefficient slice a_{n,0..n}).
#[derive(Debug)]
pub struct RowwiseDualMatrix<'a, S: MatrixSource + ?Sized> {
    params: &'a GeneralizedMeansParams,
    base: &'a S,
    d: Vec<f64>,
}

impl<'a, S: MatrixSource + ?Sized> RowwiseDualMatrix<'a, S> {
    pub fn new(params: &'a GeneralizedMeansParams, base: &'a S, rows: usize) -> Result<Self> {
        let rows = rows.min(base.max_rows().unwrap_or(rows));
        params.require_truncation(rows)?;
        let d = coeffs_for(params, rows)?;
        Ok(Self { params, base, d })
    }
}

impl<S: MatrixSource + ?Sized> MatrixSource for RowwiseDualMatrix<'_, S> {
    fn row(&self, n: usize, cols: usize) -> Vec<f64> {
        if n >= self.d.len() {
            return vec![0.0; cols];
        }
        let base_row = self.base.row(n, n + 1);
        series_dual_row(self.params, &self.d, &base_row, n, cols)
    }

    fn max_rows(&self) -> Option<usize> {
        Some(self.d.len())
    }
}

/// Single entry of the alpha-dual test matrix.
pub fn alpha_dual_matrix_entry(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
    k: usize,
) -> Result<f64> {
    let limit = params.max_truncation().min(a.len());
    if n >= limit || k > n {
        return Err(Error::IndexOutOfRange {
            n,
            k,
            truncation: limit,
        });
    }
    let m = AlphaDualMatrix::new(params, a.values(), n + 1)?;
    Ok(m.row(n, k + 1)[k])
}

/// Single entry of the beta/gamma test matrix.
pub fn beta_gamma_matrix_entry(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
    k: usize,
) -> Result<f64> {
    let limit = params.max_truncation().min(a.len());
    if n >= limit || k > n {
        return Err(Error::IndexOutOfRange {
            n,
            k,
            truncation: limit,
        });
    }
    let m = SeriesDualMatrix::new(params, a.values(), n + 1)?;
    Ok(m.row(n, k + 1)[k])
}

/// Single entry of the mapping test matrix for a base matrix.
pub fn e_tilde_entry(
    params: &GeneralizedMeansParams,
    base: &dyn MatrixSource,
    n: usize,
    k: usize,
) -> Result<f64> {
    let limit = params
        .max_truncation()
        .min(base.max_rows().unwrap_or(usize::MAX));
    if n >= limit || k > n {
        return Err(Error::IndexOutOfRange {
            n,
            k,
            truncation: limit,
        });
    }
    let m = RowwiseDualMatrix::new(params, base, n + 1)?;
    Ok(m.row(n, k + 1)[k])
}

/// Both sides of the summation-by-parts identity at truncation n:
/// the direct pairing sum_{k<=n} a_k x_k on the left, and the test-matrix
/// pairing sum_{k<=n} e_{nk} y_k with y the forward transform of x on the
/// right. The two agree up to rounding; this jointly exercises the E
/// entries, the inverse coefficients, and the forward transform.
pub fn abel_identity_check(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    x: &FiniteSequence,
    n: usize,
) -> Result<(f64, f64)> {
    let len = a.len().min(x.len());
    if n >= len {
        return Err(Error::LengthMismatch {
            needed: n + 1,
            available: len,
        });
    }
    params.require_truncation(n + 1)?;
    let lhs: f64 = (0..=n).map(|k| a.values()[k] * x.values()[k]).sum();
    let y = forward_transform(
        params,
        &FiniteSequence::new(x.values()[..=n].to_vec())?,
    )?;
    let m = SeriesDualMatrix::new(params, a.values(), n + 1)?;
    let erow = m.row(n, n + 1);
    let rhs: f64 = erow.iter().zip(y.values()).map(|(e, yv)| e * yv).sum();
    Ok((lhs, rhs))
}

fn beta_gamma_matrix_with(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
    map: impl Fn(usize, &(dyn Fn(usize) -> Vec<f64> + Sync)) -> Vec<Vec<f64>>,
) -> Result<TriangleMatrix> {
    let m = SeriesDualMatrix::new(params, a.values(), n)?;
    if m.max_rows() != Some(n) {
        return Err(Error::LengthMismatch {
            needed: n,
            available: m.max_rows().unwrap_or(0),
        });
    }
    let rows = map(n, &|i| m.row(i, i + 1));
    Ok(TriangleMatrix::from_rows(rows))
}

/// Materializes the beta/gamma test matrix as an N x N triangle.
pub fn beta_gamma_matrix(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
) -> Result<TriangleMatrix> {
    beta_gamma_matrix_with(params, a, n, |n, f| par::map_indexed(n, f))
}

/// Sequential reference path for [`beta_gamma_matrix`].
pub fn beta_gamma_matrix_seq(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
) -> Result<TriangleMatrix> {
    beta_gamma_matrix_with(params, a, n, |n, f| par::map_indexed_seq(n, f))
}

/// Forced-parallel path for [`beta_gamma_matrix`]; benchmark surface.
#[cfg(feature = "parallel")]
pub fn beta_gamma_matrix_par(
    params: &GeneralizedMeansParams,
    a: &FiniteSequence,
    n: usize,
) -> Result<TriangleMatrix> {
    beta_gamma_matrix_with(params, a, n, |n, f| par::map_indexed_par(n, f))
}
