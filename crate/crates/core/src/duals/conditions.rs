//! The condition bank: 26 asymptotic matrix conditions, labeled 4.4
//! through 4.29, realized as one generic evaluator over a table of
//! quantifier and body shapes rather than 26 hand-rolled routines.
//!
//! Shared vocabulary: A = (a_nk) is the matrix under test, p the column
//! exponents with split K1 = {p_k <= 1} / K2 = {p_k > 1} and conjugates
//! p'_k on K2, q the row exponents, L and N natural scales, F a finite
//! index set, (alpha_k) a posited limit sequence. The table:
//!
//! ```text
//! 4.4   sup_F sup_{k in K1} |sum_{n in F} a_nk|^{p_k}
//! 4.5   exists L: sup_F sum_{k in K2} |sum_{n in F} a_nk / L|^{p'_k}
//! 4.6   lim_n |a_nk|^{q_n} = 0 for every k
//! 4.7   forall L: sup_n sup_{k in K1} |a_nk L^{1/q_n}|^{p_k}
//! 4.8   forall L exists N: sup_n sum_{k in K2} |a_nk L^{1/q_n} / N|^{p'_k}
//! 4.9   sup_n sup_{k in K1} |a_nk|^{p_k}
//! 4.10  exists N: sup_n sum_{k in K2} |a_nk / N|^{p'_k}
//! 4.11  exists (alpha_k): lim_n |a_nk - alpha_k|^{q_n} = 0 for every k
//! 4.12  exists (alpha_k) forall L: sup_n sup_{k in K1} (|a_nk - alpha_k| L^{1/q_n})^{p_k}
//! 4.13  exists (alpha_k) forall L exists N:
//!       sup_n sum_{k in K2} (|a_nk - alpha_k| L^{1/q_n} / N)^{p'_k}
//! 4.14  exists L: sup_n sup_{k in K1} |a_nk L^{-1/q_n}|^{p_k}
//! 4.15  exists L: sup_n sum_{k in K2} |a_nk L^{-1/q_n}|^{p'_k}
//! 4.16  exists N: sup_F sum_n |sum_{k in F} a_nk N^{-1/p_k}|
//! 4.17  forall L exists N: sup_n L^{1/q_n} sum_k |a_nk| N^{-1/p_k}
//! 4.18  exists N: sup_n sum_k |a_nk| N^{-1/p_k}
//! 4.19  exists (alpha_k) forall L exists N:
//!       sup_n L^{1/q_n} sum_k |a_nk - alpha_k| N^{-1/p_k}
//! 4.20  exists N: sup_n (sum_k |a_nk| N^{-1/p_k})^{q_n}
//! 4.21  sum_n |sum_k a_nk|
//! 4.22  lim_n |sum_k a_nk|^{q_n} = 0
//! 4.23  exists alpha: lim_n |sum_k a_nk - alpha|^{q_n} = 0
//! 4.24  sup_n |sum_k a_nk|^{q_n}
//! 4.25  forall N: sup_F sum_n |sum_{k in F} a_nk N^{1/p_k}|
//! 4.26  forall N: lim_n (sum_k |a_nk| N^{1/p_k})^{q_n} = 0
//! 4.27  forall N: sup_n sum_k |a_nk| N^{1/p_k}
//! 4.28  exists (alpha_k) forall N: lim_n (sum_k |a_nk - alpha_k| N^{1/p_k})^{q_n} = 0
//! 4.29  forall N: sup_n (sum_k |a_nk| N^{1/p_k})^{q_n}
//! ```
//!
//! Evaluation protocol: the matrix is materialized on the largest
//! truncation block and re-read on three nested levels (quarter, half,
//! full). Existential scales are searched over powers of two up to the
//! budget, smallest witness first; a candidate wins when its three-level
//! trace classifies as stable. Universal scales are sampled at {1, 2,
//! L_max} and every sample must classify as stable. Limit sequences
//! (alpha_k) are estimated as column means over the last quarter of rows
//! and reported alongside the verdict.
//!
//! Subset quantifiers: where F touches a single column sum the exact
//! sign-split closed form (positive-part sum vs negative-part sum) is
//! used. In 4.5 the same F couples every column of K2, so the reported
//! bound is the column-decoupled majorant sum_k (sup_F per column), an
//! upper bound that is finite exactly when the coupled sup is. In 4.16
//! and 4.25 the coupling is irreducible and F is enumerated exhaustively
//! over the leading `f_max` columns, a lower bound on the true sup.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par;
use crate::types::ExponentSequence;

use super::matrices::MatrixSource;
use super::verdict::{
    classify_cauchy, classify_shrink, classify_sup, DiagnosticPoint, EvalBounds, LimitEstimate,
    Verdict, VerdictStatus, Witness, MIN_ROWS,
};

/// Hard cap on the number of columns enumerated for subset conditions.
pub const F_ENUM_CAP: usize = 20;

/// Label of one of the 26 conditions (minor index 4 through 29).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConditionId(u8);

impl ConditionId {
    pub const MIN_MINOR: u8 = 4;
    pub const MAX_MINOR: u8 = 29;

    pub fn new(minor: u8) -> Result<Self> {
        if (Self::MIN_MINOR..=Self::MAX_MINOR).contains(&minor) {
            Ok(Self(minor))
        } else {
            Err(Error::UnknownCondition(format!("4.{minor}")))
        }
    }

    pub fn minor(self) -> u8 {
        self.0
    }

    /// All 26 condition labels in display order.
    pub fn all() -> impl Iterator<Item = ConditionId> {
        (Self::MIN_MINOR..=Self::MAX_MINOR).map(ConditionId)
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "4.{}", self.0)
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let minor = s
            .trim()
            .strip_prefix("4.")
            .and_then(|m| m.parse::<u8>().ok())
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))?;
        ConditionId::new(minor)
    }
}

/// Quantifier prefix of a condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Direct,
    ExistsL,
    ExistsN,
    ForallL,
    ForallN,
    ForallLExistsN,
}

/// Scale factor attached to the matrix entry inside K1/K2 bodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LFac {
    One,
    /// L^{1/q_n}
    PowPosQ,
    /// L^{-1/q_n}
    PowNegQ,
}

/// How per-row body values aggregate over rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregation {
    SupRows,
    LimZeroRows,
    SumRows,
}

/// Which limit data the condition posits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    None,
    PerColumn,
    Scalar,
}

/// Per-row body of a row-aggregated condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BodyKind {
    /// sup_{k in K1} (|a_nk - alpha_k?| * lfac)^{p_k}
    SupK1 { centered: bool, lfac: LFac },
    /// sum_{k in K2} (|a_nk - alpha_k?| * lfac [/ N])^{p'_k}
    SumK2 {
        centered: bool,
        lfac: LFac,
        n_divides: bool,
    },
    /// [L^{1/q_n} *] (sum_k |a_nk - alpha_k?| N^{pow/p_k}) [^{q_n}]
    SumAll {
        centered: bool,
        scale_pow: f64,
        l_front: bool,
        q_outer: bool,
    },
    /// |sum_k a_nk - alpha?| [^{q_n}]
    AbsRowSum { centered: bool, q_pow: bool },
}

/// Structural family of a condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionShape {
    RowAggregate { agg: Aggregation, body: BodyKind },
    PerColumnLimit { centered: bool },
    /// 4.4: subset of rows, decoupled per column, exact sign-split.
    RowSubsetSupK1,
    /// 4.5: subset of rows, column-decoupled majorant with 1/L scaling.
    RowSubsetSumK2,
    /// 4.16 / 4.25: subset of columns, exhaustive enumeration.
    ColSubsetRowSum { scale_pow: f64 },
}

/// Table row describing one condition; the id determines it uniquely.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionSpec {
    pub id: ConditionId,
    pub quantifier: Quantifier,
    pub shape: ConditionShape,
    pub uses_q: bool,
    pub uses_k_split: bool,
    pub limits: LimitKind,
}

impl ConditionSpec {
    pub fn for_id(id: ConditionId) -> ConditionSpec {
        use Aggregation::*;
        use BodyKind::*;
        use ConditionShape::*;
        use Quantifier::*;

        let row = |quantifier, agg, body, uses_q, uses_k_split, limits| ConditionSpec {
            id,
            quantifier,
            shape: RowAggregate { agg, body },
            uses_q,
            uses_k_split,
            limits,
        };
        match id.minor() {
            4 => ConditionSpec {
                id,
                quantifier: Direct,
                shape: RowSubsetSupK1,
                uses_q: false,
                uses_k_split: true,
                limits: LimitKind::None,
            },
            5 => ConditionSpec {
                id,
                quantifier: ExistsL,
                shape: RowSubsetSumK2,
                uses_q: false,
                uses_k_split: true,
                limits: LimitKind::None,
            },
            6 => ConditionSpec {
                id,
                quantifier: Direct,
                shape: PerColumnLimit { centered: false },
                uses_q: true,
                uses_k_split: false,
                limits: LimitKind::None,
            },
            7 => row(
                ForallL,
                SupRows,
                SupK1 { centered: false, lfac: LFac::PowPosQ },
                true,
                true,
                LimitKind::None,
            ),
            8 => row(
                ForallLExistsN,
                SupRows,
                SumK2 { centered: false, lfac: LFac::PowPosQ, n_divides: true },
                true,
                true,
                LimitKind::None,
            ),
            9 => row(
                Direct,
                SupRows,
                SupK1 { centered: false, lfac: LFac::One },
                false,
                true,
                LimitKind::None,
            ),
            10 => row(
                ExistsN,
                SupRows,
                SumK2 { centered: false, lfac: LFac::One, n_divides: true },
                false,
                true,
                LimitKind::None,
            ),
            11 => ConditionSpec {
                id,
                quantifier: Direct,
                shape: PerColumnLimit { centered: true },
                uses_q: true,
                uses_k_split: false,
                limits: LimitKind::PerColumn,
            },
            12 => row(
                ForallL,
                SupRows,
                SupK1 { centered: true, lfac: LFac::PowPosQ },
                true,
                true,
                LimitKind::PerColumn,
            ),
            13 => row(
                ForallLExistsN,
                SupRows,
                SumK2 { centered: true, lfac: LFac::PowPosQ, n_divides: true },
                true,
                true,
                LimitKind::PerColumn,
            ),
            14 => row(
                ExistsL,
                SupRows,
                SupK1 { centered: false, lfac: LFac::PowNegQ },
                true,
                true,
                LimitKind::None,
            ),
            15 => row(
                ExistsL,
                SupRows,
                SumK2 { centered: false, lfac: LFac::PowNegQ, n_divides: false },
                true,
                true,
                LimitKind::None,
            ),
            16 => ConditionSpec {
                id,
                quantifier: ExistsN,
                shape: ColSubsetRowSum { scale_pow: -1.0 },
                uses_q: false,
                uses_k_split: false,
                limits: LimitKind::None,
            },
            17 => row(
                ForallLExistsN,
                SupRows,
                SumAll { centered: false, scale_pow: -1.0, l_front: true, q_outer: false },
                true,
                false,
                LimitKind::None,
            ),
            18 => row(
                ExistsN,
                SupRows,
                SumAll { centered: false, scale_pow: -1.0, l_front: false, q_outer: false },
                false,
                false,
                LimitKind::None,
            ),
            19 => row(
                ForallLExistsN,
                SupRows,
                SumAll { centered: true, scale_pow: -1.0, l_front: true, q_outer: false },
                true,
                false,
                LimitKind::PerColumn,
            ),
            20 => row(
                ExistsN,
                SupRows,
                SumAll { centered: false, scale_pow: -1.0, l_front: false, q_outer: true },
                true,
                false,
                LimitKind::None,
            ),
            21 => row(
                Direct,
                SumRows,
                AbsRowSum { centered: false, q_pow: false },
                false,
                false,
                LimitKind::None,
            ),
            22 => row(
                Direct,
                LimZeroRows,
                AbsRowSum { centered: false, q_pow: true },
                true,
                false,
                LimitKind::None,
            ),
            23 => row(
                Direct,
                LimZeroRows,
                AbsRowSum { centered: true, q_pow: true },
                true,
                false,
                LimitKind::Scalar,
            ),
            24 => row(
                Direct,
                SupRows,
                AbsRowSum { centered: false, q_pow: true },
                true,
                false,
                LimitKind::None,
            ),
            25 => ConditionSpec {
                id,
                quantifier: ForallN,
                shape: ColSubsetRowSum { scale_pow: 1.0 },
                uses_q: false,
                uses_k_split: false,
                limits: LimitKind::None,
            },
            26 => row(
                ForallN,
                LimZeroRows,
                SumAll { centered: false, scale_pow: 1.0, l_front: false, q_outer: true },
                true,
                false,
                LimitKind::None,
            ),
            27 => row(
                ForallN,
                SupRows,
                SumAll { centered: false, scale_pow: 1.0, l_front: false, q_outer: false },
                false,
                false,
                LimitKind::None,
            ),
            28 => row(
                ForallN,
                LimZeroRows,
                SumAll { centered: true, scale_pow: 1.0, l_front: false, q_outer: true },
                true,
                false,
                LimitKind::PerColumn,
            ),
            29 => row(
                ForallN,
                SupRows,
                SumAll { centered: false, scale_pow: 1.0, l_front: false, q_outer: true },
                true,
                false,
                LimitKind::None,
            ),
            _ => unreachable!("constructor guards the minor range"),
        }
    }

    /// Whether the condition reads the column exponents p at all.
    pub fn uses_p(&self) -> bool {
        !matches!(
            self.shape,
            ConditionShape::PerColumnLimit { .. }
                | ConditionShape::RowAggregate {
                    body: BodyKind::AbsRowSum { .. },
                    ..
                }
        )
    }
}

#[derive(Debug, Clone, Copy)]
struct Level {
    rows: usize,
    cols: usize,
}

fn tail_start(rows: usize) -> usize {
    3 * rows / 4
}

#[derive(Debug, Default)]
struct ResolvedLimits {
    per_col: Option<Vec<f64>>,
    scalar: Option<f64>,
    estimate: Option<LimitEstimate>,
}

fn lfactor(lfac: LFac, l: f64, q_n: f64) -> f64 {
    match lfac {
        LFac::One => 1.0,
        LFac::PowPosQ => l.powf(1.0 / q_n),
        LFac::PowNegQ => l.powf(-1.0 / q_n),
    }
}

struct Ctx<'a> {
    rows_mat: &'a [Vec<f64>],
    p: &'a ExponentSequence,
    q_vals: &'a [f64],
    limits: &'a ResolvedLimits,
}

impl Ctx<'_> {
    fn alpha_at(&self, k: usize) -> f64 {
        self.limits
            .per_col
            .as_ref()
            .map(|v| v[k])
            .unwrap_or(0.0)
    }

    fn body_at(&self, body: &BodyKind, n: usize, cols: usize, l: f64, nn: f64) -> (f64, Option<usize>) {
        let row = &self.rows_mat[n];
        let q_n = self.q_vals[n];
        match *body {
            BodyKind::SupK1 { centered, lfac } => {
                let lf = lfactor(lfac, l, q_n);
                let mut best = 0.0;
                let mut col = None;
                for &k in self.p.k1() {
                    if k >= cols {
                        break;
                    }
                    let center = if centered { self.alpha_at(k) } else { 0.0 };
                    let v = ((row[k] - center).abs() * lf).powf(self.p.values()[k]);
                    if v > best {
                        best = v;
                        col = Some(k);
                    }
                }
                (best, col)
            }
            BodyKind::SumK2 {
                centered,
                lfac,
                n_divides,
            } => {
                let lf = lfactor(lfac, l, q_n);
                let ninv = if n_divides { 1.0 / nn } else { 1.0 };
                let mut acc = 0.0;
                for &k in self.p.k2() {
                    if k >= cols {
                        break;
                    }
                    let center = if centered { self.alpha_at(k) } else { 0.0 };
                    let base = (row[k] - center).abs() * lf * ninv;
                    acc += base.powf(self.p.conjugate(k).expect("k in K2"));
                }
                (acc, None)
            }
            BodyKind::SumAll {
                centered,
                scale_pow,
                l_front,
                q_outer,
            } => {
                let mut acc = 0.0;
                for (k, &v) in row.iter().take(cols).enumerate() {
                    let center = if centered { self.alpha_at(k) } else { 0.0 };
                    acc += (v - center).abs() * nn.powf(scale_pow / self.p.values()[k]);
                }
                let mut out = if q_outer { acc.powf(q_n) } else { acc };
                if l_front {
                    out *= l.powf(1.0 / q_n);
                }
                (out, None)
            }
            BodyKind::AbsRowSum { centered, q_pow } => {
                let total: f64 = row.iter().take(cols).sum();
                let center = if centered {
                    self.limits.scalar.unwrap_or(0.0)
                } else {
                    0.0
                };
                let t = (total - center).abs();
                (if q_pow { t.powf(q_n) } else { t }, None)
            }
        }
    }

    fn eval_row_aggregate(
        &self,
        agg: Aggregation,
        body: &BodyKind,
        level: Level,
        l: f64,
        nn: f64,
    ) -> (f64, Witness) {
        let (start, end) = match agg {
            Aggregation::SupRows | Aggregation::SumRows => (0, level.rows),
            Aggregation::LimZeroRows => (tail_start(level.rows), level.rows),
        };
        let count = end - start;
        let bodies = par::map_indexed(count, |i| self.body_at(body, start + i, level.cols, l, nn));
        match agg {
            Aggregation::SumRows => (bodies.iter().map(|(v, _)| v).sum(), Witness::default()),
            _ => {
                let mut best = 0.0;
                let mut wit = Witness::default();
                for (i, (v, col)) in bodies.iter().enumerate() {
                    if *v > best {
                        best = *v;
                        wit = Witness {
                            row: Some(start + i),
                            col: *col,
                            f_set: None,
                        };
                    }
                }
                (best, wit)
            }
        }
    }

    fn eval_per_column(&self, centered: bool, level_rows: usize, cols: usize) -> (f64, Witness) {
        let start = tail_start(level_rows);
        let mut best = 0.0;
        let mut wit = Witness::default();
        for k in 0..cols {
            let center = if centered { self.alpha_at(k) } else { 0.0 };
            for n in start..level_rows {
                let v = (self.rows_mat[n][k] - center).abs().powf(self.q_vals[n]);
                if v > best {
                    best = v;
                    wit = Witness {
                        row: Some(n),
                        col: Some(k),
                        f_set: None,
                    };
                }
            }
        }
        (best, wit)
    }

    /// Per-column sign-split maxima over row subsets: for each column the
    /// exact max over finite row sets F of |sum_{n in F} a_nk|, attained by
    /// the positive-part or negative-part sum.
    fn column_sign_split(&self, level: Level) -> Vec<(f64, bool)> {
        (0..level.cols)
            .map(|k| {
                let mut pos = 0.0;
                let mut neg = 0.0;
                for row in &self.rows_mat[..level.rows] {
                    let v = row[k];
                    if v > 0.0 {
                        pos += v;
                    } else if v < 0.0 {
                        neg += -v;
                    }
                }
                if pos >= neg {
                    (pos, true)
                } else {
                    (neg, false)
                }
            })
            .collect()
    }

    fn sign_set(&self, level: Level, col: usize, positive: bool) -> Vec<usize> {
        (0..level.rows)
            .filter(|&n| {
                let v = self.rows_mat[n][col];
                if positive {
                    v > 0.0
                } else {
                    v < 0.0
                }
            })
            .collect()
    }

    fn eval_row_subset_sup_k1(&self, level: Level) -> (f64, Witness) {
        let split = self.column_sign_split(level);
        let mut best = 0.0;
        let mut wit = Witness::default();
        for &k in self.p.k1() {
            if k >= level.cols {
                break;
            }
            let v = split[k].0.powf(self.p.values()[k]);
            if v > best {
                best = v;
                wit = Witness {
                    row: None,
                    col: Some(k),
                    f_set: Some(self.sign_set(level, k, split[k].1)),
                };
            }
        }
        (best, wit)
    }

    fn eval_row_subset_sum_k2(&self, level: Level, l: f64) -> (f64, Witness) {
        let split = self.column_sign_split(level);
        let mut acc = 0.0;
        let mut best_col = None;
        let mut best_term = 0.0;
        for &k in self.p.k2() {
            if k >= level.cols {
                break;
            }
            let term = (split[k].0 / l).powf(self.p.conjugate(k).expect("k in K2"));
            acc += term;
            if term > best_term {
                best_term = term;
                best_col = Some(k);
            }
        }
        (
            acc,
            Witness {
                row: None,
                col: best_col,
                f_set: None,
            },
        )
    }

    fn eval_col_subsets(
        &self,
        level: Level,
        scale_pow: f64,
        nn: f64,
        f_max: usize,
    ) -> (f64, Witness) {
        let m = level.cols.min(f_max).min(F_ENUM_CAP);
        if m == 0 {
            return (0.0, Witness::default());
        }
        let scale: Vec<f64> = (0..m)
            .map(|k| nn.powf(scale_pow / self.p.values()[k]))
            .collect();
        let mut best = 0.0;
        let mut best_mask: usize = 0;
        for mask in 1usize..(1 << m) {
            let mut total = 0.0;
            for row in &self.rows_mat[..level.rows] {
                let mut inner = 0.0;
                let mut bits = mask;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    inner += row[k] * scale[k];
                    bits &= bits - 1;
                }
                total += inner.abs();
            }
            if total > best {
                best = total;
                best_mask = mask;
            }
        }
        let f_set: Vec<usize> = (0..m).filter(|k| best_mask & (1 << k) != 0).collect();
        (
            best,
            Witness {
                row: None,
                col: None,
                f_set: Some(f_set),
            },
        )
    }

    fn eval_shape(&self, spec: &ConditionSpec, level: Level, l: f64, nn: f64, f_max: usize, total_cols: usize) -> (f64, Witness) {
        match &spec.shape {
            ConditionShape::RowAggregate { agg, body } => {
                self.eval_row_aggregate(*agg, body, level, l, nn)
            }
            ConditionShape::PerColumnLimit { centered } => {
                self.eval_per_column(*centered, level.rows, total_cols)
            }
            ConditionShape::RowSubsetSupK1 => self.eval_row_subset_sup_k1(level),
            ConditionShape::RowSubsetSumK2 => self.eval_row_subset_sum_k2(level, l),
            ConditionShape::ColSubsetRowSum { scale_pow } => {
                self.eval_col_subsets(level, *scale_pow, nn, f_max)
            }
        }
    }
}

fn classifier_for(spec: &ConditionSpec) -> fn(&[f64; 3]) -> VerdictStatus {
    match &spec.shape {
        ConditionShape::RowAggregate { agg, .. } => match agg {
            Aggregation::SupRows => classify_sup,
            Aggregation::LimZeroRows => classify_shrink,
            Aggregation::SumRows => classify_cauchy,
        },
        ConditionShape::PerColumnLimit { .. } => classify_shrink,
        _ => classify_sup,
    }
}

struct Run {
    status: VerdictStatus,
    values: [f64; 3],
    witness: Witness,
    diagnostic: Vec<DiagnosticPoint>,
}

struct Driver<'a> {
    ctx: Ctx<'a>,
    spec: ConditionSpec,
    levels: [Level; 3],
    classify: fn(&[f64; 3]) -> VerdictStatus,
    f_max: usize,
    total_cols: usize,
}

impl Driver<'_> {
    fn run(&self, l: f64, nn: f64, tag: Option<u64>) -> Run {
        let mut values = [0.0; 3];
        let mut witness = Witness::default();
        let mut diagnostic = Vec::with_capacity(3);
        for (i, level) in self.levels.iter().enumerate() {
            let (v, w) = self
                .ctx
                .eval_shape(&self.spec, *level, l, nn, self.f_max, self.total_cols);
            values[i] = v;
            if i == 2 {
                witness = w;
            }
            diagnostic.push(DiagnosticPoint {
                rows: level.rows,
                value: v,
                scale: tag,
            });
        }
        Run {
            status: (self.classify)(&values),
            values,
            witness,
            diagnostic,
        }
    }

    fn powers(&self, l_max: u64) -> Vec<u64> {
        let l_max = l_max.max(1);
        let mut out = vec![];
        let mut c = 1u64;
        while c <= l_max {
            out.push(c);
            if c > l_max / 2 {
                break;
            }
            c *= 2;
        }
        out
    }

    fn universal_samples(&self, l_max: u64) -> Vec<u64> {
        let l_max = l_max.max(1);
        let mut out = vec![1, 2, l_max];
        out.retain(|&v| v <= l_max);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Geometric search for the smallest stable existential scale.
    fn exists_search(&self, fixed_l: Option<f64>, l_max: u64) -> (Option<u64>, Run) {
        let mut last = None;
        for cand in self.powers(l_max) {
            let (l, nn) = match fixed_l {
                Some(lv) => (lv, cand as f64),
                None => match self.spec.quantifier {
                    Quantifier::ExistsL => (cand as f64, 1.0),
                    _ => (1.0, cand as f64),
                },
            };
            let run = self.run(l, nn, Some(cand));
            if run.status == VerdictStatus::HoldsUpToBound {
                return (Some(cand), run);
            }
            last = Some(run);
        }
        (None, last.expect("at least one candidate"))
    }

    fn drive(&self, l_max: u64) -> (VerdictStatus, f64, Witness, Option<u64>, Vec<DiagnosticPoint>) {
        match self.spec.quantifier {
            Quantifier::Direct => {
                let run = self.run(1.0, 1.0, None);
                (run.status, run.values[2], run.witness, None, run.diagnostic)
            }
            Quantifier::ExistsL | Quantifier::ExistsN => {
                let (witness_scale, run) = self.exists_search(None, l_max);
                let status = match witness_scale {
                    Some(_) => VerdictStatus::HoldsUpToBound,
                    None => {
                        if run.status == VerdictStatus::DivergenceSuspected {
                            VerdictStatus::DivergenceSuspected
                        } else {
                            VerdictStatus::Inconclusive
                        }
                    }
                };
                (status, run.values[2], run.witness, witness_scale, run.diagnostic)
            }
            Quantifier::ForallL | Quantifier::ForallN => {
                let mut status = VerdictStatus::HoldsUpToBound;
                let mut bound = 0.0;
                let mut witness = Witness::default();
                let mut diagnostic = vec![];
                for cand in self.universal_samples(l_max) {
                    let (l, nn) = match self.spec.quantifier {
                        Quantifier::ForallL => (cand as f64, 1.0),
                        _ => (1.0, cand as f64),
                    };
                    let run = self.run(l, nn, Some(cand));
                    status = status.worst(run.status);
                    if run.values[2] >= bound {
                        bound = run.values[2];
                        witness = run.witness;
                    }
                    diagnostic.extend(run.diagnostic);
                }
                (status, bound, witness, None, diagnostic)
            }
            Quantifier::ForallLExistsN => {
                let mut status = VerdictStatus::HoldsUpToBound;
                let mut bound = 0.0;
                let mut witness = Witness::default();
                let mut max_n = None;
                let mut diagnostic = vec![];
                for lcand in self.universal_samples(l_max) {
                    let (found, run) = self.exists_search(Some(lcand as f64), l_max);
                    match found {
                        Some(n) => {
                            max_n = Some(max_n.map_or(n, |m: u64| m.max(n)));
                        }
                        None => {
                            status = status.worst(if run.status
                                == VerdictStatus::DivergenceSuspected
                            {
                                VerdictStatus::DivergenceSuspected
                            } else {
                                VerdictStatus::Inconclusive
                            });
                        }
                    }
                    if run.values[2] >= bound {
                        bound = run.values[2];
                        witness = run.witness;
                    }
                    diagnostic.extend(run.diagnostic);
                }
                (status, bound, witness, max_n, diagnostic)
            }
        }
    }
}

/// Evaluates one condition over a matrix source at the given budget.
///
/// The verdict carries the achieved bound, the indices attaining it, the
/// existential witness when one was found, the three-level growth
/// diagnostic (per sampled scale), and the limit estimates when the
/// condition posits them. `q` defaults to the constant sequence 1 when the
/// condition consumes row exponents and none are supplied.
pub fn evaluate_condition(
    id: ConditionId,
    source: &dyn MatrixSource,
    p: &ExponentSequence,
    q: Option<&ExponentSequence>,
    bounds: &EvalBounds,
) -> Result<Verdict> {
    let spec = ConditionSpec::for_id(id);
    let r_total = bounds.rows.min(source.max_rows().unwrap_or(bounds.rows));
    if r_total < MIN_ROWS {
        return Err(Error::InsufficientTruncation {
            rows: r_total,
            min: MIN_ROWS,
        });
    }
    let c_total = bounds
        .cols
        .min(source.max_cols().unwrap_or(bounds.cols))
        .max(1);
    if spec.uses_p() {
        p.require_len(c_total)?;
    }
    let q_vals: Vec<f64> = if spec.uses_q {
        match q {
            Some(qq) => {
                qq.require_len(r_total)?;
                qq.values()[..r_total].to_vec()
            }
            None => vec![1.0; r_total],
        }
    } else {
        vec![1.0; r_total]
    };

    let rows_mat: Vec<Vec<f64>> = par::map_indexed(r_total, |n| source.row(n, c_total));

    let limits = match spec.limits {
        LimitKind::None => ResolvedLimits::default(),
        LimitKind::PerColumn => {
            let start = tail_start(r_total);
            let count = (r_total - start) as f64;
            let values: Vec<f64> = (0..c_total)
                .map(|k| rows_mat[start..r_total].iter().map(|row| row[k]).sum::<f64>() / count)
                .collect();
            ResolvedLimits {
                estimate: Some(LimitEstimate {
                    values: values.clone(),
                    estimation_rows: (start, r_total),
                }),
                per_col: Some(values),
                scalar: None,
            }
        }
        LimitKind::Scalar => {
            let start = tail_start(r_total);
            let count = (r_total - start) as f64;
            let mean = rows_mat[start..r_total]
                .iter()
                .map(|row| row.iter().sum::<f64>())
                .sum::<f64>()
                / count;
            ResolvedLimits {
                estimate: Some(LimitEstimate {
                    values: vec![mean],
                    estimation_rows: (start, r_total),
                }),
                per_col: None,
                scalar: Some(mean),
            }
        }
    };

    // The quantified asymptotics live in the row index; the column window
    // stays fixed across levels so sup-type bounds are monotone in the
    // truncation.
    let levels = [
        Level {
            rows: r_total / 4,
            cols: c_total,
        },
        Level {
            rows: r_total / 2,
            cols: c_total,
        },
        Level {
            rows: r_total,
            cols: c_total,
        },
    ];

    let driver = Driver {
        ctx: Ctx {
            rows_mat: &rows_mat,
            p,
            q_vals: &q_vals,
            limits: &limits,
        },
        classify: classifier_for(&spec),
        spec,
        levels,
        f_max: bounds.f_max,
        total_cols: c_total,
    };
    let (status, bound_value, witness, l_or_n, diagnostic) = driver.drive(bounds.l_max);
    Ok(Verdict {
        condition: id.to_string(),
        status,
        bound_value,
        witness,
        l_or_n,
        diagnostic,
        limit_estimate: limits.estimate,
    })
}
