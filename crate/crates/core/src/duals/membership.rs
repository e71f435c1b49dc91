//! Dual-membership and matrix-mapping verdicts.
//!
//! Membership of a multiplier sequence in the alpha-, beta-, or gamma-dual
//! of one of the four spaces reduces to a bundle of conditions from the
//! bank, evaluated over the appropriate test matrix (the alpha-dual matrix
//! for alpha, the series test matrix for beta and gamma, with row
//! exponents pinned to 1 where the characterization fixes them). The bank
//! conditions split every body over K1/K2, so mixed exponent prefixes are
//! handled per branch inside one bundle: each condition reports its own
//! verdict and the conjunction takes the worst status.
//!
//! Beta bundles carry three auxiliary existence checks that are not bank
//! conditions: convergence of the suffix series, convergence of the
//! weighted double tail, and boundedness of the scaled coefficient row.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle::inverse_coeffs;
use crate::types::{ExponentSequence, FiniteSequence, GeneralizedMeansParams};

use super::conditions::{evaluate_condition, ConditionId};
use super::matrices::{AlphaDualMatrix, MatrixSource, RowwiseDualMatrix, SeriesDualMatrix};
use super::verdict::{
    classify_shrink, classify_sup, DiagnosticPoint, EvalBounds, Verdict, VerdictStatus, Witness,
    MIN_ROWS,
};

/// Which dual is being tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    Alpha,
    Beta,
    Gamma,
}

/// The four variable-exponent spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    /// summable: sum_k |x_k|^{p_k} finite
    L,
    /// null: |x_k|^{p_k} -> 0
    C0,
    /// convergent: |x_k - l|^{p_k} -> 0 for some l
    C,
    /// bounded: sup_k |x_k|^{p_k} finite
    Linf,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::L => "l",
            SpaceKind::C0 => "c0",
            SpaceKind::C => "c",
            SpaceKind::Linf => "linf",
        }
    }
}

/// One named check inside a bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleItem {
    pub name: String,
    pub verdict: Verdict,
}

/// Conjunction verdict over a bundle of checks: the worst status wins and
/// every bound value stays visible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleVerdict {
    pub status: VerdictStatus,
    pub items: Vec<BundleItem>,
}

impl BundleVerdict {
    fn from_items(items: Vec<BundleItem>) -> Self {
        let status = items
            .iter()
            .fold(VerdictStatus::HoldsUpToBound, |acc, item| {
                acc.worst(item.verdict.status)
            });
        BundleVerdict { status, items }
    }
}

fn three_levels(rows: usize) -> [usize; 3] {
    [rows / 4, rows / 2, rows]
}

fn tail_start(rows: usize) -> usize {
    3 * rows / 4
}

/// Columns probed by the series-existence checks.
const SERIES_PROBE_COLS: usize = 8;

/// Tail-oscillation check for the suffix series sum_{j>k} a_j: at each
/// level the largest deviation of a tail partial sum from the level-end
/// partial sum, maximized over the probed columns. A summable sequence
/// shrinks level over level; a bounded oscillating one stays flat
/// (inconclusive); growth is flagged.
fn suffix_series_check(a: &[f64], rows: usize) -> Verdict {
    let probes = SERIES_PROBE_COLS.min(rows.saturating_sub(2));
    let mut values = [0.0f64; 3];
    let mut witness = Witness::default();
    for (i, &level) in three_levels(rows).iter().enumerate() {
        let mut worst = 0.0f64;
        for k in 0..probes {
            if k + 1 >= level {
                continue;
            }
            // partial sums S_n = sum_{j=k+1}^{n} a_j for n < level
            let end: f64 = a[k + 1..level].iter().sum();
            let mut run = 0.0;
            let mut partials = Vec::with_capacity(level - k - 1);
            for &v in &a[k + 1..level] {
                run += v;
                partials.push(run);
            }
            let start = tail_start(level).saturating_sub(k + 1);
            for (off, s) in partials.iter().enumerate().skip(start) {
                let dev = (s - end).abs();
                if dev > worst {
                    worst = dev;
                    if i == 2 {
                        witness = Witness {
                            row: Some(k + 1 + off),
                            col: Some(k),
                            f_set: None,
                        };
                    }
                }
            }
        }
        values[i] = worst;
    }
    Verdict {
        condition: "suffix_series_exists".into(),
        status: classify_shrink(&values),
        bound_value: values[2],
        witness,
        l_or_n: None,
        diagnostic: three_levels(rows)
            .iter()
            .zip(values)
            .map(|(&r, value)| DiagnosticPoint {
                rows: r,
                value,
                scale: None,
            })
            .collect(),
        limit_estimate: None,
    }
}

/// Tail-oscillation check for the weighted double tail
/// sum_{j>=k+2} (-1)^{j-k} (D_{j-k}/t_j) sum_{l>=j} a_l, both tails
/// truncated at the level.
fn weighted_tail_check(
    params: &GeneralizedMeansParams,
    a: &[f64],
    rows: usize,
) -> Result<Verdict> {
    let d = inverse_coeffs(params.s(), rows)?;
    let dv = d.values();
    let t = params.t();
    let probes = SERIES_PROBE_COLS.min(rows.saturating_sub(3));
    let value_at = |k: usize, n: usize| -> f64 {
        // suffix[j] = sum_{l=j}^{n} a_l
        let mut acc = 0.0;
        let mut suffix = 0.0;
        let mut terms: Vec<f64> = Vec::with_capacity(n + 1);
        for j in (0..=n).rev() {
            suffix += a[j];
            terms.push(suffix);
        }
        terms.reverse();
        for j in (k + 2)..=n {
            let sign = if (j - k).is_multiple_of(2) { 1.0 } else { -1.0 };
            acc += sign * dv[j - k] / t[j] * terms[j];
        }
        acc
    };
    let mut values = [0.0f64; 3];
    let mut witness = Witness::default();
    for (i, &level) in three_levels(rows).iter().enumerate() {
        let mut worst = 0.0f64;
        for k in 0..probes {
            let end = value_at(k, level - 1);
            for n in tail_start(level)..level {
                let dev = (value_at(k, n) - end).abs();
                if dev > worst {
                    worst = dev;
                    if i == 2 {
                        witness = Witness {
                            row: Some(n),
                            col: Some(k),
                            f_set: None,
                        };
                    }
                }
            }
        }
        values[i] = worst;
    }
    Ok(Verdict {
        condition: "weighted_tail_exists".into(),
        status: classify_shrink(&values),
        bound_value: values[2],
        witness,
        l_or_n: None,
        diagnostic: three_levels(rows)
            .iter()
            .zip(values)
            .map(|(&r, value)| DiagnosticPoint {
                rows: r,
                value,
                scale: None,
            })
            .collect(),
        limit_estimate: None,
    })
}

/// Boundedness of the scaled coefficient row: sup_k |r_k a_k / t_k|^{p_k}
/// over the stored prefix, with the usual growth diagnostic.
fn scaled_row_bounded_check(
    params: &GeneralizedMeansParams,
    a: &[f64],
    p: &ExponentSequence,
    rows: usize,
) -> Verdict {
    let r = params.r();
    let t = params.t();
    let pv = p.values();
    let mut values = [0.0f64; 3];
    let mut witness = Witness::default();
    for (i, &level) in three_levels(rows).iter().enumerate() {
        let mut worst = 0.0f64;
        for k in 0..level {
            let v = (r[k] * a[k] / t[k]).abs().powf(pv[k]);
            if v > worst {
                worst = v;
                if i == 2 {
                    witness = Witness {
                        row: None,
                        col: Some(k),
                        f_set: None,
                    };
                }
            }
        }
        values[i] = worst;
    }
    Verdict {
        condition: "scaled_row_bounded".into(),
        status: classify_sup(&values),
        bound_value: values[2],
        witness,
        l_or_n: None,
        diagnostic: three_levels(rows)
            .iter()
            .zip(values)
            .map(|(&r, value)| DiagnosticPoint {
                rows: r,
                value,
                scale: None,
            })
            .collect(),
        limit_estimate: None,
    }
}

fn bank_items(
    ids: &[u8],
    source: &dyn MatrixSource,
    p: &ExponentSequence,
    q: Option<&ExponentSequence>,
    bounds: &EvalBounds,
) -> Result<Vec<BundleItem>> {
    ids.iter()
        .map(|&minor| {
            let id = ConditionId::new(minor)?;
            let verdict = evaluate_condition(id, source, p, q, bounds)?;
            Ok(BundleItem {
                name: id.to_string(),
                verdict,
            })
        })
        .collect()
}

/// Condition bundle (bank ids) for each dual kind and space. For beta and
/// gamma the characterization fixes the row exponents to 1.
fn dual_bundle(kind: DualKind, space: SpaceKind) -> &'static [u8] {
    match (kind, space) {
        (DualKind::Alpha, SpaceKind::L) => &[4, 5],
        (DualKind::Alpha, SpaceKind::C0) => &[16],
        (DualKind::Alpha, SpaceKind::C) => &[16, 21],
        (DualKind::Alpha, SpaceKind::Linf) => &[25],
        (DualKind::Gamma, SpaceKind::L) => &[14, 15],
        (DualKind::Gamma, SpaceKind::C0) => &[20],
        (DualKind::Gamma, SpaceKind::C) => &[20, 24],
        (DualKind::Gamma, SpaceKind::Linf) => &[29],
        (DualKind::Beta, SpaceKind::L) => &[9, 10, 11, 12, 13],
        (DualKind::Beta, SpaceKind::C0) => &[11, 18, 19],
        (DualKind::Beta, SpaceKind::C) => &[11, 18, 19, 23],
        (DualKind::Beta, SpaceKind::Linf) => &[27, 28],
    }
}

/// Tests membership of the multiplier sequence `a` in the chosen dual of
/// the chosen space, for the space built over the given parameters and
/// exponents. Builds the appropriate test matrix, runs the bundle, and
/// returns the conjunction verdict with every condition reported.
pub fn dual_membership(
    a: &FiniteSequence,
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    kind: DualKind,
    space: SpaceKind,
    bounds: &EvalBounds,
) -> Result<BundleVerdict> {
    let rows = bounds
        .rows
        .min(a.len())
        .min(params.max_truncation());
    if rows < MIN_ROWS {
        return Err(Error::InsufficientTruncation {
            rows,
            min: MIN_ROWS,
        });
    }
    // the test matrices are triangles: square truncation
    let eff = EvalBounds {
        rows,
        cols: rows.min(bounds.cols),
        ..*bounds
    };
    p.require_len(eff.cols)?;
    let ones = ExponentSequence::constant(1.0, rows)?;
    let ids = dual_bundle(kind, space);
    let mut items = Vec::new();
    match kind {
        DualKind::Alpha => {
            let c = AlphaDualMatrix::new(params, a.values(), rows)?;
            // the alpha bundle conditions consume no row exponents
            items.extend(bank_items(ids, &c, p, None, &eff)?);
        }
        DualKind::Gamma => {
            let e = SeriesDualMatrix::new(params, a.values(), rows)?;
            items.extend(bank_items(ids, &e, p, Some(&ones), &eff)?);
        }
        DualKind::Beta => {
            items.push(BundleItem {
                name: "suffix_series_exists".into(),
                verdict: suffix_series_check(a.values(), rows),
            });
            items.push(BundleItem {
                name: "weighted_tail_exists".into(),
                verdict: weighted_tail_check(params, a.values(), rows)?,
            });
            items.push(BundleItem {
                name: "scaled_row_bounded".into(),
                verdict: scaled_row_bounded_check(params, a.values(), p, rows),
            });
            let e = SeriesDualMatrix::new(params, a.values(), rows)?;
            items.extend(bank_items(ids, &e, p, Some(&ones), &eff)?);
        }
    }
    Ok(BundleVerdict::from_items(items))
}

/// Mapping targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapTarget {
    /// bounded sequences (no row exponents)
    Linf,
    /// absolutely summable sequences
    L1,
    /// null sequences with row exponents q
    C0q,
    /// convergent sequences with row exponents q
    Cq,
    /// bounded sequences with row exponents q
    Linfq,
}

impl MapTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            MapTarget::Linf => "linf",
            MapTarget::L1 => "l1",
            MapTarget::C0q => "c0q",
            MapTarget::Cq => "cq",
            MapTarget::Linfq => "linfq",
        }
    }
}

/// Condition bundle on the rowwise test matrix for a (source, target)
/// pair, along with whether the bundle fixes q to 1.
fn map_bundle(source: SpaceKind, target: MapTarget) -> Result<(&'static [u8], bool)> {
    let unsupported = || Error::UnsupportedMapping {
        from: source.as_str().into(),
        to: target.as_str().into(),
    };
    Ok(match (source, target) {
        (SpaceKind::L, MapTarget::Linf) => (&[14, 15][..], true),
        (SpaceKind::L, MapTarget::L1) => (&[4, 5][..], true),
        (SpaceKind::L, MapTarget::C0q) => (&[6, 7, 8][..], false),
        (SpaceKind::L, MapTarget::Cq) => (&[9, 10, 11, 12, 13][..], false),
        (SpaceKind::L, MapTarget::Linfq) => (&[14, 15][..], false),
        (SpaceKind::C0, MapTarget::C0q) => (&[6, 17][..], false),
        (SpaceKind::C0, MapTarget::Cq) => (&[11, 18, 19][..], false),
        (SpaceKind::C0, MapTarget::Linfq) => (&[20][..], false),
        (SpaceKind::C, MapTarget::C0q) => (&[6, 17, 22][..], false),
        (SpaceKind::C, MapTarget::Cq) => (&[11, 18, 19, 23][..], false),
        (SpaceKind::C, MapTarget::Linfq) => (&[20, 24][..], false),
        (SpaceKind::Linf, MapTarget::C0q) => (&[26][..], false),
        (SpaceKind::Linf, MapTarget::Cq) => (&[27, 28][..], false),
        (SpaceKind::Linf, MapTarget::Linfq) => (&[29][..], false),
        _ => return Err(unsupported()),
    })
}

/// Summary of the per-row beta-dual membership requirement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowMembershipSummary {
    pub rows_checked: usize,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonholding_row: Option<usize>,
}

/// Verdict of a matrix-mapping check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapCheckReport {
    pub status: VerdictStatus,
    pub conditions: Vec<BundleItem>,
    pub row_membership: RowMembershipSummary,
}

/// Checks whether a matrix maps the source space (over the given
/// parameters) into the target, by evaluating the cited condition bundle
/// on the rowwise test matrix and requiring every examined row to sit in
/// the source's beta-dual.
pub fn matrix_map_check(
    a: &dyn MatrixSource,
    params: &GeneralizedMeansParams,
    p: &ExponentSequence,
    target: MapTarget,
    q: Option<&ExponentSequence>,
    source_space: SpaceKind,
    bounds: &EvalBounds,
) -> Result<MapCheckReport> {
    let rows = bounds
        .rows
        .min(a.max_rows().unwrap_or(bounds.rows))
        .min(params.max_truncation());
    if rows < MIN_ROWS {
        return Err(Error::InsufficientTruncation {
            rows,
            min: MIN_ROWS,
        });
    }
    let eff = EvalBounds {
        rows,
        cols: rows.min(bounds.cols),
        ..*bounds
    };
    p.require_len(eff.cols)?;
    let (ids, q_is_one) = map_bundle(source_space, target)?;
    let ones;
    let q_eff: Option<&ExponentSequence> = if q_is_one {
        ones = ExponentSequence::constant(1.0, rows)?;
        Some(&ones)
    } else {
        q
    };

    let e_tilde = RowwiseDualMatrix::new(params, a, rows)?;
    let conditions = bank_items(ids, &e_tilde, p, q_eff, &eff)?;

    // Every examined row must lie in the source space's beta-dual. Only
    // rows whose triangle support sits inside the first half of the
    // truncation are examined: for later rows every tail window ends at
    // the data boundary, where a trailing entry is indistinguishable from
    // an unconverged series.
    let rows_checked = rows / 2;
    let mut row_status = VerdictStatus::HoldsUpToBound;
    let mut first_nonholding_row = None;
    for n in 0..rows_checked {
        let row = FiniteSequence::new(a.row(n, eff.cols))?;
        if row.is_zero() {
            continue;
        }
        let bundle = dual_membership(&row, params, p, DualKind::Beta, source_space, &eff)?;
        if bundle.status != VerdictStatus::HoldsUpToBound && first_nonholding_row.is_none() {
            first_nonholding_row = Some(n);
        }
        row_status = row_status.worst(bundle.status);
    }

    let status = conditions
        .iter()
        .fold(row_status, |acc, item| acc.worst(item.verdict.status));
    Ok(MapCheckReport {
        status,
        conditions,
        row_membership: RowMembershipSummary {
            rows_checked,
            status: row_status,
            first_nonholding_row,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duals::matrices::GeneratorSpec;

    fn p_const(v: f64, n: usize) -> ExponentSequence {
        ExponentSequence::constant(v, n).unwrap()
    }

    fn identity_params(n: usize) -> GeneralizedMeansParams {
        GeneralizedMeansParams::identity(n)
    }

    #[test]
    fn zero_sequence_holds_everywhere() {
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let a = FiniteSequence::zeros(n);
        let bounds = EvalBounds::default();
        for kind in [DualKind::Alpha, DualKind::Beta, DualKind::Gamma] {
            for space in [SpaceKind::L, SpaceKind::C0, SpaceKind::C, SpaceKind::Linf] {
                let v = dual_membership(&a, &params, &p, kind, space, &bounds).unwrap();
                assert_eq!(
                    v.status,
                    VerdictStatus::HoldsUpToBound,
                    "{kind:?} {space:?}"
                );
            }
        }
    }

    #[test]
    fn geometric_sequence_gamma_holds() {
        // suffix sums of 2^{-n} are bounded by 2: the gamma bundle on the
        // series test matrix stays stable
        let n = 64;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let a = FiniteSequence::new((0..n).map(|i| 0.5f64.powi(i as i32)).collect()).unwrap();
        let v = dual_membership(
            &a,
            &params,
            &p,
            DualKind::Gamma,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::HoldsUpToBound);
    }

    #[test]
    fn linear_growth_gamma_suspected() {
        let n = 64;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let a = FiniteSequence::new((0..n).map(|i| i as f64).collect()).unwrap();
        let v = dual_membership(
            &a,
            &params,
            &p,
            DualKind::Gamma,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(v.status, VerdictStatus::DivergenceSuspected);
    }

    #[test]
    fn beta_tail_checks_distinguish_summable_from_oscillating() {
        let n = 64;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let bounds = EvalBounds::default();

        let summable =
            FiniteSequence::new((0..n).map(|i| 0.5f64.powi(i as i32)).collect()).unwrap();
        let v = dual_membership(&summable, &params, &p, DualKind::Beta, SpaceKind::L, &bounds)
            .unwrap();
        assert_eq!(v.status, VerdictStatus::HoldsUpToBound);

        let alternating =
            FiniteSequence::new((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect())
                .unwrap();
        let v = dual_membership(
            &alternating,
            &params,
            &p,
            DualKind::Beta,
            SpaceKind::L,
            &bounds,
        )
        .unwrap();
        let suffix_item = v
            .items
            .iter()
            .find(|i| i.name == "suffix_series_exists")
            .unwrap();
        assert_eq!(suffix_item.verdict.status, VerdictStatus::Inconclusive);
        assert_eq!(v.status, VerdictStatus::Inconclusive);
    }

    #[test]
    fn mixed_exponents_report_both_branches() {
        // p straddles 1: the K1 conditions and K2 conditions both appear
        // in the bundle, each with its own verdict
        let n = 32;
        let params = identity_params(n);
        let p = ExponentSequence::new(
            (0..n).map(|i| if i % 2 == 0 { 0.5 } else { 2.0 }).collect(),
        )
        .unwrap();
        let a = FiniteSequence::new((0..n).map(|i| 0.5f64.powi(i as i32)).collect()).unwrap();
        let v = dual_membership(
            &a,
            &params,
            &p,
            DualKind::Alpha,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(v.items.len(), 2);
        assert!(v.items.iter().any(|i| i.name == "4.4"));
        assert!(v.items.iter().any(|i| i.name == "4.5"));
    }

    #[test]
    fn map_check_zero_matrix_holds() {
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let zero = GeneratorSpec::RowConstant {
            values: vec![0.0; n],
        };
        let rep = matrix_map_check(
            &zero,
            &params,
            &p,
            MapTarget::Linf,
            None,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(rep.status, VerdictStatus::HoldsUpToBound);
    }

    #[test]
    fn map_check_identity_is_inconclusive_at_default_bounds() {
        // rowwise test entries are all ones: row sums grow linearly, which
        // is the honest in-between trend
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let rep = matrix_map_check(
            &GeneratorSpec::Identity,
            &params,
            &p,
            MapTarget::Linf,
            None,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(rep.status, VerdictStatus::Inconclusive);
        assert_eq!(rep.row_membership.status, VerdictStatus::HoldsUpToBound);
    }

    #[test]
    fn map_check_geometric_diagonal_holds() {
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let rep = matrix_map_check(
            &GeneratorSpec::DiagonalGeometric { ratio: 0.5 },
            &params,
            &p,
            MapTarget::Linf,
            None,
            SpaceKind::L,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(rep.status, VerdictStatus::HoldsUpToBound);
    }

    #[test]
    fn map_check_row_exponent_target() {
        // null-to-null mapping with genuine row exponents: the rowwise
        // test entries decay geometrically, so every bundle member holds
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let q = ExponentSequence::new((0..n).map(|i| 1.0 + (i % 3) as f64 * 0.5).collect())
            .unwrap();
        let rep = matrix_map_check(
            &GeneratorSpec::DiagonalGeometric { ratio: 0.5 },
            &params,
            &p,
            MapTarget::C0q,
            Some(&q),
            SpaceKind::C0,
            &EvalBounds::default(),
        )
        .unwrap();
        assert_eq!(rep.status, VerdictStatus::HoldsUpToBound);
        assert!(rep.conditions.iter().any(|i| i.name == "4.6"));
        assert!(rep.conditions.iter().any(|i| i.name == "4.17"));
    }

    #[test]
    fn map_check_rejects_unsupported_pairs() {
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let err = matrix_map_check(
            &GeneratorSpec::Identity,
            &params,
            &p,
            MapTarget::L1,
            None,
            SpaceKind::C0,
            &EvalBounds::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedMapping { .. }));
    }

    #[test]
    fn small_truncations_evaluate_cleanly() {
        // the series probes must not outrun a quarter-level window
        for rows in [8usize, 9, 12, 15] {
            let params = identity_params(rows);
            let p = p_const(2.0, rows);
            let a = FiniteSequence::new(
                (0..rows).map(|i| 0.5f64.powi(i as i32)).collect(),
            )
            .unwrap();
            let bounds = EvalBounds {
                rows,
                cols: rows,
                ..EvalBounds::default()
            };
            for kind in [DualKind::Alpha, DualKind::Beta, DualKind::Gamma] {
                dual_membership(&a, &params, &p, kind, SpaceKind::L, &bounds).unwrap();
            }
        }
    }

    #[test]
    fn tiny_scale_budgets_evaluate_cleanly() {
        use crate::duals::conditions::{evaluate_condition, ConditionId};
        let m = GeneratorSpec::Summation;
        let p = p_const(2.0, 16);
        for l_max in [0u64, 1, 2] {
            let bounds = EvalBounds {
                rows: 16,
                cols: 16,
                l_max,
                ..EvalBounds::default()
            };
            for minor in [5u8, 15, 27, 8] {
                evaluate_condition(ConditionId::new(minor).unwrap(), &m, &p, None, &bounds)
                    .unwrap();
            }
        }
    }

    #[test]
    fn bundle_json_roundtrip() {
        let n = 32;
        let params = identity_params(n);
        let p = p_const(2.0, n);
        let a = FiniteSequence::new((0..n).map(|i| 0.5f64.powi(i as i32)).collect()).unwrap();
        let v = dual_membership(
            &a,
            &params,
            &p,
            DualKind::Beta,
            SpaceKind::C,
            &EvalBounds::default(),
        )
        .unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back: BundleVerdict = serde_json::from_str(&text).unwrap();
        assert_eq!(v, back);
    }
}
