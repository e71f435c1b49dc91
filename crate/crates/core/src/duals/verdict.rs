//! Truncation-honest verdicts.
//!
//! None of the asymptotic conditions is decidable from a finite block, so
//! the evaluator never answers "holds"; it reports the finite bound it
//! achieved plus a growth diagnostic across three nested truncations and
//! classifies the trend. Enlarging the truncation can only grow a
//! sup-type bound, and the diagnostic records exactly how it grew.

use serde::{Deserialize, Serialize};

/// Truncation-honest outcome of an asymptotic condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    /// The bound stayed stable across the diagnostic truncations.
    HoldsUpToBound,
    /// The bound grew geometrically across the diagnostic truncations.
    DivergenceSuspected,
    /// Neither stable nor clearly growing at the available truncation.
    Inconclusive,
}

impl VerdictStatus {
    /// Conjunction ordering: divergence dominates, then inconclusive.
    pub fn worst(self, other: VerdictStatus) -> VerdictStatus {
        use VerdictStatus::*;
        match (self, other) {
            (DivergenceSuspected, _) | (_, DivergenceSuspected) => DivergenceSuspected,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => HoldsUpToBound,
        }
    }

    /// Process exit code for check commands.
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictStatus::HoldsUpToBound => 0,
            VerdictStatus::DivergenceSuspected => 1,
            VerdictStatus::Inconclusive => 3,
        }
    }
}

/// One point of the growth diagnostic: the condition body evaluated over
/// the first `rows` rows, optionally at a sampled existential/universal
/// scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticPoint {
    pub rows: usize,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
}

/// Indices or sets attaining the reported bound.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_set: Option<Vec<usize>>,
}

/// Column-limit estimates used by the conditions that posit a limit
/// sequence; the estimate is the mean over the recorded tail rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitEstimate {
    pub values: Vec<f64>,
    /// Half-open row range [start, end) averaged for the estimate.
    pub estimation_rows: (usize, usize),
}

/// Full outcome of one condition evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    /// Condition label ("4.18") or a named auxiliary check.
    pub condition: String,
    pub status: VerdictStatus,
    /// The finite sup/sum achieved at the largest truncation.
    pub bound_value: f64,
    #[serde(default)]
    pub witness: Witness,
    /// Existential witness (the L or N that made the trace stable).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_or_n: Option<u64>,
    pub diagnostic: Vec<DiagnosticPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_estimate: Option<LimitEstimate>,
}

/// Evaluation budget for the condition evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalBounds {
    /// Row truncation of the largest diagnostic level.
    pub rows: usize,
    /// Column truncation of the largest diagnostic level.
    pub cols: usize,
    /// Cap for the geometric search over existential scales L / N.
    pub l_max: u64,
    /// Number of leading columns enumerated for subset-quantified
    /// conditions with cross coupling.
    pub f_max: usize,
}

impl Default for EvalBounds {
    fn default() -> Self {
        Self {
            rows: 64,
            cols: 64,
            l_max: 1 << 20,
            f_max: 12,
        }
    }
}

/// Fewest rows the three-level diagnostic accepts.
pub const MIN_ROWS: usize = 8;

/// Ratio below which a three-level trace counts as stable.
pub const STABLE_RATIO: f64 = 1.1;
/// Ratio above which (twice in a row) a trace counts as growing.
pub const GROWTH_RATIO: f64 = 2.0;
/// Factor a limit-type tail must shrink by per level to count as vanishing.
pub const SHRINK_FACTOR: f64 = 0.75;
/// Absolute floor treated as an exact zero in trend classification.
pub const NEGLIGIBLE: f64 = 1e-12;

fn ratio(prev: f64, next: f64) -> f64 {
    if prev.abs() <= f64::MIN_POSITIVE {
        if next.abs() <= f64::MIN_POSITIVE {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        next / prev
    }
}

/// Trend of a sup-type bound across the three levels. Divergence needs
/// sustained geometric growth (ratio above 2 twice); stability needs the
/// final ratio below the stable threshold, so a bound first attained at a
/// deeper truncation that then freezes still counts as stable.
pub(crate) fn classify_sup(v: &[f64; 3]) -> VerdictStatus {
    let r1 = ratio(v[0], v[1]);
    let r2 = ratio(v[1], v[2]);
    if r1 > GROWTH_RATIO && r2 > GROWTH_RATIO {
        VerdictStatus::DivergenceSuspected
    } else if r2 < STABLE_RATIO {
        VerdictStatus::HoldsUpToBound
    } else {
        VerdictStatus::Inconclusive
    }
}

/// Trend of a vanishing-tail value: must shrink level over level (or hit
/// zero outright) to count as holding.
pub(crate) fn classify_shrink(v: &[f64; 3]) -> VerdictStatus {
    if v[2] <= NEGLIGIBLE
        || (v[1] <= SHRINK_FACTOR * v[0] + NEGLIGIBLE && v[2] <= SHRINK_FACTOR * v[1] + NEGLIGIBLE)
    {
        VerdictStatus::HoldsUpToBound
    } else if ratio(v[0], v[1]) > GROWTH_RATIO && ratio(v[1], v[2]) > GROWTH_RATIO {
        VerdictStatus::DivergenceSuspected
    } else {
        VerdictStatus::Inconclusive
    }
}

/// Trend of a partial-sum value: the level-over-level increments must
/// shrink (a Cauchy surrogate) to count as holding.
pub(crate) fn classify_cauchy(v: &[f64; 3]) -> VerdictStatus {
    let d1 = (v[1] - v[0]).abs();
    let d2 = (v[2] - v[1]).abs();
    if d2 <= SHRINK_FACTOR * d1 + NEGLIGIBLE {
        VerdictStatus::HoldsUpToBound
    } else if ratio(v[0], v[1]) > GROWTH_RATIO && ratio(v[1], v[2]) > GROWTH_RATIO {
        VerdictStatus::DivergenceSuspected
    } else {
        VerdictStatus::Inconclusive
    }
}
