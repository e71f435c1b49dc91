//! Dual-characterization machinery: the test matrices built from a
//! multiplier sequence or from the rows of another matrix, the bank of 26
//! asymptotic conditions with truncation-honest verdicts, and the bundles
//! that compose them into dual-membership and matrix-mapping checks.

mod conditions;
mod matrices;
mod membership;
mod verdict;

pub use conditions::{
    evaluate_condition, Aggregation, BodyKind, ConditionId, ConditionShape, ConditionSpec, LFac,
    LimitKind, Quantifier, F_ENUM_CAP,
};
pub use matrices::{
    abel_identity_check, alpha_dual_matrix_entry, beta_gamma_matrix, beta_gamma_matrix_seq,
    beta_gamma_matrix_entry, e_tilde_entry, AlphaDualMatrix, ExplicitMatrix, GeneratorSpec,
    LoadedMatrix, MatrixFile, MatrixSource, RowwiseDualMatrix, SeriesDualMatrix,
};
#[cfg(feature = "parallel")]
pub use matrices::beta_gamma_matrix_par;
pub use membership::{
    dual_membership, matrix_map_check, BundleItem, BundleVerdict, DualKind, MapCheckReport,
    MapTarget, RowMembershipSummary, SpaceKind,
};
pub use verdict::{
    DiagnosticPoint, EvalBounds, LimitEstimate, Verdict, VerdictStatus, Witness, GROWTH_RATIO,
    MIN_ROWS, NEGLIGIBLE, SHRINK_FACTOR, STABLE_RATIO,
};
