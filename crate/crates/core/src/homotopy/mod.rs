//! Generating maps of homotopy coexact BV algebras, their symmetries, the
//! obstruction maps, and classification.

mod checks;
mod genset;
pub(crate) mod key;
mod obstruction;

pub use checks::{
    ainfty_pointwise, ainfty_pointwise_entry, ainfty_residual, check_cinfty, check_relations_n,
    classify, extend_from_cinfty, shuffle_sum, symmetrize, symmetry_violations,
    validate_symmetries, Classification, ObstructionStatus, Violation,
};
pub use genset::{block_layout, GeneratingSet};
pub use key::{GeneratingKey, ObstructionKey};
pub use obstruction::{
    expand_obstruction, expand_relation_n, obstruction, obstruction_with, Evaluator,
};

use crate::shuffle::ExtensionExponent;

/// Sign attached to reordering equal-size blocks of a generating map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BlockSign {
    /// `m_{p_σ} = m_p ∘ σ̄` with no further sign.
    Plain,
    /// Extra Koszul sign treating block `i` as having degree `pᵢ − 1`.
    #[default]
    Suspended,
}

/// Sign of the split terms subtracted from the composite sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SplitSign {
    /// `(−1)^{Pᵢ + j − i}`.
    #[default]
    WithSplitPoint,
    /// `(−1)^{Pᵢ − i}`.
    WithoutSplitPoint,
}

/// Extra sign on the terms of the obstruction relation with a generator outside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RelationTwist {
    /// `(−1)^{Σ_J (p_j − 1) + r − 1}`.
    #[default]
    BlockDegrees,
    /// `(−1)^{Σ_J p_j + r − 1}`.
    BlockSizes,
}

/// The sign conventions used by the obstruction formula and its relations. The
/// default makes the obstructions symmetric and the relations hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Conventions {
    pub exponent: ExtensionExponent,
    pub block_sign: BlockSign,
    pub split_sign: SplitSign,
    pub twist: RelationTwist,
}
