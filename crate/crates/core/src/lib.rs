//! Matched bases of subspaces in finite field extensions, and matchings in abelian groups.

pub mod additive;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fp;
pub mod group;
pub mod instance;
pub mod linalg;
pub mod matching;
pub mod oracle;
pub mod strong;
pub mod subspace;
pub mod sweep;
pub mod transversal;

pub use error::{Error, Result};
pub use field::{ExtensionField, FieldDescriptor, FieldElement};
pub use matching::{automatch, dim_criterion, is_matched, match_basis, MatchOutcome};
pub use subspace::{back_division, Basis, Subspace};
pub use sweep::{run_sweep, SweepParams, SweepReport, SweepTask};
