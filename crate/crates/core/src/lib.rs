//! A theorem prover for plane Euclidean geometry.
//!
//! Conjectures are equalities or inequalities between arithmetic expressions
//! in geometric quantities (signed areas, Pythagorean differences, ratios of
//! signed distances) of points defined by a construction. Constructed points
//! are eliminated in reverse construction order through elimination lemmas;
//! the reduced statement is decided by exact rational arithmetic, with an
//! optional final rewrite into independent area coordinates.

pub mod algebra;
pub mod area_coords;
pub mod conjecture;
pub mod construction;
pub mod eliminate;
pub mod error;
pub mod oracle;
pub mod prover;

pub use algebra::{Atom, ExprTree, PointRef, Polynomial, RationalExpr, Scalar};
pub use area_coords::Frame;
pub use conjecture::{Clause, Conjecture, ConjectureOrigin, Rel};
pub use construction::{Construction, NdgCondition, NdgReport, Step, StepKind};
pub use error::{Error, Result};
pub use oracle::NumericModel;
pub use prover::{AreaCoordsMode, ProofTrace, ProveOptions, Prover, TraceStep, Verdict};

#[cfg(test)]
mod thread_safety {
    // every value type is immutable after construction and freely shareable
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_and_sync() {
        assert_send_sync::<crate::Atom>();
        assert_send_sync::<crate::Polynomial>();
        assert_send_sync::<crate::RationalExpr>();
        assert_send_sync::<crate::ExprTree>();
        assert_send_sync::<crate::Construction>();
        assert_send_sync::<crate::Conjecture>();
        assert_send_sync::<crate::NumericModel>();
        assert_send_sync::<crate::Verdict>();
        assert_send_sync::<crate::ProofTrace>();
        assert_send_sync::<crate::Prover>();
    }
}
