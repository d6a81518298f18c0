//! Permutation trinomials over finite fields.
//!
//! The crate is organised as
//!
//! * [`galois`]: field contexts and arithmetic for GF(2^n) and GF(p^n),
//!   trace, Frobenius and the affine quadratic solver;
//! * [`families`]: the catalog of trinomial families, exponent instantiation,
//!   applicability predicates and the trace diagnostic used by the odd-degree
//!   `x + x^3 + ...` family;
//! * [`permcheck`]: exhaustive bijectivity checks, compositional inverses and
//!   the solution census for `y^2k + y^k ybar^k + ybar^2k = 0`;
//! * [`search`]: enumeration of unit-coefficient permutation trinomials up to
//!   cyclotomic equivalence;
//! * [`analysis`]: differential uniformity and fixed points.
//!
//! Sweeps run on a rayon pool when the `parallel` feature is enabled (the
//! default) and fall back to a sequential loop otherwise; both paths produce
//! identical results.

pub mod analysis;
pub mod error;
pub mod families;
pub mod galois;
pub mod permcheck;
pub mod search;
pub mod sweep;

pub use error::{Error, Result};
pub use families::{FamilyId, FamilyInstance, TrinomialSpec};
pub use galois::{FieldCtx, FieldElement};
pub use permcheck::VerificationReport;
pub use sweep::SweepConfig;
