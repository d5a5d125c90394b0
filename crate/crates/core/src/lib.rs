//! Exact symbolic engine for the λ-shift algebra `aa† − a†a = λa` and its
//! shift/Weyl siblings.
//!
//! The crate normal-orders words in the two generators, extracts the
//! λ-Stirling numbers of the first kind that appear as normal-ordering
//! coefficients, and cross-checks the resulting identities by independent
//! routes: direct polynomial expansion, exponential generating functions,
//! and the shift-operator representation `a† ↦ x`, `a ↦ δ_λ`.
//!
//! All arithmetic is exact over arbitrary-precision rationals; there is no
//! floating point anywhere.

pub mod exactnum;
pub mod lamstirling;
pub mod ncalgebra;
pub mod oprep;
pub mod report;
pub mod series;

pub use exactnum::{binomial, BigRational, MultiPoly, Var};
pub use ncalgebra::{
    normalize, normalize_with, power_normal, push_a_through, shifted_power_normal,
    CommutationRule, Letter, NcExpression, NormalForm, RewriteStrategy, Word,
};
pub use report::{EqualityCheck, VerificationReport};
