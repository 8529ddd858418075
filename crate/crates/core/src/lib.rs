//! Numerics for integral means of Bergman projections on the unit disc:
//! a real-argument gamma/hypergeometric engine with its classical identities,
//! circle and disc function types with spectral derivatives and weighted
//! radial quadrature, the Bergman projection computed two independent ways,
//! the sharp constants of the kernel-mean and weighted-norm bounds, a
//! verification harness that checks every inequality instance against
//! explicit tolerances, and the bounded boundary-vanishing function whose
//! projection has non-square-summable Taylor coefficients.

pub mod bounds;
pub mod counterexample;
pub mod disc;
pub mod error;
pub mod projection;
pub mod quad;
pub mod special;
pub mod suites;

pub use error::{Error, Result};
