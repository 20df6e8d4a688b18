//! Numerical toolkit for exponential polynomials and the translate-Hankel
//! functional equation.
//!
//! The library revolves around one class of functions: finite sums of
//! exponential monomials `c · x^α · e^{⟨λ,x⟩}` on `R^d`. These are exactly
//! the functions whose translates span a finite dimensional space, and that
//! finiteness shows up as vanishing Hankel determinants of uniform samples.
//! The modules here make the surrounding theory executable:
//!
//! - [`poly`] — canonical representation, evaluation, and translate-span
//!   dimension of exponential polynomials.
//! - [`hankel`] — translate-Hankel ("Popoviciu") matrices of sampled
//!   functions, normalized determinant residuals, and numerical ranks.
//! - [`prony`] — recurrence coefficients along a sampling direction,
//!   characteristic roots, and reconstruction of the underlying
//!   exponential polynomial (a classic Prony pipeline).
//! - [`kronecker`] — finite generator sets spanning dense additive
//!   subgroups of `R^d`, and integer-combination approximation of targets.
//! - [`montel`] — step-operator matrices of translates acting on a finite
//!   dimensional function space, the joint span `W`, and membership
//!   residuals of arbitrary lattice translates.
//! - [`trig`] — reconstruction of a joint trigonometric polynomial from an
//!   oracle that is a trigonometric polynomial separately in each variable.
//!
//! All operations are pure functions over immutable inputs and are safe for
//! unrestricted concurrent use.

pub mod hankel;
pub mod kronecker;
mod linalg;
pub mod montel;
pub mod poly;
pub mod prony;
pub mod trig;

pub use hankel::{PopoviciuMatrix, SampleGrid1D};
pub use kronecker::GeneratorSet;
pub use montel::{LatticeSampler, StepOperator, WBasis};
pub use poly::{ExpPolynomial, ExpTerm, Point};
pub use prony::{RadoCoefficients, RootCluster};
pub use trig::TrigPolynomial;

/// Default relative singular-value threshold for every numerical rank
/// decision in the crate. Exact dimension statements about function spaces
/// become rank decisions at this tolerance; operations that rank-truncate
/// accept it as a parameter.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
