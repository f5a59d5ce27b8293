//! Exact symbolic algebra for exponential polynomials.
//!
//! Provides exact arithmetic in Q(i)[sqrt(r)], canonical exponential
//! polynomials with differentiation and normalization, leading-order
//! Nevanlinna growth asymptotics from convex hulls of frequencies, duality
//! predicates, exact kernel computation, linear ODE residuals and solution
//! search, generators for the named equation families, a text format, and a
//! machine-checkable corpus of worked identities.

pub mod error;
pub mod scalar;
pub mod poly;
#[path = "expoly.rs"]
pub mod symcore;
pub mod exactla;
pub mod growth;
pub mod textio;
pub mod duality;
pub mod ode;
pub mod construct;
pub mod corpus;

pub use error::{Error, Result, SourceSpan};
pub use poly::Poly;
pub use scalar::{QScalar, Rational, ScalarContext};
pub use symcore::{ExpPoly, NormalizedView};
