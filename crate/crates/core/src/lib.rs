//! Exact symbolic toolkit for 3D polynomial dynamical systems.
//!
//! Given a polynomial vector field in three variables, this crate can
//!
//! - find Darboux polynomials (polynomial second integrals `X(g) = lambda g`)
//!   up to a degree bound, by an exact eigenvalue method for constant
//!   cofactors and by a numeric bilinear search whose candidates are
//!   re-certified in exact rational arithmetic;
//! - combine certified Darboux pairs into time-dependent first integrals
//!   `I = exp(-r t) * prod g_a^{n_a}` via the cofactor identity
//!   `sum n_a lambda_a = r`, certified exactly;
//! - certify Hamiltonian, Nambu, Jacobi-last-multiplier and metriplectic
//!   structure claims by exact residual computation, clearing polynomial
//!   denominators where metric entries are fractions;
//! - apply exponential state and clock rescalings symbolically, tracking
//!   `e^t` as a formal clock symbol; and
//! - cross-check every certified integral numerically with a fixed-step RK4
//!   harness and drift reports.
//!
//! All symbolic paths use exact rational arithmetic; floats appear only in
//! the numeric search (whose output is always re-certified exactly) and in
//! the ODE harness.

pub mod bilinear;
pub mod corpus;
pub mod darboux;
pub mod field;
pub mod integrals;
pub mod linalg;
pub mod lm;
pub mod model;
pub mod monomial;
pub mod ode;
pub mod parse;
pub mod poly;
pub mod ratio;
pub mod rational;
pub mod report;
pub mod structure;
pub mod transform;

pub use field::{cross, curl, gradient, PolyVector, VectorField};
pub use monomial::{Monomial, Var};
pub use poly::Polynomial;
pub use ratio::{Ratio, RatioVector};
pub use rational::Rational;
