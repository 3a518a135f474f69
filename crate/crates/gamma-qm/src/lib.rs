//! Quantum mechanics with a non-additive translation operator.
//!
//! Position displacements compose as x → x + a + γax, which deforms the
//! momentum operator into p̂_γ = −iħ(1+γx) d/dx and turns the kinetic term
//! into a position-dependent-mass problem with m_e = m/(1+γx)². The crate
//! provides the deformed algebra and grid operators, closed-form solutions
//! (free waves, infinite wells in 1D/2D, rectangular barriers), and an
//! independent numerical engine (tridiagonal eigensolver, transfer matrix,
//! Crank–Nicolson propagation) that cross-validates them.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod expectation;
pub mod frame;
pub mod grid;
pub mod numeric;
pub mod operators;
pub mod quadrature;
pub mod wavefunction;

pub use error::{Error, Result};
pub use expectation::{expectations, ExpectationReport};
pub use frame::{compose_displacements, qexp, GammaFrame};
pub use grid::Grid1D;
pub use quadrature::quadrature;
pub use wavefunction::{NormMeasure, Wavefunction1D};
