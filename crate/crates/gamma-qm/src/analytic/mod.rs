//! Closed-form solutions of the deformed wave equation: free phase waves,
//! the 1D/2D infinite well, and the rectangular barrier. These are the
//! ground truth the numerical engine is checked against.

mod barrier;
mod free;
mod well;
mod well2d;

pub use barrier::{BarrierCoefficients, BarrierSpec, TransmissionCurve};
pub use free::FreeWave;
pub use well::{EigenSolution, WellSpec};
pub use well2d::{well2d_density, Density2D};
