//! Independent numerical engine: bound states by tridiagonal eigensolve in
//! the additive coordinate, transfer-matrix scattering, and norm-conserving
//! Crank–Nicolson propagation.

mod bound_states;
mod hamiltonian;
mod potential;
mod propagate;
mod transfer;
mod tridiagonal;

pub use bound_states::{solve_bound_states, solve_bound_states_with, Backend, Refinement};
pub use hamiltonian::{build_hamiltonian_u, build_hamiltonian_x};
pub use potential::{Potential, PotentialSpec};
pub use propagate::{continuity_residual, time_evolve, PropagationResult};
pub use transfer::{
    transfer_matrix_amplitudes, transfer_matrix_transmission, PropagationMatrix,
};
pub use tridiagonal::{solve_complex_tridiagonal, TridiagonalOperator};
