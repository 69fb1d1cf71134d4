//! Independent numerical oracles: a position-space split-step propagator for
//! the Hamiltonian scheme and a method-of-lines integrator for every
//! coefficient equation.

mod mol;
mod splitstep;

pub use mol::{mol_evolve, mol_evolve_pde, MolEquation, MolOptions};
pub use splitstep::{
    splitstep_evolve, PositionGrid, PositionMoments, PositionState, SplitStepOptions,
};
