//! Quantum dynamics of a particle under the periodic force `-A cos(ωt)`,
//! quantized two ways: with the Hamiltonian `p²/2m + xA cos ωt`, and with
//! three energy-like constants of motion in velocity quantization.
//!
//! Every closed form is paired with an independent numerical route: the
//! characteristics engine, a method-of-lines integrator and a position-space
//! split-step propagator.

pub mod characteristics;
pub mod classical;
pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod numerics;
pub mod observables;
pub mod reference;
pub mod report;
pub mod scenario;
pub mod schemes;

pub use error::{Error, Result};
pub use report::{build_scheme_report, SchemeReport};
pub use scenario::{parse_config, run_scenario, ScenarioConfig, SchemeKind};
pub use schemes::{FormulaVariant, SchemeId};
pub use model::{build_grid, gaussian_profile, norm, GaussianPacket, InitialProfile, MomentumGrid, PhysicalParams, SpectralState};
