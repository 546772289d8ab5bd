//! Closed-form Green functions of the hyperbolic Klein-Gordon thermal
//! equation
//!
//! ```text
//! (1/v²) T_tt + (m/ħ) T_t + (2V₀m/ħ²) T = ΔT
//! ```
//!
//! in one and three dimensions, Green-function evolution of initial data,
//! and two independent numerical oracles (spectral quadrature and a leapfrog
//! finite-difference solver) that cross-check them.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line front end live in the `kgt` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod evolution;
pub mod fdtd;
pub mod field;
pub mod green;
pub mod params;
pub mod profile;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use evolution::{
    evolve_grid, evolve_temperature_grid, solve_u_1d, solve_u_1d_rate, solve_u_3d, EvolveOptions,
    Geometry, SphereQuadrature,
};
pub use fdtd::{init_scheme, run_1d, run_radial_3d, Boundary, Equation, GridSpec1D, Scheme};
pub use field::{compare, temperature_from_u, FieldGrid, FieldKind, GridAxis, Norms};
pub use green::{
    classify, fourier_mode_solution, green_1d, green_3d, green_3d_from_1d, spectral_green_1d,
    spectral_green_3d_radial, ConeRegion, GreenEval3D, KgParams, PanelRule, QuadratureSpec, Region,
    SpectralEstimate,
};
pub use params::{DerivedParams, PhysicalParams};
pub use profile::{InitialData, Profile, Support, Tabulated};
