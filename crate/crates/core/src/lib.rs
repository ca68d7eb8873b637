//! Transfer of optical vortices between light fields in a coherently
//! prepared multi-level atomic medium.
//!
//! The medium is prepared in a superposition `Σ c_m |g_m⟩` of `n` ground
//! states, each coupled to one excited state by a weak field `Ω_m`. In the
//! first-order regime the fields obey a linear system with a rank-one
//! coupling matrix, solved here in closed form ([`analytic`]) and by a
//! brute-force RK4 oracle ([`numeric`]). Transverse structure comes from
//! Laguerre–Gaussian beams ([`beam`]); [`vortex`] measures the resulting
//! phase singularities and petal patterns, and [`scenario`] drives batch runs.

pub mod analytic;
pub mod beam;
pub mod error;
pub mod numeric;
pub mod scenario;
pub mod scheme;
pub mod vortex;

pub use analytic::{
    asymptotic_fields, bright_component, dark_basis, propagate, propagate_grid, sensitivity, steady_coherences,
    zscan, CoherenceVector, DarkStateBasis, FieldVector, Propagator, Sensitivity, ZScanRow,
};
pub use beam::{
    diffraction_criterion, lg_amplitude, sample_grid, superpose, BeamSuperposition, BeamTerm, DiffractionCheck,
    FieldGrid, LgBeam, TransverseGrid,
};
pub use error::{Error, Result};
pub use numeric::{convergence_report, integrate, ConvergenceReport, IntegratorSettings};
pub use scenario::{reproduce, run, Scenario, ScenarioKind};
pub use scheme::{
    compute_beta, compute_x, validate_first_order, AbsorptionScale, FirstOrderDiagnostic, PropagationCoefficients,
    SchemeConfig,
};
pub use vortex::{analyze, count_petals, detect_vortices, loop_winding, radial_profile, Vortex, VortexReport};

pub use num_complex::Complex64;
