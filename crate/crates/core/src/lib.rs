//! Cointegrated VAR estimation and control analysis for nonstationary systems.
//!
//! The crate is `no_std` (with `alloc`) and contains only the numerical
//! machinery: data transforms, reduced-rank estimation of vector
//! error-correction models, the long-run impact matrix, the controllability
//! condition and linear stabilizing rule, counterfactual/forecast simulation
//! with residual bootstrap bands, and parameter-stability diagnostics.
//! File formats, parallel execution and the command line live in the `cvar`
//! companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod control;
pub mod deterministic;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod estimator;
pub mod frame;
pub mod linalg;
pub mod longrun;
pub mod replicate;
pub mod simulate;
pub mod special;
#[cfg(test)]
mod testutil;

pub use nalgebra::{DMatrix, DVector};

pub use control::{
    apply_control, augment_system, build_policy, controllability_test, policy_assignment,
    AugmentedSystem, ControlPolicy, ControllabilityReport, PhaseIn, RuleParameterization,
};
pub use deterministic::{build_deterministics, DetCase, DeterministicSpec};
pub use diagnostics::{
    nyblom_reference, nyblom_sequence, residual_diagnostics, residual_report, NyblomResult,
    ResidualReport,
};
pub use dynamics::{Dynamics, GaussianShocks, ResidualPool};
pub use error::{Error, Result};
pub use estimator::{
    concentrate, concentrate_data, estimate_restricted, estimate_restricted_data, fit, fit_data,
    rrr_solve, trace_statistics, trace_test, trace_test_data, Concentrated, CvarEstimate,
    CvarSpec, Normalization, Rank, Refit, RestrictedFit, RestrictionSet, RrrSolution,
    SampleData, TraceMethod, TraceTest,
};
pub use frame::{Role, SpliceReport, TimeFrame};
pub use longrun::{
    c_tstats, compute_c, derived_indicators, longrun_bootstrap, longrun_expectation, longrun_from_parts,
    DerivedIndicators, IndicatorMap, LongRunBootstrap, LongRunRep,
};
pub use replicate::{child_rng, Runner, SeedMode, Sequential};
pub use simulate::{
    bootstrap_bands, cost_report, forecast, replay_counterfactual, BandConfig, BootstrapBands,
    CostEntry, CostReport, Forecast, SimulationPath,
};
