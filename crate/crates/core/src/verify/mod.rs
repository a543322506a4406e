//! Statistical and numerical checks that put the closed forms and the
//! simulations side by side.

mod chi2;
mod grid;
mod integrals;
mod ks;
mod pde_check;
mod report;
pub mod suite;

pub use chi2::{chi_square_gof, ChiSquareResult, MIN_EXPECTED};
pub use grid::{Axis, GridSpec};
pub use integrals::{
    ball_cf_quadrature, ball_quadrature, empirical_cf, empirical_cf_tolerance, unit_sphere_area,
    TabulatedCdf,
};
pub use ks::{kolmogorov_quantile, kolmogorov_survival, ks_one_sample, ks_two_sample, KsResult};
pub use pde_check::{pde_check, LevelResidual, PdeReport, MIN_ORDER};
pub use report::{CheckRecord, Inputs, VerificationReport};
pub use suite::{run_criterion, run_suite, SuiteConfig, SuiteScale, CRITERIA};
