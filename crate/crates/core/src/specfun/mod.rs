//! Special functions used by the closed-form laws.

pub(crate) mod bessel;
mod beta;
mod gamma;
mod mittag_leffler;

pub use bessel::{bessel_i, bessel_j, bessel_lambda, struve_l0, BesselOrder};
pub use beta::reg_inc_beta;
pub use gamma::ln_gamma;
pub(crate) use gamma::lgamma;
pub use mittag_leffler::{ln_mittag_leffler, mittag_leffler, MlfParams};
