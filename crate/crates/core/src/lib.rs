//! Isotropic random flights in `R^d` whose displacement lengths follow
//! rescaled Dirichlet laws.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Gamma, Bessel, Struve, Mittag-Leffler and incomplete Beta functions.
//! * [`sampling`]: seeded random streams, uniform orientations, Dirichlet intertimes
//!   and fractional Poisson counts.
//! * [`flight`]: trajectories and endpoints of the step-law A/B flights and of the
//!   even-Poisson flight in three dimensions.
//! * [`analytic`]: closed-form densities, characteristic functions, moments and
//!   the telegraph-type PDE residual.
//! * [`verify`]: goodness-of-fit tests, quadrature-based checks and the
//!   verification suite shared by the CLI and the acceptance tests.

pub mod analytic;
pub mod error;
pub mod flight;
pub mod montecarlo;
pub mod quad;
pub mod sampling;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
