//! Random ingredients of a flight: orientations, Dirichlet intertimes and
//! deviation counts, all drawn from an explicitly seeded [`RngStream`].

mod counting;
mod intertimes;
mod orientation;
mod rng;

pub use counting::{
    fractional_poisson_mean, fractional_poisson_pmf, sample_even_poisson_switches,
    sample_fractional_poisson, CountingProcess, EvenSwitches, PmfTable, PoissonCondition,
    PMF_MAX_TERMS, PMF_TAIL,
};
pub use intertimes::{
    intertimes_density, intertimes_from_arrivals, sample_intertimes, Intertimes, StepLaw,
};
pub(crate) use intertimes::DirichletSampler;
pub use orientation::{orientation_angle_density, sample_orientation, Orientation};
pub(crate) use orientation::fill_direction;
pub use rng::RngStream;
