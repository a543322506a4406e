//! Trajectories and endpoints of random flights.
//!
//! A flight moves at constant speed `c` for a horizon `t`, with direction
//! redrawn uniformly on the sphere at each deviation. Step laws A and B
//! split `t` into Dirichlet intertimes; the even-event model in `R^3`
//! changes direction only at the even-indexed arrivals of a Poisson process.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::sampling::{
    fill_direction, sample_even_poisson_switches, CountingProcess, DirichletSampler, Orientation,
    PmfTable, PoissonCondition, StepLaw,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlightModel {
    StepLawA,
    StepLawB,
    EvenPoisson,
}

impl FlightModel {
    pub fn step_law(self) -> Option<StepLaw> {
        match self {
            FlightModel::StepLawA => Some(StepLaw::A),
            FlightModel::StepLawB => Some(StepLaw::B),
            FlightModel::EvenPoisson => None,
        }
    }

    /// Counter used when the number of deviations is randomized.
    pub fn process(self) -> Option<CountingProcess> {
        match self {
            FlightModel::StepLawA => Some(CountingProcess::N),
            FlightModel::StepLawB => Some(CountingProcess::M),
            FlightModel::EvenPoisson => None,
        }
    }
}

/// Number of deviations: fixed, or drawn from a counter with rate `lambda`.
///
/// For [`FlightModel::EvenPoisson`], `Fixed(k)` conditions on `N(t) = k`
/// Poisson events and `Randomized(lambda)` draws an odd `N(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Deviations {
    Fixed(usize),
    Randomized(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightSpec {
    pub model: FlightModel,
    pub d: usize,
    pub c: f64,
    pub t: f64,
    pub deviations: Deviations,
}

impl FlightSpec {
    pub fn new(model: FlightModel, d: usize, c: f64, t: f64, deviations: Deviations) -> Result<Self> {
        let spec = Self { model, d, c, t, deviations };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.model.step_law() {
            Some(law) => law.check_dim(self.d)?,
            None if self.d != 3 => {
                return param(format!("the even-Poisson model lives in d = 3, got {}", self.d))
            }
            None => {}
        }
        if !(self.c > 0.0) || !self.c.is_finite() {
            return param(format!("speed must be positive, got {}", self.c));
        }
        if !(self.t > 0.0) || !self.t.is_finite() {
            return param(format!("horizon must be positive, got {}", self.t));
        }
        if let Deviations::Randomized(lambda) = self.deviations {
            if !(lambda > 0.0) || !lambda.is_finite() {
                return param(format!("lambda must be positive, got {lambda}"));
            }
        }
        Ok(())
    }

    /// Radius `ct` of the reachable ball.
    pub fn reach(&self) -> f64 {
        self.c * self.t
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub duration: f64,
    pub direction: Orientation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    spec: FlightSpec,
    legs: Vec<Leg>,
    positions: Vec<Vec<f64>>,
    poisson_events: Option<usize>,
}

impl Trajectory {
    fn from_legs(spec: FlightSpec, legs: Vec<Leg>, poisson_events: Option<usize>) -> Self {
        let mut positions = Vec::with_capacity(legs.len() + 1);
        let mut current = vec![0.0; spec.d];
        positions.push(current.clone());
        for leg in &legs {
            for (x, u) in current.iter_mut().zip(leg.direction.direction()) {
                *x += spec.c * leg.duration * u;
            }
            positions.push(current.clone());
        }
        Self { spec, legs, positions, poisson_events }
    }

    pub fn spec(&self) -> &FlightSpec {
        &self.spec
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    /// Vertices of the path, starting at the origin and ending at the endpoint.
    pub fn positions(&self) -> &[Vec<f64>] {
        &self.positions
    }

    pub fn endpoint(&self) -> &[f64] {
        self.positions.last().expect("a trajectory has at least one leg")
    }

    /// Number of direction changes.
    pub fn deviations(&self) -> usize {
        self.legs.len() - 1
    }

    /// Poisson event count `N(t)` for the even-event model.
    pub fn poisson_events(&self) -> Option<usize> {
        self.poisson_events
    }

    pub fn radius(&self) -> f64 {
        norm(self.endpoint())
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn legs_from_durations<R: Rng + ?Sized>(d: usize, durations: Vec<f64>, rng: &mut R) -> Vec<Leg> {
    durations
        .into_iter()
        .map(|duration| {
            let mut u = vec![0.0; d];
            fill_direction(rng, &mut u);
            Leg { duration, direction: Orientation::from_vector(u).expect("unit vector") }
        })
        .collect()
}

fn durations_for<R: Rng + ?Sized>(spec: &FlightSpec, n: usize, rng: &mut R) -> Result<Vec<f64>> {
    let law = spec.model.step_law().expect("step-law model");
    let sampler = DirichletSampler::new(law, spec.d)?;
    let mut durations = vec![0.0; n + 1];
    if n == 0 {
        durations[0] = spec.t;
    } else {
        sampler.fill(rng, spec.t, &mut durations);
    }
    Ok(durations)
}

/// Simulates a flight with a fixed number of deviations.
pub fn simulate<R: Rng + ?Sized>(spec: &FlightSpec, rng: &mut R) -> Result<Trajectory> {
    spec.validate()?;
    let Deviations::Fixed(n) = spec.deviations else {
        return param("simulate needs Fixed deviations; use simulate_randomized");
    };
    if spec.model == FlightModel::EvenPoisson {
        return simulate_u3(1.0, spec.c, spec.t, PoissonCondition::Events(n), rng);
    }
    let durations = durations_for(spec, n, rng)?;
    Ok(Trajectory::from_legs(*spec, legs_from_durations(spec.d, durations, rng), None))
}

/// Simulates a flight whose deviation count is drawn from the paired counter.
///
/// Returns the number of direction changes along with the trajectory.
pub fn simulate_randomized<R: Rng + ?Sized>(
    spec: &FlightSpec,
    rng: &mut R,
) -> Result<(usize, Trajectory)> {
    spec.validate()?;
    let Deviations::Randomized(lambda) = spec.deviations else {
        return param("simulate_randomized needs Randomized deviations");
    };
    let traj = match spec.model.process() {
        Some(process) => {
            let n = PmfTable::build(process, spec.d, lambda, spec.t)?.sample(rng);
            let durations = durations_for(spec, n, rng)?;
            Trajectory::from_legs(*spec, legs_from_durations(spec.d, durations, rng), None)
        }
        None => {
            let switches =
                sample_even_poisson_switches(lambda, spec.t, PoissonCondition::RandomOdd, rng)?;
            let legs = legs_from_durations(3, switches.durations(spec.t), rng);
            Trajectory::from_legs(*spec, legs, Some(switches.events))
        }
    };
    Ok((traj.deviations(), traj))
}

/// Simulates the even-event flight in `R^3` with Poisson rate `lambda`,
/// speed `c` and horizon `t`. The rate only enters through
/// [`PoissonCondition::RandomOdd`]; given `N(t) = k` the arrivals are uniform.
pub fn simulate_u3<R: Rng + ?Sized>(
    lambda: f64,
    c: f64,
    t: f64,
    condition: PoissonCondition,
    rng: &mut R,
) -> Result<Trajectory> {
    let deviations = match condition {
        PoissonCondition::Events(k) => Deviations::Fixed(k),
        PoissonCondition::RandomOdd => Deviations::Randomized(lambda),
    };
    let spec = FlightSpec::new(FlightModel::EvenPoisson, 3, c, t, deviations)?;
    let switches = sample_even_poisson_switches(lambda, t, condition, rng)?;
    let legs = legs_from_durations(3, switches.durations(t), rng);
    Ok(Trajectory::from_legs(spec, legs, Some(switches.events)))
}

/// First `m` coordinates of the endpoint.
pub fn project(traj: &Trajectory, m: usize) -> Result<Vec<f64>> {
    let d = traj.spec.d;
    if m < 1 || m > d {
        return param(format!("projection dimension must be in 1..={d}, got {m}"));
    }
    Ok(traj.endpoint()[..m].to_vec())
}

/// Endpoint-only simulation without storing legs.
#[derive(Debug, Clone)]
pub struct EndpointSampler {
    spec: FlightSpec,
    dirichlet: Option<DirichletSampler>,
    table: Option<PmfTable>,
    durations: Vec<f64>,
    direction: Vec<f64>,
}

impl EndpointSampler {
    pub fn new(spec: &FlightSpec) -> Result<Self> {
        spec.validate()?;
        let dirichlet = match spec.model.step_law() {
            Some(law) => Some(DirichletSampler::new(law, spec.d)?),
            None => None,
        };
        let table = match (spec.model.process(), spec.deviations) {
            (Some(process), Deviations::Randomized(lambda)) => {
                Some(PmfTable::build(process, spec.d, lambda, spec.t)?)
            }
            _ => None,
        };
        Ok(Self {
            spec: *spec,
            dirichlet,
            table,
            durations: Vec::new(),
            direction: vec![0.0; spec.d],
        })
    }

    pub fn spec(&self) -> &FlightSpec {
        &self.spec
    }

    /// Writes an endpoint into `out` (length `d`) and returns the number of
    /// direction changes.
    pub fn sample_into<R: Rng + ?Sized>(&mut self, rng: &mut R, out: &mut [f64]) -> usize {
        let spec = self.spec;
        match &self.dirichlet {
            Some(dirichlet) => {
                let n = match (&self.table, spec.deviations) {
                    (Some(table), _) => table.sample(rng),
                    (None, Deviations::Fixed(n)) => n,
                    (None, Deviations::Randomized(_)) => unreachable!("table built in new"),
                };
                self.durations.resize(n + 1, 0.0);
                if n == 0 {
                    self.durations[0] = spec.t;
                } else {
                    dirichlet.fill(rng, spec.t, &mut self.durations);
                }
            }
            None => {
                let condition = match spec.deviations {
                    Deviations::Fixed(k) => PoissonCondition::Events(k),
                    Deviations::Randomized(_) => PoissonCondition::RandomOdd,
                };
                let lambda = match spec.deviations {
                    Deviations::Randomized(lambda) => lambda,
                    Deviations::Fixed(_) => 1.0,
                };
                let switches = sample_even_poisson_switches(lambda, spec.t, condition, rng)
                    .expect("parameters validated in new");
                self.durations = switches.durations(spec.t);
            }
        }
        out.iter_mut().for_each(|x| *x = 0.0);
        for &tau in &self.durations {
            fill_direction(rng, &mut self.direction);
            for (x, u) in out.iter_mut().zip(&self.direction) {
                *x += spec.c * tau * u;
            }
        }
        self.durations.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::RngStream;

    fn spec(model: FlightModel, d: usize, n: usize) -> FlightSpec {
        FlightSpec::new(model, d, 1.5, 2.0, Deviations::Fixed(n)).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(FlightSpec::new(FlightModel::StepLawA, 1, 1.0, 1.0, Deviations::Fixed(1)).is_err());
        assert!(FlightSpec::new(FlightModel::StepLawB, 2, 1.0, 1.0, Deviations::Fixed(1)).is_err());
        assert!(FlightSpec::new(FlightModel::EvenPoisson, 4, 1.0, 1.0, Deviations::Fixed(1)).is_err());
        assert!(FlightSpec::new(FlightModel::StepLawA, 3, 0.0, 1.0, Deviations::Fixed(1)).is_err());
        assert!(FlightSpec::new(FlightModel::StepLawA, 3, 1.0, 1.0, Deviations::Randomized(0.0)).is_err());
    }

    #[test]
    fn single_leg_reaches_sphere() {
        let mut rng = RngStream::new(1, 0);
        for d in 2..6 {
            let traj = simulate(&spec(FlightModel::StepLawA, d, 0), &mut rng).unwrap();
            assert!((traj.radius() - 3.0).abs() < 1e-12);
            assert_eq!(traj.deviations(), 0);
        }
    }

    #[test]
    fn interior_when_deviating() {
        let mut rng = RngStream::new(2, 0);
        for (model, d) in [(FlightModel::StepLawA, 2), (FlightModel::StepLawB, 3), (FlightModel::StepLawA, 5)] {
            for n in 1..4 {
                for _ in 0..200 {
                    let traj = simulate(&spec(model, d, n), &mut rng).unwrap();
                    assert!(traj.radius() < 3.0);
                    assert_eq!(traj.legs().len(), n + 1);
                    assert_eq!(traj.positions().len(), n + 2);
                    let total: f64 = traj.legs().iter().map(|l| l.duration).sum();
                    assert!((total - 2.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn positions_are_partial_sums() {
        let mut rng = RngStream::new(3, 0);
        let traj = simulate(&spec(FlightModel::StepLawA, 3, 4), &mut rng).unwrap();
        for (k, leg) in traj.legs().iter().enumerate() {
            let a = &traj.positions()[k];
            let b = &traj.positions()[k + 1];
            let step: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
            assert!((norm(&step) - 1.5 * leg.duration).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_range() {
        let mut rng = RngStream::new(4, 0);
        let traj = simulate(&spec(FlightModel::StepLawA, 3, 2), &mut rng).unwrap();
        assert_eq!(project(&traj, 3).unwrap(), traj.endpoint());
        assert_eq!(project(&traj, 1).unwrap().len(), 1);
        assert!(project(&traj, 0).is_err());
        assert!(project(&traj, 4).is_err());
    }

    #[test]
    fn u3_leg_counts() {
        let mut rng = RngStream::new(5, 0);
        let one = simulate_u3(1.0, 1.0, 1.0, PoissonCondition::Events(1), &mut rng).unwrap();
        assert_eq!(one.legs().len(), 1);
        assert!((one.radius() - 1.0).abs() < 1e-12);
        for k in 0..8 {
            let traj = simulate_u3(1.0, 1.0, 1.0, PoissonCondition::Events(k), &mut rng).unwrap();
            assert_eq!(traj.legs().len(), k / 2 + 1);
            assert_eq!(traj.poisson_events(), Some(k));
        }
        let (n, traj) = simulate_randomized(
            &FlightSpec::new(FlightModel::EvenPoisson, 3, 1.0, 1.0, Deviations::Randomized(2.0)).unwrap(),
            &mut rng,
        )
        .unwrap();
        assert_eq!(traj.poisson_events().unwrap() % 2, 1);
        assert_eq!(n, traj.poisson_events().unwrap() / 2);
    }

    #[test]
    fn randomized_tiny_rate_is_single_leg() {
        let mut rng = RngStream::new(6, 0);
        let spec = FlightSpec::new(FlightModel::StepLawA, 3, 1.0, 1.0, Deviations::Randomized(1e-8)).unwrap();
        for _ in 0..1000 {
            let (n, traj) = simulate_randomized(&spec, &mut rng).unwrap();
            assert_eq!(n, 0);
            assert!((traj.radius() - 1.0).abs() < 1e-12);
        }
        assert!(simulate(&spec, &mut rng).is_err());
    }

    #[test]
    fn endpoint_sampler_matches_full_simulation() {
        // same stream, same consumption order
        for s in [
            spec(FlightModel::StepLawA, 3, 2),
            spec(FlightModel::StepLawB, 4, 0),
            spec(FlightModel::EvenPoisson, 3, 5),
        ] {
            let mut a = RngStream::new(8, 1);
            let mut b = RngStream::new(8, 1);
            let mut sampler = EndpointSampler::new(&s).unwrap();
            let mut out = vec![0.0; s.d];
            for _ in 0..20 {
                let n = sampler.sample_into(&mut a, &mut out);
                let traj = simulate(&s, &mut b).unwrap();
                assert_eq!(n, traj.deviations());
                for (x, y) in out.iter().zip(traj.endpoint()) {
                    assert!((x - y).abs() < 1e-12);
                }
            }
        }
    }
}
