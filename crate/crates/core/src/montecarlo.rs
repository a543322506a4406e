//! Sharded Monte Carlo driver.
//!
//! Work is split into `shards` contiguous blocks; block `i` draws from
//! `RngStream::new(seed, i)`. Results are concatenated in shard order, so
//! output is reproducible for a fixed `(seed, shards)` pair regardless of
//! thread scheduling.

use rayon::prelude::*;

use crate::error::{param, Result};
use crate::flight::{EndpointSampler, FlightSpec};
use crate::sampling::RngStream;

/// Sizes of the shards, differing by at most one.
pub fn shard_sizes(samples: usize, shards: usize) -> Vec<usize> {
    let shards = shards.max(1);
    let base = samples / shards;
    let extra = samples % shards;
    (0..shards).map(|i| base + usize::from(i < extra)).collect()
}

/// Runs `work(rng, count)` on every shard in parallel and concatenates.
pub fn run_sharded<T, F>(samples: usize, seed: u64, shards: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut RngStream, usize) -> Vec<T> + Sync,
{
    let sizes = shard_sizes(samples, shards);
    let parts: Vec<Vec<T>> = sizes
        .par_iter()
        .enumerate()
        .map(|(i, &count)| {
            let mut rng = RngStream::new(seed, i as u64);
            work(&mut rng, count)
        })
        .collect();
    parts.into_iter().flatten().collect()
}

/// Simulated endpoints stored row-major, with the deviation count of each.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointBatch {
    pub dim: usize,
    pub coords: Vec<f64>,
    pub deviations: Vec<usize>,
}

impl EndpointBatch {
    pub fn len(&self) -> usize {
        self.deviations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn radii(&self) -> Vec<f64> {
        self.points().map(crate::flight::norm).collect()
    }

    /// Coordinate `axis` of every endpoint.
    pub fn coordinate(&self, axis: usize) -> Vec<f64> {
        self.points().map(|p| p[axis]).collect()
    }
}

/// Simulates `samples` endpoints of `spec`.
pub fn simulate_endpoints(
    spec: &FlightSpec,
    samples: usize,
    seed: u64,
    shards: usize,
) -> Result<EndpointBatch> {
    if shards == 0 {
        return param("shards must be at least 1");
    }
    let template = EndpointSampler::new(spec)?;
    let d = spec.d;
    let rows = run_sharded(samples, seed, shards, |rng, count| {
        let mut sampler = template.clone();
        let mut out = vec![0.0; d];
        (0..count)
            .map(|_| {
                let n = sampler.sample_into(rng, &mut out);
                (out.clone(), n)
            })
            .collect()
    });
    let mut coords = Vec::with_capacity(samples * d);
    let mut deviations = Vec::with_capacity(samples);
    for (p, n) in rows {
        coords.extend_from_slice(&p);
        deviations.push(n);
    }
    Ok(EndpointBatch { dim: d, coords, deviations })
}
