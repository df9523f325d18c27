//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, ThresholdedInstance};
use crate::interval::{normalize, realize_graph, Interval, IntervalRepresentation};

/// Shape of random interval instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalGenConfig {
    pub n: usize,
    pub t: usize,
    pub seed: u64,
    /// Left endpoints are drawn from `0..span`; `None` means `2n`.
    pub span: Option<i64>,
    /// Interval lengths are drawn from `0..=max_len`.
    pub max_len: i64,
}

impl IntervalGenConfig {
    pub fn new(n: usize, t: usize, seed: u64) -> Self {
        IntervalGenConfig {
            n,
            t,
            seed,
            span: None,
            max_len: 4,
        }
    }
}

/// Random interval instance with thresholds uniform in `0..=min(t, deg + 1)`.
/// Endpoints come out normalized to `1..=2n`; vertices are named `v1..vn`.
pub fn generate_interval_instance(
    n: usize,
    t: usize,
    seed: u64,
) -> Result<(ThresholdedInstance, IntervalRepresentation)> {
    generate_interval_instance_with(&IntervalGenConfig::new(n, t, seed))
}

pub fn generate_interval_instance_with(
    config: &IntervalGenConfig,
) -> Result<(ThresholdedInstance, IntervalRepresentation)> {
    if config.n == 0 {
        return Err(Error::Input("an instance needs at least one vertex".into()));
    }
    if config.max_len < 0 || config.span.is_some_and(|s| s < 1) {
        return Err(Error::Input(
            "span must be positive and max_len non-negative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let span = config.span.unwrap_or(2 * config.n as i64);
    let raw: Vec<Interval> = (0..config.n)
        .map(|_| {
            let left = rng.gen_range(0..span);
            let len = rng.gen_range(0..=config.max_len);
            Interval {
                left,
                right: left + len,
            }
        })
        .collect();
    let rep = normalize(&IntervalRepresentation::new(raw)?).to_representation();
    let names = (1..=config.n).map(|i| format!("v{i}")).collect();
    let graph = realize_graph(&normalize(&rep), names)?;
    let tau = (0..config.n)
        .map(|v| {
            let top = config.t.min(graph.degree(v) + 1) as i64;
            rng.gen_range(0..=top)
        })
        .collect();
    let instance = ThresholdedInstance::new(graph, tau, Some(config.t))?;
    Ok((instance, rep))
}

/// Random simple 3-regular graph on `n` vertices (pairing model, restarting
/// on loops or repeated edges). Vertices are named `v1..vn`.
pub fn generate_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Input(format!(
            "cubic graphs need an even order of at least 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: loop {
        points.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(3 * n / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || edges.contains(&(u, v)) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        edges.sort_unstable();
        return Graph::with_prefix("v", n, edges);
    }
}
