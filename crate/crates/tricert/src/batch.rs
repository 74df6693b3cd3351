//! Many independent graphs at once. With the `parallel` feature the work is
//! spread over the rayon pool; without it everything runs on the caller's
//! thread.

use std::time::{Duration, Instant};

use crate::cert::Certificate;
use crate::graph::MultiGraph;
use crate::greedy::run_greedy;
use crate::linear::run;
use crate::oracle::random_3ec_plain;
use crate::verify::{verify_certificate, Rejection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Algo {
    #[default]
    Linear,
    Greedy,
}

impl Algo {
    pub fn certify(self, g: &MultiGraph) -> Certificate {
        match self {
            Algo::Linear => run(g),
            Algo::Greedy => run_greedy(g),
        }
    }
}

#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Certify every graph, in parallel when the feature is on.
pub fn certify_all(graphs: &[MultiGraph], algo: Algo) -> Vec<Certificate> {
    par_map(graphs, |g| algo.certify(g))
}

/// Same as [`certify_all`] but always on the calling thread.
pub fn certify_all_sequential(graphs: &[MultiGraph], algo: Algo) -> Vec<Certificate> {
    graphs.iter().map(|g| algo.certify(g)).collect()
}

/// Certify and check every graph; one result per graph.
pub fn certify_and_verify_all(graphs: &[MultiGraph], algo: Algo) -> Vec<(Certificate, Result<(), Rejection>)> {
    par_map(graphs, |g| {
        let c = algo.certify(g);
        let v = verify_certificate(g, &c);
        (c, v)
    })
}

/// A random 3-edge-connected graph with about `m` edges.
pub fn bench_graph(m: usize, seed: u64) -> MultiGraph {
    // each growth step adds two edges per new vertex on average
    random_3ec_plain((m / 2).max(2), seed)
}

/// Median wall time of `reps` certifications of `g`.
pub fn time_certify(g: &MultiGraph, algo: Algo, reps: usize) -> Duration {
    let mut times: Vec<Duration> = (0..reps.max(1))
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(algo.certify(std::hint::black_box(g)));
            t.elapsed()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}
