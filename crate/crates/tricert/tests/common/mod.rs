#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tricert::oracle::{random_2ec, random_3ec, weld};
use tricert::{load_graph, MultiGraph};

pub fn fixture(name: &str) -> MultiGraph {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    load_graph(&text).unwrap()
}

fn min_degree(g: &MultiGraph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Delete one edge or move one of its ends, keeping minimum degree three.
fn perturb(g: &MultiGraph, rng: &mut ChaCha8Rng) -> Option<MultiGraph> {
    let mut edges = g.edges().to_vec();
    let i = rng.gen_range(0..edges.len());
    if rng.gen_bool(0.5) {
        edges.swap_remove(i);
    } else {
        let (a, b) = edges[i];
        let c = rng.gen_range(0..g.n());
        if c == a || c == b {
            return None;
        }
        edges[i] = if rng.gen_bool(0.5) { (a, c) } else { (c, b) };
    }
    let h = MultiGraph::new(g.n(), edges);
    (min_degree(&h) >= 3).then_some(h)
}

/// 1000 seeded multigraphs with at most ten vertices and minimum degree
/// three: 400 grown 3-edge-connected graphs, 300 welded pairs and 300
/// single-edge perturbations.
pub fn corpus() -> Vec<MultiGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3ec);
    let mut out = Vec::with_capacity(1000);
    for i in 0..400 {
        out.push(random_3ec(rng.gen_range(2..=10), 1000 + i));
    }
    while out.len() < 700 {
        let na = rng.gen_range(2..=8);
        let nb = rng.gen_range(2..=10 - na);
        let a = random_3ec(na, rng.gen());
        let b = random_3ec(nb, rng.gen());
        let links = rng.gen_range(1..=3);
        out.push(weld(&a, &b, links, &mut rng));
    }
    while out.len() < 1000 {
        let g = random_3ec(rng.gen_range(3..=10), rng.gen());
        if let Some(h) = perturb(&g, &mut rng) {
            out.push(h);
        }
    }
    out
}

/// Graphs with 2-edge-cuts and degree-two vertices, at most twelve vertices.
pub fn cut_corpus() -> Vec<MultiGraph> {
    (0..300u64).map(|s| random_2ec(3 + (s as usize % 8), 5000 + s)).collect()
}
