//! Brute-force reference computations for small graphs, plus a seeded
//! generator of 3-edge-connected multigraphs.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, MultiGraph, VertexId};

/// Every unordered pair of edges whose removal disconnects `g`.
pub fn brute_two_cuts(g: &MultiGraph) -> Vec<(EdgeId, EdgeId)> {
    let m = g.m();
    let mut removed = vec![false; m];
    let mut out = Vec::new();
    for e in 0..m {
        removed[e] = true;
        for f in e + 1..m {
            removed[f] = true;
            if g.reach_count(0, &removed) < g.n() {
                out.push((e, f));
            }
            removed[f] = false;
        }
        removed[e] = false;
    }
    out
}

/// Maximum number of edge-disjoint `s`-`t` paths, capped at `cap`.
pub fn max_flow(g: &MultiGraph, s: VertexId, t: VertexId, cap: usize) -> usize {
    // undirected unit capacities: flow[e] in {-1, 0, 1}, +1 meaning u -> v
    let mut flow = vec![0i8; g.m()];
    let mut total = 0;
    while total < cap {
        let mut pred: Vec<Option<(VertexId, EdgeId)>> = vec![None; g.n()];
        let mut seen = vec![false; g.n()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            if v == t {
                break;
            }
            for &(u, e) in g.neighbors(v) {
                let dir: i8 = if g.edge(e).0 == v { 1 } else { -1 };
                if !seen[u] && flow[e] != dir {
                    seen[u] = true;
                    pred[u] = Some((v, e));
                    q.push_back(u);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut x = t;
        while let Some((p, e)) = pred[x] {
            flow[e] += if g.edge(e).0 == p { 1 } else { -1 };
            x = p;
        }
        total += 1;
    }
    total
}

/// Edge connectivity; 0 for disconnected graphs and for a single vertex.
pub fn edge_connectivity(g: &MultiGraph) -> usize {
    if g.n() < 2 || !g.is_connected() {
        return 0;
    }
    (1..g.n()).map(|v| max_flow(g, 0, v, usize::MAX)).min().unwrap()
}

/// Classes of vertices pairwise joined by three edge-disjoint paths.
/// Transitivity is checked rather than assumed.
pub fn brute_three_components(g: &MultiGraph) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let mut rel = vec![vec![false; n]; n];
    for u in 0..n {
        rel[u][u] = true;
        for v in u + 1..n {
            let ok = max_flow(g, u, v, 3) >= 3;
            rel[u][v] = ok;
            rel[v][u] = ok;
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for u in 0..n {
        if class[u] != usize::MAX {
            continue;
        }
        let members: Vec<_> = (u..n).filter(|&v| rel[u][v]).collect();
        for &a in &members {
            for &b in &members {
                assert!(rel[a][b], "3-edge-connectivity not transitive on {a}, {b}");
            }
            class[a] = out.len();
        }
        out.push(members);
    }
    out
}

/// Grow a 3-edge-connected multigraph from `K_2^3` with the three Mader
/// operations until it has `n_target` vertices, then add 0-3 random edges.
/// Vertex labels and edge order are shuffled at the end. ChaCha8 seeded
/// with `seed`.
pub fn random_3ec(n_target: usize, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_3ec_with(n_target, &mut rng, true)
}

/// Same as [`random_3ec`] but without the extra edges, so `n_target = 2`
/// gives exactly `K_2^3`.
pub fn random_3ec_plain(n_target: usize, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_3ec_with(n_target, &mut rng, false)
}

pub fn random_3ec_with<R: Rng>(n_target: usize, rng: &mut R, extra: bool) -> MultiGraph {
    assert!(n_target >= 2);
    let mut n = 2;
    let mut edges: Vec<(VertexId, VertexId)> = vec![(0, 1); 3];
    let distinct_pair = |rng: &mut R, n: usize| {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        (a, b)
    };
    while n < n_target {
        let op = if n_target - n >= 2 { rng.gen_range(0..3) } else { rng.gen_range(0..2) };
        match op {
            0 => edges.push(distinct_pair(rng, n)),
            1 => {
                let z = subdivide(&mut edges, rng, &mut n);
                let mut w = rng.gen_range(0..n - 1);
                if w >= z {
                    w += 1;
                }
                edges.push((z, w));
            }
            _ => {
                let i = rng.gen_range(0..edges.len());
                let mut j = rng.gen_range(0..edges.len() - 1);
                if j >= i {
                    j += 1;
                }
                let z1 = subdivide_at(&mut edges, i, &mut n);
                let z2 = subdivide_at(&mut edges, j, &mut n);
                edges.push((z1, z2));
            }
        }
    }
    if extra {
        for _ in 0..rng.gen_range(0..=3) {
            edges.push(distinct_pair(rng, n));
        }
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<_> = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    edges.shuffle(rng);
    MultiGraph::new(n, edges)
}

fn subdivide<R: Rng>(edges: &mut Vec<(VertexId, VertexId)>, rng: &mut R, n: &mut usize) -> VertexId {
    let i = rng.gen_range(0..edges.len());
    subdivide_at(edges, i, n)
}

fn subdivide_at(edges: &mut Vec<(VertexId, VertexId)>, i: usize, n: &mut usize) -> VertexId {
    let z = *n;
    *n += 1;
    let (a, b) = edges[i];
    edges[i] = (a, z);
    edges.push((z, b));
    z
}

/// A 2-edge-connected graph with 2-edge-cuts: up to four 3-edge-connected
/// pieces (single vertices allowed) strung on a ring by single edges, with a
/// few edges subdivided and sometimes one chord added.
pub fn random_2ec(n_target: usize, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=4usize.min(n_target.max(1)));
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut starts = Vec::with_capacity(k);
    let mut n = 0;
    for i in 0..k {
        let left = n_target.saturating_sub(n) - (k - 1 - i);
        let size = if i + 1 == k { left } else { rng.gen_range(1..=left.min(n_target / k + 1).max(1)) };
        starts.push((n, size));
        if size >= 2 {
            let extra = rng.gen_bool(0.5);
            let piece = random_3ec_with(size, &mut rng, extra);
            edges.extend(piece.edges().iter().map(|&(u, v)| (u + n, v + n)));
        }
        n += size;
    }
    if k >= 2 {
        for i in 0..k {
            let (a, sa) = starts[i];
            let (b, sb) = starts[(i + 1) % k];
            edges.push((a + rng.gen_range(0..sa), b + rng.gen_range(0..sb)));
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        subdivide(&mut edges, &mut rng, &mut n);
    }
    if n >= 2 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        edges.push((a, b));
    }
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    edges.shuffle(&mut rng);
    MultiGraph::new(n, edges)
}

/// Disjoint union of two graphs joined by `links` random edges between them.
pub fn weld<R: Rng>(a: &MultiGraph, b: &MultiGraph, links: usize, rng: &mut R) -> MultiGraph {
    let off = a.n();
    let mut edges: Vec<_> = a.edges().to_vec();
    edges.extend(b.edges().iter().map(|&(u, v)| (u + off, v + off)));
    for _ in 0..links {
        edges.push((rng.gen_range(0..off), off + rng.gen_range(0..b.n())));
    }
    let n = off + b.n();
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    edges.shuffle(rng);
    MultiGraph::new(n, edges)
}

#[cfg(test)]
pub(crate) use tests::two_k4;
