//! Checkers for every certificate kind. They trust nothing but the input
//! graph.

use std::fmt;

use crate::cert::{Certificate, MaderPath};
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::intervals::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// (a) minimum degree three
    MinDegree,
    /// (b) the paths are walks that partition the edges
    Partition,
    /// (c) each path is a single edge when it is removed
    NotEar,
    /// (d) no link is subdivided twice
    SameLink,
    /// (e) what remains is `K_2^3`
    NotK23,
    /// a cut certificate does not disconnect
    Cut,
}

impl Check {
    pub fn label(self) -> &'static str {
        match self {
            Check::MinDegree => "(a)",
            Check::Partition => "(b)",
            Check::NotEar => "(c)",
            Check::SameLink => "(d)",
            Check::NotK23 => "(e)",
            Check::Cut => "cut",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub check: Check,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.check.label(), self.detail)
    }
}

impl std::error::Error for Rejection {}

fn reject(check: Check, detail: impl Into<String>) -> Rejection {
    Rejection { check, detail: detail.into() }
}

/// Whether deleting `e1` and `e2` disconnects `g`.
pub fn verify_cut(g: &MultiGraph, e1: EdgeId, e2: EdgeId) -> bool {
    if e1 == e2 || e1 >= g.m() || e2 >= g.m() || g.n() == 0 {
        return false;
    }
    let mut rm = vec![false; g.m()];
    rm[e1] = true;
    rm[e2] = true;
    g.reach_count(0, &rm) < g.n()
}

pub fn verify_certificate(g: &MultiGraph, cert: &Certificate) -> Result<(), Rejection> {
    match *cert {
        Certificate::Disconnected(v) => {
            let ok = g.n() < 2 || (v < g.n() && g.reach_count(v, &vec![false; g.m()]) < g.n());
            ok.then_some(()).ok_or_else(|| reject(Check::Cut, format!("graph is connected from {v}")))
        }
        Certificate::Bridge(e) => {
            let ok = e < g.m() && {
                let mut rm = vec![false; g.m()];
                rm[e] = true;
                g.reach_count(0, &rm) < g.n()
            };
            ok.then_some(()).ok_or_else(|| reject(Check::Cut, format!("edge {e} is not a bridge")))
        }
        Certificate::TwoCut(a, b) => verify_cut(g, a, b)
            .then_some(())
            .ok_or_else(|| reject(Check::Cut, format!("edges {a} {b} do not disconnect"))),
        Certificate::Mader(ref paths) => verify_mader(g, paths),
    }
}

/// Every certificate in `certs` must hold; an empty list is rejected.
pub fn verify_certificates(g: &MultiGraph, certs: &[Certificate]) -> Result<(), Rejection> {
    if certs.is_empty() {
        return Err(reject(Check::Cut, "no certificate"));
    }
    certs.iter().try_for_each(|c| verify_certificate(g, c))
}

fn is_walk(g: &MultiGraph, edges: &[EdgeId]) -> bool {
    let (a, b) = g.edge(edges[0]);
    'start: for start in [a, b] {
        let mut at = start;
        for &e in edges {
            let (x, y) = g.edge(e);
            at = if x == at {
                y
            } else if y == at {
                x
            } else {
                continue 'start;
            };
        }
        return true;
    }
    false
}

/// Working multigraph of the deconstruction. Its edges stand for paths of
/// original edges; loops and parallel edges are allowed.
struct Shrinking {
    ends: Vec<(VertexId, VertexId)>,
    size: Vec<usize>,
    alive: Vec<bool>,
    inc: Vec<Vec<usize>>,
    deg: Vec<usize>,
    uf: UnionFind,
    label: Vec<usize>,
}

impl Shrinking {
    fn new(g: &MultiGraph) -> Self {
        let m = g.m();
        let cap = m + g.n();
        let mut inc = vec![Vec::new(); g.n()];
        let mut deg = vec![0; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut ends = g.edges().to_vec();
        ends.reserve(g.n());
        let mut size = vec![1; m];
        size.reserve(g.n());
        let mut alive = vec![true; m];
        alive.reserve(g.n());
        Shrinking { ends, size, alive, inc, deg, uf: UnionFind::new(cap), label: (0..cap).collect() }
    }

    fn current(&mut self, e: EdgeId) -> usize {
        let r = self.uf.find(e);
        self.label[r]
    }

    fn remove(&mut self, h: usize) {
        self.alive[h] = false;
        let (a, b) = self.ends[h];
        self.deg[a] -= 1;
        self.deg[b] -= 1;
    }

    fn live_at(&self, v: VertexId) -> Vec<usize> {
        let mut out: Vec<usize> = self.inc[v].iter().copied().filter(|&h| self.alive[h]).collect();
        out.dedup();
        out
    }

    /// Replace the two edges at a degree-two vertex by one.
    fn suppress(&mut self, v: VertexId) {
        let live = self.live_at(v);
        if live.len() != 2 {
            // a lone loop; left for check (e)
            return;
        }
        let (g1, g2) = (live[0], live[1]);
        let far = |h: usize, s: &Self| {
            let (a, b) = s.ends[h];
            if a == v {
                b
            } else {
                a
            }
        };
        let (x, y) = (far(g1, self), far(g2, self));
        let h = self.ends.len();
        self.ends.push((x, y));
        self.size.push(self.size[g1] + self.size[g2]);
        self.alive.push(true);
        self.alive[g1] = false;
        self.alive[g2] = false;
        let r = self.uf.find(g1);
        self.uf.union(r, g2);
        self.uf.union(g1, h);
        let r = self.uf.find(h);
        self.label[r] = h;
        self.deg[v] = 0;
        self.inc[v].clear();
        self.inc[x].push(h);
        self.inc[y].push(h);
    }
}

/// Check a Mader sequence by removing its paths in reverse order.
pub fn verify_mader(g: &MultiGraph, paths: &[MaderPath]) -> Result<(), Rejection> {
    let (n, m) = (g.n(), g.m());
    if n < 2 {
        return Err(reject(Check::MinDegree, "fewer than two vertices"));
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) < 3) {
        return Err(reject(Check::MinDegree, format!("vertex {v} has degree {}", g.degree(v))));
    }

    let mut owner = vec![usize::MAX; m];
    for (i, p) in paths.iter().enumerate() {
        if p.edges.is_empty() {
            return Err(reject(Check::Partition, format!("path {} is empty", i + 1)));
        }
        for &e in &p.edges {
            if e >= m {
                return Err(reject(Check::Partition, format!("edge {e} does not exist")));
            }
            if owner[e] != usize::MAX {
                return Err(reject(Check::Partition, format!("edge {e} used twice")));
            }
            owner[e] = i;
        }
        if !is_walk(g, &p.edges) {
            return Err(reject(Check::Partition, format!("path {} is not a walk", i + 1)));
        }
    }
    if let Some(e) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(reject(Check::Partition, format!("edge {e} is in no path")));
    }
    if paths.len() < 2 {
        return Err(reject(Check::NotK23, "fewer than two paths"));
    }

    let mut w = Shrinking::new(g);
    for i in (2..paths.len()).rev() {
        let p = &paths[i];
        let h = w.current(p.edges[0]);
        if !w.alive[h] || w.size[h] != p.edges.len() || p.edges.iter().any(|&e| w.current(e) != h) {
            return Err(reject(Check::NotEar, format!("path {} is not a single edge", i + 1)));
        }
        w.remove(h);
        let (a, b) = w.ends[h];
        if w.deg[a] < 2 || w.deg[b] < 2 {
            return Err(reject(Check::SameLink, format!("path {} leaves a vertex of degree below two", i + 1)));
        }
        if w.deg[a] == 2 && w.deg[b] == 2 {
            let joined = a == b || w.live_at(a).iter().any(|&f| {
                let (x, y) = w.ends[f];
                (x, y) == (a, b) || (x, y) == (b, a)
            });
            if joined {
                return Err(reject(Check::SameLink, format!("path {} subdivides one link twice", i + 1)));
            }
        }
        for v in [a, b] {
            if w.deg[v] == 2 {
                w.suppress(v);
            }
        }
    }

    let rest: Vec<VertexId> = (0..n).filter(|&v| w.deg[v] > 0).collect();
    let live: Vec<usize> = (0..w.ends.len()).filter(|&h| w.alive[h]).collect();
    let k23 = rest.len() == 2
        && live.len() == 3
        && live.iter().all(|&h| {
            let (x, y) = w.ends[h];
            x != y && rest.contains(&x) && rest.contains(&y)
        });
    if !k23 {
        return Err(reject(
            Check::NotK23,
            format!("{} vertices and {} edges remain", rest.len(), live.len()),
        ));
    }
    Ok(())
}
