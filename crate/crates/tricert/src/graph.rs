use std::fmt::Write as _;

use thiserror::Error;

use crate::cert::Certificate;

pub type VertexId = usize;
pub type EdgeId = usize;

const NONE: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed input: {what}")]
    Malformed { line: usize, what: String },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: VertexId },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    VertexOutOfRange { line: usize, v: VertexId, n: usize },
}

/// Undirected multigraph on vertices `0..n`. Parallel edges are allowed,
/// self-loops are not. Adjacency is stored in CSR form, each list sorted by
/// `(neighbor, edge id)`.
#[derive(Clone, Debug)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
    adj: Vec<(VertexId, EdgeId)>,
}

impl PartialEq for MultiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for MultiGraph {}

impl MultiGraph {
    /// Panics on self-loops or out-of-range endpoints; use [`load_graph`] for
    /// untrusted input.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        for &(u, v) in &edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            assert!(u != v, "self-loop on vertex {u}");
        }
        let (offsets, adj) = build_adjacency(n, &edges);
        MultiGraph { n, edges, offsets, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn other(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge-list text in the format read by [`load_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(12 * (self.m() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Number of vertices reachable from `src` when the edges flagged in
    /// `removed` are ignored.
    pub fn reach_count(&self, src: VertexId, removed: &[bool]) -> usize {
        let mut seen = vec![false; self.n];
        let mut stack = vec![src];
        seen[src] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, e) in self.neighbors(v) {
                if !removed[e] && !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach_count(0, &vec![false; self.m()]) == self.n
    }
}

// Two stable counting sorts: first by neighbor, then by owner. Iterating the
// neighbor buckets in ascending order leaves every owner list sorted by
// (neighbor, edge id).
fn build_adjacency(n: usize, edges: &[(VertexId, VertexId)]) -> (Vec<usize>, Vec<(VertexId, EdgeId)>) {
    let mut deg = vec![0usize; n + 1];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + deg[v];
    }
    // bucket half-edges (owner, edge) by neighbor
    let mut by_nbr = vec![(0usize, 0usize); 2 * edges.len()];
    let mut fill = offsets.clone();
    for (e, &(u, v)) in edges.iter().enumerate() {
        by_nbr[fill[v]] = (u, e);
        fill[v] += 1;
        by_nbr[fill[u]] = (v, e);
        fill[u] += 1;
    }
    let mut adj = vec![(0usize, 0usize); 2 * edges.len()];
    let mut fill = offsets.clone();
    for nbr in 0..n {
        for &(owner, e) in &by_nbr[offsets[nbr]..offsets[nbr + 1]] {
            adj[fill[owner]] = (nbr, e);
            fill[owner] += 1;
        }
    }
    (offsets, adj)
}

/// Parse the edge-list format: a header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn load_graph(text: &str) -> Result<MultiGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::Malformed {
        line: 0,
        what: "missing header".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    if n == 0 {
        return Err(ParseError::Malformed { line: hline, what: "empty vertex set".into() });
    }
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            return Err(ParseError::Malformed { line, what: format!("more than {m} edges") });
        }
        let (u, v) = parse_pair(line, l)?;
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::VertexOutOfRange { line, v: w, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, v: u });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::Malformed {
            line: text.lines().count(),
            what: format!("expected {m} edges, found {}", edges.len()),
        });
    }
    Ok(MultiGraph::new(n, edges))
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize), ParseError> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| ParseError::Malformed {
            line,
            what: format!("expected two integers in {l:?}"),
        })?;
        tok.parse().map_err(|_| ParseError::Malformed { line, what: format!("bad integer {tok:?}") })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(ParseError::Malformed { line, what: format!("trailing tokens in {l:?}") });
    }
    Ok((a, b))
}

/// A small certificate if some vertex has degree below three. Degree-two
/// vertices are reported before degree-one and isolated ones; ties go to the
/// smallest vertex id.
pub fn min_degree_screen(g: &MultiGraph) -> Option<Certificate> {
    let low = |d: usize| (0..g.n()).find(|&v| g.degree(v) == d);
    if let Some(v) = low(2) {
        let nb = g.neighbors(v);
        return Some(Certificate::TwoCut(nb[0].1, nb[1].1));
    }
    if let Some(v) = low(1) {
        return Some(Certificate::Bridge(g.neighbors(v)[0].1));
    }
    low(0).map(Certificate::Disconnected)
}

/// DFS forest from a single root. Tree edges point up, back-edges are stored
/// as `(x, y)` with `disc(x) < disc(y)`.
#[derive(Clone, Debug)]
pub struct DfsForest {
    pub root: VertexId,
    node: Vec<Node>,
    order: Vec<VertexId>,
    is_tree: Vec<bool>,
    back_edges: Vec<(VertexId, VertexId, EdgeId)>,
}

/// Per-vertex DFS data, kept together since it is read together.
#[derive(Clone, Copy, Debug)]
struct Node {
    parent: VertexId,
    parent_edge: EdgeId,
    disc: usize,
    last: usize,
}

const UNSEEN: Node = Node { parent: NONE, parent_edge: NONE, disc: NONE, last: NONE };

impl DfsForest {
    pub fn parent(&self, v: VertexId) -> Option<(VertexId, EdgeId)> {
        let x = &self.node[v];
        (x.parent != NONE).then_some((x.parent, x.parent_edge))
    }

    pub fn disc(&self, v: VertexId) -> Option<usize> {
        (self.node[v].disc != NONE).then_some(self.node[v].disc)
    }

    pub fn reached(&self, v: VertexId) -> bool {
        self.node[v].disc != NONE
    }

    /// Vertices in discovery order.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.is_tree[e]
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.is_tree.iter().enumerate().filter(|(_, &t)| t).map(|(e, _)| e)
    }

    /// `(source, head, edge)` in the order the source was discovered; edges
    /// with the same source follow its adjacency order.
    pub fn back_edges(&self) -> &[(VertexId, VertexId, EdgeId)] {
        &self.back_edges
    }

    /// `u <= v` in the tree order, i.e. `u` lies on the path from `v` to the
    /// root. Both vertices must be reached.
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        let (x, d) = (&self.node[u], self.node[v].disc);
        x.disc <= d && d <= x.last
    }

    /// The same forest with every vertex renamed to its discovery index.
    /// Edge ids are kept. Every vertex must be reached.
    pub fn relabeled(&self) -> DfsForest {
        assert_eq!(self.order.len(), self.node.len(), "forest does not span the graph");
        let d = |v: VertexId| if v == NONE { NONE } else { self.node[v].disc };
        let node = self
            .order
            .iter()
            .map(|&v| {
                let x = self.node[v];
                Node { parent: d(x.parent), ..x }
            })
            .collect();
        DfsForest {
            root: 0,
            node,
            order: (0..self.order.len()).collect(),
            is_tree: self.is_tree.clone(),
            back_edges: self.back_edges.iter().map(|&(x, y, e)| (d(x), d(y), e)).collect(),
        }
    }

    pub(crate) fn raw_parent(&self, v: VertexId) -> VertexId {
        self.node[v].parent
    }

    pub(crate) fn raw_parent_edge(&self, v: VertexId) -> EdgeId {
        self.node[v].parent_edge
    }
}

pub fn dfs(g: &MultiGraph, root: VertexId) -> DfsForest {
    assert!(root < g.n(), "root {root} out of range");
    let n = g.n();
    let mut node = vec![UNSEEN; n];
    let mut is_tree = vec![false; g.m()];
    let mut order = Vec::with_capacity(n);
    // back-edges as met, keyed by the discovery index of their source
    let mut met: Vec<(usize, VertexId, VertexId, EdgeId)> = Vec::with_capacity(g.m().saturating_sub(n) + 1);
    // (vertex, its discovery index, next adjacency slot)
    let mut stack: Vec<(VertexId, usize, usize)> = vec![(root, 0, 0)];
    node[root].disc = 0;
    order.push(root);
    while let Some(top) = stack.last_mut() {
        let (v, dv) = (top.0, top.1);
        let nb = g.neighbors(v);
        if top.2 < nb.len() {
            let (u, e) = nb[top.2];
            top.2 += 1;
            let du = node[u].disc;
            if du == NONE {
                let d = order.len();
                node[u] = Node { parent: v, parent_edge: e, disc: d, last: NONE };
                order.push(u);
                is_tree[e] = true;
                stack.push((u, d, 0));
            } else if du > dv {
                // u was found below v while v was open, and the entry that
                // discovered it has been consumed: a back-edge from v
                met.push((dv, v, u, e));
            }
        } else {
            node[v].last = order.len() - 1;
            stack.pop();
        }
    }
    // stable bucket pass by source discovery index
    let mut start = vec![0usize; order.len() + 1];
    for b in &met {
        start[b.0 + 1] += 1;
    }
    for j in 0..order.len() {
        start[j + 1] += start[j];
    }
    let mut back_edges = vec![(0, 0, 0); met.len()];
    for &(d, x, y, e) in &met {
        back_edges[start[d]] = (x, y, e);
        start[d] += 1;
    }
    DfsForest { root, node, order, is_tree, back_edges }
}

#[cfg(test)]
pub(crate) use tests::example7;
