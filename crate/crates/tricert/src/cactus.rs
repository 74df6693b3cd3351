//! Cactus representation of all 2-edge-cuts, built on top of the phase
//! algorithm run without stopping, and its checker.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::batch::par_map;
use crate::cert::Certificate;
use crate::chains::analyze;
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::linear::{run, run_all, ChainPath};
use crate::verify::verify_mader;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CactusEdge {
    pub a: usize,
    pub b: usize,
    pub edge: EdgeId,
    pub cycle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cactus {
    /// Vertex sets, each sorted; blob ids follow the smallest vertex.
    pub blobs: Vec<Vec<VertexId>>,
    /// Sorted by graph edge id.
    pub cedges: Vec<CactusEdge>,
    pub cycles: usize,
}

impl Cactus {
    /// Blob id per vertex; `usize::MAX` for vertices in no blob.
    pub fn blob_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![NONE; n];
        for (b, vs) in self.blobs.iter().enumerate() {
            for &v in vs {
                if v < n {
                    out[v] = b;
                }
            }
        }
        out
    }

    /// Graph edges of each cactus cycle, in cycle order.
    pub fn cycle_edges(&self) -> Vec<Vec<EdgeId>> {
        let mut out = vec![Vec::new(); self.cycles];
        for ce in &self.cedges {
            if ce.cycle < self.cycles {
                out[ce.cycle].push(ce.edge);
            }
        }
        out
    }

    /// Every unordered pair of graph edges on a common cactus cycle.
    pub fn cut_pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut out = Vec::new();
        for cyc in self.cycle_edges() {
            for (i, &e) in cyc.iter().enumerate() {
                for &f in &cyc[i + 1..] {
                    out.push((e.min(f), e.max(f)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Cactus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, vs) in self.blobs.iter().enumerate() {
            write!(f, "blob {b}:")?;
            for v in vs {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        for ce in &self.cedges {
            writeln!(f, "cedge {} {} {} {}", ce.a, ce.b, ce.edge, ce.cycle)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CactusError {
    #[error("graph is not 2-edge-connected: {0}")]
    NotTwoEdgeConnected(Certificate),
}

/// Edges of one cut block: any two of them form a 2-edge-cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutBlock {
    /// 1-based chain id.
    pub chain: usize,
    pub edges: Vec<EdgeId>,
}

/// Group a laminar family of spans into blocks of consecutively contacting
/// intervals. Each block lists span indices left to right; blocks are
/// ordered by their left end.
pub fn cut_blocks(spans: &[(u32, u32)]) -> Vec<Vec<usize>> {
    let by_lo: HashMap<u32, usize> = spans.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
    let by_hi: HashMap<u32, usize> = spans.iter().enumerate().map(|(i, s)| (s.1, i)).collect();
    let mut starts: Vec<usize> = (0..spans.len()).filter(|&i| !by_hi.contains_key(&(spans[i].0 - 1))).collect();
    starts.sort_unstable_by_key(|&i| spans[i].0);
    starts
        .into_iter()
        .map(|i| {
            let mut block = vec![i];
            let mut at = i;
            while let Some(&j) = by_lo.get(&(spans[at].1 + 1)) {
                block.push(j);
                at = j;
            }
            block
        })
        .collect()
}

/// The edges of a block on a chain path: the edge before the first span and
/// the edge after every span.
pub fn block_edges(path: &ChainPath, spans: &[(u32, u32)], block: &[usize]) -> Vec<EdgeId> {
    let mut out = vec![path.edge(spans[block[0]].0 - 1)];
    out.extend(block.iter().map(|&i| path.edge(spans[i].1)));
    out
}

/// Attach a pendant `K_2^3` to every vertex of degree two. Returns the new
/// graph; the original vertices and edges keep their ids.
fn with_gadgets(g: &MultiGraph) -> MultiGraph {
    let mut edges = g.edges().to_vec();
    let mut n = g.n();
    for u in 0..g.n() {
        if g.degree(u) == 2 {
            edges.extend([(u, n); 3]);
            n += 1;
        }
    }
    MultiGraph::new(n, edges)
}

/// Cut blocks of every chain, from a run without stopping.
pub fn all_cut_blocks(g: &MultiGraph) -> Result<Vec<CutBlock>, CactusError> {
    let h = with_gadgets(g);
    let ap = run_all(&h, 0).map_err(CactusError::NotTwoEdgeConnected)?;
    let mut out = Vec::new();
    for (i, spans) in &ap.spans {
        let path = ChainPath::of(&ap.cd, *i);
        for b in cut_blocks(spans) {
            out.push(CutBlock { chain: i + 1, edges: block_edges(&path, spans, &b) });
        }
    }
    Ok(out)
}

pub fn build_cactus(g: &MultiGraph) -> Result<Cactus, CactusError> {
    if g.n() == 0 {
        return Err(CactusError::NotTwoEdgeConnected(Certificate::Disconnected(0)));
    }
    analyze(g, 0).map_err(CactusError::NotTwoEdgeConnected)?;
    let h = with_gadgets(g);
    let ap = run_all(&h, 0).map_err(CactusError::NotTwoEdgeConnected)?;
    let cd = &ap.cd;

    let mut blob_of = vec![NONE; h.n()];
    blob_of[cd.forest.root] = 0;
    let mut nblobs = 1;
    let mut raw_edges: Vec<CactusEdge> = Vec::new();
    let mut cycles = 0;
    let mut sp = ap.spans.iter().peekable();
    let mut stack: Vec<usize> = Vec::new();
    for i in 0..cd.len() {
        let path = ChainPath::of(cd, i);
        let outer = blob_of[path.vertex(1)];
        debug_assert!(outer != NONE);
        let spans: &[(u32, u32)] = match sp.peek() {
            Some((j, s)) if *j == i => {
                sp.next();
                s
            }
            _ => &[],
        };
        let mut by_lo: Vec<usize> = (0..spans.len()).collect();
        by_lo.sort_unstable_by_key(|&k| spans[k].0);
        let mut iv_blob = vec![NONE; spans.len()];
        let mut iv_parent = vec![NONE; spans.len()];
        let mut next = 0;
        stack.clear();
        for p in 2..=path.len() {
            while stack.last().is_some_and(|&k| spans[k].1 < p) {
                stack.pop();
            }
            while next < by_lo.len() && spans[by_lo[next]].0 == p {
                let k = by_lo[next];
                iv_parent[k] = stack.last().map_or(outer, |&t| iv_blob[t]);
                iv_blob[k] = nblobs;
                nblobs += 1;
                stack.push(k);
                next += 1;
            }
            blob_of[path.vertex(p)] = stack.last().map_or(outer, |&t| iv_blob[t]);
        }
        for block in cut_blocks(spans) {
            let parent = iv_parent[block[0]];
            let cyc = cycles;
            cycles += 1;
            let first = path.edge(spans[block[0]].0 - 1);
            raw_edges.push(CactusEdge { a: parent, b: iv_blob[block[0]], edge: first, cycle: cyc });
            for w in 0..block.len() {
                let k = block[w];
                let to = block.get(w + 1).map_or(parent, |&j| iv_blob[j]);
                raw_edges.push(CactusEdge { a: iv_blob[k], b: to, edge: path.edge(spans[k].1), cycle: cyc });
            }
        }
    }

    // drop gadget vertices, renumber blobs by smallest vertex
    let n = g.n();
    let mut rename = vec![NONE; nblobs];
    let mut blobs: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        let b = blob_of[v];
        if rename[b] == NONE {
            rename[b] = blobs.len();
            blobs.push(Vec::new());
        }
        blobs[rename[b]].push(v);
    }
    debug_assert!((n..h.n()).all(|v| rename[blob_of[v]] != NONE), "gadget left alone in a blob");
    let mut cedges: Vec<CactusEdge> = raw_edges
        .into_iter()
        .map(|ce| {
            let (a, b) = (rename[ce.a], rename[ce.b]);
            CactusEdge { a: a.min(b), b: a.max(b), edge: ce.edge, cycle: ce.cycle }
        })
        .collect();
    cedges.sort_unstable_by_key(|ce| ce.edge);
    let mut cyc_rename = vec![NONE; cycles];
    let mut next = 0;
    for ce in &mut cedges {
        if cyc_rename[ce.cycle] == NONE {
            cyc_rename[ce.cycle] = next;
            next += 1;
        }
        ce.cycle = cyc_rename[ce.cycle];
    }
    Ok(Cactus { blobs, cedges, cycles: next })
}

/// The blobs: the 3-edge-connected components of the graph.
pub fn three_edge_components(cx: &Cactus) -> Vec<Vec<VertexId>> {
    cx.blobs.clone()
}

/// Contracted graph of every blob: its internal edges plus, for every cactus
/// cycle through the blob, one edge joining the two vertices where the
/// cycle enters and leaves. Loops from such pairings are dropped. Each
/// entry also maps local vertex ids to graph vertex ids.
pub fn blob_graphs(g: &MultiGraph, cx: &Cactus) -> Vec<(MultiGraph, Vec<VertexId>)> {
    let blob_of = cx.blob_of(g.n());
    let mut local = vec![NONE; g.n()];
    for vs in &cx.blobs {
        for (i, &v) in vs.iter().enumerate() {
            if v < g.n() {
                local[v] = i;
            }
        }
    }
    let mut edges: Vec<Vec<(VertexId, VertexId)>> = vec![Vec::new(); cx.blobs.len()];
    for &(u, v) in g.edges() {
        let b = blob_of[u];
        if b != NONE && b == blob_of[v] {
            edges[b].push((local[u], local[v]));
        }
    }
    // (blob, cycle, vertex) for both ends of every cactus edge
    let mut ends: Vec<(usize, usize, VertexId)> = Vec::with_capacity(2 * cx.cedges.len());
    for ce in &cx.cedges {
        if ce.edge >= g.m() {
            continue;
        }
        let (u, v) = g.edge(ce.edge);
        for x in [u, v] {
            if blob_of[x] != NONE {
                ends.push((blob_of[x], ce.cycle, x));
            }
        }
    }
    ends.sort_unstable();
    for pair in ends.chunk_by(|a, b| a.0 == b.0 && a.1 == b.1) {
        if let [(b, _, x), (_, _, y)] = *pair {
            if x != y {
                edges[b].push((local[x], local[y]));
            }
        }
    }
    cx.blobs
        .iter()
        .zip(edges)
        .map(|(vs, e)| (MultiGraph::new(vs.len(), e), vs.clone()))
        .collect()
}

/// A Mader certificate for every blob with at least two vertices.
pub fn blob_certificates(g: &MultiGraph, cx: &Cactus) -> Vec<Option<Certificate>> {
    let graphs = blob_graphs(g, cx);
    par_map(&graphs, |(h, vs)| (vs.len() > 1).then(|| run(h)))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("({check}) {detail}")]
pub struct CactusRejection {
    pub check: char,
    pub detail: String,
}

fn reject(check: char, detail: impl Into<String>) -> CactusRejection {
    CactusRejection { check, detail: detail.into() }
}

/// Check a cactus against the graph: (a) it is a connected cactus whose
/// cycles carry the stated ids, (b) blobs partition the vertices, (c) the
/// cactus edges are exactly the edges between blobs, (d) every blob of two
/// or more vertices is 3-edge-connected by its certificate.
pub fn verify_cactus(g: &MultiGraph, cx: &Cactus, certs: &[Option<Certificate>]) -> Result<(), CactusRejection> {
    let (n, m) = (g.n(), g.m());
    let nb = cx.blobs.len();

    // (b)
    if nb == 0 {
        return Err(reject('b', "no blobs"));
    }
    let mut blob_of = vec![NONE; n];
    for (b, vs) in cx.blobs.iter().enumerate() {
        if vs.is_empty() {
            return Err(reject('b', format!("blob {b} is empty")));
        }
        for &v in vs {
            if v >= n {
                return Err(reject('b', format!("vertex {v} does not exist")));
            }
            if blob_of[v] != NONE {
                return Err(reject('b', format!("vertex {v} in two blobs")));
            }
            blob_of[v] = b;
        }
    }
    if let Some(v) = blob_of.iter().position(|&b| b == NONE) {
        return Err(reject('b', format!("vertex {v} in no blob")));
    }

    // (a)
    for ce in &cx.cedges {
        if ce.a >= nb || ce.b >= nb || ce.a == ce.b {
            return Err(reject('a', format!("cactus edge {} has bad ends", ce.edge)));
        }
    }
    check_cactus_shape(nb, &cx.cedges, cx.cycles)?;

    // (c)
    let mut claimed = vec![false; m];
    for ce in &cx.cedges {
        if ce.edge >= m || claimed[ce.edge] {
            return Err(reject('c', format!("cactus edge {} unknown or repeated", ce.edge)));
        }
        claimed[ce.edge] = true;
        let (u, v) = g.edge(ce.edge);
        let (x, y) = (blob_of[u], blob_of[v]);
        if (x.min(y), x.max(y)) != (ce.a.min(ce.b), ce.a.max(ce.b)) {
            return Err(reject('c', format!("edge {} joins blobs {x} and {y}", ce.edge)));
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if blob_of[u] != blob_of[v] && !claimed[e] {
            return Err(reject('c', format!("edge {e} crosses blobs but is not in the cactus")));
        }
    }

    // (d)
    if certs.len() != nb {
        return Err(reject('d', format!("{} certificates for {nb} blobs", certs.len())));
    }
    let graphs = blob_graphs(g, cx);
    let items: Vec<usize> = (0..nb).collect();
    let bad = par_map(&items, |&b| {
        let (h, vs) = &graphs[b];
        if vs.len() < 2 {
            return None;
        }
        match &certs[b] {
            Some(Certificate::Mader(p)) => verify_mader(h, p).err().map(|r| format!("blob {b}: {r}")),
            _ => Some(format!("blob {b} has no Mader certificate")),
        }
    });
    if let Some(msg) = bad.into_iter().flatten().next() {
        return Err(reject('d', msg));
    }
    Ok(())
}

/// DFS over the cactus: every back-edge closes a cycle made of the tree path
/// it spans. Each edge must be closed exactly once and the cycles found
/// must match the ids on the edges one to one.
fn check_cactus_shape(nb: usize, cedges: &[CactusEdge], cycles: usize) -> Result<(), CactusRejection> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nb];
    for (k, ce) in cedges.iter().enumerate() {
        adj[ce.a].push((ce.b, k));
        adj[ce.b].push((ce.a, k));
    }
    let mut disc = vec![NONE; nb];
    let mut up = vec![(NONE, NONE); nb];
    let mut group = vec![NONE; cedges.len()];
    let mut ngroups = 0;
    let mut stack = vec![(0usize, 0usize)];
    disc[0] = 0;
    let mut time = 1;
    while let Some(&mut (x, ref mut i)) = stack.last_mut() {
        if *i == adj[x].len() {
            stack.pop();
            continue;
        }
        let (y, k) = adj[x][*i];
        *i += 1;
        if disc[y] == NONE {
            disc[y] = time;
            time += 1;
            up[y] = (x, k);
            stack.push((y, 0));
        } else if k != up[x].1 && disc[y] < disc[x] {
            let gid = ngroups;
            ngroups += 1;
            group[k] = gid;
            let mut z = x;
            while z != y {
                let (p, pe) = up[z];
                if p == NONE || group[pe] != NONE {
                    return Err(reject('a', format!("cactus edge {} lies on two cycles", cedges[pe.min(cedges.len() - 1)].edge)));
                }
                group[pe] = gid;
                z = p;
            }
        }
    }
    if let Some(b) = disc.iter().position(|&d| d == NONE) {
        return Err(reject('a', format!("blob {b} is not connected to blob 0")));
    }
    if let Some(k) = group.iter().position(|&g| g == NONE) {
        return Err(reject('a', format!("cactus edge {} lies on no cycle", cedges[k].edge)));
    }
    if ngroups != cycles {
        return Err(reject('a', format!("{ngroups} cycles found, {cycles} declared")));
    }
    let mut id_of = vec![NONE; ngroups];
    let mut seen = vec![false; cycles];
    for (k, ce) in cedges.iter().enumerate() {
        let gid = group[k];
        if ce.cycle >= cycles {
            return Err(reject('a', format!("cycle id {} out of range", ce.cycle)));
        }
        if id_of[gid] == NONE {
            if seen[ce.cycle] {
                return Err(reject('a', format!("cycle id {} used for two cycles", ce.cycle)));
            }
            seen[ce.cycle] = true;
            id_of[gid] = ce.cycle;
        } else if id_of[gid] != ce.cycle {
            return Err(reject('a', format!("cycle through edge {} has two ids", ce.edge)));
        }
    }
    Ok(())
}

/// Text of the per-blob certificates, one section per blob.
pub fn certificates_text(certs: &[Option<Certificate>]) -> String {
    let mut out = String::new();
    for (b, c) in certs.iter().enumerate() {
        if let Some(c) = c {
            let _ = write!(out, "# blob {b}\n{c}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_three_components, brute_two_cuts, edge_connectivity, random_2ec, random_3ec, two_k4};

    pub(crate) fn ring9() -> MultiGraph {
        let mut e: Vec<_> = (0..8).map(|i| (i, i + 1)).collect();
        e.extend([(1, 4), (1, 5), (4, 5), (2, 3), (2, 3), (6, 7), (6, 7), (0, 8), (0, 8)]);
        MultiGraph::new(9, e)
    }

    fn cycle(n: usize) -> MultiGraph {
        MultiGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    fn sorted_blobs(cx: &Cactus) -> Vec<Vec<VertexId>> {
        let mut b = cx.blobs.clone();
        b.sort();
        b
    }

    #[test]
    fn nested_span_blocks() {
        let path = ChainPath { vertices: (1..=15).collect(), edges: (1..=15).collect() };
        let spans = [(2, 4), (6, 8), (9, 14), (10, 11), (12, 13)];
        let blocks: Vec<Vec<usize>> =
            cut_blocks(&spans).iter().map(|b| block_edges(&path, &spans, b)).collect();
        // edge j joins positions j and j + 1
        assert_eq!(blocks, vec![vec![1, 4], vec![5, 8, 14], vec![9, 11, 13]]);
        assert!(cut_blocks(&[]).is_empty());
    }

    #[test]
    fn ring9_cactus() {
        let g = ring9();
        let cx = build_cactus(&g).unwrap();
        assert_eq!(sorted_blobs(&cx), vec![vec![0, 8], vec![1, 4, 5], vec![2, 3], vec![6, 7]]);
        let mut cyc = cx.cycle_edges();
        for c in &mut cyc {
            c.sort();
        }
        cyc.sort();
        // a, f, h and b, d
        assert_eq!(cyc, vec![vec![0, 5, 7], vec![1, 3]]);
        let mut blocks: Vec<Vec<EdgeId>> = all_cut_blocks(&g).unwrap().into_iter().map(|b| b.edges).collect();
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 5, 7], vec![1, 3]]);
        assert_eq!(cx.cut_pairs(), brute_two_cuts(&g));
        let certs = blob_certificates(&g, &cx);
        assert_eq!(verify_cactus(&g, &cx, &certs), Ok(()));
    }

    #[test]
    fn three_ec_single_blob() {
        let g = random_3ec(9, 4);
        let cx = build_cactus(&g).unwrap();
        assert_eq!(cx.blobs, vec![(0..9).collect::<Vec<_>>()]);
        assert!(cx.cedges.is_empty());
        let certs = blob_certificates(&g, &cx);
        assert_eq!(verify_cactus(&g, &cx, &certs), Ok(()));
    }

    #[test]
    fn five_cycle() {
        let g = cycle(5);
        let cx = build_cactus(&g).unwrap();
        assert_eq!(cx.blobs.len(), 5);
        assert_eq!(cx.cycles, 1);
        assert_eq!(cx.cedges.len(), 5);
        assert_eq!(cx.cut_pairs(), brute_two_cuts(&g));
    }

    #[test]
    fn two_k4_components() {
        let g = two_k4();
        let cx = build_cactus(&g).unwrap();
        assert_eq!(three_edge_components(&cx), brute_three_components(&g));
        let certs = blob_certificates(&g, &cx);
        assert_eq!(verify_cactus(&g, &cx, &certs), Ok(()));
        let mut moved = cx.clone();
        let v = moved.blobs[0].pop().unwrap();
        moved.blobs[1].push(v);
        assert_eq!(verify_cactus(&g, &moved, &certs).unwrap_err().check, 'c');
    }

    #[test]
    fn random_matches_brute_force() {
        for seed in 0..300u64 {
            let g = random_2ec(3 + seed as usize % 10, seed);
            assert!(edge_connectivity(&g) >= 2, "seed {seed}");
            let cx = build_cactus(&g).unwrap();
            assert_eq!(cx.cut_pairs(), brute_two_cuts(&g), "seed {seed}");
            assert_eq!(sorted_blobs(&cx), brute_three_components(&g), "seed {seed}");
            let certs = blob_certificates(&g, &cx);
            assert_eq!(verify_cactus(&g, &cx, &certs), Ok(()), "seed {seed}");
        }
    }

    #[test]
    fn text_format() {
        let cx = build_cactus(&two_k4()).unwrap();
        assert_eq!(cx.to_text(), "blob 0: 0 1 2 3\nblob 1: 4 5 6 7\ncedge 0 1 12 0\ncedge 0 1 13 0\n");
    }

    #[test]
    fn not_2ec() {
        let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(matches!(build_cactus(&g), Err(CactusError::NotTwoEdgeConnected(Certificate::Bridge(3)))));
    }
}
