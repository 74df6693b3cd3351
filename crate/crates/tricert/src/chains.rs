use std::fmt::Write as _;

use crate::cert::Certificate;
use crate::graph::{DfsForest, EdgeId, MultiGraph, VertexId};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Cycle,
    Interlacing,
    Nested,
    Unclassified,
}

impl ChainKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainKind::Cycle => "cycle",
            ChainKind::Interlacing => "interlacing",
            ChainKind::Nested => "nested",
            ChainKind::Unclassified => "unclassified",
        }
    }
}

/// A chain: one back-edge followed by tree edges walked toward the root.
/// Chains are indexed from 0 internally; `id()` is the 1-based public id.
#[derive(Clone, Debug)]
pub struct Chain {
    pub index: usize,
    pub src: VertexId,
    pub dst: VertexId,
    pub back_edge: EdgeId,
    pub parent: Option<usize>,
    pub kind: ChainKind,
    /// Range of this chain's tree edges and inner vertices in the flat
    /// arrays of the decomposition.
    start: usize,
    size: usize,
}

impl Chain {
    pub fn id(&self) -> usize {
        self.index + 1
    }

    pub fn len(&self) -> usize {
        1 + self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug)]
pub struct ChainDecomposition {
    pub forest: DfsForest,
    pub chains: Vec<Chain>,
    inner: Vec<VertexId>,
    tree: Vec<EdgeId>,
    sbelongs: Vec<usize>,
    edge_chain: Vec<usize>,
    n: usize,
}

impl ChainDecomposition {
    /// Tree edges of chain `c` from the head of its back-edge up to `dst`.
    pub fn tree_edges(&self, c: usize) -> &[EdgeId] {
        let ch = &self.chains[c];
        &self.tree[ch.start..ch.start + ch.size]
    }

    /// Lower endpoints of the tree edges of chain `c`, same order. These are
    /// the vertices that s-belong to it (plus the root for the first chain).
    pub fn inner(&self, c: usize) -> &[VertexId] {
        let ch = &self.chains[c];
        &self.inner[ch.start..ch.start + ch.size]
    }

    /// All edges of chain `c`, back-edge first.
    pub fn edges(&self, c: usize) -> Vec<EdgeId> {
        let mut v = Vec::with_capacity(self.chains[c].len());
        v.push(self.chains[c].back_edge);
        v.extend_from_slice(self.tree_edges(c));
        v
    }

    /// Index of the chain `v` s-belongs to, if any.
    pub fn sbelongs(&self, v: VertexId) -> Option<usize> {
        (self.sbelongs[v] != NONE).then_some(self.sbelongs[v])
    }

    pub fn edge_chain(&self, e: EdgeId) -> Option<usize> {
        (self.edge_chain[e] != NONE).then_some(self.edge_chain[e])
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// One line per chain: `id s t kind parent: e_back e_1 ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.chains {
            let parent = c.parent.map_or("-".to_string(), |p| (p + 1).to_string());
            let _ = write!(out, "{} {} {} {} {}:", c.id(), c.src, c.dst, c.kind.as_str(), parent);
            for e in self.edges(c.index) {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn decompose(g: &MultiGraph, forest: DfsForest) -> ChainDecomposition {
    let n = g.n();
    let mut visited = vec![false; n];
    let mut sbelongs = vec![NONE; n];
    let mut edge_chain = vec![NONE; g.m()];
    let mut chains: Vec<Chain> = Vec::with_capacity(forest.back_edges().len());
    let mut inner = Vec::with_capacity(n);
    let mut tree = Vec::with_capacity(n);
    let mut bi = 0;
    let backs = forest.back_edges();
    for &v in forest.order() {
        visited[v] = true;
        while bi < backs.len() && backs[bi].0 == v {
            let (_, w, be) = backs[bi];
            bi += 1;
            let index = chains.len();
            edge_chain[be] = index;
            let start = inner.len();
            let mut x = w;
            while !visited[x] {
                visited[x] = true;
                let te = forest.raw_parent_edge(x);
                tree.push(te);
                inner.push(x);
                edge_chain[te] = index;
                sbelongs[x] = index;
                x = forest.raw_parent(x);
            }
            chains.push(Chain {
                index,
                src: v,
                dst: x,
                back_edge: be,
                parent: None,
                kind: if index == 0 { ChainKind::Cycle } else { ChainKind::Unclassified },
                start,
                size: inner.len() - start,
            });
        }
    }
    if !chains.is_empty() {
        sbelongs[forest.root] = 0;
    }
    ChainDecomposition { forest, chains, inner, tree, sbelongs, edge_chain, n }
}

/// `None` iff the graph is connected and the chains partition its edges.
/// Otherwise a disconnection witness, or the tree edge of the earliest
/// discovered vertex whose parent edge lies in no chain.
pub fn check_2ec(cd: &ChainDecomposition) -> Option<Certificate> {
    let f = &cd.forest;
    if cd.n < 2 {
        return Some(Certificate::Disconnected(0));
    }
    if let Some(v) = (0..cd.n).find(|&v| !f.reached(v)) {
        return Some(Certificate::Disconnected(v));
    }
    for &v in f.order() {
        if let Some((_, e)) = f.parent(v) {
            if cd.edge_chain[e] == NONE {
                return Some(Certificate::Bridge(e));
            }
        }
    }
    None
}

/// Set parent pointers for every chain but the first.
pub fn build_parents(cd: &mut ChainDecomposition) {
    for i in 1..cd.chains.len() {
        let t = cd.chains[i].dst;
        let p = cd.sbelongs[t];
        debug_assert!(p != NONE && p < i);
        cd.chains[i].parent = Some(p);
    }
}

/// Interlacing iff `s(P) <= s(C) <= t(P)`, nested iff `t(P) < s(C)`, where
/// `P` is the parent. Requires parents to be set.
pub fn classify(cd: &ChainDecomposition, c: usize) -> ChainKind {
    let ch = &cd.chains[c];
    let p = &cd.chains[ch.parent.expect("classify needs parents")];
    let f = &cd.forest;
    if f.is_ancestor(ch.src, p.dst) && f.is_ancestor(p.src, ch.src) {
        ChainKind::Interlacing
    } else {
        debug_assert!(f.is_ancestor(p.dst, ch.src) && p.dst != ch.src);
        ChainKind::Nested
    }
}

/// Parents plus classification of every chain from the third on.
pub fn build_and_classify(cd: &mut ChainDecomposition) {
    build_parents(cd);
    for i in 2..cd.chains.len() {
        cd.chains[i].kind = classify(cd, i);
    }
}

/// DFS, decomposition, 2-edge-connectivity check, parents and kinds in one
/// call.
pub fn analyze(g: &MultiGraph, root: VertexId) -> Result<ChainDecomposition, Certificate> {
    finish(g, crate::graph::dfs(g, root))
}

/// Like [`analyze`], with every vertex renamed to its discovery index once
/// the DFS spans the graph. Edge ids are kept, so edge-based results carry
/// over; tree paths then mostly run over consecutive ids.
pub fn analyze_by_discovery(g: &MultiGraph, root: VertexId) -> Result<ChainDecomposition, Certificate> {
    let f = crate::graph::dfs(g, root);
    if f.order().len() == g.n() {
        finish(g, f.relabeled())
    } else {
        finish(g, f)
    }
}

fn finish(g: &MultiGraph, f: DfsForest) -> Result<ChainDecomposition, Certificate> {
    let mut cd = decompose(g, f);
    if let Some(c) = check_2ec(&cd) {
        return Err(c);
    }
    build_and_classify(&mut cd);
    Ok(cd)
}
