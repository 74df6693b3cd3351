//! The linear-time certifier: chains are added phase by phase, interlacing
//! paths immediately and nested segments in an order read off the overlap
//! graph of their attachment intervals.

use crate::cert::{Certificate, MaderPath};
use crate::chains::{analyze, analyze_by_discovery, ChainDecomposition, ChainKind};
use crate::graph::{min_degree_screen, EdgeId, MultiGraph, VertexId};
use crate::intervals::{spanning_forest_into, ForestScratch, Interval};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexState {
    Inactive,
    NonBranch,
    Branch,
}

/// The union `G_c` of the chains added so far.
#[derive(Clone, Debug)]
pub struct CurrentGraph {
    in_gc: Vec<bool>,
    branch: Vec<bool>,
    active: Vec<bool>,
    order: Vec<usize>,
}

impl CurrentGraph {
    fn empty(cd: &ChainDecomposition) -> Self {
        CurrentGraph {
            in_gc: vec![false; cd.len()],
            branch: vec![false; cd.n()],
            active: vec![false; cd.n()],
            order: Vec::with_capacity(cd.len()),
        }
    }

    pub fn contains(&self, c: usize) -> bool {
        self.in_gc[c]
    }

    pub fn is_branch(&self, v: VertexId) -> bool {
        self.branch[v]
    }

    pub fn vertex_state(&self, v: VertexId) -> VertexState {
        if self.branch[v] {
            VertexState::Branch
        } else if self.active[v] {
            VertexState::NonBranch
        } else {
            VertexState::Inactive
        }
    }

    /// Chain indices in the order they were added.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_complete(&self) -> bool {
        self.order.len() == self.in_gc.len()
    }

    /// Add chain `c`: its endpoints become branch vertices and its inner
    /// vertices form a new link.
    pub fn add_chain(&mut self, cd: &ChainDecomposition, c: usize) {
        debug_assert!(!self.in_gc[c]);
        let ch = &cd.chains[c];
        debug_assert!(ch.parent.is_none_or(|p| self.in_gc[p]), "chain {} added before its parent", ch.id());
        self.in_gc[c] = true;
        self.order.push(c);
        self.branch[ch.src] = true;
        self.branch[ch.dst] = true;
        self.active[ch.src] = true;
        self.active[ch.dst] = true;
        for &v in cd.inner(c) {
            self.active[v] = true;
        }
    }

    /// The links of `G_c` as vertex sequences from branch vertex to branch
    /// vertex. Computed from scratch.
    pub fn links(&self, g: &MultiGraph, cd: &ChainDecomposition) -> Vec<Vec<VertexId>> {
        let mut in_edge = vec![false; g.m()];
        for &c in &self.order {
            for e in cd.edges(c) {
                in_edge[e] = true;
            }
        }
        let mut used = vec![false; g.m()];
        let mut out = Vec::new();
        for b in (0..cd.n()).filter(|&v| self.branch[v]) {
            for &(mut x, e) in g.neighbors(b) {
                if !in_edge[e] || used[e] {
                    continue;
                }
                used[e] = true;
                let mut link = vec![b, x];
                while !self.branch[x] {
                    let &(y, f) = g
                        .neighbors(x)
                        .iter()
                        .find(|&&(_, f)| in_edge[f] && !used[f])
                        .expect("non-branch vertex of degree two");
                    used[f] = true;
                    link.push(y);
                    x = y;
                }
                out.push(link);
            }
        }
        out
    }
}

/// The vertices of chain `C_i` by position: position 1 is `t(C_i)`, the
/// positions increase toward the head of the back-edge. `edges[j - 1]` joins
/// positions `j` and `j + 1`; the last entry is the back-edge, which leads
/// from position `len` to `s(C_i)`.
#[derive(Clone, Debug)]
pub struct ChainPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl ChainPath {
    pub fn of(cd: &ChainDecomposition, i: usize) -> Self {
        let ch = &cd.chains[i];
        let mut vertices = Vec::with_capacity(ch.len());
        vertices.push(ch.dst);
        vertices.extend(cd.inner(i).iter().rev());
        let mut edges: Vec<EdgeId> = Vec::with_capacity(ch.len());
        edges.extend(cd.tree_edges(i).iter().rev());
        edges.push(ch.back_edge);
        ChainPath { vertices, edges }
    }

    pub fn len(&self) -> u32 {
        self.vertices.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex(&self, pos: u32) -> VertexId {
        self.vertices[pos as usize - 1]
    }

    /// Edge between positions `j` and `j + 1` (the back-edge for `j = len`).
    pub fn edge(&self, j: u32) -> EdgeId {
        self.edges[j as usize - 1]
    }
}

/// Not-yet-added chains of one phase that share their minimal chain, which
/// is nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub root_chain: usize,
    /// Parents come before their children.
    pub members: Vec<usize>,
    /// Ascending, distinct positions on the current chain.
    pub attachments: Vec<u32>,
}

/// Intervals for Part II: per segment with attachments `a_0 < ... < a_k`
/// the intervals `[a_0, a_l]` and `[a_l, a_k]`, tagged with segment index
/// plus one; `[0, v]` with tag 0 for every branch position `v`.
pub fn attachment_intervals(segments: &[Segment], branch: &[u32]) -> Vec<Interval> {
    intervals_of(segments.iter().map(|s| s.attachments.as_slice()), branch)
}

fn intervals_of<'s>(attachments: impl Iterator<Item = &'s [u32]> + Clone, branch: &[u32]) -> Vec<Interval> {
    let total: usize = attachments.clone().map(|a| 2 * a.len()).sum();
    let mut ivs = Vec::with_capacity(total + branch.len());
    for (s, a) in attachments.enumerate() {
        let k = a.len() - 1;
        if k == 0 {
            ivs.push(Interval::new(a[0], a[0], s + 1));
        }
        for l in 1..=k {
            ivs.push(Interval::new(a[0], a[l], s + 1));
        }
        for l in 1..k {
            ivs.push(Interval::new(a[l], a[k], s + 1));
        }
    }
    ivs.extend(branch.iter().map(|&v| Interval::new(0, v, 0)));
    ivs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentOrder {
    /// Every segment reaches `R`; preorder from `R`.
    Connected(Vec<usize>),
    /// Preorder of the component of `R`, and the other components.
    Split { reachable: Vec<usize>, stuck: Vec<Vec<usize>> },
}

/// Contract the overlap forest of `ivs` onto segment tags and traverse it
/// from `R`.
pub fn order_segments(ivs: &[Interval], nseg: usize) -> SegmentOrder {
    order_segments_in(ivs, nseg, &mut OrderScratch::default())
}

/// Buffers for [`order_segments_in`], kept between phases.
#[derive(Default)]
struct OrderScratch {
    forest: ForestScratch,
    pairs: Vec<(usize, usize)>,
    start: Vec<usize>,
    adj: Vec<usize>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

fn order_segments_in(ivs: &[Interval], nseg: usize, ws: &mut OrderScratch) -> SegmentOrder {
    let OrderScratch { forest, pairs, start, adj, seen, stack } = ws;
    spanning_forest_into(ivs, forest, pairs);
    for p in pairs.iter_mut() {
        *p = (ivs[p.0].tag, ivs[p.1].tag);
    }
    pairs.retain(|(a, b)| a != b);
    start.clear();
    start.resize(nseg + 3, 0);
    for &(a, b) in pairs.iter() {
        start[a + 1] += 1;
        start[b + 1] += 1;
    }
    for t in 0..=nseg {
        start[t + 1] += start[t];
    }
    start[nseg + 2] = start[nseg + 1];
    adj.clear();
    adj.resize(2 * pairs.len(), 0);
    // fill from the back so that `start` ends up at the bucket starts
    for &(a, b) in pairs.iter().rev() {
        start[a + 1] -= 1;
        adj[start[a + 1]] = b;
        start[b + 1] -= 1;
        adj[start[b + 1]] = a;
    }
    let (start, adj) = (&start[1..], &adj[..]);
    let nbrs = |x: usize| &adj[start[x]..start[x + 1]];
    seen.clear();
    seen.resize(nseg + 1, false);
    let mut pre = Vec::with_capacity(nseg);
    stack.clear();
    stack.push(0);
    while let Some(x) = stack.pop() {
        if seen[x] {
            continue;
        }
        seen[x] = true;
        if x != 0 {
            pre.push(x - 1);
        }
        stack.extend(nbrs(x).iter().rev().filter(|&&y| !seen[y]));
    }
    if pre.len() == nseg {
        return SegmentOrder::Connected(pre);
    }
    let mut comp = vec![NONE; nseg + 1];
    let mut stuck: Vec<Vec<usize>> = Vec::new();
    for t in 1..=nseg {
        if seen[t] {
            continue;
        }
        if comp[t] == NONE {
            let c = stuck.len();
            stuck.push(Vec::new());
            comp[t] = c;
            stack.push(t);
            while let Some(x) = stack.pop() {
                for &y in nbrs(x) {
                    if comp[y] == NONE {
                        comp[y] = c;
                        stack.push(y);
                    }
                }
            }
        }
        stuck[comp[t]].push(t - 1);
    }
    SegmentOrder::Split { reachable: pre, stuck }
}

/// Smallest and largest attachment over a set of segments.
pub fn span(segments: &[Segment], comp: &[usize]) -> (u32, u32) {
    span_of(|s| segments[s].attachments.as_slice(), comp)
}

fn span_of<'s>(attachments: impl Fn(usize) -> &'s [u32], comp: &[usize]) -> (u32, u32) {
    let lo = comp.iter().map(|&s| attachments(s)[0]).min().unwrap();
    let hi = comp.iter().map(|&s| *attachments(s).last().unwrap()).max().unwrap();
    (lo, hi)
}

/// The 2-edge-cut cutting off positions `x..=y` of the chain: the tree edge
/// above `x` and the edge leaving `y` toward `s(C_i)`.
pub fn extract_cut(path: &ChainPath, x: u32, y: u32) -> Certificate {
    debug_assert!(2 <= x && x <= y && y <= path.len());
    cut(path.edge(x - 1), path.edge(y))
}

fn cut(a: EdgeId, b: EdgeId) -> Certificate {
    Certificate::TwoCut(a.min(b), a.max(b))
}

/// Pick the second chain and build `G_c = C_1 ∪ C_2`.
///
/// The second chain is the first one leaving the root whose target lies
/// strictly inside the subtree holding `C_1`; usually this is `C_2`. If there
/// is none, the first subtree of the root hangs on one back-edge and the
/// tree edge plus that back-edge are returned as a cut; with `partial` set,
/// `G_c = C_1` is returned instead.
pub fn initial_k23(cd: &ChainDecomposition, partial: bool) -> Result<CurrentGraph, Certificate> {
    let f = &cd.forest;
    let r = f.root;
    let mut gc = CurrentGraph::empty(cd);
    let c1 = &cd.chains[0];
    let top = *cd.inner(0).last().expect("first chain has inner vertices");
    gc.add_chain(cd, 0);
    let second = cd.chains[1..]
        .iter()
        .take_while(|c| c.src == r)
        .find(|c| c.dst != r && f.is_ancestor(top, c.dst))
        .map(|c| c.index);
    match second {
        Some(c) => {
            gc.add_chain(cd, c);
            Ok(gc)
        }
        None if partial => Ok(gc),
        None => Err(cut(f.raw_parent_edge(top), c1.back_edge)),
    }
}

/// Phase bookkeeping shared by the stopping and the continuing mode.
struct Engine<'a> {
    cd: &'a ChainDecomposition,
    gc: CurrentGraph,
    src_start: Vec<usize>,
    src_list: Vec<usize>,
    marker: Vec<usize>,
    pos: Vec<u32>,
    next_seg: usize,
    // buffers reused across phases
    walk: Vec<usize>,
    mem: Vec<(usize, usize)>,
    att: Vec<(usize, u32)>,
    order: OrderScratch,
}

impl<'a> Engine<'a> {
    fn new(cd: &'a ChainDecomposition, gc: CurrentGraph) -> Self {
        let k = cd.len();
        let mut src_start = vec![0; k + 1];
        for c in &cd.chains[1..] {
            src_start[cd.sbelongs(c.src).unwrap() + 1] += 1;
        }
        for j in 0..k {
            src_start[j + 1] += src_start[j];
        }
        let mut fill = src_start.clone();
        let mut src_list = vec![0; k.saturating_sub(1)];
        for c in &cd.chains[1..] {
            let j = cd.sbelongs(c.src).unwrap();
            src_list[fill[j]] = c.index;
            fill[j] += 1;
        }
        Engine {
            cd,
            gc,
            src_start,
            src_list,
            marker: vec![NONE; k],
            pos: vec![0; cd.n()],
            next_seg: 0,
            walk: Vec::new(),
            mem: Vec::new(),
            att: Vec::new(),
            order: OrderScratch::default(),
        }
    }

    fn sourced_on(&self, i: usize) -> &[usize] {
        &self.src_list[self.src_start[i]..self.src_start[i + 1]]
    }

    fn collect_segments(&mut self, i: usize, len: u32) -> (SegmentSet, Vec<usize>) {
        let cd = self.cd;
        let base = self.next_seg;
        let mut roots = Vec::new();
        let mut mem = std::mem::take(&mut self.mem);
        let mut att = std::mem::take(&mut self.att);
        let mut walk = std::mem::take(&mut self.walk);
        mem.clear();
        att.clear();
        let mut added = Vec::new();
        for k in self.src_start[i]..self.src_start[i + 1] {
            let d = self.src_list[k];
            if self.gc.in_gc[d] || self.marker[d] != NONE && self.marker[d] >= base {
                continue;
            }
            walk.clear();
            walk.push(d);
            let stop = loop {
                let p = cd.chains[*walk.last().unwrap()].parent.unwrap();
                if self.gc.in_gc[p] || self.marker[p] != NONE && self.marker[p] >= base {
                    break p;
                }
                walk.push(p);
            };
            let root = *walk.last().unwrap();
            let seg = if self.gc.in_gc[stop] {
                if cd.chains[root].kind != ChainKind::Nested {
                    for &c in walk.iter().rev() {
                        self.gc.add_chain(cd, c);
                        added.push(c);
                    }
                    continue;
                }
                roots.push(root);
                self.attach(&mut att, roots.len() - 1, cd.chains[root].dst);
                roots.len() - 1
            } else {
                self.marker[stop] - base
            };
            for &c in walk.iter().rev() {
                self.marker[c] = base + seg;
                mem.push((seg, c));
                self.attach(&mut att, seg, cd.chains[c].src);
            }
        }
        self.next_seg = base + roots.len();
        let nseg = roots.len();
        let (mem_start, members) = bucket(&mem, nseg, |&(s, _)| s);
        let a = att.len();
        if a * (a.max(1).ilog2() as usize + 1) <= len as usize {
            // few attachments on a long chain
            att.sort_unstable();
        } else {
            att = bucket(&att, len as usize + 1, |&(_, p)| p as usize).1;
            att = bucket(&att, nseg, |&(s, _)| s).1;
        }
        let mut att_start = vec![0; nseg + 1];
        let mut atts = Vec::with_capacity(att.len());
        for (j, &(s, p)) in att.iter().enumerate() {
            if j == 0 || att[j - 1] != (s, p) {
                atts.push(p);
            }
            att_start[s + 1] = atts.len();
        }
        for s in 0..nseg {
            att_start[s + 1] = att_start[s + 1].max(att_start[s]);
        }
        self.mem = mem;
        self.att = att;
        self.walk = walk;
        let members = members.into_iter().map(|(_, c)| c).collect();
        (SegmentSet { roots, mem_start, members, att_start, atts }, added)
    }

    fn attach(&self, att: &mut Vec<(usize, u32)>, seg: usize, v: VertexId) {
        let p = self.pos[v];
        debug_assert!(p != 0 || !self.gc.active[v], "attachment {v} off the current chain");
        if p != 0 {
            att.push((seg, p));
        }
    }

    fn add_segment(&mut self, set: &SegmentSet, s: usize) {
        for &c in set.members(s) {
            self.gc.add_chain(self.cd, c);
        }
    }

    /// One phase. Returns the spans of the components that cannot reach a
    /// branch vertex; in stopping mode the first such component becomes a
    /// certificate instead.
    fn phase(&mut self, i: usize, go_on: bool) -> Result<Vec<(u32, u32)>, Certificate> {
        assert!(self.gc.in_gc[i], "chain {} not added before its phase", i + 1);
        if self.sourced_on(i).iter().all(|&c| self.gc.in_gc[c]) {
            return Ok(Vec::new());
        }
        let path = ChainPath::of(self.cd, i);
        for (k, &v) in path.vertices.iter().enumerate() {
            self.pos[v] = k as u32 + 1;
        }
        let (set, _) = self.collect_segments(i, path.len());
        let nseg = set.len();
        let mut spans = Vec::new();
        let mut result = Ok(());
        if nseg > 0 {
            let branch: Vec<u32> = (1..=path.len()).filter(|&p| self.gc.branch[path.vertex(p)]).collect();
            let ivs = intervals_of((0..nseg).map(|s| set.attachments(s)), &branch);
            match order_segments_in(&ivs, nseg, &mut self.order) {
                SegmentOrder::Connected(order) => {
                    for s in order {
                        self.add_segment(&set, s);
                    }
                }
                SegmentOrder::Split { reachable, stuck } => {
                    if go_on {
                        for s in reachable {
                            self.add_segment(&set, s);
                        }
                        let mut rest: Vec<usize> = stuck.iter().flatten().copied().collect();
                        rest.sort_unstable();
                        for s in rest {
                            self.add_segment(&set, s);
                        }
                        spans = stuck.iter().map(|c| span_of(|s| set.attachments(s), c)).collect();
                    } else {
                        let (x, y) = span_of(|s| set.attachments(s), &stuck[0]);
                        result = Err(extract_cut(&path, x, y));
                    }
                }
            }
        }
        for &v in &path.vertices {
            self.pos[v] = 0;
        }
        result.map(|_| spans)
    }
}

/// The segments of one phase in flat arrays.
struct SegmentSet {
    roots: Vec<usize>,
    mem_start: Vec<usize>,
    members: Vec<usize>,
    att_start: Vec<usize>,
    atts: Vec<u32>,
}

impl SegmentSet {
    fn len(&self) -> usize {
        self.roots.len()
    }

    fn members(&self, s: usize) -> &[usize] {
        &self.members[self.mem_start[s]..self.mem_start[s + 1]]
    }

    fn attachments(&self, s: usize) -> &[u32] {
        &self.atts[self.att_start[s]..self.att_start[s + 1]]
    }

    #[cfg(test)]
    fn to_segments(&self) -> Vec<Segment> {
        (0..self.len())
            .map(|s| Segment {
                root_chain: self.roots[s],
                members: self.members(s).to_vec(),
                attachments: self.attachments(s).to_vec(),
            })
            .collect()
    }
}

/// Stable counting sort of `items` by `key < nkeys`. Returns the bucket
/// offsets and the sorted items.
fn bucket<T: Copy>(items: &[T], nkeys: usize, key: impl Fn(&T) -> usize) -> (Vec<usize>, Vec<T>) {
    let mut start = vec![0; nkeys + 1];
    for x in items {
        start[key(x) + 1] += 1;
    }
    for j in 0..nkeys {
        start[j + 1] += start[j];
    }
    let mut fill = start.clone();
    let mut out = items.to_vec();
    for x in items {
        let f = &mut fill[key(x)];
        out[*f] = *x;
        *f += 1;
    }
    (start, out)
}

fn mader(cd: &ChainDecomposition, order: &[usize]) -> Certificate {
    Certificate::Mader(
        order.iter().map(|&c| MaderPath { chain: c + 1, edges: cd.edges(c) }).collect(),
    )
}

/// Screen, decompose and check 2-edge-connectivity. `Err` carries the cut or
/// disconnection witness.
pub fn prepare(g: &MultiGraph, root: VertexId) -> Result<ChainDecomposition, Certificate> {
    if g.n() == 0 {
        return Err(Certificate::Disconnected(0));
    }
    if let Some(c) = min_degree_screen(g) {
        return Err(c);
    }
    analyze(g, root)
}

/// Certify `g` with the DFS rooted at vertex 0.
pub fn run(g: &MultiGraph) -> Certificate {
    run_with_root(g, 0)
}

pub fn run_with_root(g: &MultiGraph, root: VertexId) -> Certificate {
    if g.n() == 0 {
        return Certificate::Disconnected(0);
    }
    if let Some(c) = min_degree_screen(g) {
        return c;
    }
    // the certificate names edges only, so vertex names are free
    let cd = match analyze_by_discovery(g, root) {
        Ok(cd) => cd,
        Err(c) => return c,
    };
    certify_decomposition(&cd)
}

/// The phases on an already checked decomposition.
pub fn certify_decomposition(cd: &ChainDecomposition) -> Certificate {
    let gc = match initial_k23(cd, false) {
        Ok(gc) => gc,
        Err(c) => return c,
    };
    let mut eng = Engine::new(cd, gc);
    for i in 0..cd.len() {
        if let Err(c) = eng.phase(i, false) {
            return c;
        }
    }
    debug_assert!(eng.gc.is_complete());
    mader(cd, eng.gc.order())
}

/// Result of running every phase without stopping at cuts.
#[derive(Clone, Debug)]
pub struct AllPhases {
    pub cd: ChainDecomposition,
    pub gc: CurrentGraph,
    /// Cut from a root subtree hanging on one back-edge, if any.
    pub start_cut: Option<Certificate>,
    /// `(chain index, spans)` for every phase that left components without
    /// a branch vertex, in phase order.
    pub spans: Vec<(usize, Vec<(u32, u32)>)>,
}

impl AllPhases {
    pub fn is_3ec(&self) -> bool {
        self.spans.is_empty() && self.start_cut.is_none()
    }

    /// One 2-edge-cut per recorded span.
    pub fn cuts(&self) -> Vec<Certificate> {
        let mut out: Vec<Certificate> = self.start_cut.iter().cloned().collect();
        for (i, sp) in &self.spans {
            let path = ChainPath::of(&self.cd, *i);
            out.extend(sp.iter().map(|&(x, y)| extract_cut(&path, x, y)));
        }
        out
    }

    /// Mader certificate when no cut was seen.
    pub fn certificate(&self) -> Option<Certificate> {
        self.is_3ec().then(|| mader(&self.cd, self.gc.order()))
    }
}

/// Run every phase on a 2-edge-connected graph, recording the spans of all
/// components that cannot reach a branch vertex. Degree-two vertices are
/// allowed. `Err` if `g` is not 2-edge-connected.
pub fn run_all(g: &MultiGraph, root: VertexId) -> Result<AllPhases, Certificate> {
    if g.n() == 0 {
        return Err(Certificate::Disconnected(0));
    }
    let cd = analyze(g, root)?;
    let start_cut = initial_k23(&cd, false).err();
    let gc = initial_k23(&cd, true).expect("partial start never fails");
    let mut eng = Engine::new(&cd, gc);
    let mut spans = Vec::new();
    for i in 0..cd.len() {
        let sp = eng.phase(i, true).expect("continuing phases never fail");
        if !sp.is_empty() {
            spans.push((i, sp));
        }
    }
    let gc = eng.gc;
    Ok(AllPhases { cd, gc, start_cut, spans })
}
