//! Reference algorithm: keep a queue of addable chains and add them one at a
//! time, splitting links as vertices turn into branch vertices.

use std::collections::VecDeque;

use crate::cert::{Certificate, MaderPath};
use crate::chains::ChainDecomposition;
use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::linear::{initial_k23, prepare};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Inactive,
    NonBranch,
    Branch,
}

#[derive(Clone, Copy, Debug)]
struct Link {
    head: VertexId,
    tail: VertexId,
    first_edge: EdgeId,
    last_edge: EdgeId,
}

struct Greedy<'a> {
    cd: &'a ChainDecomposition,
    state: Vec<State>,
    link_of: Vec<usize>,
    prev: Vec<VertexId>,
    next: Vec<VertexId>,
    /// Edge from `v` to `next[v]`.
    edge_next: Vec<EdgeId>,
    links: Vec<Link>,
    waiting: Vec<Vec<usize>>,
    child_start: Vec<usize>,
    children: Vec<usize>,
    in_gc: Vec<bool>,
    queued: Vec<bool>,
    queue: VecDeque<usize>,
    order: Vec<usize>,
    steps: u64,
}

impl<'a> Greedy<'a> {
    fn new(cd: &'a ChainDecomposition) -> Self {
        let (n, k) = (cd.n(), cd.len());
        let mut child_start = vec![0; k + 1];
        for c in &cd.chains[1..] {
            child_start[c.parent.unwrap() + 1] += 1;
        }
        for j in 0..k {
            child_start[j + 1] += child_start[j];
        }
        let mut fill = child_start.clone();
        let mut children = vec![0; k.saturating_sub(1)];
        for c in &cd.chains[1..] {
            let p = c.parent.unwrap();
            children[fill[p]] = c.index;
            fill[p] += 1;
        }
        Greedy {
            cd,
            state: vec![State::Inactive; n],
            link_of: vec![NONE; n],
            prev: vec![NONE; n],
            next: vec![NONE; n],
            edge_next: vec![NONE; n],
            links: Vec::new(),
            waiting: vec![Vec::new(); n],
            child_start,
            children,
            in_gc: vec![false; k],
            queued: vec![false; k],
            queue: VecDeque::new(),
            order: Vec::with_capacity(k),
            steps: 0,
        }
    }

    fn addable(&self, c: usize) -> bool {
        let ch = &self.cd.chains[c];
        let (s, t) = (ch.src, ch.dst);
        self.state[s] == State::Branch
            || self.state[t] == State::Branch
            || self.link_of[s] != self.link_of[t]
    }

    fn enqueue(&mut self, c: usize) {
        if !self.queued[c] && !self.in_gc[c] {
            self.queued[c] = true;
            self.queue.push_back(c);
        }
    }

    fn add_chain(&mut self, c: usize) {
        let cd = self.cd;
        let ch = &cd.chains[c];
        for v in [ch.src, ch.dst] {
            match self.state[v] {
                State::NonBranch => self.make_branch(v),
                State::Inactive => self.state[v] = State::Branch,
                State::Branch => {}
            }
        }
        let (inner, tree) = (cd.inner(c), cd.tree_edges(c));
        if !inner.is_empty() {
            let id = self.links.len();
            let k = inner.len();
            for (j, &v) in inner.iter().enumerate() {
                self.state[v] = State::NonBranch;
                self.link_of[v] = id;
                self.prev[v] = if j > 0 { inner[j - 1] } else { NONE };
                self.next[v] = if j + 1 < k { inner[j + 1] } else { NONE };
                self.edge_next[v] = tree[j];
            }
            self.links.push(Link { head: inner[0], tail: inner[k - 1], first_edge: ch.back_edge, last_edge: tree[k - 1] });
            self.steps += k as u64;
        }
        self.in_gc[c] = true;
        self.order.push(c);
    }

    /// Queue the children of `c` that are addable; the others wait at both
    /// endpoints.
    fn offer_children(&mut self, c: usize) {
        for j in self.child_start[c]..self.child_start[c + 1] {
            let d = self.children[j];
            self.steps += 1;
            if self.in_gc[d] {
                continue;
            }
            if self.addable(d) {
                self.enqueue(d);
            } else {
                let dc = &self.cd.chains[d];
                self.waiting[dc.src].push(d);
                self.waiting[dc.dst].push(d);
            }
        }
    }

    /// Split the link through `u` at `u`, walking from both ends in
    /// lockstep. The part reached first gets a fresh id; on a tie that is
    /// the part at the head, i.e. the one with larger discovery numbers.
    fn make_branch(&mut self, u: VertexId) {
        let id = self.link_of[u];
        let old = self.links[id];
        let (mut a, mut b) = (old.head, old.tail);
        let head_short = loop {
            self.steps += 1;
            if a == u {
                break true;
            }
            a = self.next[a];
            self.steps += 1;
            if b == u {
                break false;
            }
            b = self.prev[b];
        };
        let (p, q) = (self.prev[u], self.next[u]);
        let head_part =
            (p != NONE).then(|| Link { head: old.head, tail: p, first_edge: old.first_edge, last_edge: self.edge_next[p] });
        let tail_part =
            (q != NONE).then(|| Link { head: q, tail: old.tail, first_edge: self.edge_next[u], last_edge: old.last_edge });
        let (short, long) = if head_short { (head_part, tail_part) } else { (tail_part, head_part) };
        if let Some(l) = long {
            self.links[id] = l;
        }
        let mut moved = Vec::new();
        if let Some(l) = short {
            let nid = self.links.len();
            self.links.push(l);
            let mut v = l.head;
            loop {
                self.steps += 1;
                self.link_of[v] = nid;
                moved.push(v);
                if v == l.tail {
                    break;
                }
                v = self.next[v];
            }
        }
        if p != NONE {
            self.next[p] = NONE;
        }
        if q != NONE {
            self.prev[q] = NONE;
        }
        self.state[u] = State::Branch;
        self.link_of[u] = NONE;
        self.prev[u] = NONE;
        self.next[u] = NONE;

        for c in std::mem::take(&mut self.waiting[u]) {
            self.steps += 1;
            self.enqueue(c);
        }
        for v in moved {
            let mut list = std::mem::take(&mut self.waiting[v]);
            list.retain(|&c| {
                self.steps += 1;
                if self.in_gc[c] || self.queued[c] {
                    return false;
                }
                if self.addable(c) {
                    self.queued[c] = true;
                    self.queue.push_back(c);
                    return false;
                }
                true
            });
            self.waiting[v] = list;
        }
    }
}

/// Outcome of the reference algorithm with its operation count.
#[derive(Clone, Debug)]
pub struct GreedyRun {
    pub certificate: Certificate,
    /// Lockstep walk steps, relabelings and list scans.
    pub steps: u64,
}

pub fn run_greedy(g: &MultiGraph) -> Certificate {
    run_greedy_counted(g, 0).certificate
}

pub fn run_greedy_counted(g: &MultiGraph, root: VertexId) -> GreedyRun {
    let cd = match prepare(g, root) {
        Ok(cd) => cd,
        Err(c) => return GreedyRun { certificate: c, steps: 0 },
    };
    let start = match initial_k23(&cd, false) {
        Ok(gc) => gc.order().to_vec(),
        Err(c) => return GreedyRun { certificate: c, steps: 0 },
    };
    let mut gr = Greedy::new(&cd);
    gr.state[cd.forest.root] = State::Branch;
    // C_1 alone is a loop at the root; nothing is offered before the
    // second chain is in
    gr.add_chain(0);
    gr.add_chain(start[1]);
    gr.offer_children(0);
    gr.offer_children(start[1]);
    while let Some(c) = gr.queue.pop_front() {
        gr.add_chain(c);
        gr.offer_children(c);
    }
    let certificate = if gr.order.len() == cd.len() {
        Certificate::Mader(
            gr.order.iter().map(|&c| MaderPath { chain: c + 1, edges: cd.edges(c) }).collect(),
        )
    } else {
        let v = (0..cd.n()).find(|&v| gr.state[v] == State::NonBranch).expect("a link with an inner vertex");
        let l = gr.links[gr.link_of[v]];
        Certificate::TwoCut(l.first_edge.min(l.last_edge), l.first_edge.max(l.last_edge))
    };
    GreedyRun { certificate, steps: gr.steps }
}
