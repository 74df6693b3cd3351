//! Spanning forest of an interval overlap graph in two stack sweeps.
//!
//! `[a, a']` and `[b, b']` overlap iff `a <= b <= a' <= b'` (or the mirror
//! case). Shared endpoints are resolved by perturbation so that every
//! comparison in the sweeps is strict.

use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: u32,
    pub hi: u32,
    pub tag: usize,
}

impl Interval {
    pub fn new(lo: u32, hi: u32, tag: usize) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, tag }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// Perturbed endpoint, compared lexicographically.
///
/// Left end of `[a, b]` with index `i`: `(a, -1, b - a, i)`.
/// Right end: `(b, 1, a - b, i)`. The length is negated on the right so that
/// of two equal right endpoints the shorter interval's is the larger one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Key(u32, i8, i64, usize);

pub fn perturb_key(iv: &Interval, index: usize, end: End) -> Key {
    let len = (iv.hi - iv.lo) as i64;
    match end {
        End::Left => Key(iv.lo, -1, len, index),
        End::Right => Key(iv.hi, 1, -len, index),
    }
}

/// Whether two intervals overlap under the unperturbed definition. Used as
/// the reference relation in tests.
pub fn overlaps(x: &Interval, y: &Interval) -> bool {
    (x.lo <= y.lo && y.lo <= x.hi && x.hi <= y.hi) || (y.lo <= x.lo && x.lo <= y.hi && y.hi <= x.hi)
}

/// Edges (pairs of indices into `ivs`) connecting each interval to its
/// immediate left and right neighbor. Components of the result equal those
/// of the full overlap graph; at most `2 * ivs.len()` edges.
pub fn spanning_forest(ivs: &[Interval]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    spanning_forest_into(ivs, &mut ForestScratch::default(), &mut out);
    out
}

/// Buffers for [`spanning_forest_into`], kept between calls.
#[derive(Default)]
pub struct ForestScratch {
    by_left: Vec<Rec>,
    by_right: Vec<Rec>,
    rank: Vec<u32>,
    count: Vec<usize>,
    tmp: Vec<Rec>,
    stack: Vec<Rec>,
}

/// [`spanning_forest`] writing into `out` (cleared first).
pub fn spanning_forest_into(ivs: &[Interval], ws: &mut ForestScratch, out: &mut Vec<(usize, usize)>) {
    out.clear();
    let k = ivs.len();
    if k == 0 {
        return;
    }
    out.reserve(2 * k);
    let max = ivs.iter().map(|iv| iv.hi).max().unwrap_or(0) as usize;
    let ForestScratch { by_left, by_right, rank, count, tmp, stack } = ws;
    // ascending perturbed left keys and ascending perturbed right keys; the
    // records travel with the sort so that keys are read in order
    by_left.clear();
    by_left.extend(ivs.iter().enumerate().map(|(i, iv)| Rec { rank: 0, lo: iv.lo, hi: iv.hi, idx: i as u32 }));
    by_right.clear();
    by_right.extend_from_slice(by_left);
    if k * (k.ilog2() as usize + 1) <= max {
        // few intervals on a long range: a comparison sort is cheaper than
        // the bucket arrays
        by_left.sort_unstable_by_key(|r| (r.lo, r.hi, r.idx));
        by_right.sort_unstable_by_key(|r| (r.hi, r.lo, r.idx));
    } else {
        counting_sort(by_left, tmp, count, max, |r| r.len());
        counting_sort(by_left, tmp, count, max, |r| r.lo as usize);
        counting_sort(by_right, tmp, count, max, |r| max - r.len());
        counting_sort(by_right, tmp, count, max, |r| r.hi as usize);
    }
    debug_assert!(by_left.windows(2).all(|w| {
        let (a, b) = (w[0].idx as usize, w[1].idx as usize);
        perturb_key(&ivs[a], a, End::Left) < perturb_key(&ivs[b], b, End::Left)
    }));
    debug_assert!(by_right.windows(2).all(|w| {
        let (a, b) = (w[0].idx as usize, w[1].idx as usize);
        perturb_key(&ivs[a], a, End::Right) < perturb_key(&ivs[b], b, End::Right)
    }));
    // each record carries the rank of its other end
    rank.resize(k, 0);
    for (r, x) in by_left.iter().enumerate() {
        rank[x.idx as usize] = r as u32;
    }
    for x in by_right.iter_mut() {
        x.rank = rank[x.idx as usize];
    }
    for (r, x) in by_right.iter().enumerate() {
        rank[x.idx as usize] = r as u32;
    }
    for x in by_left.iter_mut() {
        x.rank = rank[x.idx as usize];
    }
    // A right end beats a left end at the same position, so key comparisons
    // across the two kinds reduce to `hi >= lo`; within one kind the ranks
    // decide.

    // immediate right neighbors, sweeping left ends from the right
    stack.clear();
    for &r in by_left.iter().rev() {
        while stack.last().is_some_and(|t| r.rank > t.rank) {
            stack.pop();
        }
        if let Some(t) = stack.last() {
            if r.hi >= t.lo {
                out.push((r.idx as usize, t.idx as usize));
            }
        }
        stack.push(r);
    }

    // immediate left neighbors, sweeping right ends from the left
    stack.clear();
    for &r in by_right.iter() {
        while stack.last().is_some_and(|t| r.rank < t.rank) {
            stack.pop();
        }
        if let Some(t) = stack.last() {
            if r.lo <= t.hi {
                out.push((r.idx as usize, t.idx as usize));
            }
        }
        stack.push(r);
    }
}

#[derive(Clone, Copy, Default)]
struct Rec {
    rank: u32,
    lo: u32,
    hi: u32,
    idx: u32,
}

impl Rec {
    fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }
}

/// Stable sort of `items` by `key`, which must not exceed `max`.
fn counting_sort(
    items: &mut Vec<Rec>,
    tmp: &mut Vec<Rec>,
    count: &mut Vec<usize>,
    max: usize,
    key: impl Fn(&Rec) -> usize,
) {
    count.clear();
    count.resize(max + 2, 0);
    for r in items.iter() {
        count[key(r) + 1] += 1;
    }
    for j in 0..=max {
        count[j + 1] += count[j];
    }
    tmp.clear();
    tmp.resize(items.len(), Rec::default());
    for r in items.iter() {
        let c = &mut count[key(r)];
        tmp[*c] = *r;
        *c += 1;
    }
    std::mem::swap(items, tmp);
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Component id per interval, dense from 0 in order of first appearance.
pub fn components(ivs: &[Interval]) -> Vec<usize> {
    let mut uf = UnionFind::new(ivs.len());
    for (a, b) in spanning_forest(ivs) {
        uf.union(a, b);
    }
    dense_labels(&mut uf, ivs.len())
}

pub(crate) fn dense_labels(uf: &mut UnionFind, n: usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    let mut next = 0;
    for (i, slot) in out.iter_mut().enumerate() {
        let r = uf.find(i);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        *slot = label[r];
    }
    out
}
