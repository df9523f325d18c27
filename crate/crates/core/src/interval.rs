//! Interval representations, the endpoint sweep and the layer decomposition
//! the dynamic program runs over.
//!
//! Cut indices are 1-based throughout (`cuts[0]` is `C_1`), matching the
//! sweep positions `1..=2n` of a normalized representation.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Closed interval with integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn new(left: i64, right: i64) -> Result<Interval> {
        if left > right {
            return Err(Error::Input(format!(
                "interval [{left}, {right}] has left > right"
            )));
        }
        Ok(Interval { left, right })
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }
}

/// One interval per vertex, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalRepresentation {
    intervals: Vec<Interval>,
}

impl IntervalRepresentation {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(bad) = intervals.iter().find(|iv| iv.left > iv.right) {
            return Err(Error::Input(format!(
                "interval [{}, {}] has left > right",
                bad.left, bad.right
            )));
        }
        Ok(IntervalRepresentation { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn get(&self, v: VertexId) -> Interval {
        self.intervals[v]
    }

    /// Intervals of `keep`, renumbered in order.
    pub fn restrict(&self, keep: &VertexSet) -> IntervalRepresentation {
        IntervalRepresentation {
            intervals: keep.iter().map(|v| self.intervals[v]).collect(),
        }
    }

    /// Intersection graph, by pairwise comparison.
    pub fn intersection_graph(&self, names: Vec<String>) -> Result<Graph> {
        let n = self.intervals.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.intervals[u].intersects(&self.intervals[v]) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(names, edges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndKind {
    Left,
    Right,
}

/// Representation over the grid `1..=2n` with pairwise distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedRepresentation {
    left: Vec<usize>,
    right: Vec<usize>,
    /// `endpoints[p - 1]` is the endpoint sitting at position `p`.
    endpoints: Vec<(VertexId, EndKind)>,
}

impl NormalizedRepresentation {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn left(&self, v: VertexId) -> usize {
        self.left[v]
    }

    pub fn right(&self, v: VertexId) -> usize {
        self.right[v]
    }

    pub fn endpoints(&self) -> &[(VertexId, EndKind)] {
        &self.endpoints
    }

    pub fn to_representation(&self) -> IntervalRepresentation {
        IntervalRepresentation {
            intervals: (0..self.len())
                .map(|v| Interval {
                    left: self.left[v] as i64,
                    right: self.right[v] as i64,
                })
                .collect(),
        }
    }
}

/// Rank-transforms all endpoints onto `1..=2n`. At equal coordinates left
/// endpoints come before right endpoints, then lower vertex ids first, so
/// touching closed intervals stay adjacent.
pub fn normalize(rep: &IntervalRepresentation) -> NormalizedRepresentation {
    let n = rep.len();
    let mut events: Vec<(i64, EndKind, VertexId)> = Vec::with_capacity(2 * n);
    for (v, iv) in rep.intervals.iter().enumerate() {
        events.push((iv.left, EndKind::Left, v));
        events.push((iv.right, EndKind::Right, v));
    }
    events.sort_unstable();
    let mut left = vec![0; n];
    let mut right = vec![0; n];
    let mut endpoints = Vec::with_capacity(2 * n);
    for (i, &(_, kind, v)) in events.iter().enumerate() {
        match kind {
            EndKind::Left => left[v] = i + 1,
            EndKind::Right => right[v] = i + 1,
        }
        endpoints.push((v, kind));
    }
    NormalizedRepresentation {
        left,
        right,
        endpoints,
    }
}

/// Intersection graph of a normalized representation, via an endpoint sweep.
pub fn realize_graph(rep: &NormalizedRepresentation, names: Vec<String>) -> Result<Graph> {
    let mut open: Vec<VertexId> = Vec::new();
    let mut edges = Vec::new();
    for &(v, kind) in &rep.endpoints {
        match kind {
            EndKind::Left => {
                edges.extend(open.iter().map(|&u| (u.min(v), u.max(v))));
                open.push(v);
            }
            EndKind::Right => open.retain(|&u| u != v),
        }
    }
    Graph::new(names, edges)
}

/// The sets `C_i` of vertices whose interval contains `[x_i, x_{i+1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutStructure {
    /// Endpoint positions `x_1 < … < x_{2n}`; after normalization `x_i = i`.
    pub endpoints: Vec<usize>,
    /// `cuts[i - 1] = C_i` for `i` in `1..=2n-1`.
    pub cuts: Vec<VertexSet>,
    pub counts: Vec<usize>,
}

impl CutStructure {
    /// `C_i`, 1-based.
    pub fn cut(&self, i: usize) -> &VertexSet {
        &self.cuts[i - 1]
    }

    /// `c_i`, 1-based.
    pub fn count(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Interior indices `i` with `c_i < min(c_{i-1}, c_{i+1})`.
    pub fn local_minima(&self) -> Vec<usize> {
        let m = self.counts.len();
        (2..m)
            .filter(|&i| {
                let c = self.count(i);
                c < self.count(i - 1) && c < self.count(i + 1)
            })
            .collect()
    }
}

pub fn compute_cut_structure(rep: &NormalizedRepresentation) -> CutStructure {
    let m = rep.endpoints.len();
    let mut open: Vec<VertexId> = Vec::new();
    let mut cuts = Vec::with_capacity(m.saturating_sub(1));
    for &(v, kind) in rep.endpoints.iter().take(m.saturating_sub(1)) {
        match kind {
            EndKind::Left => open.push(v),
            EndKind::Right => open.retain(|&u| u != v),
        }
        cuts.push(open.iter().copied().collect::<VertexSet>());
    }
    let counts = cuts.iter().map(VertexSet::len).collect();
    CutStructure {
        endpoints: (1..=m).collect(),
        cuts,
        counts,
    }
}

/// One layer `i` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    /// Cut index `j_i` closing this layer.
    pub end: usize,
    /// `V_i = C_1 ∪ … ∪ C_{j_i}`.
    pub prefix: VertexSet,
    /// `B_i = C_{j_i}`.
    pub boundary: VertexSet,
    /// `∂V_i = (V_i \ V_{i-1}) ∪ B_{i-1}`, and `∂V_1 = V_1`.
    pub slice: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub t: usize,
    pub layers: Vec<Layer>,
}

impl Decomposition {
    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layer_ends(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.end).collect()
    }

    /// Layer `i`, 1-based.
    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i - 1]
    }
}

pub fn compute_decomposition(cuts: &CutStructure, t: usize) -> Decomposition {
    let m = cuts.counts.len();
    let mut ends: Vec<usize> = (2..m)
        .filter(|&i| {
            let c = cuts.count(i);
            c < cuts.count(i - 1) && c < cuts.count(i + 1) && c < t
        })
        .collect();
    if m > 0 {
        ends.push(m);
    }

    let mut layers: Vec<Layer> = Vec::with_capacity(ends.len());
    let mut covered = VertexSet::new();
    let mut next_cut = 1;
    for &end in &ends {
        let fresh: VertexSet = (next_cut..=end)
            .flat_map(|i| cuts.cut(i).iter())
            .filter(|&v| !covered.contains(v))
            .collect();
        next_cut = end + 1;
        let prefix = covered.union(&fresh);
        let slice = match layers.last() {
            Some(prev) => fresh.union(&prev.boundary),
            None => prefix.clone(),
        };
        layers.push(Layer {
            end,
            prefix: prefix.clone(),
            boundary: cuts.cut(end).clone(),
            slice,
        });
        covered = prefix;
    }
    Decomposition { t, layers }
}

fn connected_without(graph: &Graph, removed: &[bool]) -> bool {
    let n = graph.order();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut reached = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached + removed.iter().filter(|&&r| r).count() == n
}

fn joins(graph: &Graph, removed: &[bool], u: VertexId, v: VertexId) -> bool {
    let mut seen = removed.to_vec();
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return true;
        }
        for &w in graph.neighbors(x) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

pub const CUT_ENUMERATION_LIMIT: usize = 12;
pub const CONNECTIVITY_ENUMERATION_LIMIT: usize = 16;

/// All minimal vertex cuts, by subset enumeration: sets `S` such that some
/// pair `u, v` outside `S` is disconnected by `S` but reconnected by putting
/// back any single vertex of `S`.
pub fn minimal_vertex_cuts_bruteforce(graph: &Graph) -> Result<Vec<VertexSet>> {
    let n = graph.order();
    if n > CUT_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: CUT_ENUMERATION_LIMIT,
        });
    }
    let mut found = Vec::new();
    for mask in 0u32..(1 << n) {
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let members: Vec<VertexId> = (0..n).filter(|&v| removed[v]).collect();
        let separates = (0..n).filter(|&u| !removed[u]).any(|u| {
            (u + 1..n).filter(|&v| !removed[v]).any(|v| {
                if joins(graph, &removed, u, v) {
                    return false;
                }
                members.iter().all(|&s| {
                    let mut back = removed.clone();
                    back[s] = false;
                    joins(graph, &back, u, v)
                })
            })
        });
        if separates {
            found.push(members.into_iter().collect::<VertexSet>());
        }
    }
    found.sort();
    Ok(found)
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[VertexId]) -> bool) -> bool {
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        visit: &mut dyn FnMut(&[VertexId]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            let keep_going = rec(n, k, v + 1, cur, visit);
            cur.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut visit)
}

/// True iff the graph has more than `t` vertices and no set of fewer than
/// `t` vertices disconnects it.
pub fn is_t_connected(graph: &Graph, t: usize) -> Result<bool> {
    let n = graph.order();
    if n <= t {
        return Ok(false);
    }
    if t >= 3 && n > CONNECTIVITY_ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: CONNECTIVITY_ENUMERATION_LIMIT,
        });
    }
    for size in 0..t {
        let all_connected = combinations(n, size, |cut| {
            let mut removed = vec![false; n];
            for &v in cut {
                removed[v] = true;
            }
            connected_without(graph, &removed)
        });
        if !all_connected {
            return Ok(false);
        }
    }
    Ok(true)
}
