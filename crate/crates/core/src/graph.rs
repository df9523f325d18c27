//! Graphs, threshold functions and the activation process.
//!
//! Vertices are identified by their position in declaration order, which is
//! also the canonical order used for every deterministic tie-break.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &on)| on.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn max(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut v: Vec<VertexId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Finite simple undirected graph over named vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<VertexId>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("names", &self.names)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting duplicate names, loops, repeated edges and
    /// out-of-range endpoints.
    pub fn new<I>(names: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut index = HashMap::with_capacity(names.len());
        for (v, name) in names.iter().enumerate() {
            if index.insert(name.clone(), v).is_some() {
                return Err(Error::Input(format!("duplicate vertex `{name}`")));
            }
        }
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex `{}`", names[u])));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Input(format!(
                    "repeated edge at vertex `{}`",
                    names[u]
                )));
            }
        }
        Ok(Graph { names, index, adj })
    }

    /// Graph on `n` vertices named `prefix1 … prefixn`.
    pub fn with_prefix<I>(prefix: &str, n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Graph::new((1..=n).map(|i| format!("{prefix}{i}")).collect(), edges)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Resolves vertex names to ids.
    pub fn resolve<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|s| {
                self.id(s.as_ref())
                    .ok_or_else(|| Error::Input(format!("unknown vertex `{}`", s.as_ref())))
            })
            .collect()
    }

    pub fn names_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.names[v].clone()).collect()
    }

    /// Connected components, ordered by their smallest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp.into_iter().collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_clique(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|list| list.len() + 1 == n)
    }

    pub(crate) fn check_members(&self, set: &VertexSet) -> Result<()> {
        match set.max() {
            Some(v) if v >= self.order() => Err(Error::Input(format!(
                "vertex id {v} is not a vertex of a graph of order {}",
                self.order()
            ))),
            _ => Ok(()),
        }
    }
}

/// Subgraph induced by `keep`; vertex `keep[i]` becomes vertex `i`.
pub fn induced_subgraph(graph: &Graph, keep: &VertexSet) -> Result<Graph> {
    graph.check_members(keep)?;
    let mut local = vec![usize::MAX; graph.order()];
    for (i, v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let names = keep.iter().map(|v| graph.names[v].clone()).collect();
    let edges: Vec<_> = keep
        .iter()
        .flat_map(|u| {
            let local = &local;
            graph.adj[u]
                .iter()
                .filter(move |&&w| w > u && local[w] != usize::MAX)
                .map(move |&w| (local[u], local[w]))
        })
        .collect();
    Graph::new(names, edges)
}

/// A graph together with an integer threshold per vertex and a bound `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdedInstance {
    graph: Graph,
    tau: Vec<i64>,
    t: usize,
}

impl ThresholdedInstance {
    /// `t` defaults to the largest threshold (and at least 0).
    pub fn new(graph: Graph, tau: Vec<i64>, t: Option<usize>) -> Result<Self> {
        if tau.len() != graph.order() {
            return Err(Error::Input(format!(
                "{} thresholds given for {} vertices",
                tau.len(),
                graph.order()
            )));
        }
        let t = t.unwrap_or_else(|| tau.iter().copied().max().unwrap_or(0).max(0) as usize);
        Ok(ThresholdedInstance { graph, tau, t })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tau(&self, v: VertexId) -> i64 {
        self.tau[v]
    }

    pub fn thresholds(&self) -> &[i64] {
        &self.tau
    }

    pub fn bound(&self) -> usize {
        self.t
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// Fails with [`Error::BoundViolation`] on the first vertex with `tau > t`.
    pub fn check_bound(&self) -> Result<()> {
        match (0..self.order()).find(|&v| self.tau[v] > self.t as i64) {
            Some(v) => Err(Error::BoundViolation {
                vertex: self.graph.name(v).to_string(),
                tau: self.tau[v],
                bound: self.t,
            }),
            None => Ok(()),
        }
    }

    /// Vertices that can only be activated by seeding them: `tau(u) > deg(u)`.
    pub fn forced_vertices(&self) -> VertexSet {
        (0..self.order())
            .filter(|&v| self.tau[v] > self.graph.degree(v) as i64)
            .collect()
    }

    /// Sub-instance induced by `keep`, with the same bound.
    pub fn restrict(&self, keep: &VertexSet) -> Result<ThresholdedInstance> {
        let graph = induced_subgraph(&self.graph, keep)?;
        let tau = keep.iter().map(|v| self.tau[v]).collect();
        Ok(ThresholdedInstance {
            graph,
            tau,
            t: self.t,
        })
    }
}

/// Seed-first linear order of all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cascade {
    pub order: Vec<VertexId>,
    pub seed: VertexSet,
}

/// Activation closure over an adjacency list.
///
/// `blocked` vertices are treated as absent: never activated and never
/// counted as active neighbors. Seeds must not be blocked.
pub(crate) fn propagate(
    adj: &[Vec<VertexId>],
    tau: &[i64],
    blocked: Option<&[bool]>,
    seeds: impl IntoIterator<Item = VertexId>,
) -> Vec<bool> {
    let n = adj.len();
    let is_blocked = |v: VertexId| blocked.is_some_and(|b| b[v]);
    let mut active = vec![false; n];
    let mut count = vec![0i64; n];
    let mut queue = Vec::with_capacity(n);
    for v in seeds {
        if !active[v] {
            active[v] = true;
            queue.push(v);
        }
    }
    for v in 0..n {
        if !active[v] && tau[v] <= 0 && !is_blocked(v) {
            active[v] = true;
            queue.push(v);
        }
    }
    while let Some(u) = queue.pop() {
        for &w in &adj[u] {
            if active[w] || is_blocked(w) {
                continue;
            }
            count[w] += 1;
            if count[w] >= tau[w] {
                active[w] = true;
                queue.push(w);
            }
        }
    }
    active
}

/// Hull of `seed`: the closure of `seed` under the activation rule.
pub fn hull(instance: &ThresholdedInstance, seed: &VertexSet) -> Result<VertexSet> {
    instance.graph.check_members(seed)?;
    let active = propagate(instance.graph.adjacency(), &instance.tau, None, seed.iter());
    Ok(VertexSet::from_mask(&active))
}

pub fn is_dynamic_monopoly(instance: &ThresholdedInstance, seed: &VertexSet) -> Result<bool> {
    Ok(hull(instance, seed)?.len() == instance.order())
}

/// Checks that `cascade` is a permutation listing its seed first in which
/// every non-seed vertex has at least `tau` earlier neighbors.
pub fn verify_cascade(instance: &ThresholdedInstance, cascade: &Cascade) -> Result<bool> {
    let n = instance.order();
    instance.graph.check_members(&cascade.seed)?;
    if cascade.order.len() != n {
        return Err(Error::Input(format!(
            "cascade lists {} vertices, graph has {n}",
            cascade.order.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in cascade.order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::Input(format!(
                "cascade order is not a permutation (entry {v} at position {i})"
            )));
        }
        position[v] = i;
    }
    let seeds = cascade.seed.len();
    if cascade.order[..seeds]
        .iter()
        .any(|&v| !cascade.seed.contains(v))
    {
        return Ok(false);
    }
    for (i, &v) in cascade.order.iter().enumerate().skip(seeds) {
        let earlier = instance
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&w| position[w] < i)
            .count() as i64;
        if earlier < instance.tau[v] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order in which the hull of `seed` forms: seeds in canonical order, then
/// repeatedly the smallest activatable vertex.
pub fn activation_order(instance: &ThresholdedInstance, seed: &VertexSet) -> Result<Vec<VertexId>> {
    instance.graph.check_members(seed)?;
    let n = instance.order();
    let mut active = vec![false; n];
    let mut queued = vec![false; n];
    let mut count = vec![0i64; n];
    let mut order: Vec<VertexId> = seed.iter().collect();
    for v in seed.iter() {
        active[v] = true;
    }
    let mut ready = BinaryHeap::new();
    for v in 0..n {
        if !active[v] && instance.tau[v] <= 0 {
            queued[v] = true;
            ready.push(Reverse(v));
        }
    }
    let bump = |u: VertexId,
                active: &[bool],
                queued: &mut [bool],
                count: &mut [i64],
                ready: &mut BinaryHeap<Reverse<VertexId>>| {
        for &w in instance.graph.neighbors(u) {
            if active[w] || queued[w] {
                continue;
            }
            count[w] += 1;
            if count[w] >= instance.tau[w] {
                queued[w] = true;
                ready.push(Reverse(w));
            }
        }
    };
    for &u in &order {
        bump(u, &active, &mut queued, &mut count, &mut ready);
    }
    while let Some(Reverse(u)) = ready.pop() {
        active[u] = true;
        order.push(u);
        bump(u, &active, &mut queued, &mut count, &mut ready);
    }
    Ok(order)
}

/// A verifying cascade for `seed`, or `None` when `seed` is not a dynamic monopoly.
pub fn find_cascade(instance: &ThresholdedInstance, seed: &VertexSet) -> Result<Option<Cascade>> {
    let order = activation_order(instance, seed)?;
    Ok((order.len() == instance.order()).then(|| Cascade {
        order,
        seed: seed.clone(),
    }))
}
