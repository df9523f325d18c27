use std::collections::HashMap;

use super::cascade::{bounded_subsets, permutations};
use crate::error::{Error, Result};
use crate::graph::{propagate, ThresholdedInstance, VertexId, VertexSet};
use crate::interval::Decomposition;

/// Induced subgraph with local ids `0..verts.len()`.
pub(crate) struct LocalGraph {
    verts: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    tau: Vec<i64>,
}

impl LocalGraph {
    pub(crate) fn new(instance: &ThresholdedInstance, verts: &VertexSet) -> LocalGraph {
        let verts = verts.as_slice().to_vec();
        let adj = verts
            .iter()
            .map(|&v| {
                instance
                    .graph()
                    .neighbors(v)
                    .iter()
                    .filter_map(|w| verts.binary_search(w).ok())
                    .collect()
            })
            .collect();
        let tau = verts.iter().map(|&v| instance.tau(v)).collect();
        LocalGraph { verts, adj, tau }
    }

    pub(crate) fn len(&self) -> usize {
        self.verts.len()
    }

    pub(crate) fn local(&self, v: VertexId) -> usize {
        self.verts
            .binary_search(&v)
            .expect("vertex belongs to the local graph")
    }

    pub(crate) fn global(&self, local: usize) -> VertexId {
        self.verts[local]
    }

    pub(crate) fn neighbors(&self, local: usize) -> &[usize] {
        &self.adj[local]
    }

    /// Hull of `seeds` with the `removed` vertices deleted (all global ids).
    pub(crate) fn hull(&self, removed: &[VertexId], seeds: &[VertexId]) -> Vec<bool> {
        let mut blocked = vec![false; self.len()];
        for &v in removed {
            blocked[self.local(v)] = true;
        }
        propagate(
            &self.adj,
            &self.tau,
            Some(&blocked),
            seeds.iter().map(|&v| self.local(v)),
        )
    }
}

/// Hull of `seeds` inside the subgraph induced by `subgraph \ removed`,
/// under the original thresholds.
pub fn localized_hull(
    instance: &ThresholdedInstance,
    subgraph: &VertexSet,
    removed: &VertexSet,
    seeds: &VertexSet,
) -> Result<VertexSet> {
    instance.graph().check_members(subgraph)?;
    if !removed.is_subset(subgraph) || !seeds.is_subset(subgraph) {
        return Err(Error::Input(
            "removed and seed vertices must lie in the subgraph".into(),
        ));
    }
    if !seeds.intersection(removed).is_empty() {
        return Err(Error::Input("a seed vertex is also removed".into()));
    }
    let g = LocalGraph::new(instance, subgraph);
    let active = g.hull(removed.as_slice(), seeds.as_slice());
    Ok((0..g.len())
        .filter(|&l| active[l])
        .map(|l| g.global(l))
        .collect())
}

/// A candidate `Y_1` for the base layer, with the number of neighbors each
/// unseeded boundary vertex sees in its restricted hull.
pub(crate) struct BaseProfile {
    pub extra: Vec<VertexId>,
    pub support: Vec<i64>,
}

/// Where a predecessor help value comes from.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Carry {
    /// Vertex shared by both boundaries: `rho_i(v)` (at this position of the
    /// current unseeded order) plus the help gained inside the slice.
    Shared { position: usize, gained: u32 },
    /// Vertex only on the previous boundary: help gained inside the slice.
    Old { gained: u32 },
}

/// One triple `(X'', ∂Y, joint order)` that passes the slice-level checks,
/// reduced to what the help vector of the current cell still has to decide.
pub(crate) struct StepProfile {
    pub old_seeds: Vec<VertexId>,
    pub interior_seeds: Vec<VertexId>,
    pub joint_order: Vec<VertexId>,
    /// `(position in unseeded order, neighbors gained)` for new boundary vertices.
    pub need: Vec<(usize, i64)>,
    pub pred_order: Vec<VertexId>,
    pub pred_seeded: usize,
    pub carry: Vec<Carry>,
}

pub(crate) struct LayerContext<'a> {
    instance: &'a ThresholdedInstance,
    t: usize,
    boundary: VertexSet,
    prev_boundary: Option<VertexSet>,
    /// Candidates for new seeds: `V_1 \ B_1`, or `∂V_i \ (B_i ∪ B_{i-1})`.
    interior: Vec<VertexId>,
    graph: LocalGraph,
    monopoly_ok: HashMap<Vec<VertexId>, bool>,
}

/// All merges of the fixed sequence `fixed` with every ordering of `free`.
fn interleavings(fixed: &[VertexId], free: &[VertexId]) -> Vec<Vec<VertexId>> {
    fn merge(
        a: &[VertexId],
        b: &[VertexId],
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if a.is_empty() && b.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            cur.push(x);
            merge(rest, b, cur, out);
            cur.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            cur.push(y);
            merge(a, rest, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for perm in permutations(free) {
        merge(fixed, &perm, &mut Vec::new(), &mut out);
    }
    out
}

impl<'a> LayerContext<'a> {
    /// Context for layer `i` (1-based).
    pub(crate) fn new(instance: &'a ThresholdedInstance, dec: &Decomposition, i: usize) -> Self {
        let layer = dec.layer(i);
        let prev_boundary = (i > 1).then(|| dec.layer(i - 1).boundary.clone());
        let interior = match &prev_boundary {
            Some(prev) => layer.slice.difference(&layer.boundary).difference(prev),
            None => layer.slice.difference(&layer.boundary),
        }
        .into_vec();
        let graph = LocalGraph::new(instance, &layer.slice);
        let mut ctx = LayerContext {
            instance,
            t: dec.t,
            boundary: layer.boundary.clone(),
            prev_boundary,
            interior,
            graph,
            monopoly_ok: HashMap::new(),
        };
        if ctx.prev_boundary.is_some() {
            ctx.monopoly_ok = ctx.slice_monopolies();
        }
        ctx
    }

    fn slice_monopolies(&self) -> HashMap<Vec<VertexId>, bool> {
        let prev = self.prev_boundary.as_ref().unwrap();
        let both = self.boundary.union(prev);
        bounded_subsets(&self.interior, self.t)
            .into_iter()
            .map(|dy| {
                let seeds: Vec<VertexId> = both.iter().chain(dy.iter().copied()).collect();
                let full = self.graph.hull(&[], &seeds).iter().all(|&a| a);
                (dy, full)
            })
            .collect()
    }

    fn count_in(&self, v: VertexId, active: &[bool], skip: Option<&VertexSet>) -> i64 {
        self.graph
            .neighbors(self.graph.local(v))
            .iter()
            .filter(|&&w| active[w] && !skip.is_some_and(|s| s.contains(self.graph.global(w))))
            .count() as i64
    }

    pub(crate) fn base_profiles(&self, order: &[VertexId], seeded: usize) -> Vec<BaseProfile> {
        let Some(budget) = self.t.checked_sub(seeded) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for extra in bounded_subsets(&self.interior, budget) {
            let seeds: Vec<VertexId> = self.boundary.iter().chain(extra.iter().copied()).collect();
            if !self.graph.hull(&[], &seeds).iter().all(|&a| a) {
                continue;
            }
            let support = (seeded..order.len())
                .map(|k| {
                    let seeds: Vec<VertexId> = order[..k].iter().chain(&extra).copied().collect();
                    let active = self.graph.hull(&order[k..], &seeds);
                    self.count_in(order[k], &active, None)
                })
                .collect();
            out.push(BaseProfile { extra, support });
        }
        out
    }

    pub(crate) fn step_profiles(&self, order: &[VertexId], seeded: usize) -> Vec<StepProfile> {
        let prev = self
            .prev_boundary
            .as_ref()
            .expect("step layers have a predecessor");
        let Some(budget) = self.t.checked_sub(seeded) else {
            return Vec::new();
        };
        let seeds_now = &order[..seeded];
        let unseeded_now = &order[seeded..];
        let old: Vec<VertexId> = prev.difference(&self.boundary).into_vec();
        let mut out = Vec::new();
        for old_seeds in bounded_subsets(&old, budget) {
            let old_rest: Vec<VertexId> = old
                .iter()
                .copied()
                .filter(|v| !old_seeds.contains(v))
                .collect();
            let seed_orders = interleavings(seeds_now, &old_seeds);
            let rest_orders = interleavings(unseeded_now, &old_rest);
            for interior_seeds in bounded_subsets(&self.interior, budget - old_seeds.len()) {
                if !self.monopoly_ok[&interior_seeds] {
                    continue;
                }
                for head in &seed_orders {
                    for tail in &rest_orders {
                        let joint: Vec<VertexId> = head.iter().chain(tail).copied().collect();
                        out.push(self.evaluate_joint(
                            prev,
                            unseeded_now,
                            head.len(),
                            &old_seeds,
                            &interior_seeds,
                            joint,
                        ));
                    }
                }
            }
        }
        out
    }

    fn evaluate_joint(
        &self,
        prev: &VertexSet,
        unseeded_now: &[VertexId],
        head: usize,
        old_seeds: &[VertexId],
        interior_seeds: &[VertexId],
        joint: Vec<VertexId>,
    ) -> StepProfile {
        let mut gained = HashMap::new();
        for j in head..joint.len() {
            let seeds: Vec<VertexId> = joint[..j].iter().chain(interior_seeds).copied().collect();
            let active = self.graph.hull(&joint[j..], &seeds);
            let v = joint[j];
            // help for a previous-boundary vertex only counts what lies beyond V_{i-1}
            let skip = prev.contains(v).then_some(prev);
            gained.insert(v, self.count_in(v, &active, skip));
        }
        let need = unseeded_now
            .iter()
            .enumerate()
            .filter(|(_, &v)| !prev.contains(v))
            .map(|(k, v)| (k, gained[v]))
            .collect();
        let pred_order: Vec<VertexId> = joint
            .iter()
            .copied()
            .filter(|&v| prev.contains(v))
            .collect();
        let pred_seeded = pred_order
            .iter()
            .take_while(|&&v| !gained.contains_key(&v))
            .count();
        let carry = pred_order[pred_seeded..]
            .iter()
            .map(|&v| {
                let g = gained[&v] as u32;
                match unseeded_now.iter().position(|&u| u == v) {
                    Some(position) => Carry::Shared {
                        position,
                        gained: g,
                    },
                    None => Carry::Old { gained: g },
                }
            })
            .collect();
        StepProfile {
            old_seeds: old_seeds.to_vec(),
            interior_seeds: interior_seeds.to_vec(),
            joint_order: joint,
            need,
            pred_order,
            pred_seeded,
            carry,
        }
    }

    pub(crate) fn tau(&self, v: VertexId) -> i64 {
        self.instance.tau(v)
    }
}
