//! Reduction from vertex cover on cubic graphs to dynamic monopolies on
//! chordal graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, ThresholdedInstance, VertexId, VertexSet};

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: ThresholdedInstance,
    /// Source edge `(u, v)` with `u < v`, and the clique attached to it.
    pub gadget_map: Vec<((VertexId, VertexId), VertexSet)>,
    /// Source vertices keep their ids `0..n`.
    pub source_vertices: VertexSet,
}

/// Turns every source vertex into a member of one big clique with threshold
/// `3n + 3`, and every source edge `uv` into a clique of `n` threshold-1
/// vertices joined to both `u` and `v`. Gadget vertices are named
/// `g_<u>_<v>_<k>`.
pub fn vc_reduction(cubic: &Graph) -> Result<ReductionOutput> {
    let n = cubic.order();
    if let Some(v) = (0..n).find(|&v| cubic.degree(v) != 3) {
        return Err(Error::Constraint(format!(
            "vertex `{}` has degree {}, the reduction needs a cubic graph",
            cubic.name(v),
            cubic.degree(v)
        )));
    }
    let mut names: Vec<String> = cubic.names().to_vec();
    let mut edges: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut gadget_map = Vec::new();
    for (u, v) in cubic.edges() {
        let base = names.len();
        for k in 1..=n {
            names.push(format!("g_{}_{}_{k}", cubic.name(u), cubic.name(v)));
        }
        let members: Vec<VertexId> = (base..base + n).collect();
        for (i, &a) in members.iter().enumerate() {
            edges.push((u, a));
            edges.push((v, a));
            edges.extend(members[i + 1..].iter().map(|&b| (a, b)));
        }
        gadget_map.push(((u, v), members.into_iter().collect()));
    }
    let graph = Graph::new(names, edges).map_err(|e| match e {
        Error::Input(msg) => Error::Constraint(format!("gadget names collide: {msg}")),
        other => other,
    })?;
    let total = graph.order();
    let tau = (0..total)
        .map(|v| if v < n { 3 * n as i64 + 3 } else { 1 })
        .collect();
    Ok(ReductionOutput {
        instance: ThresholdedInstance::new(graph, tau, None)?,
        gadget_map,
        source_vertices: VertexSet::full(n),
    })
}
