use std::collections::HashSet;

use super::cascade::{bounded_subsets, LocalCascade};
use super::DynValue;
use crate::error::{Error, Result};
use crate::graph::{ThresholdedInstance, VertexId};
use crate::interval::Decomposition;

/// Largest `|V_i|` accepted by [`definition_level_dyn`].
pub const DEFINITION_LIMIT: usize = 12;

/// `dyn_i` computed straight from its definition: smallest `Y ⊆ V_i \ B_i`
/// meeting the slice bound on every layer up to `i` such that some ordering
/// of `V_i` (seeds first, boundary in the given order) activates everything,
/// with boundary vertices lowered by their help.
///
/// Orderings are searched as paths over sets of already placed vertices.
pub fn definition_level_dyn(
    instance: &ThresholdedInstance,
    decomposition: &Decomposition,
    lc: &LocalCascade,
) -> Result<DynValue> {
    if lc.layer == 0 || lc.layer > decomposition.layer_count() {
        return Err(Error::Input(format!("no layer {}", lc.layer)));
    }
    let layer = decomposition.layer(lc.layer);
    let verts: Vec<VertexId> = layer.prefix.as_slice().to_vec();
    if verts.len() > DEFINITION_LIMIT {
        return Err(Error::TooLarge {
            size: verts.len(),
            limit: DEFINITION_LIMIT,
        });
    }
    let mut boundary_sorted = lc.order.clone();
    boundary_sorted.sort_unstable();
    if boundary_sorted != layer.boundary.as_slice()
        || lc.seeded > lc.order.len()
        || lc.help.len() != lc.order.len() - lc.seeded
    {
        return Err(Error::Input(
            "local cascade does not match the layer boundary".into(),
        ));
    }

    let local = |v: VertexId| verts.binary_search(&v).expect("vertex in V_i");
    let n = verts.len();
    let nbr: Vec<u32> = verts
        .iter()
        .map(|&v| {
            instance
                .graph()
                .neighbors(v)
                .iter()
                .filter_map(|w| verts.binary_search(w).ok())
                .fold(0u32, |m, w| m | 1 << w)
        })
        .collect();
    let seeded_mask = lc.order[..lc.seeded]
        .iter()
        .fold(0u32, |m, &v| m | 1 << local(v));
    let boundary_mask = lc.order.iter().fold(0u32, |m, &v| m | 1 << local(v));
    // rank of each boundary vertex in the given order
    let mut rank = vec![usize::MAX; n];
    for (r, &v) in lc.order.iter().enumerate() {
        rank[local(v)] = r;
    }
    let mut lowered = vec![0i64; n];
    for (k, &v) in lc.unseeded().iter().enumerate() {
        lowered[local(v)] = lc.help[k] as i64;
    }
    let candidates: Vec<VertexId> = layer.prefix.difference(&layer.boundary).into_vec();
    let full = (1u32 << n) - 1;

    for size in 0..=candidates.len() {
        for y in bounded_subsets(&candidates, size)
            .into_iter()
            .filter(|y| y.len() == size)
        {
            let y_mask = y.iter().fold(0u32, |m, &v| m | 1 << local(v));
            let seeds = seeded_mask | y_mask;
            let slice_ok = (1..=lc.layer).all(|j| {
                let slice = &decomposition.layer(j).slice;
                lc.order[..lc.seeded]
                    .iter()
                    .chain(&y)
                    .filter(|&&v| slice.contains(v))
                    .count()
                    <= decomposition.t
            });
            if !slice_ok {
                continue;
            }
            // every seed precedes every non-seed, so the seeds form the prefix
            let placeable = |placed: u32, w: usize| -> bool {
                let bit = 1u32 << w;
                if placed & bit != 0 || seeds & bit != 0 {
                    return false;
                }
                if boundary_mask & bit != 0 {
                    // the boundary order must be respected
                    let earlier_missing = lc
                        .order
                        .iter()
                        .any(|&u| rank[local(u)] < rank[w] && placed & 1 << local(u) == 0);
                    if earlier_missing {
                        return false;
                    }
                }
                let have = (nbr[w] & placed).count_ones() as i64;
                have >= instance.tau(verts[w]) - lowered[w]
            };
            let mut seen = HashSet::new();
            let mut stack = vec![seeds];
            let mut reached = false;
            while let Some(placed) = stack.pop() {
                if placed == full {
                    reached = true;
                    break;
                }
                if !seen.insert(placed) {
                    continue;
                }
                for w in 0..n {
                    if placeable(placed, w) {
                        stack.push(placed | 1 << w);
                    }
                }
            }
            if reached {
                return Ok(DynValue::Finite(size));
            }
        }
    }
    Ok(DynValue::Infeasible)
}
