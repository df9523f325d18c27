use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};

/// Upper end of the help range `rho(u) ∈ 0..=cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HelpCap {
    /// `cap = max(tau(u), 0)`: more help than the threshold changes nothing.
    Threshold,
    /// `cap = n`, the full codomain; used to check that the threshold cap is exact.
    Order(usize),
}

impl HelpCap {
    pub fn limit(self, tau: i64) -> u32 {
        match self {
            HelpCap::Threshold => tau.max(0) as u32,
            HelpCap::Order(n) => n as u32,
        }
    }

    pub fn clamp(self, raw: u64, tau: i64) -> u32 {
        raw.min(self.limit(tau) as u64) as u32
    }
}

/// DP state of one layer: which boundary vertices are seeded, the order in
/// which the boundary activates, and the help each unseeded boundary vertex
/// receives from outside the layer prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalCascade {
    pub layer: usize,
    /// Linear order on the boundary; the first `seeded` entries form `X`.
    pub order: Vec<VertexId>,
    pub seeded: usize,
    /// `help[k]` belongs to `order[seeded + k]`.
    pub help: Vec<u32>,
}

impl LocalCascade {
    pub fn seeded_set(&self) -> VertexSet {
        self.order[..self.seeded].iter().copied().collect()
    }

    pub fn unseeded(&self) -> &[VertexId] {
        &self.order[self.seeded..]
    }

    pub fn help_of(&self, v: VertexId) -> Option<u32> {
        self.unseeded()
            .iter()
            .position(|&u| u == v)
            .map(|k| self.help[k])
    }

    pub fn has_zero_help(&self) -> bool {
        self.help.iter().all(|&h| h == 0)
    }
}

/// All permutations of `items` in lexicographic order (for sorted input).
pub(crate) fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Subsets of `items` with at most `max` elements, by increasing size and
/// lexicographically within a size.
pub(crate) fn bounded_subsets(items: &[VertexId], max: usize) -> Vec<Vec<VertexId>> {
    fn rec(
        items: &[VertexId],
        k: usize,
        start: usize,
        cur: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 0..=max.min(items.len()) {
        rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn help_vectors(caps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(caps.len())];
    for &cap in caps {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=cap).map(move |h| {
                    let mut v = prefix.clone();
                    v.push(h);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every local cascade on `boundary`, grouped by `(X, order)`.
///
/// `X` runs over subsets in bitmask order of the sorted boundary, orders
/// lexicographically, help vectors lexicographically.
pub fn enumerate_local_cascades(
    layer: usize,
    boundary: &VertexSet,
    tau: &[i64],
    cap: HelpCap,
) -> Result<Vec<LocalCascade>> {
    if boundary.is_empty() {
        return Err(Error::Input(format!("layer {layer} has an empty boundary")));
    }
    let b = boundary.as_slice();
    let mut out = Vec::new();
    for mask in 0u32..(1 << b.len()) {
        let (mut seeds, mut rest) = (Vec::new(), Vec::new());
        for (k, &v) in b.iter().enumerate() {
            if mask >> k & 1 == 1 {
                seeds.push(v);
            } else {
                rest.push(v);
            }
        }
        for seed_order in permutations(&seeds) {
            for rest_order in permutations(&rest) {
                let caps: Vec<u32> = rest_order.iter().map(|&v| cap.limit(tau[v])).collect();
                let order: Vec<VertexId> = seed_order.iter().chain(&rest_order).copied().collect();
                for help in help_vectors(&caps) {
                    out.push(LocalCascade {
                        layer,
                        order: order.clone(),
                        seeded: seeds.len(),
                        help,
                    });
                }
            }
        }
    }
    Ok(out)
}
