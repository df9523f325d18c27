//! Exhaustive reference solvers.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{propagate, Graph, ThresholdedInstance, VertexId, VertexSet};

/// Default number of candidate seed sets the searches may test.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Limits of a brute-force search.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    /// Only seed sets drawn from these vertices (plus forced ones) are tried.
    pub pool: Option<VertexSet>,
    /// Largest seed set tried.
    pub max_size: Option<usize>,
    pub budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            pool: None,
            max_size: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Groups vertices that are interchangeable: same threshold and either the
/// same closed neighborhood or the same open neighborhood. `prev[v]` is the
/// largest smaller member of the class of `v`.
fn twin_predecessors(instance: &ThresholdedInstance) -> Vec<Option<VertexId>> {
    let g = instance.graph();
    let n = g.order();
    let mut closed: HashMap<(i64, Vec<VertexId>), Vec<VertexId>> = HashMap::new();
    let mut open: HashMap<(i64, Vec<VertexId>), Vec<VertexId>> = HashMap::new();
    for v in 0..n {
        let mut nb = g.neighbors(v).to_vec();
        open.entry((instance.tau(v), nb.clone()))
            .or_default()
            .push(v);
        let pos = nb.binary_search(&v).unwrap_err();
        nb.insert(pos, v);
        closed.entry((instance.tau(v), nb)).or_default().push(v);
    }
    let mut prev = vec![None; n];
    for class in closed.values().chain(open.values()) {
        for w in class.windows(2) {
            prev[w[1]] = Some(w[0]);
        }
    }
    prev
}

/// Size-`k` subsets of `pool` (sorted) in lexicographic order, keeping only
/// those that contain every smaller twin of each member.
struct Search<'a> {
    adj: &'a [Vec<VertexId>],
    tau: &'a [i64],
    pool: Vec<VertexId>,
    prev: Vec<Option<VertexId>>,
    chosen: Vec<bool>,
    forced: Vec<VertexId>,
    tried: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, k: usize, start: usize, cur: &mut Vec<VertexId>) -> Result<bool> {
        if cur.len() == k {
            self.tried += 1;
            if self.tried > self.budget {
                return Err(Error::Budget {
                    budget: self.budget,
                    size: k + self.forced.len(),
                });
            }
            let seeds = self.forced.iter().chain(cur.iter()).copied();
            return Ok(propagate(self.adj, self.tau, None, seeds)
                .iter()
                .all(|&a| a));
        }
        for idx in start..self.pool.len() {
            if self.pool.len() - idx < k - cur.len() {
                break;
            }
            let v = self.pool[idx];
            if let Some(p) = self.prev[v] {
                if !self.chosen[p] {
                    continue;
                }
            }
            cur.push(v);
            self.chosen[v] = true;
            let found = self.run(k, idx + 1, cur)?;
            if found {
                return Ok(true);
            }
            self.chosen[v] = false;
            cur.pop();
        }
        Ok(false)
    }
}

/// Smallest dynamic monopoly within `limits`, lexicographically least among
/// those of that size; `None` if there is none.
pub fn brute_force_dyn_limited(
    instance: &ThresholdedInstance,
    limits: &SearchLimits,
) -> Result<Option<(usize, VertexSet)>> {
    let g = instance.graph();
    if let Some(pool) = &limits.pool {
        g.check_members(pool)?;
    }
    let forced = instance.forced_vertices();
    let mut prev = twin_predecessors(instance);
    let pool: Vec<VertexId> = (0..g.order())
        .filter(|&v| !forced.contains(v))
        .filter(|&v| limits.pool.as_ref().is_none_or(|p| p.contains(v)))
        .collect();
    // a twin outside the pool cannot be required before one inside it
    for p in prev.iter_mut() {
        if p.is_some_and(|p| !pool.contains(&p)) {
            *p = None;
        }
    }
    let mut search = Search {
        adj: g.adjacency(),
        tau: instance.thresholds(),
        pool,
        prev,
        chosen: vec![false; g.order()],
        forced: forced.as_slice().to_vec(),
        tried: 0,
        budget: limits.budget,
    };
    let top = limits.max_size.unwrap_or(g.order());
    for k in 0..=search.pool.len() {
        if k + forced.len() > top {
            break;
        }
        let mut cur = Vec::with_capacity(k);
        if search.run(k, 0, &mut cur)? {
            let set: VertexSet = search.forced.iter().chain(cur.iter()).copied().collect();
            return Ok(Some((set.len(), set)));
        }
    }
    Ok(None)
}

/// Minimum dynamic monopoly by increasing-cardinality search.
pub fn brute_force_dyn(instance: &ThresholdedInstance, budget: u64) -> Result<(usize, VertexSet)> {
    let limits = SearchLimits {
        budget,
        ..SearchLimits::default()
    };
    Ok(brute_force_dyn_limited(instance, &limits)?
        .expect("the full vertex set is a dynamic monopoly"))
}

/// Minimum vertex cover size by increasing-cardinality search.
pub fn brute_force_vertex_cover(graph: &Graph, budget: u64) -> Result<usize> {
    struct Cover<'a> {
        n: usize,
        edges: &'a [(VertexId, VertexId)],
        inside: Vec<bool>,
        tried: u64,
        budget: u64,
    }
    impl Cover<'_> {
        fn run(&mut self, k: usize, start: usize, depth: usize) -> Result<bool> {
            if depth == k {
                self.tried += 1;
                if self.tried > self.budget {
                    return Err(Error::Budget {
                        budget: self.budget,
                        size: k,
                    });
                }
                return Ok(self
                    .edges
                    .iter()
                    .all(|&(u, v)| self.inside[u] || self.inside[v]));
            }
            for v in start..self.n {
                if self.n - v < k - depth {
                    break;
                }
                self.inside[v] = true;
                if self.run(k, v + 1, depth + 1)? {
                    return Ok(true);
                }
                self.inside[v] = false;
            }
            Ok(false)
        }
    }
    let edges: Vec<(VertexId, VertexId)> = graph.edges().collect();
    let n = graph.order();
    let mut cover = Cover {
        n,
        edges: &edges,
        inside: vec![false; n],
        tried: 0,
        budget,
    };
    for k in 0..=n {
        if cover.run(k, 0, 0)? {
            return Ok(k);
        }
    }
    unreachable!("the full vertex set is a cover")
}

/// Chordality via maximum cardinality search and a perfect elimination check.
pub fn is_chordal(graph: &Graph) -> bool {
    let n = graph.order();
    // visit order; its reverse is a perfect elimination order iff chordal
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        done[v] = true;
        order.push(v);
        for &w in graph.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // for each v, its earlier neighbors must form a clique; it suffices that
    // the latest of them is adjacent to all the others
    for &v in &order {
        let earlier: Vec<VertexId> = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] < pos[v])
            .collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier
                .iter()
                .any(|&w| w != parent && !graph.has_edge(w, parent))
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_dynamic_monopoly;
    use crate::graph::tests::path;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::with_prefix("v", n, edges).unwrap()
    }

    fn k33() -> Graph {
        let edges = (0..3).flat_map(|u| (3..6).map(move |v| (u, v)));
        Graph::with_prefix("v", 6, edges).unwrap()
    }

    fn prism() -> Graph {
        Graph::with_prefix(
            "v",
            6,
            [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let k3 = ThresholdedInstance::new(complete(3), vec![2; 3], None).unwrap();
        let (d, w) = brute_force_dyn(&k3, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, 2);
        assert_eq!(w.as_slice(), &[0, 1]);
        let p4 = ThresholdedInstance::new(path(4), vec![2; 4], None).unwrap();
        let (d, w) = brute_force_dyn(&p4, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, 3);
        assert!(is_dynamic_monopoly(&p4, &w).unwrap());
        let zero = ThresholdedInstance::new(path(5), vec![0; 5], None).unwrap();
        assert_eq!(brute_force_dyn(&zero, DEFAULT_BUDGET).unwrap().0, 0);
    }

    #[test]
    fn twin_pruning_keeps_lexicographic_witness() {
        // star with three interchangeable leaves, all needing the center
        let g = Graph::with_prefix("v", 4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = ThresholdedInstance::new(g, vec![2, 1, 1, 1], None).unwrap();
        let (d, w) = brute_force_dyn(&inst, DEFAULT_BUDGET).unwrap();
        assert_eq!(d, 1);
        assert_eq!(w.as_slice(), &[0]);
        let g = Graph::with_prefix("v", 4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = ThresholdedInstance::new(g, vec![3, 1, 1, 1], None).unwrap();
        assert_eq!(
            brute_force_dyn(&inst, DEFAULT_BUDGET).unwrap().1.as_slice(),
            &[0]
        );
    }

    #[test]
    fn budget_refusal() {
        let inst = ThresholdedInstance::new(path(8), vec![2; 8], None).unwrap();
        assert!(matches!(
            brute_force_dyn(&inst, 3),
            Err(Error::Budget { budget: 3, .. })
        ));
    }

    #[test]
    fn restricted_pool_and_size() {
        let inst = ThresholdedInstance::new(path(3), vec![1; 3], None).unwrap();
        let limits = SearchLimits {
            pool: Some([2].into_iter().collect()),
            ..SearchLimits::default()
        };
        assert_eq!(
            brute_force_dyn_limited(&inst, &limits)
                .unwrap()
                .unwrap()
                .1
                .as_slice(),
            &[2]
        );
        let inst = ThresholdedInstance::new(path(4), vec![2; 4], None).unwrap();
        let limits = SearchLimits {
            max_size: Some(2),
            ..SearchLimits::default()
        };
        assert_eq!(brute_force_dyn_limited(&inst, &limits).unwrap(), None);
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(
            brute_force_vertex_cover(&complete(4), DEFAULT_BUDGET).unwrap(),
            3
        );
        assert_eq!(brute_force_vertex_cover(&k33(), DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(
            brute_force_vertex_cover(&prism(), DEFAULT_BUDGET).unwrap(),
            4
        );
    }

    #[test]
    fn chordality_examples() {
        let c4 = Graph::with_prefix("v", 4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(!is_chordal(&c4));
        assert!(is_chordal(&complete(4)));
        assert!(is_chordal(&path(6)));
        assert!(!is_chordal(&prism()));
        // C_4 plus a chord
        let diamond = Graph::with_prefix("v", 4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert!(is_chordal(&diamond));
    }
}
