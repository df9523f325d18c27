use std::collections::BTreeSet;

use proptest::prelude::*;

use dynmono::dp::{
    definition_level_dyn, enumerate_local_cascades, solve_connected, DynValue, HelpCap,
    LocalCascade,
};
use dynmono::format::{parse_instance, InstanceFile};
use dynmono::generate::{generate_cubic, generate_interval_instance_with, IntervalGenConfig};
use dynmono::interval::{is_t_connected, minimal_vertex_cuts_bruteforce};
use dynmono::oracle::{brute_force_dyn, is_chordal, DEFAULT_BUDGET};
use dynmono::reduction::vc_reduction;
use dynmono::{
    compute_cut_structure, compute_decomposition, find_cascade, hull, induced_subgraph,
    is_dynamic_monopoly, normalize, solve, verify_cascade, Graph, IntervalRepresentation,
    ThresholdedInstance, VertexSet,
};

fn to_set(bits: &[bool]) -> VertexSet {
    bits.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(v, _)| v)
        .collect()
}

/// Random graph with thresholds in `-1..=deg+1`.
fn arb_instance(max_n: usize) -> impl Strategy<Value = ThresholdedInstance> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
                prop::collection::vec(0u8..=255, n),
            )
        })
        .prop_map(|(n, bits, raw_tau)| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let edges: Vec<_> = pairs
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(e, _)| e)
                .collect();
            let g = Graph::with_prefix("v", n, edges).unwrap();
            let tau = (0..n)
                .map(|v| (raw_tau[v] as i64 % (g.degree(v) as i64 + 3)) - 1)
                .collect();
            ThresholdedInstance::new(g, tau, Some(0)).unwrap()
        })
}

fn arb_interval(
    max_n: usize,
    max_t: usize,
) -> impl Strategy<Value = (ThresholdedInstance, IntervalRepresentation)> {
    (1..=max_n, 0..=max_t, any::<u64>(), 0i64..=6, 1i64..=3).prop_map(
        |(n, t, seed, max_len, spread)| {
            let mut c = IntervalGenConfig::new(n, t, seed);
            c.max_len = max_len;
            c.span = Some((n as i64 * spread).div_euclid(2).max(1));
            generate_interval_instance_with(&c).unwrap()
        },
    )
}

fn connected_interval(
    max_n: usize,
    max_t: usize,
) -> impl Strategy<Value = (ThresholdedInstance, IntervalRepresentation)> {
    arb_interval(max_n, max_t).prop_filter("connected", |(inst, _)| inst.graph().is_connected())
}

/// Fixpoint reached by scanning vertices in the given order until nothing changes.
fn scan_fixpoint(inst: &ThresholdedInstance, seed: &VertexSet, order: &[usize]) -> VertexSet {
    let mut active: Vec<bool> = (0..inst.order()).map(|v| seed.contains(v)).collect();
    loop {
        let mut changed = false;
        for &v in order {
            let have = inst
                .graph()
                .neighbors(v)
                .iter()
                .filter(|&&w| active[w])
                .count() as i64;
            if !active[v] && have >= inst.tau(v) {
                active[v] = true;
                changed = true;
            }
        }
        if !changed {
            return to_set(&active);
        }
    }
}

fn naive_dyn(inst: &ThresholdedInstance) -> usize {
    let n = inst.order();
    (0u32..1 << n)
        .filter(|&m| {
            is_dynamic_monopoly(inst, &(0..n).filter(|v| m >> v & 1 == 1).collect()).unwrap()
        })
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hull_closure_laws(
        inst in arb_instance(10),
        a in prop::collection::vec(any::<bool>(), 10),
        b in prop::collection::vec(any::<bool>(), 10),
        shuffle in any::<u64>(),
    ) {
        let n = inst.order();
        let d = to_set(&a[..n]);
        let bigger = d.union(&to_set(&b[..n]));
        let h = hull(&inst, &d).unwrap();
        prop_assert!(d.is_subset(&h));
        prop_assert!(h.is_subset(&hull(&inst, &bigger).unwrap()));
        prop_assert_eq!(&hull(&inst, &h).unwrap(), &h);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (v as u64).wrapping_mul(shuffle | 1).rotate_left(17) ^ shuffle);
        prop_assert_eq!(&scan_fixpoint(&inst, &d, &order), &h);
    }

    #[test]
    fn cascades_exist_exactly_for_monopolies(inst in arb_instance(8), bits in prop::collection::vec(any::<bool>(), 8)) {
        let d = to_set(&bits[..inst.order()]);
        let mono = is_dynamic_monopoly(&inst, &d).unwrap();
        match find_cascade(&inst, &d).unwrap() {
            Some(c) => {
                prop_assert!(mono);
                prop_assert!(verify_cascade(&inst, &c).unwrap());
                prop_assert_eq!(&c.seed, &d);
            }
            None => prop_assert!(!mono),
        }
    }

    #[test]
    fn cut_structure_matches_intervals((inst, rep) in arb_interval(12, 3)) {
        let nrep = normalize(&rep);
        let cuts = compute_cut_structure(&nrep);
        prop_assert_eq!(cuts.cuts.len(), 2 * inst.order() - 1);
        for i in 1..2 * inst.order() {
            let expect: VertexSet = (0..inst.order()).filter(|&v| nrep.left(v) <= i && i < nrep.right(v)).collect();
            prop_assert_eq!(cuts.cut(i), &expect);
            prop_assert_eq!(cuts.count(i), expect.len());
            // every cut is a clique
            let sub = induced_subgraph(inst.graph(), &expect).unwrap();
            prop_assert!(sub.is_clique());
        }
        prop_assert_eq!(cuts.counts.contains(&0), !inst.graph().is_connected());
    }

    #[test]
    fn minimal_separators_are_the_local_minimum_cuts((inst, rep) in connected_interval(10, 3)) {
        let cuts = compute_cut_structure(&normalize(&rep));
        let brute: BTreeSet<VertexSet> = minimal_vertex_cuts_bruteforce(inst.graph()).unwrap().into_iter().collect();
        let minima: BTreeSet<VertexSet> = cuts.local_minima().into_iter().map(|i| cuts.cut(i).clone()).collect();
        prop_assert_eq!(brute, minima);
    }

    #[test]
    fn layers_separate_and_slices_are_well_connected((inst, rep) in connected_interval(10, 3)) {
        let t = inst.bound();
        let dec = compute_decomposition(&compute_cut_structure(&normalize(&rep)), t);
        let k = dec.layer_count();
        prop_assert_eq!(dec.layer(k).boundary.len(), 1);
        prop_assert_eq!(&dec.layer(k).prefix, &inst.graph().vertex_set());
        for i in 1..=k {
            let layer = dec.layer(i);
            if i < k {
                prop_assert!(layer.boundary.len() < t);
            }
            prop_assert!(layer.boundary.is_subset(&layer.prefix));
            let inner = layer.prefix.difference(&layer.boundary);
            for u in inner.iter() {
                for &w in inst.graph().neighbors(u) {
                    prop_assert!(layer.prefix.contains(w));
                }
            }
            if i > 1 {
                prop_assert!(dec.layer(i - 1).prefix.is_subset(&layer.prefix));
            }
            let g = induced_subgraph(inst.graph(), &layer.slice).unwrap();
            let ok = (g.is_clique() && g.order() <= t) || is_t_connected(&g, t).unwrap();
            prop_assert!(ok, "slice {:?} of layer {}", layer.slice, i);
        }
    }

    #[test]
    fn brute_force_is_exact(inst in arb_instance(8)) {
        let (d, w) = brute_force_dyn(&inst, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(w.len(), d);
        prop_assert!(is_dynamic_monopoly(&inst, &w).unwrap());
        prop_assert_eq!(d, naive_dyn(&inst));
        prop_assert!(inst.forced_vertices().is_subset(&w));
    }

    #[test]
    fn solve_agrees_with_oracle((inst, rep) in arb_interval(12, 3)) {
        let sol = solve(&inst, &rep).unwrap();
        prop_assert_eq!(sol.dyn_value, brute_force_dyn(&inst, DEFAULT_BUDGET).unwrap().0);
        prop_assert_eq!(sol.monopoly.len(), sol.dyn_value);
        prop_assert!(is_dynamic_monopoly(&inst, &sol.monopoly).unwrap());
    }

    #[test]
    fn final_combination_is_dyn((inst, rep) in connected_interval(10, 3)) {
        prop_assume!(inst.bound() > 0);
        let run = solve_connected(&inst, &normalize(&rep), HelpCap::Threshold).unwrap();
        let last = run.tables.last().unwrap();
        prop_assert_eq!(last.iter().filter(|(lc, _)| lc.has_zero_help()).count(), 2);
        prop_assert_eq!(run.combined_value(), DynValue::Finite(naive_dyn(&inst)));
    }

    #[test]
    fn cells_follow_the_definition((inst, rep) in connected_interval(8, 3)) {
        prop_assume!(inst.bound() > 0);
        let run = solve_connected(&inst, &normalize(&rep), HelpCap::Threshold).unwrap();
        for table in &run.tables {
            for (lc, cell) in table.iter() {
                prop_assert_eq!(cell.value, definition_level_dyn(&inst, &run.decomposition, lc).unwrap());
            }
        }
    }

    #[test]
    fn more_help_never_costs_more((inst, rep) in connected_interval(10, 3)) {
        prop_assume!(inst.bound() > 0);
        let run = solve_connected(&inst, &normalize(&rep), HelpCap::Threshold).unwrap();
        for table in &run.tables {
            for (lc, cell) in table.iter() {
                for k in 0..lc.help.len() {
                    let mut more = lc.clone();
                    more.help[k] += 1;
                    if let Some(other) = table.get(&more) {
                        prop_assert!(other.value <= cell.value);
                    }
                }
            }
        }
    }

    #[test]
    fn threshold_cap_is_exact((inst, rep) in connected_interval(9, 3)) {
        prop_assume!(inst.bound() > 0);
        let nrep = normalize(&rep);
        let capped = solve_connected(&inst, &nrep, HelpCap::Threshold).unwrap();
        let full = solve_connected(&inst, &nrep, HelpCap::Order(inst.order())).unwrap();
        prop_assert_eq!(capped.solution.dyn_value, full.solution.dyn_value);
        for (small, big) in capped.tables.iter().zip(&full.tables) {
            for (lc, cell) in big.iter() {
                let clamped = LocalCascade {
                    help: lc.unseeded().iter().zip(&lc.help).map(|(&v, &h)| HelpCap::Threshold.clamp(h as u64, inst.tau(v))).collect(),
                    ..lc.clone()
                };
                prop_assert_eq!(small.value(&clamped), cell.value);
            }
            let count = enumerate_local_cascades(small.layer, &capped.decomposition.layer(small.layer).boundary, inst.thresholds(), HelpCap::Threshold).unwrap().len();
            prop_assert_eq!(small.len(), count);
        }
    }

    #[test]
    fn well_connected_instances_need_at_most_t((inst, rep) in connected_interval(12, 3)) {
        let t = inst.bound();
        prop_assume!(is_t_connected(inst.graph(), t).unwrap());
        prop_assert!(solve(&inst, &rep).unwrap().dyn_value <= t);
    }

    #[test]
    fn generated_files_round_trip((inst, rep) in arb_interval(12, 3)) {
        let text = InstanceFile::from_interval(&inst, &rep).unwrap().emit();
        let parsed = parse_instance(&text).unwrap();
        prop_assert_eq!(parsed.emit(), text.clone());
        let (back, back_rep) = parsed.to_instance().unwrap();
        prop_assert_eq!(back, inst);
        prop_assert_eq!(back_rep.unwrap(), rep);
    }

    #[test]
    fn reductions_are_chordal_with_expected_order(half in 2usize..=5, seed in any::<u64>()) {
        let g = generate_cubic(2 * half, seed).unwrap();
        let out = vc_reduction(&g).unwrap();
        let n = g.order();
        prop_assert_eq!(out.instance.order(), n + n * g.edge_count());
        prop_assert!(is_chordal(out.instance.graph()));
        let g2 = InstanceFile::from_graph(&out.instance, None).emit();
        prop_assert_eq!(parse_instance(&g2).unwrap().to_instance().unwrap().0, out.instance);
    }
}
