//! Exact dynamic program for minimum dynamic monopolies of interval graphs
//! whose thresholds are bounded by `t`.
//!
//! The graph is cut into layers at small local minima of the endpoint sweep
//! (see [`crate::interval::compute_decomposition`]). For every layer `i` the
//! table maps each [`LocalCascade`] on the boundary `B_i` to the fewest extra
//! seeds inside `V_i \ B_i` that realise it. Layer 1 is solved directly,
//! later layers combine the previous table with choices inside the slice
//! `∂V_i`, and the last layer (whose boundary is a single vertex) gives the
//! answer.

mod cascade;
mod definition;
mod layer;

use std::collections::HashMap;

pub use cascade::{enumerate_local_cascades, HelpCap, LocalCascade};
pub use definition::{definition_level_dyn, DEFINITION_LIMIT};
pub use layer::localized_hull;

use layer::{BaseProfile, Carry, LayerContext, StepProfile};

use crate::error::{Error, Result};
use crate::graph::{ThresholdedInstance, VertexId, VertexSet};
use crate::interval::{
    compute_cut_structure, compute_decomposition, normalize, realize_graph, Decomposition,
    IntervalRepresentation, NormalizedRepresentation,
};

/// Cell value; `Infeasible` sorts above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynValue {
    Finite(usize),
    Infeasible,
}

impl DynValue {
    pub fn plus(self, k: usize) -> DynValue {
        match self {
            DynValue::Finite(v) => DynValue::Finite(v + k),
            DynValue::Infeasible => DynValue::Infeasible,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            DynValue::Finite(v) => Some(v),
            DynValue::Infeasible => None,
        }
    }

    pub fn is_feasible(self) -> bool {
        matches!(self, DynValue::Finite(_))
    }
}

/// Backpointer of a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Choice {
    /// Layer 1: the extra seeds `Y_1 ⊆ V_1 \ B_1`.
    Base { extra: VertexSet },
    /// Later layers: seeds on the old boundary (`X''`), seeds strictly inside
    /// the slice (`∂Y`), the order on both boundaries, and the predecessor cell.
    Step {
        old_seeds: VertexSet,
        interior_seeds: VertexSet,
        joint_order: Vec<VertexId>,
        predecessor: LocalCascade,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub value: DynValue,
    pub choice: Option<Choice>,
}

impl Cell {
    fn infeasible() -> Cell {
        Cell {
            value: DynValue::Infeasible,
            choice: None,
        }
    }
}

/// Sealed table of one layer.
#[derive(Clone, Debug)]
pub struct DpTable {
    pub layer: usize,
    pub cap: HelpCap,
    cells: Vec<(LocalCascade, Cell)>,
    index: HashMap<LocalCascade, usize>,
}

impl DpTable {
    fn new(layer: usize, cap: HelpCap, cells: Vec<(LocalCascade, Cell)>) -> DpTable {
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, (lc, _))| (lc.clone(), i))
            .collect();
        DpTable {
            layer,
            cap,
            cells,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, lc: &LocalCascade) -> Option<&Cell> {
        self.index.get(lc).map(|&i| &self.cells[i].1)
    }

    pub fn value(&self, lc: &LocalCascade) -> DynValue {
        self.get(lc).map_or(DynValue::Infeasible, |c| c.value)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LocalCascade, &Cell)> {
        self.cells.iter().map(|(lc, c)| (lc, c))
    }
}

fn resolve_base(lc: &LocalCascade, profiles: &[BaseProfile], ctx: &LayerContext) -> Cell {
    let tau_of = |k: usize| ctx.tau(lc.unseeded()[k]);
    profiles
        .iter()
        .find(|p| {
            p.support
                .iter()
                .enumerate()
                .all(|(k, &s)| s >= tau_of(k) - lc.help[k] as i64)
        })
        .map_or_else(Cell::infeasible, |p| Cell {
            value: DynValue::Finite(p.extra.len()),
            choice: Some(Choice::Base {
                extra: p.extra.iter().copied().collect(),
            }),
        })
}

fn resolve_step(
    lc: &LocalCascade,
    profiles: &[StepProfile],
    ctx: &LayerContext,
    prev: &DpTable,
) -> Cell {
    let mut best = Cell::infeasible();
    for p in profiles {
        let starved = p.need.iter().any(|&(k, gained)| {
            let v = lc.unseeded()[k];
            gained < ctx.tau(v) - lc.help[k] as i64
        });
        if starved {
            continue;
        }
        let help = p
            .pred_order
            .iter()
            .skip(p.pred_seeded)
            .zip(&p.carry)
            .map(|(&v, carry)| {
                let raw = match *carry {
                    Carry::Shared { position, gained } => lc.help[position] as u64 + gained as u64,
                    Carry::Old { gained } => gained as u64,
                };
                prev.cap.clamp(raw, ctx.tau(v))
            })
            .collect();
        let predecessor = LocalCascade {
            layer: prev.layer,
            order: p.pred_order.clone(),
            seeded: p.pred_seeded,
            help,
        };
        debug_assert!(prev.get(&predecessor).is_some(), "missing predecessor cell");
        let value = prev
            .value(&predecessor)
            .plus(p.old_seeds.len() + p.interior_seeds.len());
        if value < best.value {
            best = Cell {
                value,
                choice: Some(Choice::Step {
                    old_seeds: p.old_seeds.iter().copied().collect(),
                    interior_seeds: p.interior_seeds.iter().copied().collect(),
                    joint_order: p.joint_order.clone(),
                    predecessor,
                }),
            };
        }
    }
    best
}

/// Value and witness `Y_1` of a layer-1 cell.
pub fn base_case(
    instance: &ThresholdedInstance,
    decomposition: &Decomposition,
    lc: &LocalCascade,
) -> Result<Cell> {
    if lc.layer != 1 {
        return Err(Error::Input(format!(
            "base case asked for layer {}",
            lc.layer
        )));
    }
    let ctx = LayerContext::new(instance, decomposition, 1);
    Ok(resolve_base(
        lc,
        &ctx.base_profiles(&lc.order, lc.seeded),
        &ctx,
    ))
}

/// Value and backpointer of a cell of layer `lc.layer > 1`, given the sealed
/// table of the previous layer.
pub fn transition(
    instance: &ThresholdedInstance,
    decomposition: &Decomposition,
    lc: &LocalCascade,
    prev: &DpTable,
) -> Result<Cell> {
    if lc.layer < 2 || prev.layer + 1 != lc.layer {
        return Err(Error::Input(format!(
            "transition for layer {} needs the table of layer {}",
            lc.layer,
            lc.layer.saturating_sub(1)
        )));
    }
    let ctx = LayerContext::new(instance, decomposition, lc.layer);
    let profiles = ctx.step_profiles(&lc.order, lc.seeded);
    Ok(resolve_step(lc, &profiles, &ctx, prev))
}

fn build_table(
    instance: &ThresholdedInstance,
    decomposition: &Decomposition,
    i: usize,
    cap: HelpCap,
    prev: Option<&DpTable>,
) -> Result<DpTable> {
    let ctx = LayerContext::new(instance, decomposition, i);
    let boundary = &decomposition.layer(i).boundary;
    let cascades = enumerate_local_cascades(i, boundary, instance.thresholds(), cap)?;
    let mut cells = Vec::with_capacity(cascades.len());
    let mut group: Option<(Vec<VertexId>, usize)> = None;
    let mut base = Vec::new();
    let mut step = Vec::new();
    for lc in cascades {
        let key = (lc.order.clone(), lc.seeded);
        if group.as_ref() != Some(&key) {
            match prev {
                None => base = ctx.base_profiles(&lc.order, lc.seeded),
                Some(_) => step = ctx.step_profiles(&lc.order, lc.seeded),
            }
            group = Some(key);
        }
        let cell = match prev {
            None => resolve_base(&lc, &base, &ctx),
            Some(prev) => resolve_step(&lc, &step, &ctx, prev),
        };
        cells.push((lc, cell));
    }
    Ok(DpTable::new(i, cap, cells))
}

/// Full run of the dynamic program on a connected instance.
#[derive(Clone, Debug)]
pub struct DpRun {
    pub decomposition: Decomposition,
    /// `tables[i - 1]` is the table of layer `i`.
    pub tables: Vec<DpTable>,
    pub solution: Solution,
}

impl DpRun {
    fn last(&self) -> &DpTable {
        self.tables.last().expect("at least one layer")
    }

    /// The two cells of the last layer with zero help: `(X = B_k, X = ∅)`.
    pub fn final_cells(&self) -> (LocalCascade, LocalCascade) {
        let k = self.tables.len();
        let b = self.decomposition.layer(k).boundary.as_slice().to_vec();
        let seeded = LocalCascade {
            layer: k,
            order: b.clone(),
            seeded: b.len(),
            help: Vec::new(),
        };
        let unseeded = LocalCascade {
            layer: k,
            order: b.clone(),
            seeded: 0,
            help: vec![0; b.len()],
        };
        (seeded, unseeded)
    }

    /// `min(1 + dyn_k(B_k, ·, 0), dyn_k(∅, ·, 0))`, read off the last table.
    pub fn combined_value(&self) -> DynValue {
        let (seeded, unseeded) = self.final_cells();
        let table = self.last();
        table
            .value(&seeded)
            .plus(seeded.seeded)
            .min(table.value(&unseeded))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub dyn_value: usize,
    pub monopoly: VertexSet,
}

fn unroll(tables: &[DpTable], start: &LocalCascade) -> VertexSet {
    let mut seeds: Vec<VertexId> = start.order[..start.seeded].to_vec();
    let mut lc = start.clone();
    loop {
        let cell = tables[lc.layer - 1]
            .get(&lc)
            .expect("backpointers stay inside the tables");
        match cell.choice.as_ref().expect("feasible cells carry a choice") {
            Choice::Base { extra } => {
                seeds.extend(extra.iter());
                break;
            }
            Choice::Step {
                old_seeds,
                interior_seeds,
                predecessor,
                ..
            } => {
                seeds.extend(old_seeds.iter());
                seeds.extend(interior_seeds.iter());
                lc = predecessor.clone();
            }
        }
    }
    seeds.into_iter().collect()
}

/// Runs the dynamic program on a connected instance whose normalized
/// representation is `rep`. The caller guarantees `tau <= t`.
pub fn solve_connected(
    instance: &ThresholdedInstance,
    rep: &NormalizedRepresentation,
    cap: HelpCap,
) -> Result<DpRun> {
    if rep.len() != instance.order() || rep.is_empty() {
        return Err(Error::Input(format!(
            "representation has {} intervals for {} vertices",
            rep.len(),
            instance.order()
        )));
    }
    let cuts = compute_cut_structure(rep);
    if cuts.counts.contains(&0) {
        return Err(Error::Input("representation is disconnected".into()));
    }
    let decomposition = compute_decomposition(&cuts, instance.bound());
    let mut tables: Vec<DpTable> = Vec::with_capacity(decomposition.layer_count());
    for i in 1..=decomposition.layer_count() {
        let table = build_table(instance, &decomposition, i, cap, tables.last())?;
        tables.push(table);
    }
    let mut run = DpRun {
        decomposition,
        tables,
        solution: Solution {
            dyn_value: 0,
            monopoly: VertexSet::new(),
        },
    };
    let (seeded, unseeded) = run.final_cells();
    let last = run.last();
    let with_seed = last.value(&seeded).plus(seeded.seeded);
    let without = last.value(&unseeded);
    let best = if without <= with_seed {
        unseeded
    } else {
        seeded
    };
    let dyn_value = with_seed.min(without).finite().ok_or_else(|| {
        Error::Constraint("no dynamic monopoly satisfies the layer bounds".into())
    })?;
    run.solution = Solution {
        dyn_value,
        monopoly: unroll(&run.tables, &best),
    };
    Ok(run)
}

/// Minimum dynamic monopoly of an interval instance.
///
/// Components are solved independently; the representation must realise
/// exactly the instance graph and every threshold must be at most `t`.
pub fn solve(instance: &ThresholdedInstance, rep: &IntervalRepresentation) -> Result<Solution> {
    if rep.len() != instance.order() {
        return Err(Error::Input(format!(
            "representation has {} intervals for {} vertices",
            rep.len(),
            instance.order()
        )));
    }
    instance.check_bound()?;
    let realized = realize_graph(&normalize(rep), instance.graph().names().to_vec())?;
    if &realized != instance.graph() {
        return Err(Error::Input(
            "interval representation does not match the instance graph".into(),
        ));
    }
    if instance.bound() == 0 {
        return Ok(Solution {
            dyn_value: 0,
            monopoly: VertexSet::new(),
        });
    }
    let mut dyn_value = 0;
    let mut monopoly = Vec::new();
    for component in instance.graph().components() {
        let sub = instance.restrict(&component)?;
        let sub_rep = normalize(&rep.restrict(&component));
        let run = solve_connected(&sub, &sub_rep, HelpCap::Threshold)?;
        dyn_value += run.solution.dyn_value;
        monopoly.extend(
            run.solution
                .monopoly
                .iter()
                .map(|v| component.as_slice()[v]),
        );
    }
    Ok(Solution {
        dyn_value,
        monopoly: monopoly.into_iter().collect(),
    })
}
