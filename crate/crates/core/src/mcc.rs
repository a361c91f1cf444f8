//! Exact minimum-cost circulation with arc lower bounds and uncapacitated arcs.
//!
//! Lower bounds are substituted away (`x = lower + x'`), leaving a flow problem
//! with node excesses. That problem is solved by successive shortest paths
//! with node potentials: each phase runs Dijkstra under reduced costs from all
//! nodes with remaining excess, raises the potentials, and then routes as much
//! flow as possible along zero-reduced-cost paths with a blocking-flow pass.
//! Costs are nonnegative integers, so the potentials stay integral and the
//! final potentials are an optimal dual solution.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

use crate::digraph::{net_outflow, ArcId, BiDigraph, Digraph, NodeId, Potential};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MccError {
    #[error("expected {expected} per-arc entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative lower bound on arc {0}")]
    NegativeLower(ArcId),
    #[error("negative cost on arc {0}")]
    NegativeCost(ArcId),
    #[error("negative flow on arc {0}")]
    NegativeFlow(ArcId),
    #[error("input is not a circulation")]
    NotCirculation,
    #[error("no feasible circulation: the arcs entering the {} nodes of the cut carry lower bounds {demand} but no arc leaves it", cut.len())]
    Infeasible { cut: Vec<NodeId>, demand: i64 },
    #[error("integer overflow while summing bounds")]
    Overflow,
    #[error("solver invariant violated: {0}")]
    Internal(String),
}

/// A circulation problem: every arc has a lower bound, no upper bound, and a
/// nonnegative integer cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculationInstance {
    digraph: Digraph,
    lower: Vec<i64>,
    cost: Vec<i64>,
}

impl CirculationInstance {
    pub fn new(digraph: Digraph, lower: Vec<i64>, cost: Vec<i64>) -> Result<Self, MccError> {
        let m = digraph.arc_count();
        for len in [lower.len(), cost.len()] {
            if len != m {
                return Err(MccError::LengthMismatch {
                    expected: m,
                    found: len,
                });
            }
        }
        if let Some(a) = lower.iter().position(|&x| x < 0) {
            return Err(MccError::NegativeLower(a));
        }
        if let Some(a) = cost.iter().position(|&x| x < 0) {
            return Err(MccError::NegativeCost(a));
        }
        Ok(CirculationInstance {
            digraph,
            lower,
            cost,
        })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn cost(&self) -> &[i64] {
        &self.cost
    }

    /// Dual value `Σ lower(a)·(cost(a) − Δπ(a))` of a cost-feasible potential.
    pub fn dual_value(&self, pi: &Potential) -> i64 {
        self.digraph
            .arcs()
            .iter()
            .zip(self.lower.iter().zip(&self.cost))
            .map(|(&e, (&l, &c))| l * (c - pi.drop_on(e)))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McfSolution {
    pub flow: Vec<i64>,
    /// Optimal dual potential; `Δπ(a) ≤ cost(a)` on every arc.
    pub potential: Potential,
    pub objective: i64,
}

impl McfSolution {
    /// Re-checks primal feasibility, dual feasibility, complementary slackness
    /// and equality of primal and dual objective values.
    pub fn check(&self, inst: &CirculationInstance) -> Result<(), String> {
        let d = &inst.digraph;
        if self.flow.len() != d.arc_count() || self.potential.len() != d.node_count() {
            return Err("solution has the wrong shape".into());
        }
        let net = net_outflow(d.node_count(), d.arcs().iter().copied(), &self.flow);
        if let Some(v) = net.iter().position(|&x| x != 0) {
            return Err(format!("flow is not conserved at node {v}"));
        }
        for (a, &e) in d.arcs().iter().enumerate() {
            let drop = self.potential.drop_on(e);
            if self.flow[a] < inst.lower[a] {
                return Err(format!("flow below lower bound on arc {a}"));
            }
            if drop > inst.cost[a] {
                return Err(format!("potential is not cost-feasible on arc {a}"));
            }
            if self.flow[a] > inst.lower[a] && drop != inst.cost[a] {
                return Err(format!("complementary slackness fails on arc {a}"));
            }
        }
        let primal: i64 = self.flow.iter().zip(&inst.cost).map(|(x, c)| x * c).sum();
        if primal != self.objective {
            return Err("reported objective differs from c·x".into());
        }
        if inst.dual_value(&self.potential) != self.objective {
            return Err("primal and dual objective values differ".into());
        }
        Ok(())
    }
}

/// Residual arc `2a` runs along arc `a` with unbounded capacity; `2a + 1` runs
/// against it with capacity equal to the flow above the lower bound.
struct Residual<'a> {
    arcs: &'a [(NodeId, NodeId)],
    cost: &'a [i64],
    extra: Vec<i64>,
    start: Vec<usize>,
    adj: Vec<usize>,
}

impl<'a> Residual<'a> {
    fn new(n: usize, arcs: &'a [(NodeId, NodeId)], cost: &'a [i64]) -> Self {
        let mut start = vec![0usize; n + 1];
        for &(u, v) in arcs {
            start[u + 1] += 1;
            start[v + 1] += 1;
        }
        for v in 0..n {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut adj = vec![0usize; 2 * arcs.len()];
        for (a, &(u, v)) in arcs.iter().enumerate() {
            adj[fill[u]] = 2 * a;
            fill[u] += 1;
            adj[fill[v]] = 2 * a + 1;
            fill[v] += 1;
        }
        Residual {
            arcs,
            cost,
            extra: vec![0; arcs.len()],
            start,
            adj,
        }
    }

    fn out(&self, v: NodeId) -> &[usize] {
        &self.adj[self.start[v]..self.start[v + 1]]
    }

    fn head(&self, r: usize) -> NodeId {
        let (u, v) = self.arcs[r / 2];
        if r.is_multiple_of(2) {
            v
        } else {
            u
        }
    }

    fn tail(&self, r: usize) -> NodeId {
        let (u, v) = self.arcs[r / 2];
        if r.is_multiple_of(2) {
            u
        } else {
            v
        }
    }

    /// `None` means unbounded.
    fn capacity(&self, r: usize) -> Option<i64> {
        if r.is_multiple_of(2) {
            None
        } else {
            Some(self.extra[r / 2])
        }
    }

    fn usable(&self, r: usize) -> bool {
        self.capacity(r).is_none_or(|c| c > 0)
    }

    fn reduced_cost(&self, r: usize, pot: &[i64]) -> i64 {
        let c = if r.is_multiple_of(2) {
            self.cost[r / 2]
        } else {
            -self.cost[r / 2]
        };
        c + pot[self.tail(r)] - pot[self.head(r)]
    }

    fn push(&mut self, r: usize, amount: i64) {
        if r.is_multiple_of(2) {
            self.extra[r / 2] += amount;
        } else {
            self.extra[r / 2] -= amount;
        }
    }
}

/// Solves the circulation problem to optimality, returning an integral optimal
/// flow together with an integral optimal dual potential.
pub fn solve(inst: &CirculationInstance) -> Result<McfSolution, MccError> {
    let d = &inst.digraph;
    let n = d.node_count();
    let mut excess = vec![0i64; n];
    for (&(u, v), &l) in d.arcs().iter().zip(&inst.lower) {
        excess[v] = excess[v].checked_add(l).ok_or(MccError::Overflow)?;
        excess[u] = excess[u].checked_sub(l).ok_or(MccError::Overflow)?;
    }
    let mut res = Residual::new(n, d.arcs(), &inst.cost);
    let mut pot = vec![0i64; n];

    while excess.iter().any(|&x| x > 0) {
        let target = shortest_path_phase(&res, &excess, &mut pot);
        let Some(_) = target else {
            return Err(infeasible_cut(&res, &excess, inst));
        };
        while blocking_flow(&mut res, &mut excess, &pot) {}
    }

    let flow: Vec<i64> = inst
        .lower
        .iter()
        .zip(&res.extra)
        .map(|(l, x)| l + x)
        .collect();
    let objective = flow
        .iter()
        .zip(&inst.cost)
        .try_fold(0i64, |acc, (x, c)| acc.checked_add(x.checked_mul(*c)?))
        .ok_or(MccError::Overflow)?;
    Ok(McfSolution {
        flow,
        potential: Potential::new(pot).normalized(),
        objective,
    })
}

/// Dijkstra from every node with positive excess. Potentials are raised by the
/// distance, capped at the distance of the nearest deficit node, which keeps
/// every residual reduced cost nonnegative. Returns that distance, or `None`
/// when no deficit node is reachable.
fn shortest_path_phase(res: &Residual, excess: &[i64], pot: &mut [i64]) -> Option<i64> {
    let n = excess.len();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for v in (0..n).filter(|&v| excess[v] > 0) {
        dist[v] = Some(0);
        heap.push(Reverse((0i64, v)));
    }
    let mut target = None;
    while let Some(Reverse((du, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if excess[u] < 0 {
            target = Some(du);
            break;
        }
        for &r in res.out(u) {
            if !res.usable(r) {
                continue;
            }
            let v = res.head(r);
            let rc = res.reduced_cost(r, pot);
            debug_assert!(rc >= 0, "negative reduced cost {rc}");
            let candidate = du + rc;
            if dist[v].is_none_or(|dv| candidate < dv) {
                dist[v] = Some(candidate);
                heap.push(Reverse((candidate, v)));
            }
        }
    }
    let t = target?;
    for v in 0..n {
        pot[v] += dist[v].map_or(t, |dv| dv.min(t));
    }
    Some(t)
}

/// One round of level-graph augmentation on the zero-reduced-cost residual
/// arcs. Returns false when no deficit node is reachable.
fn blocking_flow(res: &mut Residual, excess: &mut [i64], pot: &[i64]) -> bool {
    const UNSEEN: usize = usize::MAX;
    let n = excess.len();
    let mut level = vec![UNSEEN; n];
    let mut queue = VecDeque::new();
    for v in (0..n).filter(|&v| excess[v] > 0) {
        level[v] = 0;
        queue.push_back(v);
    }
    let mut sink_level = UNSEEN;
    while let Some(u) = queue.pop_front() {
        if level[u] >= sink_level {
            break;
        }
        if excess[u] < 0 {
            sink_level = level[u];
            continue;
        }
        for &r in res.out(u) {
            let v = res.head(r);
            if level[v] == UNSEEN && res.usable(r) && res.reduced_cost(r, pot) == 0 {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if sink_level == UNSEEN {
        return false;
    }

    let mut next = res.start[..n].to_vec();
    let sources: Vec<NodeId> = (0..n).filter(|&v| excess[v] > 0).collect();
    let mut path: Vec<usize> = Vec::new();
    for s in sources {
        'augment: while excess[s] > 0 {
            path.clear();
            let mut u = s;
            while !(excess[u] < 0 && level[u] == sink_level) {
                let mut advanced = false;
                while next[u] < res.start[u + 1] {
                    let r = res.adj[next[u]];
                    let v = res.head(r);
                    if level[v] != UNSEEN
                        && level[v] == level[u] + 1
                        && level[v] <= sink_level
                        && res.usable(r)
                        && res.reduced_cost(r, pot) == 0
                    {
                        path.push(r);
                        u = v;
                        advanced = true;
                        break;
                    }
                    next[u] += 1;
                }
                if !advanced {
                    level[u] = UNSEEN;
                    match path.pop() {
                        Some(r) => {
                            u = res.tail(r);
                            next[u] += 1;
                        }
                        None => break 'augment,
                    }
                }
            }
            let mut amount = excess[s].min(-excess[u]);
            for &r in &path {
                if let Some(c) = res.capacity(r) {
                    amount = amount.min(c);
                }
            }
            for &r in &path {
                res.push(r, amount);
            }
            excess[s] -= amount;
            excess[u] += amount;
        }
    }
    true
}

fn infeasible_cut(res: &Residual, excess: &[i64], inst: &CirculationInstance) -> MccError {
    let n = excess.len();
    let mut seen = vec![false; n];
    let mut stack: Vec<NodeId> = (0..n).filter(|&v| excess[v] > 0).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(u) = stack.pop() {
        for &r in res.out(u) {
            let v = res.head(r);
            if !seen[v] && res.usable(r) {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    let cut: Vec<NodeId> = (0..n).filter(|&v| seen[v]).collect();
    let demand = inst
        .digraph
        .arcs()
        .iter()
        .zip(&inst.lower)
        .filter(|&(&(u, v), _)| !seen[u] && seen[v])
        .map(|(_, &l)| l)
        .sum();
    MccError::Infeasible { cut, demand }
}

/// A directed cycle of a [`BiDigraph`], listed as consecutive arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneWayCircuit {
    pub arcs: Vec<ArcId>,
}

impl OneWayCircuit {
    pub fn nodes(&self, b: &BiDigraph) -> Vec<NodeId> {
        self.arcs.iter().map(|&a| b.arc(a).0).collect()
    }

    /// Number of original (cost 1) arcs on the circuit.
    pub fn a_value(&self, b: &BiDigraph) -> usize {
        self.arcs.iter().filter(|&&a| b.is_original(a)).count()
    }
}

/// Splits a nonnegative integral circulation into one-way circuits with
/// positive multiplicities, by repeatedly peeling off a directed cycle of the
/// support and subtracting its bottleneck value.
pub fn decompose(b: &BiDigraph, z: &[i64]) -> Result<Vec<(OneWayCircuit, i64)>, MccError> {
    let m2 = b.arc_count();
    if z.len() != m2 {
        return Err(MccError::LengthMismatch {
            expected: m2,
            found: z.len(),
        });
    }
    if let Some(a) = z.iter().position(|&x| x < 0) {
        return Err(MccError::NegativeFlow(a));
    }
    if !crate::digraph::is_circulation(b, z) {
        return Err(MccError::NotCirculation);
    }
    let n = b.node_count();
    let mut out: Vec<Vec<ArcId>> = vec![Vec::new(); n];
    for a in 0..m2 {
        out[b.arc(a).0].push(a);
    }
    let mut rest = z.to_vec();
    let mut next = vec![0usize; n];
    let mut pos = vec![usize::MAX; n];
    let mut circuits = Vec::new();

    for first in 0..m2 {
        while rest[first] > 0 {
            let mut walk: Vec<(NodeId, ArcId)> = Vec::new();
            let mut x = b.arc(first).0;
            let cycle_start = loop {
                pos[x] = walk.len();
                let arc = loop {
                    let a = out[x][next[x]];
                    if rest[a] > 0 {
                        break a;
                    }
                    next[x] += 1;
                };
                walk.push((x, arc));
                let y = b.arc(arc).1;
                if pos[y] != usize::MAX {
                    break pos[y];
                }
                x = y;
            };
            for &(v, _) in &walk {
                pos[v] = usize::MAX;
            }
            let arcs: Vec<ArcId> = walk[cycle_start..].iter().map(|&(_, a)| a).collect();
            let mult = arcs.iter().map(|&a| rest[a]).min().unwrap_or(0);
            for &a in &arcs {
                rest[a] -= mult;
            }
            circuits.push((OneWayCircuit { arcs }, mult));
        }
    }
    Ok(circuits)
}
