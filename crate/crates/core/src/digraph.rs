//! Directed multigraphs, their bidirection, potentials and tensions.
//!
//! Arcs are addressed by index so that parallel arcs, and the original and
//! reversed copies inside a [`BiDigraph`], never get conflated.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_traits::Zero;
use thiserror::Error;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("a digraph needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("arc {arc} is a loop at node {node}")]
    Loop { arc: ArcId, node: NodeId },
    #[error("arc {arc} refers to node {node}, which does not exist")]
    NodeOutOfRange { arc: ArcId, node: NodeId },
    #[error("node {0} is out of range")]
    UnknownNodeId(NodeId),
    #[error("the underlying undirected graph is not connected")]
    NotConnected,
    #[error("node name {0:?} is used twice")]
    DuplicateName(String),
    #[error("unknown node name {0:?}")]
    UnknownNode(String),
    #[error("arc {0} is out of range")]
    ArcOutOfRange(ArcId),
    #[error("arc {0} is both fixed and reversed")]
    Overlap(ArcId),
    #[error("node {0} belongs to both sides of the pair")]
    SetsOverlap(NodeId),
    #[error("arc {0} has both ends inside the same side of the pair")]
    NotStable(ArcId),
    #[error("potential drop {drop} on arc {arc} is not in {{0,1}}")]
    NotSmallDropping { arc: ArcId, drop: i64 },
    #[error("lower bound exceeds upper bound on arc {0}")]
    EmptyRange(ArcId),
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative value on arc {0}")]
    NegativeEntry(ArcId),
}

/// Loopless, weakly connected multidigraph with at least two nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<String>,
    arcs: Vec<(NodeId, NodeId)>,
}

impl Digraph {
    /// Builds a digraph on nodes `0..n`, named by their index.
    pub fn new(n: usize, arcs: Vec<(NodeId, NodeId)>) -> Result<Self, DigraphError> {
        Self::with_names((0..n).map(|v| v.to_string()).collect(), arcs)
    }

    pub fn with_names(
        names: Vec<String>,
        arcs: Vec<(NodeId, NodeId)>,
    ) -> Result<Self, DigraphError> {
        let n = names.len();
        if n < 2 {
            return Err(DigraphError::TooFewNodes(n));
        }
        let mut seen = std::collections::HashSet::with_capacity(n);
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(DigraphError::DuplicateName(name.clone()));
            }
        }
        for (a, &(u, v)) in arcs.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(DigraphError::NodeOutOfRange { arc: a, node: x });
                }
            }
            if u == v {
                return Err(DigraphError::Loop { arc: a, node: u });
            }
        }
        let g = Digraph { names, arcs };
        if !g.is_weakly_connected() {
            return Err(DigraphError::NotConnected);
        }
        Ok(g)
    }

    /// Builds a digraph from node names and arcs given as name pairs.
    pub fn from_named_arcs<S: AsRef<str>>(
        names: &[S],
        arcs: &[(S, S)],
    ) -> Result<Self, DigraphError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index: std::collections::HashMap<&str, NodeId> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| DigraphError::UnknownNode(s.as_ref().to_string()))
        };
        let arcs = arcs
            .iter()
            .map(|(u, v)| Ok((lookup(u)?, lookup(v)?)))
            .collect::<Result<Vec<_>, DigraphError>>()?;
        Self::with_names(names, arcs)
    }

    fn is_weakly_connected(&self) -> bool {
        let n = self.node_count();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.arcs {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, a: ArcId) -> (NodeId, NodeId) {
        self.arcs[a]
    }

    pub fn arcs(&self) -> &[(NodeId, NodeId)] {
        &self.arcs
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|s| s == name)
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count()];
        for &(_, v) in &self.arcs {
            deg[v] += 1;
        }
        deg
    }

    /// Nodes with no entering arc, and nodes with no leaving arc.
    pub fn sources_sinks(&self) -> (Vec<NodeId>, Vec<NodeId>) {
        let n = self.node_count();
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        for &(u, v) in &self.arcs {
            has_out[u] = true;
            has_in[v] = true;
        }
        let sources = (0..n).filter(|&v| !has_in[v]).collect();
        let sinks = (0..n).filter(|&v| !has_out[v]).collect();
        (sources, sinks)
    }

    /// Same nodes, with every arc selected by `flip` reversed.
    pub fn reorient(&self, mut flip: impl FnMut(ArcId) -> bool) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .enumerate()
            .map(|(a, &(u, v))| if flip(a) { (v, u) } else { (u, v) })
            .collect();
        Digraph {
            names: self.names.clone(),
            arcs,
        }
    }
}

/// The digraph with every arc accompanied by its reverse.
///
/// Arc `i < m` is the original arc `i`, arc `i + m` is its reverse. The cost
/// is the characteristic vector of the original arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiDigraph {
    base: Digraph,
}

pub fn bidirect(d: &Digraph) -> BiDigraph {
    BiDigraph { base: d.clone() }
}

impl BiDigraph {
    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn node_count(&self) -> usize {
        self.base.node_count()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.base.arc_count()
    }

    pub fn is_original(&self, a: ArcId) -> bool {
        a < self.base.arc_count()
    }

    /// Index of the base arc this arc was derived from.
    pub fn base_arc(&self, a: ArcId) -> ArcId {
        a % self.base.arc_count()
    }

    pub fn reverse(&self, a: ArcId) -> ArcId {
        let m = self.base.arc_count();
        (a + m) % (2 * m)
    }

    pub fn arc(&self, a: ArcId) -> (NodeId, NodeId) {
        let (u, v) = self.base.arc(self.base_arc(a));
        if self.is_original(a) {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn cost(&self, a: ArcId) -> i64 {
        i64::from(self.is_original(a))
    }

    pub fn costs(&self) -> Vec<i64> {
        (0..self.arc_count()).map(|a| self.cost(a)).collect()
    }
}

/// Integer node labels. The drop on arc `uv` is `π(v) − π(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Potential(Vec<i64>);

impl Potential {
    pub fn new(values: Vec<i64>) -> Self {
        Potential(values)
    }

    pub fn zero(n: usize) -> Self {
        Potential(vec![0; n])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn value(&self, v: NodeId) -> i64 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn drop_on(&self, (u, v): (NodeId, NodeId)) -> i64 {
        self.0[v] - self.0[u]
    }

    pub fn tension(&self, d: &Digraph) -> Vec<i64> {
        d.arcs().iter().map(|&e| self.drop_on(e)).collect()
    }

    /// Shifts the labels so that the smallest one is 0.
    pub fn normalized(mut self) -> Self {
        if let Some(&min) = self.0.iter().min() {
            self.0.iter_mut().for_each(|x| *x -= min);
        }
        self
    }

    /// First arc of `d` whose drop is outside {0,1}, if any.
    pub fn small_dropping_violation(&self, d: &Digraph) -> Option<(ArcId, i64)> {
        d.arcs()
            .iter()
            .enumerate()
            .map(|(a, &e)| (a, self.drop_on(e)))
            .find(|&(_, drop)| drop != 0 && drop != 1)
    }

    pub fn is_small_dropping(&self, d: &Digraph) -> bool {
        self.len() == d.node_count() && self.small_dropping_violation(d).is_none()
    }
}

/// Role of an arc relative to a node-set pair `(Y_o, Y_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcClass {
    /// Leaves `Y_o` or enters `Y_i`.
    Correct,
    /// Enters `Y_o` or leaves `Y_i`.
    Incorrect,
    Neutral,
}

pub(crate) fn membership(n: usize, set: &[NodeId]) -> Result<Vec<bool>, DigraphError> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(DigraphError::UnknownNodeId(v));
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Classifies every arc of `d` against the disjoint stable sets `y_o`, `y_i`.
pub fn classify_arcs(
    d: &Digraph,
    y_o: &[NodeId],
    y_i: &[NodeId],
) -> Result<Vec<ArcClass>, DigraphError> {
    let n = d.node_count();
    let in_o = membership(n, y_o)?;
    let in_i = membership(n, y_i)?;
    if let Some(v) = (0..n).find(|&v| in_o[v] && in_i[v]) {
        return Err(DigraphError::SetsOverlap(v));
    }
    d.arcs()
        .iter()
        .enumerate()
        .map(|(a, &(u, v))| {
            if (in_o[u] && in_o[v]) || (in_i[u] && in_i[v]) {
                return Err(DigraphError::NotStable(a));
            }
            let incorrect = in_o[v] || in_i[u];
            let correct = in_o[u] || in_i[v];
            Ok(match (incorrect, correct) {
                (true, _) => ArcClass::Incorrect,
                (false, true) => ArcClass::Correct,
                (false, false) => ArcClass::Neutral,
            })
        })
        .collect()
}

/// One arc of a circuit, traversed along (`forward`) or against its direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitStep {
    pub arc: ArcId,
    pub forward: bool,
}

/// A circuit on which the lower bounds of the backward arcs add up to more
/// than the upper bounds of the forward arcs, so no feasible tension exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolatingCircuit {
    pub steps: Vec<CircuitStep>,
    /// Sum of lower bounds over the arcs traversed backward.
    pub lower_total: i64,
    /// Sum of upper bounds over the arcs traversed forward.
    pub upper_total: i64,
}

impl ViolatingCircuit {
    /// Nodes in traversal order (the first node is not repeated at the end).
    pub fn nodes(&self, d: &Digraph) -> Vec<NodeId> {
        self.steps
            .iter()
            .map(|s| {
                let (u, v) = d.arc(s.arc);
                if s.forward {
                    u
                } else {
                    v
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensionOutcome {
    Feasible(Potential),
    Infeasible(ViolatingCircuit),
}

impl TensionOutcome {
    pub fn potential(&self) -> Option<&Potential> {
        match self {
            TensionOutcome::Feasible(p) => Some(p),
            TensionOutcome::Infeasible(_) => None,
        }
    }

    pub fn circuit(&self) -> Option<&ViolatingCircuit> {
        match self {
            TensionOutcome::Feasible(_) => None,
            TensionOutcome::Infeasible(c) => Some(c),
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, TensionOutcome::Feasible(_))
    }
}

#[derive(Clone, Copy)]
struct Constraint {
    from: NodeId,
    to: NodeId,
    weight: i64,
    step: CircuitStep,
}

/// Finds an integer potential with `lo[e] ≤ Δπ(e) ≤ hi[e]` on every arc, or a
/// circuit proving that none exists. `None` stands for an absent bound.
///
/// The bounds form a difference-constraint system (`π(v) ≤ π(u) + hi` and
/// `π(u) ≤ π(v) − lo` for every arc `uv`) that is solved by label-correcting
/// shortest paths from a virtual root. A negative cycle of the constraint
/// graph is exactly a violating circuit. The returned potential has minimum 0.
pub fn feasible_tension(
    d: &Digraph,
    lo: &[Option<i64>],
    hi: &[Option<i64>],
) -> Result<TensionOutcome, DigraphError> {
    let m = d.arc_count();
    for len in [lo.len(), hi.len()] {
        if len != m {
            return Err(DigraphError::LengthMismatch {
                expected: m,
                found: len,
            });
        }
    }
    let mut constraints = Vec::with_capacity(2 * m);
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        if let (Some(l), Some(h)) = (lo[a], hi[a]) {
            if l > h {
                return Err(DigraphError::EmptyRange(a));
            }
        }
        if let Some(h) = hi[a] {
            constraints.push(Constraint {
                from: u,
                to: v,
                weight: h,
                step: CircuitStep {
                    arc: a,
                    forward: true,
                },
            });
        }
        if let Some(l) = lo[a] {
            constraints.push(Constraint {
                from: v,
                to: u,
                weight: -l,
                step: CircuitStep {
                    arc: a,
                    forward: false,
                },
            });
        }
    }
    Ok(solve_differences(d.node_count(), &constraints))
}

fn solve_differences(n: usize, constraints: &[Constraint]) -> TensionOutcome {
    let mut start = vec![0usize; n + 1];
    for c in constraints {
        start[c.from + 1] += 1;
    }
    for v in 0..n {
        start[v + 1] += start[v];
    }
    let mut order = vec![0usize; constraints.len()];
    let mut fill = start.clone();
    for (i, c) in constraints.iter().enumerate() {
        order[fill[c.from]] = i;
        fill[c.from] += 1;
    }

    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut queued = vec![true; n];
    let mut queue: VecDeque<NodeId> = (0..n).collect();
    let bound = n.saturating_mul(constraints.len().max(1));
    let mut relaxations = 0usize;

    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        for &ci in &order[start[u]..start[u + 1]] {
            let c = constraints[ci];
            let candidate = dist[u] + c.weight;
            if candidate < dist[c.to] {
                dist[c.to] = candidate;
                pred[c.to] = Some(ci);
                depth[c.to] = depth[u] + 1;
                relaxations += 1;
                if depth[c.to] >= n {
                    if let Some(cycle) = predecessor_cycle(c.to, &pred, constraints) {
                        return TensionOutcome::Infeasible(cycle);
                    }
                }
                if relaxations > bound {
                    return TensionOutcome::Infeasible(rounds_negative_cycle(n, constraints));
                }
                if !queued[c.to] {
                    queued[c.to] = true;
                    queue.push_back(c.to);
                }
            }
        }
    }
    TensionOutcome::Feasible(Potential(dist).normalized())
}

/// Walks predecessor links from `start`; returns the cycle if the walk closes
/// on itself before reaching the root.
fn predecessor_cycle(
    start: NodeId,
    pred: &[Option<usize>],
    constraints: &[Constraint],
) -> Option<ViolatingCircuit> {
    let mut on_walk = vec![usize::MAX; pred.len()];
    let mut v = start;
    let mut step = 0;
    loop {
        if on_walk[v] != usize::MAX {
            return Some(cycle_through(v, pred, constraints));
        }
        on_walk[v] = step;
        step += 1;
        v = constraints[pred[v]?].from;
    }
}

fn cycle_through(
    v: NodeId,
    pred: &[Option<usize>],
    constraints: &[Constraint],
) -> ViolatingCircuit {
    let mut edges = Vec::new();
    let mut x = v;
    loop {
        let ci = pred[x].expect("node on a predecessor cycle has a predecessor");
        edges.push(constraints[ci]);
        x = constraints[ci].from;
        if x == v {
            break;
        }
    }
    edges.reverse();
    let mut lower_total = 0;
    let mut upper_total = 0;
    for c in &edges {
        if c.step.forward {
            upper_total += c.weight;
        } else {
            lower_total -= c.weight;
        }
    }
    ViolatingCircuit {
        steps: edges.iter().map(|c| c.step).collect(),
        lower_total,
        upper_total,
    }
}

/// Plain round-based Bellman-Ford; only used once the relaxation budget of the
/// queue-based pass has been exhausted, which guarantees a negative cycle.
fn rounds_negative_cycle(n: usize, constraints: &[Constraint]) -> ViolatingCircuit {
    let mut dist = vec![0i64; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for (ci, c) in constraints.iter().enumerate() {
            if dist[c.from] + c.weight < dist[c.to] {
                dist[c.to] = dist[c.from] + c.weight;
                pred[c.to] = Some(ci);
                last = Some(c.to);
            }
        }
        if last.is_none() {
            break;
        }
    }
    let mut v = last.expect("relaxation budget exceeded without a negative cycle");
    for _ in 0..n {
        v = constraints[pred[v].expect("relaxed node has a predecessor")].from;
    }
    cycle_through(v, &pred, constraints)
}

fn arc_mask(m: usize, arcs: &[ArcId]) -> Result<Vec<bool>, DigraphError> {
    let mut mask = vec![false; m];
    for &a in arcs {
        if a >= m {
            return Err(DigraphError::ArcOutOfRange(a));
        }
        mask[a] = true;
    }
    Ok(mask)
}

/// Decides whether `d` has a dicut-equivalent reorientation that reverses
/// every arc of `reversed` and keeps every arc of `fixed`.
///
/// On success the witness is a small-dropping potential with drop 1 on
/// `reversed` and 0 on `fixed`; otherwise a circuit on which the reversed arcs
/// in one direction outnumber the non-fixed arcs in the other.
pub fn verify_reorientable(
    d: &Digraph,
    reversed: &[ArcId],
    fixed: &[ArcId],
) -> Result<TensionOutcome, DigraphError> {
    let m = d.arc_count();
    let r = arc_mask(m, reversed)?;
    let f = arc_mask(m, fixed)?;
    if let Some(a) = (0..m).find(|&a| r[a] && f[a]) {
        return Err(DigraphError::Overlap(a));
    }
    let (lo, hi): (Vec<_>, Vec<_>) = (0..m)
        .map(|a| match (r[a], f[a]) {
            (true, _) => (Some(1), Some(1)),
            (_, true) => (Some(0), Some(0)),
            _ => (Some(0), Some(1)),
        })
        .unzip();
    feasible_tension(d, &lo, &hi)
}

/// Decides whether `(y_o, y_i)` is a source-sink pair of `d`.
pub fn verify_so_si(
    d: &Digraph,
    y_o: &[NodeId],
    y_i: &[NodeId],
) -> Result<TensionOutcome, DigraphError> {
    let classes = classify_arcs(d, y_o, y_i)?;
    let pick = |class| {
        classes
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == class)
            .map(|(a, _)| a)
            .collect::<Vec<_>>()
    };
    verify_reorientable(d, &pick(ArcClass::Incorrect), &pick(ArcClass::Correct))
}

/// Checks a claimed witness directly: `pi` must be small-dropping, with drop 1
/// on every incorrect arc and 0 on every correct arc.
pub fn witness_certifies(
    d: &Digraph,
    y_o: &[NodeId],
    y_i: &[NodeId],
    pi: &Potential,
) -> Result<bool, DigraphError> {
    if pi.len() != d.node_count() {
        return Err(DigraphError::LengthMismatch {
            expected: d.node_count(),
            found: pi.len(),
        });
    }
    let classes = classify_arcs(d, y_o, y_i)?;
    Ok(d.arcs().iter().zip(&classes).all(|(&e, class)| {
        let drop = pi.drop_on(e);
        match class {
            ArcClass::Incorrect => drop == 1,
            ArcClass::Correct => drop == 0,
            ArcClass::Neutral => drop == 0 || drop == 1,
        }
    }))
}

/// Reverses the arcs on which the small-dropping potential `pi` drops by 1.
pub fn apply_reorientation(d: &Digraph, pi: &Potential) -> Result<Digraph, DigraphError> {
    if pi.len() != d.node_count() {
        return Err(DigraphError::LengthMismatch {
            expected: d.node_count(),
            found: pi.len(),
        });
    }
    if let Some((arc, drop)) = pi.small_dropping_violation(d) {
        return Err(DigraphError::NotSmallDropping { arc, drop });
    }
    Ok(d.reorient(|a| pi.drop_on(d.arc(a)) == 1))
}

fn check_len<T>(b: &BiDigraph, z: &[T]) -> Result<(), DigraphError> {
    if z.len() != b.arc_count() {
        return Err(DigraphError::LengthMismatch {
            expected: b.arc_count(),
            found: z.len(),
        });
    }
    Ok(())
}

/// `c·z` where `c` is 1 on original arcs and 0 on reversed copies.
pub fn circulation_cost<T>(b: &BiDigraph, z: &[T]) -> Result<T, DigraphError>
where
    T: Copy + Zero + PartialOrd + Add<Output = T>,
{
    check_len(b, z)?;
    if let Some(a) = z.iter().position(|x| *x < T::zero()) {
        return Err(DigraphError::NegativeEntry(a));
    }
    Ok(z[..b.base().arc_count()]
        .iter()
        .fold(T::zero(), |acc, &x| acc + x))
}

/// Net outflow `δ_z(v) − ρ_z(v)` at every node for a vector on `arcs`.
pub fn net_outflow<T>(n: usize, arcs: impl Iterator<Item = (NodeId, NodeId)>, z: &[T]) -> Vec<T>
where
    T: Copy + Zero + Add<Output = T> + Sub<Output = T>,
{
    let mut net = vec![T::zero(); n];
    for ((u, v), &x) in arcs.zip(z) {
        net[u] = net[u] + x;
        net[v] = net[v] - x;
    }
    net
}

/// Exact check that `z` is a circulation of `b` (in-flow equals out-flow).
pub fn is_circulation<T>(b: &BiDigraph, z: &[T]) -> bool
where
    T: Copy + Zero + Add<Output = T> + Sub<Output = T>,
{
    z.len() == b.arc_count()
        && net_outflow(b.node_count(), (0..b.arc_count()).map(|a| b.arc(a)), z)
            .iter()
            .all(Zero::is_zero)
}
