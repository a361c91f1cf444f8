//! Maximum double-weighted source-sink pairs and minimum circular covers.
//!
//! For a digraph `D = (V, A)` with node weights `(w_o, w_i)` the auxiliary
//! network `D*` has three layers `V_o`, `V`, `V_i`. Every node `v` gets the
//! vertical arcs `v_i → v` (lower bound `w_i(v)`) and `v → v_o` (lower bound
//! `w_o(v)`), and every arc `uv` of the bidirected digraph gets `u → v`,
//! `u → v_i` and `u_o → v`, with cost 1 exactly when `uv` is an original arc.
//!
//! The optimal dual potential of the cheapest feasible circulation on `D*`
//! yields the optimal pair through the vertical potential differences, and
//! the optimal flow yields the optimal cover. Both optima coincide, and every
//! result is re-verified before it is returned.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::digraph::{
    bidirect, is_circulation, membership, witness_certifies, BiDigraph, Digraph, DigraphError,
    NodeId, Potential,
};
use crate::error::ErrorKind;
use crate::mcc::{self, CirculationInstance, MccError, OneWayCircuit};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SosiError {
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error("weight vectors must have one entry per node ({expected}), found {found}")]
    WeightLength { expected: usize, found: usize },
    #[error("negative weight at node {0}")]
    NegativeWeight(NodeId),
    #[error("weight at node {0} is not an integer")]
    NonIntegralWeight(NodeId),
    #[error("node sets overlap at node {0}")]
    OverlappingSets(NodeId),
    #[error("forced node {0} is not in the corresponding allowed set")]
    ForcedNotAllowed(NodeId),
    #[error("weights are too large to scale to integers")]
    Overflow,
    #[error("potential violates the cost bound on auxiliary arc {0}")]
    CostInfeasiblePotential(usize),
    #[error("auxiliary flow is not a feasible circulation")]
    InfeasibleFlow,
    #[error(transparent)]
    Solver(#[from] MccError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl SosiError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            SosiError::Internal(_) => ErrorKind::Internal,
            SosiError::Solver(MccError::Internal(_)) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }
}

/// Nonnegative node weights for sources (`w_o`) and sinks (`w_i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPair {
    pub w_o: Vec<Rational>,
    pub w_i: Vec<Rational>,
}

impl WeightPair {
    pub fn new(w_o: Vec<Rational>, w_i: Vec<Rational>) -> Result<Self, SosiError> {
        if w_o.len() != w_i.len() {
            return Err(SosiError::WeightLength {
                expected: w_o.len(),
                found: w_i.len(),
            });
        }
        for w in [&w_o, &w_i] {
            if let Some(v) = w.iter().position(|x| *x < Rational::zero()) {
                return Err(SosiError::NegativeWeight(v));
            }
        }
        Ok(WeightPair { w_o, w_i })
    }

    pub fn from_integers(w_o: &[i64], w_i: &[i64]) -> Result<Self, SosiError> {
        Self::new(
            w_o.iter().map(|&x| Rational::from_integer(x)).collect(),
            w_i.iter().map(|&x| Rational::from_integer(x)).collect(),
        )
    }

    pub fn zero(n: usize) -> Self {
        WeightPair {
            w_o: vec![Rational::zero(); n],
            w_i: vec![Rational::zero(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.w_o.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w_o.is_empty()
    }

    /// True when every weight is an integer; covers are then integral too.
    pub fn is_integral(&self) -> bool {
        self.w_o.iter().chain(&self.w_i).all(|x| x.is_integer())
    }

    /// `w̃_o(y_o) + w̃_i(y_i)`.
    pub fn pair_weight(&self, y_o: &[NodeId], y_i: &[NodeId]) -> Rational {
        let o: Rational = y_o.iter().map(|&v| self.w_o[v]).sum();
        let i: Rational = y_i.iter().map(|&v| self.w_i[v]).sum();
        o + i
    }

    /// Least common multiple of all denominators.
    fn scale(&self) -> Result<i64, SosiError> {
        self.w_o.iter().chain(&self.w_i).try_fold(1i64, |acc, x| {
            let l = acc.lcm(x.denom());
            (l > 0).then_some(l).ok_or(SosiError::Overflow)
        })
    }
}

/// Which part of the auxiliary network an arc of `D*` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxArc {
    /// `v_i → v`
    InVertical(NodeId),
    /// `v → v_o`
    OutVertical(NodeId),
    /// `u → v` for the bidirected arc `uv`
    Middle(usize),
    /// `u → v_i` for the bidirected arc `uv`
    ToIn(usize),
    /// `u_o → v` for the bidirected arc `uv`
    FromOut(usize),
}

/// The auxiliary network `D*` together with its bounds, costs and back-maps.
///
/// Node `v` of the middle layer keeps its index, `v_o` is `n + v` and `v_i` is
/// `2n + v`. Arcs `0..n` are `v_i → v`, arcs `n..2n` are `v → v_o`, and the
/// bidirected arc `k` contributes arcs `2n + 3k` (middle), `2n + 3k + 1`
/// (into `V_i`) and `2n + 3k + 2` (out of `V_o`).
#[derive(Debug, Clone)]
pub struct AuxNetwork {
    bi: BiDigraph,
    instance: CirculationInstance,
    origin: Vec<AuxArc>,
    scale: i64,
}

impl AuxNetwork {
    pub fn bidigraph(&self) -> &BiDigraph {
        &self.bi
    }

    pub fn instance(&self) -> &CirculationInstance {
        &self.instance
    }

    pub fn digraph(&self) -> &Digraph {
        self.instance.digraph()
    }

    pub fn origin(&self, a: usize) -> AuxArc {
        self.origin[a]
    }

    /// Common denominator the weights were multiplied by to make them integral.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    fn n(&self) -> usize {
        self.bi.node_count()
    }

    pub fn out_copy(&self, v: NodeId) -> NodeId {
        self.n() + v
    }

    pub fn in_copy(&self, v: NodeId) -> NodeId {
        2 * self.n() + v
    }

    pub fn in_vertical(&self, v: NodeId) -> usize {
        v
    }

    pub fn out_vertical(&self, v: NodeId) -> usize {
        self.n() + v
    }

    pub fn middle(&self, k: usize) -> usize {
        2 * self.n() + 3 * k
    }

    pub fn to_in(&self, k: usize) -> usize {
        2 * self.n() + 3 * k + 1
    }

    pub fn from_out(&self, k: usize) -> usize {
        2 * self.n() + 3 * k + 2
    }
}

fn scaled(x: &Rational, scale: i64) -> Result<i64, SosiError> {
    (x * Rational::from_integer(scale))
        .to_integer()
        .checked_mul(1)
        .ok_or(SosiError::Overflow)
}

/// Builds `D*` with lower bounds from the (scaled) weights and 0/1 costs.
pub fn build_aux(d: &Digraph, w: &WeightPair) -> Result<AuxNetwork, SosiError> {
    let n = d.node_count();
    if w.len() != n {
        return Err(SosiError::WeightLength {
            expected: n,
            found: w.len(),
        });
    }
    let scale = w.scale()?;
    let bi = bidirect(d);
    let m2 = bi.arc_count();
    let mut arcs = Vec::with_capacity(2 * n + 3 * m2);
    let mut lower = Vec::with_capacity(arcs.capacity());
    let mut cost = Vec::with_capacity(arcs.capacity());
    let mut origin = Vec::with_capacity(arcs.capacity());
    for v in 0..n {
        arcs.push((2 * n + v, v));
        lower.push(scaled(&w.w_i[v], scale)?);
        cost.push(0);
        origin.push(AuxArc::InVertical(v));
    }
    for v in 0..n {
        arcs.push((v, n + v));
        lower.push(scaled(&w.w_o[v], scale)?);
        cost.push(0);
        origin.push(AuxArc::OutVertical(v));
    }
    for k in 0..m2 {
        let (u, v) = bi.arc(k);
        let c = bi.cost(k);
        arcs.push((u, v));
        origin.push(AuxArc::Middle(k));
        arcs.push((u, 2 * n + v));
        origin.push(AuxArc::ToIn(k));
        arcs.push((n + u, v));
        origin.push(AuxArc::FromOut(k));
        lower.extend([0, 0, 0]);
        cost.extend([c, c, c]);
    }
    let names = (0..3 * n)
        .map(|x| match x / n {
            0 => d.name(x).to_string(),
            1 => format!("{}_o", d.name(x - n)),
            _ => format!("{}_i", d.name(x - 2 * n)),
        })
        .collect();
    let aux = Digraph::with_names(names, arcs)?;
    let instance = CirculationInstance::new(aux, lower, cost)?;
    Ok(AuxNetwork {
        bi,
        instance,
        origin,
        scale,
    })
}

/// A pair read off a cost-feasible potential of `D*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedPair {
    pub y_o: Vec<NodeId>,
    pub y_i: Vec<NodeId>,
    /// The middle-layer potential, normalized; small-dropping on the arcs of `D`.
    pub potential: Potential,
    /// Dual value `f*·y*` in scaled units.
    pub dual_value: i64,
}

/// `Y_o = {v : π*(v) − π*(v_o) = 1}` and `Y_i = {v : π*(v_i) − π*(v) = 1}`.
pub fn extract_pair(aux: &AuxNetwork, pi_star: &Potential) -> Result<ExtractedPair, SosiError> {
    let inst = aux.instance();
    let g = inst.digraph();
    if pi_star.len() != g.node_count() {
        return Err(SosiError::Digraph(DigraphError::LengthMismatch {
            expected: g.node_count(),
            found: pi_star.len(),
        }));
    }
    for (a, &e) in g.arcs().iter().enumerate() {
        if pi_star.drop_on(e) > inst.cost()[a] {
            return Err(SosiError::CostInfeasiblePotential(a));
        }
    }
    let n = aux.n();
    let mut y_o = Vec::new();
    let mut y_i = Vec::new();
    for v in 0..n {
        let y_in = pi_star.value(aux.in_copy(v)) - pi_star.value(v);
        let y_out = pi_star.value(v) - pi_star.value(aux.out_copy(v));
        if !(0..=1).contains(&(y_in + y_out)) {
            return Err(SosiError::Internal(format!(
                "vertical slack sum {} at node {v} is outside {{0,1}}",
                y_in + y_out
            )));
        }
        if y_out == 1 {
            y_o.push(v);
        }
        if y_in == 1 {
            y_i.push(v);
        }
    }
    let potential = Potential::new(pi_star.values()[..n].to_vec()).normalized();
    if let Some((arc, drop)) = potential.small_dropping_violation(aux.bi.base()) {
        return Err(SosiError::Internal(format!(
            "restricted potential drops by {drop} on arc {arc}"
        )));
    }
    Ok(ExtractedPair {
        y_o,
        y_i,
        potential,
        dual_value: inst.dual_value(pi_star),
    })
}

/// A pair of nonnegative vectors on the bidirected arcs whose sum is a
/// circulation, `z_o` out-covering `w_o` and `z_i` in-covering `w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularCover {
    pub z_o: Vec<Rational>,
    pub z_i: Vec<Rational>,
}

impl CircularCover {
    pub fn zero(b: &BiDigraph) -> Self {
        CircularCover {
            z_o: vec![Rational::zero(); b.arc_count()],
            z_i: vec![Rational::zero(); b.arc_count()],
        }
    }

    pub fn total(&self) -> Vec<Rational> {
        self.z_o.iter().zip(&self.z_i).map(|(a, b)| a + b).collect()
    }

    /// `c·(z_o + z_i)`: the mass on original arcs.
    pub fn cost(&self, b: &BiDigraph) -> Rational {
        let m = b.base().arc_count();
        self.total()[..m].iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.z_o.iter().chain(&self.z_i).all(|x| x.is_integer())
    }

    /// Integer total `z_o + z_i`; `None` if some entry is fractional.
    pub fn integral_total(&self) -> Option<Vec<i64>> {
        self.total()
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Checks nonnegativity, the covering inequalities and the circulation
    /// condition, returning a description of the first violation.
    pub fn validate(&self, b: &BiDigraph, w: &WeightPair) -> Result<(), String> {
        let m2 = b.arc_count();
        if self.z_o.len() != m2 || self.z_i.len() != m2 || w.len() != b.node_count() {
            return Err("cover has the wrong shape".into());
        }
        if self
            .z_o
            .iter()
            .chain(&self.z_i)
            .any(|x| *x < Rational::zero())
        {
            return Err("cover has a negative entry".into());
        }
        let n = b.node_count();
        let mut out_o = vec![Rational::zero(); n];
        let mut in_i = vec![Rational::zero(); n];
        for a in 0..m2 {
            let (u, v) = b.arc(a);
            out_o[u] += self.z_o[a];
            in_i[v] += self.z_i[a];
        }
        for v in 0..n {
            if out_o[v] < w.w_o[v] {
                return Err(format!("z_o does not out-cover w_o at node {v}"));
            }
            if in_i[v] < w.w_i[v] {
                return Err(format!("z_i does not in-cover w_i at node {v}"));
            }
        }
        if !is_circulation(b, &self.total()) {
            return Err("z_o + z_i is not a circulation".into());
        }
        Ok(())
    }
}

/// Turns a feasible circulation of `D*` into a circular cover of the same cost.
///
/// Flow on a middle arc `uv` is first rerouted through `u → v_i → v`, which
/// keeps feasibility and cost; then `z_o(uv) = z*(u_o v)` and
/// `z_i(uv) = z*(u v_i)`.
pub fn extract_cover(aux: &AuxNetwork, z_star: &[i64]) -> Result<CircularCover, SosiError> {
    let inst = aux.instance();
    let g = inst.digraph();
    if z_star.len() != g.arc_count()
        || z_star.iter().zip(inst.lower()).any(|(x, l)| x < l)
        || crate::digraph::net_outflow(g.node_count(), g.arcs().iter().copied(), z_star)
            .iter()
            .any(|&x| x != 0)
    {
        return Err(SosiError::InfeasibleFlow);
    }
    let mut z = z_star.to_vec();
    let m2 = aux.bi.arc_count();
    for k in 0..m2 {
        let alpha = z[aux.middle(k)];
        if alpha > 0 {
            let v = aux.bi.arc(k).1;
            z[aux.middle(k)] = 0;
            z[aux.to_in(k)] += alpha;
            z[aux.in_vertical(v)] += alpha;
        }
    }
    let denom = aux.scale;
    let value = |x: i64| Rational::new(x, denom);
    Ok(CircularCover {
        z_o: (0..m2).map(|k| value(z[aux.from_out(k)])).collect(),
        z_i: (0..m2).map(|k| value(z[aux.to_in(k)])).collect(),
    })
}

/// Results of re-verifying a certificate from scratch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateChecks {
    /// Pair weight, cover cost and solver objective agree.
    pub minmax_equal: bool,
    /// The witness potential proves that the pair is a source-sink pair.
    pub pair_verified: bool,
    /// The cover is a circular cover of the weights.
    pub cover_valid: bool,
    /// The cover is integral (required whenever the weights are).
    pub integral: bool,
}

impl CertificateChecks {
    pub fn all_pass(&self, integral_weights: bool) -> bool {
        self.minmax_equal
            && self.pair_verified
            && self.cover_valid
            && (self.integral || !integral_weights)
    }
}

/// An optimal source-sink pair together with its dual certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoSiCertificate {
    pub y_o: Vec<NodeId>,
    pub y_i: Vec<NodeId>,
    /// Small-dropping potential whose unit drops reverse the arcs that make
    /// `y_o` sources and `y_i` sinks.
    pub potential: Potential,
    pub cover: CircularCover,
    pub value: Rational,
    /// Optimum of the auxiliary circulation problem, divided by the scale.
    pub objective: Rational,
}

impl SoSiCertificate {
    /// Independent verification against the input digraph and weights.
    pub fn check(&self, d: &Digraph, w: &WeightPair) -> CertificateChecks {
        let b = bidirect(d);
        let cover_cost = self.cover.cost(&b);
        let pair_weight = w.pair_weight(&self.y_o, &self.y_i);
        CertificateChecks {
            minmax_equal: pair_weight == self.value
                && cover_cost == self.value
                && self.objective == self.value,
            pair_verified: witness_certifies(d, &self.y_o, &self.y_i, &self.potential)
                .unwrap_or(false)
                && self.potential.is_small_dropping(d),
            cover_valid: self.cover.validate(&b, w).is_ok(),
            integral: self.cover.is_integral(),
        }
    }

    pub fn reoriented(&self, d: &Digraph) -> Digraph {
        d.reorient(|a| self.potential.drop_on(d.arc(a)) == 1)
    }
}

/// Maximum `(w_o, w_i)`-weight source-sink pair, with a minimum-cost circular
/// cover proving optimality.
pub fn max_so_si(d: &Digraph, w: &WeightPair) -> Result<SoSiCertificate, SosiError> {
    let aux = build_aux(d, w)?;
    let sol = mcc::solve(aux.instance())?;
    sol.check(aux.instance()).map_err(SosiError::Internal)?;
    let pair = extract_pair(&aux, &sol.potential)?;
    let cover = extract_cover(&aux, &sol.flow)?;
    let scale = Rational::from_integer(aux.scale());
    let cert = SoSiCertificate {
        value: w.pair_weight(&pair.y_o, &pair.y_i),
        y_o: pair.y_o,
        y_i: pair.y_i,
        potential: pair.potential,
        cover,
        objective: Rational::from_integer(sol.objective) / scale,
    };
    if Rational::from_integer(pair.dual_value) / scale != cert.value {
        return Err(SosiError::Internal(
            "pair weight differs from the dual objective".into(),
        ));
    }
    let checks = cert.check(d, w);
    if !checks.all_pass(w.is_integral()) {
        return Err(SosiError::Internal(format!(
            "certificate failed self-check: {checks:?}"
        )));
    }
    Ok(cert)
}

/// Maximum-weight sink-stable set with a covering family of one-way circuits
/// of the bidirected digraph whose A-values add up to the optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkStableResult {
    pub set: Vec<NodeId>,
    pub value: i64,
    pub circuits: Vec<(OneWayCircuit, i64)>,
    pub certificate: SoSiCertificate,
}

impl SinkStableResult {
    /// Total A-value of the circuit family, counted with multiplicity.
    pub fn circuit_cost(&self, b: &BiDigraph) -> i64 {
        self.circuits
            .iter()
            .map(|(c, k)| c.a_value(b) as i64 * k)
            .sum()
    }

    /// Number of circuits (with multiplicity) through every node.
    pub fn coverage(&self, b: &BiDigraph) -> Vec<i64> {
        let mut count = vec![0; b.node_count()];
        for (c, k) in &self.circuits {
            for v in c.nodes(b) {
                count[v] += k;
            }
        }
        count
    }
}

pub fn sink_stable_max(d: &Digraph, w: &[Rational]) -> Result<SinkStableResult, SosiError> {
    if let Some(v) = w.iter().position(|x| !x.is_integer()) {
        return Err(SosiError::NonIntegralWeight(v));
    }
    let weights = WeightPair::new(vec![Rational::zero(); w.len()], w.to_vec())?;
    let cert = max_so_si(d, &weights)?;
    let total = cert
        .cover
        .integral_total()
        .ok_or_else(|| SosiError::Internal("cover of integral weights is fractional".into()))?;
    let b = bidirect(d);
    let circuits = mcc::decompose(&b, &total)?;
    let value = cert
        .value
        .to_integer()
        .to_i64()
        .ok_or(SosiError::Overflow)?;
    let result = SinkStableResult {
        set: cert.y_i.clone(),
        value,
        circuits,
        certificate: cert,
    };
    let covered = result
        .coverage(&b)
        .iter()
        .zip(w)
        .all(|(&k, x)| Rational::from_integer(k) >= *x);
    if !covered || result.circuit_cost(&b) != value || !result.certificate.y_o.is_empty() {
        return Err(SosiError::Internal(
            "circuit family does not certify the sink-stable optimum".into(),
        ));
    }
    Ok(result)
}

/// Maximum-weight resonant set: the optimum with `w_o = w_i = w`. The set is
/// `y_o ∪ y_i` of the returned certificate.
pub fn resonant_max(d: &Digraph, w: &[Rational]) -> Result<SoSiCertificate, SosiError> {
    max_so_si(d, &WeightPair::new(w.to_vec(), w.to_vec())?)
}

fn indicator(n: usize, set: &[NodeId]) -> Result<Vec<Rational>, SosiError> {
    Ok(membership(n, set)?
        .into_iter()
        .map(|x| Rational::from_integer(i64::from(x)))
        .collect())
}

/// Largest `|Y_o| + |Y_i|` over source-sink pairs with `Y_o ⊆ u_o`, `Y_i ⊆ u_i`.
pub fn cardinality_within(
    d: &Digraph,
    u_o: &[NodeId],
    u_i: &[NodeId],
) -> Result<SoSiCertificate, SosiError> {
    let n = d.node_count();
    let (a, b) = (membership(n, u_o)?, membership(n, u_i)?);
    if let Some(v) = (0..n).find(|&v| a[v] && b[v]) {
        return Err(SosiError::OverlappingSets(v));
    }
    let mut cert = max_so_si(d, &WeightPair::new(indicator(n, u_o)?, indicator(n, u_i)?)?)?;
    cert.y_o.retain(|&v| a[v]);
    cert.y_i.retain(|&v| b[v]);
    Ok(cert)
}

/// Outcome of [`constrained_so_si`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedPair {
    pub y_o: Vec<NodeId>,
    pub y_i: Vec<NodeId>,
    /// Certificate for the penalty weights used internally.
    pub certificate: SoSiCertificate,
}

/// Largest source-sink pair with `forced_o ⊆ Y_o ⊆ allowed_o` and
/// `forced_i ⊆ Y_i ⊆ allowed_i`; `None` when no such pair exists.
///
/// Forced nodes get weight `1 + |allowed_o| + |allowed_i|`, other allowed
/// nodes weight 1 and everything else 0, so the optimum contains every forced
/// node whenever some feasible pair does.
pub fn constrained_so_si(
    d: &Digraph,
    forced_o: &[NodeId],
    allowed_o: &[NodeId],
    forced_i: &[NodeId],
    allowed_i: &[NodeId],
) -> Result<Option<ConstrainedPair>, SosiError> {
    let n = d.node_count();
    let ao = membership(n, allowed_o)?;
    let ai = membership(n, allowed_i)?;
    let fo = membership(n, forced_o)?;
    let fi = membership(n, forced_i)?;
    if let Some(v) = (0..n).find(|&v| ao[v] && ai[v]) {
        return Err(SosiError::OverlappingSets(v));
    }
    if let Some(v) = (0..n).find(|&v| (fo[v] && !ao[v]) || (fi[v] && !ai[v])) {
        return Err(SosiError::ForcedNotAllowed(v));
    }
    let big =
        1 + ao.iter().filter(|&&x| x).count() as i64 + ai.iter().filter(|&&x| x).count() as i64;
    let weight = |forced: &[bool], allowed: &[bool]| -> Vec<Rational> {
        (0..n)
            .map(|v| {
                Rational::from_integer(match (forced[v], allowed[v]) {
                    (true, _) => big,
                    (false, true) => 1,
                    _ => 0,
                })
            })
            .collect()
    };
    let w = WeightPair::new(weight(&fo, &ao), weight(&fi, &ai))?;
    let cert = max_so_si(d, &w)?;
    let y_o: Vec<NodeId> = cert.y_o.iter().copied().filter(|&v| ao[v]).collect();
    let y_i: Vec<NodeId> = cert.y_i.iter().copied().filter(|&v| ai[v]).collect();
    let keeps_forced = (0..n).all(|v| (!fo[v] || y_o.contains(&v)) && (!fi[v] || y_i.contains(&v)));
    Ok(keeps_forced.then_some(ConstrainedPair {
        y_o,
        y_i,
        certificate: cert,
    }))
}
