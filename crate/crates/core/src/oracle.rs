//! Exhaustive reference implementations for cross-checking the solvers on
//! small inputs, plus seeded random instance generators.
//!
//! Nothing here shares code with the flow-based solvers beyond the data
//! types: reorientations are found by trying every arc subset, and matchings
//! by backtracking.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::digraph::{ArcId, Digraph, DigraphError, NodeId, Potential};
use crate::plane::{alternating_faces, EdgeId, FaceId, PlaneBipartiteGraph, PlaneError};
use crate::sosi::WeightPair;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} exceeds the oracle budget of {limit}")]
    Budget { what: &'static str, limit: usize },
    #[error("expected {expected} weights, found {found}")]
    WeightLength { expected: usize, found: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_arcs: usize,
    pub max_matchings: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_arcs: 14,
            max_matchings: 100_000,
        }
    }
}

/// A dicut-equivalent reorientation: the reversed arcs, the resulting
/// digraph, and the normalized potential whose drops are exactly `χ_R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reorientation {
    pub reversed: Vec<ArcId>,
    pub digraph: Digraph,
    pub potential: Potential,
}

/// The potential with drop 1 on arcs in `mask` and 0 elsewhere, if it exists.
/// On a connected digraph such a potential is unique up to a constant.
fn exact_drop_potential(
    d: &Digraph,
    adj: &[Vec<(NodeId, ArcId, bool)>],
    mask: u64,
) -> Option<Potential> {
    let n = d.node_count();
    let mut pi: Vec<Option<i64>> = vec![None; n];
    pi[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        let pu = pi[u]?;
        for &(v, a, out) in &adj[u] {
            let drop = i64::from(mask >> a & 1 == 1);
            let want = if out { pu + drop } else { pu - drop };
            match pi[v] {
                None => {
                    pi[v] = Some(want);
                    queue.push_back(v);
                }
                Some(x) if x != want => return None,
                Some(_) => {}
            }
        }
    }
    pi.into_iter()
        .collect::<Option<Vec<i64>>>()
        .map(|p| Potential::new(p).normalized())
}

/// Every dicut-equivalent reorientation of `d`, in increasing order of the
/// reversed-arc bitmask (so `R = ∅` comes first).
pub fn enumerate_reorientations(
    d: &Digraph,
    budget: OracleBudget,
) -> Result<impl Iterator<Item = Reorientation> + '_, OracleError> {
    let m = d.arc_count();
    if m > budget.max_arcs || m >= 63 {
        return Err(OracleError::Budget {
            what: "arc count",
            limit: budget.max_arcs,
        });
    }
    let mut adj: Vec<Vec<(NodeId, ArcId, bool)>> = vec![Vec::new(); d.node_count()];
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        adj[u].push((v, a, true));
        adj[v].push((u, a, false));
    }
    Ok((0..1u64 << m).filter_map(move |mask| {
        let potential = exact_drop_potential(d, &adj, mask)?;
        Some(Reorientation {
            reversed: (0..m).filter(|&a| mask >> a & 1 == 1).collect(),
            digraph: d.reorient(|a| mask >> a & 1 == 1),
            potential,
        })
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteSoSi {
    pub value: Rational,
    pub y_o: Vec<NodeId>,
    pub y_i: Vec<NodeId>,
    pub reversed: Vec<ArcId>,
}

/// Best `w_o(sources) + w_i(sinks)` over all dicut-equivalent reorientations.
/// With nonnegative weights, taking every source and every sink is optimal.
pub fn brute_max_so_si(
    d: &Digraph,
    w: &WeightPair,
    budget: OracleBudget,
) -> Result<BruteSoSi, OracleError> {
    if w.len() != d.node_count() {
        return Err(OracleError::WeightLength {
            expected: d.node_count(),
            found: w.len(),
        });
    }
    let mut best: Option<BruteSoSi> = None;
    for r in enumerate_reorientations(d, budget)? {
        let (y_o, y_i) = r.digraph.sources_sinks();
        let value = w.pair_weight(&y_o, &y_i);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(BruteSoSi {
                value,
                y_o,
                y_i,
                reversed: r.reversed,
            });
        }
    }
    // the identity reorientation is always present
    Ok(best.expect("identity reorientation is always enumerated"))
}

/// All perfect matchings, each as a sorted edge list, found by assigning the
/// `S` nodes in order.
pub fn enumerate_matchings(
    g: &PlaneBipartiteGraph,
    budget: OracleBudget,
) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    let s_count = g.s_count();
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); s_count];
    for (e, &(s, _)) in g.edges().iter().enumerate() {
        adj[s].push(e);
    }
    let mut used_t = vec![false; g.node_count()];
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(s_count);
    let mut cursor = vec![0usize; s_count + 1];
    let mut found = Vec::new();
    if g.node_count() != 2 * s_count {
        return Ok(found);
    }
    // explicit-stack backtracking: level k picks the edge for S node k
    let mut k = 0usize;
    loop {
        if k == s_count {
            let mut m = chosen.clone();
            m.sort_unstable();
            found.push(m);
            if found.len() > budget.max_matchings {
                return Err(OracleError::Budget {
                    what: "number of perfect matchings",
                    limit: budget.max_matchings,
                });
            }
        } else if let Some(&e) = adj[k][cursor[k]..].iter().find(|&&e| !used_t[g.edge(e).1]) {
            cursor[k] = adj[k].iter().position(|&x| x == e).unwrap_or(0) + 1;
            used_t[g.edge(e).1] = true;
            chosen.push(e);
            k += 1;
            cursor[k] = 0;
            continue;
        }
        // backtrack
        if k == 0 {
            break;
        }
        k -= 1;
        let e = chosen.pop().expect("one chosen edge per level");
        used_t[g.edge(e).1] = false;
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteClarFries {
    pub value: Rational,
    pub matching: Vec<EdgeId>,
    pub cw_faces: Vec<FaceId>,
    pub acw_faces: Vec<FaceId>,
}

/// Best `w1(clockwise) + w2(anti-clockwise)` over all perfect matchings.
pub fn brute_clar_fries(
    g: &PlaneBipartiteGraph,
    w1: &[Rational],
    w2: &[Rational],
    budget: OracleBudget,
) -> Result<BruteClarFries, OracleError> {
    for w in [w1, w2] {
        if w.len() != g.face_count() {
            return Err(OracleError::WeightLength {
                expected: g.face_count(),
                found: w.len(),
            });
        }
    }
    let mut best: Option<BruteClarFries> = None;
    for m in enumerate_matchings(g, budget)? {
        let (cw, acw) = alternating_faces(g, &m)?;
        let value = cw.iter().map(|&f| w1[f]).sum::<Rational>()
            + acw.iter().map(|&f| w2[f]).sum::<Rational>();
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(BruteClarFries {
                value,
                matching: m,
                cw_faces: cw,
                acw_faces: acw,
            });
        }
    }
    best.ok_or(OracleError::Plane(PlaneError::NoPerfectMatching))
}

/// Random loopless weakly connected digraph with `n ≥ 2` nodes and `m ≥ n − 1`
/// arcs: a random spanning tree with random arc directions plus extra random
/// arcs (parallel arcs allowed), shuffled.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Digraph {
    assert!(n >= 2 && m + 1 >= n, "need n >= 2 and m >= n - 1");
    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::with_capacity(m);
    for k in 1..n {
        let (u, v) = (order[k], order[rng.gen_range(0..k)]);
        arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    while arcs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            arcs.push((u, v));
        }
    }
    arcs.shuffle(rng);
    Digraph::new(n, arcs).expect("generated digraph is connected and loopless")
}

/// Independent uniform integer weights in `0..=max` for sources and sinks.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize, max: i64) -> WeightPair {
    let mut draw = || -> Vec<Rational> {
        (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(0..=max)))
            .collect()
    };
    let w_o = draw();
    let w_i = draw();
    WeightPair::new(w_o, w_i).expect("weights are nonnegative")
}
