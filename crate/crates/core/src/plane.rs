//! Plane bipartite graphs and the double-weighted Clar-Fries problem.
//!
//! A graph is given with a combinatorial embedding: every face lists its
//! boundary as a cyclic sequence of edge-sides, with the face interior on the
//! left of the traversal. An edge-side is *forward* when it runs from the
//! `S` end of the edge to its `T` end.
//!
//! For a perfect matching `M`, the orientation `G_M` directs matched edges
//! into `S` and all other edges into `T`. A face is `M`-alternating exactly
//! when its boundary is a one-way circuit of `G_M`; it is *anti-clockwise*
//! when every boundary arc has the face on its left and *clockwise* when every
//! boundary arc has it on its right. In the planar dual, where each edge
//! becomes an arc from the face on the left of its `G_M` arc to the face on
//! the right, anti-clockwise faces are exactly the sources and clockwise
//! faces the sinks. Clockwise faces score `w1`, anti-clockwise faces `w2`.

use std::collections::{HashMap, HashSet};

use num_traits::Zero;
use thiserror::Error;

use crate::digraph::{Digraph, DigraphError, NodeId};
use crate::error::ErrorKind;
use crate::sosi::{max_so_si, SoSiCertificate, SosiError, WeightPair};
use crate::Rational;

pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneError {
    #[error("a plane graph needs at least one edge")]
    Empty,
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("edge {edge} joins two nodes on the same side; the graph is not bipartite")]
    NotBipartite { edge: EdgeId },
    #[error("duplicate face id `{0}`")]
    DuplicateFace(String),
    #[error("unknown face `{0}`")]
    UnknownFace(String),
    #[error("face `{face}` refers to edge {edge}, which does not exist")]
    EdgeOutOfRange { face: String, edge: EdgeId },
    #[error("face `{0}` has an empty boundary")]
    EmptyBoundary(String),
    #[error("boundary of face `{0}` is not a closed walk")]
    OpenBoundary(String),
    #[error("boundary of face `{0}` passes a node twice, so it is not a circuit")]
    RepeatedNode(String),
    #[error(
        "the {side} side of edge {edge} appears in {count} face boundaries instead of exactly one"
    )]
    SideMismatch {
        edge: EdgeId,
        side: &'static str,
        count: usize,
    },
    #[error("graph is not 2-connected (node `{0}` separates it)")]
    NotTwoConnected(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("Euler formula fails: {nodes} nodes - {edges} edges + {faces} faces != 2")]
    Euler {
        nodes: usize,
        edges: usize,
        faces: usize,
    },
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("edge set is not a perfect matching")]
    NotPerfectMatching,
    #[error("expected {expected} face weights, found {found}")]
    WeightLength { expected: usize, found: usize },
    #[error("patch is not a valid plane graph: {0}")]
    InvalidPatch(String),
    #[error("negative weight on face {0}")]
    NegativeWeight(FaceId),
    #[error(transparent)]
    Sosi(#[from] SosiError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl PlaneError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            PlaneError::Internal(_) => ErrorKind::Internal,
            PlaneError::Sosi(e) => e.kind(),
            _ => ErrorKind::Input,
        }
    }
}

impl From<DigraphError> for PlaneError {
    fn from(e: DigraphError) -> Self {
        PlaneError::Internal(format!("derived digraph is invalid: {e}"))
    }
}

/// One traversal direction of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeSide {
    pub edge: EdgeId,
    /// True when the side runs from the `S` end to the `T` end.
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub boundary: Vec<EdgeSide>,
}

/// A validated, perfectly matchable, 2-connected plane bipartite graph.
///
/// Nodes of `S` come first (`0..|S|`), then the nodes of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneBipartiteGraph {
    names: Vec<String>,
    s_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    faces: Vec<Face>,
    outer: FaceId,
    /// `side_face[e] = [face of the forward side, face of the backward side]`
    side_face: Vec<[FaceId; 2]>,
}

impl PlaneBipartiteGraph {
    /// Builds and validates a graph from names. Edges may list their ends in
    /// either order; they are stored as `(s, t)`.
    pub fn new<A: AsRef<str>>(
        s_names: &[A],
        t_names: &[A],
        edges: &[(A, A)],
        faces: Vec<Face>,
        outer: &str,
    ) -> Result<Self, PlaneError> {
        let names: Vec<String> = s_names
            .iter()
            .chain(t_names)
            .map(|x| x.as_ref().to_string())
            .collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(PlaneError::DuplicateNode(name.clone()));
            }
        }
        let s_count = s_names.len();
        let lookup = |x: &A| {
            index
                .get(x.as_ref())
                .copied()
                .ok_or_else(|| PlaneError::UnknownNode(x.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (e, (a, b)) in edges.iter().enumerate() {
            let (a, b) = (lookup(a)?, lookup(b)?);
            match (a < s_count, b < s_count) {
                (true, false) => pairs.push((a, b)),
                (false, true) => pairs.push((b, a)),
                _ => return Err(PlaneError::NotBipartite { edge: e }),
            }
        }
        let outer = faces
            .iter()
            .position(|f| f.id == outer)
            .ok_or_else(|| PlaneError::UnknownFace(outer.to_string()))?;
        let g = PlaneBipartiteGraph {
            names,
            s_count,
            edges: pairs,
            faces,
            outer,
            side_face: Vec::new(),
        };
        g.validated()
    }

    fn validated(mut self) -> Result<Self, PlaneError> {
        let m = self.edges.len();
        if m == 0 {
            return Err(PlaneError::Empty);
        }
        let mut seen_ids = HashSet::new();
        for f in &self.faces {
            if !seen_ids.insert(f.id.as_str()) {
                return Err(PlaneError::DuplicateFace(f.id.clone()));
            }
        }
        let mut side_face = vec![[usize::MAX; 2]; m];
        let mut count = vec![[0usize; 2]; m];
        for (fi, f) in self.faces.iter().enumerate() {
            if f.boundary.is_empty() {
                return Err(PlaneError::EmptyBoundary(f.id.clone()));
            }
            for s in &f.boundary {
                if s.edge >= m {
                    return Err(PlaneError::EdgeOutOfRange {
                        face: f.id.clone(),
                        edge: s.edge,
                    });
                }
                let k = usize::from(!s.forward);
                count[s.edge][k] += 1;
                side_face[s.edge][k] = fi;
            }
            let len = f.boundary.len();
            for (k, s) in f.boundary.iter().enumerate() {
                let next = f.boundary[(k + 1) % len];
                if self.side_ends(*s).1 != self.side_ends(next).0 {
                    return Err(PlaneError::OpenBoundary(f.id.clone()));
                }
            }
            let mut nodes: Vec<NodeId> = f.boundary.iter().map(|&s| self.side_ends(s).0).collect();
            nodes.sort_unstable();
            if nodes.windows(2).any(|w| w[0] == w[1]) {
                return Err(PlaneError::RepeatedNode(f.id.clone()));
            }
        }
        for (e, c) in count.iter().enumerate() {
            for (k, side) in [(0, "forward"), (1, "backward")] {
                if c[k] != 1 {
                    return Err(PlaneError::SideMismatch {
                        edge: e,
                        side,
                        count: c[k],
                    });
                }
            }
            if side_face[e][0] == side_face[e][1] {
                let (s, _) = self.edges[e];
                return Err(PlaneError::NotTwoConnected(self.names[s].clone()));
            }
        }
        self.check_biconnected()?;
        let (nodes, faces) = (self.names.len(), self.faces.len());
        if nodes + faces != m + 2 {
            return Err(PlaneError::Euler {
                nodes,
                edges: m,
                faces,
            });
        }
        self.side_face = side_face;
        perfect_matching(&self)?;
        Ok(self)
    }

    /// Connectivity plus absence of articulation points (iterative lowpoint DFS).
    fn check_biconnected(&self) -> Result<(), PlaneError> {
        let n = self.names.len();
        let mut adj: Vec<Vec<(NodeId, EdgeId)>> = vec![Vec::new(); n];
        for (e, &(s, t)) in self.edges.iter().enumerate() {
            adj[s].push((t, e));
            adj[t].push((s, e));
        }
        const NONE: usize = usize::MAX;
        let mut disc = vec![NONE; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut root_children = 0;
        // (node, edge used to enter, next adjacency index)
        let mut stack = vec![(0usize, NONE, 0usize)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        while let Some(&mut (u, via, ref mut i)) = stack.last_mut() {
            if *i < adj[u].len() {
                let (v, e) = adj[u][*i];
                *i += 1;
                if e == via {
                    continue;
                }
                if disc[v] == NONE {
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((v, e, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if p != 0 && low[u] >= disc[p] {
                        return Err(PlaneError::NotTwoConnected(self.names[p].clone()));
                    }
                }
            }
        }
        if disc.contains(&NONE) {
            return Err(PlaneError::NotConnected);
        }
        if root_children > 1 {
            return Err(PlaneError::NotTwoConnected(self.names[0].clone()));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn s_count(&self) -> usize {
        self.s_count
    }

    pub fn is_s(&self, v: NodeId) -> bool {
        v < self.s_count
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(s, t)` ends of an edge.
    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_by_id(&self, id: &str) -> Option<FaceId> {
        self.faces.iter().position(|f| f.id == id)
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    /// Face whose boundary contains the given side.
    pub fn face_of_side(&self, side: EdgeSide) -> FaceId {
        self.side_face[side.edge][usize::from(!side.forward)]
    }

    /// `(from, to)` of an edge-side.
    pub fn side_ends(&self, side: EdgeSide) -> (NodeId, NodeId) {
        let (s, t) = self.edges[side.edge];
        if side.forward {
            (s, t)
        } else {
            (t, s)
        }
    }

    pub fn face_nodes(&self, f: FaceId) -> Vec<NodeId> {
        self.faces[f]
            .boundary
            .iter()
            .map(|&s| self.side_ends(s).0)
            .collect()
    }

    /// Indicator weights: 1 on every inner face, 0 on the outer face.
    pub fn inner_indicator(&self) -> Vec<Rational> {
        (0..self.faces.len())
            .map(|f| Rational::from_integer(i64::from(f != self.outer)))
            .collect()
    }

    /// Per-edge flags for an edge set, checking that it is a perfect matching.
    pub fn matching_mask(&self, matching: &[EdgeId]) -> Result<Vec<bool>, PlaneError> {
        let mut mask = vec![false; self.edges.len()];
        let mut covered = vec![false; self.names.len()];
        for &e in matching {
            if e >= self.edges.len() || mask[e] {
                return Err(PlaneError::NotPerfectMatching);
            }
            mask[e] = true;
            let (s, t) = self.edges[e];
            for v in [s, t] {
                if covered[v] {
                    return Err(PlaneError::NotPerfectMatching);
                }
                covered[v] = true;
            }
        }
        if covered.contains(&false) {
            return Err(PlaneError::NotPerfectMatching);
        }
        Ok(mask)
    }
}

/// Augmenting-path bipartite matching, scanning `S` and edges in input order.
pub fn perfect_matching(g: &PlaneBipartiteGraph) -> Result<Vec<EdgeId>, PlaneError> {
    let n = g.names.len();
    if n != 2 * g.s_count {
        return Err(PlaneError::NoPerfectMatching);
    }
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); g.s_count];
    for (e, &(s, _)) in g.edges.iter().enumerate() {
        adj[s].push(e);
    }
    // mate_edge[t] = matched edge at T-node t
    let mut mate_edge: Vec<Option<EdgeId>> = vec![None; n];
    for root in 0..g.s_count {
        let mut visited = vec![false; n];
        // iterative DFS over alternating paths: stack of (s, next index), with
        // the edge used to reach each s recorded in `via`
        let mut via: Vec<Option<EdgeId>> = vec![None; g.s_count];
        let mut stack = vec![(root, 0usize)];
        let mut found = None;
        while let Some(&mut (s, ref mut i)) = stack.last_mut() {
            if *i == adj[s].len() {
                stack.pop();
                continue;
            }
            let e = adj[s][*i];
            *i += 1;
            let t = g.edges[e].1;
            if visited[t] {
                continue;
            }
            visited[t] = true;
            match mate_edge[t] {
                None => {
                    found = Some(e);
                    break;
                }
                Some(me) => {
                    let next = g.edges[me].0;
                    via[next] = Some(e);
                    stack.push((next, 0));
                }
            }
        }
        let Some(mut e) = found else {
            return Err(PlaneError::NoPerfectMatching);
        };
        loop {
            let (s, t) = g.edges[e];
            mate_edge[t] = Some(e);
            if s == root {
                break;
            }
            e = via[s].ok_or_else(|| PlaneError::Internal("broken augmenting path".into()))?;
        }
    }
    let mut m: Vec<EdgeId> = mate_edge.into_iter().flatten().collect();
    m.sort_unstable();
    g.matching_mask(&m).map_err(|_| {
        PlaneError::Internal("matching search returned a non-perfect matching".into())
    })?;
    Ok(m)
}

/// The orientation `G_M`: arc `e` of `digraph` is edge `e`, pointing into `S`
/// when matched and into `T` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingOrientation {
    pub matching: Vec<EdgeId>,
    pub matched: Vec<bool>,
    pub digraph: Digraph,
}

impl MatchingOrientation {
    /// True when the edge-side runs along the arc of its edge.
    pub fn agrees(&self, side: EdgeSide) -> bool {
        side.forward != self.matched[side.edge]
    }
}

pub fn orient_by_matching(
    g: &PlaneBipartiteGraph,
    matching: &[EdgeId],
) -> Result<MatchingOrientation, PlaneError> {
    let matched = g.matching_mask(matching)?;
    let arcs = g
        .edges
        .iter()
        .zip(&matched)
        .map(|(&(s, t), &m)| if m { (t, s) } else { (s, t) })
        .collect();
    let digraph = Digraph::with_names(g.names.clone(), arcs)?;
    let mut matching = matching.to_vec();
    matching.sort_unstable();
    Ok(MatchingOrientation {
        matching,
        matched,
        digraph,
    })
}

/// Clockwise and anti-clockwise `M`-alternating faces, in face order.
pub fn alternating_faces(
    g: &PlaneBipartiteGraph,
    matching: &[EdgeId],
) -> Result<(Vec<FaceId>, Vec<FaceId>), PlaneError> {
    let mo = orient_by_matching(g, matching)?;
    Ok(faces_by_sense(g, &mo))
}

fn faces_by_sense(g: &PlaneBipartiteGraph, mo: &MatchingOrientation) -> (Vec<FaceId>, Vec<FaceId>) {
    let mut cw = Vec::new();
    let mut acw = Vec::new();
    for (f, face) in g.faces.iter().enumerate() {
        let agree = face.boundary.iter().filter(|&&s| mo.agrees(s)).count();
        if agree == face.boundary.len() {
            acw.push(f);
        } else if agree == 0 {
            cw.push(f);
        }
    }
    (cw, acw)
}

/// The planar dual of `G_M`: node `f` is face `f`, arc `e` crosses edge `e`
/// from the face on the left of its `G_M` arc to the face on its right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualDigraph {
    pub digraph: Digraph,
}

pub fn planar_dual(
    mo: &MatchingOrientation,
    g: &PlaneBipartiteGraph,
) -> Result<DualDigraph, PlaneError> {
    let arcs = (0..g.edges.len())
        .map(|e| {
            let along = EdgeSide {
                edge: e,
                forward: !mo.matched[e],
            };
            let against = EdgeSide {
                edge: e,
                forward: mo.matched[e],
            };
            (g.face_of_side(along), g.face_of_side(against))
        })
        .collect();
    let names = g.faces.iter().map(|f| f.id.clone()).collect();
    Ok(DualDigraph {
        digraph: Digraph::with_names(names, arcs)?,
    })
}

fn check_weights(g: &PlaneBipartiteGraph, w: &[Rational]) -> Result<(), PlaneError> {
    if w.len() != g.faces.len() {
        return Err(PlaneError::WeightLength {
            expected: g.faces.len(),
            found: w.len(),
        });
    }
    match w.iter().position(|x| *x < Rational::zero()) {
        Some(f) => Err(PlaneError::NegativeWeight(f)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClarFriesResult {
    /// The optimal perfect matching `M'`.
    pub matching: Vec<EdgeId>,
    /// All clockwise `M'`-alternating faces.
    pub cw_faces: Vec<FaceId>,
    /// All anti-clockwise `M'`-alternating faces.
    pub acw_faces: Vec<FaceId>,
    /// `w1(cw_faces) + w2(acw_faces)`.
    pub value: Rational,
    /// Certificate of the source-sink problem on the dual digraph.
    pub certificate: SoSiCertificate,
    pub dual: DualDigraph,
}

/// Maximizes `w1(clockwise faces) + w2(anti-clockwise faces)` over perfect
/// matchings, starting from the first matching found.
pub fn solve_clar_fries(
    g: &PlaneBipartiteGraph,
    w1: &[Rational],
    w2: &[Rational],
) -> Result<ClarFriesResult, PlaneError> {
    let start = perfect_matching(g)?;
    solve_clar_fries_from(g, &start, w1, w2)
}

/// Same as [`solve_clar_fries`] with a caller-chosen initial matching.
pub fn solve_clar_fries_from(
    g: &PlaneBipartiteGraph,
    start: &[EdgeId],
    w1: &[Rational],
    w2: &[Rational],
) -> Result<ClarFriesResult, PlaneError> {
    check_weights(g, w1)?;
    check_weights(g, w2)?;
    let mo = orient_by_matching(g, start)?;
    let dual = planar_dual(&mo, g)?;
    let weights = WeightPair::new(w2.to_vec(), w1.to_vec())?;
    let cert = max_so_si(&dual.digraph, &weights)?;

    let flipped: Vec<bool> = dual
        .digraph
        .arcs()
        .iter()
        .map(|&a| cert.potential.drop_on(a) == 1)
        .collect();
    let matching: Vec<EdgeId> = (0..g.edges.len())
        .filter(|&e| mo.matched[e] != flipped[e])
        .collect();
    let new = orient_by_matching(g, &matching).map_err(|_| {
        PlaneError::Internal("reoriented digraph does not induce a perfect matching".into())
    })?;
    let (cw, acw) = faces_by_sense(g, &new);
    let contains = |set: &[FaceId], f: &FaceId| set.binary_search(f).is_ok();
    if !cert.y_i.iter().all(|f| contains(&cw, f)) || !cert.y_o.iter().all(|f| contains(&acw, f)) {
        return Err(PlaneError::Internal(
            "optimal dual sources and sinks are not alternating faces of the expected sense".into(),
        ));
    }
    for class in [&cw, &acw] {
        if !node_disjoint(g, class) {
            return Err(PlaneError::Internal(
                "alternating faces of one sense share a node".into(),
            ));
        }
    }
    let value: Rational =
        cw.iter().map(|&f| w1[f]).sum::<Rational>() + acw.iter().map(|&f| w2[f]).sum::<Rational>();
    if value != cert.value {
        return Err(PlaneError::Internal(format!(
            "face value {value} differs from the dual optimum {}",
            cert.value
        )));
    }
    Ok(ClarFriesResult {
        matching,
        cw_faces: cw,
        acw_faces: acw,
        value,
        certificate: cert,
        dual,
    })
}

/// True when no node lies on two of the given faces.
pub fn node_disjoint(g: &PlaneBipartiteGraph, faces: &[FaceId]) -> bool {
    let mut used = vec![false; g.names.len()];
    for &f in faces {
        for v in g.face_nodes(f) {
            if std::mem::replace(&mut used[v], true) {
                return false;
            }
        }
    }
    true
}

/// A Clar or Fries number with an optimal face set and matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceNumber {
    pub value: usize,
    /// Inner faces simultaneously alternating with respect to `matching`.
    pub faces: Vec<FaceId>,
    pub matching: Vec<EdgeId>,
    pub detail: ClarFriesResult,
}

fn face_number(
    g: &PlaneBipartiteGraph,
    detail: ClarFriesResult,
    faces: Vec<FaceId>,
) -> Result<FaceNumber, PlaneError> {
    let faces: Vec<FaceId> = faces.into_iter().filter(|&f| f != g.outer).collect();
    if Rational::from_integer(faces.len() as i64) != detail.value {
        return Err(PlaneError::Internal(
            "face count differs from the optimum value".into(),
        ));
    }
    Ok(FaceNumber {
        value: faces.len(),
        faces,
        matching: detail.matching.clone(),
        detail,
    })
}

/// Largest set of node-disjoint inner faces alternating for one matching.
pub fn clar_number(g: &PlaneBipartiteGraph) -> Result<FaceNumber, PlaneError> {
    let w1 = g.inner_indicator();
    let detail = solve_clar_fries(g, &w1, &vec![Rational::zero(); g.face_count()])?;
    let faces = detail.cw_faces.clone();
    face_number(g, detail, faces)
}

/// Largest set of inner faces alternating for one matching.
pub fn fries_number(g: &PlaneBipartiteGraph) -> Result<FaceNumber, PlaneError> {
    let w = g.inner_indicator();
    let detail = solve_clar_fries(g, &w, &w)?;
    let mut faces: Vec<FaceId> = detail
        .cw_faces
        .iter()
        .chain(&detail.acw_faces)
        .copied()
        .collect();
    faces.sort_unstable();
    face_number(g, detail, faces)
}

/// Builds faces from `(id, [(edge, forward)])` lists.
pub fn faces_from_sides<S: AsRef<str>>(faces: &[(S, Vec<(EdgeId, bool)>)]) -> Vec<Face> {
    faces
        .iter()
        .map(|(id, sides)| Face {
            id: id.as_ref().to_string(),
            boundary: sides
                .iter()
                .map(|&(edge, forward)| EdgeSide { edge, forward })
                .collect(),
        })
        .collect()
}

/// Builds a graph from its inner faces, each given as a cyclic node sequence
/// with the interior on the left. Edges are numbered by first appearance and
/// the outer face (id `outer`) is traced from the sides left unused.
pub fn from_inner_cycles<A: AsRef<str>>(
    s_names: &[A],
    t_names: &[A],
    cycles: &[(String, Vec<A>)],
) -> Result<PlaneBipartiteGraph, PlaneError> {
    let mut edge_index: HashMap<(String, String), EdgeId> = HashMap::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let s_set: HashSet<&str> = s_names.iter().map(|x| x.as_ref()).collect();
    let mut side_of = |a: &str, b: &str| {
        let forward = s_set.contains(a);
        let key = if forward {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        let edge = *edge_index.entry(key.clone()).or_insert_with(|| {
            edges.push(key);
            edges.len() - 1
        });
        EdgeSide { edge, forward }
    };
    let mut faces = Vec::with_capacity(cycles.len() + 1);
    for (id, cycle) in cycles {
        let len = cycle.len();
        let boundary = (0..len)
            .map(|k| side_of(cycle[k].as_ref(), cycle[(k + 1) % len].as_ref()))
            .collect();
        faces.push(Face {
            id: id.clone(),
            boundary,
        });
    }
    let mut used: HashSet<EdgeSide> = HashSet::new();
    for f in &faces {
        for &side in &f.boundary {
            if !used.insert(side) {
                return Err(PlaneError::InvalidPatch(format!(
                    "edge {} is traversed twice in the same direction",
                    side.edge
                )));
            }
        }
    }
    // unused sides keyed by their starting node
    let mut leaving: HashMap<&str, EdgeSide> = HashMap::new();
    for (e, (s, t)) in edges.iter().enumerate() {
        for (forward, from) in [(true, s), (false, t)] {
            let side = EdgeSide { edge: e, forward };
            if !used.contains(&side) && leaving.insert(from.as_str(), side).is_some() {
                return Err(PlaneError::InvalidPatch(format!(
                    "outer boundary passes node `{from}` twice"
                )));
            }
        }
    }
    let Some(&first) = leaving.values().min_by_key(|s| (s.edge, s.forward)) else {
        return Err(PlaneError::InvalidPatch("no outer boundary".into()));
    };
    let mut outer = vec![first];
    loop {
        let last = outer[outer.len() - 1];
        let (s, t) = &edges[last.edge];
        let head = if last.forward { t } else { s };
        let next = leaving[head.as_str()];
        if next == first {
            break;
        }
        outer.push(next);
    }
    if outer.len() != leaving.len() {
        return Err(PlaneError::InvalidPatch(
            "the unused sides form more than one cycle (the patch has a hole)".into(),
        ));
    }
    faces.push(Face {
        id: "outer".into(),
        boundary: outer,
    });
    let owned =
        |names: &[A]| -> Vec<String> { names.iter().map(|x| x.as_ref().to_string()).collect() };
    PlaneBipartiteGraph::new(&owned(s_names), &owned(t_names), &edges, faces, "outer")
}

/// Hexagonal-lattice patch made of the given cells in axial coordinates.
///
/// Cell `(q, r)` is centered at `(q + r/2, r·√3/2)`. Nodes are named
/// `v{x}_{y}` after three times the centroid of the three cells meeting there;
/// cells are named `h{q}_{r}`.
pub fn benzenoid(cells: &[(i32, i32)]) -> Result<PlaneBipartiteGraph, PlaneError> {
    // neighbor directions in counterclockwise order
    const DIRS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    let mut s_names: Vec<String> = Vec::new();
    let mut t_names: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    let mut cycles = Vec::with_capacity(cells.len());
    for &(q, r) in cells {
        let mut cycle = Vec::with_capacity(6);
        for k in 0..6 {
            let (a, b) = (DIRS[k], DIRS[(k + 1) % 6]);
            let (x, y) = (3 * q + a.0 + b.0, 3 * r + a.1 + b.1);
            let name = format!("v{x}_{y}");
            if seen.insert(name.clone()) {
                if (x + y).rem_euclid(3) == 2 {
                    s_names.push(name.clone());
                } else {
                    t_names.push(name.clone());
                }
            }
            cycle.push(name);
        }
        cycles.push((format!("h{q}_{r}"), cycle));
    }
    from_inner_cycles(&s_names, &t_names, &cycles)
}

/// Grid of `cols × rows` unit squares; node `(i, j)` is named `g{i}_{j}`.
pub fn square_grid(cols: usize, rows: usize) -> Result<PlaneBipartiteGraph, PlaneError> {
    let name = |i: usize, j: usize| format!("g{i}_{j}");
    let mut s_names = Vec::new();
    let mut t_names = Vec::new();
    for i in 0..=cols {
        for j in 0..=rows {
            if (i + j) % 2 == 0 {
                s_names.push(name(i, j));
            } else {
                t_names.push(name(i, j));
            }
        }
    }
    let cycles: Vec<(String, Vec<String>)> = (0..cols)
        .flat_map(|i| (0..rows).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                format!("q{i}_{j}"),
                vec![
                    name(i, j),
                    name(i + 1, j),
                    name(i + 1, j + 1),
                    name(i, j + 1),
                ],
            )
        })
        .collect();
    from_inner_cycles(&s_names, &t_names, &cycles)
}
