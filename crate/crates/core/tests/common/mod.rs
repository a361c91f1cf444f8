#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use sosi::digraph::{bidirect, BiDigraph, Digraph, NodeId};
use sosi::io::{DigraphDoc, PlaneDoc};
use sosi::plane::{benzenoid, PlaneBipartiteGraph};
use sosi::Rational;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn load_digraph(name: &str) -> Digraph {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let doc: DigraphDoc = serde_json::from_str(&text).unwrap();
    doc.digraph().unwrap()
}

pub fn load_plane(name: &str) -> PlaneBipartiteGraph {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    let doc: PlaneDoc = serde_json::from_str(&text).unwrap();
    doc.graph().unwrap()
}

pub fn bowtie() -> Digraph {
    load_digraph("bowtie.json")
}

pub fn node(d: &Digraph, name: &str) -> NodeId {
    d.node_by_name(name).unwrap()
}

pub fn nodes(d: &Digraph, names: &[&str]) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = names.iter().map(|x| node(d, x)).collect();
    v.sort_unstable();
    v
}

pub fn indicator(n: usize, set: &[NodeId]) -> Vec<Rational> {
    (0..n)
        .map(|v| Rational::from_integer(i64::from(set.contains(&v))))
        .collect()
}

pub fn ints(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| Rational::from_integer(x)).collect()
}

/// Index of the bidirected arc running `from → to` that comes from base arc
/// `(from, to)` (original copy) or `(to, from)` (reverse copy).
pub fn bi_arc(b: &BiDigraph, from: NodeId, to: NodeId) -> usize {
    (0..b.arc_count())
        .find(|&a| b.arc(a) == (from, to))
        .unwrap_or_else(|| panic!("no bidirected arc {from} -> {to}"))
}

/// Every circuit of the underlying undirected multigraph, traversed in both
/// directions, as `(arc, traversed forward)` sequences. Each undirected cycle
/// is found from its smallest node.
pub fn all_circuits(d: &Digraph) -> Vec<Vec<(usize, bool)>> {
    let n = d.node_count();
    let mut adj: Vec<Vec<(NodeId, usize, bool)>> = vec![Vec::new(); n];
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        adj[u].push((v, a, true));
        adj[v].push((u, a, false));
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut path: Vec<(usize, bool)> = Vec::new();
        extend(start, start, &adj, &mut on_path, &mut path, &mut out);
    }
    out
}

fn extend(
    start: NodeId,
    u: NodeId,
    adj: &[Vec<(NodeId, usize, bool)>],
    on_path: &mut [bool],
    path: &mut Vec<(usize, bool)>,
    out: &mut Vec<Vec<(usize, bool)>>,
) {
    for &(v, a, fwd) in &adj[u] {
        if path.last().is_some_and(|&(last, _)| last == a) {
            continue;
        }
        if v == start && !path.is_empty() {
            let mut c = path.clone();
            c.push((a, fwd));
            out.push(c);
        } else if v > start && !on_path[v] {
            on_path[v] = true;
            path.push((a, fwd));
            extend(start, v, adj, on_path, path, out);
            path.pop();
            on_path[v] = false;
        }
    }
}

/// Minimum of `cost·x` over integral circulations `x ≥ lower` with every
/// entry at most `bound`, by depth-first search that fixes an arc's value
/// whenever it is the last unassigned arc at some node.
pub fn brute_min_circulation(d: &Digraph, lower: &[i64], cost: &[i64], bound: i64) -> Option<i64> {
    let n = d.node_count();
    let m = d.arc_count();
    let mut last = vec![None; n];
    for (a, &(u, v)) in d.arcs().iter().enumerate() {
        last[u] = Some(a);
        last[v] = Some(a);
    }
    let mut closes: Vec<Vec<NodeId>> = vec![Vec::new(); m];
    for (v, l) in last.iter().enumerate() {
        if let Some(a) = l {
            closes[*a].push(v);
        }
    }
    let mut best = None;
    let mut balance = vec![0i64; n];
    search(
        d,
        lower,
        cost,
        bound,
        &closes,
        0,
        0,
        &mut balance,
        &mut best,
    );
    best
}

#[allow(clippy::too_many_arguments)]
fn search(
    d: &Digraph,
    lower: &[i64],
    cost: &[i64],
    bound: i64,
    closes: &[Vec<NodeId>],
    a: usize,
    spent: i64,
    balance: &mut Vec<i64>,
    best: &mut Option<i64>,
) {
    if best.is_some_and(|b| spent >= b) {
        return;
    }
    if a == d.arc_count() {
        if balance.iter().all(|&x| x == 0) && best.is_none_or(|b| spent < b) {
            *best = Some(spent);
        }
        return;
    }
    let (u, v) = d.arc(a);
    // the value is forced when this arc closes one of its endpoints
    let forced = closes[a]
        .first()
        .map(|&w| if w == u { balance[u] } else { -balance[v] });
    let range: Vec<i64> = match forced {
        Some(x) => vec![x],
        None => (lower[a]..=bound).collect(),
    };
    for x in range {
        if x < lower[a] || x > bound {
            continue;
        }
        balance[u] -= x;
        balance[v] += x;
        let ok = closes[a].iter().all(|&w| balance[w] == 0);
        if ok {
            search(
                d,
                lower,
                cost,
                bound,
                closes,
                a + 1,
                spent + x * cost[a],
                balance,
                best,
            );
        }
        balance[u] += x;
        balance[v] -= x;
    }
}

/// A random nonnegative integral circulation on `↔D`: a sum of directed
/// cycles found by random walks (`↔D` is strongly connected).
pub fn random_circulation<R: Rng>(rng: &mut R, b: &BiDigraph, cycles: usize) -> Vec<i64> {
    let n = b.node_count();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..b.arc_count() {
        out_arcs[b.arc(a).0].push(a);
    }
    let mut z = vec![0i64; b.arc_count()];
    for _ in 0..cycles {
        let mut pos = vec![usize::MAX; n];
        let mut walk: Vec<usize> = Vec::new();
        let mut u = rng.gen_range(0..n);
        let cycle = loop {
            pos[u] = walk.len();
            let a = out_arcs[u][rng.gen_range(0..out_arcs[u].len())];
            walk.push(a);
            let v = b.arc(a).1;
            if pos[v] != usize::MAX {
                break walk[pos[v]..].to_vec();
            }
            u = v;
        };
        let k = rng.gen_range(1..3);
        for a in cycle {
            z[a] += k;
        }
    }
    z
}

pub fn bidirected(d: &Digraph) -> BiDigraph {
    bidirect(d)
}

/// Every polyhex of at most four cells, up to symmetry, that forms a
/// perfectly matchable patch with at most 16 nodes.
pub fn benzenoid_catalog() -> Vec<(Vec<(i32, i32)>, PlaneBipartiteGraph)> {
    const DIRS: [(i32, i32); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    let translate = |cells: BTreeSet<(i32, i32)>| -> Vec<(i32, i32)> {
        let &(q0, r0) = cells.iter().next().unwrap();
        cells.iter().map(|&(q, r)| (q - q0, r - r0)).collect()
    };
    // smallest image under the twelve lattice symmetries
    let normalize = |cells: &BTreeSet<(i32, i32)>| -> Vec<(i32, i32)> {
        let mut images = Vec::with_capacity(12);
        let mut cur: Vec<(i32, i32)> = cells.iter().copied().collect();
        for _ in 0..6 {
            cur = cur.iter().map(|&(q, r)| (-r, q + r)).collect();
            images.push(translate(cur.iter().copied().collect()));
            images.push(translate(cur.iter().map(|&(q, r)| (r, q)).collect()));
        }
        images.into_iter().min().unwrap()
    };
    let mut level: BTreeSet<Vec<(i32, i32)>> = BTreeSet::from([vec![(0, 0)]]);
    let mut all = level.clone();
    for _ in 1..4 {
        let mut next = BTreeSet::new();
        for cells in &level {
            for &(q, r) in cells {
                for (dq, dr) in DIRS {
                    let mut grown: BTreeSet<(i32, i32)> = cells.iter().copied().collect();
                    if grown.insert((q + dq, r + dr)) {
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .filter_map(|cells| {
            let g = benzenoid(&cells).ok()?;
            (g.node_count() <= 16).then_some((cells, g))
        })
        .collect()
}
