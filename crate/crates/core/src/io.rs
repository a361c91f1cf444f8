//! JSON input and output formats.
//!
//! Digraph files look like
//! `{"nodes": ["a", "b"], "arcs": [["a", "b"]], "w_o": {"a": 1}, "w_i": {"b": "1/2"}}`
//! and plane-graph files like
//! `{"S": [..], "T": [..], "edges": [["s1", "t1"], ..], "faces": [{"id": "f0",
//! "boundary": [[0, "+"], [1, "-"], ..]}], "outer": "f0", "w1": {..}, "w2": {..}}`,
//! where `"+"` traverses an edge from its `S` end to its `T` end.
//!
//! Weights may be JSON integers, decimals, or strings holding an integer, a
//! decimal or a fraction `p/q`. Nodes or faces missing from a weight map get
//! weight 0.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::digraph::{bidirect, Digraph, NodeId, Potential};
use crate::error::Error;
use crate::mcc::OneWayCircuit;
use crate::plane::{faces_from_sides, ClarFriesResult, FaceId, FaceNumber, PlaneBipartiteGraph};
use crate::sosi::{CircularCover, SinkStableResult, SoSiCertificate, WeightPair};
use crate::Rational;

/// A weight as written in JSON.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum WeightValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl WeightValue {
    pub fn to_rational(&self) -> Result<Rational, Error> {
        match self {
            WeightValue::Int(x) => Ok(Rational::from_integer(*x)),
            WeightValue::Float(x) if x.is_finite() => parse_rational(&x.to_string()),
            WeightValue::Float(x) => Err(Error::Input(format!("weight {x} is not finite"))),
            WeightValue::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"3"`, `"-2"`, `"0.25"` or `"5/6"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Input(format!("cannot read `{text}` as an exact number"));
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| bad())?,
        };
        let denom = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let numer = int
            .checked_mul(denom)
            .and_then(|x| x.checked_add(frac.parse::<i64>().ok()?))
            .ok_or_else(bad)?;
        let value = Rational::new(numer, denom);
        return Ok(if negative { -value } else { value });
    }
    t.parse::<i64>()
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

pub type WeightMap = BTreeMap<String, WeightValue>;

#[derive(Debug, Clone, Deserialize)]
pub struct DigraphDoc {
    pub nodes: Vec<String>,
    pub arcs: Vec<(String, String)>,
    #[serde(default)]
    pub w_o: Option<WeightMap>,
    #[serde(default)]
    pub w_i: Option<WeightMap>,
    /// Single weight used by the resonant and sink-stable commands.
    #[serde(default)]
    pub w: Option<WeightMap>,
}

#[derive(Debug, Clone, Default, Deserialize)]
pub struct WeightDoc {
    #[serde(default)]
    pub w_o: Option<WeightMap>,
    #[serde(default)]
    pub w_i: Option<WeightMap>,
    #[serde(default)]
    pub w: Option<WeightMap>,
}

impl DigraphDoc {
    pub fn digraph(&self) -> Result<Digraph, Error> {
        let d = Digraph::from_named_arcs(&self.nodes, &self.arcs)?;
        Ok(d)
    }

    pub fn weights(&self) -> WeightDoc {
        WeightDoc {
            w_o: self.w_o.clone(),
            w_i: self.w_i.clone(),
            w: self.w.clone(),
        }
    }
}

/// Resolves a name-keyed weight map against node names; absent names get 0.
pub fn weight_vector(names: &[String], map: &WeightMap) -> Result<Vec<Rational>, Error> {
    let mut w = vec![Rational::from_integer(0); names.len()];
    for (name, value) in map {
        let v = names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::Input(format!("weight given for unknown name `{name}`")))?;
        let x = value.to_rational()?;
        if x < Rational::from_integer(0) {
            return Err(Error::Input(format!("negative weight for `{name}`")));
        }
        w[v] = x;
    }
    Ok(w)
}

impl WeightDoc {
    /// Source and sink weights. Without any weight key, every node gets 1 on
    /// both sides; a lone `w` applies to both sides.
    pub fn pair(&self, names: &[String]) -> Result<WeightPair, Error> {
        let resolve =
            |m: &Option<WeightMap>| m.as_ref().map(|m| weight_vector(names, m)).transpose();
        let (w_o, w_i, w) = (resolve(&self.w_o)?, resolve(&self.w_i)?, resolve(&self.w)?);
        let zero = || vec![Rational::from_integer(0); names.len()];
        let pair = match (w_o, w_i, w) {
            (None, None, None) => {
                let ones = vec![Rational::from_integer(1); names.len()];
                WeightPair::new(ones.clone(), ones)?
            }
            (None, None, Some(w)) => WeightPair::new(w.clone(), w)?,
            (o, i, _) => WeightPair::new(o.unwrap_or_else(zero), i.unwrap_or_else(zero))?,
        };
        Ok(pair)
    }

    /// A single node weight: `w` if present, else `w_i`, else all ones.
    pub fn single(&self, names: &[String]) -> Result<Vec<Rational>, Error> {
        match self.w.as_ref().or(self.w_i.as_ref()) {
            Some(m) => weight_vector(names, m),
            None => Ok(vec![Rational::from_integer(1); names.len()]),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct FaceDoc {
    pub id: String,
    pub boundary: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PlaneDoc {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub faces: Vec<FaceDoc>,
    pub outer: String,
    #[serde(default)]
    pub w1: WeightMap,
    #[serde(default)]
    pub w2: WeightMap,
}

impl PlaneDoc {
    pub fn graph(&self) -> Result<PlaneBipartiteGraph, Error> {
        let faces: Vec<(String, Vec<(usize, bool)>)> = self
            .faces
            .iter()
            .map(|f| {
                let sides = f
                    .boundary
                    .iter()
                    .map(|(e, dir)| match dir.as_str() {
                        "+" => Ok((*e, true)),
                        "-" => Ok((*e, false)),
                        other => Err(Error::Input(format!(
                            "face `{}`: side direction must be \"+\" or \"-\", found \"{other}\"",
                            f.id
                        ))),
                    })
                    .collect::<Result<_, _>>()?;
                Ok((f.id.clone(), sides))
            })
            .collect::<Result<_, Error>>()?;
        Ok(PlaneBipartiteGraph::new(
            &self.s,
            &self.t,
            &self.edges,
            faces_from_sides(&faces),
            &self.outer,
        )?)
    }

    /// `(w1, w2)` indexed by face.
    pub fn face_weights(
        &self,
        g: &PlaneBipartiteGraph,
    ) -> Result<(Vec<Rational>, Vec<Rational>), Error> {
        let ids: Vec<String> = g.faces().iter().map(|f| f.id.clone()).collect();
        Ok((
            weight_vector(&ids, &self.w1)?,
            weight_vector(&ids, &self.w2)?,
        ))
    }
}

/// Serializes a plane graph back to its input format (weights omitted).
pub fn plane_to_json(g: &PlaneBipartiteGraph) -> Value {
    let names = |range: std::ops::Range<usize>| -> Vec<&str> { range.map(|v| g.name(v)).collect() };
    json!({
        "S": names(0..g.s_count()),
        "T": names(g.s_count()..g.node_count()),
        "edges": g.edges().iter().map(|&(s, t)| [g.name(s), g.name(t)]).collect::<Vec<_>>(),
        "faces": g.faces().iter().map(|f| json!({
            "id": f.id,
            "boundary": f.boundary.iter()
                .map(|s| json!([s.edge, if s.forward { "+" } else { "-" }]))
                .collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "outer": g.face(g.outer_face()).id,
    })
}

/// Integers as JSON numbers, everything else as a `"p/q"` string.
pub fn rational_json(x: &Rational) -> Value {
    if x.is_integer() {
        json!(x.to_integer())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn sorted_names(names: &[String], set: &[NodeId]) -> Vec<String> {
    let mut out: Vec<String> = set.iter().map(|&v| names[v].clone()).collect();
    out.sort();
    out
}

fn potential_json(names: &[String], pi: &Potential) -> BTreeMap<String, i64> {
    names
        .iter()
        .cloned()
        .zip(pi.values().iter().copied())
        .collect()
}

fn sparse(values: &[Rational]) -> Vec<Value> {
    values
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != Rational::from_integer(0))
        .map(|(a, x)| json!([a, rational_json(x)]))
        .collect()
}

pub fn cover_json(cover: &CircularCover) -> Value {
    json!({ "z_o": sparse(&cover.z_o), "z_i": sparse(&cover.z_i) })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChecksJson {
    pub minmax_equal: bool,
    pub pair_verified: bool,
    pub cover_valid: bool,
    pub integral: bool,
}

pub fn certificate_json(d: &Digraph, w: &WeightPair, cert: &SoSiCertificate) -> Value {
    let names = d.names();
    let checks = cert.check(d, w);
    let b = bidirect(d);
    json!({
        "value": rational_json(&cert.value),
        "Y_o": sorted_names(names, &cert.y_o),
        "Y_i": sorted_names(names, &cert.y_i),
        "potential": potential_json(names, &cert.potential),
        "cover_cost": rational_json(&cert.cover.cost(&b)),
        "cover": cover_json(&cert.cover),
        "checks": ChecksJson {
            minmax_equal: checks.minmax_equal,
            pair_verified: checks.pair_verified,
            cover_valid: checks.cover_valid,
            integral: checks.integral,
        },
    })
}

pub fn resonant_json(d: &Digraph, w: &WeightPair, cert: &SoSiCertificate) -> Value {
    let mut value = certificate_json(d, w, cert);
    let set: Vec<NodeId> = cert.y_o.iter().chain(&cert.y_i).copied().collect();
    value["resonant_set"] = json!(sorted_names(d.names(), &set));
    value
}

fn circuit_json(d: &Digraph, c: &OneWayCircuit, multiplicity: i64) -> Value {
    let b = bidirect(d);
    json!({
        "nodes": c.nodes(&b).iter().map(|&v| d.name(v)).collect::<Vec<_>>(),
        "arcs": c.arcs,
        "multiplicity": multiplicity,
        "a_value": c.a_value(&b),
    })
}

pub fn sink_stable_json(d: &Digraph, w: &WeightPair, res: &SinkStableResult) -> Value {
    json!({
        "value": res.value,
        "set": sorted_names(d.names(), &res.set),
        "circuits": res.circuits.iter().map(|(c, k)| circuit_json(d, c, *k)).collect::<Vec<_>>(),
        "certificate": certificate_json(d, w, &res.certificate),
    })
}

fn face_ids(g: &PlaneBipartiteGraph, faces: &[FaceId]) -> Vec<String> {
    let mut out: Vec<String> = faces.iter().map(|&f| g.face(f).id.clone()).collect();
    out.sort();
    out
}

fn matching_json(g: &PlaneBipartiteGraph, matching: &[usize]) -> Vec<[String; 2]> {
    let mut out: Vec<[String; 2]> = matching
        .iter()
        .map(|&e| {
            let (s, t) = g.edge(e);
            [g.name(s).to_string(), g.name(t).to_string()]
        })
        .collect();
    out.sort();
    out
}

pub fn clar_fries_json(
    g: &PlaneBipartiteGraph,
    w1: &[Rational],
    w2: &[Rational],
    res: &ClarFriesResult,
) -> Value {
    let dual = &res.dual.digraph;
    let weights = WeightPair::new(w2.to_vec(), w1.to_vec()).expect("validated weights");
    json!({
        "value": rational_json(&res.value),
        "matching": matching_json(g, &res.matching),
        "cw_faces": face_ids(g, &res.cw_faces),
        "acw_faces": face_ids(g, &res.acw_faces),
        "dual_certificate": certificate_json(dual, &weights, &res.certificate),
    })
}

pub fn face_number_json(
    g: &PlaneBipartiteGraph,
    w1: &[Rational],
    w2: &[Rational],
    res: &FaceNumber,
) -> Value {
    let mut value = clar_fries_json(g, w1, w2, &res.detail);
    value["value"] = json!(res.value);
    value["faces"] = json!(face_ids(g, &res.faces));
    value
}
