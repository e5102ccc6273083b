//! JSON input formats and Graphviz output.
//!
//! Vertices of a quiver are numbered from 1 in every file format, matching the
//! labels used elsewhere.
//!
//! ```json
//! { "type": "A", "rank": 3, "arrows": [[1, 2], [2, 3]] }          // quiver
//! { "tau": 1, "sigma_shift": 0, "diagram_auto": [] }               // automorphism
//! "all"  or  { "orbit_reps": [[1, 0], [2, 0]] }                    // configuration
//! ```
//!
//! Modules use `{ "field": "F2", "dims": {obj: n}, "matrices": {arrow: rows} }`;
//! see [`crate::repmod::Module::to_json`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::category::Cat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::present::Presentation;
use crate::quiver::{AutoSpec, Configuration, DynkinQuiver, DynkinType, Window, ZVertex};

/// Mesh relation sign convention used throughout: `Σ_{y -> x} ᾱα` with all signs `+`.
pub const MESH_SIGN_CONVENTION: &str = "all-plus";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub arrows: Vec<[usize; 2]>,
}

impl QuiverJson {
    pub fn from_quiver(q: &DynkinQuiver) -> QuiverJson {
        QuiverJson {
            kind: q.kind().letter().to_string(),
            rank: q.rank(),
            arrows: q.arrows().iter().map(|&(s, t)| [s + 1, t + 1]).collect(),
        }
    }

    pub fn to_quiver(&self) -> Result<DynkinQuiver> {
        let kind = DynkinType::from_parts(&self.kind, self.rank)?;
        let arrows = self
            .arrows
            .iter()
            .map(|&[s, t]| {
                if s == 0 || t == 0 {
                    Err(Error::InvalidQuiver("vertices are numbered from 1".into()))
                } else {
                    Ok((s - 1, t - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DynkinQuiver::new(kind, arrows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutoJson {
    #[serde(default)]
    pub tau: i32,
    #[serde(default)]
    pub sigma_shift: i32,
    /// 1-based permutation; empty for the identity.
    #[serde(default)]
    pub diagram_auto: Vec<usize>,
}

impl AutoJson {
    pub fn from_spec(f: &AutoSpec) -> AutoJson {
        AutoJson { tau: f.tau_power, sigma_shift: f.sigma_shift_power, diagram_auto: f.diagram_auto.iter().map(|i| i + 1).collect() }
    }

    pub fn to_spec(&self) -> Result<AutoSpec> {
        let perm = self
            .diagram_auto
            .iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| Error::InvalidAuto("vertices are numbered from 1".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(AutoSpec { tau_power: self.tau, sigma_shift_power: self.sigma_shift, diagram_auto: perm })
    }
}

pub fn config_to_json(c: &Configuration) -> Value {
    match c {
        Configuration::All => json!("all"),
        Configuration::OrbitReps(reps) => json!({ "orbit_reps": reps.iter().map(|v| [v.base as i64 + 1, v.level as i64]).collect::<Vec<_>>() }),
    }
}

pub fn config_from_json(v: &Value) -> Result<Configuration> {
    if v.as_str() == Some("all") {
        return Ok(Configuration::All);
    }
    let reps = v
        .get("orbit_reps")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Input("configuration must be \"all\" or {\"orbit_reps\": [...]}".into()))?;
    let mut out = Vec::new();
    for r in reps {
        let pair: [i64; 2] = serde_json::from_value(r.clone()).map_err(|e| Error::Input(format!("orbit representative {r}: {e}")))?;
        if pair[0] < 1 {
            return Err(Error::Input("vertices are numbered from 1".into()));
        }
        out.push(ZVertex::new(pair[0] as usize - 1, pair[1] as i32));
    }
    Ok(Configuration::OrbitReps(out))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A finite window of the framed repetition quiver; frozen vertices are boxes.
pub fn window_dot(w: &Window) -> String {
    let mut out = String::from("digraph window {\n  rankdir=LR;\n");
    for v in w.vertices() {
        let shape = if v.frozen { "box" } else { "ellipse" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(&v.label()));
    }
    for (a, b) in w.arrows() {
        let _ = writeln!(out, "  {} -> {};", quote(&a.label()), quote(&b.label()));
    }
    out.push_str("}\n");
    out
}

/// Gabriel quiver of a presented category; frozen objects are boxes.
pub fn gabriel_dot<F: Field>(name: &str, p: &Presentation<F>) -> String {
    let objs = p.cat.objects();
    let mut out = format!("digraph {} {{\n", quote(name));
    for o in objs {
        let shape = if o.frozen { "box" } else { "ellipse" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(&o.label));
    }
    for a in &p.arrows {
        let _ = writeln!(out, "  {} -> {} [label={}];", quote(&objs[a.source].label), quote(&objs[a.target].label), quote(&a.label));
    }
    out.push_str("}\n");
    out
}

/// Objects, graded Hom dimensions up to `max_deg`, arrows with degrees, relations.
pub fn presentation_json<F: Field>(p: &Presentation<F>, max_deg: u32) -> Result<Value> {
    let cat: &Cat<F> = &p.cat;
    let objs = cat.objects();
    let objects: Vec<Value> = objs.iter().map(|o| json!({ "label": o.label, "frozen": o.frozen })).collect();
    let arrows: Vec<Value> = p
        .arrows
        .iter()
        .map(|a| json!({ "label": a.label, "source": objs[a.source].label, "target": objs[a.target].label, "degree": a.degree }))
        .collect();
    let relations: Vec<Value> = p
        .relations
        .iter()
        .map(|r| json!({ "source": objs[r.source].label, "target": objs[r.target].label, "degree": r.degree, "relation": p.relation_label(r) }))
        .collect();
    Ok(json!({
        "objects": objects,
        "top_degree": cat.top_degree(),
        "hilbert": p.hilbert(max_deg)?,
        "arrows": arrows,
        "relations": relations,
        "bound": p.bound,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::FramedRepetition;

    #[test]
    fn quiver_round_trip() {
        let q = DynkinQuiver::linear_a(3);
        let j = QuiverJson::from_quiver(&q);
        assert_eq!(serde_json::to_value(&j).unwrap(), json!({ "type": "A", "rank": 3, "arrows": [[1, 2], [2, 3]] }));
        assert_eq!(j.to_quiver().unwrap(), q);
        let bad = QuiverJson { kind: "A".into(), rank: 2, arrows: vec![[0, 1]] };
        assert!(bad.to_quiver().is_err());
    }

    #[test]
    fn auto_and_config_round_trip() {
        let f: AutoJson = serde_json::from_value(json!({ "tau": -1, "sigma_shift": 1 })).unwrap();
        assert_eq!(f.to_spec().unwrap(), AutoSpec::cluster());
        for c in [Configuration::All, Configuration::OrbitReps(vec![ZVertex::new(0, 0), ZVertex::new(1, 3)])] {
            assert_eq!(config_from_json(&config_to_json(&c)).unwrap(), c);
        }
        assert!(config_from_json(&json!({ "orbit_reps": [[0, 0]] })).is_err());
    }

    #[test]
    fn frozen_vertices_are_boxed() {
        let zq = FramedRepetition::new(DynkinQuiver::linear_a(2), AutoSpec::tau(), Configuration::All).unwrap();
        let dot = window_dot(&Window::new(zq, (0, 1)));
        assert!(dot.contains("\"(1',0)\" [shape=box]"));
        assert!(dot.contains("\"(1,0)\" [shape=ellipse]"));
    }
}
