//! JSON views of the core types. Objects serialize with sorted keys.

use serde_json::{json, Map, Value};

use cobrouwer_core::axioms::{AxiomReport, Check, Status};
use cobrouwer_core::{CbsMorphism, FinCbs, Generators, PMorphism, PointSet, Poset, Signature};

pub const SCHEMA: &str = "v1";

/// Wraps command output with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut obj = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    obj.insert("schema".into(), SCHEMA.into());
    obj.insert("command".into(), command.into());
    Value::Object(obj)
}

pub fn poset(p: &Poset) -> Value {
    json!({
        "points": p.len(),
        "covers": p.covers(),
        "labels": p.labels(),
    })
}

fn table(l: &FinCbs, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    l.elements().map(|a| l.elements().map(|b| op(a, b)).collect()).collect()
}

pub fn algebra(l: &FinCbs) -> Value {
    json!({
        "size": l.len(),
        "join": table(l, |a, b| l.join(a, b)),
        "diff": table(l, |a, b| l.diff(a, b)),
        "join_irreducibles": l.join_irreducibles(),
        "labels": l.labels(),
    })
}

pub fn signature(s: &Signature) -> Value {
    match s {
        Signature::First { h, g } => json!({ "kind": "first", "h": h, "G": g, "text": s.to_string() }),
        Signature::Second { h1, h2, g } => {
            json!({ "kind": "second", "h1": h1, "h2": h2, "g": g, "text": s.to_string() })
        }
    }
}

pub fn generators(g: &Generators) -> Value {
    match g {
        Generators::First(x) => json!({ "kind": "first", "elements": [x] }),
        Generators::Second(x1, x2) => json!({ "kind": "second", "elements": [x1, x2] }),
    }
}

pub fn pmorphism(f: &PMorphism) -> Value {
    json!({ "dom": poset(&f.dom), "cod": poset(&f.cod), "map": f.map })
}

pub fn hom(h: &CbsMorphism) -> Value {
    json!({ "map": h.map })
}

pub fn point_set(s: PointSet) -> Value {
    s.iter().collect::<Vec<_>>().into()
}

pub fn checks(cs: &[Check]) -> Value {
    cs.iter().map(|c| json!({ "statement": c.statement, "holds": c.holds })).collect::<Vec<_>>().into()
}

pub fn axiom_report(r: &AxiomReport) -> Value {
    json!({
        "axiom": r.axiom.name(),
        "variables": r.axiom.variables(),
        "satisfied": r.status == Status::Satisfied,
        "failures": r.failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_versioned() {
        let v = envelope("dot", algebra(&FinCbs::chain(2)));
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with(r#"{"command":"dot","diff":[[0,0],[1,0]],"join":"#));
        assert!(text.contains(r#""schema":"v1""#));
        assert_eq!(envelope("x", json!(3))["result"], 3);
    }
}
