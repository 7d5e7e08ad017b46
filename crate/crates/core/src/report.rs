//! JSON views of reports, structures and fuzzy subsets.
//!
//! Objects are built as `serde_json::Value`, whose maps keep keys sorted, so
//! identical inputs always serialize to identical bytes.

use serde_json::{json, Value};

use crate::fuzzy::FuzzySubset;
use crate::search::{Found, SearchResult, SearchTask};
use crate::semiprime::{Witness, WitnessReport};
use crate::structure::{Element, FiniteOrderedGroupoid};

/// Names elements for presentation.
pub trait ElementNames {
    fn element_name(&self, e: Element) -> String;
}

impl ElementNames for FiniteOrderedGroupoid {
    fn element_name(&self, e: Element) -> String {
        self.label(e).to_string()
    }
}

pub fn witness_json(w: &Witness, names: &dyn ElementNames) -> Value {
    let n = |e: &Element| names.element_name(*e);
    match w {
        Witness::Square { x, xx, fx, fxx } => json!({
            "kind": "square",
            "x": n(x),
            "x*x": n(xx),
            "f(x)": fx.to_string(),
            "f(x*x)": fxx.to_string(),
        }),
        Witness::FuzzyPoint { x, lambda, fx } => json!({
            "kind": "fuzzy-point",
            "x": n(x),
            "lambda": lambda.to_string(),
            "f(x)": fx.to_string(),
        }),
        Witness::Subset { g, x } => json!({
            "kind": "subset",
            "g": g
                .iter()
                .enumerate()
                .map(|(i, v)| json!([n(&Element(i)), v.to_string()]))
                .collect::<Vec<_>>(),
            "x": n(x),
        }),
        Witness::Triple {
            a,
            x,
            y,
            fa,
            fxx,
            fyy,
        } => json!({
            "kind": "triple",
            "a": n(a),
            "x": n(x),
            "y": n(y),
            "f(a)": fa.to_string(),
            "f(x*x)": fxx.to_string(),
            "f(y*y)": fyy.to_string(),
        }),
        Witness::Crisp { x, xx } => json!({
            "kind": "crisp",
            "x": n(x),
            "x*x": n(xx),
        }),
        Witness::Composition { a, left, right } => json!({
            "kind": "composition",
            "a": n(a),
            "(f*g)*h": left.to_string(),
            "f*(g*h)": right.to_string(),
        }),
    }
}

/// `{"checker": name, "holds": bool, "witness": {...} | null}`.
pub fn report_json(r: &WitnessReport, names: &dyn ElementNames) -> Value {
    json!({
        "checker": r.checker.name(),
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|w| witness_json(w, names)),
    })
}

/// Element order is kept by emitting `[label, grade]` pairs.
pub fn fuzzy_json(f: &FuzzySubset) -> Value {
    Value::Array(
        f.structure()
            .elements()
            .map(|e| json!([f.structure().label(e), f[e].to_string()]))
            .collect(),
    )
}

pub fn structure_json(s: &FiniteOrderedGroupoid) -> Value {
    let l = |e: Element| s.label(e).to_string();
    json!({
        "elements": s.labels(),
        "order": s.covers().into_iter().map(|(a, b)| json!([l(a), l(b)])).collect::<Vec<_>>(),
        "mul": s
            .elements()
            .map(|x| s.elements().map(|y| l(s.mul(x, y))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// One line of search output.
pub fn found_json(found: &Found) -> Value {
    json!({
        "structure": structure_json(&found.structure),
        "subsets": found.subsets.iter().map(fuzzy_json).collect::<Vec<_>>(),
        "report": report_json(&found.report, &*found.structure),
    })
}

pub fn search_summary_json(task: &SearchTask, result: &SearchResult) -> Value {
    json!({
        "command": "search",
        "inputs": {
            "max_n": task.max_n,
            "grid": task.grade_grid.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "goal": task.goal.name(),
            "budget": task.budget.to_string(),
        },
        "results": {
            "examined": result.examined.to_string(),
            "found": result.found.len(),
            "exhausted": result.exhausted,
        },
    })
}

/// Top-level envelope `{"command", "inputs", "results"}`.
pub fn envelope(command: &str, inputs: Value, results: Vec<Value>) -> Value {
    json!({
        "command": command,
        "inputs": inputs,
        "results": results,
    })
}
