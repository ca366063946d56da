//! JSON and Graphviz DOT renderings.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::higher_ar::ArQuiver;
use crate::jacobian::JacobianAlgebra;
use crate::potential::Potential;
use crate::quiver::Quiver;

pub fn quiver_json(q: &Quiver) -> Value {
    json!({
        "s": q.s(),
        "family": q.family(),
        "vertices": q.vertices(),
        "arrows": q.arrows().iter().map(|a| json!({
            "id": a.id,
            "name": q.arrow_name(a.id),
            "src": q.vertex(a.source),
            "tgt": q.vertex(a.target),
            "label": a.label,
        })).collect::<Vec<_>>(),
    })
}

pub fn potential_json(q: &Quiver, w: &Potential) -> Value {
    Value::Array(
        w.terms()
            .map(|(c, v)| {
                json!({
                    "cycle": c.arrows(),
                    "names": c.arrows().iter().map(|&a| q.arrow_name(a)).collect::<Vec<_>>(),
                    "coeff": v,
                })
            })
            .collect(),
    )
}

pub fn qp_json(q: &Quiver, w: &Potential) -> Value {
    json!({ "quiver": quiver_json(q), "potential": potential_json(q, w) })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn quiver_dot(q: &Quiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}{}\" {{", q.family(), q.s());
    for v in q.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            q.vertex(a.source),
            q.vertex(a.target),
            dot_escape(&a.label.to_string())
        );
    }
    out.push_str("}\n");
    out
}

/// Per vertex, the basis of `e_x J` as `{degree, path}` records.
pub fn bases_json(j: &JacobianAlgebra) -> Value {
    let q = j.quiver();
    Value::Array(
        (0..q.num_vertices())
            .map(|v| {
                let basis: Vec<Value> = j
                    .vertex_basis_idx(v)
                    .into_iter()
                    .map(|i| {
                        let p = j.path_of(i);
                        json!({ "degree": p.len(), "path": p.arrows, "display": p.display(q) })
                    })
                    .collect();
                json!({ "vertex": q.vertex(v), "basis": basis })
            })
            .collect(),
    )
}

pub fn dimensions_json(j: &JacobianAlgebra) -> Value {
    json!({
        "dimension": j.dimension(),
        "top_degree": j.top_degree(),
        "degree_dimensions": j.degree_dimensions(),
        "vertices": j.quiver().vertices(),
        "projective_dimensions": j.projective_dimensions(),
        "matrix": j.dimension_matrix(),
    })
}

pub fn ar_quiver_json(ar: &ArQuiver) -> Value {
    let index = |key: &(crate::quiver::Vertex, i64)| ar.vertices.iter().position(|v| v == key).expect("AR vertex");
    json!({
        "levels": [ar.levels.0, ar.levels.1],
        "vertices": ar.vertices.iter().map(|(x, l)| json!({ "x": x, "level": l })).collect::<Vec<_>>(),
        "arrows": ar.arrows.iter().map(|a| json!([index(&a.from), index(&a.to)])).collect::<Vec<_>>(),
    })
}

/// Levels are drawn as ranks.
pub fn ar_quiver_dot(ar: &ArQuiver) -> String {
    let node = |(x, l): &(crate::quiver::Vertex, i64)| format!("\"{x}@{l}\"");
    let mut out = String::from("digraph AR {\n  rankdir=LR;\n");
    for level in ar.levels.0..=ar.levels.1 {
        let _ = write!(out, "  {{ rank=same;");
        for v in ar.vertices.iter().filter(|(_, l)| *l == level) {
            let _ = write!(out, " {};", node(v));
        }
        out.push_str(" }\n");
    }
    for a in &ar.arrows {
        let _ = writeln!(out, "  {} -> {};", node(&a.from), node(&a.to));
    }
    out.push_str("}\n");
    out
}
