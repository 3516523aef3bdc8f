//! JSON and plain-text renderings of core values.

use std::collections::BTreeMap;
use std::fmt::Write;

use artinperv_core::curveheart::{GluedComplex, HeartObject, RepComplex};
use artinperv_core::exactalg::AdmissibleModule;
use artinperv_core::ArtinRep;
use serde_json::{json, Value};

use crate::workspace::matrix_doc;

pub fn module(m: &AdmissibleModule) -> Value {
    let divisible: Vec<Value> = m
        .divisible
        .summands()
        .iter()
        .map(|s| json!({"twist": s.twist, "support": s.support.to_string(), "rank": s.rank}))
        .collect();
    json!({
        "display": m.to_string(),
        "coefficients": m.finite.coefficients().to_string(),
        "free_rank": m.free_rank(),
        "torsion": m.finite.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "divisible": divisible,
    })
}

pub fn rep(r: &ArtinRep) -> Value {
    let gens: Vec<Value> = r.generator_matrices().iter().map(|m| json!(matrix_doc(m))).collect();
    let mut v = json!({
        "group": r.group().name(),
        "coefficients": r.coefficients().to_string(),
        "dim": r.dim(),
        "generators": gens,
    });
    if r.has_divisible_part() {
        v["divisible"] = module(&AdmissibleModule { finite: artinperv_core::FgModule::zero(r.coefficients().clone()), divisible: r.divisible_module() });
    }
    v
}

pub fn heart(h: &HeartObject, curve: &str) -> Value {
    json!({
        "curve": curve,
        "branches": h.branches.iter().map(rep).collect::<Vec<_>>(),
        "points": h.points.iter().map(rep).collect::<Vec<_>>(),
        "c": h.c.iter().map(|m| json!(matrix_doc(m))).collect::<Vec<_>>(),
        "branch_ranks": h.branch_ranks(),
        "point_ranks": h.point_ranks(),
    })
}

fn rep_complex(rc: &RepComplex) -> Value {
    let terms: BTreeMap<String, Value> = rc.terms.iter().filter(|(_, m)| m.dim() > 0).map(|(k, m)| (k.to_string(), rep(m))).collect();
    let diffs: BTreeMap<String, Value> =
        rc.diffs.iter().filter(|(_, d)| !d.is_zero()).map(|(k, d)| (k.to_string(), json!(matrix_doc(d)))).collect();
    json!({"terms": terms, "diffs": diffs})
}

pub fn glued(g: &GluedComplex, curve: &str) -> Value {
    let theta: Vec<BTreeMap<String, Value>> = g
        .theta
        .iter()
        .map(|t| t.iter().filter(|(_, m)| m.rows() * m.cols() > 0).map(|(k, m)| (k.to_string(), json!(matrix_doc(m)))).collect())
        .collect();
    json!({
        "curve": curve,
        "a": g.a.iter().map(rep_complex).collect::<Vec<_>>(),
        "b": g.b.iter().map(rep_complex).collect::<Vec<_>>(),
        "theta": theta,
    })
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

pub fn heart_table(h: &HeartObject) -> String {
    let mut rows: Vec<Vec<String>> = h
        .curve
        .branches
        .iter()
        .zip(&h.branches)
        .map(|(b, l)| vec!["branch".into(), b.name.clone(), l.dim().to_string()])
        .collect();
    for (p, w) in h.curve.points.iter().zip(&h.points) {
        rows.push(vec!["point".into(), p.name.clone(), w.dim().to_string()]);
    }
    table(&["part", "name", "rank"], &rows)
}
