//! JSON rendering of core values: rationals as "p/q" strings, cyclotomic
//! numbers as power-basis coefficients with a decimal approximation.

use rootq_core::gram::{ModuleReport, Signature};
use rootq_core::qfield::{Cyclotomic, QRoot};
use rootq_core::qspec::{RealForm, RootOfUnitySpec};
use rootq_core::rootdata::Weight;
use rootq_core::Rat;
use serde_json::{json, Map, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn weight(w: &Weight) -> Value {
    Value::Array(w.coords.iter().map(rat).collect())
}

/// Object key for a weight, e.g. `[1,-1/2]`.
pub fn weight_key(w: &Weight) -> String {
    w.to_string()
}

pub fn ints(v: &[i64]) -> Value {
    json!(v)
}

pub fn matrix(a: &[Vec<i64>]) -> Value {
    json!(a)
}

pub fn form(f: &RealForm) -> Value {
    Value::String(f.to_string())
}

pub fn qroot(q: QRoot) -> Value {
    Value::String(format!("{}/{}", q.n(), q.m()))
}

pub fn cyclotomic(x: &Cyclotomic) -> Value {
    let coefficients: Vec<Value> = x
        .coefficients()
        .into_iter()
        .map(|(n, d)| Value::String(format!("{n}/{d}")))
        .collect();
    let (re, im) = x.approx();
    // normalise -0 so the text is stable
    let clean = |v: f64| if v.abs() < 5e-13 { 0.0 } else { v };
    json!({
        "conductor": x.conductor(),
        "coefficients": coefficients,
        "approx": format!("{:.12} {:+.12}i", clean(re), clean(im)),
    })
}

pub fn signature(s: &Signature) -> Value {
    json!({ "plus": s.plus, "zero": s.zero, "minus": s.minus })
}

/// `{M, parity, M_i, M_alpha, dual_type}`.
pub fn spec_summary(spec: &RootOfUnitySpec) -> Value {
    let m_alpha: Vec<Value> = spec
        .m_per_root
        .iter()
        .map(|ro| json!({ "root": ro.root, "d": ro.d, "M_alpha": ro.m_alpha }))
        .collect();
    json!({
        "M": spec.big_m,
        "parity": spec.parity.to_string(),
        "M_i": spec.m_simple,
        "M_alpha": m_alpha,
        "dual_type": spec.dual_type.label(),
    })
}

pub fn dims(report: &ModuleReport) -> Value {
    let mut m = Map::new();
    for (w, d) in &report.dims {
        m.insert(weight_key(w), json!(d));
    }
    Value::Object(m)
}

/// One `results` row for a module.
pub fn module_row(report: &ModuleReport) -> Value {
    json!({
        "lambda": weight(&report.lambda),
        "form": form(&report.form),
        "dims": dims(report),
        "total_dim": report.total_dim,
        "unitary": report.unitary,
        "classical_character": report.classical_character,
        "truncated": report.truncated,
        "depth": report.depth,
    })
}
