//! One function per subcommand; each returns the `spec` block and result rows.

use rootq_core::frobenius::{
    rank1_res_module, reality_preserving_algebra, special_point, tensor_character_check,
    tensor_sectors, tilde_data, verify_tilde_relations_rank1,
};
use rootq_core::gram::{
    classical_limit_scan, gram_block, module_report, shift_decompose, verify_shift_equivalence,
    LimitStatus, ShiftDecomposition,
};
use rootq_core::qspec::{
    classical_hypothesis, compact_bound_check, compute_spec, hermitian_nodes, p_from_z,
    singlet_weights, RealForm, RootOfUnitySpec,
};
use rootq_core::rootdata::{coxeter_labels, RootSystem, Weight};
use serde_json::{json, Map, Value};

use crate::config::{FormChoice, RunConfig};
use crate::render::{
    cyclotomic, form, ints, matrix, module_row, qroot, signature, spec_summary, weight, weight_key,
};
use crate::CliError;

/// Largest number of rows a table scan may produce.
const MAX_ROWS: u64 = 10_000;
/// Largest number of words in one explicit Gram block.
const MAX_WORDS: u64 = 2_000;

pub struct Outcome {
    pub spec: Option<RootOfUnitySpec>,
    pub results: Vec<Value>,
    /// False when a verification the theory guarantees came out negative.
    pub verified: bool,
}

impl Outcome {
    fn new(spec: Option<RootOfUnitySpec>, results: Vec<Value>) -> Self {
        Outcome {
            spec,
            results,
            verified: true,
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        "spec" => spec(cfg),
        "dual" => dual(cfg),
        "special-points" => special_points(cfg),
        "unitary-table" => unitary_table(cfg),
        "gram" => gram(cfg),
        "shift-check" => shift_check(cfg),
        "limit-scan" => limit_scan(cfg),
        "frobenius-check" => frobenius_check(cfg),
        "reality-algebra" => reality(cfg),
        "classify-forms" => classify_forms(cfg),
        other => Err(CliError::usage(format!("unknown subcommand {other}"))),
    }
}

fn setup(cfg: &RunConfig) -> Result<(&RootSystem, RootOfUnitySpec), CliError> {
    let rs = cfg.root_system()?;
    let spec = compute_spec(rs, cfg.q()?)?;
    Ok((rs, spec))
}

fn require_lambda(cfg: &RunConfig) -> Result<&Weight, CliError> {
    cfg.lambda
        .as_ref()
        .ok_or_else(|| CliError::usage(format!("{} requires --lambda", cfg.command)))
}

/// All integer vectors in `{0..=max}^n`, first coordinate fastest.
fn box_points(n: usize, max: i64) -> Result<Vec<Vec<i64>>, CliError> {
    let count = (max as u64 + 1).checked_pow(n as u32).unwrap_or(u64::MAX);
    if count > MAX_ROWS {
        return Err(CliError::usage(format!(
            "the scan box has {count} points; lower --max-weight (limit {MAX_ROWS})"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0i64; n];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        while i < n {
            cur[i] += 1;
            if cur[i] <= max {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(out);
        }
    }
}

/// The real form requested by `--form` / `--shift`, and the singlet weight
/// added to the highest weight in the shift case.
fn resolve_form(
    cfg: &RunConfig,
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
) -> Result<(RealForm, Option<(Vec<i64>, Weight)>), CliError> {
    match &cfg.form {
        FormChoice::Compact => Ok((RealForm::compact(rs.rank()), None)),
        FormChoice::Signs(s) => Ok((RealForm::new(s.clone())?, None)),
        FormChoice::Shift(p) => {
            let (lr, f) = singlet_weights(rs, spec, p)?;
            Ok((f, Some((p.clone(), lr))))
        }
    }
}

fn shift_json(shift: &Option<(Vec<i64>, Weight)>) -> Value {
    match shift {
        Some((p, lr)) => json!({ "p": ints(p), "lambda_r": weight(lr) }),
        None => Value::Null,
    }
}

fn spec(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let row = json!({
        "A": matrix(rs.cartan()),
        "d": spec.d,
        "M": spec.big_m,
        "parity": spec.parity.to_string(),
        "M_i": spec.m_simple,
        "A_tilde": matrix(&spec.dual_cartan),
        "dual_type": spec.dual_type.label(),
        "roles_swapped": spec.dual_type.roles_swapped,
        "positive_roots": spec.m_per_root.len(),
    });
    Ok(Outcome::new(Some(spec), vec![row]))
}

fn dual(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let row = json!({
        "A": matrix(rs.cartan()),
        "A_tilde": matrix(&spec.dual_cartan),
        "M_i": spec.m_simple,
        "dual_type": spec.dual_type.label(),
        "roles_swapped": spec.dual_type.roles_swapped,
    });
    Ok(Outcome::new(Some(spec), vec![row]))
}

fn special_points(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let td = tilde_data(rs, &spec)?;
    let zs = match &cfg.z {
        Some(z) => vec![z.clone()],
        None => box_points(rs.rank(), cfg.max_weight.unwrap_or(2))?,
    };
    let mut rows = Vec::new();
    for z in zs {
        let p = p_from_z(&spec, &z)?;
        let (lr, f) = singlet_weights(rs, &spec, &p)?;
        rows.push(json!({
            "z": ints(&z),
            "lambda": weight(&special_point(&spec, &z)),
            "lambda_r": weight(&lr),
            "p": ints(&p),
            "form": form(&f),
            "K": td.k_eval(&z)?,
            "K_tilde": td.k_tilde_eval(&z)?,
        }));
    }
    Ok(Outcome::new(Some(spec), rows))
}

fn unitary_table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let (f, shift) = resolve_form(cfg, rs, &spec)?;
    let max = cfg.max_weight.unwrap_or(spec.big_m);
    let mut rows = Vec::new();
    for l0 in box_points(rs.rank(), max)? {
        let lambda_0 = Weight::from_ints(&l0);
        let lambda = match &shift {
            Some((_, lr)) => lambda_0.add(lr),
            None => lambda_0.clone(),
        };
        let rep = module_report(rs, &spec, &lambda, &f, cfg.height_budget)?;
        let mut row = module_row(&rep);
        let obj = row.as_object_mut().expect("row is an object");
        obj.insert("lambda_0".into(), weight(&lambda_0));
        obj.insert("shift".into(), shift_json(&shift));
        obj.insert(
            "classical_hypothesis".into(),
            json!(classical_hypothesis(&lambda_0, rs, &spec)),
        );
        // sufficient unitarity bound of the compact form; rows past it are flagged
        obj.insert(
            "within_compact_bound".into(),
            json!(compact_bound_check(&lambda_0, rs, &spec)?),
        );
        rows.push(row);
    }
    Ok(Outcome::new(Some(spec), rows))
}

fn multinomial(eta: &[i64]) -> u64 {
    let mut total = 0u64;
    let mut acc = 1u64;
    for &e in eta {
        for k in 1..=e as u64 {
            total += 1;
            acc = acc.saturating_mul(total) / k;
        }
    }
    acc
}

fn gram(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let lambda_0 = require_lambda(cfg)?;
    let eta = cfg
        .eta
        .as_ref()
        .ok_or_else(|| CliError::usage("gram requires --eta"))?;
    let words = multinomial(eta);
    if words > MAX_WORDS {
        return Err(CliError::usage(format!(
            "the block at eta = {eta:?} has {words} words (limit {MAX_WORDS}); use unitary-table"
        )));
    }
    let (f, shift) = resolve_form(cfg, rs, &spec)?;
    let lambda = match &shift {
        Some((_, lr)) => lambda_0.add(lr),
        None => lambda_0.clone(),
    };
    let b = gram_block(rs, &spec, &lambda, &f, eta)?;
    let words: Vec<Value> = b
        .words
        .iter()
        .map(|w| json!(w.iter().map(|&i| i as u64 + 1).collect::<Vec<_>>()))
        .collect();
    let mat: Vec<Value> = b
        .matrix
        .iter()
        .map(|r| Value::Array(r.iter().map(cyclotomic).collect()))
        .collect();
    let row = json!({
        "lambda": weight(&lambda),
        "form": form(&f),
        "shift": shift_json(&shift),
        "eta": ints(eta),
        "weight": weight(&b.weight),
        "words": words,
        "matrix": mat,
        "rank": b.rank,
        "signature": signature(&b.signature),
    });
    Ok(Outcome::new(Some(spec), vec![row]))
}

fn shift_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let lambda = require_lambda(cfg)?;
    let (lambda_0, p) = match &cfg.form {
        FormChoice::Shift(p) => (lambda.clone(), p.clone()),
        FormChoice::Signs(_) => {
            return Err(CliError::usage(
                "shift-check takes --shift p or a --lambda to decompose, not --form",
            ))
        }
        FormChoice::Compact => match shift_decompose(lambda, rs, &spec)? {
            ShiftDecomposition::Reachable { lambda_0, p, .. } => (lambda_0, p),
            ShiftDecomposition::NotReachable => {
                return Err(CliError::usage(format!(
                    "{lambda} is not lambda_0 + lambda_r with lambda_0 in the fundamental box"
                )))
            }
        },
    };
    let rep = verify_shift_equivalence(rs, &spec, &lambda_0, &p, cfg.max_height)?;
    let compact = module_report(
        rs,
        &spec,
        &lambda_0,
        &RealForm::compact(rs.rank()),
        cfg.height_budget,
    )?;
    let row = json!({
        "lambda_0": weight(&lambda_0),
        "p": ints(&p),
        "lambda_r": weight(&rep.lambda_r),
        "lambda": weight(&lambda_0.add(&rep.lambda_r)),
        "form": form(&rep.form),
        "equal": rep.equal,
        "height": rep.height,
        "blocks_compared": rep.blocks_compared,
        "first_mismatch": rep.first_mismatch.as_ref().map(|e| ints(e)),
        "compact": module_row(&compact),
    });
    let mut out = Outcome::new(Some(spec), vec![row]);
    out.verified = rep.equal;
    Ok(out)
}

fn limit_scan(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rs = cfg.root_system()?;
    let base = cfg.q()?;
    let lambda = require_lambda(cfg)?;
    let i0 = match cfg.node {
        Some(n) => n - 1,
        None => hermitian_nodes(rs)
            .first()
            .map(|(i, _)| *i)
            .ok_or_else(|| CliError::usage(format!("{} has no Hermitian node", rs.label())))?,
    };
    let spec = compute_spec(rs, base)?;
    let stages = classical_limit_scan(
        rs,
        lambda,
        i0,
        base,
        cfg.k_max,
        cfg.height_budget,
        cfg.max_height,
    )?;
    let rows = stages
        .iter()
        .map(|st| {
            let (status, reason) = match &st.status {
                LimitStatus::Unitary => ("unitary", Value::Null),
                LimitStatus::NotUnitary => ("not-unitary", Value::Null),
                LimitStatus::Rejected(r) => ("rejected", json!(r)),
            };
            json!({
                "k": st.k,
                "q": qroot(st.q),
                "node": i0 + 1,
                "lambda": weight(lambda),
                "lambda_0": weight(&st.lambda_0),
                "lambda_r": weight(&st.lambda_r),
                "form": form(&st.form),
                "status": status,
                "reason": reason,
                "shift_equal": st.shift_equal,
                "compact": st.compact.as_ref().map(module_row),
            })
        })
        .collect();
    Ok(Outcome::new(Some(spec), rows))
}

fn frobenius_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let n = rs.rank();
    let td = tilde_data(rs, &spec)?;
    let mut rows = vec![json!({
        "kind": "tilde",
        "a": td.a,
        "s_matrix": td.s_matrix,
        "dual_type": spec.dual_type.label(),
    })];
    let mut verified = true;
    let zs = match &cfg.z {
        Some(z) => vec![z.clone()],
        None => box_points(n, cfg.max_weight.unwrap_or(2))?,
    };
    if n == 1 {
        for z in &zs {
            let md = rank1_res_module(z[0], &spec)?;
            let r = verify_tilde_relations_rank1(&md, &spec);
            verified &= r.ok;
            rows.push(json!({
                "kind": "relations",
                "z": ints(z),
                "ok": r.ok,
                "failures": r.failures,
                "h_tilde_eigenvalues": r.h_tilde_eigenvalues,
                "sector_dim": r.sector_dim,
                "module_dim": md.dim(),
            }));
        }
    }
    let lambda_0 = cfg.lambda.clone().unwrap_or_else(|| Weight::zero(n));
    for z in &zs {
        let sectors = tensor_sectors(rs, &spec, &lambda_0, z)?;
        let ok = tensor_character_check(rs, &spec, &lambda_0, z)?;
        verified &= ok;
        let mut m = Map::new();
        for (w, mult) in &sectors {
            m.insert(weight_key(w), json!(mult));
        }
        rows.push(json!({
            "kind": "tensor",
            "z": ints(z),
            "lambda_0": weight(&lambda_0),
            "sectors": Value::Object(m),
            "character_ok": ok,
        }));
    }
    let mut out = Outcome::new(Some(spec), rows);
    out.verified = verified;
    Ok(out)
}

fn reality(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, spec) = setup(cfg)?;
    let r = reality_preserving_algebra(rs, &spec)?;
    let simple: Vec<usize> = (0..rs.rank())
        .filter(|&i| r.simple[i])
        .map(|i| i + 1)
        .collect();
    let row = json!({
        "label": r.label(),
        "full": r.full,
        "trivial": r.is_trivial(),
        "roots": r.roots,
        "simple_nodes": simple,
        "components": r.components.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(Some(spec), vec![row]))
}

fn classify_forms(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rs = cfg.root_system()?;
    let spec = match cfg.q {
        Some(q) => Some(compute_spec(rs, q)?),
        None => None,
    };
    let labels = coxeter_labels(rs);
    let rows = hermitian_nodes(rs)
        .into_iter()
        .map(|(i, name)| {
            json!({
                "node": i + 1,
                "real_form": name,
                "coxeter_label": labels[i],
                "form": form(&RealForm::hermitian(rs.rank(), i)),
            })
        })
        .collect();
    Ok(Outcome::new(spec, rows))
}

pub fn spec_block(spec: &Option<RootOfUnitySpec>) -> Value {
    spec.as_ref().map(spec_summary).unwrap_or(Value::Null)
}
