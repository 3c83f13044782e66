//! Shift construction: tensoring with one-dimensional modules.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Signed;

use super::block::WordGram;
use super::{GramContext, ModuleReport};
use crate::qspec::{classical_hypothesis, singlet_weights, RealForm, RootOfUnitySpec};
use crate::rootdata::{RootSystem, Weight};
use crate::{Error, Rat, Result};

/// Result of splitting `lambda = lambda_0 + lambda_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftDecomposition {
    Reachable {
        lambda_0: Weight,
        lambda_r: Weight,
        /// Singlet exponents of `lambda_r`.
        p: Vec<i64>,
        /// Real form induced by `lambda_r`.
        form: RealForm,
    },
    NotReachable,
}

/// Split `lambda` into `lambda_0` with `0 <= (lambda_0, alpha_i^vee) < M_i`
/// integral, plus a singlet weight `lambda_r = sum (m p_i / 2 n d_i) Lambda_i`.
pub fn shift_decompose(
    lambda: &Weight,
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
) -> Result<ShiftDecomposition> {
    let n = rs.rank();
    if lambda.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lambda.rank(),
        });
    }
    let (qn, qm) = (spec.q.n(), spec.q.m());
    let mut p = Vec::with_capacity(n);
    let mut l0 = Vec::with_capacity(n);
    for i in 0..n {
        let c = Rat::new(qm, 2 * qn * spec.d[i]);
        let x = lambda.coords[i];
        let mi = Rat::from_integer(spec.m_simple[i]);
        // lambda_0,i = x - c p lies in [0, M_i)
        let lo = ((x - mi) / c).floor().to_integer();
        let hi = (x / c).ceil().to_integer();
        let hit = (lo..=hi).find_map(|pi| {
            let v = x - c * Rat::from_integer(pi);
            (v.is_integer() && !v.is_negative() && v < mi).then_some((pi, v))
        });
        match hit {
            Some((pi, v)) => {
                p.push(pi);
                l0.push(v);
            }
            None => return Ok(ShiftDecomposition::NotReachable),
        }
    }
    let (lambda_r, form) = singlet_weights(rs, spec, &p)?;
    Ok(ShiftDecomposition::Reachable {
        lambda_0: Weight::new(l0),
        lambda_r,
        p,
        form,
    })
}

/// Outcome of the block-by-block comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReport {
    pub equal: bool,
    pub lambda_r: Weight,
    pub form: RealForm,
    /// Deepest height compared.
    pub height: usize,
    pub blocks_compared: usize,
    pub first_mismatch: Option<Vec<i64>>,
}

/// Compare the Gram blocks of `lambda_0 + lambda_r` under the form induced by
/// `lambda_r` with the compact Gram blocks of `lambda_0`, entry by entry on the
/// same words, for every weight space down to `max_height` (stopping early once
/// a whole height level vanishes on both sides).
pub fn verify_shift_equivalence(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda_0: &Weight,
    p: &[i64],
    max_height: usize,
) -> Result<ShiftReport> {
    let mut out = verify_shift_equivalence_batch(rs, spec, lambda_0, &[p.to_vec()], max_height)?;
    Ok(out.remove(0))
}

/// [`verify_shift_equivalence`] for several `p`, sharing the compact blocks.
pub fn verify_shift_equivalence_batch(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda_0: &Weight,
    ps: &[Vec<i64>],
    max_height: usize,
) -> Result<Vec<ShiftReport>> {
    let n = rs.rank();
    let compact = GramContext::new(rs, spec, lambda_0, &RealForm::compact(n))?;
    let mut wc = WordGram::new(&compact);
    let mut out = Vec::with_capacity(ps.len());
    for p in ps {
        let (lambda_r, form) = singlet_weights(rs, spec, p)?;
        let twisted = GramContext::new(rs, spec, &lambda_0.add(&lambda_r), &form)?;
        let mut wt = WordGram::new(&twisted);
        let mut compared = 0;
        let mut height = 0;
        let mut mismatch = None;
        'levels: for h in 0..=max_height {
            height = h;
            let mut all_zero = true;
            for eta in etas_at_height(n, h) {
                let (_, gc) = wc.block(&eta);
                let gc = gc.clone();
                let (_, gt) = wt.block(&eta);
                compared += 1;
                if gc != *gt {
                    mismatch = Some(eta);
                    break 'levels;
                }
                all_zero &= gc.iter().all(|r| r.iter().all(|v| v.is_zero()));
            }
            if all_zero {
                break;
            }
        }
        out.push(ShiftReport {
            equal: mismatch.is_none(),
            lambda_r,
            form,
            height,
            blocks_compared: compared,
            first_mismatch: mismatch,
        });
    }
    Ok(out)
}

/// All non-negative `eta` of length `n` with entries summing to `h`, descending.
pub(crate) fn etas_at_height(n: usize, h: usize) -> Vec<Vec<i64>> {
    fn go(n: usize, h: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == n {
            cur.push(h);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=h).rev() {
            cur.push(k);
            go(n, h - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, h as i64, &mut Vec::new(), &mut out);
    }
    out
}

/// Whether the report's weight multiplicities agree with the classical
/// character.
///
/// Fails if the report is truncated or `lambda` is not dominant integral, and
/// if the classical-character theorem's hypothesis holds but the characters
/// differ.
pub fn classical_character_check(report: &ModuleReport, rs: &RootSystem) -> Result<bool> {
    if report.truncated {
        return Err(Error::Truncated(report.height_budget));
    }
    if !report.lambda.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(format!("{}", report.lambda)));
    }
    let ok = report.classical_character;
    if !ok && classical_hypothesis(&report.lambda, rs, &report.spec) {
        return Err(Error::Consistency(format!(
            "character of L({}) differs from the classical one inside the bound",
            report.lambda
        )));
    }
    Ok(ok)
}
