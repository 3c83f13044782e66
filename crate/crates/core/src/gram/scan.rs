//! Scans over families of roots of unity.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use super::shift::verify_shift_equivalence;
use super::{module_report, ModuleReport};
use crate::qfield::QRoot;
use crate::qspec::{compute_spec, dominant_integral_except, RealForm, RootOfUnitySpec};
use crate::rootdata::{coxeter_labels, RootSystem, Weight};
use crate::{Error, Rat, Result};

/// Character of the compact `L^fin(lambda)` at one sampled root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub q: QRoot,
    pub total_dim: usize,
    /// Weight multiplicities agree with the classical character.
    pub classical: bool,
    pub truncated: bool,
}

/// Recompute the compact module at each sample `q' = e^{2 pi i n'/m'}` with
/// `0 < n'/m' < n/m` and compare with the classical character.
///
/// This samples an interval hypothesis; it is evidence, not a proof.
pub fn character_stability_scan(
    rs: &RootSystem,
    lambda: &Weight,
    spec: &RootOfUnitySpec,
    samples: &[QRoot],
    height_budget: usize,
) -> Result<Vec<StabilityVerdict>> {
    let top = Rat::new(spec.q.n(), spec.q.m());
    for s in samples {
        let f = Rat::new(s.n(), s.m());
        if !f.is_positive() || f >= top {
            return Err(Error::SampleOutOfRange {
                n: s.n(),
                m: s.m(),
                bound: format!("{top}"),
            });
        }
    }
    let form = RealForm::compact(rs.rank());
    samples
        .iter()
        .map(|&s| {
            let sp = compute_spec(rs, s)?;
            let r = module_report(rs, &sp, lambda, &form, height_budget)?;
            Ok(StabilityVerdict {
                q: s,
                total_dim: r.total_dim,
                classical: r.classical_character,
                truncated: r.truncated,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitStatus {
    Unitary,
    NotUnitary,
    /// `lambda - lambda_{r,k}` is not dominant integral.
    Rejected(String),
}

/// One stage `q_k = e^{2 pi i n / m_k}`, `m_k = m + 2 n k d_{i0}`.
#[derive(Clone, Debug)]
pub struct LimitStage {
    pub k: usize,
    pub q: QRoot,
    pub lambda_r: Weight,
    pub lambda_0: Weight,
    pub form: RealForm,
    pub status: LimitStatus,
    /// Compact report of `L^fin(lambda_0)`, when the stage was not rejected.
    pub compact: Option<ModuleReport>,
    /// Whether the twisted blocks matched the compact ones.
    pub shift_equal: bool,
}

/// Unitarity of `L^fin(lambda)` under the form `(X_{i0}^+)^* = -X_{i0}^-`
/// along `q_k -> 1`, via the shift `lambda = lambda_0 + lambda_{r,k}` with
/// `lambda_{r,k} = -(m_k / 2 n d_{i0}) Lambda_{i0}`.
///
/// `shift_height` bounds the block comparison of the twisted module.
pub fn classical_limit_scan(
    rs: &RootSystem,
    lambda: &Weight,
    i0: usize,
    base: QRoot,
    k_max: usize,
    height_budget: usize,
    shift_height: usize,
) -> Result<Vec<LimitStage>> {
    let n = rs.rank();
    if lambda.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lambda.rank(),
        });
    }
    if i0 >= n || coxeter_labels(rs)[i0] != 1 {
        return Err(Error::InvalidArgument(format!(
            "node {} does not have Coxeter label 1",
            i0 + 1
        )));
    }
    if !dominant_integral_except(lambda, i0) {
        return Err(Error::NotDominantIntegral(format!(
            "{lambda} on the compact nodes"
        )));
    }
    let d0 = rs.d()[i0];
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mk = base.m() + 2 * base.n() * k as i64 * d0;
        let q = QRoot::new(base.n(), mk)?;
        let spec = compute_spec(rs, q)?;
        let lambda_r = Weight::fundamental(n, i0, -Rat::new(mk, 2 * base.n() * d0));
        let lambda_0 = lambda.sub(&lambda_r);
        let mut p = vec![0i64; n];
        p[i0] = -1;
        let form = RealForm::hermitian(n, i0);
        if !lambda_0.is_dominant_integral() {
            out.push(LimitStage {
                k,
                q,
                lambda_r,
                lambda_0: lambda_0.clone(),
                form,
                status: LimitStatus::Rejected(format!(
                    "lambda - lambda_r = {lambda_0} is not dominant integral"
                )),
                compact: None,
                shift_equal: false,
            });
            continue;
        }
        let compact = module_report(rs, &spec, &lambda_0, &RealForm::compact(n), height_budget)?;
        let sh = verify_shift_equivalence(
            rs,
            &spec,
            &lambda_0,
            &p,
            shift_height.min(compact.depth + 1),
        )?;
        if sh.form != form {
            return Err(Error::Consistency(format!(
                "singlet form {} differs from {}",
                sh.form, form
            )));
        }
        let status = if sh.equal && compact.unitary && !compact.truncated {
            LimitStatus::Unitary
        } else {
            LimitStatus::NotUnitary
        };
        out.push(LimitStage {
            k,
            q,
            lambda_r,
            lambda_0,
            form,
            status,
            compact: Some(compact),
            shift_equal: sh.equal,
        });
    }
    Ok(out)
}
