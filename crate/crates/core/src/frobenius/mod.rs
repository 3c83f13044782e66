//! Quasi-classical symmetry at roots of unity.
//!
//! The large generators `X_i^{+(M_i)}`, `X_i^{-(M_i)}` and `K~_i = K_i^{M_i}`
//! act on the special-point sectors of `L^res(lambda)` through the classical
//! enveloping algebra of the dual algebra `g~`, extended by the parity
//! operators `K~_i`.

mod rank1;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::qfield::QNumbers;
use crate::qspec::RootOfUnitySpec;
use crate::rootdata::{
    dynkin_bipartition, freudenthal_by_depth, freudenthal_character, CartanType, RootSystem, Weight,
};
use crate::{Error, Rat, Result};

pub use rank1::{
    rank1_res_module, verify_tilde_relations_rank1, DividedPowerModule, RelationReport,
};

/// `q^e` as a sign, or an error if it is not `+-1`.
pub(crate) fn sign_of_power(qn: &QNumbers, e: i64) -> Result<i8> {
    let v = qn.q_power(e);
    if v.is_one() {
        Ok(1)
    } else if (-&v).is_one() {
        Ok(-1)
    } else {
        Err(Error::Consistency(format!("q^{e} = {v} is not a sign")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeData {
    /// Bipartition `a_i` with `a_i + a_j = 1` for linked nodes.
    pub a: Vec<u8>,
    /// `s_ij = q^{M_i M_j (alpha_i, alpha_j)}`.
    pub s_matrix: Vec<Vec<i8>>,
    m_simple: Vec<i64>,
    d: Vec<i64>,
    qn_m: (i64, i64),
}

impl TildeData {
    /// `<K~_i, lambda_z> = q_i^{z_i M_i^2}` at the special point `sum z_j M_j Lambda_j`.
    pub fn k_tilde_eval(&self, z: &[i64]) -> Result<Vec<i8>> {
        self.eval(z, |mi| mi * mi)
    }

    /// `<K_i, lambda_z> = q_i^{z_i M_i}`.
    pub fn k_eval(&self, z: &[i64]) -> Result<Vec<i8>> {
        self.eval(z, |mi| mi)
    }

    fn eval(&self, z: &[i64], f: impl Fn(i64) -> i64) -> Result<Vec<i8>> {
        if z.len() != self.a.len() {
            return Err(Error::DimensionMismatch {
                expected: self.a.len(),
                got: z.len(),
            });
        }
        let qn = QNumbers::new(crate::qfield::QRoot::new(self.qn_m.0, self.qn_m.1)?);
        (0..z.len())
            .map(|i| sign_of_power(&qn, self.d[i] * z[i] * f(self.m_simple[i])))
            .collect()
    }
}

pub fn tilde_data(rs: &RootSystem, spec: &RootOfUnitySpec) -> Result<TildeData> {
    let n = rs.rank();
    let qn = QNumbers::new(spec.q);
    let mut s = alloc::vec![alloc::vec![0i8; n]; n];
    for i in 0..n {
        for j in 0..n {
            s[i][j] = sign_of_power(
                &qn,
                spec.m_simple[i] * spec.m_simple[j] * rs.simple_inner(i, j),
            )?;
        }
    }
    Ok(TildeData {
        a: dynkin_bipartition(rs),
        s_matrix: s,
        m_simple: spec.m_simple.clone(),
        d: spec.d.clone(),
        qn_m: (spec.q.n(), spec.q.m()),
    })
}

fn check_box(rs: &RootSystem, spec: &RootOfUnitySpec, lambda_0: &Weight, z: &[i64]) -> Result<()> {
    let n = rs.rank();
    if lambda_0.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: lambda_0.rank(),
        });
    }
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    let in_box = lambda_0.is_dominant_integral()
        && lambda_0
            .coords
            .iter()
            .zip(&spec.m_simple)
            .all(|(c, &mi)| *c < Rat::from_integer(mi));
    if !in_box {
        return Err(Error::InvalidArgument(format!(
            "{lambda_0} is not in the fundamental box"
        )));
    }
    if z.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!(
            "z = {z:?} has a negative entry"
        )));
    }
    Ok(())
}

/// Highest weights of the `U_q^fin` sectors of `L^res(lambda_0 + lambda_z)`:
/// `lambda_0 + lambda_z - sum eta_j M_j alpha_j`, weighted by the multiplicity
/// of `z - sum eta_j alpha~_j` in the `g~`-module of highest weight `z`.
pub fn tensor_sectors(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda_0: &Weight,
    z: &[i64],
) -> Result<BTreeMap<Weight, u64>> {
    check_box(rs, spec, lambda_0, z)?;
    let dual = RootSystem::from_cartan_matrix(&spec.dual_cartan)?;
    let top = lambda_0.add(&special_point(spec, z));
    let by_eta = freudenthal_by_depth(&Weight::from_ints(z), &dual, usize::MAX)?;
    let mut out = BTreeMap::new();
    for (eta, mult) in by_eta {
        let scaled: Vec<i64> = eta.iter().zip(&spec.m_simple).map(|(e, m)| e * m).collect();
        *out.entry(rs.lower(&top, &scaled)).or_insert(0) += mult;
    }
    Ok(out)
}

/// `lambda_z = sum z_i M_i Lambda_i`.
pub fn special_point(spec: &RootOfUnitySpec, z: &[i64]) -> Weight {
    Weight::from_ints(
        &z.iter()
            .zip(&spec.m_simple)
            .map(|(a, b)| a * b)
            .collect::<Vec<_>>(),
    )
}

/// Compare the predicted sector highest weights with `lambda_0 + mu` for `mu`
/// running over the weights of the `g~`-module of highest weight
/// `sum z_i Lambda~_i`, rescaled by `Lambda~_i -> M_i Lambda_i`.
pub fn tensor_character_check(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    lambda_0: &Weight,
    z: &[i64],
) -> Result<bool> {
    let predicted = tensor_sectors(rs, spec, lambda_0, z)?;
    let dual = RootSystem::from_cartan_matrix(&spec.dual_cartan)?;
    let mut rescaled = BTreeMap::new();
    for (mu, mult) in freudenthal_character(&Weight::from_ints(z), &dual, usize::MAX)? {
        let coords: Vec<Rat> = mu
            .coords
            .iter()
            .zip(&spec.m_simple)
            .map(|(c, &m)| c * Rat::from_integer(m))
            .collect();
        *rescaled
            .entry(lambda_0.add(&Weight::new(coords)))
            .or_insert(0u64) += mult;
    }
    Ok(predicted == rescaled)
}

/// Subalgebra of `g~` whose root vectors commute with every `K~_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealityAlgebra {
    /// Positive roots of `g` with `q^{M_alpha (alpha, alpha_i)} = 1` for all `i`.
    pub roots: Vec<Vec<i64>>,
    /// Simple roots passing the test.
    pub simple: Vec<bool>,
    /// Simple components of the subalgebra, in the metric of `g~`.
    pub components: Vec<CartanType>,
    pub full: bool,
}

impl RealityAlgebra {
    pub fn is_trivial(&self) -> bool {
        self.roots.is_empty()
    }

    /// `"trivial"`, `"(su(2))^k"`, or the product of component types.
    pub fn label(&self) -> String {
        if self.is_trivial() {
            return String::from("trivial");
        }
        let k = self.components.len();
        if k > 1 && self.components.iter().all(|t| t.rank == 1) {
            return format!("(su(2))^{k}");
        }
        let parts: Vec<String> = self.components.iter().map(|t| format!("{t}")).collect();
        parts.join("x")
    }
}

/// Evaluate `q^{M_alpha (alpha, alpha_i)} = 1` exactly for every positive root
/// and identify the subalgebra of `g~` generated by the passing roots.
pub fn reality_preserving_algebra(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
) -> Result<RealityAlgebra> {
    let n = rs.rank();
    let qn = QNumbers::new(spec.q);
    let mut roots = Vec::new();
    let mut tilde = Vec::new();
    for ro in &spec.m_per_root {
        let mut ok = true;
        for i in 0..n {
            let mut e = alloc::vec![0i64; n];
            e[i] = 1;
            let ip = rs.root_inner(&ro.root, &e);
            if sign_of_power(&qn, ro.m_alpha * ip)? != 1 {
                ok = false;
                break;
            }
        }
        if ok {
            roots.push(ro.root.clone());
            tilde.push(ro.m_alpha);
        }
    }
    let simple: Vec<bool> = (0..n)
        .map(|i| {
            roots
                .iter()
                .any(|r| r.iter().enumerate().all(|(j, &c)| c == (i == j) as i64))
        })
        .collect();
    // simple system of the passing roots: those not a sum of two others
    let idx: Vec<usize> = (0..roots.len())
        .filter(|&a| {
            !(0..roots.len()).any(|b| {
                (0..roots.len()).any(|c| {
                    roots[a]
                        .iter()
                        .enumerate()
                        .all(|(k, &x)| x == roots[b][k] + roots[c][k])
                })
            })
        })
        .collect();
    let inner = |a: usize, b: usize| tilde[a] * tilde[b] * rs.root_inner(&roots[a], &roots[b]);
    let cartan: Vec<Vec<i64>> = idx
        .iter()
        .map(|&a| idx.iter().map(|&b| 2 * inner(a, b) / inner(a, a)).collect())
        .collect();
    let components = if cartan.is_empty() {
        Vec::new()
    } else {
        crate::rootdata::classify_cartan(&cartan)?
            .into_iter()
            .map(|(t, _)| t)
            .collect()
    };
    let full = roots.len() == spec.m_per_root.len();
    Ok(RealityAlgebra {
        roots,
        simple,
        components,
        full,
    })
}
