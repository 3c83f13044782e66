//! Rank-one modules `L^res(z M Lambda)` in the divided-power basis.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::gram::{mat_mul, Matrix};
use crate::qfield::{Cyclotomic, QNumbers, QRoot};
use crate::qspec::RootOfUnitySpec;
use crate::{Error, Result};

/// The Weyl module of highest weight `N = z M` with basis
/// `v_k = X^{-(k)} v_0`, `k = 0..=N`.
///
/// The vectors `v_k` with `M` not dividing `k` span a submodule; the quotient
/// is `L^res(z M Lambda)`, spanned by the sector vectors `v_{nM}`.
#[derive(Clone, Debug)]
pub struct DividedPowerModule {
    pub z: i64,
    pub big_m: i64,
    /// `d` of the simple root.
    pub d: i64,
    /// Bipartition choice in `X~^+ = X^{+(M)} K~^a`.
    pub a: u8,
    /// `N - 2k` per basis vector.
    pub weights: Vec<i64>,
    pub x_plus_m: Matrix,
    pub x_minus_m: Matrix,
    pub k: Matrix,
    pub h: Matrix,
    pub x_plus: Matrix,
    pub x_minus: Matrix,
    pub k_tilde: Matrix,
    pub tilde_plus: Matrix,
    pub tilde_minus: Matrix,
    q: QRoot,
}

impl DividedPowerModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn top(&self) -> i64 {
        self.z * self.big_m
    }

    /// Indices `nM` of the sector vectors.
    pub fn sector(&self) -> Vec<usize> {
        (0..=self.z).map(|n| (n * self.big_m) as usize).collect()
    }

    fn qn(&self) -> QNumbers {
        QNumbers::new(self.q)
    }

    /// `X^{-(a)} v_k = [k + a choose a] v_{k+a}`.
    pub fn divided_minus(&self, a: i64) -> Matrix {
        let n = self.dim();
        let qn = self.qn();
        let mut m = vec![vec![qn.zero(); n]; n];
        for k in 0..n as i64 {
            if k + a < n as i64 {
                m[(k + a) as usize][k as usize] =
                    qn.qbinomial(k + a, a, self.d).expect("admissible spec");
            }
        }
        m
    }

    /// `X^{+(a)} v_k = [N - k + a choose a] v_{k-a}`.
    pub fn divided_plus(&self, a: i64) -> Matrix {
        let n = self.dim();
        let qn = self.qn();
        let mut m = vec![vec![qn.zero(); n]; n];
        for k in 0..n as i64 {
            if k >= a {
                m[(k - a) as usize][k as usize] = qn
                    .qbinomial(self.top() - k + a, a, self.d)
                    .expect("admissible spec");
            }
        }
        m
    }

    pub fn zero(&self) -> Cyclotomic {
        self.qn().zero()
    }
}

fn diag(values: Vec<Cyclotomic>, zero: &Cyclotomic) -> Matrix {
    let n = values.len();
    let mut m = vec![vec![zero.clone(); n]; n];
    for (i, v) in values.into_iter().enumerate() {
        m[i][i] = v;
    }
    m
}

/// `L^res(z M Lambda)` for a rank-one spec, with `M = M_1`.
pub fn rank1_res_module(z: i64, spec: &RootOfUnitySpec) -> Result<DividedPowerModule> {
    if spec.rank() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: spec.rank(),
        });
    }
    if z < 0 {
        return Err(Error::InvalidArgument(format!("z = {z} is negative")));
    }
    let qn = QNumbers::new(spec.q);
    let big_m = spec.m_simple[0];
    let d = spec.d[0];
    let top = z * big_m;
    let weights: Vec<i64> = (0..=top).map(|k| top - 2 * k).collect();
    let zero = qn.zero();
    let k = diag(weights.iter().map(|&w| qn.q_power(d * w)).collect(), &zero);
    let k_tilde = diag(
        weights.iter().map(|&w| qn.q_power(d * big_m * w)).collect(),
        &zero,
    );
    let h = diag(weights.iter().map(|&w| qn.int(w)).collect(), &zero);
    let mut me = DividedPowerModule {
        z,
        big_m,
        d,
        a: 0,
        weights,
        x_plus_m: Vec::new(),
        x_minus_m: Vec::new(),
        k,
        h,
        x_plus: Vec::new(),
        x_minus: Vec::new(),
        k_tilde,
        tilde_plus: Vec::new(),
        tilde_minus: Vec::new(),
        q: spec.q,
    };
    me.x_plus = me.divided_plus(1);
    me.x_minus = me.divided_minus(1);
    me.x_plus_m = me.divided_plus(big_m);
    me.x_minus_m = me.divided_minus(big_m);
    let id_or_kt = |pow: u8| -> Matrix {
        if pow == 1 {
            me.k_tilde.clone()
        } else {
            diag(vec![qn.one(); me.dim()], &zero)
        }
    };
    let ka = id_or_kt(me.a);
    let kb = id_or_kt(1 - me.a);
    let qm2 = qn.q_power(d * big_m * big_m);
    me.tilde_plus = mat_mul(&me.x_plus_m, &ka, &zero);
    me.tilde_minus = scale(&mat_mul(&me.x_minus_m, &kb, &zero), &qm2);
    Ok(me)
}

fn scale(m: &Matrix, c: &Cyclotomic) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn commutator(a: &Matrix, b: &Matrix, zero: &Cyclotomic) -> Matrix {
    sub(&mat_mul(a, b, zero), &mat_mul(b, a, zero))
}

fn restrict(m: &Matrix, idx: &[usize]) -> Matrix {
    idx.iter()
        .map(|&r| idx.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

/// Outcome of [`verify_tilde_relations_rank1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub ok: bool,
    /// Failed relations, each naming a witness basis vector.
    pub failures: Vec<String>,
    /// Eigenvalues of `H~` on the sector vectors `v_0, v_M, ...`.
    pub h_tilde_eigenvalues: Vec<i64>,
    pub sector_dim: usize,
}

/// Check the relations of the quasi-classical `sl2`, exactly, on the quotient
/// spanned by the sector vectors:
///
/// * the non-sector vectors span a submodule and `X^{+-}` map sector vectors into it;
/// * `H~ = [X~^+, X~^-]` is diagonal with eigenvalues `z, z-2, ..., -z`;
/// * `[H~, X~^{+-}] = +-2 X~^{+-}` and `X~^{+-} K~ = s_11 K~ X~^{+-}`;
/// * `X~^-` connects the whole sector (the classical module has dimension `z+1`).
///
/// The full module is also checked against `[X^+, X^-] = [H]_q` and
/// `X^{-(a)} X^{-(b)} = [a+b choose a] X^{-(a+b)}` (and likewise for `X^+`).
pub fn verify_tilde_relations_rank1(
    module: &DividedPowerModule,
    spec: &RootOfUnitySpec,
) -> RelationReport {
    let zero = module.zero();
    let qn = &module.qn();
    let mut fails: Vec<String> = Vec::new();
    let n = module.dim();
    let sector = module.sector();
    let in_sector = |k: usize| k % module.big_m as usize == 0;
    let first_diff = |a: &Matrix, b: &Matrix| -> Option<usize> {
        (0..a.len()).find(|&c| (0..a.len()).any(|r| a[r][c] != b[r][c]))
    };

    // Chevalley relation on the full module
    let ef = commutator(&module.x_plus, &module.x_minus, &zero);
    let h_q = diag(
        module
            .weights
            .iter()
            .map(|&w| qn.qint(w, module.d).expect("admissible"))
            .collect(),
        &zero,
    );
    if let Some(c) = first_diff(&ef, &h_q) {
        fails.push(format!("[X+, X-] = [H]_q fails on v_{c}"));
    }
    // divided powers
    let m = module.big_m;
    let mut exps: Vec<i64> = vec![1, m - 1, m, m + 1];
    exps.retain(|&e| e >= 1 && e <= n as i64);
    exps.dedup();
    for &a in &exps {
        for &b in &exps {
            if a + b >= n as i64 {
                continue;
            }
            let c = qn.qbinomial(a + b, a, module.d).expect("admissible");
            for (name, f) in [
                (
                    "X-",
                    &DividedPowerModule::divided_minus
                        as &dyn Fn(&DividedPowerModule, i64) -> Matrix,
                ),
                ("X+", &DividedPowerModule::divided_plus),
            ] {
                let lhs = mat_mul(&f(module, a), &f(module, b), &zero);
                let rhs = scale(&f(module, a + b), &c);
                if let Some(k) = first_diff(&lhs, &rhs) {
                    fails.push(format!(
                        "{name}^({a}) {name}^({b}) = [{} choose {a}] {name}^({}) fails on v_{k}",
                        a + b,
                        a + b
                    ));
                }
            }
        }
    }
    // submodule and annihilation
    for (name, op) in [
        ("X+", &module.x_plus),
        ("X-", &module.x_minus),
        ("X+(M)", &module.x_plus_m),
        ("X-(M)", &module.x_minus_m),
    ] {
        for c in 0..n {
            for &r in &sector {
                if op[r][c].is_zero() {
                    continue;
                }
                if !in_sector(c) {
                    fails.push(format!(
                        "{name} maps the non-sector vector v_{c} onto v_{r}"
                    ));
                } else if name.len() == 2 {
                    fails.push(format!(
                        "{name} does not annihilate the sector vector v_{c}"
                    ));
                }
            }
        }
    }
    let tp = restrict(&module.tilde_plus, &sector);
    let tm = restrict(&module.tilde_minus, &sector);
    let kt = restrict(&module.k_tilde, &sector);
    let ht = commutator(&tp, &tm, &zero);
    let mut eig = Vec::new();
    for j in 0..sector.len() {
        for l in 0..sector.len() {
            if l != j && !ht[j][l].is_zero() {
                fails.push(format!("H~ is not diagonal at v_{}", sector[l]));
            }
        }
        let expect = module.z - 2 * j as i64;
        match ht[j][j].as_rational() {
            Some((num, den)) if den == ibig::IBig::from(1) => {
                let v = i64::try_from(&num).unwrap_or(i64::MAX);
                eig.push(v);
                if v != expect {
                    fails.push(format!("H~ v_{} = {v} v, expected {expect}", sector[j]));
                }
            }
            _ => fails.push(format!(
                "H~ eigenvalue on v_{} is not an integer",
                sector[j]
            )),
        }
    }
    for (name, t, sgn) in [("X~+", &tp, 2i64), ("X~-", &tm, -2)] {
        let lhs = commutator(&ht, t, &zero);
        let rhs = scale(t, &qn.int(sgn));
        if let Some(c) = first_diff(&lhs, &rhs) {
            fails.push(format!(
                "[H~, {name}] = {sgn} {name} fails on v_{}",
                sector[c]
            ));
        }
        let s11 = qn.q_power(module.big_m * module.big_m * 2 * spec.d[0]);
        let lhs = mat_mul(t, &kt, &zero);
        let rhs = scale(&mat_mul(&kt, t, &zero), &s11);
        if let Some(c) = first_diff(&lhs, &rhs) {
            fails.push(format!(
                "{name} K~ = s_11 K~ {name} fails on v_{}",
                sector[c]
            ));
        }
    }
    for j in 0..sector.len().saturating_sub(1) {
        if tm[j + 1][j].is_zero() {
            fails.push(format!("X~- annihilates v_{}", sector[j]));
        }
    }
    RelationReport {
        ok: fails.is_empty(),
        failures: fails,
        h_tilde_eigenvalues: eig,
        sector_dim: sector.len(),
    }
}
