//! Root-of-unity data attached to a root system: the orders `M`, `M_i`,
//! `M_alpha`, the dual Cartan matrix, special points, singlet weights and the
//! alcove criterion for Hermitian real forms.
//!
//! With `q = e^{2 pi i n/m}`, `M` is the smallest positive integer with
//! `q^{2M} = 1` and `M_alpha = m / gcd(m, 2 d_alpha)` is the order of
//! `q^{2 d_alpha}`. The dual Cartan matrix is `A~_ij = A_ij M_j / M_i`, which is
//! the Cartan matrix of the lattice of special points `sum z_i M_i Lambda_i`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::qfield::{QNumbers, QRoot};
use crate::rootdata::{
    classify_cartan, coxeter_labels, pairing_unchecked, CartanType, RootSystem, Series, Weight,
};
use crate::{Error, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `q^M = -1`.
    Even,
    /// `q^M = 1`.
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `M_alpha` for one positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOrder {
    pub root: Vec<i64>,
    pub d: i64,
    pub m_alpha: i64,
}

/// Type of the dual algebra. `roles_swapped` marks F4/G2 when the dual lattice
/// exchanges long and short roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualType {
    pub components: Vec<CartanType>,
    pub roles_swapped: bool,
}

impl DualType {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|t| format!("{t}")).collect();
        parts.join("x")
    }
}

impl fmt::Display for DualType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())?;
        if self.roles_swapped {
            f.write_str(" (long/short exchanged)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOfUnitySpec {
    pub q: QRoot,
    pub big_m: i64,
    pub parity: Parity,
    /// `M_i` per simple root.
    pub m_simple: Vec<i64>,
    /// `M_alpha` per positive root, in the root system's order.
    pub m_per_root: Vec<RootOrder>,
    pub d: Vec<i64>,
    pub dual_cartan: Vec<Vec<i64>>,
    pub dual_type: DualType,
}

impl RootOfUnitySpec {
    pub fn rank(&self) -> usize {
        self.m_simple.len()
    }

    /// `q_i^{M_i} in {+1, -1}`.
    pub fn simple_sign(&self, i: usize) -> i8 {
        // q^{d M_i} = e^{2 pi i n d M_i / m} squares to 1
        if (self.q.n() * self.d[i] * self.m_simple[i]) % self.q.m() == 0 {
            1
        } else {
            -1
        }
    }
}

/// Sign vector `s` of the star structure `(X_i^+)^* = s_i X_i^-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealForm {
    pub s: Vec<i8>,
}

impl RealForm {
    pub fn compact(rank: usize) -> Self {
        Self { s: vec![1; rank] }
    }

    pub fn new(s: Vec<i8>) -> Result<Self> {
        if s.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidArgument(format!(
                "signs must be +1 or -1, got {s:?}"
            )));
        }
        Ok(Self { s })
    }

    /// The form with `s_{i0} = -1` and all other signs `+1`.
    pub fn hermitian(rank: usize, i0: usize) -> Self {
        let mut s = vec![1; rank];
        s[i0] = -1;
        Self { s }
    }

    pub fn is_compact(&self) -> bool {
        self.s.iter().all(|&x| x == 1)
    }

    pub fn rank(&self) -> usize {
        self.s.len()
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .s
            .iter()
            .map(|&x| if x > 0 { "+" } else { "-" })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl core::str::FromStr for RealForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| match t.trim() {
                "+" | "+1" | "1" => Ok(1),
                "-" | "-1" => Ok(-1),
                other => Err(Error::InvalidArgument(format!("bad sign '{other}'"))),
            })
            .collect::<Result<Vec<i8>>>()
            .and_then(RealForm::new)
    }
}

fn order_of(q: QRoot, d: i64) -> i64 {
    q.order_sq(d)
}

/// Root-of-unity data for `rs` at `q`.
///
/// Fails if some `q_i^2 = 1`, where the q-integers `[k]_{q_i}` are undefined.
pub fn compute_spec(rs: &RootSystem, q: QRoot) -> Result<RootOfUnitySpec> {
    let n = rs.rank();
    let d = rs.d().to_vec();
    let m_simple: Vec<i64> = d.iter().map(|&di| order_of(q, di)).collect();
    for (i, &mi) in m_simple.iter().enumerate() {
        if mi < 2 {
            return Err(Error::Inadmissible {
                node: i + 1,
                d: d[i],
            });
        }
    }
    let m_per_root = rs
        .positive_roots()
        .iter()
        .zip(rs.root_d())
        .map(|(r, &da)| RootOrder {
            root: r.clone(),
            d: da,
            m_alpha: order_of(q, da),
        })
        .collect();
    let a = rs.cartan();
    let mut dual = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let num = a[i][j] * m_simple[j];
            if num % m_simple[i] != 0 {
                return Err(Error::Consistency(format!(
                    "dual Cartan entry ({i},{j}) = {}/{} is not integral",
                    num, m_simple[i]
                )));
            }
            dual[i][j] = num / m_simple[i];
        }
    }
    let dual_type = classify_dual(rs, &dual)?;
    Ok(RootOfUnitySpec {
        q,
        big_m: q.big_m(),
        parity: if q.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        },
        m_simple,
        m_per_root,
        d,
        dual_cartan: dual,
        dual_type,
    })
}

fn classify_dual(rs: &RootSystem, dual: &[Vec<i64>]) -> Result<DualType> {
    let comps: Vec<CartanType> = classify_cartan(dual)?.into_iter().map(|(t, _)| t).collect();
    let changed = dual != rs.cartan();
    let roles_swapped = changed
        && comps.len() == 1
        && matches!(comps[0].series, Series::F | Series::G)
        && rs.cartan_type() == Some(comps[0]);
    Ok(DualType {
        components: comps,
        roles_swapped,
    })
}

/// The dual Cartan matrix and the type of the dual algebra.
pub fn dual_algebra(spec: &RootOfUnitySpec) -> (Vec<Vec<i64>>, DualType) {
    (spec.dual_cartan.clone(), spec.dual_type.clone())
}

/// `lambda = sum z_i M_i Lambda_i` with integers `z_i`.
pub fn is_special_point(lambda: &Weight, spec: &RootOfUnitySpec) -> bool {
    lambda
        .coords
        .iter()
        .zip(&spec.m_simple)
        .all(|(c, &mi)| (c / Rat::from_integer(mi)).is_integer())
}

/// `z` with `lambda = sum z_i M_i Lambda_i`, if `lambda` is a special point.
pub fn special_point_coords(lambda: &Weight, spec: &RootOfUnitySpec) -> Option<Vec<i64>> {
    lambda
        .coords
        .iter()
        .zip(&spec.m_simple)
        .map(|(c, &mi)| {
            let z = c / Rat::from_integer(mi);
            z.is_integer().then(|| z.to_integer())
        })
        .collect()
}

/// `(lambda, alpha^vee) in M_alpha Z` for every positive root.
pub fn hyperplane_check(lambda: &Weight, rs: &RootSystem, spec: &RootOfUnitySpec) -> bool {
    spec.m_per_root.iter().all(|ro| {
        let p = pairing_unchecked(lambda, &ro.root, rs);
        (p / Rat::from_integer(ro.m_alpha)).is_integer()
    })
}

/// `floor(m / (2 n d_alpha)) + 1`.
pub fn compact_bound(spec: &RootOfUnitySpec, d_alpha: i64) -> i64 {
    spec.q.m() / (2 * spec.q.n() * d_alpha) + 1
}

/// Sufficient condition for unitarity of the compact form:
/// `(lambda + rho, alpha^vee) <= floor(m / (2 n d_alpha)) + 1` for all `alpha > 0`.
pub fn compact_bound_check(
    lambda: &Weight,
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
) -> Result<bool> {
    if !lambda.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(format!("{lambda}")));
    }
    let lr = lambda.add(rs.rho());
    Ok(spec.m_per_root.iter().all(|ro| {
        pairing_unchecked(&lr, &ro.root, rs) <= Rat::from_integer(compact_bound(spec, ro.d))
    }))
}

/// Hypothesis of the classical-character theorem: `(lambda + rho, alpha^vee) <= M_alpha`.
pub fn classical_hypothesis(lambda: &Weight, rs: &RootSystem, spec: &RootOfUnitySpec) -> bool {
    let lr = lambda.add(rs.rho());
    lambda.is_dominant_integral()
        && spec
            .m_per_root
            .iter()
            .all(|ro| pairing_unchecked(&lr, &ro.root, rs) <= Rat::from_integer(ro.m_alpha))
}

/// Coordinate `m p / (2 n d)` of a singlet weight.
fn singlet_coord(spec: &RootOfUnitySpec, p: i64, d: i64) -> Rat {
    Rat::new(spec.q.m() * p, 2 * spec.q.n() * d)
}

/// One-dimensional module `lambda_r = sum_i (m p_i / 2 n d_i) Lambda_i` and
/// the real form `s_i = q_i^{lambda_r,i} = <K_i, lambda_r>` it induces.
///
/// Each sign is evaluated exactly in the cyclotomic field.
pub fn singlet_weights(
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
    p: &[i64],
) -> Result<(Weight, RealForm)> {
    if p.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: p.len(),
        });
    }
    let coords: Vec<Rat> = p
        .iter()
        .zip(&spec.d)
        .map(|(&pi, &di)| singlet_coord(spec, pi, di))
        .collect();
    let lambda = Weight::new(coords);
    let qn = QNumbers::with_conductor(spec.q, 2 * spec.q.m() as u64);
    let mut s = Vec::with_capacity(p.len());
    for i in 0..rs.rank() {
        let v = qn.q_power_rat(lambda.coords[i] * Rat::from_integer(spec.d[i]))?;
        if v.is_one() {
            s.push(1);
        } else if (-&v).is_one() {
            s.push(-1);
        } else {
            return Err(Error::Consistency(format!(
                "<K_{}, lambda_r> = {v} is not a sign",
                i + 1
            )));
        }
    }
    Ok((lambda, RealForm { s }))
}

/// `p` with `p_i = 2 n d_i z_i M_i / m`, the singlet exponents of a special point.
pub fn p_from_z(spec: &RootOfUnitySpec, z: &[i64]) -> Result<Vec<i64>> {
    z.iter()
        .enumerate()
        .map(|(i, &zi)| {
            let num = 2 * spec.q.n() * spec.d[i] * zi * spec.m_simple[i];
            if num % spec.q.m() != 0 {
                Err(Error::MalformedSinglet(format!("z = {z:?}")))
            } else {
                Ok(num / spec.q.m())
            }
        })
        .collect()
}

/// Recover `p` from `lambda_r`, or fail if it is not of singlet shape.
pub fn singlet_exponents(lambda_r: &Weight, spec: &RootOfUnitySpec) -> Result<Vec<i64>> {
    if lambda_r.rank() != spec.rank() {
        return Err(Error::DimensionMismatch {
            expected: spec.rank(),
            got: lambda_r.rank(),
        });
    }
    lambda_r
        .coords
        .iter()
        .zip(&spec.d)
        .map(|(c, &di)| {
            let p = c * Rat::new(2 * spec.q.n() * di, spec.q.m());
            if p.is_integer() {
                Ok(p.to_integer())
            } else {
                Err(Error::MalformedSinglet(format!("{lambda_r}")))
            }
        })
        .collect()
}

/// Outcome of the alcove criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    /// `lambda_r = 0`.
    Origin,
    /// `lambda_r` is Weyl-conjugate to `sign * (m / 2 n d_node) Lambda_node`
    /// with Coxeter label 1 at `node` (0-based).
    Node { node: usize, sign: i8 },
}

/// Whether `lambda_r` lies on a corner of an alcove adjacent to the origin:
/// after sorting into the antidominant chamber by simple reflections it must
/// equal `-(m / 2 n d_j) Lambda_j` with `a_j = 1`.
pub fn alcove_adjacency(
    lambda_r: &Weight,
    rs: &RootSystem,
    spec: &RootOfUnitySpec,
) -> Result<Option<Adjacency>> {
    singlet_exponents(lambda_r, spec)?;
    if lambda_r.is_zero() {
        return Ok(Some(Adjacency::Origin));
    }
    let (mut v, sign) = if lambda_r.is_dominant() {
        (lambda_r.neg(), 1)
    } else {
        (lambda_r.clone(), -1)
    };
    while let Some(j) = (0..rs.rank()).find(|&j| v.coords[j].is_positive()) {
        v = rs.reflect(&v, j);
    }
    let p = singlet_exponents(&v.neg(), spec)?;
    let labels = coxeter_labels(rs);
    let ones: Vec<usize> = (0..p.len()).filter(|&j| p[j] != 0).collect();
    if ones.len() == 1 && p[ones[0]] == 1 && labels[ones[0]] == 1 {
        Ok(Some(Adjacency::Node {
            node: ones[0],
            sign,
        }))
    } else {
        Ok(None)
    }
}

/// Nodes with Coxeter label 1 and the noncompact real form they select
/// (0-based node indices).
pub fn hermitian_nodes(rs: &RootSystem) -> Vec<(usize, String)> {
    let labels = coxeter_labels(rs);
    let Some(t) = rs.cartan_type() else {
        return Vec::new();
    };
    let l = t.rank;
    (0..l)
        .filter(|&i| labels[i] == 1)
        .filter_map(|i| {
            let node = i + 1;
            let name = match t.series {
                Series::A => format!("su({},{})", l + 1 - node, node),
                Series::B if node == 1 => format!("so({},2)", 2 * l - 1),
                Series::C if node == l => format!("sp({l},R)"),
                Series::D if node == 1 => format!("so({},2)", 2 * l - 2),
                Series::D if node >= l - 1 => format!("so*({})", 2 * l),
                Series::E if l == 6 => String::from("e6(-14)"),
                Series::E if l == 7 => String::from("e7(-25)"),
                _ => return None,
            };
            Some((i, name))
        })
        .collect()
}

/// Whether `lambda` is dominant integral on every node except `skip`.
pub fn dominant_integral_except(lambda: &Weight, skip: usize) -> bool {
    lambda
        .coords
        .iter()
        .enumerate()
        .all(|(j, c)| j == skip || (c.is_integer() && !c.is_negative()))
}
