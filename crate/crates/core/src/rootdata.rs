//! Root systems of the finite series A–G and classical characters.
//!
//! Conventions:
//!
//! * `cartan[i][j] = <alpha_i^vee, alpha_j> = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)`,
//!   so `d_i A_ij = d_j A_ji` with `d_i = (alpha_i, alpha_i)/2` coprime.
//! * Nodes follow Bourbaki numbering (0-based in code): `B_l` has `alpha_l`
//!   short, `C_l` has `alpha_l` long, `D_l` branches at `alpha_{l-2}`,
//!   `E_n` has `alpha_2` attached to `alpha_4`, `F_4` has `alpha_1, alpha_2`
//!   long and `G_2` has `alpha_1` short.
//! * Roots are integer vectors in the simple-root basis; weights are rational
//!   vectors in the fundamental-weight basis.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use ibig::IBig;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A simple type such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(Error::InvalidRootSystem {
                series: series.letter(),
                rank,
                reason: match series {
                    Series::A => "A_l needs l >= 1",
                    Series::B => "B_l needs l >= 2",
                    Series::C => "C_l needs l >= 2",
                    Series::D => "D_l needs l >= 4",
                    Series::E => "only E6, E7, E8 exist",
                    Series::F => "only F4 exists",
                    Series::G => "only G2 exists",
                },
            })
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty algebra label".into()))?;
        let series = Series::from_letter(letter)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown series in '{s}'")))?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rank in '{s}'")))?;
        CartanType::new(series, rank)
    }
}

/// A weight in the fundamental-weight basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Vec<Rat>,
}

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self {
            coords: v.iter().map(|x| Rat::from_integer(*x)).collect(),
        }
    }

    /// `c * Lambda_i`.
    pub fn fundamental(rank: usize, i: usize, c: Rat) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = c;
        w
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.is_integral() && self.is_dominant()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Integer coordinates, if integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| *c.numer()))
            .collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Rat) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        self.scale(-Rat::one())
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cartan data, positive roots and the weight metric of a finite root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<CartanType>,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    /// `d_alpha = (alpha, alpha)/2` per positive root.
    root_d: Vec<i64>,
    rho: Weight,
    highest_root: Vec<i64>,
    fundamental_weights: Vec<Weight>,
    inv_cartan: Vec<Vec<Rat>>,
    /// `(Lambda_i, Lambda_j)`.
    weight_metric: Vec<Vec<Rat>>,
}

fn standard_cartan(t: CartanType) -> Vec<Vec<i64>> {
    let l = t.rank;
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.series {
        Series::A => {
            for i in 0..l.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            // alpha_l short
            link(l - 2, l - 1, -1, -2);
        }
        Series::C => {
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            // alpha_l long
            link(l - 2, l - 1, -2, -1);
        }
        Series::D => {
            for i in 0..l - 2 {
                link(i, i + 1, -1, -1);
            }
            link(l - 3, l - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..l - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => {
            // alpha_1 short, alpha_2 long
            link(0, 1, -3, -1);
        }
    }
    a
}

/// Construct the root system of a simple type in Bourbaki numbering.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let t = CartanType::new(series, rank)?;
    RootSystem::from_cartan_matrix(&standard_cartan(t))
}

fn invert(a: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|x| Rat::from_integer(*x)).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..2 * n {
                    let v = m[col][c];
                    m[r][c] -= f * v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn check_cartan_axioms(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidCartan(
            "matrix must be square and non-empty".into(),
        ));
    }
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::InvalidCartan(format!(
                "A[{i}][{i}] = {} != 2",
                a[i][i]
            )));
        }
        for j in 0..n {
            if i != j {
                if a[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "A[{i}][{j}] = {} > 0",
                        a[i][j]
                    )));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "A[{i}][{j}] and A[{j}][{i}] differ in vanishing"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Coprime symmetrizing integers `d_i` with `d_i A_ij = d_j A_ji`, per component.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Rat::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && a[i][j] != 0 {
                    // d_j = d_i A_ij / A_ji
                    let dj = d[i].unwrap() * Rat::new(a[i][j], a[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            comp.push(j);
                            queue.push_back(j);
                        }
                        Some(old) if old != dj => {
                            return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let l = comp
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let g = comp.iter().fold(0i64, |acc, &i| {
            acc.gcd(&(d[i].unwrap() * Rat::from_integer(l)).to_integer())
        });
        for &i in &comp {
            d[i] = Some(d[i].unwrap() * Rat::new(l, g));
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer()).collect())
}

impl RootSystem {
    /// Build from a Cartan matrix (Kac convention); the matrix must be of
    /// finite type, possibly decomposable.
    pub fn from_cartan_matrix(a: &[Vec<i64>]) -> Result<Self> {
        check_cartan_axioms(a)?;
        let comps = classify_cartan(a)?;
        let n = a.len();
        // reflection closure of the simple roots
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            roots.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                // s_i beta = beta - <beta, alpha_i^vee> alpha_i
                let pair: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                let mut s = beta.clone();
                s[i] -= pair;
                if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && !roots.contains(&s) {
                    if roots.len() > 10_000 {
                        return Err(Error::InvalidCartan(
                            "root closure does not terminate".into(),
                        ));
                    }
                    roots.insert(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let roots: Vec<Vec<i64>> = roots.into_iter().collect();
        Self::assemble(a, comps.into_iter().map(|(t, _)| t).collect(), roots)
    }

    /// Build from a Cartan matrix together with an explicit list of positive
    /// roots (simple-root coordinates). The list is validated against the
    /// reflection closure.
    pub fn from_root_data(a: &[Vec<i64>], positive_roots: &[Vec<i64>]) -> Result<Self> {
        let rs = Self::from_cartan_matrix(a)?;
        let given: BTreeSet<Vec<i64>> = positive_roots.iter().cloned().collect();
        let expect: BTreeSet<Vec<i64>> = rs.positive_roots.iter().cloned().collect();
        if given != expect {
            return Err(Error::InvalidCartan(
                "positive roots do not match the Cartan matrix".into(),
            ));
        }
        Ok(rs)
    }

    fn assemble(
        a: &[Vec<i64>],
        components: Vec<CartanType>,
        mut roots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = a.len();
        let d = symmetrizer(a)?;
        roots.sort_by(|x, y| {
            let hx: i64 = x.iter().sum();
            let hy: i64 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });
        let root_d = roots
            .iter()
            .map(|c| {
                let mut s = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        s += c[i] * c[j] * d[i] * a[i][j];
                    }
                }
                s / 2
            })
            .collect();
        let inv = invert(a).ok_or_else(|| Error::InvalidCartan("singular Cartan matrix".into()))?;
        let weight_metric = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| inv[k][i] * Rat::from_integer(d[k]))
                    .collect()
            })
            .collect();
        let highest_root = if components.len() == 1 {
            roots.last().cloned().unwrap()
        } else {
            // per-component highest roots are not a single root; keep the
            // sum of components' highest roots for labelling purposes
            let mut h = vec![0i64; n];
            for r in &roots {
                for i in 0..n {
                    h[i] = h[i].max(r[i]);
                }
            }
            h
        };
        let rho = Weight::from_ints(&vec![1; n]);
        let fundamental_weights = (0..n)
            .map(|i| Weight::fundamental(n, i, Rat::one()))
            .collect();
        Ok(Self {
            components,
            rank: n,
            cartan: a.to_vec(),
            d,
            positive_roots: roots,
            root_d,
            rho,
            highest_root,
            fundamental_weights,
            inv_cartan: inv,
            weight_metric,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Simple components in order of their lowest node.
    pub fn components(&self) -> &[CartanType] {
        &self.components
    }

    /// The type, for a simple system.
    pub fn cartan_type(&self) -> Option<CartanType> {
        (self.components.len() == 1).then(|| self.components[0])
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|t| format!("{t}")).collect();
        parts.join("x")
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `d_alpha` for the positive root at the same index.
    pub fn root_d(&self) -> &[i64] {
        &self.root_d
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn inverse_cartan(&self) -> &[Vec<Rat>] {
        &self.inv_cartan
    }

    /// `(alpha_i, alpha_j) = d_i A_ij`.
    pub fn simple_inner(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.cartan[i][j]
    }

    /// `(alpha, beta)` for roots in simple-root coordinates.
    pub fn root_inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += x[i] * y[j] * self.simple_inner(i, j);
            }
        }
        s
    }

    /// `d_alpha = (alpha, alpha)/2`.
    pub fn d_of(&self, alpha: &[i64]) -> i64 {
        self.root_inner(alpha, alpha) / 2
    }

    /// Fundamental-weight coordinates of a root-lattice vector.
    pub fn root_to_weight(&self, c: &[i64]) -> Weight {
        Weight::from_ints(
            &(0..self.rank)
                .map(|k| (0..self.rank).map(|j| self.cartan[k][j] * c[j]).sum())
                .collect::<Vec<_>>(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|k| self.inv_cartan[i][k] * w.coords[k])
                    .sum()
            })
            .collect()
    }

    /// `(lambda, mu)` for weights.
    pub fn weight_inner(&self, x: &Weight, y: &Weight) -> Rat {
        let mut s = Rat::zero();
        for i in 0..self.rank {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                s += x.coords[i] * y.coords[j] * self.weight_metric[i][j];
            }
        }
        s
    }

    /// `(lambda, alpha)` with `alpha` in simple-root coordinates.
    pub fn weight_root_inner(&self, w: &Weight, alpha: &[i64]) -> Rat {
        (0..self.rank)
            .map(|j| w.coords[j] * Rat::from_integer(alpha[j] * self.d[j]))
            .sum()
    }

    /// `lambda - sum eta_i alpha_i`.
    pub fn lower(&self, lambda: &Weight, eta: &[i64]) -> Weight {
        lambda.sub(&self.root_to_weight(eta))
    }

    /// `s_i(w) = w - <w, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.coords[i];
        Weight {
            coords: (0..self.rank)
                .map(|k| w.coords[k] - c * Rat::from_integer(self.cartan[k][i]))
                .collect(),
        }
    }

    /// The dominant Weyl conjugate, by repeated simple reflections.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(i) = (0..self.rank).find(|&i| v.coords[i].is_negative()) {
            v = self.reflect(&v, i);
        }
        v
    }

    pub fn is_root(&self, alpha: &[i64]) -> bool {
        let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
        self.positive_roots
            .iter()
            .any(|r| r[..] == *alpha || r[..] == neg[..])
    }
}

/// `(lambda, alpha^vee) = 2 (lambda, alpha) / (alpha, alpha)`.
pub fn pairing(lambda: &Weight, alpha: &[i64], rs: &RootSystem) -> Result<Rat> {
    if alpha.len() != rs.rank || !rs.is_root(alpha) {
        return Err(Error::InvalidArgument(format!("{alpha:?} is not a root")));
    }
    Ok(pairing_unchecked(lambda, alpha, rs))
}

pub(crate) fn pairing_unchecked(lambda: &Weight, alpha: &[i64], rs: &RootSystem) -> Rat {
    rs.weight_root_inner(lambda, alpha) / Rat::from_integer(rs.d_of(alpha))
}

fn require_dominant_integral(lambda: &Weight, rs: &RootSystem) -> Result<()> {
    if lambda.rank() != rs.rank {
        return Err(Error::DimensionMismatch {
            expected: rs.rank,
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(format!("{lambda}")));
    }
    Ok(())
}

/// Weyl's dimension formula `prod (lambda+rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(lambda: &Weight, rs: &RootSystem) -> Result<u128> {
    require_dominant_integral(lambda, rs)?;
    let lr = lambda.add(&rs.rho);
    let mut num = IBig::from(1u8);
    let mut den = IBig::from(1u8);
    for alpha in &rs.positive_roots {
        // both inner products carry the same denominator-free scale
        let a = rs.weight_root_inner(&lr, alpha);
        let b = rs.weight_root_inner(&rs.rho, alpha);
        num *= IBig::from(*a.numer()) * IBig::from(*b.denom());
        den *= IBig::from(*b.numer()) * IBig::from(*a.denom());
    }
    let q = &num / &den;
    debug_assert_eq!(&q * &den, num);
    u128::try_from(q).map_err(|_| Error::InvalidArgument("dimension overflows u128".into()))
}

fn height(eta: &[i64]) -> i64 {
    eta.iter().sum()
}

/// Whether `lambda - mu` is a non-negative integer combination of simple roots.
fn in_cone(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Option<Vec<i64>> {
    let c = rs.weight_to_root_coords(&lambda.sub(mu));
    c.iter()
        .map(|x| (x.is_integer() && !x.is_negative()).then(|| x.to_integer()))
        .collect()
}

/// Classical weight multiplicities of the irreducible module `L(lambda)`,
/// restricted to weights `mu` with `ht(lambda - mu) <= height_cap`.
///
/// Freudenthal's recursion is applied to dominant weights; the others are
/// read off their dominant conjugates, which always lie strictly higher.
pub fn freudenthal_character(
    lambda: &Weight,
    rs: &RootSystem,
    height_cap: usize,
) -> Result<BTreeMap<Weight, u64>> {
    let by_eta = freudenthal_by_depth(lambda, rs, height_cap)?;
    Ok(by_eta
        .into_iter()
        .map(|(eta, m)| (rs.lower(lambda, &eta), m))
        .collect())
}

/// As [`freudenthal_character`], keyed by `eta` with `mu = lambda - sum eta_i alpha_i`.
pub fn freudenthal_by_depth(
    lambda: &Weight,
    rs: &RootSystem,
    height_cap: usize,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    require_dominant_integral(lambda, rs)?;
    let n = rs.rank;
    let lr = lambda.add(&rs.rho);
    let norm_lr = rs.weight_inner(&lr, &lr);
    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);
    let mut level: Vec<Vec<i64>> = vec![vec![0; n]];
    let mut h = 0usize;
    while !level.is_empty() && h < height_cap {
        h += 1;
        let mut cands: BTreeSet<Vec<i64>> = BTreeSet::new();
        for eta in &level {
            for i in 0..n {
                let mut e = eta.clone();
                e[i] += 1;
                cands.insert(e);
            }
        }
        let mut next = Vec::new();
        for eta in cands {
            let mu = rs.lower(lambda, &eta);
            let m = if mu.is_dominant() {
                let mur = mu.add(&rs.rho);
                let denom = norm_lr - rs.weight_inner(&mur, &mur);
                if !denom.is_positive() {
                    0
                } else {
                    let mut acc = Rat::zero();
                    for alpha in &rs.positive_roots {
                        let mut k = 1i64;
                        loop {
                            let up: Vec<i64> = (0..n).map(|j| eta[j] - k * alpha[j]).collect();
                            if up.iter().any(|&c| c < 0) {
                                break;
                            }
                            if let Some(&mm) = mult.get(&up) {
                                let w = rs.lower(lambda, &up);
                                acc +=
                                    Rat::from_integer(mm as i64) * rs.weight_root_inner(&w, alpha);
                            }
                            k += 1;
                        }
                    }
                    let v = Rat::from_integer(2) * acc / denom;
                    debug_assert!(v.is_integer() && !v.is_negative(), "Freudenthal gave {v}");
                    v.to_integer() as u64
                }
            } else {
                let dom = rs.dominant_conjugate(&mu);
                match in_cone(rs, lambda, &dom) {
                    Some(up) if height(&up) < height(&eta) => mult.get(&up).copied().unwrap_or(0),
                    _ => 0,
                }
            };
            if m > 0 {
                mult.insert(eta.clone(), m);
                next.push(eta);
            }
        }
        level = next;
    }
    Ok(mult)
}

/// Coefficients `a_j` of the highest root `theta = sum a_j alpha_j`.
pub fn coxeter_labels(rs: &RootSystem) -> Vec<i64> {
    rs.highest_root.clone()
}

/// Two-coloring of the Dynkin diagram: adjacent nodes get different colors and
/// the lowest node of each component gets color 0.
pub fn dynkin_bipartition(rs: &RootSystem) -> Vec<u8> {
    bipartition_of(&rs.cartan)
}

pub(crate) fn bipartition_of(a: &[Vec<i64>]) -> Vec<u8> {
    let n = a.len();
    let mut color: Vec<Option<u8>> = vec![None; n];
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i != j && a[i][j] != 0 && color[j].is_none() {
                    color[j] = Some(1 - color[i].unwrap());
                    queue.push_back(j);
                }
            }
        }
    }
    color.into_iter().map(|c| c.unwrap()).collect()
}

/// Identify the simple components of a finite-type Cartan matrix.
///
/// Returns each component's type together with its nodes (ascending).
pub fn classify_cartan(a: &[Vec<i64>]) -> Result<Vec<(CartanType, Vec<usize>)>> {
    check_cartan_axioms(a)?;
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if i != j && a[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push((classify_connected(a, &comp)?, comp));
    }
    Ok(out)
}

fn classify_connected(a: &[Vec<i64>], nodes: &[usize]) -> Result<CartanType> {
    let n = nodes.len();
    let bad = |why: &str| Err(Error::InvalidCartan(format!("not of finite type: {why}")));
    if n == 1 {
        return CartanType::new(Series::A, 1);
    }
    let neighbours = |i: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&j| j != i && a[i][j] != 0)
            .collect()
    };
    let mut edges = 0;
    let mut doubles = Vec::new();
    let mut triples = 0;
    for (x, &i) in nodes.iter().enumerate() {
        for &j in &nodes[x + 1..] {
            if a[i][j] == 0 {
                continue;
            }
            edges += 1;
            match a[i][j] * a[j][i] {
                1 => {}
                2 => doubles.push((i, j)),
                3 => triples += 1,
                _ => return bad("bond multiplicity above 3"),
            }
        }
    }
    if edges != n - 1 {
        return bad("Dynkin diagram is not a tree");
    }
    let degrees: Vec<usize> = nodes.iter().map(|&i| neighbours(i).len()).collect();
    let max_deg = *degrees.iter().max().unwrap();
    if triples > 0 {
        return if n == 2 {
            CartanType::new(Series::G, 2)
        } else {
            bad("triple bond outside G2")
        };
    }
    if doubles.len() > 1 {
        return bad("more than one double bond");
    }
    if let Some(&(i, j)) = doubles.first() {
        if max_deg > 2 {
            return bad("branched diagram with a double bond");
        }
        if n == 2 {
            // B2: second node short, i.e. A_21 = -2
            return CartanType::new(if a[j][i] == -2 { Series::B } else { Series::C }, 2);
        }
        let is_end = |v: usize| neighbours(v).len() == 1;
        let (end, other) = if is_end(i) {
            (i, j)
        } else if is_end(j) {
            (j, i)
        } else {
            return if n == 4 {
                CartanType::new(Series::F, 4)
            } else {
                bad("double bond in the middle")
            };
        };
        // A_{end,other} = -2 means the end node is short
        return CartanType::new(
            if a[end][other] == -2 {
                Series::B
            } else {
                Series::C
            },
            n,
        );
    }
    if max_deg <= 2 {
        return CartanType::new(Series::A, n);
    }
    let branch: Vec<usize> = nodes
        .iter()
        .copied()
        .filter(|&i| neighbours(i).len() == 3)
        .collect();
    if branch.len() != 1 || max_deg > 3 {
        return bad("more than one branch point");
    }
    let b = branch[0];
    let mut arms: Vec<usize> = neighbours(b)
        .into_iter()
        .map(|start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            loop {
                let next: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                if next.is_empty() {
                    break len;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
        })
        .collect();
    arms.sort_unstable();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => CartanType::new(Series::D, n),
        (1, 2, 2) => CartanType::new(Series::E, 6),
        (1, 2, 3) => CartanType::new(Series::E, 7),
        (1, 2, 4) => CartanType::new(Series::E, 8),
        _ => bad("branch arms of infinite type"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        let t: CartanType = s.parse().unwrap();
        build_root_system(t.series, t.rank).unwrap()
    }

    fn all_types() -> Vec<RootSystem> {
        [
            "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5", "D4",
            "D5", "D6", "E6", "E7", "E8", "F4", "G2",
        ]
        .iter()
        .map(|s| rs(s))
        .collect()
    }

    #[test]
    fn rejects_invalid_pairs() {
        for (s, r) in [
            (Series::A, 0),
            (Series::B, 1),
            (Series::C, 1),
            (Series::D, 3),
            (Series::E, 5),
            (Series::E, 9),
            (Series::F, 3),
            (Series::G, 3),
        ] {
            assert!(build_root_system(s, r).is_err(), "{s:?}{r}");
        }
        assert!("X2".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
    }

    #[test]
    fn root_counts() {
        let expect = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (s, n) in expect {
            assert_eq!(rs(s).positive_roots().len(), n, "{s}");
        }
    }

    #[test]
    fn structural_invariants() {
        for r in all_types() {
            let n = r.rank();
            for i in 0..n {
                assert_eq!(r.cartan()[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(r.cartan()[i][j] <= 0);
                    }
                    assert_eq!(r.d()[i] * r.cartan()[i][j], r.d()[j] * r.cartan()[j][i]);
                }
            }
            for alpha in r.positive_roots() {
                assert!(pairing(r.rho(), alpha, &r).unwrap() >= Rat::one());
            }
            let labels = coxeter_labels(&r);
            assert!(labels.iter().all(|&a| a >= 1));
            // theta is the unique root of maximal height
            let hmax = r.positive_roots().iter().map(|x| height(x)).max().unwrap();
            assert_eq!(
                r.positive_roots()
                    .iter()
                    .filter(|x| height(x) == hmax)
                    .count(),
                1
            );
            assert_eq!(
                classify_cartan(r.cartan()).unwrap()[0].0,
                r.cartan_type().unwrap()
            );
        }
    }

    #[test]
    fn d_values() {
        assert_eq!(rs("A1").d(), &[1]);
        assert_eq!(rs("B2").d(), &[2, 1]);
        assert_eq!(rs("C3").d(), &[1, 1, 2]);
        assert_eq!(rs("F4").d(), &[2, 2, 1, 1]);
        assert_eq!(rs("G2").d(), &[1, 3]);
    }

    #[test]
    fn coxeter_label_table() {
        assert_eq!(coxeter_labels(&rs("A3")), vec![1, 1, 1]);
        assert_eq!(coxeter_labels(&rs("B3")), vec![1, 2, 2]);
        assert_eq!(coxeter_labels(&rs("C3")), vec![2, 2, 1]);
        assert_eq!(coxeter_labels(&rs("D5")), vec![1, 2, 2, 1, 1]);
        assert_eq!(coxeter_labels(&rs("E6")), vec![1, 2, 2, 3, 2, 1]);
        assert_eq!(coxeter_labels(&rs("E7")), vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(coxeter_labels(&rs("E8")), vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(coxeter_labels(&rs("F4")), vec![2, 3, 4, 2]);
        assert_eq!(coxeter_labels(&rs("G2")), vec![3, 2]);
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs("A1");
        assert_eq!(
            pairing(&Weight::from_ints(&[1]), &[1], &a1).unwrap(),
            Rat::one()
        );
        assert_eq!(pairing(&Weight::zero(1), &[1], &a1).unwrap(), Rat::zero());
        let a2 = rs("A2");
        assert_eq!(
            pairing(a2.rho(), &[1, 1], &a2).unwrap(),
            Rat::from_integer(2)
        );
        assert!(pairing(a2.rho(), &[2, 1], &a2).is_err());
        // G2: theta = 3 alpha_1 + 2 alpha_2 is long, (rho, theta^vee) = h^vee - 1 = 3
        let g2 = rs("G2");
        assert_eq!(
            pairing(g2.rho(), &[3, 2], &g2).unwrap(),
            Rat::from_integer(3)
        );
    }

    #[test]
    fn dimensions() {
        let a1 = rs("A1");
        for j in 0..8 {
            assert_eq!(
                weyl_dimension(&Weight::from_ints(&[j]), &a1).unwrap(),
                (j + 1) as u128
            );
        }
        let a2 = rs("A2");
        assert_eq!(weyl_dimension(&Weight::from_ints(&[1, 0]), &a2).unwrap(), 3);
        assert_eq!(weyl_dimension(a2.rho(), &a2).unwrap(), 8);
        assert_eq!(
            weyl_dimension(&Weight::from_ints(&[0, 1]), &rs("G2")).unwrap(),
            14
        );
        assert_eq!(
            weyl_dimension(&Weight::from_ints(&[1, 0]), &rs("G2")).unwrap(),
            7
        );
        assert_eq!(
            weyl_dimension(&Weight::from_ints(&[0, 0, 0, 0, 0, 0, 0, 1]), &rs("E8")).unwrap(),
            248
        );
        assert_eq!(
            weyl_dimension(&Weight::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0]), &rs("E8")).unwrap(),
            3875
        );
        assert!(weyl_dimension(&Weight::from_ints(&[-1, 0]), &a2).is_err());
        assert!(weyl_dimension(&Weight::new(vec![Rat::new(1, 2), Rat::zero()]), &a2).is_err());
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rs("A1");
        let ch = freudenthal_character(&Weight::from_ints(&[3]), &a1, usize::MAX).unwrap();
        let keys: Vec<Weight> = ch.keys().cloned().collect();
        assert_eq!(
            keys,
            [-3, -1, 1, 3]
                .iter()
                .map(|&x| Weight::from_ints(&[x]))
                .collect::<Vec<_>>()
        );
        assert!(ch.values().all(|&m| m == 1));
        let a2 = rs("A2");
        let ch = freudenthal_character(a2.rho(), &a2, usize::MAX).unwrap();
        assert_eq!(ch[&Weight::zero(2)], 2);
        for r in all_types() {
            let ch = freudenthal_character(&Weight::zero(r.rank()), &r, usize::MAX).unwrap();
            assert_eq!(ch.len(), 1);
        }
    }

    /// Brute-force check of the A2 adjoint: V(1,0) x V(0,1) = V(1,1) + V(0,0).
    #[test]
    fn freudenthal_against_tensor_product() {
        let a2 = rs("A2");
        let v = freudenthal_character(&Weight::from_ints(&[1, 0]), &a2, usize::MAX).unwrap();
        let w = freudenthal_character(&Weight::from_ints(&[0, 1]), &a2, usize::MAX).unwrap();
        let mut prod: BTreeMap<Weight, u64> = BTreeMap::new();
        for (x, mx) in &v {
            for (y, my) in &w {
                *prod.entry(x.add(y)).or_default() += mx * my;
            }
        }
        *prod.get_mut(&Weight::zero(2)).unwrap() -= 1;
        prod.retain(|_, m| *m > 0);
        assert_eq!(
            prod,
            freudenthal_character(a2.rho(), &a2, usize::MAX).unwrap()
        );
    }

    #[test]
    fn freudenthal_mass_is_weyl_dimension() {
        for s in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] {
            let r = rs(s);
            let n = r.rank();
            let mut lam = vec![0i64; n];
            loop {
                let w = Weight::from_ints(&lam);
                let ch = freudenthal_character(&w, &r, usize::MAX).unwrap();
                let total: u64 = ch.values().sum();
                assert_eq!(total as u128, weyl_dimension(&w, &r).unwrap(), "{s} {w}");
                // Weyl-invariance of the multiset
                for (mu, m) in &ch {
                    for i in 0..n {
                        assert_eq!(ch.get(&r.reflect(mu, i)), Some(m));
                    }
                }
                let mut k = 0;
                while k < n {
                    lam[k] += 1;
                    if lam[k] <= 3 - (n as i64 - 1).min(2) {
                        break;
                    }
                    lam[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn height_cap_truncates() {
        let a2 = rs("A2");
        let ch = freudenthal_by_depth(a2.rho(), &a2, 1).unwrap();
        assert_eq!(ch.keys().map(|e| height(e)).max(), Some(1));
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(dynkin_bipartition(&rs("A1")), vec![0]);
        assert_eq!(dynkin_bipartition(&rs("A3")), vec![0, 1, 0]);
        assert_eq!(dynkin_bipartition(&rs("D4")), vec![0, 1, 0, 0]);
        for r in all_types() {
            let a = dynkin_bipartition(&r);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    if i != j && r.cartan()[i][j] != 0 {
                        assert_eq!(a[i] + a[j], 1);
                    }
                }
            }
        }
    }

    #[test]
    fn classifier() {
        let t = |a: &[Vec<i64>]| {
            classify_cartan(a)
                .unwrap()
                .into_iter()
                .map(|(t, _)| format!("{t}"))
                .collect::<Vec<_>>()
        };
        assert_eq!(t(&[vec![2, -1], vec![-2, 2]]), ["B2"]);
        assert_eq!(t(&[vec![2, -2], vec![-1, 2]]), ["C2"]);
        assert_eq!(t(&[vec![2, 0], vec![0, 2]]), ["A1", "A1"]);
        // reversed G2 is still G2
        assert_eq!(t(&[vec![2, -1], vec![-3, 2]]), ["G2"]);
        // transposed B3 is C3
        let b3 = rs("B3");
        let tr: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| b3.cartan()[j][i]).collect())
            .collect();
        assert_eq!(t(&tr), ["C3"]);
        // affine A2 is rejected
        assert!(classify_cartan(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).is_err());
        assert!(classify_cartan(&[vec![2, 1], vec![1, 2]]).is_err());
    }
}
