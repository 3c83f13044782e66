//! q-integers, q-factorials and balanced q-binomials at `q = e^{2 pi i n/m}`.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use ibig::IBig;
use num_integer::Integer;

use super::field::{Cyclotomic, CyclotomicField};
use crate::{Error, Rat, Result};

/// `q = e^{2 pi i n / m}` with `gcd(n, m) = 1` and `1 <= n < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRoot {
    n: i64,
    m: i64,
}

impl QRoot {
    pub fn new(n: i64, m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRoot {
                n,
                m,
                reason: "m must be at least 2",
            });
        }
        if n < 1 || n >= m {
            return Err(Error::InvalidRoot {
                n,
                m,
                reason: "n must satisfy 1 <= n < m",
            });
        }
        if n.gcd(&m) != 1 {
            return Err(Error::InvalidRoot {
                n,
                m,
                reason: "n and m must be coprime",
            });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Smallest `M > 0` with `q^{2M} = 1`.
    pub fn big_m(&self) -> i64 {
        self.m / self.m.gcd(&2)
    }

    /// Order of `q^{2d}`, i.e. the `M_i` of a root with `d_i = d`.
    pub fn order_sq(&self, d: i64) -> i64 {
        self.m / self.m.gcd(&(2 * d))
    }

    /// `q^M = -1` ("even" q) iff `m` is even.
    pub fn is_even(&self) -> bool {
        self.m % 2 == 0
    }

    /// Exponent `e` with `q^x = zeta_L^e`, if `x` is representable at conductor `l`.
    pub fn exponent_at(&self, x: Rat, l: i64) -> Option<i64> {
        // q^x = zeta_m^{n x} = zeta_L^{n x L / m}
        let num = (*x.numer() as i128) * (self.n as i128) * (l as i128);
        let den = (*x.denom() as i128) * (self.m as i128);
        if num % den == 0 {
            Some((num / den).rem_euclid(l as i128) as i64)
        } else {
            None
        }
    }
}

/// Evaluation context for q-numbers in a fixed cyclotomic field.
///
/// The conductor is a multiple of `m`; a larger conductor allows evaluating
/// `q^x` for rational `x`.
pub struct QNumbers {
    q: QRoot,
    field: Arc<CyclotomicField>,
    /// `1 / (q^d - q^{-d})` per `d`.
    inv_gap: RefCell<BTreeMap<i64, Cyclotomic>>,
    /// Gaussian coefficient tables per period `T`: `pascal[T][n][k]`.
    pascal: RefCell<BTreeMap<i64, Vec<Vec<Vec<IBig>>>>>,
}

impl QNumbers {
    pub fn new(q: QRoot) -> Self {
        Self::with_conductor(q, q.m as u64)
    }

    pub fn with_conductor(q: QRoot, conductor: u64) -> Self {
        assert!(
            conductor % q.m as u64 == 0,
            "conductor must be a multiple of m"
        );
        Self::with_field(q, CyclotomicField::new(conductor))
    }

    pub fn with_field(q: QRoot, field: Arc<CyclotomicField>) -> Self {
        assert!(
            field.conductor() % q.m as u64 == 0,
            "conductor must be a multiple of m"
        );
        Self {
            q,
            field,
            inv_gap: RefCell::new(BTreeMap::new()),
            pascal: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn q(&self) -> QRoot {
        self.q
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(&self.field)
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one(&self.field)
    }

    pub fn int(&self, v: i64) -> Cyclotomic {
        Cyclotomic::from_int(&self.field, v)
    }

    fn step(&self) -> i64 {
        self.q.n * (self.field.conductor() as i64 / self.q.m)
    }

    /// `q^e` for an integer exponent.
    pub fn q_power(&self, e: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(&self.field, e * self.step())
    }

    /// `q^x` for a rational exponent.
    pub fn q_power_rat(&self, x: Rat) -> Result<Cyclotomic> {
        let l = self.field.conductor() as i64;
        let e = self.q.exponent_at(x, l).ok_or_else(|| {
            Error::InvalidArgument(alloc::format!(
                "q^({x}) is not in the cyclotomic field of conductor {l}"
            ))
        })?;
        Ok(Cyclotomic::zeta_pow(&self.field, e))
    }

    fn check_admissible(&self, d: i64) -> Result<()> {
        if self.q.order_sq(d) == 1 {
            return Err(Error::Inadmissible { node: 0, d });
        }
        Ok(())
    }

    /// `[k]_{q^d}` for an integer `k`.
    pub fn qint(&self, k: i64, d: i64) -> Result<Cyclotomic> {
        self.check_admissible(d)?;
        Ok(self.qint_unchecked(k, d))
    }

    fn qint_unchecked(&self, k: i64, d: i64) -> Cyclotomic {
        if k < 0 {
            return -self.qint_unchecked(-k, d);
        }
        // sum_{j<k} q^{d(k-1-2j)} reduces modulo the order of q^d
        let l = self.field.conductor() as i64;
        let mut counts = vec![0i64; l as usize];
        let step = self.step();
        for j in 0..k {
            let e = (d * (k - 1 - 2 * j)).rem_euclid(l) * step % l;
            counts[e as usize] += 1;
        }
        let mut x = self.zero();
        for (e, c) in counts.iter().enumerate() {
            if *c != 0 {
                x = &x + &Cyclotomic::zeta_pow(&self.field, e as i64).scale_i64(*c);
            }
        }
        x
    }

    /// `[x]_{q^d} = (q^{dx} - q^{-dx}) / (q^d - q^{-d})` for rational `x`.
    pub fn qint_rat(&self, x: Rat, d: i64) -> Result<Cyclotomic> {
        self.check_admissible(d)?;
        if x.is_integer() {
            return Ok(self.qint_unchecked(*x.numer(), d));
        }
        let dx = x * Rat::from_integer(d);
        let a = self.q_power_rat(dx)?;
        let b = self.q_power_rat(-dx)?;
        let gap = {
            let mut cache = self.inv_gap.borrow_mut();
            cache
                .entry(d)
                .or_insert_with(|| {
                    let g = &self.q_power(d) - &self.q_power(-d);
                    g.inv().expect("q^d != q^-d for admissible d")
                })
                .clone()
        };
        Ok(&(&a - &b) * &gap)
    }

    /// `[k]_{q^d}!`.
    pub fn qfactorial(&self, k: i64, d: i64) -> Result<Cyclotomic> {
        self.check_admissible(d)?;
        if k < 0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "q-factorial of negative {k}"
            )));
        }
        let mut acc = self.one();
        for j in 1..=k {
            acc = &acc * &self.qint_unchecked(j, d);
        }
        Ok(acc)
    }

    /// Coefficients of the Gaussian polynomial `G(n, k)(u)` reduced modulo
    /// `u^period - 1`.
    fn gaussian(&self, n: usize, k: usize, period: i64) -> Vec<IBig> {
        let t = period as usize;
        let mut cache = self.pascal.borrow_mut();
        let table = cache.entry(period).or_default();
        while table.len() <= n {
            let row = table.len();
            let mut next: Vec<Vec<IBig>> = Vec::with_capacity(row + 1);
            for j in 0..=row {
                let mut v = vec![IBig::from(0u8); t];
                if j == 0 || j == row {
                    v[0] = IBig::from(1u8);
                } else {
                    // G(n,j) = G(n-1,j-1) + u^j G(n-1,j)
                    let prev = &table[row - 1];
                    for (e, c) in prev[j - 1].iter().enumerate() {
                        v[e] += c;
                    }
                    for (e, c) in prev[j].iter().enumerate() {
                        v[(e + j) % t] += c;
                    }
                }
                next.push(v);
            }
            table.push(next);
        }
        table[n][k].clone()
    }

    /// Balanced q-binomial `[top choose k]_{q^d}`.
    ///
    /// Defined as `t^{-k(top-k)} G(top, k)(t^2)` with `t = q^d`, which is total
    /// at roots of unity and agrees with the factorial quotient wherever that
    /// is defined. Negative `top` uses `[-n choose k] = (-1)^k [n+k-1 choose k]`.
    pub fn qbinomial(&self, top: i64, k: i64, d: i64) -> Result<Cyclotomic> {
        self.check_admissible(d)?;
        Ok(self.qbinomial_unchecked(top, k, d))
    }

    fn qbinomial_unchecked(&self, top: i64, k: i64, d: i64) -> Cyclotomic {
        if k < 0 {
            return self.zero();
        }
        if top < 0 {
            let v = self.qbinomial_unchecked(-top + k - 1, k, d);
            return if k % 2 == 0 { v } else { -v };
        }
        if k > top {
            return self.zero();
        }
        let period = self.q.order_sq(d);
        let g = self.gaussian(top as usize, k as usize, period);
        let shift = -k * (top - k);
        let l = self.field.conductor() as i64;
        let step = self.step();
        let mut x = self.zero();
        let mut counts: BTreeMap<i64, IBig> = BTreeMap::new();
        for (j, c) in g.iter().enumerate() {
            if *c == IBig::from(0u8) {
                continue;
            }
            let e = ((d * (2 * j as i64 + shift)).rem_euclid(l) as i128 * step as i128 % l as i128)
                as i64;
            *counts.entry(e).or_insert_with(|| IBig::from(0u8)) += c;
        }
        for (e, c) in counts {
            x = &x + &Cyclotomic::zeta_pow(&self.field, e).scale(&c);
        }
        x
    }
}

/// `q = zeta_m^n` as an element of `Q(zeta_m)`.
pub fn embed_q(q: QRoot) -> Cyclotomic {
    QNumbers::new(q).q_power(1)
}

/// `[k]_{q^d}`.
pub fn qint(k: i64, d: i64, q: QRoot) -> Result<Cyclotomic> {
    QNumbers::new(q).qint(k, d)
}

/// `[k]_{q^d}!`.
pub fn qfactorial(k: i64, d: i64, q: QRoot) -> Result<Cyclotomic> {
    QNumbers::new(q).qfactorial(k, d)
}

/// Balanced `[top choose k]_{q^d}`.
pub fn qbinomial(top: i64, k: i64, d: i64, q: QRoot) -> Result<Cyclotomic> {
    QNumbers::new(q).qbinomial(top, k, d)
}

fn binomial(n: i64, k: i64) -> IBig {
    if k < 0 || k > n {
        return IBig::from(0u8);
    }
    let mut acc = IBig::from(1u8);
    for j in 0..k {
        acc = acc * IBig::from(n - j) / IBig::from(j + 1);
    }
    acc
}

/// Checks `[aM+b choose cM+d]_q = q^{M^2 c(a+1) + M(ad-bc)} [b choose d]_q C(a,c)`.
pub fn check_qbinom_identity(a: i64, b: i64, c: i64, d: i64, q: QRoot) -> Result<bool> {
    check_qbinom_identity_with(&QNumbers::new(q), a, b, c, d)
}

/// As [`check_qbinom_identity`], reusing an evaluation context.
pub fn check_qbinom_identity_with(qn: &QNumbers, a: i64, b: i64, c: i64, d: i64) -> Result<bool> {
    let m = qn.q().big_m();
    if !(0..m).contains(&b) || !(0..m).contains(&d) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 0 <= b, d < M = {m}, got b = {b}, d = {d}"
        )));
    }
    let top = a * m + b;
    let bot = c * m + d;
    if top < 0 || bot < 0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "binomial arguments must be non-negative, got ({top}, {bot})"
        )));
    }
    let lhs = qn.qbinomial(top, bot, 1)?;
    let e = m * m * c * (a + 1) + m * (a * d - b * c);
    let rhs = (&qn.q_power(e) * &qn.qbinomial(b, d, 1)?).scale(&binomial(a, c));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::sign_of_real;
    use core::cmp::Ordering;

    fn q(n: i64, m: i64) -> QRoot {
        QRoot::new(n, m).unwrap()
    }

    #[test]
    fn qroot_validation() {
        assert!(QRoot::new(2, 10).is_err());
        assert!(QRoot::new(0, 10).is_err());
        assert!(QRoot::new(10, 10).is_err());
        assert!(QRoot::new(1, 1).is_err());
        assert_eq!(q(1, 10).big_m(), 5);
        assert_eq!(q(1, 9).big_m(), 9);
    }

    #[test]
    fn embed_q_is_primitive() {
        let i = embed_q(q(1, 4));
        assert_eq!(&i * &i, Cyclotomic::from_int(i.field(), -1));
        assert_ne!(embed_q(q(1, 10)), embed_q(q(3, 10)));
        assert!(embed_q(q(3, 10)).pow(10).is_one());
        assert!(!embed_q(q(3, 10)).pow(5).is_one());
    }

    #[test]
    fn small_qints() {
        let qn = QNumbers::new(q(1, 10));
        assert!(qn.qint(1, 1).unwrap().is_one());
        assert!(qn.qint(0, 1).unwrap().is_zero());
        assert!(qn.qint(5, 1).unwrap().is_zero());
        assert!(qn.qint(10, 1).unwrap().is_zero());
        // [2] at e^{i pi/5} is 2cos(pi/5) > 0, [7] < 0
        assert_eq!(
            sign_of_real(&qn.qint(2, 1).unwrap()).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            sign_of_real(&qn.qint(7, 1).unwrap()).unwrap(),
            Ordering::Less
        );
        assert_eq!(qn.qint(-3, 1).unwrap(), -qn.qint(3, 1).unwrap());
    }

    #[test]
    fn qint_matches_quotient_definition() {
        for (n, m) in [(1, 7), (2, 9), (1, 12), (5, 12)] {
            let qn = QNumbers::new(q(n, m));
            for d in 1..=3 {
                if qn.q().order_sq(d) == 1 {
                    assert!(qn.qint(1, d).is_err());
                    continue;
                }
                let gap = &qn.q_power(d) - &qn.q_power(-d);
                for k in -8..12 {
                    let lhs = &qn.qint(k, d).unwrap() * &gap;
                    let rhs = &qn.q_power(d * k) - &qn.q_power(-d * k);
                    assert_eq!(lhs, rhs, "q={n}/{m} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn rational_qint() {
        // conductor 20 carries q^{1/2} for q = zeta_10
        let qn = QNumbers::with_conductor(q(1, 10), 20);
        let half = qn.qint_rat(Rat::new(1, 2), 1).unwrap();
        // [1/2][2] relation: [1/2] * (q + q^-1) = [3/2] + [-1/2]
        let lhs = &half * &qn.qint(2, 1).unwrap();
        let rhs = &qn.qint_rat(Rat::new(3, 2), 1).unwrap() - &half;
        assert_eq!(lhs, rhs);
        assert!(half.is_real());
        assert!(QNumbers::new(q(1, 10)).qint_rat(Rat::new(1, 3), 1).is_err());
    }

    #[test]
    fn six_choose_three_at_sixth_root() {
        let qn = QNumbers::new(q(1, 6));
        assert_eq!(qn.qbinomial(6, 3, 1).unwrap(), qn.int(-2));
        assert!(check_qbinom_identity(2, 0, 1, 0, q(1, 6)).unwrap());
    }

    #[test]
    fn binomial_agrees_with_factorial_quotient_generically() {
        // large m keeps all factorials invertible
        let qn = QNumbers::new(q(1, 41));
        for n in 0..10 {
            for k in 0..=n {
                let num = qn.qfactorial(n, 1).unwrap();
                let den = &qn.qfactorial(k, 1).unwrap() * &qn.qfactorial(n - k, 1).unwrap();
                assert_eq!(qn.qbinomial(n, k, 1).unwrap(), &num * &den.inv().unwrap());
            }
        }
    }

    #[test]
    fn negative_top() {
        let qn = QNumbers::new(q(1, 11));
        // [-1 choose k] = (-1)^k
        for k in 0..5 {
            let expect = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(qn.qbinomial(-1, k, 1).unwrap(), qn.int(expect));
        }
    }

    #[test]
    fn inadmissible_d() {
        // q = e^{i pi/3}, d = 3: q^3 = -1
        assert!(matches!(
            qint(2, 3, q(1, 6)),
            Err(Error::Inadmissible { .. })
        ));
    }
}
