//! The cyclotomic field `Q(zeta_N)` as `Q[x]/Phi_N(x)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use ibig::IBig;
use num_integer::Integer;

use crate::Rat;

/// Field data shared by all elements of one conductor.
pub struct CyclotomicField {
    conductor: u64,
    phi: Vec<IBig>,
    /// `powers[k]` is the reduced residue of `x^k`, `0 <= k < conductor`.
    powers: Vec<Vec<IBig>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul(a: &[IBig], b: &[IBig]) -> Vec<IBig> {
    let mut out = vec![IBig::from(0u8); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == IBig::from(0u8) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials with a monic divisor.
fn poly_div_exact(num: &[IBig], den: &[IBig]) -> Vec<IBig> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let ql = num.len() + 1 - dl;
    let mut q = vec![IBig::from(0u8); ql];
    for k in (0..ql).rev() {
        let c = rem[k + dl - 1].clone();
        if c != IBig::from(0u8) {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|r| *r == IBig::from(0u8)));
    q
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<IBig> {
    let mut num = vec![IBig::from(1u8)];
    let mut den = vec![IBig::from(1u8)];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut f = vec![IBig::from(0u8); d as usize + 1];
        f[0] = IBig::from(-1i8);
        f[d as usize] = IBig::from(1u8);
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![IBig::from(0u8); deg];
        cur[0] = IBig::from(1u8);
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Phi
            let top = cur[deg - 1].clone();
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1].clone();
            }
            cur[0] = IBig::from(0u8);
            if top != IBig::from(0u8) {
                for j in 0..deg {
                    cur[j] -= &top * &phi[j];
                }
            }
        }
        Arc::new(Self {
            conductor,
            phi,
            powers,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `[Q(zeta_N) : Q] = phi(N)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[IBig] {
        &self.phi
    }

    fn power(&self, k: i64) -> &[IBig] {
        let n = self.conductor as i64;
        &self.powers[k.rem_euclid(n) as usize]
    }
}

/// An element of `Q(zeta_N)`, stored as `num / den` with `num` an integer
/// residue of degree `< phi(N)`, `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    num: Vec<IBig>,
    den: IBig,
}

fn zero() -> IBig {
    IBig::from(0u8)
}

fn one() -> IBig {
    IBig::from(1u8)
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: field.clone(),
            num: vec![zero(); field.degree()],
            den: one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        let mut x = Self::zero(field);
        x.num[0] = IBig::from(v);
        x
    }

    pub fn from_ibig(field: &Arc<CyclotomicField>, v: IBig) -> Self {
        let mut x = Self::zero(field);
        x.num[0] = v;
        x
    }

    pub fn from_rat(field: &Arc<CyclotomicField>, v: Rat) -> Self {
        let mut x = Self::zero(field);
        x.num[0] = IBig::from(*v.numer());
        x.den = IBig::from(*v.denom());
        x.normalize();
        x
    }

    /// `zeta_N^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        Self {
            field: field.clone(),
            num: field.power(k).to_vec(),
            den: one(),
        }
    }

    /// Build from integer coefficients on `1, zeta, zeta^2, ...` of any length.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: &[i64]) -> Self {
        let mut x = Self::zero(field);
        for (k, c) in coeffs.iter().enumerate() {
            if *c != 0 {
                x.add_scaled_power(k as i64, &IBig::from(*c));
            }
        }
        x
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    /// Numerator residue coefficients (integers).
    pub fn numerator(&self) -> &[IBig] {
        &self.num
    }

    pub fn denominator(&self) -> &IBig {
        &self.den
    }

    /// Rational coefficients on the power basis `1, zeta, ..., zeta^{phi-1}`.
    pub fn coefficients(&self) -> Vec<(IBig, IBig)> {
        self.num
            .iter()
            .map(|c| {
                let g = c.gcd(&self.den);
                if g == zero() {
                    (zero(), one())
                } else {
                    (c / &g, &self.den / &g)
                }
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| *c == zero())
    }

    pub fn is_one(&self) -> bool {
        self.den == one() && self.num[0] == one() && self.num[1..].iter().all(|c| *c == zero())
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<(IBig, IBig)> {
        if self.num[1..].iter().all(|c| *c == zero()) {
            Some((self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// `num += c * zeta^k`, keeping the residue reduced.
    fn add_scaled_power(&mut self, k: i64, c: &IBig) {
        let p = self.field.power(k);
        for (dst, src) in self.num.iter_mut().zip(p) {
            if *src != zero() {
                *dst += c * src;
            }
        }
    }

    fn normalize(&mut self) {
        if self.den == one() {
            return;
        }
        if self.den < zero() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == one() {
                break;
            }
            if *c != zero() {
                g = g.gcd(c);
            }
        }
        if self.is_zero() {
            self.den = one();
            return;
        }
        if g != one() {
            self.den = &self.den / &g;
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    /// Re-express in the field of conductor `target`, a multiple of ours.
    pub fn lift(&self, target: &Arc<CyclotomicField>) -> Self {
        if Arc::ptr_eq(&self.field, target) || self.field.conductor == target.conductor {
            let mut x = self.clone();
            x.field = target.clone();
            return x;
        }
        assert!(
            target.conductor % self.field.conductor == 0,
            "cannot lift conductor {} into {}",
            self.field.conductor,
            target.conductor
        );
        let step = (target.conductor / self.field.conductor) as i64;
        let mut x = Self::zero(target);
        for (k, c) in self.num.iter().enumerate() {
            if *c != zero() {
                x.add_scaled_power(k as i64 * step, c);
            }
        }
        x.den = self.den.clone();
        x
    }

    /// Bring two operands into a common field.
    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.field.conductor.lcm(&b.field.conductor);
        let f = if l == a.field.conductor {
            a.field.clone()
        } else if l == b.field.conductor {
            b.field.clone()
        } else {
            CyclotomicField::new(l)
        };
        (a.lift(&f), b.lift(&f))
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor
    }

    /// Image under the automorphism `zeta -> zeta^t`, `gcd(t, N) = 1`.
    pub fn galois(&self, t: i64) -> Self {
        debug_assert_eq!(
            (t.rem_euclid(self.field.conductor as i64) as u64).gcd(&self.field.conductor),
            1
        );
        let mut x = Self::zero(&self.field);
        for (k, c) in self.num.iter().enumerate() {
            if *c != zero() {
                x.add_scaled_power(k as i64 * t, c);
            }
        }
        x.den = self.den.clone();
        x
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn star(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.star() == *self
    }

    pub fn scale(&self, c: &IBig) -> Self {
        let mut x = self.clone();
        for v in x.num.iter_mut() {
            *v *= c;
        }
        x.normalize();
        x
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&IBig::from(c))
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// Uses the norm: `x * prod_{t != 1} sigma_t(x)` is rational.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some((p, q)) = self.as_rational() {
            let mut x = Self::zero(&self.field);
            x.num[0] = q;
            x.den = p;
            x.normalize();
            return Some(x);
        }
        let n = self.field.conductor;
        let mut prod = Self::one(&self.field);
        let base = Self {
            field: self.field.clone(),
            num: self.num.clone(),
            den: one(),
        };
        for t in 2..n {
            if t.gcd(&n) == 1 {
                prod = &prod * &base.galois(t as i64);
            }
        }
        let norm = &prod * &base;
        let (p, q) = norm
            .as_rational()
            .expect("norm of a cyclotomic integer is rational");
        // 1/base = prod / norm, and 1/self = den * prod / norm
        let mut out = prod;
        for v in out.num.iter_mut() {
            *v *= &q;
            *v *= &self.den;
        }
        out.den = &out.den * &p;
        out.normalize();
        Some(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self * a + b * c`-style fused update helper: `self += a * b`.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a * b;
        *self = &*self + &p;
    }

    /// Approximate complex value under `zeta -> e^{2 pi i / N}`.
    pub fn approx(&self) -> (f64, f64) {
        super::interval::approx_complex(self)
    }
}

fn add_impl(a: &Cyclotomic, b: &Cyclotomic, negate_b: bool) -> Cyclotomic {
    if !a.same_field(b) {
        let (x, y) = Cyclotomic::common(a, b);
        return add_impl(&x, &y, negate_b);
    }
    let mut num = Vec::with_capacity(a.num.len());
    if a.den == b.den {
        for (x, y) in a.num.iter().zip(&b.num) {
            num.push(if negate_b { x - y } else { x + y });
        }
        let mut r = Cyclotomic {
            field: a.field.clone(),
            num,
            den: a.den.clone(),
        };
        r.normalize();
        return r;
    }
    for (x, y) in a.num.iter().zip(&b.num) {
        let l = x * &b.den;
        let r = y * &a.den;
        num.push(if negate_b { l - r } else { l + r });
    }
    let mut r = Cyclotomic {
        field: a.field.clone(),
        num,
        den: &a.den * &b.den,
    };
    r.normalize();
    r
}

fn mul_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    if !a.same_field(b) {
        let (x, y) = Cyclotomic::common(a, b);
        return mul_impl(&x, &y);
    }
    let deg = a.num.len();
    let mut raw = vec![zero(); 2 * deg - 1];
    for (i, x) in a.num.iter().enumerate() {
        if *x == zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if *y != zero() {
                raw[i + j] += x * y;
            }
        }
    }
    let mut num: Vec<IBig> = raw[..deg].to_vec();
    for (k, c) in raw.iter().enumerate().skip(deg) {
        if *c == zero() {
            continue;
        }
        let p = a.field.power(k as i64);
        for (dst, src) in num.iter_mut().zip(p) {
            if *src != zero() {
                *dst += c * src;
            }
        }
    }
    let mut r = Cyclotomic {
        field: a.field.clone(),
        num,
        den: &a.den * &b.den,
    };
    r.normalize();
    r
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        mul_impl(self, rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        add_impl(&self, &rhs, false)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        add_impl(&self, &rhs, true)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        mul_impl(&self, &rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.same_field(other) {
            self.den == other.den && self.num == other.num
        } else {
            let (x, y) = Cyclotomic::common(self, other);
            x == y
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if *c == zero() {
                continue;
            }
            terms.push(match k {
                0 => alloc::format!("{}", c),
                1 => alloc::format!("{}*z", c),
                _ => alloc::format!("{}*z^{}", c, k),
            });
        }
        let body = if terms.is_empty() {
            alloc::string::String::from("0")
        } else {
            terms.join(" + ")
        };
        if self.den == one() {
            write!(f, "{}", body)?;
        } else {
            write!(f, "({})/{}", body, self.den)?;
        }
        write!(f, " [z=zeta_{}]", self.field.conductor)
    }
}
