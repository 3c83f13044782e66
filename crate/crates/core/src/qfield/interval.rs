//! Rigorous fixed-point evaluation of cyclotomic elements.
//!
//! Numbers are integers scaled by `2^p`; every routine returns a value
//! together with an absolute error bound in units of `2^-p`. No floating
//! point transcendental functions are involved, so results are reproducible
//! on every platform.

use core::cmp::Ordering;

use ibig::IBig;

use super::field::Cyclotomic;
use crate::{Error, Result};

/// A fixed-point value `v / 2^p` with error at most `err / 2^p`.
#[derive(Clone, Debug)]
struct Fixed {
    v: IBig,
    err: u64,
}

fn pow2(p: usize) -> IBig {
    IBig::from(1u8) << p
}

/// `atan(1/x)` for an integer `x >= 2`.
fn atan_inv(x: u64, p: usize) -> Fixed {
    let x = IBig::from(x);
    let x2 = &x * &x;
    let mut t = pow2(p) / &x;
    let mut sum = IBig::from(0u8);
    let mut j: u64 = 0;
    while t != IBig::from(0u8) {
        let term = &t / IBig::from(2 * j + 1);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        t = &t / &x2;
        j += 1;
    }
    Fixed {
        v: sum,
        err: 2 * j + 2,
    }
}

/// Machin's formula.
fn pi(p: usize) -> Fixed {
    let a = atan_inv(5, p);
    let b = atan_inv(239, p);
    Fixed {
        v: a.v * IBig::from(16u8) - b.v * IBig::from(4u8),
        err: 16 * a.err + 4 * b.err,
    }
}

/// `cos(pi * a / b)` for integers `a`, `b > 0`.
fn cos_pi_frac(a: i64, b: i64, pi: &Fixed, p: usize) -> Fixed {
    assert!(b > 0);
    let mut a = a.rem_euclid(2 * b);
    if a > b {
        a = 2 * b - a;
    }
    let mut negate = false;
    if 2 * a > b {
        a = b - a;
        negate = true;
    }
    // theta = pi * a / b in [0, pi/2]
    let theta = &pi.v * IBig::from(a) / IBig::from(b);
    let theta_err = pi.err + 1;
    let theta2 = (&theta * &theta) >> p;
    let mut u = pow2(p);
    let mut sum = u.clone();
    let mut j: u64 = 1;
    loop {
        u = ((&u * &theta2) >> p) / IBig::from((2 * j - 1) * (2 * j));
        if u == IBig::from(0u8) {
            break;
        }
        if j % 2 == 1 {
            sum -= &u;
        } else {
            sum += &u;
        }
        j += 1;
    }
    let err = j * (4 * theta_err + 8) + 8;
    Fixed {
        v: if negate { -sum } else { sum },
        err,
    }
}

/// Real part `sum_k c_k cos(2 pi k / N)` of the numerator, with error bound.
fn real_numerator(x: &Cyclotomic, p: usize) -> (IBig, IBig) {
    let n = x.conductor() as i64;
    let pi = pi(p);
    let mut s = IBig::from(0u8);
    let mut err = IBig::from(0u8);
    for (k, c) in x.numerator().iter().enumerate() {
        if *c == IBig::from(0u8) {
            continue;
        }
        let cv = cos_pi_frac(2 * k as i64, n, &pi, p);
        s += c * &cv.v;
        let abs = if *c < IBig::from(0u8) { -c } else { c.clone() };
        err += abs * IBig::from(cv.err);
    }
    (s, err)
}

fn imag_numerator(x: &Cyclotomic, p: usize) -> IBig {
    let n = x.conductor() as i64;
    let pi = pi(p);
    let mut s = IBig::from(0u8);
    for (k, c) in x.numerator().iter().enumerate() {
        if *c == IBig::from(0u8) {
            continue;
        }
        // sin(2 pi k / N) = cos(pi (4k - N) / 2N)
        let cv = cos_pi_frac(4 * k as i64 - n, 2 * n, &pi, p);
        s += c * &cv.v;
    }
    s
}

/// Exact sign of a real cyclotomic number under `zeta_N -> e^{2 pi i/N}`.
///
/// Zero is decided from the canonical form; otherwise the precision doubles
/// until the error interval excludes zero.
pub fn sign_of_real(x: &Cyclotomic) -> Result<Ordering> {
    if !x.is_real() {
        return Err(Error::NotReal);
    }
    Ok(sign_of_real_unchecked(x))
}

/// As [`sign_of_real`] without the reality check (the caller guarantees it).
pub fn sign_of_real_unchecked(x: &Cyclotomic) -> Ordering {
    if x.is_zero() {
        return Ordering::Equal;
    }
    if let Some((p, _)) = x.as_rational() {
        return p.cmp(&IBig::from(0u8));
    }
    let mut p = 64usize;
    loop {
        let (s, err) = real_numerator(x, p);
        let abs = if s < IBig::from(0u8) { -&s } else { s.clone() };
        if abs > err {
            // den > 0
            return s.cmp(&IBig::from(0u8));
        }
        p *= 2;
    }
}

fn to_f64_scaled(v: &IBig, den: &IBig, p: usize) -> f64 {
    const FRAC: usize = 60;
    let q = (v << FRAC) / (den << p);
    let scale = 1.0 / ((1u64 << FRAC) as f64);
    q.to_f64() * scale
}

/// Approximate `(re, im)`; for display only.
pub fn approx_complex(x: &Cyclotomic) -> (f64, f64) {
    const P: usize = 80;
    let (re, _) = real_numerator(x, P);
    let im = imag_numerator(x, P);
    let den = x.denominator();
    (to_f64_scaled(&re, den, P), to_f64_scaled(&im, den, P))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::field::CyclotomicField;

    #[test]
    fn pi_digits() {
        let p = pi(100);
        // 3.14159265358979323846...
        let approx = to_f64_scaled(&p.v, &IBig::from(1u8), 100);
        assert!((approx - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn cosines_match_libm() {
        let p = 64;
        let pi = pi(p);
        for b in 1..30i64 {
            for a in -70..70i64 {
                let c = cos_pi_frac(a, b, &pi, p);
                let v = to_f64_scaled(&c.v, &IBig::from(1u8), p);
                let exact = (core::f64::consts::PI * a as f64 / b as f64).cos();
                assert!((v - exact).abs() < 1e-12, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn golden_ratio_sign() {
        let f = CyclotomicField::new(10);
        // zeta + zeta^{-1} = 2 cos(pi/5) > 0
        let z = Cyclotomic::zeta_pow(&f, 1);
        let x = &z + &z.star();
        assert_eq!(sign_of_real(&x).unwrap(), Ordering::Greater);
        let (re, im) = x.approx();
        assert!((re - 1.618033988749895).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
        // zeta^3 + zeta^{-3} = 2 cos(3 pi / 5) < 0
        let y = Cyclotomic::zeta_pow(&f, 3);
        assert_eq!(sign_of_real(&(&y + &y.star())).unwrap(), Ordering::Less);
        assert!(sign_of_real(&z).is_err());
    }

    #[test]
    fn tiny_nonzero_values_are_resolved() {
        // 2cos(2pi/N) - 2 + (2pi/N)^2-ish differences: use x = zeta + zeta^-1 - c
        // for rational c extremely close to the real value.
        let f = CyclotomicField::new(7);
        let z = Cyclotomic::zeta_pow(&f, 1);
        let x = &z + &z.star();
        // 2cos(2pi/7) = 1.24697960371746706...
        let c = crate::Rat::new(124_697_960_371_746_706, 100_000_000_000_000_000);
        let d = &x - &Cyclotomic::from_rat(&f, c);
        assert_eq!(sign_of_real(&d).unwrap(), Ordering::Greater);
    }
}
