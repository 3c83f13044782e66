//! Exact linear algebra over a cyclotomic field.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::qfield::{sign_of_real_unchecked, Cyclotomic};

pub type Matrix = Vec<Vec<Cyclotomic>>;

/// Inertia of a real symmetric matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

impl Signature {
    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }

    pub fn dim(&self) -> usize {
        self.plus + self.zero + self.minus
    }

    pub fn is_psd(&self) -> bool {
        self.minus == 0
    }
}

/// Signature by symmetric congruence elimination.
///
/// The matrix must be real symmetric (entries fixed by conjugation). When
/// every remaining diagonal entry vanishes but some `a_jk` does not, the
/// congruence `row/col j += row/col k` creates the pivot `2 a_jk`.
pub fn signature(m: &Matrix) -> Signature {
    let n = m.len();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut plus, mut minus) = (0, 0);
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            match sign_of_real_unchecked(&a[p][p]) {
                Ordering::Greater => plus += 1,
                Ordering::Less => minus += 1,
                Ordering::Equal => unreachable!(),
            }
            let inv = a[p][p].inv().expect("nonzero pivot");
            let row_p: Vec<Cyclotomic> = active.iter().map(|&k| a[p][k].clone()).collect();
            for (x, &j) in active.iter().enumerate() {
                if a[j][p].is_zero() {
                    continue;
                }
                let f = &a[j][p] * &inv;
                // upper triangle only, mirrored below
                for (y, &k) in active.iter().enumerate().skip(x) {
                    if row_p[y].is_zero() {
                        continue;
                    }
                    let v = &a[j][k] - &(&f * &row_p[y]);
                    if j != k {
                        a[k][j] = v.clone();
                    }
                    a[j][k] = v;
                }
            }
        } else {
            let mut hit = None;
            'search: for (x, &j) in active.iter().enumerate() {
                for &k in &active[x + 1..] {
                    if !a[j][k].is_zero() {
                        hit = Some((j, k));
                        break 'search;
                    }
                }
            }
            let Some((j, k)) = hit else { break };
            for l in 0..n {
                let v = &a[j][l] + &a[k][l];
                a[j][l] = v;
            }
            for l in 0..n {
                let v = &a[l][j] + &a[l][k];
                a[l][j] = v;
            }
        }
    }
    Signature {
        plus,
        zero: n - plus - minus,
        minus,
    }
}

/// Indices of a maximal set of linearly independent rows, chosen greedily in
/// order. For a symmetric matrix the principal submatrix on these indices is
/// nonsingular.
pub fn row_basis(m: &Matrix) -> Vec<usize> {
    let mut pivots: Vec<(usize, Vec<Cyclotomic>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in m.iter().enumerate() {
        let mut r = row.clone();
        for (c, prow) in &pivots {
            if r[*c].is_zero() {
                continue;
            }
            let f = r[*c].clone();
            for (x, y) in r.iter_mut().zip(prow) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        if let Some(c) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[c].inv().expect("nonzero");
            for x in r.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            pivots.push((c, r));
            chosen.push(idx);
        }
    }
    chosen
}

pub fn rank(m: &Matrix) -> usize {
    row_basis(m).len()
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = m[0][0].field().clone();
    let mut a: Matrix = m.clone();
    let mut inv: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Cyclotomic::one(&field)
                    } else {
                        Cyclotomic::zero(&field)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].inv()?;
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            if !x.is_zero() {
                *x = &*x * &p;
            }
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                if !a[col][c].is_zero() {
                    let v = &a[r][c] - &(&f * &a[col][c]);
                    a[r][c] = v;
                }
                if !inv[col][c].is_zero() {
                    let v = &inv[r][c] - &(&f * &inv[col][c]);
                    inv[r][c] = v;
                }
            }
        }
    }
    Some(inv)
}

/// `a * b` for `a: p x q`, `b: q x r`; `zero` supplies the field when empty.
pub fn mat_mul(a: &Matrix, b: &Matrix, zero: &Cyclotomic) -> Matrix {
    let r = b.first().map_or(0, |row| row.len());
    a.iter()
        .map(|row| {
            (0..r)
                .map(|j| {
                    let mut acc = zero.clone();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(x * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Cyclotomic], zero: &Cyclotomic) -> Vec<Cyclotomic> {
    a.iter()
        .map(|row| {
            let mut acc = zero.clone();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::CyclotomicField;
    use alloc::vec;

    fn ints(f: &alloc::sync::Arc<CyclotomicField>, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Cyclotomic::from_int(f, x)).collect())
            .collect()
    }

    #[test]
    fn rational_signatures() {
        let f = CyclotomicField::new(5);
        let m = ints(&f, &[&[2, 1], &[1, 2]]);
        assert_eq!(
            signature(&m),
            Signature {
                plus: 2,
                zero: 0,
                minus: 0
            }
        );
        let m = ints(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(
            signature(&m),
            Signature {
                plus: 1,
                zero: 0,
                minus: 1
            }
        );
        let m = ints(&f, &[&[1, 1, 0], &[1, 1, 0], &[0, 0, -3]]);
        assert_eq!(
            signature(&m),
            Signature {
                plus: 1,
                zero: 1,
                minus: 1
            }
        );
        let m = ints(&f, &[&[0, 0], &[0, 0]]);
        assert_eq!(
            signature(&m),
            Signature {
                plus: 0,
                zero: 2,
                minus: 0
            }
        );
    }

    #[test]
    fn golden_ratio_matrix() {
        // [[1, phi], [phi, 1]] with phi = 2cos(pi/5) > 1 is indefinite
        let f = CyclotomicField::new(10);
        let z = Cyclotomic::zeta_pow(&f, 1);
        let phi = &z + &z.star();
        let one = Cyclotomic::one(&f);
        let m = vec![
            vec![one.clone(), phi.clone()],
            vec![phi.clone(), one.clone()],
        ];
        assert_eq!(
            signature(&m),
            Signature {
                plus: 1,
                zero: 0,
                minus: 1
            }
        );
        let inv = invert(&m).unwrap();
        let id = mat_mul(&m, &inv, &Cyclotomic::zero(&f));
        assert!(id[0][0].is_one() && id[1][1].is_one() && id[0][1].is_zero());
    }

    #[test]
    fn row_basis_of_symmetric_matrix() {
        let f = CyclotomicField::new(7);
        let m = ints(&f, &[&[0, 0, 0], &[0, 1, 2], &[0, 2, 4]]);
        assert_eq!(row_basis(&m), vec![1]);
        assert_eq!(rank(&m), 1);
        assert!(invert(&m).is_none());
    }
}
