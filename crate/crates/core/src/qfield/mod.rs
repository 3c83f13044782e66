//! Exact arithmetic in cyclotomic fields and q-combinatorics at roots of unity.
//!
//! Elements of `Q(zeta_N)` are residues modulo the `N`-th cyclotomic
//! polynomial, so equality and the zero test are exact coefficient tests.
//! The sign of a real element is decided by fixed-point interval evaluation
//! with precision doubling.

mod field;
mod interval;
mod qnum;

pub use field::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};
pub use interval::{approx_complex, sign_of_real, sign_of_real_unchecked};
pub use qnum::{
    check_qbinom_identity, check_qbinom_identity_with, embed_q, qbinomial, qfactorial, qint,
    QNumbers, QRoot,
};
