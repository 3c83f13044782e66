//! Exact computer algebra for irreducible highest-weight modules of the finite
//! quantum group `U_q^fin(g)` at roots of unity `q = e^{2 pi i n/m}`.
//!
//! Everything here is exact: weights are rationals, scalars live in cyclotomic
//! fields, and positivity is decided by rigorous interval evaluation. The crate
//! is `no_std` and needs only `alloc`.
//!
//! Modules, bottom up:
//!
//! * [`rootdata`]: Cartan data, roots, weights, Weyl dimension and Freudenthal
//!   multiplicities for the finite series A to G.
//! * [`qfield`]: the cyclotomic field `Q(zeta_N)`, exact sign of real
//!   elements, q-integers and balanced q-binomials.
//! * [`qspec`]: root-of-unity data (`M`, `M_i`, parity), the dual Cartan
//!   matrix, special points, singlet weights and Hermitian nodes.
//! * [`gram`]: contravariant forms on lowering words, ranks, signatures and
//!   the shift construction between real forms.
//! * [`frobenius`]: tilde generators, the rank-1 divided power module, the
//!   tensor factorization at character level and reality-preserving algebras.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod frobenius;
pub mod gram;
pub mod qfield;
pub mod qspec;
pub mod rootdata;

pub use error::{Error, Result};

/// Exact rational used for weight coordinates.
pub type Rat = num_rational::Ratio<i64>;

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
