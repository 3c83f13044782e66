//! Property tests for the algebraic invariants.

use std::sync::Arc;

use num_integer::Integer;
use proptest::prelude::*;
use rootq_core::gram::{gram_block, module_report, shift_decompose, ShiftDecomposition};
use rootq_core::qfield::{
    check_qbinom_identity_with, Cyclotomic, CyclotomicField, QNumbers, QRoot,
};
use rootq_core::qspec::{compute_spec, p_from_z, singlet_weights, RealForm};
use rootq_core::rootdata::{build_root_system, CartanType, RootSystem, Weight};
use rootq_core::Rat;

const TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"];

fn rs_of(t: &str) -> RootSystem {
    let t: CartanType = t.parse().unwrap();
    build_root_system(t.series, t.rank).unwrap()
}

/// A root of unity `(n, m)` with `gcd(n, m) = 1`, `3 <= m <= max_m`.
fn qroot(max_m: i64) -> impl Strategy<Value = QRoot> {
    (3..=max_m, 1..max_m).prop_filter_map("coprime", |(m, n)| {
        let n = n % m;
        (n > 0 && n.gcd(&m) == 1).then(|| QRoot::new(n, m).unwrap())
    })
}

fn element(field: Arc<CyclotomicField>) -> impl Strategy<Value = Cyclotomic> {
    let deg = field.degree();
    prop::collection::vec(-5i64..=5, deg).prop_map(move |c| Cyclotomic::from_coeffs(&field, &c))
}

fn field_and_elements() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    (3u64..=30).prop_flat_map(|n| {
        let f = CyclotomicField::new(n);
        (element(f.clone()), element(f.clone()), element(f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((a, b, c) in field_and_elements()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((a, b, _c) in field_and_elements()) {
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!((&a * &b).star(), &a.star() * &b.star());
        prop_assert!((&a * &a.star()).is_real());
        let n = a.conductor() as i64;
        prop_assert_eq!(a.galois(n - 1), a.star());
    }

    #[test]
    fn qbinomial_symmetry_and_pascal(q in qroot(24), n in 0i64..30, k in 0i64..30) {
        let qn = QNumbers::new(q);
        let k = k % (n + 1);
        prop_assert_eq!(qn.qbinomial(n, k, 1).unwrap(), qn.qbinomial(n, n - k, 1).unwrap());
        if k >= 1 {
            // [n+1, k] = q^k [n, k] + q^{-(n+1-k)} [n, k-1]
            let lhs = qn.qbinomial(n + 1, k, 1).unwrap();
            let rhs = &(&qn.q_power(k) * &qn.qbinomial(n, k, 1).unwrap())
                + &(&qn.q_power(-(n + 1 - k)) * &qn.qbinomial(n, k - 1, 1).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert!(qn.qbinomial(n, k, 1).unwrap().is_real());
    }

    #[test]
    fn qbinomial_factorisation(q in qroot(20), a in 0i64..5, c in 0i64..5, b in 0i64..20, d in 0i64..20) {
        let qn = QNumbers::new(q);
        let m = q.big_m();
        prop_assert!(check_qbinom_identity_with(&qn, a, b % m, c, d % m).unwrap());
    }

    #[test]
    fn qint_vanishes_exactly_at_multiples_of_the_order(q in qroot(24), k in -40i64..40) {
        let qn = QNumbers::new(q);
        let v = qn.qint(k, 1).unwrap();
        prop_assert_eq!(v.is_zero(), k % q.big_m() == 0);
    }

    #[test]
    fn weight_arithmetic(a in prop::collection::vec(-20i64..20, 4), b in prop::collection::vec(-20i64..20, 4), num in -7i64..7, den in 1i64..7) {
        let (wa, wb) = (Weight::from_ints(&a), Weight::from_ints(&b));
        prop_assert_eq!(wa.add(&wb).sub(&wb), wa.clone());
        prop_assert_eq!(wa.add(&wb), wb.add(&wa));
        let c = Rat::new(num, den);
        prop_assert_eq!(wa.add(&wb).scale(c), wa.scale(c).add(&wb.scale(c)));
    }

    #[test]
    fn lowering_subtracts_cartan_columns(t in prop::sample::select(&TYPES[..]), lam in prop::collection::vec(0i64..6, 4), eta in prop::collection::vec(0i64..4, 4)) {
        let rs = rs_of(t);
        let n = rs.rank();
        let l = Weight::from_ints(&lam[..n.min(4)].iter().copied().chain(std::iter::repeat(0)).take(n).collect::<Vec<_>>());
        let e: Vec<i64> = eta.iter().copied().chain(std::iter::repeat(0)).take(n).collect();
        let low = rs.lower(&l, &e);
        let a = rs.cartan();
        for j in 0..n {
            let expect: i64 = (0..n).map(|i| e[i] * a[j][i]).sum();
            prop_assert_eq!(l.coords[j] - low.coords[j], Rat::from_integer(expect));
        }
    }

    #[test]
    fn spec_invariants(t in prop::sample::select(&TYPES[..]), q in qroot(30)) {
        let rs = rs_of(t);
        let Ok(spec) = compute_spec(&rs, q) else { return Ok(()) };
        let a = rs.cartan();
        let n = rs.rank();
        for i in 0..n {
            prop_assert_eq!(spec.big_m % spec.m_simple[i], 0);
            // M_i is the order of q_i^2
            let qn = QNumbers::new(q);
            prop_assert!(qn.q_power(2 * spec.d[i] * spec.m_simple[i]).is_one());
            for j in 0..n {
                prop_assert_eq!(spec.m_simple[i] * spec.dual_cartan[i][j], spec.m_simple[j] * a[i][j]);
            }
        }
    }

    #[test]
    fn shift_round_trip(t in prop::sample::select(&["A1", "A2", "B2", "G2"][..]), m in 3i64..13, l0 in prop::collection::vec(0i64..6, 2), p in prop::collection::vec(-3i64..4, 2)) {
        let rs = rs_of(t);
        let Ok(spec) = compute_spec(&rs, QRoot::new(1, m).unwrap()) else { return Ok(()) };
        let n = rs.rank();
        let l0: Vec<i64> = (0..n).map(|i| l0[i] % spec.m_simple[i]).collect();
        let p = &p[..n];
        let (lr, form) = singlet_weights(&rs, &spec, p).unwrap();
        let lambda = Weight::from_ints(&l0).add(&lr);
        match shift_decompose(&lambda, &rs, &spec).unwrap() {
            ShiftDecomposition::Reachable { lambda_0, lambda_r, p: p2, form: f2 } => {
                prop_assert_eq!(lambda_0, Weight::from_ints(&l0));
                prop_assert_eq!(lambda_r, lr);
                prop_assert_eq!(p2, p.to_vec());
                prop_assert_eq!(f2, form);
            }
            ShiftDecomposition::NotReachable => prop_assert!(false, "not reachable"),
        }
    }

    #[test]
    fn special_points_are_integral(t in prop::sample::select(&TYPES[..]), q in qroot(24), z in prop::collection::vec(0i64..4, 4)) {
        let rs = rs_of(t);
        let Ok(spec) = compute_spec(&rs, q) else { return Ok(()) };
        let z = &z[..rs.rank()];
        let p = p_from_z(&spec, z).unwrap();
        let (lr, _) = singlet_weights(&rs, &spec, &p).unwrap();
        for (i, c) in lr.coords.iter().enumerate() {
            prop_assert_eq!(*c, Rat::from_integer(z[i] * spec.m_simple[i]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_blocks_are_real_symmetric(t in prop::sample::select(&["A1", "A2", "B2"][..]), q in qroot(12), lam in prop::collection::vec(-4i64..6, 2), eta in prop::collection::vec(0i64..3, 2), flip in any::<bool>()) {
        let rs = rs_of(t);
        let Ok(spec) = compute_spec(&rs, q) else { return Ok(()) };
        let n = rs.rank();
        let mut s = vec![1i8; n];
        if flip { s[0] = -1; }
        let form = RealForm::new(s).unwrap();
        let b = gram_block(&rs, &spec, &Weight::from_ints(&lam[..n]), &form, &eta[..n]).unwrap();
        for i in 0..b.matrix.len() {
            for j in 0..b.matrix.len() {
                prop_assert!(b.matrix[i][j].is_real());
                prop_assert_eq!(&b.matrix[i][j], &b.matrix[j][i]);
            }
        }
        prop_assert!(b.rank <= b.words.len());
    }

    #[test]
    fn module_dimensions_are_weyl_invariant(t in prop::sample::select(&["A1", "A2", "B2"][..]), q in qroot(12), lam in prop::collection::vec(0i64..4, 2)) {
        // inside the restricted box the multiplicities are invariant under the
        // simple reflections s_i: mu -> mu - <mu, alpha_i^vee> alpha_i
        let rs = rs_of(t);
        let Ok(spec) = compute_spec(&rs, q) else { return Ok(()) };
        let n = rs.rank();
        let lam: Vec<i64> = (0..n).map(|i| lam[i] % spec.m_simple[i]).collect();
        let rep = module_report(&rs, &spec, &Weight::from_ints(&lam), &RealForm::compact(n), 60).unwrap();
        prop_assume!(!rep.truncated);
        let a = rs.cartan();
        for (mu, mult) in &rep.dims {
            for i in 0..n {
                let k = mu.coords[i];
                let image: Vec<Rat> = (0..n).map(|j| mu.coords[j] - k * Rat::from_integer(a[j][i])).collect();
                prop_assert_eq!(rep.dims.get(&Weight::new(image)), Some(mult));
            }
        }
    }
}
