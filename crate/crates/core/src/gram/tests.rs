use super::block::words_of;
use super::shift::etas_at_height;
use super::*;
use crate::qfield::{qbinomial, QRoot};
use crate::qspec::{compute_spec, p_from_z};
use crate::rootdata::{build_root_system, CartanType};
use std::f64::consts::PI;

fn setup(t: &str, n: i64, m: i64) -> (RootSystem, RootOfUnitySpec) {
    let t: CartanType = t.parse().unwrap();
    let rs = build_root_system(t.series, t.rank).unwrap();
    let spec = compute_spec(&rs, QRoot::new(n, m).unwrap()).unwrap();
    (rs, spec)
}

fn w(v: &[i64]) -> Weight {
    Weight::from_ints(v)
}

/// `[x]_q` in floating point: `sin(2 pi n x / m) / sin(2 pi n / m)`.
fn qint_f64(x: f64, n: i64, m: i64) -> f64 {
    let t = 2.0 * PI * n as f64 / m as f64;
    (t * x).sin() / t.sin()
}

#[test]
fn word_enumeration_is_lexicographic() {
    let ws = words_of(&[2, 1]);
    assert_eq!(ws, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    assert_eq!(words_of(&[0, 0]), vec![Vec::<u8>::new()]);
    assert_eq!(
        etas_at_height(2, 2),
        vec![vec![2, 0], vec![1, 1], vec![0, 2]]
    );
}

#[test]
fn rank_one_examples() {
    let (rs, spec) = setup("A1", 1, 4);
    let g = gram_block(&rs, &spec, &w(&[1]), &RealForm::compact(1), &[1]).unwrap();
    assert_eq!(g.matrix.len(), 1);
    assert!(g.matrix[0][0].is_one());

    let (rs, spec) = setup("A1", 1, 10);
    let g = gram_block(&rs, &spec, &w(&[5]), &RealForm::compact(1), &[1]).unwrap();
    assert!(g.matrix[0][0].is_zero());
    assert_eq!(g.rank, 0);
    assert_eq!(
        g.signature,
        Signature {
            plus: 0,
            zero: 1,
            minus: 0
        }
    );
}

#[test]
fn rank_one_norms_match_closed_form() {
    // <F^k v, F^k v> = [k]! prod_{j=1..k} [4 - j + 1]
    let (rs, spec) = setup("A1", 1, 10);
    for k in 1..=6i64 {
        let g = gram_block(&rs, &spec, &w(&[4]), &RealForm::compact(1), &[k]).unwrap();
        let mut expect = 1.0;
        for j in 1..=k {
            expect *= qint_f64(j as f64, 1, 10) * qint_f64((4 - j + 1) as f64, 1, 10);
        }
        let (re, im) = g.matrix[0][0].approx();
        assert!(
            (re - expect).abs() < 1e-9 && im.abs() < 1e-12,
            "k={k}: {re} vs {expect}"
        );
        if k <= 4 {
            assert_eq!(g.signature.plus, 1);
        } else {
            assert!(g.matrix[0][0].is_zero());
        }
    }
}

#[test]
fn module_report_examples() {
    let (rs, spec) = setup("A1", 1, 10);
    let c = RealForm::compact(1);
    let r = module_report(&rs, &spec, &w(&[4]), &c, DEFAULT_HEIGHT_BUDGET).unwrap();
    assert_eq!(r.total_dim, 5);
    assert!(r.unitary && r.classical_character && !r.truncated);
    let weights: Vec<i64> = r.dims.keys().map(|k| k.coords[0].to_integer()).collect();
    assert_eq!(weights, vec![-4, -2, 0, 2, 4]);
    assert!(r.dims.values().all(|&d| d == 1));

    let r = module_report(&rs, &spec, &w(&[5]), &c, DEFAULT_HEIGHT_BUDGET).unwrap();
    assert_eq!(r.total_dim, 1);
    assert!(r.unitary && !r.classical_character);

    let (rs, spec) = setup("A2", 1, 8);
    let r = module_report(
        &rs,
        &spec,
        &w(&[1, 0]),
        &RealForm::compact(2),
        DEFAULT_HEIGHT_BUDGET,
    )
    .unwrap();
    assert_eq!(r.total_dim, 3);
    assert!(r.unitary && r.classical_character);
}

#[test]
fn truncation_is_reported() {
    // generic weight: the Verma module never terminates
    let (rs, spec) = setup("A1", 1, 10);
    let lam = Weight::new(vec![Rat::new(1, 3)]);
    let r = module_report(&rs, &spec, &lam, &RealForm::compact(1), 3).unwrap();
    assert!(r.truncated);
    assert_eq!(r.depth, 3);
    assert!(!r.classical_character);
}

#[test]
fn gram_is_real_symmetric() {
    for (t, n, m, lam) in [
        ("A2", 1, 7, vec![2, 1]),
        ("B2", 1, 10, vec![1, 1]),
        ("G2", 1, 14, vec![1, 0]),
    ] {
        let (rs, spec) = setup(t, n, m);
        for form in [RealForm::compact(2), RealForm::new(vec![1, -1]).unwrap()] {
            for eta in [[1, 1], [2, 1], [2, 2], [1, 3]] {
                let g = gram_block(&rs, &spec, &w(&lam), &form, &eta).unwrap();
                for x in 0..g.matrix.len() {
                    assert!(g.matrix[x][x].is_real());
                    for y in 0..g.matrix.len() {
                        assert_eq!(g.matrix[x][y], g.matrix[y][x].star());
                    }
                }
                assert_eq!(g.signature.dim(), g.words.len());
            }
        }
    }
}

#[test]
fn quotient_engine_matches_full_words() {
    let cases: &[(&str, i64, i64, &[i64])] = &[
        ("A2", 1, 6, &[1, 1]),
        ("A2", 1, 10, &[2, 1]),
        ("A2", 2, 9, &[1, 2]),
        ("B2", 1, 8, &[1, 1]),
        ("B2", 1, 12, &[0, 3]),
        ("G2", 1, 14, &[1, 1]),
        ("A1xA1", 1, 6, &[2, 1]),
    ];
    for &(t, n, m, lam) in cases {
        let (rs, spec) = if t == "A1xA1" {
            let rs = RootSystem::from_cartan_matrix(&[vec![2, 0], vec![0, 2]]).unwrap();
            let spec = compute_spec(&rs, QRoot::new(n, m).unwrap()).unwrap();
            (rs, spec)
        } else {
            setup(t, n, m)
        };
        for form in [RealForm::compact(2), RealForm::new(vec![-1, 1]).unwrap()] {
            let ctx = GramContext::new(&rs, &spec, &w(lam), &form).unwrap();
            let qm =
                QuotientModule::build(GramContext::new(&rs, &spec, &w(lam), &form).unwrap(), 5);
            let mut wg = WordGram::new(&ctx);
            for h in 0..=5 {
                for eta in etas_at_height(2, h) {
                    let (_, g) = wg.block(&eta);
                    let sig = signature(g);
                    assert_eq!(sig.rank(), qm.dim(&eta), "{t} {lam:?} {eta:?}");
                    if let Some((_, bg)) = qm.basis_gram(&eta) {
                        let s2 = signature(bg);
                        assert_eq!(
                            (s2.plus, s2.minus),
                            (sig.plus, sig.minus),
                            "{t} {lam:?} {eta:?}"
                        );
                    }
                }
            }
        }
    }
}

/// Coefficients of the quantum Serre element `sum_k (-1)^k [N choose k]_{q_i} F_i^{N-k} F_j F_i^k`.
fn serre_words(
    i: usize,
    j: usize,
    a_ij: i64,
    d_i: i64,
    q: QRoot,
) -> Vec<(Vec<u8>, crate::qfield::Cyclotomic)> {
    let big_n = 1 - a_ij;
    (0..=big_n)
        .map(|k| {
            let mut word = vec![i as u8; (big_n - k) as usize];
            word.push(j as u8);
            word.extend(core::iter::repeat(i as u8).take(k as usize));
            let mut c = qbinomial(big_n, k, d_i, q).unwrap();
            if k % 2 == 1 {
                c = -c;
            }
            (word, c)
        })
        .collect()
}

#[test]
fn serre_elements_lie_in_the_radical() {
    for (t, n, m, lam) in [
        ("A2", 1, 7, vec![1, 2]),
        ("A2", 1, 6, vec![0, 0]),
        ("B2", 1, 10, vec![2, 1]),
        ("B2", 1, 8, vec![1, 0]),
        ("G2", 1, 14, vec![1, 1]),
        ("G2", 1, 9, vec![0, 1]),
    ] {
        let (rs, spec) = setup(t, n, m);
        let a = rs.cartan().to_vec();
        let lam = w(&lam);
        for form in [RealForm::compact(2), RealForm::new(vec![1, -1]).unwrap()] {
            let ctx = GramContext::new(&rs, &spec, &lam, &form).unwrap();
            let mut wg = WordGram::new(&ctx);
            for (i, j) in [(0usize, 1usize), (1, 0)] {
                let serre = serre_words(i, j, a[i][j], rs.d()[i], spec.q);
                let s_height = serre[0].0.len();
                // S * w v for every word w, staying within height 6
                for h in 0..=(6 - s_height) {
                    for eta_w in etas_at_height(2, h) {
                        for tail in words_of(&eta_w) {
                            let mut eta = eta_w.clone();
                            eta[i] += (1 - a[i][j]) as i64;
                            eta[j] += 1;
                            let (words, g) = wg.block(&eta);
                            let idx = |wd: &Vec<u8>| words.iter().position(|x| x == wd).unwrap();
                            let mut vec_c = vec![ctx.zero(); words.len()];
                            for (sw, c) in &serre {
                                let mut full = sw.clone();
                                full.extend_from_slice(&tail);
                                let k = idx(&full);
                                vec_c[k] = &vec_c[k] + c;
                            }
                            let gv = linalg::mat_vec(g, &vec_c, &ctx.zero());
                            assert!(gv.iter().all(|x| x.is_zero()), "{t} S_{i}{j} tail {tail:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn termination_is_sound() {
    for (t, n, m, lam) in [
        ("A1", 1, 10, vec![2]),
        ("A2", 1, 8, vec![1, 0]),
        ("A2", 1, 6, vec![2, 1]),
        ("B2", 1, 8, vec![0, 1]),
        ("G2", 1, 14, vec![0, 1]),
    ] {
        let (rs, spec) = setup(t, n, m);
        let nr = rs.rank();
        let lam = w(&lam);
        let r = module_report(&rs, &spec, &lam, &RealForm::compact(nr), 40).unwrap();
        assert!(!r.truncated);
        let ctx = GramContext::new(&rs, &spec, &lam, &RealForm::compact(nr)).unwrap();
        let mut wg = WordGram::new(&ctx);
        for h in r.depth + 1..=r.depth + 3 {
            for eta in etas_at_height(nr, h) {
                let (_, g) = wg.block(&eta);
                assert_eq!(rank(g), 0, "{t} {eta:?}");
            }
        }
    }
}

#[test]
fn f_power_m_is_null() {
    for (t, n, m) in [
        ("A2", 1, 6),
        ("B2", 1, 8),
        ("B2", 1, 10),
        ("G2", 1, 9),
        ("G2", 1, 14),
    ] {
        let (rs, spec) = setup(t, n, m);
        for lam in [
            Weight::from_ints(&[2, 3]),
            Weight::new(vec![Rat::new(1, 2), Rat::new(-5, 3)]),
        ] {
            for form in [RealForm::compact(2), RealForm::new(vec![-1, -1]).unwrap()] {
                for i in 0..2 {
                    let mut eta = vec![0i64; 2];
                    eta[i] = spec.m_simple[i];
                    let g = gram_block(&rs, &spec, &lam, &form, &eta).unwrap();
                    assert!(g.matrix[0][0].is_zero(), "{t} i={i} {lam}");
                }
            }
        }
    }
}

#[test]
fn oracle_equivalence_in_small_cases() {
    for (t, m) in [("A2", 9), ("B2", 12), ("G2", 12)] {
        let (rs, spec) = setup(t, 1, m);
        for a in 0..3 {
            for b in 0..3 {
                let lam = w(&[a, b]);
                if !crate::qspec::classical_hypothesis(&lam, &rs, &spec) {
                    continue;
                }
                let r = module_report(&rs, &spec, &lam, &RealForm::compact(2), 40).unwrap();
                assert!(r.classical_character, "{t} {lam}");
                assert!(classical_character_check(&r, &rs).unwrap());
            }
        }
    }
}

#[test]
fn classical_character_check_examples() {
    let (rs, spec) = setup("A1", 1, 10);
    let c = RealForm::compact(1);
    let r4 = module_report(&rs, &spec, &w(&[4]), &c, 40).unwrap();
    assert!(classical_character_check(&r4, &rs).unwrap());
    let r5 = module_report(&rs, &spec, &w(&[5]), &c, 40).unwrap();
    assert!(!classical_character_check(&r5, &rs).unwrap());
    let (rs, spec) = setup("G2", 1, 7);
    let r0 = module_report(&rs, &spec, &w(&[0, 0]), &RealForm::compact(2), 40).unwrap();
    assert!(classical_character_check(&r0, &rs).unwrap());
    let (rs, spec) = setup("A1", 1, 10);
    let rt = module_report(&rs, &spec, &w(&[4]), &c, 2).unwrap();
    assert!(matches!(
        classical_character_check(&rt, &rs),
        Err(Error::Truncated(2))
    ));
}

#[test]
fn shift_decompose_examples() {
    let (rs, spec) = setup("A1", 1, 10);
    match shift_decompose(&w(&[9]), &rs, &spec).unwrap() {
        ShiftDecomposition::Reachable {
            lambda_0,
            lambda_r,
            p,
            form,
        } => {
            assert_eq!(lambda_0, w(&[4]));
            assert_eq!(lambda_r, w(&[5]));
            assert_eq!(p, vec![1]);
            assert_eq!(form.s, vec![-1]);
        }
        other => panic!("{other:?}"),
    }
    match shift_decompose(&w(&[3]), &rs, &spec).unwrap() {
        ShiftDecomposition::Reachable {
            lambda_0, lambda_r, ..
        } => {
            assert_eq!(lambda_0, w(&[3]));
            assert!(lambda_r.is_zero());
        }
        other => panic!("{other:?}"),
    }
    let third = Weight::new(vec![Rat::new(1, 3)]);
    assert_eq!(
        shift_decompose(&third, &rs, &spec).unwrap(),
        ShiftDecomposition::NotReachable
    );
}

#[test]
fn shift_decompose_round_trips() {
    let (rs, spec) = setup("B2", 3, 16);
    for a in -20..20 {
        for b in [-7, 0, 5] {
            let lam = Weight::new(vec![Rat::new(a, 3), Rat::from_integer(b)]);
            if let ShiftDecomposition::Reachable {
                lambda_0, lambda_r, ..
            } = shift_decompose(&lam, &rs, &spec).unwrap()
            {
                assert_eq!(lambda_0.add(&lambda_r), lam);
                for i in 0..2 {
                    let c = lambda_0.coords[i];
                    assert!(
                        c.is_integer()
                            && c >= Rat::from_integer(0)
                            && c < Rat::from_integer(spec.m_simple[i])
                    );
                }
            }
        }
    }
}

#[test]
fn shift_equivalence_examples() {
    let (rs, spec) = setup("A1", 1, 10);
    let r = verify_shift_equivalence(&rs, &spec, &w(&[4]), &[1], 8).unwrap();
    assert!(r.equal);
    assert_eq!(r.form.s, vec![-1]);
    // at height 1 the twisted norm is -[9] = [4]
    let g = gram_block(&rs, &spec, &w(&[9]), &r.form, &[1]).unwrap();
    let g0 = gram_block(&rs, &spec, &w(&[4]), &RealForm::compact(1), &[1]).unwrap();
    assert_eq!(g.matrix, g0.matrix);
    assert!(
        verify_shift_equivalence(&rs, &spec, &w(&[2]), &[0], 8)
            .unwrap()
            .equal
    );

    let (rs, spec) = setup("B2", 1, 6);
    let p = p_from_z(&spec, &[1, 1]).unwrap();
    let r = verify_shift_equivalence(&rs, &spec, &w(&[0, 0]), &p, 6).unwrap();
    assert!(r.equal);
    assert_eq!(r.form.s, vec![1, -1]);
}

#[test]
fn shift_with_wrong_form_is_detected() {
    // the compact form on lambda_0 + lambda_r is not the shifted form
    let (rs, spec) = setup("A1", 1, 10);
    let ctx = GramContext::new(&rs, &spec, &w(&[9]), &RealForm::compact(1)).unwrap();
    let mut wg = WordGram::new(&ctx);
    let (_, g) = wg.block(&[1]);
    let g0 = gram_block(&rs, &spec, &w(&[4]), &RealForm::compact(1), &[1]).unwrap();
    assert_ne!(*g, g0.matrix);
}

#[test]
fn stability_scan_examples() {
    let (rs, spec) = setup("A1", 1, 10);
    let samples: Vec<QRoot> = [12, 14, 16]
        .iter()
        .map(|&m| QRoot::new(1, m).unwrap())
        .collect();
    for lam in [4, 5] {
        let v = character_stability_scan(&rs, &w(&[lam]), &spec, &samples, 40).unwrap();
        assert!(v.iter().all(|s| s.classical && !s.truncated));
    }
    assert!(character_stability_scan(&rs, &w(&[4]), &spec, &[], 40)
        .unwrap()
        .is_empty());
    let bad = [QRoot::new(1, 8).unwrap()];
    assert!(matches!(
        character_stability_scan(&rs, &w(&[4]), &spec, &bad, 40),
        Err(Error::SampleOutOfRange { .. })
    ));
}

#[test]
fn limit_scan_examples() {
    let (rs, _) = setup("A1", 1, 4);
    let base = QRoot::new(1, 4).unwrap();
    let stages = classical_limit_scan(&rs, &w(&[-1]), 0, base, 4, 40, 8).unwrap();
    for st in &stages {
        assert_eq!(st.status, LimitStatus::Unitary, "k={}", st.k);
        assert_eq!(st.lambda_0, w(&[st.k as i64 + 1]));
        assert_eq!(st.compact.as_ref().unwrap().total_dim, st.k + 2);
    }
    let stages = classical_limit_scan(&rs, &w(&[0]), 0, base, 4, 40, 8).unwrap();
    assert!(stages.iter().all(|s| s.status == LimitStatus::Unitary));

    // lambda_{r,k} = -(2 + k) Lambda is integral, so -1/2 never is
    let half = Weight::new(vec![Rat::new(-1, 2)]);
    let stages = classical_limit_scan(&rs, &half, 0, base, 3, 40, 8).unwrap();
    assert!(stages
        .iter()
        .all(|s| matches!(s.status, LimitStatus::Rejected(_))));
    // with base (1,3), lambda_{r,k} = -(3 + 2k)/2 Lambda makes it integral
    let stages = classical_limit_scan(&rs, &half, 0, QRoot::new(1, 3).unwrap(), 3, 40, 8).unwrap();
    assert!(stages.iter().all(|s| s.status == LimitStatus::Unitary));
}
