use gerbe_core::forms_numeric::{
    check_cocycle, eval_eta, eval_omega, integrate_eta_rank1, partial_omega, Mat, NumericsConfig, UnitaryGroup,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(n: usize, seed: u64) -> (UnitaryGroup, ChaCha8Rng) {
    (UnitaryGroup::new(n), ChaCha8Rng::seed_from_u64(seed))
}

fn tangent_at(grp: &UnitaryGroup, g: &Mat, c: &[f64]) -> Mat {
    g * grp.algebra_element(c)
}

fn coeffs(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, d)
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-12 * scale.max(1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eta_is_alternating_and_trilinear(seed in any::<u64>(), a in coeffs(8), b in coeffs(8), c in coeffs(8), e in coeffs(8), s in -3.0f64..3.0) {
        let (grp, mut rng) = setup(3, seed);
        let g = grp.random_point(&mut rng);
        let [va, vb, vc, ve] = [&a, &b, &c, &e].map(|x| tangent_at(&grp, &g, x));
        let base = eval_eta(&grp, &g, [&va, &vb, &vc]);
        let scale = base.abs() + 1.0;
        prop_assert!(close(eval_eta(&grp, &g, [&vb, &vc, &va]), base, scale));
        prop_assert!(close(eval_eta(&grp, &g, [&vc, &vb, &va]), -base, scale));
        prop_assert!(close(eval_eta(&grp, &g, [&va, &vb, &va]), 0.0, scale));
        let combo = &va * Complex64::new(s, 0.0) + &ve;
        let lhs = eval_eta(&grp, &g, [&combo, &vb, &vc]);
        let rhs = s * base + eval_eta(&grp, &g, [&ve, &vb, &vc]);
        prop_assert!(close(lhs, rhs, scale * (1.0 + s.abs())));
    }

    #[test]
    fn eta_is_conjugation_invariant(seed in any::<u64>(), a in coeffs(3), b in coeffs(3), c in coeffs(3)) {
        let (grp, mut rng) = setup(2, seed);
        let x = grp.random_point(&mut rng);
        let h = grp.random_point(&mut rng);
        let hi = h.adjoint();
        let vs = [&a, &b, &c].map(|k| tangent_at(&grp, &x, k));
        let moved = vs.clone().map(|v| &h * v * &hi);
        let lhs = eval_eta(&grp, &(&h * &x * &hi), [&moved[0], &moved[1], &moved[2]]);
        let rhs = eval_eta(&grp, &x, [&vs[0], &vs[1], &vs[2]]);
        prop_assert!(close(lhs, rhs, rhs.abs() + 1.0));
    }

    #[test]
    fn omega_is_alternating_and_bilinear(seed in any::<u64>(), a in coeffs(6), b in coeffs(6), e in coeffs(6), s in -3.0f64..3.0) {
        let (grp, mut rng) = setup(2, seed);
        let g = grp.random_point(&mut rng);
        let x = grp.random_point(&mut rng);
        let t = |c: &[f64]| vec![tangent_at(&grp, &g, &c[..3]), tangent_at(&grp, &x, &c[3..])];
        let (u, v, w) = (t(&a), t(&b), t(&e));
        let base = eval_omega(&grp, &g, &x, &u, &v);
        let scale = base.abs() + 1.0;
        prop_assert!(close(eval_omega(&grp, &g, &x, &v, &u), -base, scale));
        let combo: Vec<Mat> = u.iter().zip(&w).map(|(p, q)| p * Complex64::new(s, 0.0) + q).collect();
        let lhs = eval_omega(&grp, &g, &x, &combo, &v);
        let rhs = s * base + eval_omega(&grp, &g, &x, &w, &v);
        prop_assert!(close(lhs, rhs, scale * (1.0 + s.abs())));
    }

    #[test]
    fn simplicial_identity_holds_pointwise(seed in any::<u64>(), a in coeffs(24), b in coeffs(24)) {
        let (grp, mut rng) = setup(3, seed);
        let p: Vec<Mat> = (0..3).map(|_| grp.random_point(&mut rng)).collect();
        let t = |c: &[f64]| -> Vec<Mat> { (0..3).map(|k| tangent_at(&grp, &p[k], &c[8 * k..8 * k + 8])).collect() };
        let (res, scale) = partial_omega(&grp, &p, &t(&a), &t(&b), 0.0);
        prop_assert!(res.abs() <= 1e-10 * scale.max(1e-12));
    }
}

#[test]
fn sign_is_stable_across_groups_and_seeds() {
    let mut signs = Vec::new();
    for seed in [42, 7] {
        for n in [2, 3] {
            let rep = check_cocycle(
                &UnitaryGroup::new(n),
                &NumericsConfig {
                    seed,
                    samples: 10,
                    ..Default::default()
                },
            );
            assert!(rep.passed, "{rep:?}");
            signs.push(rep.sign);
        }
    }
    assert!(signs.iter().all(|&s| s == signs[0]), "{signs:?}");
}

#[test]
fn reports_are_reproducible() {
    let cfg = NumericsConfig {
        samples: 4,
        ..Default::default()
    };
    let grp = UnitaryGroup::new(2);
    let a = serde_json::to_string(&check_cocycle(&grp, &cfg)).unwrap();
    let b = serde_json::to_string(&check_cocycle(&grp, &cfg)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn quadrature_converges() {
    let coarse = integrate_eta_rank1(32).unwrap();
    let fine = integrate_eta_rank1(64).unwrap();
    assert!((coarse - fine).abs() < 1e-3, "{coarse} vs {fine}");
    assert!((fine.abs() - 1.0).abs() < 1e-2);
}
