use gerbe_core::cohomology::{coboundary, torsion_associator, GroupTable};
use gerbe_core::exact::{self, qf, qi, QVec};
use gerbe_core::gerbe_data::{gerbe_multiplication_defect, stratum, GerbeContext};
use gerbe_core::{GroupData, LieType, PhaseExponent};
use proptest::prelude::*;

#[test]
fn descent_matches_divisibility_for_all_small_groups() {
    for t in LieType::all_up_to(5) {
        let d = GroupData::new(t);
        for z in &d.subgroups {
            let ctx = GerbeContext::new(&d.rs, &d.center, z).unwrap();
            for l in 1..=2 * z.ell_b {
                assert_eq!(ctx.descends_at(l), l % z.ell_b == 0, "{t} subgroup {} level {l}", z.id);
            }
        }
    }
}

#[test]
fn descent_residual_rejects_bad_input() {
    let d = GroupData::new("A2".parse().unwrap());
    let z = d.full();
    let ctx = GerbeContext::new(&d.rs, &d.center, z).unwrap();
    assert_eq!(ctx.orbit_of_zero().len(), 3);
    let zeta = z.elements[1].rep.clone();
    assert!(!ctx.descent_residual(1, &zeta, 1).unwrap().is_zero());
    assert!(ctx.descent_residual(3, &zeta, 1).unwrap().is_zero());
    assert!(ctx.descent_residual(1, &[qf(1, 5), qi(0)], 0).is_err());
    let trivial = GerbeContext::new(&d.rs, &d.center, d.trivial()).unwrap();
    assert!(trivial.descent_residual(1, &[qi(1), qi(0)], 1).is_err());
}

#[test]
fn equivariance_defect_is_the_vertex_translation_phase() {
    for name in ["A1", "A3", "B3", "C3", "D4", "E6"] {
        let d = GroupData::new(name.parse().unwrap());
        let z = d.full();
        let ctx = GerbeContext::new(&d.rs, &d.center, z).unwrap();
        let basis = z.integral_lattice.basis_vectors();
        let r = d.rs.rank();
        for l in [1, z.ell_b] {
            for (a, act) in ctx.actions.iter().enumerate() {
                let mu0z = act.apply_affine(&exact::zero_vec(r));
                for j in 0..=r {
                    for k in 0..=r {
                        for z2 in &basis {
                            for z3 in &basis {
                                let got = ctx.equivariance_defect(l, a, j, k, z2, z3).unwrap();
                                let diff: QVec = exact::sub(z2, z3);
                                let want = PhaseExponent::new(-qi(l as i64) * d.rs.pair(&mu0z, &diff));
                                assert_eq!(got, want, "{name} level {l}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lifts_are_well_defined_and_twists_form_a_torsor() {
    for name in ["A1", "A3", "D4", "E7"] {
        let d = GroupData::new(name.parse().unwrap());
        let z = d.full();
        let ctx = GerbeContext::new(&d.rs, &d.center, z).unwrap();
        let r = d.rs.rank();
        for i in 0..=r {
            for j in 0..=r {
                assert!(ctx.z2_lift_welldefined(z.ell_b, i, j));
            }
        }
        let classes = ctx.equivariant_classes(z.ell_b).unwrap();
        assert_eq!(classes.len(), z.order());
        assert!(ctx.equivariant_classes(z.ell_b + 1).is_err() || z.ell_b == 1);
    }
}

#[test]
fn strata_examples() {
    let d = GroupData::new("A2".parse().unwrap());
    let s = stratum(&d.rs, &[0].into()).unwrap();
    assert_eq!(s.roots.len(), 6);
    assert_eq!(s.z_j.free_rank, 0);
    let s = stratum(&d.rs, &[0, 1, 2].into()).unwrap();
    assert_eq!(s.roots.len(), 0);
    assert_eq!(s.z_j.free_rank, 2);
    let s = stratum(&d.rs, &[1, 2].into()).unwrap();
    assert_eq!(s.roots.len(), 2);
    assert_eq!(s.z_j.free_rank, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_defect_is_minus_the_associator(
        f in prop::collection::vec(0i64..16, 3),
        gs in prop::array::uniform4(0usize..4),
    ) {
        let g = GroupTable::product_of_cyclic(&[2, 2]);
        let mut vals = vec![PhaseExponent::zero()];
        vals.extend(f.iter().map(|&x| PhaseExponent::new(qf(x, 16))));
        let mut alpha = coboundary(&g, &vals);
        // Break the cocycle condition on one entry.
        alpha[1][2] = alpha[1][2].clone() + PhaseExponent::new(qf(1, 4));
        let defect = gerbe_multiplication_defect(&g, &alpha, gs).unwrap();
        let diff = |x: usize, y: usize| g.mul(gs[y], g.inverse(gs[x]));
        let assoc = torsion_associator(&g, &alpha, diff(0, 1), diff(1, 2), diff(2, 3)).unwrap();
        prop_assert_eq!(defect, -assoc);
    }
}
