use gerbe_core::centers::{bundled_levels, character_group, h2_u1, LevelTable};
use gerbe_core::exact::{qf, qi, QMat, QVec};
use gerbe_core::lattice::{dual_lattice, invariant_factors_of, quotient_group, Lattice};
use gerbe_core::obstruction::{admits_equivariant_extension, obstruction_order, su_condition};
use gerbe_core::{Family, GroupData, LieType};
use proptest::prelude::*;

fn rational_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    prop::collection::vec(prop::collection::vec((-6i64..=6, 1i64..=4), n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn double_dual_is_the_lattice(entries in rational_matrix(3)) {
        let basis = QMat::from_fn(3, 3, |i, j| qf(entries[i][j].0, entries[i][j].1) + if i == j { qi(7) } else { qi(0) });
        prop_assume!(basis.determinant() != qi(0));
        let l = Lattice::from_basis(basis).unwrap();
        let gram = GroupData::new("A3".parse().unwrap()).rs.gram.clone();
        let dd = dual_lattice(&dual_lattice(&l, &gram).unwrap(), &gram).unwrap();
        prop_assert_eq!(&dd, &l);
        // covol(L) covol(L*) det(G) = 1
        let dual = dual_lattice(&l, &gram).unwrap();
        prop_assert_eq!(l.covolume() * dual.covolume() * gram.determinant(), qi(1));
    }

    #[test]
    fn sublattice_index_is_covolume_ratio(d in prop::collection::vec(1i64..6, 3), off in -3i64..3) {
        let big = Lattice::standard(3);
        let vecs: Vec<QVec> = vec![
            vec![qi(d[0]), qi(off), qi(0)],
            vec![qi(0), qi(d[1]), qi(0)],
            vec![qi(0), qi(0), qi(d[2])],
        ];
        let small = Lattice::from_basis_vectors(&vecs).unwrap();
        let q = quotient_group(&big, &small).unwrap();
        prop_assert_eq!(qi(q.order() as i64), small.covolume() / big.covolume());
    }
}

#[test]
fn quotients_match_abstract_subgroups() {
    for t in LieType::all_up_to(8) {
        let d = GroupData::new(t);
        let coroots = Lattice::standard(d.rs.rank());
        for z in &d.subgroups {
            let q = quotient_group(&z.integral_lattice, &coroots).unwrap();
            assert_eq!(q.invariant_factors, z.invariants.invariant_factors, "{t} {}", z.id);
            assert_eq!(q.order() as usize, z.order());
        }
    }
}

#[test]
fn center_invariants() {
    let cases = [("A5", vec![6]), ("D4", vec![2, 2]), ("D5", vec![4]), ("E6", vec![3]), ("E8", vec![])];
    for (name, inv) in cases {
        let d = GroupData::new(name.parse().unwrap());
        assert_eq!(d.center.group.invariant_factors, inv, "{name}");
    }
    assert_eq!(invariant_factors_of(&[2, 3, 4]), vec![2, 12]);
}

#[test]
fn type_a_levels_and_su_condition() {
    for n in 2..=12u64 {
        let t = LieType::new(Family::A, n as usize - 1).unwrap();
        let d = GroupData::new(t).with_levels(bundled_levels());
        for z in d.subgroups.iter().skip(1) {
            let k = z.order() as u64;
            let su = su_condition(n, k).unwrap();
            if su {
                assert!(z.ell_b <= 2, "SU({n})/Z{k}");
            }
            if z.ell_b == 1 {
                assert!(su, "SU({n})/Z{k}");
            }
            let ell_f = z.ell_f.as_ref().expect("bundled").value;
            assert_eq!(ell_f == z.ell_b, su, "SU({n})/Z{k}");
        }
    }
    // l_b <= 2 alone does not imply the condition.
    let d = GroupData::new("A7".parse().unwrap());
    let z = d.subgroups.iter().find(|z| z.order() == 4).unwrap();
    assert_eq!(z.ell_b, 2);
    assert!(!su_condition(8, 4).unwrap());
}

#[test]
fn characters_separate_points() {
    for t in LieType::all_up_to(6) {
        let d = GroupData::new(t);
        let z = d.full();
        let chars = character_group(&d.rs, z);
        assert_eq!(chars.len(), z.order());
        for e in z.elements.iter().filter(|e| !e.is_identity()) {
            assert!(chars.iter().any(|c| !c.evaluate(&d.rs, &e.rep).is_zero()), "{t}");
        }
        assert!(chars[0].is_trivial_on(&d.rs, z));
        assert!(chars[1..].iter().all(|c| !c.is_trivial_on(&d.rs, z)));
    }
}

#[test]
fn a1_characters() {
    let d = GroupData::new("A1".parse().unwrap());
    let chars = character_group(&d.rs, d.full());
    let half = chars[1].evaluate(&d.rs, &[qf(1, 2)]);
    assert_eq!(half.value(), &qf(1, 2));
}

#[test]
fn h2_sanity_bound() {
    for t in LieType::all_up_to(8) {
        let d = GroupData::new(t);
        for z in &d.subgroups {
            let h = h2_u1(z).unwrap();
            let r = z.invariants.invariant_factors.len() as u32;
            let bound = (z.order() as u64).pow(r * r.saturating_sub(1) / 2);
            assert_eq!(bound % h.order(), 0, "{t} {}", z.id);
        }
    }
}

#[test]
fn obstruction_matches_divisibility() {
    let d4 = GroupData::new("D4".parse().unwrap());
    let z = d4.full();
    assert_eq!(z.ell_b, 2);
    for l in 1..=8 {
        assert_eq!(admits_equivariant_extension(z, l), l % 2 == 0);
        assert_eq!(obstruction_order(z, l), if l % 2 == 0 { 1 } else { 2 });
    }
}

#[test]
fn level_table_validation() {
    assert!(bundled_levels().len() > 50);
    assert!(LevelTable::parse("A 1 1 2 literature\n").is_ok());
    for bad in [
        "A 1 1 3 literature",
        "A 2 1 2 literature",
        "A 1 5 1 literature",
        "Q 1 1 1 literature",
        "A 1 1",
        "A 1 1 2 x\nA 1 1 2 y",
    ] {
        assert!(LevelTable::parse(bad).is_err(), "{bad}");
    }
}
