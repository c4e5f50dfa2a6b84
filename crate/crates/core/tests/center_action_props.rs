use gerbe_core::center_action::{act_on_alcove, interior_point, weyl_element, weyl_element_from};
use gerbe_core::exact::{qf, qi, Q};
use gerbe_core::{GroupData, LieType};
use proptest::prelude::*;

fn types_with_center() -> Vec<LieType> {
    LieType::all_up_to(6)
        .into_iter()
        .filter(|&t| GroupData::new(t).center.order() > 1)
        .collect()
}

fn weights(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((1i64..50, 1i64..50), n).prop_map(|v| v.into_iter().map(|(a, b)| qf(a, b)).collect())
}

fn case() -> impl Strategy<Value = (LieType, Vec<Q>)> {
    prop::sample::select(types_with_center()).prop_flat_map(|t| (Just(t), weights(t.rank + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn w_z_does_not_depend_on_the_interior_point((t, w) in case()) {
        let d = GroupData::new(t);
        let xi = interior_point(&d.rs, &w);
        for z in &d.center.elements {
            prop_assert_eq!(weyl_element_from(&d.rs, z, &xi).unwrap(), weyl_element(&d.rs, z).unwrap());
        }
    }

    #[test]
    fn action_on_alcove_is_the_affine_map((t, w) in case()) {
        let d = GroupData::new(t);
        let actions = gerbe_core::center_action::center_action(&d.rs, &d.center).unwrap();
        let xi = interior_point(&d.rs, &w);
        for a in &actions {
            let moved = act_on_alcove(&d.rs, &a.z, &xi).unwrap();
            prop_assert!(d.rs.in_alcove(&moved));
            prop_assert_eq!(moved, a.apply_affine(&xi));
        }
    }
}

#[test]
fn a1_and_a2_examples() {
    let a1 = GroupData::new("A1".parse().unwrap());
    let z = &a1.center.elements[1];
    assert_eq!(act_on_alcove(&a1.rs, z, &[qi(0)]).unwrap(), vec![qf(1, 2)]);
    assert_eq!(weyl_element(&a1.rs, z).unwrap().word, vec![1]);
    assert!(act_on_alcove(&a1.rs, z, &[qi(1)]).is_err());

    let a2 = GroupData::new("A2".parse().unwrap());
    let actions = gerbe_core::center_action::center_action(&a2.rs, &a2.center).unwrap();
    let rot = actions.iter().find(|a| a.z.node == Some(1)).unwrap();
    assert_eq!(rot.vertex_perm, vec![1, 2, 0]);
    assert_eq!(act_on_alcove(&a2.rs, &rot.z, &[qi(0), qi(0)]).unwrap(), rot.z.rep);
}
