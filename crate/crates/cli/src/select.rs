//! Subgroup selectors: `trivial`, `full`, `order:<d>` (cyclic), `id:<n>`,
//! `name:<classical name>`, or `gens:<c_1,..,c_r>[;...]` with generators given
//! by coordinates on the fundamental coweights.

use std::collections::BTreeSet;

use gerbe_core::exact::{self, qi};
use gerbe_core::obstruction::classical_name;
use gerbe_core::GroupData;

pub fn resolve(data: &GroupData, selector: &str) -> Result<usize, String> {
    let subs = &data.subgroups;
    let sel = selector.trim();
    if sel.eq_ignore_ascii_case("trivial") {
        return Ok(0);
    }
    if sel.eq_ignore_ascii_case("full") {
        return Ok(subs.len() - 1);
    }
    if let Some(rest) = sel.strip_prefix("order:") {
        let d: usize = rest.parse().map_err(|_| format!("bad order {rest:?}"))?;
        let hits: Vec<usize> = subs
            .iter()
            .filter(|z| z.order() == d && z.invariants.invariant_factors.len() <= 1)
            .map(|z| z.id)
            .collect();
        return match hits[..] {
            [id] => Ok(id),
            [] => Err(format!("no cyclic subgroup of order {d}")),
            _ => Err(format!("{} cyclic subgroups of order {d} (ids {hits:?}); use gens: or id:", hits.len())),
        };
    }
    if let Some(rest) = sel.strip_prefix("id:") {
        let id: usize = rest.parse().map_err(|_| format!("bad id {rest:?}"))?;
        return (id < subs.len())
            .then_some(id)
            .ok_or_else(|| format!("subgroup id {id} out of range (0..{})", subs.len()));
    }
    if let Some(rest) = sel.strip_prefix("name:") {
        let hits: Vec<usize> = subs
            .iter()
            .filter(|z| classical_name(data, z) == rest)
            .map(|z| z.id)
            .collect();
        return match hits[..] {
            [id] => Ok(id),
            [] => Err(format!("no subgroup named {rest}")),
            _ => Err(format!("{rest} names subgroups {hits:?}; use gens: or id:")),
        };
    }
    if let Some(rest) = sel.strip_prefix("gens:") {
        return generated(data, rest);
    }
    Err(format!(
        "unrecognized subgroup selector {sel:?}; expected trivial, full, order:<d>, id:<n>, name:<group> or gens:<coords>"
    ))
}

fn generated(data: &GroupData, spec: &str) -> Result<usize, String> {
    let r = data.rs.rank();
    let mut members = BTreeSet::from([0usize]);
    for gen in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let coords: Vec<i64> = gen
            .split(',')
            .map(|c| c.trim().parse().map_err(|_| format!("bad coordinate {c:?}")))
            .collect::<Result<_, _>>()?;
        if coords.len() != r {
            return Err(format!("generator {gen:?} needs {r} coordinates"));
        }
        let v = coords
            .iter()
            .zip(&data.rs.fundamental_coweights)
            .fold(exact::zero_vec(r), |acc, (&c, w)| exact::add(&acc, &exact::scale(&qi(c), w)));
        let g = data.center.index_of_vector(&v);
        let mut x = g;
        while members.insert(x) {
            x = data.center.mul(x, g);
        }
    }
    // Close under products of the cyclic pieces.
    loop {
        let prods: BTreeSet<usize> = members
            .iter()
            .flat_map(|&a| members.iter().map(move |&b| (a, b)))
            .map(|(a, b)| data.center.mul(a, b))
            .collect();
        if prods.is_subset(&members) {
            break;
        }
        members.extend(prods);
    }
    let members: Vec<usize> = members.into_iter().collect();
    data.subgroups
        .iter()
        .find(|z| z.members == members)
        .map(|z| z.id)
        .ok_or_else(|| "generated set is not a listed subgroup".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        let d4 = GroupData::new("D4".parse().unwrap());
        assert_eq!(resolve(&d4, "trivial"), Ok(0));
        assert_eq!(resolve(&d4, "full"), Ok(4));
        assert!(resolve(&d4, "order:2").unwrap_err().contains("3 cyclic"));
        assert_eq!(resolve(&d4, "name:PO(8)"), Ok(4));
        let so = resolve(&d4, "name:SO(8)").unwrap();
        assert_eq!(resolve(&d4, "gens:1,0,0,0"), Ok(so));
        assert_eq!(resolve(&d4, "gens:1,0,0,0;0,0,1,0"), Ok(4));
        assert!(resolve(&d4, "gens:1,0").is_err());
        assert!(resolve(&d4, "id:9").is_err());
        assert!(resolve(&d4, "half").is_err());
        let a5 = GroupData::new("A5".parse().unwrap());
        assert_eq!(a5.subgroups[resolve(&a5, "order:3").unwrap()].order(), 3);
    }
}
