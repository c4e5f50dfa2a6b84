//! The Tits extension of the Weyl group by the 2-torsion of the maximal torus.
//!
//! An element is a pair `(t, w)` standing for `exp(pi i t) sigma_w`, where
//! `t` lies in `F_2^r` on the simple coroot basis and `sigma_w` is the product of
//! the generators `sigma_i` along a reduced word of `w`. The relations used are
//! `sigma_i^2 = exp(pi i alpha_i^vee)` and `sigma_w t sigma_w^{-1} = w(t)`.

use std::fmt;

use serde::Serialize;

use crate::center_action::AlcoveAutomorphism;
use crate::centers::Center;
use crate::error::{GerbeError, Result};
use crate::exact::{qf, QVec};
use crate::rootsys::RootSystem;
use crate::weyl::{self, IntMatrix, WeylElement};

/// An element of `T[2] = (1/2 Lambda_coroot) / Lambda_coroot`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusTwoTorsion(pub Vec<u8>);

impl TorusTwoTorsion {
    pub fn zero(r: usize) -> Self {
        TorusTwoTorsion(vec![0; r])
    }

    pub fn unit(r: usize, i: usize) -> Self {
        let mut v = vec![0; r];
        v[i] = 1;
        TorusTwoTorsion(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &TorusTwoTorsion) -> TorusTwoTorsion {
        TorusTwoTorsion(self.0.iter().zip(&o.0).map(|(a, b)| a ^ b).collect())
    }

    /// The Weyl action, reduced mod 2.
    pub fn transform(&self, m: &IntMatrix) -> TorusTwoTorsion {
        let v: Vec<i64> = self.0.iter().map(|&x| x as i64).collect();
        TorusTwoTorsion(m.apply_int(&v).iter().map(|x| x.rem_euclid(2) as u8).collect())
    }

    /// The representative `1/2 sum t_k alpha_k^vee` with entries in `{0, 1/2}`.
    pub fn half_coroot(&self) -> QVec {
        self.0.iter().map(|&x| qf(x as i64, 2)).collect()
    }
}

impl fmt::Debug for TorusTwoTorsion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TitsElement {
    pub t: TorusTwoTorsion,
    pub w: WeylElement,
}

impl TitsElement {
    pub fn identity(r: usize) -> Self {
        TitsElement {
            t: TorusTwoTorsion::zero(r),
            w: WeylElement::identity(r),
        }
    }

    pub fn torus(t: TorusTwoTorsion) -> Self {
        let r = t.0.len();
        TitsElement {
            t,
            w: WeylElement::identity(r),
        }
    }
}

/// The canonical lift `(0, w)`.
pub fn tits_lift(w: &WeylElement) -> TitsElement {
    TitsElement {
        t: TorusTwoTorsion::zero(w.matrix.dim()),
        w: w.clone(),
    }
}

/// The lift `sigma_{i_1} ... sigma_{i_k}` of a word, which must be reduced.
pub fn tits_lift_word(rs: &RootSystem, word: &[usize]) -> Result<TitsElement> {
    if let Some(&bad) = word.iter().find(|&&i| i == 0 || i > rs.rank()) {
        return Err(GerbeError::InvalidInput(format!("node {bad} out of range")));
    }
    let w = WeylElement::from_word(rs, word);
    if weyl::length(rs, &w.matrix) != word.len() {
        return Err(GerbeError::InvalidInput(format!("word {word:?} is not reduced")));
    }
    Ok(word.iter().fold(TitsElement::identity(rs.rank()), |acc, &i| {
        append_generator(rs, &acc, i)
    }))
}

/// `(t, w) sigma_i`.
fn append_generator(rs: &RootSystem, a: &TitsElement, i: usize) -> TitsElement {
    let si = rs.simple_reflection(i);
    let m = a.w.matrix.mul(&si);
    if a.w.keeps_positive(i) {
        // l(w s_i) > l(w): sigma_w sigma_i = sigma_{w s_i}.
        TitsElement {
            t: a.t.clone(),
            w: WeylElement::from_matrix(rs, m),
        }
    } else {
        // w = w' s_i with w' = w s_i: sigma_w sigma_i = sigma_{w'} sigma_i^2 = w'(m_i) sigma_{w'}.
        let extra = TorusTwoTorsion::unit(rs.rank(), i - 1).transform(&m);
        TitsElement {
            t: a.t.add(&extra),
            w: WeylElement::from_matrix(rs, m),
        }
    }
}

pub fn tits_multiply(rs: &RootSystem, a: &TitsElement, b: &TitsElement) -> TitsElement {
    // t_a sigma_{w_a} t_b sigma_{w_b} = (t_a + w_a(t_b)) sigma_{w_a} sigma_{w_b}.
    let start = TitsElement {
        t: a.t.add(&b.t.transform(&a.w.matrix)),
        w: a.w.clone(),
    };
    b.w
        .word
        .iter()
        .fold(start, |acc, &i| append_generator(rs, &acc, i))
}

pub fn tits_inverse(rs: &RootSystem, a: &TitsElement) -> TitsElement {
    let w_inv = a.w.inverse(rs);
    let s = tits_multiply(rs, a, &tits_lift(&w_inv));
    debug_assert!(s.w.is_identity());
    TitsElement {
        t: s.t.transform(&w_inv.matrix),
        w: w_inv,
    }
}

/// `c_{z,z'}` and its half-coroot representative `xi_{z,z'}`.
#[derive(Clone, Debug, Serialize)]
pub struct CenterCocycle {
    pub c: TorusTwoTorsion,
    #[serde(serialize_with = "crate::exact::serialize_qvec")]
    pub xi: QVec,
}

/// `c_{z,z'} = w~_z w~_z' w~_{zz'}^{-1}` for center indices `a`, `b`.
pub fn center_cocycle(
    rs: &RootSystem,
    center: &Center,
    actions: &[AlcoveAutomorphism],
    a: usize,
    b: usize,
) -> Result<CenterCocycle> {
    let ab = center.mul(a, b);
    let prod = tits_multiply(
        rs,
        &tits_multiply(rs, &tits_lift(&actions[a].w_z), &tits_lift(&actions[b].w_z)),
        &tits_inverse(rs, &tits_lift(&actions[ab].w_z)),
    );
    if !prod.w.is_identity() {
        return Err(GerbeError::Internal(format!(
            "Weyl part of c for center elements {a}, {b} is not the identity"
        )));
    }
    Ok(CenterCocycle {
        xi: prod.t.half_coroot(),
        c: prod.t,
    })
}

/// The full table `c[a][b]` over center indices.
pub fn cocycle_table(
    rs: &RootSystem,
    center: &Center,
    actions: &[AlcoveAutomorphism],
) -> Result<Vec<Vec<CenterCocycle>>> {
    (0..center.order())
        .map(|a| {
            (0..center.order())
                .map(|b| center_cocycle(rs, center, actions, a, b))
                .collect()
        })
        .collect()
}

/// `w_z(c_{z',z''}) + c_{z,z'z''} = c_{z,z'} + c_{zz',z''}` for all triples.
pub fn twisted_cocycle_identity(
    center: &Center,
    actions: &[AlcoveAutomorphism],
    table: &[Vec<CenterCocycle>],
) -> bool {
    let n = center.order();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let lhs = table[b][c]
                    .c
                    .transform(&actions[a].w_z.matrix)
                    .add(&table[a][center.mul(b, c)].c);
                let rhs = table[a][b].c.add(&table[center.mul(a, b)][c].c);
                lhs == rhs
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center_action::center_action;
    use crate::centers::GroupData;

    #[test]
    fn a1_square_is_minus_one() {
        let rs = RootSystem::new("A1".parse().unwrap());
        let s = tits_lift_word(&rs, &[1]).unwrap();
        let sq = tits_multiply(&rs, &s, &s);
        assert!(sq.w.is_identity());
        assert_eq!(sq.t, TorusTwoTorsion(vec![1]));
        assert!(tits_lift_word(&rs, &[1, 1]).is_err());
    }

    #[test]
    fn a2_braid_words_agree() {
        let rs = RootSystem::new("A2".parse().unwrap());
        assert_eq!(
            tits_lift_word(&rs, &[1, 2, 1]).unwrap(),
            tits_lift_word(&rs, &[2, 1, 2]).unwrap()
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let rs = RootSystem::new("B3".parse().unwrap());
        let a = tits_lift_word(&rs, &[1, 2, 3, 2]).unwrap();
        let a = tits_multiply(&rs, &TitsElement::torus(TorusTwoTorsion(vec![1, 0, 1])), &a);
        let p = tits_multiply(&rs, &a, &tits_inverse(&rs, &a));
        assert_eq!(p, TitsElement::identity(3));
    }

    #[test]
    fn d4_cocycle_table() {
        let d = GroupData::new("D4".parse().unwrap());
        let actions = center_action(&d.rs, &d.center).unwrap();
        let table = cocycle_table(&d.rs, &d.center, &actions).unwrap();
        assert!(table[0].iter().all(|c| c.c.is_zero()));
        assert!(twisted_cocycle_identity(&d.center, &actions, &table));
    }
}
