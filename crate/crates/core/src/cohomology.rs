//! Degree-2 cohomology of finite abelian groups with `U(1)` coefficients and
//! trivial action, by lattice quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{GerbeError, Result};
use crate::exact::{qi, Q};
use crate::intmat::{smith_normal_form, ZMat};
use crate::lattice::{quotient_group, FiniteAbelianGroup, Lattice};
use crate::phase::PhaseExponent;

/// Largest group order accepted by [`h2_u1`].
pub const MAX_H2_ORDER: usize = 16;

/// Multiplication table of a finite abelian group; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Panics unless `mul` has identity 0 and is a group table.
    pub fn new(mul: Vec<Vec<usize>>) -> Self {
        let n = mul.len();
        assert!(n > 0 && mul.iter().all(|r| r.len() == n));
        assert!((0..n).all(|a| mul[0][a] == a && mul[a][0] == a));
        GroupTable { mul }
    }

    /// `Z/d_1 x Z/d_2 x ...`, elements in lexicographic coordinate order.
    pub fn product_of_cyclic(factors: &[u64]) -> Self {
        let mut elems: Vec<Vec<u64>> = vec![Vec::new()];
        for &d in factors {
            elems = elems
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        let index = |v: &[u64]| elems.iter().position(|e| e == v).expect("closed");
        let mul = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let s: Vec<u64> = a
                            .iter()
                            .zip(b)
                            .zip(factors)
                            .map(|((x, y), d)| (x + y) % d)
                            .collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(mul)
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul[a][b] == 0)
            .expect("group element has an inverse")
    }
}

/// A 2-cochain `Z x Z -> U(1)`, as phase exponents indexed by group elements.
pub type Cochain2 = Vec<Vec<PhaseExponent>>;

pub fn zero_cochain(n: usize) -> Cochain2 {
    vec![vec![PhaseExponent::zero(); n]; n]
}

pub fn is_normalized(g: &GroupTable, alpha: &Cochain2) -> bool {
    (0..g.order()).all(|a| alpha[0][a].is_zero() && alpha[a][0].is_zero())
}

/// `(d alpha)(a, b, c) = alpha(b, c) - alpha(ab, c) + alpha(a, bc) - alpha(a, b)`.
pub fn torsion_associator(
    g: &GroupTable,
    alpha: &Cochain2,
    a: usize,
    b: usize,
    c: usize,
) -> Result<PhaseExponent> {
    if alpha.len() != g.order() || alpha.iter().any(|r| r.len() != g.order()) {
        return Err(GerbeError::DimensionMismatch {
            expected: g.order(),
            got: alpha.len(),
        });
    }
    if !is_normalized(g, alpha) {
        return Err(GerbeError::InvalidInput("2-cochain is not normalized".into()));
    }
    Ok(alpha[b][c].clone() - alpha[g.mul(a, b)][c].clone() + alpha[a][g.mul(b, c)].clone()
        - alpha[a][b].clone())
}

pub fn is_cocycle(g: &GroupTable, alpha: &Cochain2) -> Result<bool> {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !torsion_associator(g, alpha, a, b, c)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `(d f)(a, b) = f(a) + f(b) - f(ab)`.
pub fn coboundary(g: &GroupTable, f: &[PhaseExponent]) -> Cochain2 {
    let n = g.order();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| f[a].clone() + f[b].clone() - f[g.mul(a, b)].clone())
                .collect()
        })
        .collect()
}

/// `H^2(Z, U(1))` together with cocycles representing its generators.
#[derive(Clone, Debug)]
pub struct H2 {
    pub group: FiniteAbelianGroup,
    pub generators: Vec<Cochain2>,
    table: GroupTable,
}

impl H2 {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    /// Class of a normalized cocycle with values in `(1/|Z|) Z / Z`.
    pub fn class_of(&self, alpha: &Cochain2) -> Result<Vec<u64>> {
        let n = self.table.order();
        if !is_normalized(&self.table, alpha) || !is_cocycle(&self.table, alpha)? {
            return Err(GerbeError::InvalidInput("not a normalized 2-cocycle".into()));
        }
        let big_n = qi((n * n) as i64);
        let mut x = Vec::new();
        for a in 1..n {
            for b in 1..n {
                let v = alpha[a][b].value() * &big_n;
                if !(v.clone() / qi(n as i64)).is_integer() {
                    return Err(GerbeError::InvalidInput(
                        "cocycle values must lie in (1/|Z|)Z".into(),
                    ));
                }
                x.push(v);
            }
        }
        Ok(self.group.coordinates(&x))
    }
}

/// Normalized cochains are indexed by pairs of non-identity elements.
fn pair_index(n: usize, a: usize, b: usize) -> usize {
    (a - 1) * (n - 1) + (b - 1)
}

/// A basis (as columns) of `{x in Z^cols : a x = 0 mod m}`.
fn kernel_mod(a: &ZMat, m: &BigInt) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (0..a.cols)
        .map(|j| {
            let scale = if j < snf.rank() {
                m / snf.diagonal[j].gcd(m)
            } else {
                BigInt::from(1)
            };
            snf.right.column(j).into_iter().map(|x| x * &scale).collect()
        })
        .collect()
}

/// `H^2(Z, U(1))` for trivial action. Normalized cocycles take values in
/// `(1/n) Z / Z`, `n = |Z|`; coboundaries of 1-cochains with values in
/// `(1/n^2) Z / Z` account for all coboundaries landing there. Scaling by `n^2`
/// turns both into integer lattices containing `n^2 Z^P`.
pub fn h2_u1(g: &GroupTable) -> Result<H2> {
    let n = g.order();
    if n > MAX_H2_ORDER {
        return Err(GerbeError::GroupTooLarge(n));
    }
    if n == 1 {
        return Ok(H2 {
            group: FiniteAbelianGroup::trivial(0),
            generators: Vec::new(),
            table: g.clone(),
        });
    }
    let m = n - 1;
    let p = m * m;
    let nn = BigInt::from(n);
    let big_n = BigInt::from(n * n);

    // d2: normalized 2-cochains -> normalized 3-cochains.
    let mut d2 = ZMat::zeros(m * m * m, p);
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                let row = ((a - 1) * m + (b - 1)) * m + (c - 1);
                let mut bump = |x: usize, y: usize, s: i64| {
                    if x != 0 && y != 0 {
                        d2[(row, pair_index(n, x, y))] += s;
                    }
                };
                bump(b, c, 1);
                bump(g.mul(a, b), c, -1);
                bump(a, g.mul(b, c), 1);
                bump(a, b, -1);
            }
        }
    }
    // d1: normalized 1-cochains -> normalized 2-cochains.
    let mut d1 = ZMat::zeros(p, m);
    for a in 1..n {
        for b in 1..n {
            let row = pair_index(n, a, b);
            d1[(row, a - 1)] += 1;
            d1[(row, b - 1)] += 1;
            let ab = g.mul(a, b);
            if ab != 0 {
                d1[(row, ab - 1)] -= 1;
            }
        }
    }

    let to_q = |v: &[BigInt]| -> Vec<Q> { v.iter().map(|x| Q::from_integer(x.clone())).collect() };
    let padding: Vec<Vec<Q>> = (0..p)
        .map(|k| {
            let mut e = vec![qi(0); p];
            e[k] = Q::from_integer(big_n.clone());
            e
        })
        .collect();

    let mut cocycle_gens: Vec<Vec<Q>> = kernel_mod(&d2, &nn)
        .iter()
        .map(|col| to_q(&col.iter().map(|x| x * &nn).collect::<Vec<_>>()))
        .collect();
    cocycle_gens.extend(padding.iter().cloned());

    let mut coboundary_gens: Vec<Vec<Q>> = kernel_mod(&d1, &nn)
        .iter()
        .map(|col| {
            let y = ZMat::from_fn(m, 1, |i, _| col[i].clone());
            to_q(&d1.mul(&y).column(0))
        })
        .collect();
    coboundary_gens.extend(padding);

    let cocycles = Lattice::from_generators(&cocycle_gens, p)?;
    let coboundaries = Lattice::from_generators(&coboundary_gens, p)?;
    let group = quotient_group(&cocycles, &coboundaries)?;

    let generators = group
        .generators
        .iter()
        .map(|x| {
            let mut alpha = zero_cochain(n);
            for a in 1..n {
                for b in 1..n {
                    alpha[a][b] = PhaseExponent::new(
                        x[pair_index(n, a, b)].clone() / Q::from_integer(big_n.clone()),
                    );
                }
            }
            alpha
        })
        .collect();
    debug_assert!(group.order().to_u64().is_some());
    Ok(H2 {
        group,
        generators,
        table: g.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    #[test]
    fn klein_four_has_h2_of_order_two() {
        let g = GroupTable::product_of_cyclic(&[2, 2]);
        let h = h2_u1(&g).unwrap();
        assert_eq!(h.group.invariant_factors, vec![2]);
        let rep = &h.generators[0];
        assert!(is_cocycle(&g, rep).unwrap());
        assert_eq!(h.class_of(rep).unwrap(), vec![1]);
    }

    #[test]
    fn cyclic_groups_have_trivial_h2() {
        for n in 1..=9 {
            let g = GroupTable::product_of_cyclic(&[n]);
            assert_eq!(h2_u1(&g).unwrap().order(), 1, "Z/{n}");
        }
    }

    #[test]
    fn too_large_rejected() {
        let g = GroupTable::product_of_cyclic(&[17]);
        assert_eq!(h2_u1(&g).unwrap_err(), GerbeError::GroupTooLarge(17));
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let g = GroupTable::product_of_cyclic(&[2, 2]);
        let f: Vec<PhaseExponent> = [0, 1, 3, 5]
            .iter()
            .map(|&k| PhaseExponent::new(qf(k, 8)))
            .collect();
        let mut f = f;
        f[0] = PhaseExponent::zero();
        assert!(is_cocycle(&g, &coboundary(&g, &f)).unwrap());
    }

    #[test]
    fn non_normalized_rejected() {
        let g = GroupTable::product_of_cyclic(&[2]);
        let mut alpha = zero_cochain(2);
        alpha[0][1] = PhaseExponent::new(qf(1, 2));
        assert!(torsion_associator(&g, &alpha, 1, 1, 1).is_err());
    }
}
