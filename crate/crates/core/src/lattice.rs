//! Full-rank lattices in `Q^r`, duals, membership, and finite quotients via the
//! Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{GerbeError, Result};
use crate::exact::{self, QMat, QVec, Q};
use crate::intmat::{hermite_rows, smith_normal_form, ZMat};

/// A full-rank lattice; basis vectors are the columns of `basis`.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: QMat,
}

impl Lattice {
    pub fn from_basis(basis: QMat) -> Result<Self> {
        if basis.nrows() != basis.ncols() {
            return Err(GerbeError::DimensionMismatch {
                expected: basis.nrows(),
                got: basis.ncols(),
            });
        }
        if basis.determinant().is_zero() {
            return Err(GerbeError::InfiniteIndex);
        }
        Ok(Lattice { basis })
    }

    pub fn from_basis_vectors(vectors: &[QVec]) -> Result<Self> {
        Self::from_basis(QMat::from_columns(vectors))
    }

    /// The standard lattice `Z^r`.
    pub fn standard(r: usize) -> Self {
        Lattice {
            basis: QMat::identity(r),
        }
    }

    /// The lattice spanned by `gens` in `Q^dim`, with a Hermite-reduced basis.
    pub fn from_generators(gens: &[QVec], dim: usize) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(GerbeError::DimensionMismatch {
                expected: dim,
                got: g.len(),
            });
        }
        let rows = hermite_of(gens, dim);
        if rows.len() < dim {
            return Err(GerbeError::InfiniteIndex);
        }
        Self::from_basis(QMat::from_columns(&rows))
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVec> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the lattice basis.
    pub fn coordinates(&self, v: &[Q]) -> Result<QVec> {
        if v.len() != self.dim() {
            return Err(GerbeError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(self.basis.solve(v).expect("basis is invertible"))
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        Ok(exact::is_integral_vec(&self.coordinates(v)?))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other
            .basis_vectors()
            .iter()
            .all(|b| self.contains(b).unwrap_or(false))
    }

    /// `|det(basis)|`, the covolume in the coordinate model.
    pub fn covolume(&self) -> Q {
        self.basis.determinant().abs()
    }

    /// Gram matrix `B^T G B` of the basis under the inner product `gram`.
    pub fn gram(&self, gram: &QMat) -> QMat {
        self.basis.transpose().mul(gram).mul(&self.basis)
    }

    /// Canonical basis (Hermite normal form of the basis rows), for equality tests.
    pub fn canonical_basis(&self) -> Vec<QVec> {
        hermite_of(&self.basis_vectors(), self.dim())
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.canonical_basis() == other.canonical_basis()
    }
}

impl Eq for Lattice {}

/// Hermite-reduced spanning rows of the lattice generated by `gens`.
fn hermite_of(gens: &[QVec], dim: usize) -> Vec<QVec> {
    let den = exact::lcm_of_denominators(gens.iter().flatten());
    let scaled = ZMat::from_fn(gens.len(), dim, |i, j| {
        (&gens[i][j] * Q::from_integer(den.clone())).to_integer()
    });
    hermite_rows(&scaled)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| Q::new(x, den.clone()))
                .collect()
        })
        .collect()
}

pub fn dual_lattice(l: &Lattice, gram: &QMat) -> Result<Lattice> {
    if !gram.is_symmetric() || gram.nrows() != l.dim() {
        return Err(GerbeError::InvalidInput(
            "Gram matrix must be symmetric of matching size".into(),
        ));
    }
    // <y, B x> in Z for all integral x  <=>  B^T G y integral.
    let inv = l
        .basis
        .transpose()
        .mul(gram)
        .inverse()
        .ok_or(GerbeError::SingularGram)?;
    Lattice::from_basis(inv)
}

pub fn member(l: &Lattice, v: &[Q]) -> Result<bool> {
    l.contains(v)
}

pub fn min_integer_scale(m: &QMat) -> u64 {
    m.denominator_lcm()
        .to_u64()
        .expect("denominator lcm fits in u64")
}

/// A finite abelian group `L1 / L2`, with coordinates for its elements.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    /// `d_1 | d_2 | ...`, all greater than 1.
    pub invariant_factors: Vec<u64>,
    /// Coset representatives of the cyclic generators, in `L1`.
    pub generators: Vec<QVec>,
    /// Rows map a vector of `L1` to its coordinates (before reduction).
    coord_map: QMat,
}

impl FiniteAbelianGroup {
    pub fn trivial(dim: usize) -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            coord_map: QMat::zeros(0, dim),
        }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Coordinates of the class of `v` in `Z/d_1 + Z/d_2 + ...`. `v` must lie in `L1`.
    pub fn coordinates(&self, v: &[Q]) -> Vec<u64> {
        self.coord_map
            .mul_vec(v)
            .iter()
            .zip(&self.invariant_factors)
            .map(|(c, &d)| {
                let c = exact::q_to_i64(c);
                c.rem_euclid(d as i64) as u64
            })
            .collect()
    }

    /// Representative in `L1` of the element with the given coordinates.
    pub fn representative(&self, coords: &[u64]) -> QVec {
        let dim = self.coord_map.ncols();
        coords
            .iter()
            .zip(&self.generators)
            .fold(exact::zero_vec(dim), |acc, (&c, g)| {
                exact::add(&acc, &exact::scale(&exact::qi(c as i64), g))
            })
    }

    /// All coordinate tuples, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "invariant_factors": self.invariant_factors,
            "order": self.order(),
        })
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Invariant factors with all entries 1 removed, from an arbitrary list of
/// positive integers (e.g. orders of cyclic factors).
pub fn invariant_factors_of(orders: &[u64]) -> Vec<u64> {
    let diag = ZMat::from_fn(orders.len(), orders.len(), |i, j| {
        if i == j {
            BigInt::from(orders[i])
        } else {
            BigInt::zero()
        }
    });
    smith_normal_form(&diag)
        .diagonal
        .iter()
        .map(|d| d.to_u64().expect("small"))
        .filter(|&d| d > 1)
        .collect()
}

pub fn quotient_group(l1: &Lattice, l2: &Lattice) -> Result<FiniteAbelianGroup> {
    if l1.dim() != l2.dim() {
        return Err(GerbeError::DimensionMismatch {
            expected: l1.dim(),
            got: l2.dim(),
        });
    }
    let m1_inv = l1.basis.inverse().expect("basis is invertible");
    let x = m1_inv.mul(&l2.basis);
    if !x.is_integral() {
        return Err(GerbeError::NotSublattice);
    }
    let n = l1.dim();
    let xz = ZMat::from_fn(n, n, |i, j| x[(i, j)].to_integer());
    let snf = smith_normal_form(&xz);
    if snf.rank() < n {
        return Err(GerbeError::InfiniteIndex);
    }
    let to_q = |m: &ZMat| QMat::from_fn(m.rows, m.cols, |i, j| Q::from_integer(m[(i, j)].clone()));
    // left * X * right = D, so L1-basis changed by left^{-1} diagonalizes.
    let gens_all = l1.basis.mul(&to_q(&snf.left_inv));
    let coords_all = to_q(&snf.left).mul(&m1_inv);
    let keep: Vec<usize> = (0..n).filter(|&i| !snf.diagonal[i].is_one()).collect();
    Ok(FiniteAbelianGroup {
        invariant_factors: keep
            .iter()
            .map(|&i| snf.diagonal[i].to_u64().expect("index fits in u64"))
            .collect(),
        generators: keep.iter().map(|&i| gens_all.column(i)).collect(),
        coord_map: QMat::from_fn(keep.len(), n, |a, j| coords_all[(keep[a], j)].clone()),
    })
}

/// A finitely generated abelian group `Z^n / span(relations)`, with coordinates.
#[derive(Clone, Debug)]
pub struct FgQuotient {
    pub free_rank: usize,
    /// Torsion invariant factors, all greater than 1.
    pub torsion: Vec<u64>,
    /// Full SNF diagonal padded with zeros to length `n`; 1 entries are trivial.
    diag: Vec<BigInt>,
    left: ZMat,
}

impl FgQuotient {
    /// `Z^n / span(relations)`; each relation is an integer vector of length `n`.
    pub fn new(n: usize, relations: &[Vec<i64>]) -> Self {
        let a = ZMat::from_fn(n, relations.len(), |i, j| BigInt::from(relations[j][i]));
        let snf = smith_normal_form(&a);
        let mut diag = snf.diagonal.clone();
        diag.resize(n, BigInt::zero());
        FgQuotient {
            free_rank: n - snf.rank(),
            torsion: snf
                .diagonal
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("small"))
                .collect(),
            diag,
            left: snf.left,
        }
    }

    /// Canonical coordinates of the class of an integer vector; equal classes give
    /// equal coordinates.
    pub fn class_of(&self, v: &[i64]) -> Vec<BigInt> {
        let vz = ZMat::from_fn(v.len(), 1, |i, _| BigInt::from(v[i]));
        let c = self.left.mul(&vz).column(0);
        c.into_iter()
            .zip(&self.diag)
            .filter(|(_, d)| !d.is_one())
            .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
            .collect()
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.class_of(v).iter().all(|c| c.is_zero())
    }
}
