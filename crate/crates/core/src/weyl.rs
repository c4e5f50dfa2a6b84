//! Weyl group elements as integer matrices on the coroot coordinates of the
//! Cartan subalgebra, with reduced words.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{Q, QVec};
use crate::rootsys::RootSystem;

/// Square integer matrix, row-major. Weyl elements preserve the coroot lattice,
/// which is the standard lattice in our coordinates, so their matrices are integral.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
        IntMatrix {
            n,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        IntMatrix { n, data }
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Q::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a == 0 {
                        acc
                    } else {
                        acc + &v[j] * Q::from_integer(a.into())
                    }
                })
            })
            .collect()
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// A Weyl group element. `word` lists simple reflections by 1-based node label,
/// read left to right as a product: `[i, j]` means `s_i s_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    #[serde(skip)]
    pub matrix: IntMatrix,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: IntMatrix::identity(rank),
            word: Vec::new(),
        }
    }

    /// Wraps a matrix known to lie in the Weyl group, attaching a reduced word.
    pub fn from_matrix(rs: &RootSystem, matrix: IntMatrix) -> Self {
        let word = reduced_word(rs, &matrix);
        WeylElement { matrix, word }
    }

    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let matrix = word
            .iter()
            .fold(IntMatrix::identity(rs.rank()), |m, &i| m.mul(&rs.simple_reflection(i)));
        Self::from_matrix(rs, matrix)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        Self::from_matrix(rs, self.matrix.mul(&other.matrix))
    }

    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        WeylElement::from_word(rs, &word)
    }

    pub fn apply(&self, v: &[Q]) -> QVec {
        self.matrix.apply(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// True when `w(alpha_i)` is a positive root (1-based node).
    pub fn keeps_positive(&self, node: usize) -> bool {
        is_positive_coroot(&self.matrix.column(node - 1))
    }
}

/// Coroots in coroot coordinates are positive exactly when all coefficients are >= 0.
fn is_positive_coroot(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0)
}

/// Descent algorithm: peel off right descents `s_i` with `w(alpha_i) < 0`.
pub fn reduced_word(rs: &RootSystem, m: &IntMatrix) -> Vec<usize> {
    let r = rs.rank();
    let mut cur = m.clone();
    let mut peeled = Vec::new();
    // Length is bounded by the number of positive roots.
    let bound = rs.positive_roots().count();
    while !cur.is_identity() {
        let node = (1..=r)
            .find(|&i| !is_positive_coroot(&cur.column(i - 1)))
            .expect("non-identity Weyl element has a right descent");
        cur = cur.mul(&rs.simple_reflection(node));
        peeled.push(node);
        assert!(peeled.len() <= bound, "matrix is not a Weyl group element");
    }
    peeled.reverse();
    peeled
}

/// Number of positive roots sent to negative roots.
pub fn length(rs: &RootSystem, m: &IntMatrix) -> usize {
    rs.positive_roots()
        .filter(|root| !is_positive_coroot(&m.apply_int(&root.coroot)))
        .count()
}
