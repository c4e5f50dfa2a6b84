//! Root systems of the simple types, the basic inner product, the fundamental
//! alcove and the root subsystems attached to its faces.
//!
//! Coordinates: a vector in the Cartan subalgebra `t` is written in the basis of
//! simple coroots, so the coroot lattice is the standard integer lattice. Roots
//! and weights are carried into `t` through the basic inner product, whose Gram
//! matrix on the simple coroots is normalized so that short coroots have squared
//! length 2. All arithmetic is exact.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{GerbeError, Result};
use crate::exact::{self, dot, qi, scale, QMat, QVec, Q};
use crate::weyl::{IntMatrix, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.letter() == c.to_ascii_uppercase())
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.admits_rank(rank) {
            Ok(LieType { family, rank })
        } else {
            Err(GerbeError::InvalidLieType {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Every valid type with rank at most `max_rank`, in family order.
    pub fn all_up_to(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if family.admits_rank(rank) {
                    out.push(LieType { family, rank });
                }
            }
        }
        out
    }

    /// Classical root count for the type.
    pub fn expected_root_count(self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::B | Family::C, _) => 2 * n * n,
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
            (Family::F, _) => 48,
            (Family::G, _) => 12,
        }
    }

    /// Bourbaki-labelled Cartan matrix, `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i - 1][j - 1] = -1;
            c[j - 1][i - 1] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 1..n {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(i, i + 1);
                }
                link(n - 2, n);
            }
            Family::E => {
                link(1, 3);
                link(2, 4);
                for i in 3..n {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(1, 2);
                link(2, 3);
                link(3, 4);
            }
            Family::G => link(1, 2),
        }
        match self.family {
            // alpha_n short
            Family::B => c[n - 1][n - 2] = -2,
            // alpha_n long
            Family::C => c[n - 2][n - 1] = -2,
            // alpha_3 short, alpha_2 long
            Family::F => c[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Family::G => c[0][1] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = GerbeError;

    /// Parses forms like `"A2"` or `"e8"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || GerbeError::InvalidInput(format!("unrecognized Lie type {s:?}"));
        let mut chars = s.chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        LieType::new(family, rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    /// Coefficients in the simple-root basis.
    pub coeffs: Vec<i64>,
    /// The root carried into `t` by the basic inner product.
    #[serde(serialize_with = "exact::serialize_qvec")]
    pub vector: QVec,
    /// The coroot, in coroot coordinates.
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn coroot_q(&self) -> QVec {
        self.coroot.iter().map(|&c| qi(c)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub cartan: Vec<Vec<i64>>,
    /// `gram[(i, j)] = <alpha_i^vee, alpha_j^vee>` in the basic normalization.
    pub gram: QMat,
    gram_inv: QMat,
    /// Sorted by (height, coefficients).
    pub roots: Vec<Root>,
    pub highest_root: Root,
    pub marks: Vec<i64>,
    /// `alpha_i` as vectors in `t`.
    pub simple_roots: Vec<QVec>,
    /// `alpha_i^vee`; the standard basis.
    pub simple_coroots: Vec<QVec>,
    /// `lambda_i` as vectors in `t`.
    pub fundamental_weights: Vec<QVec>,
    /// `lambda_i^vee`.
    pub fundamental_coweights: Vec<QVec>,
    simple_reflections: Vec<IntMatrix>,
}

/// The fundamental alcove, vertices indexed `0..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alcove {
    #[serde(serialize_with = "exact::serialize_qvecs")]
    pub vertices: Vec<QVec>,
}

/// Result of moving a point into the fundamental alcove by the affine Weyl group:
/// `point = weyl(input) + translation`.
#[derive(Clone, Debug)]
pub struct AlcoveReduction {
    pub point: QVec,
    pub weyl: WeylElement,
    /// An element of the coroot lattice.
    pub translation: Vec<i64>,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Self {
        let r = lie_type.rank;
        let cartan = lie_type.cartan_matrix();
        let gram = basic_gram(&cartan);
        let gram_inv = gram.inverse().expect("basic Gram matrix is positive definite");

        // alpha_j in t: the vector a with <a, xi> = sum_k cartan[k][j] xi_k.
        let simple_roots: Vec<QVec> = (0..r)
            .map(|j| {
                let functional: QVec = (0..r).map(|k| qi(cartan[k][j])).collect();
                gram_inv.mul_vec(&functional)
            })
            .collect();
        let simple_coroots: Vec<QVec> = (0..r).map(|i| exact::unit_vec(r, i)).collect();

        let coeff_roots = root_closure(&cartan);
        let mut roots: Vec<Root> = coeff_roots
            .into_iter()
            .map(|coeffs| {
                let vector = coeffs
                    .iter()
                    .zip(&simple_roots)
                    .fold(exact::zero_vec(r), |acc, (&c, a)| {
                        exact::add(&acc, &scale(&qi(c), a))
                    });
                let norm = dot(&vector, &gram.mul_vec(&vector));
                let coroot_q = scale(&(qi(2) / norm), &vector);
                let coroot = coroot_q.iter().map(exact::q_to_i64).collect();
                Root {
                    coeffs,
                    vector,
                    coroot,
                }
            })
            .collect();
        roots.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        let highest_root = roots.last().expect("root system is nonempty").clone();
        let marks = highest_root.coeffs.clone();

        // <alpha_i, lambda_j^vee> = delta_ij  =>  C^T L = I.
        let cartan_t = QMat::from_fn(r, r, |i, j| qi(cartan[j][i]));
        let coweight_basis = cartan_t.inverse().expect("Cartan matrix is invertible");
        let fundamental_coweights = coweight_basis.columns();
        let fundamental_weights = gram_inv.columns();

        let simple_reflections = (0..r)
            .map(|i| {
                // s_i(xi) = xi - <alpha_i, xi> alpha_i^vee
                let rows: Vec<Vec<i64>> = (0..r)
                    .map(|a| {
                        (0..r)
                            .map(|b| {
                                let id = i64::from(a == b);
                                if a == i {
                                    id - cartan[b][i]
                                } else {
                                    id
                                }
                            })
                            .collect()
                    })
                    .collect();
                IntMatrix::from_rows(&rows)
            })
            .collect();

        RootSystem {
            lie_type,
            cartan,
            gram,
            gram_inv,
            roots,
            highest_root,
            marks,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            fundamental_coweights,
            simple_reflections,
        }
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn gram_inverse(&self) -> &QMat {
        &self.gram_inv
    }

    /// The basic inner product on `t`.
    pub fn pair(&self, a: &[Q], b: &[Q]) -> Q {
        dot(a, &self.gram.mul_vec(b))
    }

    pub fn norm2(&self, a: &[Q]) -> Q {
        self.pair(a, a)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    /// `s_i` for a 1-based node label.
    pub fn simple_reflection(&self, node: usize) -> IntMatrix {
        self.simple_reflections[node - 1].clone()
    }

    /// Affine simple roots: index 0 is `-alpha~`, index `j >= 1` is `alpha_j`.
    pub fn affine_simple_root(&self, j: usize) -> QVec {
        if j == 0 {
            scale(&-Q::one(), &self.highest_root.vector)
        } else {
            self.simple_roots[j - 1].clone()
        }
    }

    /// Nodes with mark 1 (1-based labels).
    pub fn special_nodes(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&i| self.marks[i - 1] == 1).collect()
    }

    pub fn cartan_determinant(&self) -> Q {
        QMat::from_fn(self.rank(), self.rank(), |i, j| qi(self.cartan[i][j])).determinant()
    }

    pub fn alcove(&self) -> Alcove {
        let r = self.rank();
        let mut vertices = vec![exact::zero_vec(r)];
        for j in 1..=r {
            vertices.push(scale(
                &Q::new(1.into(), self.marks[j - 1].into()),
                &self.fundamental_coweights[j - 1],
            ));
        }
        Alcove { vertices }
    }

    pub fn in_alcove(&self, xi: &[Q]) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !self.pair(a, xi).is_negative())
            && self.pair(&self.highest_root.vector, xi) <= Q::one()
    }

    /// Moves `xi` into the fundamental alcove by reflecting in the walls
    /// `<., alpha_j> = 0` and `<., alpha~> = 1`. When the resulting point differs
    /// from `xi` by a coroot-lattice vector the pure translation is reported.
    pub fn reduce_to_alcove(&self, xi: &[Q]) -> AlcoveReduction {
        let r = self.rank();
        let mut point = xi.to_vec();
        let mut lin = IntMatrix::identity(r);
        let mut trans = exact::zero_vec(r);
        let theta = &self.highest_root.vector;
        let theta_coroot = self.highest_root.coroot_q();
        let s_theta = self.reflection_matrix(&self.highest_root);
        loop {
            if let Some(j) = (0..r).find(|&j| self.pair(&self.simple_roots[j], &point).is_negative())
            {
                let s = &self.simple_reflections[j];
                point = s.apply(&point);
                lin = s.mul(&lin);
                trans = s.apply(&trans);
                continue;
            }
            let excess = self.pair(theta, &point) - Q::one();
            if excess.is_positive() {
                point = exact::add(&s_theta.apply(&point), &theta_coroot);
                lin = s_theta.mul(&lin);
                trans = exact::add(&s_theta.apply(&trans), &theta_coroot);
                continue;
            }
            break;
        }
        let shift = exact::sub(&point, xi);
        if exact::is_integral_vec(&shift) {
            return AlcoveReduction {
                translation: shift.iter().map(exact::q_to_i64).collect(),
                point,
                weyl: WeylElement::identity(r),
            };
        }
        AlcoveReduction {
            point,
            weyl: WeylElement::from_matrix(self, lin),
            translation: trans.iter().map(exact::q_to_i64).collect(),
        }
    }

    /// Reflection `s_beta` as an integer matrix.
    pub fn reflection_matrix(&self, root: &Root) -> IntMatrix {
        let r = self.rank();
        // s(xi) = xi - <beta, xi> beta^vee; <beta, xi> = beta^T G xi.
        let functional = self.gram.transpose().mul_vec(&root.vector);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|a| {
                (0..r)
                    .map(|b| {
                        let id = i64::from(a == b);
                        id - root.coroot[a] * exact::q_to_i64(&functional[b])
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows)
    }

    /// Roots `beta` on which every vertex `mu_j`, `j` in `face`, takes one common
    /// integer value. This is the root system of the centralizer of `exp(xi)` for
    /// `xi` in the open face spanned by those vertices.
    pub fn face_subsystem(&self, face: &BTreeSet<usize>) -> Result<Vec<Root>> {
        if face.is_empty() {
            return Err(GerbeError::InvalidInput("empty face index set".into()));
        }
        if let Some(&j) = face.iter().find(|&&j| j > self.rank()) {
            return Err(GerbeError::InvalidInput(format!(
                "vertex index {j} out of range 0..={}",
                self.rank()
            )));
        }
        let alcove = self.alcove();
        Ok(self
            .roots
            .iter()
            .filter(|root| {
                let mut values = face.iter().map(|&j| self.pair(&alcove.vertices[j], &root.vector));
                let first = values.next().expect("face is nonempty");
                first.is_integer() && values.all(|v| v == first)
            })
            .cloned()
            .collect())
    }

    /// Canonical JSON document: family, rank and roots as `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.lie_type.family.letter().to_string(),
            "rank": self.rank(),
            "roots": self.roots.iter()
                .map(|r| r.vector.iter().map(exact::q_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub fn build_root_system(t: LieType) -> RootSystem {
    RootSystem::new(t)
}

/// Gram matrix of the simple coroots, symmetrizing the Cartan matrix and scaling
/// so the shortest coroots have squared length 2.
fn basic_gram(cartan: &[Vec<i64>]) -> QMat {
    let r = cartan.len();
    // cartan[i][j] * g_jj = cartan[j][i] * g_ii along every edge of the diagram.
    let mut diag: Vec<Option<Q>> = vec![None; r];
    diag[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if i != j && cartan[i][j] != 0 && diag[j].is_none() {
                let gi = diag[i].clone().expect("visited");
                diag[j] = Some(gi * qi(cartan[j][i]) / qi(cartan[i][j]));
                stack.push(j);
            }
        }
    }
    let diag: Vec<Q> = diag
        .into_iter()
        .map(|d| d.expect("Dynkin diagram is connected"))
        .collect();
    let min = diag.iter().min().expect("rank >= 1").clone();
    let diag: Vec<Q> = diag.iter().map(|d| qi(2) * d / &min).collect();
    QMat::from_fn(r, r, |i, j| qi(cartan[i][j]) * &diag[j] / qi(2))
}

/// All roots in simple-root coordinates, by closure of the simple roots under
/// the simple reflections.
fn root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<Vec<i64>> = Vec::new();
    for i in 0..r {
        for sign in [1, -1] {
            let mut v = vec![0; r];
            v[i] = sign;
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    while let Some(beta) = stack.pop() {
        for i in 0..r {
            // <beta, alpha_i^vee> = sum_k c_k cartan[i][k]
            let p: i64 = (0..r).map(|k| beta[k] * cartan[i][k]).sum();
            if p == 0 {
                continue;
            }
            let mut image = beta.clone();
            image[i] -= p;
            if seen.insert(image.clone()) {
                stack.push(image);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qf;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn invalid_types_rejected() {
        for (f, n) in [
            (Family::B, 1),
            (Family::C, 1),
            (Family::D, 2),
            (Family::E, 5),
            (Family::E, 9),
            (Family::F, 3),
            (Family::G, 3),
            (Family::A, 0),
        ] {
            assert!(LieType::new(f, n).is_err(), "{f:?}{n}");
        }
        assert!("X3".parse::<LieType>().is_err());
    }

    #[test]
    fn a1_basics() {
        let a1 = rs("A1");
        assert_eq!(a1.roots.len(), 2);
        assert_eq!(a1.norm2(&a1.simple_coroots[0]), qi(2));
        let alcove = a1.alcove();
        assert_eq!(alcove.vertices, vec![vec![qi(0)], vec![qf(1, 2)]]);
        assert_eq!(a1.pair(&alcove.vertices[1], &a1.highest_root.vector), qi(1));
    }

    #[test]
    fn g2_root_and_coroot_lengths() {
        let g2 = rs("G2");
        assert_eq!(g2.roots.len(), 12);
        let lengths: BTreeSet<Q> = g2.roots.iter().map(|r| g2.norm2(&r.coroot_q())).collect();
        assert_eq!(lengths, [qi(2), qi(6)].into_iter().collect());
        assert_eq!(g2.marks, vec![3, 2]);
    }

    #[test]
    fn e8_has_240_roots_and_unimodular_cartan() {
        let e8 = rs("E8");
        assert_eq!(e8.roots.len(), 240);
        assert_eq!(e8.cartan_determinant(), qi(1));
        assert_eq!(e8.marks, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn a2_alcove_vertices_are_coweights() {
        let a2 = rs("A2");
        let alcove = a2.alcove();
        assert_eq!(alcove.vertices[0], vec![qi(0), qi(0)]);
        assert_eq!(alcove.vertices[1], a2.fundamental_coweights[0]);
        assert_eq!(alcove.vertices[2], a2.fundamental_coweights[1]);
    }

    #[test]
    fn reduction_examples() {
        let a1 = rs("A1");
        let red = a1.reduce_to_alcove(&[qi(1)]);
        assert_eq!(red.point, vec![qi(0)]);
        assert!(red.weyl.is_identity());
        assert_eq!(red.translation, vec![-1]);

        let red = a1.reduce_to_alcove(&[qf(3, 4)]);
        assert_eq!(red.point, vec![qf(1, 4)]);
        assert_eq!(red.weyl.word, vec![1]);
        assert_eq!(red.translation, vec![1]);

        let inside = vec![qf(1, 5)];
        let red = a1.reduce_to_alcove(&inside);
        assert_eq!(red.point, inside);
        assert!(red.weyl.is_identity());
        assert_eq!(red.translation, vec![0]);
    }

    #[test]
    fn face_subsystem_examples() {
        let a1 = rs("A1");
        let all = a1.face_subsystem(&[0].into()).unwrap();
        assert_eq!(all.len(), 2);
        assert!(a1.face_subsystem(&[0, 1].into()).unwrap().is_empty());
        assert!(a1.face_subsystem(&BTreeSet::new()).is_err());

        // B2, vertex mu_2 = lambda_2^vee / 2: the subsystem {+-alpha_1, +-alpha~}.
        let b2 = rs("B2");
        let sub = b2.face_subsystem(&[2].into()).unwrap();
        let coeffs: BTreeSet<Vec<i64>> = sub.iter().map(|r| r.coeffs.clone()).collect();
        let expected: BTreeSet<Vec<i64>> = [vec![1, 0], vec![-1, 0], vec![1, 2], vec![-1, -2]]
            .into_iter()
            .collect();
        assert_eq!(b2.highest_root.coeffs, vec![1, 2]);
        assert_eq!(coeffs, expected);
    }

    #[test]
    fn json_has_rational_strings() {
        let v = rs("A1").to_json();
        assert_eq!(v["family"], "A");
        assert_eq!(v["roots"].as_array().unwrap().len(), 2);
    }
}
