//! The action of the center on the fundamental alcove.
//!
//! For `z = exp(lambda_i^vee)` the action is `z . xi = w_z xi + lambda_i^vee`,
//! where `w_z` is the Weyl element permuting the affine simple roots with
//! `w_z(alpha_0) = alpha_i`. It is read off from the affine reduction of
//! `xi_0 + lambda_i^vee` at a generic interior point `xi_0`.

use serde::Serialize;

use crate::centers::{Center, CenterSubgroup, CentralElement};
use crate::error::{GerbeError, Result};
use crate::exact::{self, qi, QVec, Q};
use crate::lattice::Lattice;
use crate::rootsys::RootSystem;
use crate::weyl::WeylElement;

#[derive(Clone, Debug, Serialize)]
pub struct AlcoveAutomorphism {
    pub z: CentralElement,
    pub w_z: WeylElement,
    /// `vertex_perm[j]` is the index of `z . mu_j`.
    pub vertex_perm: Vec<usize>,
}

impl AlcoveAutomorphism {
    /// `i(z)`, the vertex `z . mu_0`.
    pub fn special_vertex(&self) -> usize {
        self.vertex_perm[0]
    }

    /// Index of `z^{-1} . mu_j`.
    pub fn inverse_vertex(&self, j: usize) -> usize {
        self.vertex_perm
            .iter()
            .position(|&k| k == j)
            .expect("vertex_perm is a bijection")
    }

    /// The affine map `xi -> w_z xi + lambda_i^vee` on all of `t`.
    pub fn apply_affine(&self, xi: &[Q]) -> QVec {
        exact::add(&self.w_z.apply(xi), &self.z.rep)
    }
}

/// A fixed interior point with pairwise distinct barycentric weights.
pub fn generic_interior_point(rs: &RootSystem) -> QVec {
    const PRIMES: [i64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];
    let weights: Vec<Q> = PRIMES[..=rs.rank()].iter().map(|&p| qi(1) / qi(p)).collect();
    interior_point(rs, &weights)
}

/// The point with (unnormalized, positive) barycentric weights `weights`.
pub fn interior_point(rs: &RootSystem, weights: &[Q]) -> QVec {
    let total = weights.iter().fold(qi(0), |a, w| a + w);
    rs.alcove()
        .vertices
        .iter()
        .zip(weights)
        .fold(exact::zero_vec(rs.rank()), |acc, (v, w)| {
            exact::add(&acc, &exact::scale(&(w / &total), v))
        })
}

pub fn weyl_element(rs: &RootSystem, z: &CentralElement) -> Result<WeylElement> {
    weyl_element_from(rs, z, &generic_interior_point(rs))
}

/// `w_z` extracted at the given interior point, then checked against its
/// defining constraints.
pub fn weyl_element_from(rs: &RootSystem, z: &CentralElement, xi0: &[Q]) -> Result<WeylElement> {
    let r = rs.rank();
    let Some(i) = z.node else {
        return Ok(WeylElement::identity(r));
    };
    let red = rs.reduce_to_alcove(&exact::add(xi0, &z.rep));
    let w = red.weyl;
    // The translation part must be lambda_i^vee itself: z . 0 = mu_i.
    let shift = exact::add(
        &w.apply(&z.rep),
        &red.translation.iter().map(|&t| qi(t)).collect::<Vec<_>>(),
    );
    if shift != z.rep {
        return Err(GerbeError::Internal(format!(
            "affine reduction at node {i} does not fix the translation part"
        )));
    }
    if !permutes_affine_simple_roots(rs, &w, i) {
        return Err(GerbeError::Internal(format!(
            "no Weyl element permutes the affine simple roots for node {i}"
        )));
    }
    Ok(w)
}

/// `w(alpha_0) = alpha_i` and `w` permutes `{alpha_0, ..., alpha_r}`.
fn permutes_affine_simple_roots(rs: &RootSystem, w: &WeylElement, i: usize) -> bool {
    let affine: Vec<QVec> = (0..=rs.rank()).map(|j| rs.affine_simple_root(j)).collect();
    // W acts orthogonally, so roots carried into t transform by the same matrix.
    let images: Vec<QVec> = affine.iter().map(|a| w.apply(a)).collect();
    images[0] == affine[i]
        && images.iter().all(|x| affine.contains(x))
        && (0..images.len()).all(|a| (0..a).all(|b| images[a] != images[b]))
}

pub fn alcove_automorphism(rs: &RootSystem, z: &CentralElement) -> Result<AlcoveAutomorphism> {
    let w_z = weyl_element(rs, z)?;
    let vertices = rs.alcove().vertices;
    let vertex_perm = vertices
        .iter()
        .map(|v| {
            let image = exact::add(&w_z.apply(v), &z.rep);
            vertices.iter().position(|u| *u == image).ok_or_else(|| {
                GerbeError::Internal("center action does not preserve the vertices".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlcoveAutomorphism {
        z: z.clone(),
        w_z,
        vertex_perm,
    })
}

/// Automorphisms for every element of the center, in the center's order.
pub fn center_action(rs: &RootSystem, center: &Center) -> Result<Vec<AlcoveAutomorphism>> {
    center
        .elements
        .iter()
        .map(|z| alcove_automorphism(rs, z))
        .collect()
}

pub fn act_on_alcove(rs: &RootSystem, z: &CentralElement, xi: &[Q]) -> Result<QVec> {
    if xi.len() != rs.rank() {
        return Err(GerbeError::DimensionMismatch {
            expected: rs.rank(),
            got: xi.len(),
        });
    }
    if !rs.in_alcove(xi) {
        return Err(GerbeError::InvalidInput("point is not in the fundamental alcove".into()));
    }
    Ok(rs.reduce_to_alcove(&exact::add(xi, &z.rep)).point)
}

/// `w_z w_z' = w_{zz'}` on `Z`, and `z -> w_z` injective.
pub fn check_homomorphism(center: &Center, actions: &[AlcoveAutomorphism], z: &CenterSubgroup) -> bool {
    let members = &z.members;
    let hom = members.iter().all(|&a| {
        members.iter().all(|&b| {
            let ab = center.mul(a, b);
            actions[a].w_z.matrix.mul(&actions[b].w_z.matrix) == actions[ab].w_z.matrix
        })
    });
    let injective = members.iter().enumerate().all(|(x, &a)| {
        members[..x]
            .iter()
            .all(|&b| actions[a].w_z.matrix != actions[b].w_z.matrix)
    });
    hom && injective
}

/// `w_z mu_{z^{-1} . j} = mu_j - z . mu_0`.
pub fn vertex_translation_identity(rs: &RootSystem, action: &AlcoveAutomorphism, j: usize) -> bool {
    let vertices = rs.alcove().vertices;
    let lhs = action.w_z.apply(&vertices[action.inverse_vertex(j)]);
    let rhs = exact::sub(&vertices[j], &vertices[action.special_vertex()]);
    lhs == rhs
}

/// `w_z^{-1}(zeta) - zeta` lies in the coroot lattice for every basis vector of `Lambda_Z`.
pub fn lattice_stability(rs: &RootSystem, action: &AlcoveAutomorphism, z: &CenterSubgroup) -> bool {
    let inv = action.w_z.inverse(rs);
    let coroots = Lattice::standard(rs.rank());
    z.integral_lattice.basis_vectors().iter().all(|zeta| {
        coroots
            .contains(&exact::sub(&inv.apply(zeta), zeta))
            .expect("dimensions agree")
    })
}
