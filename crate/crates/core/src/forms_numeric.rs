//! Numerical check, on `SU(2)` and `SU(3)`, that the Cartan 3-form `eta` and the
//! 2-form `omega` on `G x G` form a cocycle in the Bott-Shulman-Stasheff complex
//! of the conjugation action, and that `eta` integrates to a generator.
//!
//! Forms are evaluated on ambient velocity matrices. Two-forms built from a
//! bilinear expression `B` take the value `B(u, v) - B(v, u)`; exterior
//! derivatives are central differences in exponential charts.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{GerbeError, Result};

pub type Mat = DMatrix<Complex64>;

/// Weight of the fully antisymmetrized `<X, [Y, Z]>` in `eta`.
pub const C_ETA: f64 = 1.0 / 12.0;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `SU(n)` with its basic inner product.
#[derive(Clone, Debug)]
pub struct UnitaryGroup {
    pub n: usize,
    /// `<X, Y> = kappa Re tr(XY)`.
    pub kappa: f64,
    basis: Vec<Mat>,
}

impl UnitaryGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        // The coroot 2 pi i diag(1, -1, 0, ...) must have squared length 2.
        let mut h = Mat::zeros(n, n);
        h[(0, 0)] = 2.0 * PI * I;
        h[(1, 1)] = -2.0 * PI * I;
        let kappa = 2.0 / (&h * &h).trace().re;
        let mut basis = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut x = Mat::zeros(n, n);
                x[(a, b)] = Complex64::new(1.0, 0.0);
                x[(b, a)] = Complex64::new(-1.0, 0.0);
                basis.push(x);
                let mut y = Mat::zeros(n, n);
                y[(a, b)] = I;
                y[(b, a)] = I;
                basis.push(y);
            }
        }
        for a in 0..n - 1 {
            let mut d = Mat::zeros(n, n);
            d[(a, a)] = I;
            d[(a + 1, a + 1)] = -I;
            basis.push(d);
        }
        UnitaryGroup { n, kappa, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn inner(&self, x: &Mat, y: &Mat) -> f64 {
        self.kappa * (x * y).trace().re
    }

    /// `sum_a c_a E_a`.
    pub fn algebra_element(&self, coeffs: &[f64]) -> Mat {
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(Mat::zeros(self.n, self.n), |acc, (&c, e)| acc + e * Complex64::new(c, 0.0))
    }

    pub fn random_point(&self, rng: &mut impl Rng) -> Mat {
        let coeffs: Vec<f64> = (0..self.dim()).map(|_| 1.5 * rng.sample::<f64, _>(StandardNormal)).collect();
        self.algebra_element(&coeffs).exp()
    }

    pub fn name(&self) -> String {
        format!("SU({})", self.n)
    }
}

pub fn inverse(g: &Mat) -> Mat {
    g.adjoint()
}

fn commutator(x: &Mat, y: &Mat) -> Mat {
    x * y - y * x
}

/// `d/ds exp(t + s e)` at `s = 0`, from the exponential of a block matrix.
pub fn dexp(t: &Mat, e: &Mat) -> Mat {
    let n = t.nrows();
    let mut block = Mat::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(t);
    block.view_mut((n, n), (n, n)).copy_from(t);
    block.view_mut((0, n), (n, n)).copy_from(e);
    block.exp().view((0, n), (n, n)).into_owned()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// A matrix in `SU(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint(pub Mat);

impl GroupPoint {
    pub fn new(m: Mat, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(GerbeError::InvalidInput("group element must be square".into()));
        }
        let n = m.nrows();
        let unitarity = (m.adjoint() * &m - Mat::identity(n, n)).norm();
        let det = (m.determinant() - Complex64::new(1.0, 0.0)).norm();
        if unitarity > tol || det > tol {
            return Err(GerbeError::InvalidInput(format!(
                "not in SU({n}): |U*U - I| = {unitarity:e}, |det U - 1| = {det:e}"
            )));
        }
        Ok(GroupPoint(m))
    }
}

/// An anti-Hermitian traceless matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraVector(pub Mat);

impl AlgebraVector {
    pub fn new(x: Mat, tol: f64) -> Result<Self> {
        let skew = (&x + x.adjoint()).norm();
        let trace = x.trace().norm();
        if skew > tol || trace > tol {
            return Err(GerbeError::InvalidInput(format!(
                "not in the Lie algebra: |X + X*| = {skew:e}, |tr X| = {trace:e}"
            )));
        }
        Ok(AlgebraVector(x))
    }
}

/// `theta^L(v) = g^{-1} v` or `theta^R(v) = v g^{-1}`; fails when `v` is not tangent at `g`.
pub fn maurer_cartan(g: &GroupPoint, v: &Mat, side: Side, tol: f64) -> Result<AlgebraVector> {
    let x = match side {
        Side::Left => inverse(&g.0) * v,
        Side::Right => v * inverse(&g.0),
    };
    AlgebraVector::new(x, tol)
}

fn theta_l(g: &Mat, v: &Mat) -> Mat {
    inverse(g) * v
}

fn theta_r(g: &Mat, v: &Mat) -> Mat {
    v * inverse(g)
}

/// `eta_g(v1, v2, v3) = C_ETA sum_sigma sign(sigma) <X_s1, [X_s2, X_s3]>`, `X = g^{-1} v`.
pub fn eval_eta(grp: &UnitaryGroup, g: &Mat, v: [&Mat; 3]) -> f64 {
    let x: Vec<Mat> = v.iter().map(|vi| theta_l(g, vi)).collect();
    const PERMS: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    C_ETA
        * PERMS
            .iter()
            .map(|(p, s)| s * grp.inner(&x[p[0]], &commutator(&x[p[1]], &x[p[2]])))
            .sum::<f64>()
}

/// A tangent vector to `G^m`, one velocity per factor.
pub type Tangent = Vec<Mat>;

/// `omega` at `(g, x)`, plus `eps <pr1* theta^L wedge pr2* theta^L>` for fault injection.
pub fn eval_omega_perturbed(grp: &UnitaryGroup, g: &Mat, x: &Mat, u: &Tangent, v: &Tangent, eps: f64) -> f64 {
    let b = |u: &Tangent, v: &Tangent| {
        let u1 = theta_l(g, &u[0]);
        let v1 = theta_l(g, &v[0]);
        let ad = x * &u1 * inverse(x);
        let v2 = theta_l(x, &v[1]) + theta_r(x, &v[1]);
        -0.5 * (grp.inner(&ad, &v1) + grp.inner(&u1, &v2)) + eps * grp.inner(&u1, &theta_l(x, &v[1]))
    };
    b(u, v) - b(v, u)
}

pub fn eval_omega(grp: &UnitaryGroup, g: &Mat, x: &Mat, u: &Tangent, v: &Tangent) -> f64 {
    eval_omega_perturbed(grp, g, x, u, v, 0.0)
}

/// Exponential chart `t -> (p_i exp(T_i(t)))` around a point of `G^m`.
#[derive(Clone, Debug)]
pub struct ProductChart<'a> {
    pub grp: &'a UnitaryGroup,
    pub base: Vec<Mat>,
}

impl<'a> ProductChart<'a> {
    pub fn dim(&self) -> usize {
        self.base.len() * self.grp.dim()
    }

    fn split<'b>(&self, t: &'b [f64]) -> impl Iterator<Item = Mat> + use<'a, 'b, '_> {
        t.chunks(self.grp.dim()).map(|c| self.grp.algebra_element(c))
    }

    pub fn point(&self, t: &[f64]) -> Vec<Mat> {
        self.split(t)
            .zip(&self.base)
            .map(|(tt, p)| p * tt.exp())
            .collect()
    }

    /// Image of the coordinate direction `e` at chart point `t`.
    pub fn tangent(&self, t: &[f64], e: &[f64]) -> Tangent {
        self.split(t)
            .zip(self.split(e))
            .zip(&self.base)
            .map(|((tt, ee), p)| p * dexp(&tt, &ee))
            .collect()
    }
}

/// Value of a differential form at a point of `G^m` on tangent vectors.
pub trait Form {
    fn degree(&self) -> usize;
    fn eval(&self, point: &[Mat], vectors: &[Tangent]) -> f64;
}

/// Any closure of the right shape is a form of the declared degree.
pub struct FnForm<F> {
    pub degree: usize,
    pub f: F,
}

impl<F: Fn(&[Mat], &[Tangent]) -> f64> Form for FnForm<F> {
    fn degree(&self) -> usize {
        self.degree
    }
    fn eval(&self, point: &[Mat], vectors: &[Tangent]) -> f64 {
        (self.f)(point, vectors)
    }
}

/// `d alpha(e_0, ..., e_k) = sum_i (-1)^i e_i[alpha(e_0, .., ^e_i, .., e_k)]` for
/// constant chart fields, by central differences at the chart origin. Returns
/// the value and a reference scale: the absolute values of the terms plus those
/// of the undifferentiated values at the origin.
pub fn fd_exterior_derivative(chart: &ProductChart, form: &dyn Form, frame: &[Vec<f64>], h: f64) -> (f64, f64) {
    assert_eq!(frame.len(), form.degree() + 1, "frame size must be degree + 1");
    let at = |t: &[f64], skip: usize| {
        let pt = chart.point(t);
        let vs: Vec<Tangent> = frame
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .map(|(_, e)| chart.tangent(t, e))
            .collect();
        form.eval(&pt, &vs)
    };
    let mut value = 0.0;
    let mut scale = 0.0;
    for (i, e) in frame.iter().enumerate() {
        let plus: Vec<f64> = e.iter().map(|x| h * x).collect();
        let minus: Vec<f64> = e.iter().map(|x| -h * x).collect();
        let deriv = (at(&plus, i) - at(&minus, i)) / (2.0 * h);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        value += sign * deriv;
        scale += deriv.abs() + at(&vec![0.0; e.len()], i).abs();
    }
    (value, scale)
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericsConfig {
    pub h: f64,
    pub seed: u64,
    /// Relative tolerance for the finite-difference identities.
    pub cocycle_tol: f64,
    /// Relative tolerance for the derivative-free identity.
    pub partial_omega_tol: f64,
    pub algebra_tol: f64,
    pub integral_tol: f64,
    pub samples: usize,
    /// Coefficient of the injected fault in `omega`; zero for the real check.
    pub perturbation: f64,
    pub integral_resolution: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            h: 1e-4,
            seed: 42,
            cocycle_tol: 1e-5,
            partial_omega_tol: 1e-10,
            algebra_tol: 1e-9,
            integral_tol: 1e-2,
            samples: 100,
            perturbation: 0.0,
            integral_resolution: 64,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MaxResiduals {
    pub d_eta: f64,
    pub d_omega_vs_partial_eta: f64,
    pub partial_omega: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormsReport {
    pub group: String,
    pub samples: usize,
    pub h: f64,
    pub tolerances: NumericsConfig,
    /// `s` in `d omega = s (d0* eta - d1* eta)`.
    pub sign: i32,
    pub max_residuals: MaxResiduals,
    pub integral_eta: Option<f64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

fn random_frame(rng: &mut impl Rng, count: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
        .collect()
}

fn conj_pushforward(g: &Mat, x: &Mat, gd: &Mat, xd: &Mat) -> (Mat, Mat) {
    // d(g x g^{-1}) = gd x g^{-1} + g xd g^{-1} - g x g^{-1} gd g^{-1}
    let gi = inverse(g);
    let y = g * x * &gi;
    let yd = gd * x * &gi + g * xd * &gi - &y * gd * &gi;
    (y, yd)
}

/// `d0* eta - d1* eta` on `G x G` at `(g, x)`, with faces `(g, x) -> x` and `(g, x) -> g x g^{-1}`.
pub fn partial_eta(grp: &UnitaryGroup, g: &Mat, x: &Mat, vs: &[Tangent]) -> (f64, f64) {
    let d0 = eval_eta(grp, x, [&vs[0][1], &vs[1][1], &vs[2][1]]);
    let pushed: Vec<(Mat, Mat)> = vs.iter().map(|v| conj_pushforward(g, x, &v[0], &v[1])).collect();
    let y = &pushed[0].0;
    let d1 = eval_eta(grp, y, [&pushed[0].1, &pushed[1].1, &pushed[2].1]);
    (d0, d1)
}

/// `d0* omega - d1* omega + d2* omega` on `G^2 x G` at `(g1, g2, x)`; returns
/// the residual and the sum of absolute values of the terms.
pub fn partial_omega(grp: &UnitaryGroup, p: &[Mat], u: &Tangent, v: &Tangent, eps: f64) -> (f64, f64) {
    let (g1, g2, x) = (&p[0], &p[1], &p[2]);
    let om = |a: &Mat, b: &Mat, ua: Tangent, va: Tangent| eval_omega_perturbed(grp, a, b, &ua, &va, eps);
    // d0 (g1, g2, x) = (g2, x)
    let t0 = om(g2, x, vec![u[1].clone(), u[2].clone()], vec![v[1].clone(), v[2].clone()]);
    // d1 (g1, g2, x) = (g1 g2, x)
    let prod = g1 * g2;
    let push1 = |w: &Tangent| vec![&w[0] * g2 + g1 * &w[1], w[2].clone()];
    let t1 = om(&prod, x, push1(u), push1(v));
    // d2 (g1, g2, x) = (g1, g2 x g2^{-1})
    let y = g2 * x * inverse(g2);
    let push2 = |w: &Tangent| vec![w[0].clone(), conj_pushforward(g2, x, &w[1], &w[2]).1];
    let t2 = om(g1, &y, push2(u), push2(v));
    (t0 - t1 + t2, t0.abs() + t1.abs() + t2.abs())
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        residual.abs()
    } else {
        residual.abs() / scale
    }
}

/// Runs the three cocycle identities at `config.samples` seeded random points.
pub fn check_cocycle(grp: &UnitaryGroup, config: &NumericsConfig) -> FormsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let eps = config.perturbation;
    let d = grp.dim();
    let mut max = MaxResiduals::default();
    let mut sign = 0i32;
    let mut witness = None;
    let note = |what: &str, k: usize, value: f64, tol: f64, witness: &mut Option<String>| {
        if value > tol && witness.is_none() {
            *witness = Some(format!("{what} at sample {k}: relative residual {value:e} > {tol:e}"));
        }
    };
    for k in 0..config.samples {
        // d eta = 0
        let chart = ProductChart {
            grp,
            base: vec![grp.random_point(&mut rng)],
        };
        let eta = FnForm {
            degree: 3,
            f: |p: &[Mat], v: &[Tangent]| eval_eta(grp, &p[0], [&v[0][0], &v[1][0], &v[2][0]]),
        };
        let frame = random_frame(&mut rng, 4, d);
        let (val, scale) = fd_exterior_derivative(&chart, &eta, &frame, config.h);
        let r = relative(val, scale);
        max.d_eta = max.d_eta.max(r);
        note("d eta", k, r, config.cocycle_tol, &mut witness);

        // d omega = s (d0* eta - d1* eta)
        let chart = ProductChart {
            grp,
            base: vec![grp.random_point(&mut rng), grp.random_point(&mut rng)],
        };
        let omega = FnForm {
            degree: 2,
            f: |p: &[Mat], v: &[Tangent]| eval_omega_perturbed(grp, &p[0], &p[1], &v[0], &v[1], eps),
        };
        let frame = random_frame(&mut rng, 3, 2 * d);
        let (domega, scale) = fd_exterior_derivative(&chart, &omega, &frame, config.h);
        let zero = vec![0.0; 2 * d];
        let vs: Vec<Tangent> = frame.iter().map(|e| chart.tangent(&zero, e)).collect();
        let (d0, d1) = partial_eta(grp, &chart.base[0], &chart.base[1], &vs);
        let delta = d0 - d1;
        if sign == 0 {
            sign = if domega * delta >= 0.0 { 1 } else { -1 };
        }
        let r = relative(domega - sign as f64 * delta, scale + d0.abs() + d1.abs());
        max.d_omega_vs_partial_eta = max.d_omega_vs_partial_eta.max(r);
        note("d omega vs partial eta", k, r, config.cocycle_tol, &mut witness);

        // partial omega = 0
        let p: Vec<Mat> = (0..3).map(|_| grp.random_point(&mut rng)).collect();
        let tangent = |rng: &mut ChaCha8Rng| -> Tangent {
            p.iter()
                .map(|g| {
                    let c: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                    g * grp.algebra_element(&c)
                })
                .collect()
        };
        let u = tangent(&mut rng);
        let v = tangent(&mut rng);
        let (res, scale) = partial_omega(grp, &p, &u, &v, eps);
        let r = relative(res, scale);
        max.partial_omega = max.partial_omega.max(r);
        note("partial omega", k, r, config.partial_omega_tol, &mut witness);
    }
    let passed = max.d_eta <= config.cocycle_tol
        && max.d_omega_vs_partial_eta <= config.cocycle_tol
        && max.partial_omega <= config.partial_omega_tol;
    FormsReport {
        group: grp.name(),
        samples: config.samples,
        h: config.h,
        tolerances: config.clone(),
        sign,
        max_residuals: max,
        integral_eta: None,
        passed,
        witness,
    }
}

/// `int_{SU(2)} eta` by the midpoint rule in Hopf coordinates
/// `g = [[e^{i a} cos c, e^{i b} sin c], [-e^{-i b} sin c, e^{-i a} cos c]]`,
/// `a, b` in `[0, 2 pi)`, `c` in `[0, pi/2]`, with `res` points per axis.
pub fn integrate_eta_rank1(res: usize) -> Result<f64> {
    integrate_scaled_eta_rank1(res, 1.0)
}

/// As [`integrate_eta_rank1`] for the form `scale * eta`.
pub fn integrate_scaled_eta_rank1(res: usize, scale: f64) -> Result<f64> {
    if res < 16 {
        return Err(GerbeError::InvalidInput("resolution must be at least 16".into()));
    }
    let grp = UnitaryGroup::new(2);
    let c64 = |z: Complex64| z;
    let (da, db, dc) = (2.0 * PI / res as f64, 2.0 * PI / res as f64, 0.5 * PI / res as f64);
    let mut total = 0.0;
    for ia in 0..res {
        let a = (ia as f64 + 0.5) * da;
        let ea = Complex64::from_polar(1.0, a);
        for ib in 0..res {
            let b = (ib as f64 + 0.5) * db;
            let eb = Complex64::from_polar(1.0, b);
            for ic in 0..res {
                let c = (ic as f64 + 0.5) * dc;
                let (s, co) = c.sin_cos();
                let g = Mat::from_row_slice(2, 2, &[ea * co, eb * s, -eb.conj() * s, ea.conj() * co]);
                let ga = Mat::from_row_slice(2, 2, &[I * ea * co, c64(Complex64::new(0.0, 0.0)), c64(Complex64::new(0.0, 0.0)), -I * ea.conj() * co]);
                let gb = Mat::from_row_slice(2, 2, &[Complex64::new(0.0, 0.0), I * eb * s, I * eb.conj() * s, Complex64::new(0.0, 0.0)]);
                let gc = Mat::from_row_slice(2, 2, &[-ea * s, eb * co, -eb.conj() * co, -ea.conj() * s]);
                total += eval_eta(&grp, &g, [&ga, &gb, &gc]);
            }
        }
    }
    Ok(scale * total * da * db * dc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn kappa_is_computed_from_the_coroot() {
        let g = UnitaryGroup::new(2);
        assert!((g.kappa + 1.0 / (4.0 * PI * PI)).abs() < 1e-15);
        assert_eq!(UnitaryGroup::new(3).dim(), 8);
    }

    #[test]
    fn maurer_cartan_identity_and_tangency() {
        let grp = UnitaryGroup::new(2);
        let x = grp.algebra_basis()[0].clone();
        let id = GroupPoint::new(Mat::identity(2, 2), 1e-12).unwrap();
        assert_eq!(maurer_cartan(&id, &x, Side::Left, 1e-12).unwrap().0, x);
        assert_eq!(maurer_cartan(&id, &x, Side::Right, 1e-12).unwrap().0, x);
        assert!(maurer_cartan(&id, &id.0, Side::Left, 1e-9).is_err());
        let g = GroupPoint::new(grp.random_point(&mut rng()), 1e-9).unwrap();
        let v = &g.0 * &x;
        let l = maurer_cartan(&g, &v, Side::Left, 1e-9).unwrap().0;
        let r = maurer_cartan(&g, &v, Side::Right, 1e-9).unwrap().0;
        assert!((l - inverse(&g.0) * r * &g.0).norm() < 1e-12);
    }

    #[test]
    fn group_point_validation() {
        let m = Mat::identity(2, 2) * Complex64::new(2.0, 0.0);
        assert!(GroupPoint::new(m, 1e-9).is_err());
        let mut d = Mat::identity(2, 2);
        d[(0, 0)] = I;
        d[(1, 1)] = I;
        assert!(GroupPoint::new(d, 1e-9).is_err());
        assert!(AlgebraVector::new(Mat::identity(2, 2), 1e-9).is_err());
    }

    #[test]
    fn one_parameter_subgroup_velocity() {
        let grp = UnitaryGroup::new(2);
        let x = grp.algebra_element(&[0.3, -0.2, 0.7]);
        let t = 0.8;
        let g = GroupPoint::new((&x * Complex64::new(t, 0.0)).exp(), 1e-9).unwrap();
        let v = dexp(&(&x * Complex64::new(t, 0.0)), &x);
        assert!((maurer_cartan(&g, &v, Side::Left, 1e-9).unwrap().0 - &x).norm() < 1e-12);
        assert!((maurer_cartan(&g, &v, Side::Right, 1e-9).unwrap().0 - &x).norm() < 1e-12);
    }

    #[test]
    fn eta_is_antisymmetric_and_invariant() {
        let grp = UnitaryGroup::new(3);
        let mut r = rng();
        let g = grp.random_point(&mut r);
        let h = grp.random_point(&mut r);
        let vs: Vec<Mat> = (0..3).map(|k| &g * &grp.algebra_basis()[k + 2]).collect();
        let base = eval_eta(&grp, &g, [&vs[0], &vs[1], &vs[2]]);
        assert!(eval_eta(&grp, &g, [&vs[0], &vs[0], &vs[2]]).abs() < 1e-15);
        assert!((eval_eta(&grp, &g, [&vs[1], &vs[0], &vs[2]]) + base).abs() < 1e-12);
        let hv: Vec<Mat> = vs.iter().map(|v| &h * v).collect();
        assert!((eval_eta(&grp, &(&h * &g), [&hv[0], &hv[1], &hv[2]]) - base).abs() < 1e-12);
        let hi = inverse(&h);
        let cv: Vec<Mat> = vs.iter().map(|v| &h * v * &hi).collect();
        assert!((eval_eta(&grp, &(&h * &g * &hi), [&cv[0], &cv[1], &cv[2]]) - base).abs() < 1e-12);
    }

    #[test]
    fn eta_at_identity_from_structure_constants() {
        // With E1 = [[0,1],[-1,0]], E2 = [[0,i],[i,0]], E3 = diag(i,-i):
        // [E2, E3] = 2 E1 and <E1, E1> = -kappa tr(E1^2) ... = 2 |kappa|.
        let grp = UnitaryGroup::new(2);
        let id = Mat::identity(2, 2);
        let e = grp.algebra_basis();
        let value = eval_eta(&grp, &id, [&e[0], &e[1], &e[2]]);
        let expected = 0.5 * 2.0 * (-2.0 * grp.kappa);
        assert!((value - expected).abs() < 1e-15, "{value} vs {expected}");
    }

    #[test]
    fn omega_basics() {
        let grp = UnitaryGroup::new(2);
        let mut r = rng();
        let g = grp.random_point(&mut r);
        let x = grp.random_point(&mut r);
        let e = grp.algebra_basis();
        let u = vec![&g * &e[0], &x * &e[1]];
        let zero = vec![Mat::zeros(2, 2), Mat::zeros(2, 2)];
        assert!(eval_omega(&grp, &g, &x, &u, &u).abs() < 1e-15);
        assert_eq!(eval_omega(&grp, &g, &x, &u, &zero), 0.0);
        // x = 1, u = (g X, 0), v = (0, Y): only the second pairing survives.
        let id = Mat::identity(2, 2);
        let u = vec![&g * &e[0], Mat::zeros(2, 2)];
        let v = vec![Mat::zeros(2, 2), e[0].clone()];
        let expected = -0.5 * grp.inner(&e[0], &(&e[0] * Complex64::new(2.0, 0.0)));
        assert!((eval_omega(&grp, &g, &id, &u, &v) - expected).abs() < 1e-15);
    }

    #[test]
    fn exterior_derivative_of_exact_and_product_forms() {
        let grp = UnitaryGroup::new(2);
        let mut r = rng();
        let chart = ProductChart {
            grp: &grp,
            base: vec![grp.random_point(&mut r)],
        };
        let frame = random_frame(&mut r, 2, 3);
        let h = 1e-4;
        // d(df) = 0 for f = Re tr g.
        let df = FnForm {
            degree: 1,
            f: |_p: &[Mat], v: &[Tangent]| v[0][0].trace().re,
        };
        let (val, _) = fd_exterior_derivative(&chart, &df, &frame, h);
        assert!(val.abs() < 10.0 * h * h, "{val}");
        // d(f dk) = df ^ dk for f = Re tr g, k = Im g_01.
        let fdk = FnForm {
            degree: 1,
            f: |p: &[Mat], v: &[Tangent]| p[0].trace().re * v[0][0][(0, 1)].im,
        };
        let (val, _) = fd_exterior_derivative(&chart, &fdk, &frame, h);
        let zero = vec![0.0; 3];
        let t: Vec<Tangent> = frame.iter().map(|e| chart.tangent(&zero, e)).collect();
        let expected = t[0][0].trace().re * t[1][0][(0, 1)].im - t[1][0].trace().re * t[0][0][(0, 1)].im;
        assert!((val - expected).abs() < 1e-7, "{val} vs {expected}");
        // A form that is constant in chart coordinates is closed.
        let constant = FnForm {
            degree: 1,
            f: |_p: &[Mat], _v: &[Tangent]| 3.0,
        };
        assert!(fd_exterior_derivative(&chart, &constant, &frame, h).0.abs() < 1e-12);
    }

    #[test]
    fn cocycle_small_run() {
        let grp = UnitaryGroup::new(2);
        let cfg = NumericsConfig {
            samples: 5,
            ..Default::default()
        };
        let rep = check_cocycle(&grp, &cfg);
        assert!(rep.passed, "{rep:?}");
        let bad = check_cocycle(&grp, &NumericsConfig { perturbation: 1e-2, ..cfg });
        assert!(!bad.passed);
    }

    #[test]
    fn integral_scales_linearly() {
        let one = integrate_eta_rank1(16).unwrap();
        let two = integrate_scaled_eta_rank1(16, 2.0).unwrap();
        assert!((two - 2.0 * one).abs() < 1e-12);
        assert!(integrate_eta_rank1(8).is_err());
        assert!((one.abs() - 1.0).abs() < 2e-2, "{one}");
    }
}
