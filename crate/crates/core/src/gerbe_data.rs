//! Exact phase calculus behind the basic gerbe and its equivariant extensions:
//! strata of the alcove, the vertex and edge characters, the `Z x Z` action on
//! the line bundles, descent phases, and twists by characters of `Z`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::center_action::{center_action, AlcoveAutomorphism};
use crate::centers::{character_group, Center, CenterSubgroup, Character};
use crate::error::{GerbeError, Result};
use crate::exact::{self, qi, QVec, Q};
use crate::lattice::FgQuotient;
use crate::phase::PhaseExponent;
use crate::rootsys::{Root, RootSystem};

pub use crate::cohomology::{torsion_associator, Cochain2, GroupTable};

/// The open face of the alcove spanned by the vertices in `j`, with the root
/// system of its centralizer and `Z_J = Lambda_coroot / span(coroots of R_J)`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub j: BTreeSet<usize>,
    pub roots: Vec<Root>,
    pub z_j: FgQuotient,
}

pub fn stratum(rs: &RootSystem, j: &BTreeSet<usize>) -> Result<Stratum> {
    let roots = rs.face_subsystem(j)?;
    let relations: Vec<Vec<i64>> = roots.iter().map(|b| b.coroot.clone()).collect();
    Ok(Stratum {
        j: j.clone(),
        z_j: FgQuotient::new(rs.rank(), &relations),
        roots,
    })
}

/// `chi_j`, given by the functional `mu_j`; checked to be integral on the coroots of `R_j`.
pub fn vertex_character(rs: &RootSystem, j: usize) -> Result<Character> {
    let alcove = rs.alcove();
    let mu = alcove
        .vertices
        .get(j)
        .ok_or_else(|| GerbeError::InvalidInput(format!("vertex {j} out of range")))?
        .clone();
    for beta in rs.face_subsystem(&[j].into())? {
        if !rs.pair(&mu, &beta.coroot_q()).is_integer() {
            return Err(GerbeError::Internal(format!(
                "vertex {j} pairs non-integrally with a coroot of its centralizer"
            )));
        }
    }
    Ok(Character { functional: mu })
}

/// `chi_ij`, given by `mu_j - mu_i`; checked to vanish on the coroots of `R_ij`.
pub fn edge_character(rs: &RootSystem, i: usize, j: usize) -> Result<Character> {
    if i == j {
        return Err(GerbeError::InvalidInput("edge needs distinct vertices".into()));
    }
    let alcove = rs.alcove();
    if i.max(j) > rs.rank() {
        return Err(GerbeError::InvalidInput(format!("vertex {} out of range", i.max(j))));
    }
    let functional = exact::sub(&alcove.vertices[j], &alcove.vertices[i]);
    for beta in rs.face_subsystem(&[i, j].into())? {
        if !num_traits::Zero::is_zero(&rs.pair(&functional, &beta.coroot_q())) {
            return Err(GerbeError::Internal(format!(
                "edge ({i}, {j}) character is not invariant under its centralizer"
            )));
        }
    }
    Ok(Character { functional })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CocycleReport {
    pub level: u64,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violations: Vec<String>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `chi_ij = chi_j chi_i^{-1}` on `Z_ij` and `chi_ij chi_jk = chi_ik` on
/// `Z_ijk`, at level `l`, with all phases compared exactly.
pub fn check_character_cocycles(rs: &RootSystem, level: u64) -> Result<CocycleReport> {
    if level == 0 {
        return Err(GerbeError::InvalidInput("level must be positive".into()));
    }
    let r = rs.rank();
    let l = qi(level as i64);
    let vertex: Vec<Character> = (0..=r).map(|j| vertex_character(rs, j)).collect::<Result<_>>()?;
    let mut edge = vec![vec![None; r + 1]; r + 1];
    for i in 0..=r {
        for j in 0..=r {
            if i != j {
                edge[i][j] = Some(edge_character(rs, i, j)?);
            }
        }
    }
    let edge = |i: usize, j: usize| edge[i][j].as_ref().expect("distinct");
    let phase = |c: &Character, zeta: &[Q]| PhaseExponent::new(&l * rs.pair(&c.functional, zeta));
    let gens: Vec<QVec> = (0..r).map(|k| exact::unit_vec(r, k)).collect();

    let mut report = CocycleReport {
        level,
        ..Default::default()
    };
    for i in 0..=r {
        for j in 0..=r {
            if i == j {
                continue;
            }
            report.pairs_checked += 1;
            let st = stratum(rs, &[i, j].into())?;
            for zeta in &gens {
                let residue = phase(edge(i, j), zeta) - (phase(&vertex[j], zeta) - phase(&vertex[i], zeta));
                if !residue.is_zero() {
                    report
                        .violations
                        .push(format!("pair ({i},{j}) generator {zeta:?}: residue {residue}"));
                }
            }
            // Well-defined on Z_ij: the relations are killed.
            for beta in &st.roots {
                let v = phase(edge(i, j), &beta.coroot_q());
                if !v.is_zero() {
                    report
                        .violations
                        .push(format!("pair ({i},{j}) relation {:?}: {v}", beta.coroot));
                }
            }
            for k in 0..=r {
                if k == i || k == j {
                    continue;
                }
                report.triples_checked += 1;
                let sum = exact::add(&edge(i, j).functional, &edge(j, k).functional);
                if sum != edge(i, k).functional {
                    report.violations.push(format!("triple ({i},{j},{k}) functionals"));
                }
                for zeta in &gens {
                    let residue = phase(edge(i, j), zeta) + phase(edge(j, k), zeta) - phase(edge(i, k), zeta);
                    if !residue.is_zero() {
                        report
                            .violations
                            .push(format!("triple ({i},{j},{k}) generator {zeta:?}: residue {residue}"));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// A level together with a character of `Z`: one equivariant class over the
/// basic gerbe's level-`l` power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantClass {
    pub level: u64,
    pub twist: Character,
}

/// The gerbe data attached to a subgroup `Z`: its elements' actions on the alcove.
#[derive(Clone, Debug)]
pub struct GerbeContext<'a> {
    pub rs: &'a RootSystem,
    pub center: &'a Center,
    pub z: &'a CenterSubgroup,
    /// One automorphism per element of `z`, in `z`'s local order.
    pub actions: Vec<AlcoveAutomorphism>,
}

impl<'a> GerbeContext<'a> {
    pub fn new(rs: &'a RootSystem, center: &'a Center, z: &'a CenterSubgroup) -> Result<Self> {
        let all = center_action(rs, center)?;
        let actions = z.members.iter().map(|&m| all[m].clone()).collect();
        Ok(GerbeContext {
            rs,
            center,
            z,
            actions,
        })
    }

    /// The vertices `z . mu_0`, `z` in `Z`.
    pub fn orbit_of_zero(&self) -> BTreeSet<usize> {
        self.actions.iter().map(|a| a.special_vertex()).collect()
    }

    fn vertex(&self, j: usize) -> QVec {
        self.rs.alcove().vertices[j].clone()
    }

    fn check_in_lattice(&self, zeta: &[Q]) -> Result<()> {
        if !self.z.integral_lattice.contains(zeta)? {
            return Err(GerbeError::InvalidInput(
                "vector is not in the integral lattice of Z".into(),
            ));
        }
        Ok(())
    }

    /// The local phase the equivariant structure must absorb: `l <mu_v, zeta>`
    /// for `v` in the `Z`-orbit of the vertex 0.
    pub fn descent_residual(&self, level: u64, zeta: &[Q], v: usize) -> Result<PhaseExponent> {
        if !self.orbit_of_zero().contains(&v) {
            return Err(GerbeError::InvalidInput(format!(
                "vertex {v} is not in the orbit of 0"
            )));
        }
        self.check_in_lattice(zeta)?;
        Ok(PhaseExponent::new(qi(level as i64) * self.rs.pair(&self.vertex(v), zeta)))
    }

    /// True when every descent residual vanishes at level `l`.
    pub fn descends_at(&self, level: u64) -> bool {
        let basis = self.z.integral_lattice.basis_vectors();
        self.orbit_of_zero().iter().all(|&v| {
            basis.iter().all(|zeta| {
                self.descent_residual(level, zeta, v)
                    .expect("inputs are valid")
                    .is_zero()
            })
        })
    }

    /// Least level at which all descent residuals vanish; searched up to `4 ell_b`.
    pub fn minimal_descent_level(&self) -> Result<u64> {
        let cap = 4 * self.z.ell_b;
        (1..=cap).find(|&l| self.descends_at(l)).ok_or_else(|| {
            GerbeError::Internal(format!("no descent level up to {cap}"))
        })
    }

    /// Change in the transition phase of `P_jk` under the action of the local
    /// element `a` on both factors at lattice points `zeta2`, `zeta3`:
    /// `l(<mu_{j_z}, w_z^{-1} zeta2> - <mu_{k_z}, w_z^{-1} zeta3>) - l(<mu_j, zeta2> - <mu_k, zeta3>)`.
    pub fn equivariance_defect(
        &self,
        level: u64,
        a: usize,
        j: usize,
        k: usize,
        zeta2: &[Q],
        zeta3: &[Q],
    ) -> Result<PhaseExponent> {
        self.check_in_lattice(zeta2)?;
        self.check_in_lattice(zeta3)?;
        let act = &self.actions[a];
        let w_inv = act.w_z.inverse(self.rs);
        let (jz, kz) = (act.inverse_vertex(j), act.inverse_vertex(k));
        let l = qi(level as i64);
        let moved = self.rs.pair(&self.vertex(jz), &w_inv.apply(zeta2))
            - self.rs.pair(&self.vertex(kz), &w_inv.apply(zeta3));
        let fixed = self.rs.pair(&self.vertex(j), zeta2) - self.rs.pair(&self.vertex(k), zeta3);
        Ok(PhaseExponent::new(&l * moved - &l * fixed))
    }

    /// The phase identity behind the `Z x Z` action on `P_ij`: shifting the
    /// lattice arguments by coroots changes the transition phase by the coroot
    /// contributions alone.
    pub fn z2_lift_welldefined(&self, level: u64, i: usize, j: usize) -> bool {
        let r = self.rs.rank();
        let l = qi(level as i64);
        let (mi, mj) = (self.vertex(i), self.vertex(j));
        let p = |m: &[Q], v: &[Q]| &l * self.rs.pair(m, v);
        let coroots: Vec<QVec> = (0..r).map(|k| exact::unit_vec(r, k)).collect();
        let reps: Vec<&QVec> = self.z.elements.iter().map(|e| &e.rep).collect();
        reps.iter().all(|z1| {
            reps.iter().all(|z2| {
                coroots.iter().all(|x1| {
                    coroots.iter().all(|x2| {
                        let shifted = p(&mi, &exact::add(z1, x1)) - p(&mj, &exact::add(z2, x2));
                        let base = p(&mi, z1) - p(&mj, z2);
                        let corr = p(&mi, x1) - p(&mj, x2);
                        PhaseExponent::new(shifted - base - corr).is_zero()
                    })
                })
            })
        })
    }

    pub fn twist_class(&self, chi: &Character, level: u64) -> Result<EquivariantClass> {
        if level == 0 || level % self.z.ell_b != 0 {
            return Err(GerbeError::LevelNotMultiple {
                level,
                ell_b: self.z.ell_b,
            });
        }
        Ok(EquivariantClass {
            level,
            twist: chi.clone(),
        })
    }

    /// All equivariant classes at a level, one per character of `Z`.
    pub fn equivariant_classes(&self, level: u64) -> Result<Vec<EquivariantClass>> {
        character_group(self.rs, self.z)
            .iter()
            .map(|chi| self.twist_class(chi, level))
            .collect()
    }
}

/// Associativity defect of the multiplication
/// `(g1,g2,x) (g2,g3,y) = (g1, g3, alpha(g2 g1^{-1}, g3 g2^{-1}) x y)` on
/// `(g1,g2), (g2,g3), (g3,g4)`, with the `g` taken in `Z`.
pub fn gerbe_multiplication_defect(
    g: &GroupTable,
    alpha: &Cochain2,
    gs: [usize; 4],
) -> Result<PhaseExponent> {
    let diff = |x: usize, y: usize| g.mul(gs[y], g.inverse(gs[x]));
    let (a, b, c) = (diff(0, 1), diff(1, 2), diff(2, 3));
    let left = alpha[a][b].clone() + alpha[diff(0, 2)][c].clone();
    let right = alpha[b][c].clone() + alpha[a][diff(1, 3)].clone();
    // Validates normalization and sizes.
    torsion_associator(g, alpha, a, b, c)?;
    Ok(left - right)
}

/// Verification record in the machine-readable report stream.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub group: String,
    pub subgroup: Option<usize>,
    pub level: Option<u64>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckRecord {
    pub fn new(check: &str, group: &str, subgroup: Option<usize>, level: Option<u64>, failure: Option<String>) -> Self {
        CheckRecord {
            check: check.to_string(),
            group: group.to_string(),
            subgroup,
            level,
            status: if failure.is_none() { "pass" } else { "fail" },
            counterexample: failure,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}
