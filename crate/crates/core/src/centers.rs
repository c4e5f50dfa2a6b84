//! The center of a simply connected simple group, its subgroups `Z`, the
//! integral lattices `Lambda_Z`, basic levels, and characters of `Z`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::cohomology::{h2_u1 as h2_of_table, GroupTable, H2};
use crate::error::{GerbeError, Result};
use crate::exact::{self, QVec, Q};
use crate::lattice::{dual_lattice, min_integer_scale, quotient_group, FiniteAbelianGroup, Lattice};
use crate::phase::PhaseExponent;
use crate::rootsys::{Family, LieType, RootSystem};

/// An element `exp(lambda)` of the center, `lambda` in the coweight lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralElement {
    /// `0` for the identity, otherwise `lambda_i^vee` for the special node `i`.
    #[serde(serialize_with = "exact::serialize_qvec")]
    pub rep: QVec,
    /// 1-based special node, `None` for the identity.
    pub node: Option<usize>,
    /// Coordinates in the invariant-factor decomposition of the center.
    pub coords: Vec<u64>,
}

impl CentralElement {
    pub fn is_identity(&self) -> bool {
        self.node.is_none()
    }
}

/// `Z(G) = Lambda_coweight / Lambda_coroot` with its elements; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct Center {
    pub lie_type: LieType,
    pub group: FiniteAbelianGroup,
    pub elements: Vec<CentralElement>,
}

impl Center {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, coords: &[u64]) -> usize {
        self.elements
            .iter()
            .position(|e| e.coords == coords)
            .expect("coordinates of a central element")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.group.add(&self.elements[a].coords, &self.elements[b].coords))
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("inverse exists")
    }

    /// Index of the element `exp(v)` for `v` in the coweight lattice.
    pub fn index_of_vector(&self, v: &[Q]) -> usize {
        self.index_of(&self.group.coordinates(v))
    }
}

pub fn center(rs: &RootSystem) -> Center {
    let r = rs.rank();
    let coweights = Lattice::from_basis_vectors(&rs.fundamental_coweights).expect("full rank");
    let group = quotient_group(&coweights, &Lattice::standard(r)).expect("coroots lie in coweights");
    let specials = rs.special_nodes();
    let elements = group
        .elements()
        .into_iter()
        .map(|coords| {
            if coords.iter().all(|&c| c == 0) {
                return CentralElement {
                    rep: exact::zero_vec(r),
                    node: None,
                    coords,
                };
            }
            let node = specials
                .iter()
                .copied()
                .find(|&i| group.coordinates(&rs.fundamental_coweights[i - 1]) == coords)
                .expect("every nontrivial central element is exp of a special coweight");
            CentralElement {
                rep: rs.fundamental_coweights[node - 1].clone(),
                node: Some(node),
                coords,
            }
        })
        .collect();
    Center {
        lie_type: rs.lie_type,
        group,
        elements,
    }
}

/// A value of the fundamental level together with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelDatum {
    pub value: u64,
    pub source: String,
}

/// A subgroup `Z` of the center with its integral lattice and basic level.
#[derive(Clone, Debug)]
pub struct CenterSubgroup {
    pub lie_type: LieType,
    /// Position in the list returned by [`subgroups`].
    pub id: usize,
    /// Indices into the center's element list, ascending; the first is the identity.
    pub members: Vec<usize>,
    pub elements: Vec<CentralElement>,
    pub integral_lattice: Lattice,
    /// `Lambda_Z / Lambda_coroot`.
    pub invariants: FiniteAbelianGroup,
    pub ell_b: u64,
    pub ell_f: Option<LevelDatum>,
    center_factors: Vec<u64>,
}

impl CenterSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Local index of the product of local elements `a` and `b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let sum: Vec<u64> = self.elements[a]
            .coords
            .iter()
            .zip(&self.elements[b].coords)
            .zip(&self.center_factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect();
        self.elements
            .iter()
            .position(|e| e.coords == sum)
            .expect("subgroup is closed")
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0)
            .expect("inverse exists")
    }

    pub fn table(&self) -> GroupTable {
        let n = self.order();
        GroupTable::new((0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect())
    }

    /// Local index of `exp(v)` for a vector `v` of the integral lattice.
    pub fn index_of_vector(&self, v: &[Q]) -> Option<usize> {
        let coroots = Lattice::standard(v.len());
        self.elements.iter().position(|e| {
            coroots
                .contains(&exact::sub(v, &e.rep))
                .expect("dimensions agree")
        })
    }

    /// Special nodes of the nontrivial elements.
    pub fn nodes(&self) -> Vec<usize> {
        self.elements.iter().filter_map(|e| e.node).collect()
    }

    /// Gram matrix of the integral lattice basis under the basic inner product.
    pub fn lattice_gram(&self, rs: &RootSystem) -> exact::QMat {
        self.integral_lattice.gram(&rs.gram)
    }

    /// Cyclic order of a local element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// All subgroups of the center, sorted by order and then by member indices.
pub fn subgroups(rs: &RootSystem, center: &Center) -> Vec<CenterSubgroup> {
    let n = center.order();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let members: Vec<usize> = std::iter::once(0)
            .chain((1..n).filter(|&i| mask & (1 << (i - 1)) != 0))
            .collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| members.contains(&center.mul(a, b))));
        if closed {
            found.push(members);
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .enumerate()
        .map(|(id, members)| build_subgroup(rs, center, members, id))
        .collect()
}

fn build_subgroup(rs: &RootSystem, center: &Center, members: Vec<usize>, id: usize) -> CenterSubgroup {
    let r = rs.rank();
    let elements: Vec<CentralElement> = members.iter().map(|&i| center.elements[i].clone()).collect();
    let gens: Vec<QVec> = (0..r)
        .map(|i| exact::unit_vec(r, i))
        .chain(elements.iter().map(|e| e.rep.clone()))
        .collect();
    let integral_lattice = Lattice::from_generators(&gens, r).expect("contains the coroot lattice");
    let invariants =
        quotient_group(&integral_lattice, &Lattice::standard(r)).expect("coroots lie in Lambda_Z");
    let ell_b = min_integer_scale(&integral_lattice.gram(&rs.gram));
    CenterSubgroup {
        lie_type: rs.lie_type,
        id,
        members,
        elements,
        integral_lattice,
        invariants,
        ell_b,
        ell_f: None,
        center_factors: center.group.invariant_factors.clone(),
    }
}

pub fn basic_level(z: &CenterSubgroup) -> u64 {
    z.ell_b
}

/// Least `l` in `1..=max` with `l <b_i, b_j>` integral for all basis pairs.
pub fn basic_level_by_search(rs: &RootSystem, lattice: &Lattice, max: u64) -> Option<u64> {
    let basis = lattice.basis_vectors();
    (1..=max).find(|&l| {
        let lq = exact::qi(l as i64);
        basis
            .iter()
            .all(|a| basis.iter().all(|b| (&lq * rs.pair(a, b)).is_integer()))
    })
}

/// Everything derived from a Lie type that the rest of the library works with.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub rs: RootSystem,
    pub center: Center,
    pub subgroups: Vec<CenterSubgroup>,
}

impl GroupData {
    pub fn new(t: LieType) -> Self {
        let rs = RootSystem::new(t);
        let center = center(&rs);
        let subgroups = subgroups(&rs, &center);
        GroupData {
            rs,
            center,
            subgroups,
        }
    }

    /// Attaches fundamental levels from `table` where present.
    pub fn with_levels(mut self, table: &LevelTable) -> Self {
        for z in &mut self.subgroups {
            z.ell_f = table.get(self.rs.lie_type, z.id).cloned();
        }
        self
    }

    pub fn full(&self) -> &CenterSubgroup {
        self.subgroups.last().expect("at least the trivial subgroup")
    }

    pub fn trivial(&self) -> &CenterSubgroup {
        &self.subgroups[0]
    }
}

/// A character of `Z`, given by a functional on `t` that is integral on coroots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    #[serde(serialize_with = "exact::serialize_qvec")]
    pub functional: QVec,
}

impl Character {
    pub fn evaluate(&self, rs: &RootSystem, zeta: &[Q]) -> PhaseExponent {
        PhaseExponent::new(rs.pair(&self.functional, zeta))
    }

    pub fn is_trivial_on(&self, rs: &RootSystem, z: &CenterSubgroup) -> bool {
        z.integral_lattice
            .basis_vectors()
            .iter()
            .all(|b| self.evaluate(rs, b).is_zero())
    }
}

/// Coset representatives of `(Lambda_coroot)* / (Lambda_Z)*`; the first is trivial.
pub fn character_group(rs: &RootSystem, z: &CenterSubgroup) -> Vec<Character> {
    let coroot_dual = Lattice::from_basis(rs.gram_inverse().clone()).expect("full rank");
    let z_dual = dual_lattice(&z.integral_lattice, &rs.gram).expect("basic Gram is definite");
    let q = quotient_group(&coroot_dual, &z_dual).expect("Lambda_Z contains the coroots");
    q.elements()
        .iter()
        .map(|c| Character {
            functional: q.representative(c),
        })
        .collect()
}

pub fn h2_u1(z: &CenterSubgroup) -> Result<H2> {
    h2_of_table(&z.table())
}

/// Fundamental levels keyed by (type, subgroup id).
#[derive(Clone, Debug, Default)]
pub struct LevelTable {
    entries: BTreeMap<(LieType, usize), LevelDatum>,
}

impl LevelTable {
    pub fn get(&self, t: LieType, id: usize) -> Option<&LevelDatum> {
        self.entries.get(&(t, id))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(LieType, usize), &LevelDatum)> {
        self.entries.iter()
    }

    /// Parses records `family rank subgroup_id ell_f source-tag`. Blank lines and
    /// `#` comments are skipped. Each record is validated against the computed
    /// subgroup: `ell_f` must be 1 or 2 and divide `ell_b`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cache: BTreeMap<LieType, GroupData> = BTreeMap::new();
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| GerbeError::LevelData { line, msg };
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [family, rank, id, ell_f, source] = fields[..] else {
                return Err(err(format!("expected 5 fields, found {}", fields.len())));
            };
            let family = family
                .chars()
                .next()
                .filter(|_| family.len() == 1)
                .and_then(Family::from_letter)
                .ok_or_else(|| err(format!("unknown family {family:?}")))?;
            let rank: usize = rank.parse().map_err(|_| err(format!("bad rank {rank:?}")))?;
            let t = LieType::new(family, rank).map_err(|e| err(e.to_string()))?;
            let id: usize = id.parse().map_err(|_| err(format!("bad subgroup id {id:?}")))?;
            let value: u64 = ell_f.parse().map_err(|_| err(format!("bad level {ell_f:?}")))?;
            let data = cache.entry(t).or_insert_with(|| GroupData::new(t));
            let z = data
                .subgroups
                .get(id)
                .ok_or_else(|| err(format!("{t} has no subgroup {id}")))?;
            if !(value == 1 || value == 2) {
                return Err(err(format!("fundamental level {value} is not 1 or 2")));
            }
            if z.ell_b % value != 0 {
                return Err(err(format!(
                    "fundamental level {value} does not divide basic level {}",
                    z.ell_b
                )));
            }
            let datum = LevelDatum {
                value,
                source: source.to_string(),
            };
            if entries.insert((t, id), datum).is_some() {
                return Err(err(format!("duplicate record for {t} subgroup {id}")));
            }
        }
        Ok(LevelTable { entries })
    }
}

pub const BUNDLED_LEVEL_DATA: &str = include_str!("../data/fundamental_levels.txt");

/// The bundled fundamental level table.
pub fn bundled_levels() -> &'static LevelTable {
    static TABLE: OnceLock<LevelTable> = OnceLock::new();
    TABLE.get_or_init(|| LevelTable::parse(BUNDLED_LEVEL_DATA).expect("bundled level data is valid"))
}
