//! When does the basic gerbe over `G/Z` extend equivariantly? The level-`l`
//! power does exactly when `ell_b | l`; the obstruction has order
//! `ell_b / gcd(l, ell_b)`.

use num_integer::Integer;
use serde::Serialize;

use crate::centers::{CenterSubgroup, GroupData, LevelDatum, LevelTable};
use crate::error::{GerbeError, Result};
use crate::rootsys::{Family, LieType};

pub fn admits_equivariant_extension(z: &CenterSubgroup, level: u64) -> bool {
    level % z.ell_b == 0
}

pub fn obstruction_order(z: &CenterSubgroup, level: u64) -> u64 {
    z.ell_b / level.gcd(&z.ell_b)
}

/// `k^2 | N`, or `k^2 | 2N` with `N = k = 2 mod 4`.
pub fn su_condition(n: u64, k: u64) -> Result<bool> {
    if n < 2 || k == 0 || n % k != 0 {
        return Err(GerbeError::InvalidInput(format!(
            "need N >= 2 and k | N, got N = {n}, k = {k}"
        )));
    }
    let k2 = k * k;
    Ok(n % k2 == 0 || ((2 * n) % k2 == 0 && n % 4 == 2 && k % 4 == 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub group: String,
    pub lie_type: String,
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub ell_b: u64,
    pub ell_f: Option<LevelDatum>,
    pub level: u64,
    pub admits: bool,
    pub obstruction_order: u64,
}

pub fn obstruction_report(data: &GroupData, z: &CenterSubgroup, level: u64) -> Result<ObstructionReport> {
    if level == 0 {
        return Err(GerbeError::InvalidInput("level must be positive".into()));
    }
    Ok(ObstructionReport {
        group: classical_name(data, z),
        lie_type: data.rs.lie_type.to_string(),
        subgroup: z.id,
        subgroup_order: z.order(),
        ell_b: z.ell_b,
        ell_f: z.ell_f.clone(),
        level,
        admits: admits_equivariant_extension(z, level),
        obstruction_order: obstruction_order(z, level),
    })
}

/// Classical name of `G/Z`. D-type quotients by order-2 subgroups are named by
/// the special node of their generator: node 1 gives `SO`, the spin nodes `Ss`.
pub fn classical_name(data: &GroupData, z: &CenterSubgroup) -> String {
    let t = data.rs.lie_type;
    let n = t.rank;
    let full = z.order() == data.center.order();
    if z.is_trivial() {
        return match t.family {
            Family::A => format!("SU({})", n + 1),
            Family::B => format!("Spin({})", 2 * n + 1),
            Family::C => format!("Sp({n})"),
            Family::D => format!("Spin({})", 2 * n),
            _ => t.to_string(),
        };
    }
    match t.family {
        Family::A => {
            if full {
                format!("PSU({})", n + 1)
            } else {
                format!("SU({})/Z{}", n + 1, z.order())
            }
        }
        Family::B => format!("SO({})", 2 * n + 1),
        Family::C => format!("PSp({n})"),
        Family::D if full => format!("PO({})", 2 * n),
        Family::D if z.nodes().contains(&1) => format!("SO({})", 2 * n),
        Family::D => format!("Ss({})", 2 * n),
        Family::E => format!("PE{n}"),
        _ => format!("{t}/Z{}", z.order()),
    }
}

/// Whether `G/Z` (nontrivial `Z`) appears in the list of groups whose basic
/// gerbe admits an equivariant extension: `SO(n)`, `PO(8n+2)`, `PSp(n)`,
/// `Ss(4n)`, `PE7`, and `SU(N)/Z_k` under [`su_condition`].
pub fn corollary_listed(data: &GroupData, z: &CenterSubgroup) -> Option<bool> {
    if z.is_trivial() {
        return None;
    }
    let t = data.rs.lie_type;
    let name = classical_name(data, z);
    let arg = |prefix: &str| -> Option<u64> {
        name.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
    };
    Some(match t.family {
        Family::A => su_condition(t.rank as u64 + 1, z.order() as u64).expect("k divides N"),
        Family::B | Family::C => true,
        Family::D => {
            if name.starts_with("SO(") {
                true
            } else if let Some(m) = arg("Ss(") {
                m % 4 == 0
            } else {
                let m = arg("PO(").expect("D-type quotient names");
                m >= 10 && m % 8 == 2
            }
        }
        Family::E => t.rank == 7,
        _ => false,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryRow {
    pub group: String,
    pub lie_type: String,
    pub subgroup: usize,
    pub order: usize,
    pub ell_b: u64,
    /// Listed by the corollary; `None` for simply connected groups.
    pub listed: Option<bool>,
    pub su_condition: Option<bool>,
    pub ell_f: Option<LevelDatum>,
    /// `ell_f = ell_b`, when `ell_f` is known.
    pub basic_admits: Option<bool>,
    /// Listing agrees with `ell_f = ell_b`.
    pub agrees: Option<bool>,
    pub verdict: String,
}

fn verdict(listed: Option<bool>, basic_admits: Option<bool>, ell_b: u64) -> String {
    match (listed, basic_admits) {
        (None, _) => "simply connected: admits",
        (_, Some(true)) => "basic gerbe admits an equivariant extension",
        (_, Some(false)) => "no equivariant extension of the basic gerbe",
        (Some(_), None) if ell_b > 2 => "no equivariant extension of the basic gerbe",
        (Some(_), None) => "depends on ell_f",
    }
    .to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryTable {
    pub max_rank: usize,
    pub max_n: usize,
    pub rows: Vec<CorollaryRow>,
    /// `su_condition => ell_b <= 2`, violations.
    pub su_implies_small_level: Vec<String>,
    /// `ell_b = 1 => su_condition`, violations.
    pub trivial_level_implies_su: Vec<String>,
    /// Rows where listing and `ell_f = ell_b` disagree, or `ell_f` is missing.
    /// `None` when no level data was supplied.
    pub listing_mismatches: Option<Vec<String>>,
}

impl CorollaryTable {
    pub fn passed(&self) -> bool {
        self.su_implies_small_level.is_empty()
            && self.trivial_level_implies_su.is_empty()
            && self.listing_mismatches.as_ref().is_none_or(|m| m.is_empty())
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from(
            "| group | type | subgroup | \\|Z\\| | ell_b | listed | su_condition | ell_f | ell_f = ell_b | verdict |\n\
             |---|---|---|---|---|---|---|---|---|---|\n",
        );
        let b = |x: Option<bool>| x.map_or("-".to_string(), |v| if v { "yes" } else { "no" }.to_string());
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.group,
                r.lie_type,
                r.subgroup,
                r.order,
                r.ell_b,
                b(r.listed),
                b(r.su_condition),
                r.ell_f.as_ref().map_or("-".to_string(), |d| d.value.to_string()),
                b(r.basic_admits),
                r.verdict
            ));
        }
        out
    }
}

/// Types covered by the table: `A_{N-1}` for `N <= max_n`, all other families up to `max_rank`.
pub fn table_types(max_rank: usize, max_n: usize) -> Vec<LieType> {
    let mut out: Vec<LieType> = (1..max_n)
        .filter_map(|r| LieType::new(Family::A, r).ok())
        .collect();
    out.extend(
        LieType::all_up_to(max_rank)
            .into_iter()
            .filter(|t| t.family != Family::A),
    );
    out
}

pub fn corollary_table(max_rank: usize, max_n: usize, levels: Option<&LevelTable>) -> Result<CorollaryTable> {
    if max_rank < 2 || max_n < 2 {
        return Err(GerbeError::InvalidInput("table bounds must be at least 2".into()));
    }
    let mut rows = Vec::new();
    let mut su_small = Vec::new();
    let mut small_su = Vec::new();
    let mut mismatches = Vec::new();
    for t in table_types(max_rank, max_n) {
        let mut data = GroupData::new(t);
        if let Some(levels) = levels {
            data = data.with_levels(levels);
        }
        for z in &data.subgroups {
            let group = classical_name(&data, z);
            let listed = corollary_listed(&data, z);
            let su = (t.family == Family::A && !z.is_trivial())
                .then(|| su_condition(t.rank as u64 + 1, z.order() as u64).expect("k divides N"));
            if su == Some(true) && z.ell_b > 2 {
                su_small.push(format!("{group}: ell_b = {}", z.ell_b));
            }
            if su == Some(false) && z.ell_b == 1 {
                small_su.push(group.clone());
            }
            let basic_admits = z.ell_f.as_ref().map(|d| d.value == z.ell_b);
            let agrees = listed.zip(basic_admits).map(|(l, a)| l == a);
            if levels.is_some() && listed.is_some() {
                match agrees {
                    Some(true) => {}
                    Some(false) => mismatches.push(format!(
                        "{group}: listed = {}, ell_f = {}, ell_b = {}",
                        listed.unwrap_or(false),
                        z.ell_f.as_ref().map_or(0, |d| d.value),
                        z.ell_b
                    )),
                    None => mismatches.push(format!("{group}: no ell_f data")),
                }
            }
            rows.push(CorollaryRow {
                group,
                lie_type: t.to_string(),
                subgroup: z.id,
                order: z.order(),
                ell_b: z.ell_b,
                listed,
                su_condition: su,
                ell_f: z.ell_f.clone(),
                basic_admits,
                agrees,
                verdict: verdict(listed, basic_admits, z.ell_b),
            });
        }
    }
    Ok(CorollaryTable {
        max_rank,
        max_n,
        rows,
        su_implies_small_level: su_small,
        trivial_level_implies_su: small_su,
        listing_mismatches: levels.map(|_| mismatches),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su_condition_examples() {
        assert!(su_condition(4, 2).unwrap());
        assert!(su_condition(2, 2).unwrap());
        assert!(!su_condition(3, 3).unwrap());
        assert!(su_condition(6, 1).unwrap());
        assert!(su_condition(4, 3).is_err());
    }

    #[test]
    fn obstruction_examples() {
        let a1 = GroupData::new("A1".parse().unwrap());
        assert!(!admits_equivariant_extension(a1.full(), 1));
        assert!(admits_equivariant_extension(a1.full(), 2));
        assert_eq!(obstruction_order(a1.full(), 1), 2);
        let a2 = GroupData::new("A2".parse().unwrap());
        assert!(admits_equivariant_extension(a2.full(), 3));
        assert_eq!(obstruction_order(a2.full(), 1), 3);
        assert!(admits_equivariant_extension(a2.trivial(), 1));
    }

    #[test]
    fn d_type_names() {
        let d4 = GroupData::new("D4".parse().unwrap());
        let names: Vec<String> = d4.subgroups.iter().map(|z| classical_name(&d4, z)).collect();
        assert_eq!(names[0], "Spin(8)");
        assert_eq!(names[4], "PO(8)");
        assert_eq!(names.iter().filter(|n| n.as_str() == "Ss(8)").count(), 2);
        assert_eq!(names.iter().filter(|n| n.as_str() == "SO(8)").count(), 1);
        let d5 = GroupData::new("D5".parse().unwrap());
        let names: Vec<String> = d5.subgroups.iter().map(|z| classical_name(&d5, z)).collect();
        assert_eq!(names, vec!["Spin(10)", "SO(10)", "PO(10)"]);
    }
}
