//! Verification suites. Each produces JSON records, one per check; a suite
//! passes when every record does.

use std::collections::BTreeSet;
use std::thread;

use gerbe_core::center_action::{center_action, check_homomorphism, lattice_stability, vertex_translation_identity};
use gerbe_core::centers::{basic_level_by_search, character_group};
use gerbe_core::forms_numeric::{check_cocycle, integrate_eta_rank1, NumericsConfig, UnitaryGroup};
use gerbe_core::gerbe_data::{check_character_cocycles, CheckRecord, GerbeContext};
use gerbe_core::lattice::{dual_lattice, quotient_group, Lattice};
use gerbe_core::tits::{cocycle_table, twisted_cocycle_identity};
use gerbe_core::{GroupData, LieType};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Lattices,
    Characters,
    Action,
    Tits,
    Descent,
    Forms,
    All,
}

pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub max_rank: usize,
}

pub fn passed(v: &Value) -> bool {
    v["status"] == "pass"
}

fn record(check: &str, t: LieType, subgroup: Option<usize>, level: Option<u64>, failure: Option<String>) -> Value {
    serde_json::to_value(CheckRecord::new(check, &t.to_string(), subgroup, level, failure)).expect("plain data")
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!cond).then(msg)
}

/// Runs `per_type` over every type up to `max_rank` on worker threads and
/// returns the records in type order.
fn over_types(max_rank: usize, per_type: fn(LieType) -> Vec<Value>) -> Vec<Value> {
    let types = LieType::all_up_to(max_rank);
    thread::scope(|s| {
        let handles: Vec<_> = types.iter().map(|&t| s.spawn(move || per_type(t))).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn lattices(t: LieType) -> Vec<Value> {
    let d = GroupData::new(t);
    let coroots = Lattice::standard(d.rs.rank());
    let mut out = Vec::new();
    for z in &d.subgroups {
        let q = quotient_group(&z.integral_lattice, &coroots).map(|q| q.invariant_factors);
        out.push(record(
            "quotient invariants",
            t,
            Some(z.id),
            None,
            fail_if(q.as_ref().ok() == Some(&z.invariants.invariant_factors), || format!("{q:?}")),
        ));
        let dd = dual_lattice(&z.integral_lattice, &d.rs.gram).and_then(|l| dual_lattice(&l, &d.rs.gram));
        out.push(record(
            "double dual",
            t,
            Some(z.id),
            None,
            fail_if(dd.as_ref().ok() == Some(&z.integral_lattice), || "double dual differs".into()),
        ));
        let searched = basic_level_by_search(&d.rs, &z.integral_lattice, 64);
        out.push(record(
            "basic level by search",
            t,
            Some(z.id),
            Some(z.ell_b),
            fail_if(searched == Some(z.ell_b), || format!("search gives {searched:?}")),
        ));
    }
    out
}

fn characters(t: LieType) -> Vec<Value> {
    let d = GroupData::new(t);
    let mut out = Vec::new();
    let mut levels = BTreeSet::from([1u64]);
    for z in &d.subgroups {
        let n = character_group(&d.rs, z).len();
        out.push(record(
            "character count",
            t,
            Some(z.id),
            None,
            fail_if(n == z.order(), || format!("{n} characters for |Z| = {}", z.order())),
        ));
        levels.extend([z.ell_b, 2 * z.ell_b]);
    }
    if t.rank <= 6 {
        for l in levels {
            let failure = match check_character_cocycles(&d.rs, l) {
                Ok(rep) => fail_if(rep.passed(), || rep.violations.join("; ")),
                Err(e) => Some(e.to_string()),
            };
            out.push(record("character cocycles", t, None, Some(l), failure));
        }
    }
    out
}

fn action(t: LieType) -> Vec<Value> {
    let d = GroupData::new(t);
    if d.center.order() == 1 {
        return Vec::new();
    }
    let actions = match center_action(&d.rs, &d.center) {
        Ok(a) => a,
        Err(e) => return vec![record("center action", t, None, None, Some(e.to_string()))],
    };
    let r = d.rs.rank();
    let hom = check_homomorphism(&d.center, &actions, d.full());
    let alpha0 = actions
        .iter()
        .find(|a| a.w_z.apply(&d.rs.affine_simple_root(0)) != d.rs.affine_simple_root(a.special_vertex()));
    let translation = actions
        .iter()
        .flat_map(|a| (0..=r).map(move |j| (a, j)))
        .find(|(a, j)| !vertex_translation_identity(&d.rs, a, *j));
    let stability = d.subgroups.iter().find(|z| {
        z.members
            .iter()
            .any(|&m| !lattice_stability(&d.rs, &actions[m], z))
    });
    vec![
        record("injective homomorphism", t, None, None, fail_if(hom, || "z -> w_z fails".into())),
        record(
            "w_z(alpha_0) = alpha_i",
            t,
            None,
            None,
            alpha0.map(|a| format!("z at node {:?}", a.z.node)),
        ),
        record(
            "vertex translation",
            t,
            None,
            None,
            translation.map(|(a, j)| format!("z at node {:?}, j = {j}", a.z.node)),
        ),
        record(
            "lattice stability",
            t,
            None,
            None,
            stability.map(|z| format!("subgroup {}", z.id)),
        ),
    ]
}

fn tits(t: LieType) -> Vec<Value> {
    let d = GroupData::new(t);
    if d.center.order() == 1 {
        return Vec::new();
    }
    let failure = center_action(&d.rs, &d.center)
        .and_then(|actions| {
            let table = cocycle_table(&d.rs, &d.center, &actions)?;
            Ok(fail_if(twisted_cocycle_identity(&d.center, &actions, &table), || {
                "twisted cocycle identity fails".into()
            }))
        })
        .unwrap_or_else(|e| Some(e.to_string()));
    vec![record("Tits cocycle", t, None, None, failure)]
}

fn descent(t: LieType) -> Vec<Value> {
    let d = GroupData::new(t);
    d.subgroups
        .iter()
        .map(|z| {
            let found = GerbeContext::new(&d.rs, &d.center, z).and_then(|c| c.minimal_descent_level());
            let failure = match &found {
                Ok(l) => fail_if(*l == z.ell_b, || format!("minimal descent level {l}")),
                Err(e) => Some(e.to_string()),
            };
            let mut v = record("minimal descent level", t, Some(z.id), Some(z.ell_b), failure);
            v["ell_b"] = json!(z.ell_b);
            v["minimal_descent_level"] = json!(found.ok());
            v
        })
        .collect()
}

fn forms(opts: &Options) -> Vec<Value> {
    let mut out = Vec::new();
    for (n, samples) in [(2usize, 100usize), (3, 50)] {
        let grp = UnitaryGroup::new(n);
        let cfg = NumericsConfig {
            seed: opts.seed,
            cocycle_tol: opts.tol,
            samples,
            ..Default::default()
        };
        let mut rep = check_cocycle(&grp, &cfg);
        if n == 2 {
            rep.integral_eta = integrate_eta_rank1(cfg.integral_resolution).ok();
        }
        let integral_ok = rep
            .integral_eta
            .is_none_or(|v| (v.abs() - 1.0).abs() <= cfg.integral_tol);
        let mut v = serde_json::to_value(&rep).expect("plain data");
        v["check"] = json!("forms cocycle");
        v["status"] = json!(if rep.passed && integral_ok { "pass" } else { "fail" });
        out.push(v);
        let faulty = check_cocycle(&grp, &NumericsConfig { perturbation: 1e-2, ..cfg });
        out.push(json!({
            "check": "fault injection detected",
            "group": grp.name(),
            "status": if faulty.passed { "fail" } else { "pass" },
            "witness": faulty.witness,
        }));
    }
    out
}

pub fn run(suite: Suite, opts: &Options) -> Vec<Value> {
    let m = opts.max_rank;
    match suite {
        Suite::Lattices => over_types(m, lattices),
        Suite::Characters => over_types(m, characters),
        Suite::Action => over_types(m, action),
        Suite::Tits => over_types(m, tits),
        Suite::Descent => over_types(m, descent),
        Suite::Forms => forms(opts),
        Suite::All => [Suite::Lattices, Suite::Characters, Suite::Action, Suite::Tits, Suite::Descent, Suite::Forms]
            .into_iter()
            .flat_map(|s| run(s, opts))
            .collect(),
    }
}
