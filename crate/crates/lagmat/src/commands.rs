//! Subcommand bodies. Each returns a JSON report and a verdict; the binary
//! maps verdicts to exit codes.

use std::path::Path;

use lagmat_core::antisym::{
    bases_from_circuits, check_basis_axioms, check_circuit_axioms, circuits_from_bases, enumerate_antisymmetric,
    BasisFailure, CircuitFailure,
};
use lagmat_core::bridges::{
    ant_of_matroid, antisym_extension_even, check_gaussoid, enumerate_symmetric, extend_symmetric,
    gaussoid_from_antisym, restrict_transversal, sea_violation, SymmetricMatroid,
};
use lagmat_core::homotopy::{build_graphs, short_cycle_generation, CycleVerdict};
use lagmat_core::lagrangian::{is_lagrangian, matroid_of, plucker, weak_to_strong};
use lagmat_core::rgp::{check_rgp, check_sym, check_weak, circuit_set_from_rgp, rgp_from_circuit_set, underlying};
use lagmat_core::{ground, AntisymmetricMatroid, CircuitFamily, ESubset, LagrangianWitness, Matroid, RgpMode};
use rand::seq::index::sample;
use serde_json::{json, Value as Json};

use crate::error::{CliError, CliResult};
use crate::fixtures;
use crate::gen;
use crate::io::{Instance, Kind};

/// Default `n` limits for `enumerate`, before `LAGMAT_MAX_N`.
pub const DEFAULT_MAX_ANTISYM: usize = 2;
pub const DEFAULT_MAX_SYMMETRIC: usize = 3;
/// Limits that hold even with `--allow-large`.
pub const HARD_MAX_ANTISYM: usize = 3;
pub const HARD_MAX_SYMMETRIC: usize = 4;

/// Outcome of a command that produced a report.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Json,
    pub passed: bool,
}

fn texts(sets: &[ESubset]) -> Json {
    Json::Array(sets.iter().map(|s| Json::String(s.to_text())).collect())
}

fn pairs(list: &[(ESubset, ESubset)], a: &str, b: &str) -> Json {
    Json::Array(list.iter().map(|(x, y)| json!({ a: x.to_text(), b: y.to_text() })).collect())
}

fn basis_failure(f: &BasisFailure) -> Json {
    match f {
        BasisFailure::Empty => json!({ "axiom": "B1" }),
        BasisFailure::SkewSwap { basis, partner } => {
            json!({ "axiom": "B2", "basis": basis.to_text(), "partner": partner.to_text() })
        }
        BasisFailure::Exchange { b, b_prime, e } => {
            json!({ "axiom": "Exch", "B": b.to_text(), "B'": b_prime.to_text(), "e": e.to_string() })
        }
    }
}

fn circuit_failure(f: &CircuitFailure) -> Json {
    match f {
        CircuitFailure::Empty => json!({ "axiom": "C1" }),
        CircuitFailure::NotAntichain { small, big } => {
            json!({ "axiom": "C2", "small": small.to_text(), "big": big.to_text() })
        }
        CircuitFailure::Orthogonality { c1, c2 } => {
            json!({ "axiom": "Orth", "C1": c1.to_text(), "C2": c2.to_text() })
        }
        CircuitFailure::Maximality { t, e } => json!({ "axiom": "Max", "T": t.to_text(), "e": e.to_string() }),
    }
}

fn rgp_violations(v: &lagmat_core::rgp::RgpVerdict) -> Json {
    Json::Array(
        v.violations
            .iter()
            .map(|r| json!({ "S": r.s.to_text(), "T": r.t.to_text(), "width": r.width, "nonzero_terms": r.nonzero_terms }))
            .collect(),
    )
}

/// Axiom check for any instance kind.
pub fn check(inst: &Instance, mode: RgpMode) -> CliResult<Outcome> {
    let kind = inst.kind();
    let (passed, mut report) = match inst {
        Instance::Bases { n, sets } => {
            let v = check_basis_axioms(*n, sets)?;
            (v.is_valid(), json!({ "failure": v.failure.as_ref().map(basis_failure), "exch_prime_holds": v.exch_prime_holds() }))
        }
        Instance::Circuits { n, sets } => {
            let v = check_circuit_axioms(*n, sets)?;
            (v.is_valid(), json!({ "failure": v.failure.as_ref().map(circuit_failure) }))
        }
        Instance::Rgp { .. } => {
            let phi = inst.to_rgp()?;
            match mode {
                RgpMode::Full => {
                    let sym = check_sym(&phi);
                    let rel = check_rgp(&phi, RgpMode::Full)?;
                    let ok = sym.is_empty() && rel.is_valid();
                    (ok, json!({ "mode": "full", "checked": rel.checked, "sym_violations": pairs(&sym, "A", "B"), "violations": rgp_violations(&rel) }))
                }
                RgpMode::Weak => {
                    let v = check_weak(&phi)?;
                    (
                        v.is_valid(),
                        json!({
                            "mode": "weak",
                            "support_is_matroid": v.support_is_matroid,
                            "checked": v.relations.checked,
                            "sym_violations": pairs(&v.sym_violations, "A", "B"),
                            "violations": rgp_violations(&v.relations),
                        }),
                    )
                }
            }
        }
        Instance::Fcircuits { .. } => {
            let v = inst.to_fcircuits()?.check()?;
            (
                v.is_valid(),
                json!({
                    "prepared": v.prepared.as_ref().map(|p| format!("{p:?}")),
                    "orthogonality": v.orthogonality.map(|(x, y)| json!({ "X": x.to_text(), "Y": y.to_text() })),
                    "maximality": v.maximality.map(|s| s.to_text()),
                }),
            )
        }
        Instance::Matrix { .. } => {
            let ok = is_lagrangian(&inst.to_matrix()?)?;
            (ok, json!({ "lagrangian": ok }))
        }
        Instance::Matroid { n, bases } => match Matroid::new(*n, bases.clone()) {
            Ok(_) => (true, json!({ "failure": null })),
            Err(e) => (false, json!({ "failure": e.to_string() })),
        },
        Instance::Symmetric { n, sets } => {
            if let Some(b) = sets.iter().find(|b| b.n() != *n || !b.is_transversal()) {
                return Err(CliError::Schema(format!("{} is not a transversal", b.to_text())));
            }
            let mut sorted = sets.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let witness = if sorted.is_empty() {
                Some(json!({ "axiom": "nonempty" }))
            } else {
                sea_violation(&sorted).map(|(b1, b2, x)| {
                    json!({ "axiom": "SEA'", "B1": b1.to_text(), "B2": b2.to_text(), "x": x.to_string() })
                })
            };
            (witness.is_none(), json!({ "failure": witness }))
        }
        Instance::Gaussoid { n, sets } => {
            let v = check_gaussoid(*n, sets)?;
            (
                v.is_valid(),
                json!({ "not_allowable": texts(&v.not_allowable), "incompatible": pairs(&v.incompatible, "S1", "S2") }),
            )
        }
    };
    report["kind"] = json!(kind.as_str());
    report["valid"] = json!(passed);
    Ok(Outcome { report, passed })
}

/// The antisymmetric matroid an instance describes.
pub fn antisym_of(inst: &Instance) -> CliResult<AntisymmetricMatroid> {
    Ok(match inst {
        Instance::Bases { n, sets } => AntisymmetricMatroid::new(*n, sets)?,
        Instance::Circuits { n, sets } => bases_from_circuits(&CircuitFamily::new(*n, sets)?)?,
        Instance::Rgp { .. } => underlying(&inst.to_rgp()?)?,
        Instance::Fcircuits { .. } => bases_from_circuits(&inst.to_fcircuits()?.underlying()?)?,
        Instance::Matrix { .. } => matroid_of(&LagrangianWitness::new(inst.to_matrix()?)?),
        Instance::Matroid { n, bases } => ant_of_matroid(&Matroid::new(*n, bases.clone())?)?,
        Instance::Symmetric { n, sets } => {
            let s = SymmetricMatroid::new(*n, sets)?;
            if s.is_even() {
                antisym_extension_even(&s)?
            } else {
                let mut all = extend_symmetric(&s)?;
                if all.len() != 1 {
                    return Err(CliError::Refused(format!(
                        "symmetric matroid has {} antisymmetric extensions",
                        all.len()
                    )));
                }
                all.remove(0)
            }
        }
        Instance::Gaussoid { n, sets } => {
            let mut bases = ground::transversals(*n)?;
            bases.extend(ground::almost_transversals(*n)?.into_iter().filter(|a| !sets.contains(a)));
            AntisymmetricMatroid::new(*n, &bases)?
        }
    })
}

/// Converts between kinds. Same-kind conversion canonicalizes.
pub fn convert(inst: &Instance, to: Kind) -> CliResult<Instance> {
    let from = inst.kind();
    if from == to {
        return Ok(match inst {
            Instance::Rgp { .. } => Instance::from_rgp(&inst.to_rgp()?),
            Instance::Fcircuits { .. } => Instance::from_fcircuits(&inst.to_fcircuits()?),
            Instance::Matrix { .. } => Instance::from_matrix(&inst.to_matrix()?),
            _ => inst.clone(),
        });
    }
    Ok(match (inst, to) {
        (Instance::Matrix { .. }, Kind::Rgp) => {
            Instance::from_rgp(&plucker(&LagrangianWitness::new(inst.to_matrix()?)?))
        }
        (Instance::Matrix { .. }, Kind::Fcircuits) => {
            let phi = plucker(&LagrangianWitness::new(inst.to_matrix()?)?);
            Instance::from_fcircuits(&circuit_set_from_rgp(&phi)?)
        }
        (Instance::Rgp { .. }, Kind::Fcircuits) => Instance::from_fcircuits(&circuit_set_from_rgp(&inst.to_rgp()?)?),
        (Instance::Rgp { .. }, Kind::Matrix) => Instance::from_matrix(weak_to_strong(&inst.to_rgp()?)?.matrix()),
        (Instance::Fcircuits { .. }, Kind::Rgp) => Instance::from_rgp(&rgp_from_circuit_set(&inst.to_fcircuits()?)?),
        (Instance::Fcircuits { .. }, Kind::Matrix) => {
            Instance::from_matrix(weak_to_strong(&rgp_from_circuit_set(&inst.to_fcircuits()?)?)?.matrix())
        }
        (_, Kind::Bases) => {
            let m = antisym_of(inst)?;
            Instance::Bases { n: m.n(), sets: m.bases().to_vec() }
        }
        (_, Kind::Circuits) => {
            let m = antisym_of(inst)?;
            Instance::Circuits { n: m.n(), sets: circuits_from_bases(&m).circuits().to_vec() }
        }
        (_, Kind::Symmetric) => {
            let s = restrict_transversal(&antisym_of(inst)?)?;
            Instance::Symmetric { n: s.n(), sets: s.bases().to_vec() }
        }
        (_, Kind::Gaussoid) => {
            let g = gaussoid_from_antisym(&antisym_of(inst)?)?;
            Instance::Gaussoid { n: g.n(), sets: g.members().to_vec() }
        }
        _ => {
            return Err(CliError::Refused(format!("no conversion from {from} to {to}")));
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumKind {
    Antisym,
    Symmetric,
    Even,
}

impl EnumKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EnumKind::Antisym => "antisym",
            EnumKind::Symmetric => "symmetric",
            EnumKind::Even => "even",
        }
    }

    fn limits(self) -> (usize, usize) {
        match self {
            EnumKind::Antisym => (DEFAULT_MAX_ANTISYM, HARD_MAX_ANTISYM),
            _ => (DEFAULT_MAX_SYMMETRIC, HARD_MAX_SYMMETRIC),
        }
    }
}

/// The largest `n` allowed: the default (or `max_n_env`) without the
/// override, the hard cap with it, and never above the hard cap.
pub fn enumeration_limit(kind: EnumKind, allow_large: bool, max_n_env: Option<usize>) -> usize {
    let (default, hard) = kind.limits();
    if allow_large {
        hard
    } else {
        max_n_env.unwrap_or(default).min(hard)
    }
}

/// Enumerates all instances of a kind, or `sample` of them chosen by `seed`.
pub fn enumerate(
    n: usize,
    kind: EnumKind,
    sample_size: Option<usize>,
    seed: u64,
    allow_large: bool,
    max_n_env: Option<usize>,
) -> CliResult<Json> {
    let limit = enumeration_limit(kind, allow_large, max_n_env);
    if n > limit {
        let hint = if allow_large || limit == kind.limits().1 { "" } else { "; pass --allow-large to raise it" };
        return Err(CliError::Refused(format!("n = {n} exceeds the limit {limit} for {}{hint}", kind.as_str())));
    }
    let all: Vec<Instance> = match kind {
        EnumKind::Antisym => enumerate_antisymmetric(n)?
            .into_iter()
            .map(|m| Instance::Bases { n, sets: m.bases().to_vec() })
            .collect(),
        EnumKind::Symmetric | EnumKind::Even => enumerate_symmetric(n)?
            .into_iter()
            .filter(|s| kind == EnumKind::Symmetric || s.is_even())
            .map(|s| Instance::Symmetric { n, sets: s.bases().to_vec() })
            .collect(),
    };
    let total = all.len();
    let chosen: Vec<&Instance> = match sample_size {
        None => all.iter().collect(),
        Some(k) => {
            let mut idx = sample(&mut gen::rng(seed), total, k.min(total)).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| &all[i]).collect()
        }
    };
    Ok(json!({
        "kind": kind.as_str(),
        "n": n,
        "total": total,
        "count": chosen.len(),
        "instances": chosen.iter().map(|i| i.to_json()).collect::<Vec<_>>(),
    }))
}

pub fn random_matrix(n: usize, field: &str, seed: u64) -> CliResult<Instance> {
    let f = gen::parse_field(field)?;
    Ok(Instance::from_matrix(&gen::random_matrix(f, n, seed)))
}

/// Short-cycle generation on the basis graph of any instance.
pub fn homotopy(inst: &Instance, max_weight: usize) -> CliResult<Outcome> {
    let m = antisym_of(inst)?;
    let (g, _) = build_graphs(&m);
    let r = short_cycle_generation(&g, max_weight)?;
    let verdict = match &r.verdict {
        CycleVerdict::Generated => json!("generated"),
        CycleVerdict::NotGenerated { rank, invariant_factors } => json!({
            "not_generated": { "rank": rank, "invariant_factors": invariant_factors.iter().map(|f| f.to_string()).collect::<Vec<_>>() }
        }),
        CycleVerdict::Inconclusive => json!("inconclusive"),
    };
    let report = json!({
        "vertices": r.vertices,
        "edges": r.edges,
        "cycle_rank": r.cycle_rank,
        "cycles_enumerated": r.cycles_enumerated,
        "max_weight": r.max_weight,
        "odd_cycle": r.odd_cycle.as_ref().map(|c| texts(c)),
        "verdict": verdict,
        "passed": r.passed(),
    });
    Ok(Outcome { passed: r.passed(), report })
}

/// Both basis graphs as edge lists over the listed vertices.
pub fn graph(inst: &Instance) -> CliResult<Json> {
    let m = antisym_of(inst)?;
    let (w, b) = build_graphs(&m);
    Ok(json!({
        "weighted": {
            "vertices": texts(&w.vertices),
            "edges": w.edges.iter().map(|&(x, y, wt)| json!([x, y, wt])).collect::<Vec<_>>(),
        },
        "basis": {
            "vertices": texts(&b.vertices),
            "edges": b.edges.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
        },
    }))
}

/// Writes every fixture as `<name>.json` under `dir`.
pub fn write_examples(dir: &Path) -> CliResult<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut names = Vec::new();
    for (name, inst) in fixtures::all() {
        inst.write(&dir.join(format!("{name}.json")))?;
        names.push(name.to_string());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> Instance {
        fixtures::all().into_iter().find(|(n, _)| *n == name).unwrap().1
    }

    #[test]
    fn every_fixture_checks_as_expected() {
        for (name, inst) in fixtures::all() {
            let out = check(&inst, RgpMode::Full).unwrap();
            assert_eq!(out.passed, name != "three_term_support", "{name}: {}", out.report);
        }
    }

    #[test]
    fn three_term_report_names_the_pair() {
        let out = check(&fixture("three_term_support"), RgpMode::Full).unwrap();
        let v = out.report["violations"].as_array().unwrap();
        let set = |t: &Json| ESubset::parse(4, t.as_str().unwrap()).unwrap();
        let (s, t) = (ESubset::parse(4, "1,2,2*,3*,4*").unwrap(), ESubset::parse(4, "1*,2,3").unwrap());
        assert!(v.iter().any(|r| set(&r["S"]) == s && set(&r["T"]) == t && r["nonzero_terms"] == 3));
        let weak = check(&fixture("three_term_support"), RgpMode::Weak).unwrap();
        assert!(!weak.passed);
    }

    #[test]
    fn conversions() {
        let bases = convert(&fixture("ant_u23_circuits"), Kind::Bases).unwrap();
        let Instance::Bases { sets, .. } = &bases else { panic!() };
        let mut t: Vec<ESubset> = sets.iter().copied().filter(|s| s.is_transversal()).collect();
        t.sort_unstable();
        let mut want: Vec<ESubset> = ["1,2,3*", "1,2*,3", "1*,2,3"].iter().map(|s| ESubset::parse(3, s).unwrap()).collect();
        want.sort_unstable();
        assert_eq!(t, want);
        assert_eq!(convert(&bases, Kind::Circuits).unwrap(), fixture("ant_u23_circuits"));

        let rgp = convert(&fixture("five_bases_matrix"), Kind::Rgp).unwrap();
        assert_eq!(rgp, fixture("five_bases_rgp"));
        let Instance::Rgp { values, .. } = &rgp else { panic!() };
        assert_eq!(values.len(), 6);
        assert_eq!(values.iter().filter(|(_, v)| v.is_zero()).count(), 1);
        let fc = convert(&rgp, Kind::Fcircuits).unwrap();
        assert_eq!(fc, fixture("five_bases_fcircuits"));
        let back = convert(&fc, Kind::Rgp).unwrap();
        assert!(lagmat_core::rgp::equivalent(&back.to_rgp().unwrap(), &rgp.to_rgp().unwrap()));
        assert!(convert(&fixture("u34"), Kind::Matrix).is_err());
    }

    #[test]
    fn enumeration_limits() {
        assert_eq!(enumeration_limit(EnumKind::Antisym, false, None), 2);
        assert_eq!(enumeration_limit(EnumKind::Antisym, false, Some(3)), 3);
        assert_eq!(enumeration_limit(EnumKind::Antisym, false, Some(9)), 3);
        assert_eq!(enumeration_limit(EnumKind::Even, true, None), 4);
        assert!(matches!(enumerate(5, EnumKind::Antisym, None, 0, false, None), Err(CliError::Refused(_))));
        let all = enumerate(2, EnumKind::Antisym, None, 0, false, None).unwrap();
        assert_eq!(all["count"], 16);
        let s = enumerate(2, EnumKind::Antisym, Some(4), 9, false, None).unwrap();
        assert_eq!(s["count"], 4);
        assert_eq!(s, enumerate(2, EnumKind::Antisym, Some(4), 9, false, None).unwrap());
    }

    #[test]
    fn graphs_and_homotopy() {
        let single = Instance::Bases { n: 2, sets: vec![ESubset::parse(2, "1,2").unwrap()] };
        let g = graph(&single).unwrap();
        assert_eq!(g["weighted"]["edges"], json!([]));
        assert_eq!(g["basis"]["edges"], json!([]));
        let inst = random_matrix(3, "GF(3)", 7).unwrap();
        assert!(homotopy(&inst, 8).unwrap().passed);
    }
}
