//! Exhaustive and randomized oracles behind the acceptance criteria.
//!
//! Each criterion returns a [`Criterion`]; nothing panics on a failed check.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::{Duration, Instant};

use lagmat_core::antisym::{
    bases_from_circuits, check_basis_axioms, check_circuit_axioms, circuits_from_bases, enumerate_antisymmetric,
    orthogonality_witness, two_point_witness, BasisFailure,
};
use lagmat_core::bridges::{
    ant_of_matroid, antisym_extension_even, almost_principal_signs, check_oriented_gaussoid, enumerate_symmetric,
    extend_symmetric, minor_commutation_check, restrict_transversal, SymmetricMatroid,
};
use lagmat_core::homotopy::{build_weighted_graph, short_cycle_generation};
use lagmat_core::lagrangian::{
    circuit_vectors, matroid_of, plucker, reconstruct, support_duality_check, twist_witness, weak_to_strong,
};
use lagmat_core::matroids::{enumerate_matroids, Matroid};
use lagmat_core::rgp::{
    check_rgp, check_rgp_width, check_sym, circuit_set_from_rgp, equivalent, pushforward, relation_sum,
    rgp_from_circuit_set,
};
use lagmat_core::{
    ground, AntisymmetricMatroid, CircuitFamily, ESubset, Element, Field, FieldMatrix, FormalSum, LagrangianWitness,
    RGPFunction, RgpMode, Tract, TractMorphism, Value,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::{fixtures, gen};

/// Number of random instances in the shared corpus.
pub const CORPUS_SIZE: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ... {} ({}): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub corpus_size: usize,
    /// Also run the `n = 3` antisymmetric enumeration.
    pub antisym_n3: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { corpus_size: CORPUS_SIZE, antisym_n3: false }
    }
}

impl Options {
    /// Reads `LAGMAT_MAX_N`; a value of at least 3 turns on the `n = 3` runs.
    pub fn from_env() -> Self {
        let max_n = std::env::var("LAGMAT_MAX_N").ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(2);
        Options { antisym_n3: max_n >= 3, ..Options::default() }
    }
}

/// Counts checks and keeps the first few failures.
struct Checks {
    run: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Checks {
    fn new() -> Self {
        Checks { run: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < 5 {
            self.failures.push(msg);
        }
    }

    /// Runs a fallible block; an error counts as one failed check.
    fn block(&mut self, label: &str, f: impl FnOnce(&mut Checks) -> lagmat_core::Result<()>) {
        if let Err(e) = f(self) {
            self.run += 1;
            self.fail(format!("{label}: {e}"));
        }
    }

    fn finish(self, id: u8, title: &'static str, start: Instant, budget: Duration, extra: String) -> Criterion {
        let elapsed = start.elapsed();
        let in_budget = elapsed <= budget;
        let mut detail = format!("{} checks, {} failed, {:.2?} of {:?}", self.run, self.failed, elapsed, budget);
        if !extra.is_empty() {
            detail = format!("{extra}; {detail}");
        }
        if !in_budget {
            detail.push_str("; over budget");
        }
        if !self.failures.is_empty() {
            detail = format!("{detail}; first failures: {}", self.failures.join(" | "));
        }
        Criterion { id, title, passed: self.failed == 0 && self.run > 0 && in_budget, detail }
    }
}

fn sets(n: usize, list: &[&str]) -> Vec<ESubset> {
    let mut out: Vec<ESubset> = list.iter().map(|s| ESubset::parse(n, s).expect("literal set")).collect();
    out.sort_unstable();
    out
}

fn sorted(mut v: Vec<ESubset>) -> Vec<ESubset> {
    v.sort_unstable();
    v
}

fn show<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| format!("{{{x}}}")).collect::<Vec<_>>().join(",")
}

/// The shared random corpus: fields cycle `GF(2), GF(3), GF(5), Q`, sizes
/// cycle `2, 3, 4`, and instance `k` uses seed `k`.
pub fn corpus(size: usize) -> Vec<LagrangianWitness> {
    (0..size)
        .map(|k| {
            let field = [Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Rationals][k % 4];
            let n = 2 + (k / 4) % 3;
            gen::random_witness(&mut gen::rng(k as u64), field, n)
        })
        .collect()
}

/// Worked examples, reproduced exactly.
pub fn worked_examples() -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();

    c.block("five bases", |c| {
        let w = LagrangianWitness::new(fixtures::five_bases_matrix())?;
        let supports = sets(2, &["1,2", "1,1*,2*", "2,1*,2*"]);
        let m = matroid_of(&w);
        c.check(sorted(circuit_vectors(&w).supports()) == supports, || "row-space circuit supports".into());
        c.check(m.bases() == sets(2, &["1,2", "1,1*", "1,2*", "2,1*", "2,2*"]).as_slice(), || {
            format!("bases {}", show(m.bases()))
        });
        let starred = sorted(supports.iter().map(|s| s.star()).collect());
        c.check(m.circuits().circuits() == starred.as_slice(), || "circuits are the starred supports".into());
        c.check(starred == sets(2, &["1*,2*", "1,2,1*", "1,2,2*"]), || "starred supports".into());
        Ok(())
    });

    c.block("ant(U23)", |c| {
        let circuits = sets(3, &["1,2,3", "1*,2*", "1*,3*", "2*,3*"]);
        let m = bases_from_circuits(&CircuitFamily::new(3, &circuits)?)?;
        c.check(m.transversal_bases() == sets(3, &["1,2,3*", "1,2*,3", "1*,2,3"]), || {
            format!("transversal bases {}", show(&m.transversal_bases()))
        });
        c.check(ant_of_matroid(&Matroid::uniform(2, 3)?)? == m, || "ant(U23) from the matroid".into());
        let w = LagrangianWitness::new(fixtures::ant_u23_matrix())?;
        c.check(sorted(circuit_vectors(&w).supports()) == circuits, || "supports of V⊥ ⊕ V".into());
        c.check(matroid_of(&w) == m.star(), || "Plücker support is the starred matroid".into());
        Ok(())
    });

    c.block("ant(U34) minors", |c| {
        let a = ant_of_matroid(&Matroid::uniform(3, 4)?)?;
        let mut expect: Vec<&str> = vec!["1,2,3,4"];
        let pairs = ["1*,2*", "1*,3*", "1*,4*", "2*,3*", "2*,4*", "3*,4*"];
        expect.extend(pairs);
        c.check(a.circuits().circuits() == sets(4, &expect).as_slice(), || "circuits of ant(U34)".into());
        let contract = a.elementary_minor(Element::plain(4))?;
        c.check(contract.circuits().circuits() == sets(3, &["1,2,3", "1*,2*", "1*,3*", "2*,3*"]).as_slice(), || {
            format!("M|4 circuits {}", show(contract.circuits().circuits()))
        });
        let delete = a.elementary_minor(Element::starred(4))?;
        c.check(delete.circuits().circuits() == sets(3, &["1*", "2*", "3*"]).as_slice(), || {
            format!("M|4* circuits {}", show(delete.circuits().circuits()))
        });
        Ok(())
    });

    c.block("same transversal restriction", |c| {
        let m1 = AntisymmetricMatroid::transversal_matroid(2)?;
        let m2 = AntisymmetricMatroid::free(2)?;
        c.check(restrict_transversal(&m1)? == restrict_transversal(&m2)?, || "restrictions differ".into());
        let w1 = LagrangianWitness::new(fixtures::ternary(&[&[1, 0], &[0, 1]]))?;
        let w2 = LagrangianWitness::new(fixtures::ternary(&[&[1, 1], &[1, -1]]))?;
        c.check(matroid_of(&w1) == m1, || "[I|A1] over GF(3)".into());
        c.check(matroid_of(&w2) == m2, || "[I|A2] over GF(3)".into());
        // Every Lagrangian subspace of GF(2)^4 has a transversal basis, so it is
        // a twist of some [I|Σ].
        let f = Field::Prime(2);
        let mut reached = BTreeSet::new();
        for bits in 0..8u8 {
            let (a, b, d) = ((bits & 1) as i64, (bits >> 1 & 1) as i64, (bits >> 2 & 1) as i64);
            let w = LagrangianWitness::from_symmetric(&FieldMatrix::from_i64(f, &[&[a, b], &[b, d]]))?;
            for s in 0..4u64 {
                reached.insert(matroid_of(&twist_witness(&w, ESubset::from_bits(2, s))?));
            }
        }
        c.check(reached.contains(&m1), || "[I|I] over GF(2) missing".into());
        c.check(!reached.contains(&m2), || "free matroid represented over GF(2)".into());
        Ok(())
    });

    c.block("twelve almost-transversals", |c| {
        let s = SymmetricMatroid::new(3, &fixtures::no_strong_exchange())?;
        c.check(s.bases() == sets(3, &["1*,2*,3*", "1,2*,3*", "1*,2,3*", "1*,2*,3", "1,2,3"]).as_slice(), || {
            "lift of {∅,1,2,3,123}".into()
        });
        let b = ESubset::parse(3, "1*,2*,3*")?;
        let b2 = ESubset::parse(3, "1,2,3")?;
        for e in 1..=3 {
            let flip = ESubset::pair(3, 1).union(ESubset::pair(3, e));
            let count = [b, b2].iter().filter(|x| s.bases().contains(&x.symmetric_difference(flip))).count();
            c.check(count == 1, || format!("strong exchange count {count} at e={e}"));
        }
        let all = extend_symmetric(&s)?;
        let twelve = sets(
            3,
            &[
                "1*,2,2*", "1*,3,3*", "2*,1,1*", "2*,3,3*", "3*,1,1*", "3*,2,2*", "1,2,2*", "1,3,3*", "2,1,1*", "2,3,3*",
                "3,1,1*", "3,2,2*",
            ],
        );
        c.check(all.len() == 1, || format!("{} extensions", all.len()));
        if let Some(m) = all.first() {
            c.check(m.almost_transversal_bases() == twelve, || {
                format!("almost-transversal bases {}", show(&m.almost_transversal_bases()))
            });
        }
        Ok(())
    });

    c.block("fundamental circuits of [I|I]", |c| {
        let w = LagrangianWitness::new(fixtures::identity_pair(Field::Rationals, 3))?;
        let m = matroid_of(&w);
        c.check(m == AntisymmetricMatroid::transversal_matroid(3)?, || "matroid of [I|I]".into());
        c.check(sorted(circuit_vectors(&w).supports()) == sets(3, &["1,1*", "2,2*", "3,3*"]), || "row supports".into());
        for b in m.bases() {
            for e in b.star().elements() {
                let got = m.fundamental_circuit(*b, e)?;
                c.check(got == ESubset::pair(3, e.index()), || format!("C({b},{e}) = {got}"));
            }
        }
        Ok(())
    });

    c.block("three-term support", |c| {
        let phi = fixtures::three_term_function();
        c.check(phi.support().len() == 43, || format!("support size {}", phi.support().len()));
        c.check(check_sym(&phi).is_empty(), || "(Sym)".into());
        c.check(check_rgp_width(&phi, Some(3))?.is_valid(), || "a 3-term relation fails".into());
        let s = ESubset::parse(4, "1,2,2*,3*,4*")?;
        let t = ESubset::parse(4, "1*,2,3")?;
        let sum = relation_sum(&phi, s, t);
        let total: u32 = sum.terms().filter_map(|x| x.as_residue()).sum();
        c.check(sum.len() == 3 && total % 2 == 1, || format!("{} terms, sum {total}", sum.len()));
        let full = check_rgp(&phi, RgpMode::Full)?;
        c.check(full.violations.iter().any(|v| v.s == s && v.t == t && v.nonzero_terms == 3), || {
            "listed pair not reported".into()
        });
        c.check(full.violations.iter().all(|v| v.width >= 4), || "violation below width 4".into());
        Ok(())
    });

    c.block("positive definite", |c| {
        let sigma = fixtures::positive_definite_sigma();
        c.check(lagmat_core::linalg::is_positive_definite(&sigma), || "Σ not positive definite".into());
        let w = LagrangianWitness::from_symmetric(&sigma)?;
        let phi = pushforward(&plucker(&w), TractMorphism::RationalsToSign)?;
        c.check(check_oriented_gaussoid(&phi)?.is_valid(), || "not an oriented gaussoid".into());
        let negative: Vec<ESubset> = almost_principal_signs(&phi)?
            .into_iter()
            .filter(|(_, v)| *v.value() == Value::Sign(-1))
            .map(|(a, _)| a)
            .collect();
        c.check(sorted(negative.clone()) == sets(3, &["1,1*,2*", "3,2*,3*"]), || {
            format!("negative coordinates {}", show(&negative))
        });
        Ok(())
    });

    c.finish(1, "worked examples", start, Duration::from_secs(1), String::new())
}

/// Plücker vectors of random Lagrangian matrices satisfy every relation.
pub fn plucker_relations(corpus: &[LagrangianWitness]) -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    for (k, w) in corpus.iter().enumerate() {
        c.block(&format!("instance {k}"), |c| {
            let phi = plucker(w);
            c.check(check_sym(&phi).is_empty(), || format!("instance {k}: (Sym)"));
            let v = check_rgp(&phi, RgpMode::Full)?;
            c.check(v.is_valid(), || format!("instance {k}: {} relation failures", v.violations.len()));
            c.check(reconstruct(&phi)?.same_subspace(w), || format!("instance {k}: reconstruct"));
            c.check(support_duality_check(w), || format!("instance {k}: support duality"));
            Ok(())
        });
    }
    let extra = format!("{} instances", corpus.len());
    c.finish(2, "Plücker relations on random Lagrangians", start, Duration::from_secs(60), extra)
}

/// All basis families and all antichain circuit families on `±[2]`.
pub fn cryptomorphism_n2() -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut counts = (0usize, 0usize);
    c.block("n = 2", |c| {
        let cands = ground::coordinates(2)?;
        let mut via_bases = BTreeSet::new();
        for pick in 0u32..1 << cands.len() {
            let fam: Vec<ESubset> = (0..cands.len()).filter(|k| pick >> k & 1 == 1).map(|k| cands[k]).collect();
            if !check_basis_axioms(2, &fam)?.is_valid() {
                continue;
            }
            counts.0 += 1;
            let m = AntisymmetricMatroid::new(2, &fam)?;
            let circuits = circuits_from_bases(&m);
            c.check(bases_from_circuits(&circuits)? == m, || format!("bases {} do not return", show(&fam)));
            via_bases.insert(circuits.circuits().to_vec());
        }
        let members: Vec<ESubset> =
            (0u64..16).map(|b| ESubset::from_bits(2, b)).filter(|s| s.skew_pair_count() <= 1).collect();
        let mut via_circuits = BTreeSet::new();
        for pick in 0u32..1 << members.len() {
            let fam: Vec<ESubset> = (0..members.len()).filter(|k| pick >> k & 1 == 1).map(|k| members[k]).collect();
            let antichain = fam.iter().all(|a| fam.iter().all(|b| a == b || !a.is_subset(*b)));
            if !antichain || !check_circuit_axioms(2, &fam)?.is_valid() {
                continue;
            }
            counts.1 += 1;
            let m = bases_from_circuits(&CircuitFamily::new(2, &fam)?)?;
            let back = circuits_from_bases(&m);
            c.check(back.circuits() == sorted(fam.clone()).as_slice(), || format!("circuits {} do not return", show(&fam)));
            via_circuits.insert(sorted(fam));
        }
        c.check(counts.0 == counts.1, || format!("{} basis families vs {} circuit families", counts.0, counts.1));
        c.check(via_bases == via_circuits, || "the two images differ".into());
        Ok(())
    });
    let extra = format!("{} matroids from each side", counts.0);
    c.finish(3, "bases and circuits agree at n = 2", start, Duration::from_secs(10), extra)
}

fn roundtrip(c: &mut Checks, label: &str, phi: &RGPFunction) -> lagmat_core::Result<()> {
    let circuits = circuit_set_from_rgp(phi)?;
    let back = rgp_from_circuit_set(&circuits)?;
    c.check(equivalent(phi, &back), || format!("{label}: rgp → fcircuits → rgp"));
    c.check(circuit_set_from_rgp(&back)? == circuits, || format!("{label}: fcircuits → rgp → fcircuits"));
    Ok(())
}

/// Functions and circuit sets convert back and forth.
pub fn circuit_roundtrips(corpus: &[LagrangianWitness]) -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut functions = 0usize;
    for (k, w) in corpus.iter().enumerate() {
        c.block(&format!("instance {k}"), |c| {
            let phi = plucker(w);
            let mut all = vec![pushforward(&phi, TractMorphism::ToKrasner(phi.tract()))?];
            if phi.tract() == Tract::Rationals {
                all.push(pushforward(&phi, TractMorphism::RationalsToSign)?);
            }
            all.push(phi);
            for f in &all {
                functions += 1;
                roundtrip(c, &format!("instance {k} over {}", f.tract()), f)?;
            }
            Ok(())
        });
    }
    let extra = format!("{functions} functions");
    c.finish(4, "F-circuit roundtrips", start, Duration::from_secs(120), extra)
}

fn homotopy_check(c: &mut Checks, label: &str, m: &AntisymmetricMatroid) -> lagmat_core::Result<()> {
    let report = short_cycle_generation(&build_weighted_graph(m), 8)?;
    c.check(report.passed(), || format!("{label}: {:?}", report.verdict));
    Ok(())
}

/// Short cycles generate the cycle space of every basis graph.
pub fn short_cycles(corpus: &[LagrangianWitness], opts: Options) -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    for (k, w) in corpus.iter().enumerate() {
        c.block(&format!("instance {k}"), |c| homotopy_check(c, &format!("instance {k}"), &matroid_of(w)));
    }
    let top = if opts.antisym_n3 { 3 } else { 2 };
    let mut enumerated = 0;
    for n in 1..=top {
        c.block(&format!("n = {n}"), |c| {
            for m in enumerate_antisymmetric(n)? {
                enumerated += 1;
                homotopy_check(c, &format!("bases {}", show(m.bases())), &m)?;
            }
            Ok(())
        });
    }
    let extra = format!("{} instances, {enumerated} enumerated matroids up to n = {top}", corpus.len());
    c.finish(5, "short cycles generate", start, Duration::from_secs(300), extra)
}

/// Weak functions over fields come from Lagrangian matrices.
pub fn weak_to_strong_check(corpus: &[LagrangianWitness]) -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    for (k, w) in corpus.iter().enumerate() {
        c.block(&format!("instance {k}"), |c| {
            let phi = plucker(w);
            let w2 = weak_to_strong(&phi)?;
            c.check(equivalent(&plucker(&w2), &phi), || format!("instance {k}: recovered matrix differs"));
            Ok(())
        });
    }
    let rejected = match weak_to_strong(&fixtures::three_term_function()) {
        Err(e) => e.to_string().contains("4-term relation fails"),
        Ok(_) => false,
    };
    c.check(rejected, || "three-term support not rejected at a 4-term relation".into());
    let extra = format!("{} instances", corpus.len());
    c.finish(6, "weak to strong", start, Duration::from_secs(60), extra)
}

/// Even symmetric matroids have exactly one antisymmetric extension.
pub fn even_extensions() -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut seen = 0;
    for n in 1..=3 {
        c.block(&format!("n = {n}"), |c| {
            let almost = ground::almost_transversals(n)?;
            for s in enumerate_symmetric(n)?.into_iter().filter(SymmetricMatroid::is_even) {
                seen += 1;
                let m = antisym_extension_even(&s)?;
                c.check(check_basis_axioms(n, m.bases())?.is_valid(), || format!("extension of {}", show(s.bases())));
                let mut found = Vec::new();
                for pick in 0u64..1 << almost.len() {
                    let mut fam = s.bases().to_vec();
                    fam.extend((0..almost.len()).filter(|k| pick >> k & 1 == 1).map(|k| almost[k]));
                    if check_basis_axioms(n, &fam)?.is_valid() {
                        found.push(sorted(fam));
                    }
                }
                c.check(found == vec![m.bases().to_vec()], || {
                    format!("{} completions of {}", found.len(), show(s.bases()))
                });
            }
            Ok(())
        });
    }
    let extra = format!("{seen} even symmetric matroids");
    c.finish(7, "even symmetric extension", start, Duration::from_secs(60), extra)
}

/// `ant` commutes with contraction and deletion.
pub fn minor_identities() -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    let mut seen = 0;
    for n in 1..=4 {
        c.block(&format!("n = {n}"), |c| {
            for m in enumerate_matroids(n)? {
                seen += 1;
                for i in 1..=n {
                    c.check(minor_commutation_check(&m, i)?, || format!("bases {:?}, element {i}", m.bases()));
                }
            }
            Ok(())
        });
    }
    let extra = format!("{seen} matroids");
    c.finish(8, "minors of ant(N)", start, Duration::from_secs(30), extra)
}

fn matroid_properties(c: &mut Checks, m: &AntisymmetricMatroid) -> lagmat_core::Result<()> {
    let n = m.n();
    for t in ground::transversals(n)? {
        for p in 1..=n {
            for q in p + 1..=n {
                let (pp, qq) = (ESubset::pair(n, p), ESubset::pair(n, q));
                let both = |a: ESubset, b: ESubset| m.is_basis(a) && m.is_basis(b);
                let count = both(t.union(pp).difference(qq), t.difference(pp).union(qq)) as usize
                    + both(t, t.symmetric_difference(pp.union(qq))) as usize
                    + both(t.symmetric_difference(pp), t.symmetric_difference(qq)) as usize;
                c.check(count != 1, || format!("trichotomy count 1 at {t}, {p}, {q}"));
                c.check(m.three_term_trichotomy(t, p, q).is_ok_and(|r| r.count() == count), || {
                    format!("trichotomy report at {t}, {p}, {q}")
                });
            }
        }
    }
    let circuits = m.circuits();
    c.check(orthogonality_witness(&circuits).is_none(), || format!("orthogonality in {}", show(m.bases())));
    c.check(two_point_witness(&circuits).is_none(), || format!("two-point in {}", show(m.bases())));
    Ok(())
}

fn finite_tracts() -> Vec<Tract> {
    vec![
        Tract::Krasner,
        Tract::Sign,
        Tract::Prime(2),
        Tract::Prime(3),
        Tract::Prime(5),
        Tract::Prime(7),
        Tract::Regular,
        Tract::Initial,
    ]
}

fn morphisms_from(t: Tract) -> Vec<TractMorphism> {
    let mut out = vec![TractMorphism::ToKrasner(t), TractMorphism::Identity(t)];
    match t {
        Tract::Rationals => out.push(TractMorphism::RationalsToSign),
        Tract::Regular => out.extend(
            [Tract::Prime(2), Tract::Prime(3), Tract::Prime(5), Tract::Rationals, Tract::Sign, Tract::Krasner]
                .map(TractMorphism::RegularToField),
        ),
        _ => {}
    }
    out
}

fn null_preserved(c: &mut Checks, s: &FormalSum) -> lagmat_core::Result<()> {
    if !s.is_null() {
        return Ok(());
    }
    for f in morphisms_from(s.tract()) {
        let image = f.apply_sum(s)?;
        c.check(image.is_null(), || format!("{f:?} maps a null sum to a non-null one"));
    }
    Ok(())
}

fn tract_axioms(c: &mut Checks) -> lagmat_core::Result<()> {
    for t in finite_tracts() {
        let eps = t.epsilon();
        c.check(eps.mul(&eps)? == t.one(), || format!("ε² ≠ 1 in {t}"));
        let units = t.units().unwrap_or_default();
        c.check(!units.is_empty(), || format!("{t} lists no units"));
        let mut elems = units.clone();
        elems.push(t.zero());
        for x in &units {
            let pair = FormalSum::from_terms(t, [x.clone(), x.mul(&eps)?])?;
            c.check(pair.is_null(), || format!("{x} − {x} not null in {t}"));
        }
        // Every sum of at most three terms from the units and zero.
        let k = elems.len();
        for len in 0..=3u32 {
            for code in 0..k.pow(len) {
                let terms = (0..len).map(|d| elems[code / k.pow(d) % k].clone());
                null_preserved(c, &FormalSum::from_terms(t, terms)?)?;
            }
        }
    }
    let mut rng = gen::rng(0x7ac7);
    for round in 0..2000 {
        let len = rng.gen_range(0..6);
        let qs: Vec<BigRational> = (0..len)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=4))))
            .collect();
        let total: BigRational = qs.iter().sum();
        let sum = FormalSum::from_terms(Tract::Rationals, qs.iter().map(|q| Tract::Rationals.from_rational(q).unwrap()))?;
        c.check(sum.is_null() == (total == BigRational::from_integer(BigInt::from(0))), || {
            format!("rational sum {round}")
        });
        null_preserved(c, &sum)?;
        let pos: Vec<BigRational> = (0..len)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(1i64..=3)), BigInt::from(rng.gen_range(1i64..=2))))
            .collect();
        let top = pos.iter().max().cloned();
        let tops = pos.iter().filter(|q| Some(*q) == top.as_ref()).count();
        let trop = FormalSum::from_terms(Tract::Tropical, pos.iter().map(|q| Tract::Tropical.from_rational(q).unwrap()))?;
        c.check(trop.is_null() == (len == 0 || tops >= 2), || format!("tropical sum {round}"));
        null_preserved(c, &trop)?;
    }
    Ok(())
}

/// Structural lemmas over enumerated and random matroids, and tract axioms.
pub fn property_suites(corpus: &[LagrangianWitness], opts: Options) -> Criterion {
    let start = Instant::now();
    let mut c = Checks::new();
    let top = if opts.antisym_n3 { 3 } else { 2 };
    for n in 1..=top {
        c.block(&format!("n = {n}"), |c| {
            for m in enumerate_antisymmetric(n)? {
                matroid_properties(c, &m)?;
            }
            Ok(())
        });
    }
    for (k, w) in corpus.iter().enumerate() {
        c.block(&format!("instance {k}"), |c| matroid_properties(c, &matroid_of(w)));
    }
    c.block("exchange at n = 2", |c| {
        let cands = ground::coordinates(2)?;
        for pick in 0u32..1 << cands.len() {
            let fam: Vec<ESubset> = (0..cands.len()).filter(|k| pick >> k & 1 == 1).map(|k| cands[k]).collect();
            let v = check_basis_axioms(2, &fam)?;
            if matches!(v.failure, Some(BasisFailure::Empty) | Some(BasisFailure::SkewSwap { .. })) {
                continue;
            }
            c.check(v.is_valid() == v.exch_prime_holds(), || format!("(Exch) and (Exch′) differ on {}", show(&fam)));
        }
        Ok(())
    });
    c.block("tract axioms", tract_axioms);
    c.finish(9, "property suites", start, Duration::from_secs(120), String::new())
}

/// Every criterion in order.
pub fn run_all(opts: Options) -> Vec<Criterion> {
    let corpus = corpus(opts.corpus_size);
    vec![
        worked_examples(),
        plucker_relations(&corpus),
        cryptomorphism_n2(),
        circuit_roundtrips(&corpus),
        short_cycles(&corpus, opts),
        weak_to_strong_check(&corpus),
        even_extensions(),
        minor_identities(),
        property_suites(&corpus, opts),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_mixed() {
        let a = corpus(12);
        assert_eq!(a, corpus(12));
        let fields: BTreeSet<String> = a.iter().map(|w| format!("{:?}", w.field())).collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(a.iter().map(|w| w.n()).max(), Some(4));
    }

    #[test]
    fn small_runs_pass() {
        let corpus = corpus(24);
        assert!(worked_examples().passed, "{}", worked_examples().detail);
        for crit in [plucker_relations(&corpus), circuit_roundtrips(&corpus), weak_to_strong_check(&corpus)] {
            assert!(crit.passed, "{}", crit.line());
        }
    }

    #[test]
    fn failures_are_reported() {
        let mut c = Checks::new();
        c.check(false, || "boom".into());
        let crit = c.finish(0, "t", Instant::now(), Duration::from_secs(1), String::new());
        assert!(!crit.passed);
        assert!(crit.detail.contains("boom"));
        assert!(crit.line().contains("FAIL"));
    }
}
