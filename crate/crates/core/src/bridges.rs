//! Matroids, symmetric matroids (lifted delta-matroids), gaussoids and
//! oriented gaussoids seen through antisymmetric matroids.

use alloc::format;
use alloc::vec::Vec;

use crate::antisym::{self, bases_from_circuits, check_basis_axioms, partner, AntisymmetricMatroid, CircuitFamily};
use crate::error::{Error, Result};
use crate::ground::{self, ESubset, Element};
use crate::lagrangian::{laplace_coordinate, laplace_sign};
use crate::matroids::Matroid;
use crate::rgp::{relation_sum, RGPFunction};
use crate::tracts::{Tract, TractElement};

fn plain_set(n: usize, mask: u32) -> ESubset {
    ESubset::from_bits(n, mask as u64)
}

fn starred_set(n: usize, mask: u32) -> ESubset {
    ESubset::from_bits(n, (mask as u64) << n)
}

/// `ant(N)`: circuits `C(N) ∪ {C* : C ∈ C(N⊥)}`.
pub fn ant_of_matroid(m: &Matroid) -> Result<AntisymmetricMatroid> {
    let n = m.n();
    let mut circuits: Vec<ESubset> = m.circuits().into_iter().map(|c| plain_set(n, c)).collect();
    circuits.extend(m.dual().circuits().into_iter().map(|c| starred_set(n, c)));
    let family = CircuitFamily::new(n, &circuits)?;
    bases_from_circuits(&family)
}

/// `ant(N)|i = ant(N/i)` and `ant(N)|i* = ant(N∖i)`.
pub fn minor_commutation_check(m: &Matroid, i: usize) -> Result<bool> {
    let a = ant_of_matroid(m)?;
    let contract = a.elementary_minor(Element::plain(i))? == ant_of_matroid(&m.contract(i)?)?;
    let delete = a.elementary_minor(Element::starred(i))? == ant_of_matroid(&m.delete(i)?)?;
    Ok(contract && delete)
}

/// A nonempty set of transversals satisfying (SEA′).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricMatroid {
    n: usize,
    bases: Vec<ESubset>,
}

/// `(B1, B2, x)` with no `y ∈ B1 − B2` such that `B1 Δ {x,x*,y,y*}` is a basis.
pub fn sea_violation(bases: &[ESubset]) -> Option<(ESubset, ESubset, Element)> {
    for &b1 in bases {
        for &b2 in bases {
            let diff = b1.difference(b2);
            for x in diff.elements() {
                let ok = diff.elements().any(|y| {
                    let flip = ESubset::empty(b1.n()).with(x).with(x.star()).with(y).with(y.star());
                    bases.binary_search(&b1.symmetric_difference(flip)).is_ok()
                });
                if !ok {
                    return Some((b1, b2, x));
                }
            }
        }
    }
    None
}

impl SymmetricMatroid {
    pub fn new(n: usize, bases: &[ESubset]) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::Invalid("no bases".into()));
        }
        if let Some(b) = bases.iter().find(|b| b.n() != n || !b.is_transversal()) {
            return Err(Error::Invalid(format!("{b} is not a transversal of ±[{n}]")));
        }
        let mut bases = bases.to_vec();
        bases.sort_unstable();
        bases.dedup();
        if let Some((b1, b2, x)) = sea_violation(&bases) {
            return Err(Error::Invalid(format!("(SEA′) fails at B1={b1}, B2={b2}, x={x}")));
        }
        Ok(SymmetricMatroid { n, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[ESubset] {
        &self.bases
    }

    /// All `|B ∩ [n]|` share one parity.
    pub fn is_even(&self) -> bool {
        let parity = |b: &ESubset| b.unstarred_part().count_ones() % 2;
        self.bases.iter().all(|b| parity(b) == parity(&self.bases[0]))
    }

    /// Minimal subtransversals contained in no basis.
    pub fn circuits(&self) -> Vec<ESubset> {
        let mut out: Vec<ESubset> = Vec::new();
        let mut candidates: Vec<ESubset> = (0u64..1 << (2 * self.n))
            .map(|bits| ESubset::from_bits(self.n, bits))
            .filter(|s| s.is_subtransversal() && !self.bases.iter().any(|b| s.is_subset(*b)))
            .collect();
        candidates.sort_by_key(|s| s.len());
        for c in candidates {
            if !out.iter().any(|d| d.is_subset(c)) {
                out.push(c);
            }
        }
        out.sort_unstable();
        out
    }
}

/// Lift of a delta-matroid given by feasible sets (bit `i−1` for `i`).
pub fn lift(n: usize, feasible: &[u32]) -> Result<SymmetricMatroid> {
    if feasible.is_empty() {
        return Err(Error::Invalid("no feasible sets".into()));
    }
    let full = ground::low_mask(n) as u32;
    if let Some(f) = feasible.iter().find(|f| **f & !full != 0) {
        return Err(Error::Invalid(format!("feasible set {f:#b} outside [{n}]")));
    }
    let bases: Vec<ESubset> = feasible.iter().map(|&f| plain_set(n, f).union(starred_set(n, full & !f))).collect();
    SymmetricMatroid::new(n, &bases)
}

/// The symmetric matroid `B(M) ∩ T_n`.
pub fn restrict_transversal(m: &AntisymmetricMatroid) -> Result<SymmetricMatroid> {
    SymmetricMatroid::new(m.n(), &m.transversal_bases())
}

/// Every symmetric matroid on `±[n]`, by filtering all transversal
/// families (`n ≤ 4`). Sorted by basis list.
pub fn enumerate_symmetric(n: usize) -> Result<Vec<SymmetricMatroid>> {
    if n > 4 {
        return Err(Error::Capacity { n, max: 4 });
    }
    let ts = ground::transversals(n)?;
    let mut out: Vec<SymmetricMatroid> = (1u64..1 << ts.len())
        .filter_map(|pick| {
            let fam: Vec<ESubset> = ts.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, t)| *t).collect();
            SymmetricMatroid::new(n, &fam).ok()
        })
        .collect();
    out.sort_unstable_by(|a, b| a.bases.cmp(&b.bases));
    Ok(out)
}

/// The unique antisymmetric matroid over an even symmetric matroid:
/// add `A ∈ A_n` whenever `A−x+y` and `A−x*+y*` are both bases.
pub fn antisym_extension_even(s: &SymmetricMatroid) -> Result<AntisymmetricMatroid> {
    if !s.is_even() {
        return Err(Error::Precondition("symmetric matroid is not even".into()));
    }
    let n = s.n;
    let is_basis = |b: ESubset| s.bases.binary_search(&b).is_ok();
    let mut bases = s.bases.clone();
    for a in ground::almost_transversals(n)? {
        let (i, j) = antisym::pair_indices(a);
        let found = [Element::plain(i), Element::starred(i)].into_iter().any(|x| {
            [Element::plain(j), Element::starred(j)]
                .into_iter()
                .any(|y| is_basis(a.without(x).with(y)) && is_basis(a.without(x.star()).with(y.star())))
        });
        if found {
            bases.push(a);
        }
    }
    AntisymmetricMatroid::new(n, &bases)
}

/// Every `B′ ⊆ A_n` making `B ∪ B′` an antisymmetric matroid, by exhaustion
/// over partner orbits (`n ≤ 3`).
pub fn extend_symmetric(s: &SymmetricMatroid) -> Result<Vec<AntisymmetricMatroid>> {
    let n = s.n;
    if n > 3 {
        return Err(Error::Capacity { n, max: 3 });
    }
    let orbits: Vec<[ESubset; 2]> = ground::almost_transversals(n)?
        .into_iter()
        .filter(|&a| a < partner(a)).map(|a| [a, partner(a)])
        .collect();
    let mut out = Vec::new();
    for pick in 0u64..1 << orbits.len() {
        let mut fam = s.bases.clone();
        for (k, o) in orbits.iter().enumerate() {
            if pick >> k & 1 == 1 {
                fam.extend_from_slice(o);
            }
        }
        if check_basis_axioms(n, &fam)?.is_valid() {
            out.push(AntisymmetricMatroid::new(n, &fam)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetricCircuitFailure {
    /// (C1).
    EmptyMember,
    /// (C2): the first is a proper subset of the second.
    NotMinimal(ESubset, ESubset),
    /// `|C1 ∩ C2*| = 1`.
    Orth(ESubset, ESubset),
    /// (Add′): no circuit inside `(C1 ∪ C2) − e`.
    Add(ESubset, ESubset, Element),
}

/// (C1), (C2), (Orth) and (Add′) for a family of subtransversals; returns
/// every failure found.
pub fn check_symmetric_circuit_axioms(n: usize, family: &[ESubset]) -> Result<Vec<SymmetricCircuitFailure>> {
    if let Some(c) = family.iter().find(|c| c.n() != n || !c.is_subtransversal()) {
        return Err(Error::Invalid(format!("{c} is not a subtransversal of ±[{n}]")));
    }
    let mut fam = family.to_vec();
    fam.sort_unstable();
    fam.dedup();
    let mut out = Vec::new();
    if fam.iter().any(|c| c.is_empty()) {
        out.push(SymmetricCircuitFailure::EmptyMember);
    }
    for &c1 in &fam {
        for &c2 in &fam {
            if c1 != c2 && c1.is_subset(c2) {
                out.push(SymmetricCircuitFailure::NotMinimal(c1, c2));
            }
            if c1 <= c2 && c1.intersection(c2.star()).len() == 1 {
                out.push(SymmetricCircuitFailure::Orth(c1, c2));
            }
            let union = c1.union(c2);
            if c1 < c2 && union.is_subtransversal() {
                for e in c1.intersection(c2).elements() {
                    let rest = union.without(e);
                    if !fam.iter().any(|c3| c3.is_subset(rest)) {
                        out.push(SymmetricCircuitFailure::Add(c1, c2, e));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(S1, S2)` for every edge relation: `S1 = S+a+b+b*+c*`, `S2 = S+b+c`
/// over transversals `S+abc` and ordered triples `(a, b, c)`.
pub fn edge_relations(n: usize) -> Result<Vec<(ESubset, ESubset)>> {
    let mut out = Vec::new();
    for t in ground::transversals(n)? {
        let els: Vec<Element> = t.elements().collect();
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let s = t.without(a).without(b).without(c);
                    out.push((s.with(a).with(b).with(b.star()).with(c.star()), s.with(b).with(c)));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A subset of `A_n`: closed under `A ↦ A−p+q` and compatible with every
/// edge relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussoid {
    n: usize,
    members: Vec<ESubset>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussoidVerdict {
    /// Members whose partner is missing.
    pub not_allowable: Vec<ESubset>,
    /// Edge relations `(S1, S2)` with exactly one term outside the set.
    pub incompatible: Vec<(ESubset, ESubset)>,
}

impl GaussoidVerdict {
    pub fn is_valid(&self) -> bool {
        self.not_allowable.is_empty() && self.incompatible.is_empty()
    }
}

pub fn check_gaussoid(n: usize, members: &[ESubset]) -> Result<GaussoidVerdict> {
    if let Some(a) = members.iter().find(|a| a.n() != n || !a.is_almost_transversal()) {
        return Err(Error::Invalid(format!("{a} is not an almost-transversal of ±[{n}]")));
    }
    let mut g = members.to_vec();
    g.sort_unstable();
    g.dedup();
    let inside = |s: ESubset| g.binary_search(&s).is_ok();
    let mut verdict = GaussoidVerdict {
        not_allowable: g.iter().copied().filter(|a| !inside(partner(*a))).collect(),
        ..GaussoidVerdict::default()
    };
    for (s1, s2) in edge_relations(n)? {
        let live = s1.difference(s2).elements().filter(|&x| !inside(s1.without(x)) && !inside(s2.with(x))).count();
        if live == 1 {
            verdict.incompatible.push((s1, s2));
        }
    }
    Ok(verdict)
}

impl Gaussoid {
    pub fn new(n: usize, members: &[ESubset]) -> Result<Self> {
        let verdict = check_gaussoid(n, members)?;
        if !verdict.is_valid() {
            return Err(Error::Invalid(format!("not a gaussoid: {verdict:?}")));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        Ok(Gaussoid { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[ESubset] {
        &self.members
    }
}

/// `A_n ∖ B(M)` for `M` containing every transversal.
pub fn gaussoid_from_antisym(m: &AntisymmetricMatroid) -> Result<Gaussoid> {
    let n = m.n();
    if let Some(t) = ground::transversals(n)?.into_iter().find(|t| !m.is_basis(*t)) {
        return Err(Error::Precondition(format!("transversal {t} is not a basis")));
    }
    let members: Vec<ESubset> = ground::almost_transversals(n)?.into_iter().filter(|a| !m.is_basis(*a)).collect();
    Gaussoid::new(n, &members)
}

/// Index sets `X, Y ⊆ [n]` with `A = [n] − X + Y*`.
fn xy_of(a: ESubset) -> (Vec<usize>, Vec<usize>) {
    let n = a.n();
    let plain = a.unstarred_part();
    let starred = a.starred_part();
    let x = (1..=n).filter(|k| plain >> (k - 1) & 1 == 0).collect();
    let y = (1..=n).filter(|k| starred >> (k - 1) & 1 == 1).collect();
    (x, y)
}

/// Reference sign `(−1)^σ(X)` of the coordinate `[n] − X + Y*`.
pub fn reference_sign(a: ESubset) -> TractElement {
    let (x, _) = xy_of(a);
    Tract::Sign.sign(laplace_sign(a.n(), &x) as usize)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientedGaussoidVerdict {
    /// Coordinates `[n] − X + X*` off the reference sign.
    pub principal_violations: Vec<ESubset>,
    /// Edge relations `(S1, S2)` that are not null.
    pub edge_violations: Vec<(ESubset, ESubset)>,
}

impl OrientedGaussoidVerdict {
    pub fn is_valid(&self) -> bool {
        self.principal_violations.is_empty() && self.edge_violations.is_empty()
    }
}

fn require_sign(phi: &RGPFunction) -> Result<()> {
    if phi.tract() != Tract::Sign {
        return Err(Error::TractMismatch(Tract::Sign, phi.tract()));
    }
    Ok(())
}

pub fn check_oriented_gaussoid(phi: &RGPFunction) -> Result<OrientedGaussoidVerdict> {
    require_sign(phi)?;
    let n = phi.n();
    let mut verdict = OrientedGaussoidVerdict::default();
    for xb in 0u32..1 << n {
        let x: Vec<usize> = (1..=n).filter(|k| xb >> (k - 1) & 1 == 1).collect();
        let t = laplace_coordinate(n, &x, &x);
        if *phi.get(t) != reference_sign(t) {
            verdict.principal_violations.push(t);
        }
    }
    for (s1, s2) in edge_relations(n)? {
        if !relation_sum(phi, s1, s2).is_null() {
            verdict.edge_violations.push((s1, s2));
        }
    }
    Ok(verdict)
}

/// `φ(A)` times the reference sign, for each almost-transversal `A`.
pub fn almost_principal_signs(phi: &RGPFunction) -> Result<Vec<(ESubset, TractElement)>> {
    require_sign(phi)?;
    ground::almost_transversals(phi.n())?
        .into_iter()
        .map(|a| Ok((a, phi.get(a).mul(&reference_sign(a))?)))
        .collect()
}

/// An oriented gaussoid whose almost-principal signs avoid `−1`.
pub fn is_positive(phi: &RGPFunction) -> Result<bool> {
    if !check_oriented_gaussoid(phi)?.is_valid() {
        return Ok(false);
    }
    let minus = Tract::Sign.epsilon();
    Ok(almost_principal_signs(phi)?.iter().all(|(_, s)| *s != minus))
}
