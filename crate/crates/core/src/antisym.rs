//! Antisymmetric matroids on `±[n]` in basis form and circuit form.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ground::{self, delete_pair, Classification, ESubset, Element};

/// Fast membership for families of subsets of `±[n]`.
pub(crate) enum Lookup {
    Bitmap(Vec<u64>),
    Sorted(Vec<u64>),
}

impl Lookup {
    pub(crate) fn new<'a, I: IntoIterator<Item = &'a ESubset>>(n: usize, sets: I) -> Self {
        if n <= 8 {
            let mut bits = alloc::vec![0u64; (1usize << (2 * n)).div_ceil(64)];
            for s in sets {
                let b = s.bits() as usize;
                bits[b / 64] |= 1 << (b % 64);
            }
            Lookup::Bitmap(bits)
        } else {
            let mut v: Vec<u64> = sets.into_iter().map(|s| s.bits()).collect();
            v.sort_unstable();
            v.dedup();
            Lookup::Sorted(v)
        }
    }

    #[inline]
    pub(crate) fn contains(&self, s: ESubset) -> bool {
        match self {
            Lookup::Bitmap(bits) => {
                let b = s.bits() as usize;
                bits[b / 64] >> (b % 64) & 1 == 1
            }
            Lookup::Sorted(v) => v.binary_search(&s.bits()).is_ok(),
        }
    }
}

fn check_members(n: usize, family: &[ESubset], allowed: impl Fn(ESubset) -> bool, what: &str) -> Result<()> {
    if n > ground::MAX_N {
        return Err(Error::Capacity { n, max: ground::MAX_N });
    }
    for s in family {
        if s.n() != n {
            return Err(Error::Invalid(format!("{s} lives on ±[{}], expected ±[{n}]", s.n())));
        }
        if !allowed(*s) {
            return Err(Error::Invalid(format!("{s} is not {what}")));
        }
    }
    Ok(())
}

fn normalized(family: &[ESubset]) -> Vec<ESubset> {
    let mut v = family.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// For an almost-transversal `A` with pair `p ⊆ A` and `q ∩ A = ∅`, the
/// partner `A - p + q`.
pub fn partner(a: ESubset) -> ESubset {
    let n = a.n();
    let p = a.skew_pair_mask();
    let q = !a.touched_mask() & ground::low_mask(n);
    debug_assert!(p.count_ones() == 1 && q.count_ones() == 1);
    ESubset::from_bits(n, (a.bits() & !(p | p << n)) | q | q << n)
}

/// Indices `(i, j)` of the pair inside `A` and the pair missing from `A`.
pub fn pair_indices(a: ESubset) -> (usize, usize) {
    let n = a.n();
    let p = a.skew_pair_mask();
    let q = !a.touched_mask() & ground::low_mask(n);
    (p.trailing_zeros() as usize + 1, q.trailing_zeros() as usize + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisFailure {
    /// (B1): the family is empty.
    Empty,
    /// (B2): `basis` is an almost-transversal basis whose partner is missing.
    SkewSwap { basis: ESubset, partner: ESubset },
    /// (Exch): no `f` works for `(b, b_prime, e)`.
    Exchange { b: ESubset, b_prime: ESubset, e: Element },
}

/// Witness against (Exch′): exactly one `g` qualifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchPrimeWitness {
    pub t: ESubset,
    pub t_prime: ESubset,
    pub e: Element,
    pub f: Element,
    pub g: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVerdict {
    pub failure: Option<BasisFailure>,
    pub exch_prime: Option<ExchPrimeWitness>,
}

impl BasisVerdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }

    pub fn exch_prime_holds(&self) -> bool {
        self.exch_prime.is_none()
    }
}

fn check_b2(family: &[ESubset], look: &Lookup) -> Option<BasisFailure> {
    family
        .iter()
        .filter(|a| a.is_almost_transversal())
        .find(|a| !look.contains(partner(**a)))
        .map(|a| BasisFailure::SkewSwap { basis: *a, partner: partner(*a) })
}

fn check_exch(family: &[ESubset], look: &Lookup) -> Option<BasisFailure> {
    for &b in family {
        for &bp in family {
            for e in b.difference(bp).elements() {
                let b_e = b.without(e);
                let bp_e = bp.with(e);
                if !b_e.is_subtransversal() || bp_e.skew_pair_count() != 1 {
                    continue;
                }
                let ok = bp
                    .difference(b)
                    .elements()
                    .any(|f| look.contains(b_e.with(f)) && look.contains(bp_e.without(f)));
                if !ok {
                    return Some(BasisFailure::Exchange { b, b_prime: bp, e });
                }
            }
        }
    }
    None
}

fn check_exch_prime(n: usize, look: &Lookup) -> Option<ExchPrimeWitness> {
    let ts = ground::transversals(n).expect("capacity checked");
    for &t in &ts {
        for &tp in &ts {
            let diff = tp.difference(t);
            for e in diff.elements() {
                for f in diff.elements() {
                    let s = t.with(e);
                    let sp = tp.without(f);
                    let mut hits = s
                        .difference(sp)
                        .elements()
                        .filter(|&g| look.contains(s.without(g)) && look.contains(sp.with(g)));
                    if let Some(g) = hits.next() {
                        if hits.next().is_none() {
                            return Some(ExchPrimeWitness { t, t_prime: tp, e, f, g });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks (B1), (B2) and (Exch), and separately (Exch′).
///
/// Failures are reported for the first offending tuple in ascending mask
/// order. Members must be transversals or almost-transversals of `±[n]`.
pub fn check_basis_axioms(n: usize, candidate: &[ESubset]) -> Result<BasisVerdict> {
    check_members(
        n,
        candidate,
        |s| s.classify() != Classification::Neither,
        "a transversal or an almost-transversal",
    )?;
    let family = normalized(candidate);
    let look = Lookup::new(n, &family);
    let failure = if family.is_empty() {
        Some(BasisFailure::Empty)
    } else {
        check_b2(&family, &look).or_else(|| check_exch(&family, &look))
    };
    let exch_prime = check_exch_prime(n, &look);
    Ok(BasisVerdict { failure, exch_prime })
}

/// The three-term exchange report for a transversal and two skew pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    /// `{T+p−q, T−p+q} ⊆ B`.
    pub almost: bool,
    /// `{T, T Δ (p+q)} ⊆ B`.
    pub both: bool,
    /// `{T Δ p, T Δ q} ⊆ B`.
    pub single: bool,
}

impl Trichotomy {
    pub fn count(&self) -> usize {
        self.almost as usize + self.both as usize + self.single as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntisymmetricMatroid {
    n: usize,
    bases: Vec<ESubset>,
}

impl AntisymmetricMatroid {
    /// Validates the basis axioms.
    pub fn new(n: usize, bases: &[ESubset]) -> Result<Self> {
        let verdict = check_basis_axioms(n, bases)?;
        match verdict.failure {
            None => Ok(AntisymmetricMatroid { n, bases: normalized(bases) }),
            Some(f) => Err(Error::Invalid(format!("basis axioms fail: {f:?}"))),
        }
    }

    pub(crate) fn from_valid(n: usize, bases: Vec<ESubset>) -> Self {
        let mut bases = bases;
        bases.sort_unstable();
        bases.dedup();
        AntisymmetricMatroid { n, bases }
    }

    /// `(±[n], T_n)`.
    pub fn transversal_matroid(n: usize) -> Result<Self> {
        Ok(AntisymmetricMatroid::from_valid(n, ground::transversals(n)?))
    }

    /// `(±[n], T_n ∪ A_n)`.
    pub fn free(n: usize) -> Result<Self> {
        Ok(AntisymmetricMatroid::from_valid(n, ground::coordinates(n)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[ESubset] {
        &self.bases
    }

    pub fn is_basis(&self, b: ESubset) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    pub(crate) fn lookup(&self) -> Lookup {
        Lookup::new(self.n, &self.bases)
    }

    pub fn transversal_bases(&self) -> Vec<ESubset> {
        self.bases.iter().copied().filter(|b| b.is_transversal()).collect()
    }

    pub fn almost_transversal_bases(&self) -> Vec<ESubset> {
        self.bases.iter().copied().filter(|b| b.is_almost_transversal()).collect()
    }

    /// `(E, B*)`.
    pub fn star(&self) -> Self {
        AntisymmetricMatroid::from_valid(self.n, self.bases.iter().map(|b| b.star()).collect())
    }

    pub fn circuits(&self) -> CircuitFamily {
        circuits_from_bases(self)
    }

    /// `{x ∈ S : S − x ∈ B}` with `S = B + e`.
    pub fn fundamental_circuit(&self, b: ESubset, e: Element) -> Result<ESubset> {
        if !b.is_transversal() || !self.is_basis(b) {
            return Err(Error::Precondition(format!("{b} is not a transversal basis")));
        }
        if b.contains(e) || e.index() > self.n {
            return Err(Error::Precondition(format!("{e} is not in {b}*")));
        }
        Ok(fundamental_in(&self.lookup(), b.with(e)))
    }

    pub fn three_term_trichotomy(&self, t: ESubset, p: usize, q: usize) -> Result<Trichotomy> {
        if !t.is_transversal() || t.n() != self.n {
            return Err(Error::Precondition(format!("{t} is not a transversal of ±[{}]", self.n)));
        }
        if p == q || p == 0 || q == 0 || p > self.n || q > self.n {
            return Err(Error::Precondition(format!("skew pairs {p} and {q} must be distinct indices")));
        }
        let pp = ESubset::pair(self.n, p);
        let qq = ESubset::pair(self.n, q);
        let has = |s: ESubset| self.is_basis(s);
        let report = Trichotomy {
            almost: has(t.union(pp).difference(qq)) && has(t.difference(pp).union(qq)),
            both: has(t) && has(t.symmetric_difference(pp.union(qq))),
            single: has(t.symmetric_difference(pp)) && has(t.symmetric_difference(qq)),
        };
        if report.count() == 1 {
            return Err(Error::Inconsistent(format!(
                "three-term exchange yields exactly one pair at T={t}, p={p}, q={q}"
            )));
        }
        Ok(report)
    }

    /// Basis rule of the elementary minor `M|i`, on `±[n-1]`.
    pub fn minor_by_bases(&self, i: Element) -> Result<Self> {
        self.check_element(i)?;
        let star = i.star();
        let any_with_i = self.bases.iter().any(|b| b.contains(i));
        let bases: Vec<ESubset> = if any_with_i {
            self.bases
                .iter()
                .filter(|b| b.contains(i) && !b.contains(star))
                .map(|b| delete_pair(b.without(i), i.index()))
                .collect()
        } else {
            self.bases.iter().map(|b| delete_pair(b.without(star), i.index())).collect()
        };
        Ok(AntisymmetricMatroid::from_valid(self.n - 1, bases))
    }

    /// The elementary minor `M|i`, cross-validated against the circuit rule.
    pub fn elementary_minor(&self, i: Element) -> Result<Self> {
        let by_bases = self.minor_by_bases(i)?;
        let by_circuits = self.circuits().minor(i)?;
        if by_bases.circuits() != by_circuits {
            return Err(Error::Inconsistent(format!(
                "minor at {i}: basis rule and circuit rule disagree"
            )));
        }
        Ok(by_bases)
    }

    fn check_element(&self, i: Element) -> Result<()> {
        if i.index() > self.n {
            return Err(Error::Invalid(format!("{i} outside ±[{}]", self.n)));
        }
        Ok(())
    }

    /// `{e_B : B ∈ B ∩ T_n}` with `e_{i*} = −e_i`.
    pub fn polytope_vertices(&self) -> Vec<Vec<i8>> {
        self.bases
            .iter()
            .filter(|b| b.is_transversal())
            .map(|b| (1..=self.n).map(|i| if b.contains(Element::plain(i)) { 1 } else { -1 }).collect())
            .collect()
    }
}

fn fundamental_in(look: &Lookup, s: ESubset) -> ESubset {
    let mut c = ESubset::empty(s.n());
    for x in s.elements() {
        if look.contains(s.without(x)) {
            c = c.with(x);
        }
    }
    c
}

fn minimal(mut family: Vec<ESubset>) -> Vec<ESubset> {
    family.sort_unstable_by_key(|c| (c.len(), c.bits()));
    family.dedup();
    let mut out: Vec<ESubset> = Vec::new();
    for c in family {
        if !out.iter().any(|d| d.is_subset(c)) {
            out.push(c);
        }
    }
    out.sort_unstable();
    out
}

/// Circuits through fundamental circuits of all transversal bases.
pub fn circuits_from_bases(m: &AntisymmetricMatroid) -> CircuitFamily {
    let look = m.lookup();
    let mut found = Vec::new();
    for b in m.bases.iter().filter(|b| b.is_transversal()) {
        for e in b.star().elements() {
            found.push(fundamental_in(&look, b.with(e)));
        }
    }
    CircuitFamily { n: m.n, circuits: minimal(found) }
}

/// `{B ∈ T_n ∪ A_n : no circuit ⊆ B}`.
pub fn bases_from_circuits(c: &CircuitFamily) -> Result<AntisymmetricMatroid> {
    let verdict = check_circuit_axioms(c.n, &c.circuits)?;
    if let Some(f) = verdict.failure {
        return Err(Error::Invalid(format!("circuit axioms fail: {f:?}")));
    }
    Ok(bases_avoiding(c.n, &c.circuits))
}

pub(crate) fn bases_avoiding(n: usize, circuits: &[ESubset]) -> AntisymmetricMatroid {
    let bases = ground::coordinates(n)
        .expect("capacity checked")
        .into_iter()
        .filter(|b| !circuits.iter().any(|c| c.is_subset(*b)))
        .collect();
    AntisymmetricMatroid::from_valid(n, bases)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitFailure {
    /// (C1): the empty set is a member.
    Empty,
    /// (C2): `small ⊊ big`.
    NotAntichain { small: ESubset, big: ESubset },
    /// (Orth): `|c1 ∩ c2*| = 1`.
    Orthogonality { c1: ESubset, c2: ESubset },
    /// (Max): no member inside `t + e`.
    Maximality { t: ESubset, e: Element },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitVerdict {
    pub failure: Option<CircuitFailure>,
    /// (Max′) witness, evaluated when the four axioms pass.
    pub max_prime: Option<(ESubset, Element)>,
    /// (Add) witness `(C1, C2, e)`, evaluated when the four axioms pass.
    pub addition: Option<(ESubset, ESubset, Element)>,
}

impl CircuitVerdict {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks (C1), (C2), (Orth), (Max); then (Max′) and (Add) when those pass.
pub fn check_circuit_axioms(n: usize, candidate: &[ESubset]) -> Result<CircuitVerdict> {
    check_members(n, candidate, |s| s.skew_pair_count() <= 1, "a set with at most one skew pair")?;
    let family = normalized(candidate);
    let failure = circuit_failure(n, &family);
    let (max_prime, addition) = if failure.is_none() {
        (max_prime_witness(n, &family), addition_witness(&family))
    } else {
        (None, None)
    };
    Ok(CircuitVerdict { failure, max_prime, addition })
}

fn circuit_failure(n: usize, family: &[ESubset]) -> Option<CircuitFailure> {
    if family.iter().any(|c| c.is_empty()) {
        return Some(CircuitFailure::Empty);
    }
    for &a in family {
        for &b in family {
            if a != b && a.is_subset(b) {
                return Some(CircuitFailure::NotAntichain { small: a, big: b });
            }
        }
    }
    for &a in family {
        for &b in family {
            if a.intersection(b.star()).len() == 1 {
                return Some(CircuitFailure::Orthogonality { c1: a, c2: b });
            }
        }
    }
    for t in ground::transversals(n).expect("capacity checked") {
        for e in t.star().elements() {
            let s = t.with(e);
            if !family.iter().any(|c| c.is_subset(s)) {
                return Some(CircuitFailure::Maximality { t, e });
            }
        }
    }
    None
}

fn max_prime_witness(n: usize, family: &[ESubset]) -> Option<(ESubset, Element)> {
    for t in ground::transversals(n).expect("capacity checked") {
        for e in t.star().elements() {
            let s = t.with(e);
            let pair = ESubset::pair(n, e.index());
            if !family.iter().any(|c| c.is_subset(s) && !c.intersection(pair).is_empty()) {
                return Some((t, e));
            }
        }
    }
    None
}

fn addition_witness(family: &[ESubset]) -> Option<(ESubset, ESubset, Element)> {
    for &c1 in family {
        for &c2 in family {
            if c1 == c2 {
                continue;
            }
            for e in c1.intersection(c2).elements() {
                let j = c1.union(c2).without(e);
                if j.skew_pair_count() <= 1 && !family.iter().any(|c3| c3.is_subset(j)) {
                    return Some((c1, c2, e));
                }
            }
        }
    }
    None
}

/// A family of subsets of `±[n]` with at most one skew pair each.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircuitFamily {
    n: usize,
    circuits: Vec<ESubset>,
}

impl CircuitFamily {
    /// Validates the circuit axioms.
    pub fn new(n: usize, circuits: &[ESubset]) -> Result<Self> {
        let verdict = check_circuit_axioms(n, circuits)?;
        match verdict.failure {
            None => Ok(CircuitFamily { n, circuits: normalized(circuits) }),
            Some(f) => Err(Error::Invalid(format!("circuit axioms fail: {f:?}"))),
        }
    }

    pub(crate) fn from_valid(n: usize, circuits: Vec<ESubset>) -> Self {
        CircuitFamily { n, circuits: normalized(&circuits) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn circuits(&self) -> &[ESubset] {
        &self.circuits
    }

    pub fn star(&self) -> Self {
        CircuitFamily::from_valid(self.n, self.circuits.iter().map(|c| c.star()).collect())
    }

    /// Circuit rule of the elementary minor: `Min{C − i : i* ∉ C, C ≠ {i}}`.
    pub fn minor(&self, i: Element) -> Result<Self> {
        if i.index() > self.n {
            return Err(Error::Invalid(format!("{i} outside ±[{}]", self.n)));
        }
        let single = ESubset::empty(self.n).with(i);
        let kept: Vec<ESubset> = self
            .circuits
            .iter()
            .filter(|c| !c.contains(i.star()) && **c != single)
            .map(|c| delete_pair(c.without(i), i.index()))
            .collect();
        Ok(CircuitFamily { n: self.n - 1, circuits: minimal(kept) })
    }
}

/// First pair of circuits with `|C1 ∩ C2*| = 1`.
pub fn orthogonality_witness(c: &CircuitFamily) -> Option<(ESubset, ESubset)> {
    for &a in &c.circuits {
        for &b in &c.circuits {
            if a.intersection(b.star()).len() == 1 {
                return Some((a, b));
            }
        }
    }
    None
}

/// First `(C, e, f)` with `C − e` subtransversal and no circuit `D` having
/// `C ∩ D* = {e, f}`.
pub fn two_point_witness(c: &CircuitFamily) -> Option<(ESubset, Element, Element)> {
    for &cc in &c.circuits {
        for e in cc.elements() {
            if !cc.without(e).is_subtransversal() {
                continue;
            }
            for f in cc.elements() {
                if f == e {
                    continue;
                }
                let target = ESubset::empty(c.n).with(e).with(f);
                if !c.circuits.iter().any(|d| cc.intersection(d.star()) == target) {
                    return Some((cc, e, f));
                }
            }
        }
    }
    None
}

/// All antisymmetric matroids on `±[n]` for `n ≤ 3`.
///
/// Candidates are unions of transversal sets and (B2)-closed partner orbits
/// of almost-transversals, so (B2) holds by construction.
pub fn enumerate_antisymmetric(n: usize) -> Result<Vec<AntisymmetricMatroid>> {
    if n == 0 || n > 3 {
        return Err(Error::Capacity { n, max: 3 });
    }
    let ts = ground::transversals(n)?;
    let mut orbits: Vec<[ESubset; 2]> = Vec::new();
    for a in ground::almost_transversals(n)? {
        let p = partner(a);
        if a < p {
            orbits.push([a, p]);
        }
    }
    let k = ts.len() + orbits.len();
    let mut out = Vec::new();
    for pick in 1u64..(1u64 << k) {
        let mut fam = Vec::new();
        for (j, t) in ts.iter().enumerate() {
            if pick >> j & 1 == 1 {
                fam.push(*t);
            }
        }
        for (j, o) in orbits.iter().enumerate() {
            if pick >> (ts.len() + j) & 1 == 1 {
                fam.extend_from_slice(o);
            }
        }
        fam.sort_unstable();
        let look = Lookup::new(n, &fam);
        if check_exch(&fam, &look).is_none() {
            out.push(AntisymmetricMatroid { n, bases: fam });
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, text: &str) -> ESubset {
        ESubset::parse(n, text).unwrap()
    }

    fn fam(n: usize, texts: &[&str]) -> Vec<ESubset> {
        let mut v: Vec<ESubset> = texts.iter().map(|t| set(n, t)).collect();
        v.sort();
        v
    }

    fn five_bases() -> AntisymmetricMatroid {
        AntisymmetricMatroid::new(2, &fam(2, &["1,2", "1,1*", "1,2*", "2,1*", "2,2*"])).unwrap()
    }

    fn ant_u23_circuits() -> Vec<ESubset> {
        fam(3, &["1,2,3", "1*,2*", "1*,3*", "2*,3*"])
    }

    #[test]
    fn basis_axiom_examples() {
        let t2 = ground::transversals(2).unwrap();
        assert!(check_basis_axioms(2, &t2).unwrap().is_valid());
        let all = ground::coordinates(2).unwrap();
        assert!(check_basis_axioms(2, &all).unwrap().is_valid());
        let v = check_basis_axioms(2, &fam(2, &["1,2", "1*,2*"])).unwrap();
        assert_eq!(
            v.failure,
            Some(BasisFailure::Exchange { b: set(2, "1,2"), b_prime: set(2, "1*,2*"), e: Element::plain(1) })
        );
        assert!(!v.exch_prime_holds());
        assert!(check_basis_axioms(2, &[set(2, "1")]).is_err());
        assert_eq!(check_basis_axioms(2, &[]).unwrap().failure, Some(BasisFailure::Empty));
        let v = check_basis_axioms(2, &fam(2, &["1,2", "1,1*"])).unwrap();
        assert!(matches!(v.failure, Some(BasisFailure::SkewSwap { .. })));
    }

    #[test]
    fn circuit_axiom_examples() {
        assert!(check_circuit_axioms(3, &ant_u23_circuits()).unwrap().is_valid());
        let c_five = fam(2, &["1*,2*", "1,2,1*", "1,2,2*"]);
        let v = check_circuit_axioms(2, &c_five).unwrap();
        assert!(v.is_valid() && v.max_prime.is_none() && v.addition.is_none());
        let v = check_circuit_axioms(2, &[ESubset::empty(2)]).unwrap();
        assert_eq!(v.failure, Some(CircuitFailure::Empty));
        assert!(check_circuit_axioms(2, &[set(2, "1,1*,2,2*")]).is_err());
    }

    #[test]
    fn circuits_from_bases_examples() {
        assert_eq!(five_bases().circuits().circuits(), &fam(2, &["1*,2*", "1,2,1*", "1,2,2*"])[..]);
        let t3 = AntisymmetricMatroid::transversal_matroid(3).unwrap();
        assert_eq!(t3.circuits().circuits(), &fam(3, &["1,1*", "2,2*", "3,3*"])[..]);
        let free = AntisymmetricMatroid::free(2).unwrap();
        assert_eq!(free.circuits().circuits(), &fam(2, &["1,1*,2", "1,1*,2*", "1,2,2*", "1*,2,2*"])[..]);
    }

    #[test]
    fn bases_from_circuits_examples() {
        let c_five = CircuitFamily::new(2, &fam(2, &["1*,2*", "1,2,1*", "1,2,2*"])).unwrap();
        assert_eq!(bases_from_circuits(&c_five).unwrap(), five_bases());
        let c_u23 = CircuitFamily::new(3, &ant_u23_circuits()).unwrap();
        let m = bases_from_circuits(&c_u23).unwrap();
        assert_eq!(m.transversal_bases(), fam(3, &["1,2,3*", "1,2*,3", "1*,2,3"]));
        assert!(m.is_basis(set(3, "1,1*,2")));
        let empty = CircuitFamily::new(1, &[]);
        // On ±[1] the empty family violates (Max); the superset filter alone gives T_1.
        assert!(empty.is_err());
        assert_eq!(bases_avoiding(1, &[]).bases(), &fam(1, &["1", "1*"])[..]);
    }

    #[test]
    fn trichotomy_examples() {
        let free = AntisymmetricMatroid::free(2).unwrap();
        let r = free.three_term_trichotomy(set(2, "1,2"), 1, 2).unwrap();
        assert_eq!(r.count(), 3);
        let t2 = AntisymmetricMatroid::transversal_matroid(2).unwrap();
        let r = t2.three_term_trichotomy(set(2, "1,2"), 1, 2).unwrap();
        assert!(!r.almost && r.both && r.single);
        assert!(t2.three_term_trichotomy(set(2, "1,2"), 1, 1).is_err());
    }

    #[test]
    fn fundamental_circuit_examples() {
        for n in 1..=4 {
            let t = AntisymmetricMatroid::transversal_matroid(n).unwrap();
            let c = t.fundamental_circuit(ESubset::unstarred(n), Element::starred(1)).unwrap();
            assert_eq!(c, ESubset::pair(n, 1));
        }
        let m_u23 = bases_from_circuits(&CircuitFamily::new(3, &ant_u23_circuits()).unwrap()).unwrap();
        let c = m_u23.fundamental_circuit(set(3, "1,2,3*"), Element::starred(1)).unwrap();
        assert_eq!(c, set(3, "1*,3*"));
        let c = five_bases().fundamental_circuit(set(2, "1,2"), Element::starred(1)).unwrap();
        assert_eq!(c, set(2, "1,2,1*"));
        assert!(five_bases().fundamental_circuit(set(2, "1,1*"), Element::starred(2)).is_err());
    }

    #[test]
    fn minor_examples() {
        let t2 = AntisymmetricMatroid::transversal_matroid(2).unwrap();
        let m = t2.elementary_minor(Element::plain(1)).unwrap();
        assert_eq!(m.bases(), &fam(1, &["1", "1*"])[..]);
        let free1 = AntisymmetricMatroid::transversal_matroid(1).unwrap();
        let m0 = free1.elementary_minor(Element::plain(1)).unwrap();
        assert_eq!(m0.bases(), &[ESubset::empty(0)]);
    }

    #[test]
    fn polytope_examples() {
        assert_eq!(AntisymmetricMatroid::free(2).unwrap().polytope_vertices().len(), 4);
        let single = AntisymmetricMatroid::new(2, &[set(2, "1,2*")]).unwrap();
        assert_eq!(single.polytope_vertices(), alloc::vec![alloc::vec![1, -1]]);
    }

    fn all_families(n: usize) -> Vec<Vec<ESubset>> {
        let coords = ground::coordinates(n).unwrap();
        (0u64..1 << coords.len())
            .map(|pick| (0..coords.len()).filter(|j| pick >> j & 1 == 1).map(|j| coords[j]).collect())
            .collect()
    }

    #[test]
    fn exch_and_exch_prime_agree_exhaustively_at_n2() {
        let mut valid = 0;
        for f in all_families(2) {
            let v = check_basis_axioms(2, &f).unwrap();
            if f.is_empty() {
                continue;
            }
            // (Exch′) replaces (Exch) in the presence of (B1) and (B2).
            let b2 = check_b2(&f, &Lookup::new(2, &f)).is_none();
            if b2 {
                assert_eq!(v.is_valid(), v.exch_prime_holds(), "{f:?}");
            }
            valid += v.is_valid() as usize;
        }
        let listed = enumerate_antisymmetric(2).unwrap();
        assert_eq!(listed.len(), valid);
    }

    #[test]
    fn exch_and_exch_prime_agree_on_enumerated_n3() {
        for m in enumerate_antisymmetric(3).unwrap() {
            let v = check_basis_axioms(3, m.bases()).unwrap();
            assert!(v.is_valid() && v.exch_prime_holds());
        }
    }

    #[test]
    fn roundtrip_and_lemmas_on_every_matroid_up_to_n3() {
        for n in 1..=3 {
            for m in enumerate_antisymmetric(n).unwrap() {
                let c = m.circuits();
                let v = check_circuit_axioms(n, c.circuits()).unwrap();
                assert!(v.is_valid() && v.max_prime.is_none() && v.addition.is_none(), "{m:?}");
                assert_eq!(bases_from_circuits(&c).unwrap(), m);
                assert!(orthogonality_witness(&c).is_none());
                assert!(two_point_witness(&c).is_none());
                for t in ground::transversals(n).unwrap() {
                    for p in 1..=n {
                        for q in 1..=n {
                            if p != q {
                                assert_ne!(m.three_term_trichotomy(t, p, q).unwrap().count(), 1);
                            }
                        }
                    }
                }
                for i in 1..=n {
                    for e in [Element::plain(i), Element::starred(i)] {
                        let minor = m.elementary_minor(e).unwrap();
                        if minor.n() > 0 {
                            assert!(check_basis_axioms(n - 1, minor.bases()).unwrap().is_valid());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn circuit_side_agrees_with_basis_side_at_n2() {
        let cands: Vec<ESubset> = (0u64..16)
            .map(|b| ESubset::from_bits(2, b))
            .filter(|s| s.skew_pair_count() <= 1)
            .collect();
        let mut from_circuits = Vec::new();
        for pick in 0u64..1 << cands.len() {
            let f: Vec<ESubset> = (0..cands.len()).filter(|j| pick >> j & 1 == 1).map(|j| cands[j]).collect();
            if check_circuit_axioms(2, &f).unwrap().is_valid() {
                from_circuits.push(bases_from_circuits(&CircuitFamily::from_valid(2, f)).unwrap());
            }
        }
        from_circuits.sort();
        let n_before = from_circuits.len();
        from_circuits.dedup();
        assert_eq!(n_before, from_circuits.len());
        assert_eq!(from_circuits, enumerate_antisymmetric(2).unwrap());
    }

    fn all_n3() -> &'static [AntisymmetricMatroid] {
        static ALL: std::sync::OnceLock<Vec<AntisymmetricMatroid>> = std::sync::OnceLock::new();
        ALL.get_or_init(|| enumerate_antisymmetric(3).unwrap())
    }

    proptest! {
        #[test]
        fn star_of_matroid_is_matroid(idx in 0usize..10_000) {
            let all = all_n3();
            let m = &all[idx % all.len()];
            prop_assert!(check_basis_axioms(3, m.star().bases()).unwrap().is_valid());
        }
    }
}
