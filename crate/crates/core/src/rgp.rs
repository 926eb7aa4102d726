//! Restricted Grassmann–Plücker functions and antisymmetric F-circuit sets.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use crate::antisym::{bases_from_circuits, pair_indices, partner, AntisymmetricMatroid, CircuitFamily};
use crate::error::{Error, Result};
use crate::ground::{self, ESubset, Element};
use crate::matroids::GPFunction;
use crate::tracts::{FormalSum, Tract, TractElement, TractMorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RgpMode {
    Full,
    /// Only relations with `|S \ T| <= 4`.
    Weak,
}

impl RgpMode {
    pub fn max_width(self) -> Option<usize> {
        match self {
            RgpMode::Full => None,
            RgpMode::Weak => Some(4),
        }
    }
}

/// A map `T_n ∪ A_n → F`, stored densely in the order of
/// [`ground::coordinates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RGPFunction {
    n: usize,
    tract: Tract,
    coords: Vec<ESubset>,
    values: Vec<TractElement>,
}

impl RGPFunction {
    pub fn new(n: usize, tract: Tract, values: Vec<TractElement>) -> Result<Self> {
        tract.validate()?;
        let coords = ground::coordinates(n)?;
        if values.len() != coords.len() {
            return Err(Error::Invalid(format!("expected {} coordinates, got {}", coords.len(), values.len())));
        }
        if let Some(v) = values.iter().find(|v| v.tract() != tract) {
            return Err(Error::TractMismatch(tract, v.tract()));
        }
        if values.iter().all(TractElement::is_zero) {
            return Err(Error::Invalid("the zero map is not a restricted G-P function".into()));
        }
        Ok(RGPFunction { n, tract, coords, values })
    }

    /// Unlisted coordinates are zero.
    pub fn from_entries<I>(n: usize, tract: Tract, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ESubset, TractElement)>,
    {
        let coords = ground::coordinates(n)?;
        let mut values = alloc::vec![tract.zero(); coords.len()];
        for (b, v) in entries {
            let at = coords
                .binary_search(&b)
                .map_err(|_| Error::Invalid(format!("{b} is neither a transversal nor an almost-transversal")))?;
            values[at] = v;
        }
        RGPFunction::new(n, tract, values)
    }

    pub fn from_fn<G: FnMut(ESubset) -> TractElement>(n: usize, tract: Tract, mut g: G) -> Result<Self> {
        let coords = ground::coordinates(n)?;
        let values = coords.iter().map(|b| g(*b)).collect();
        RGPFunction::new(n, tract, values)
    }

    /// Indicator function of a set of bases.
    pub fn indicator(n: usize, tract: Tract, support: &[ESubset]) -> Result<Self> {
        RGPFunction::from_entries(n, tract, support.iter().map(|b| (*b, tract.one())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tract(&self) -> Tract {
        self.tract
    }

    pub fn coordinates(&self) -> &[ESubset] {
        &self.coords
    }

    pub fn values(&self) -> &[TractElement] {
        &self.values
    }

    pub fn entries(&self) -> impl Iterator<Item = (ESubset, &TractElement)> + '_ {
        self.coords.iter().copied().zip(&self.values)
    }

    /// Value at a coordinate; panics if `b` is not in `T_n ∪ A_n`.
    pub fn get(&self, b: ESubset) -> &TractElement {
        let at = self.coords.binary_search(&b).unwrap_or_else(|_| panic!("{b} is not a coordinate"));
        &self.values[at]
    }

    pub fn try_get(&self, b: ESubset) -> Option<&TractElement> {
        self.coords.binary_search(&b).ok().map(|at| &self.values[at])
    }

    pub fn support(&self) -> Vec<ESubset> {
        self.entries().filter(|(_, v)| !v.is_zero()).map(|(b, _)| b).collect()
    }

    pub fn scaled(&self, c: &TractElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let values = self.values.iter().map(|v| v.mul(c)).collect::<Result<Vec<_>>>()?;
        RGPFunction::new(self.n, self.tract, values)
    }
}

/// The signed sum `Σ_{x∈S∖T} ε^{S<x + T<x} φ(S−x) φ(T+x)`.
pub fn relation_sum(phi: &RGPFunction, s: ESubset, t: ESubset) -> FormalSum {
    let mut sum = FormalSum::new(phi.tract);
    for x in s.difference(t).elements() {
        let a = phi.get(s.without(x));
        if a.is_zero() {
            continue;
        }
        let b = phi.get(t.with(x));
        if b.is_zero() {
            continue;
        }
        let term = a.mul_unchecked(b).signed(s.smaller_count(x) + t.smaller_count(x));
        sum.push(term).expect("same tract");
    }
    sum
}

/// All `S` of size `n+1` with exactly one skew pair.
pub fn relation_s_sets(n: usize) -> Result<Vec<ESubset>> {
    let mut out: Vec<ESubset> = ground::transversals(n)?
        .into_iter()
        .flat_map(|t| t.elements().map(move |e| t.with(e.star())).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// All subtransversals of size `n−1`.
pub fn relation_t_sets(n: usize) -> Result<Vec<ESubset>> {
    let mut out: Vec<ESubset> = ground::transversals(n)?
        .into_iter()
        .flat_map(|t| t.elements().map(move |e| t.without(e)).collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub s: ESubset,
    pub t: ESubset,
    /// `|S \ T|`.
    pub width: usize,
    pub nonzero_terms: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RgpVerdict {
    pub checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RgpVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks (‡′) for every admissible `(S, T)`; in weak mode only `|S∖T| <= 4`.
pub fn check_rgp(phi: &RGPFunction, mode: RgpMode) -> Result<RgpVerdict> {
    check_rgp_width(phi, mode.max_width())
}

/// Same as [`check_rgp`] with an arbitrary bound on `|S \ T|`.
pub fn check_rgp_width(phi: &RGPFunction, max_width: Option<usize>) -> Result<RgpVerdict> {
    let n = phi.n;
    let mut verdict = RgpVerdict::default();
    if n == 0 {
        return Ok(verdict);
    }
    let ss = relation_s_sets(n)?;
    let ts = relation_t_sets(n)?;
    for &s in &ss {
        for &t in &ts {
            let width = s.difference(t).len();
            if max_width.is_some_and(|w| width > w) {
                continue;
            }
            verdict.checked += 1;
            let sum = relation_sum(phi, s, t);
            if !sum.is_null() {
                verdict.violations.push(RelationViolation { s, t, width, nonzero_terms: sum.len() });
            }
        }
    }
    Ok(verdict)
}

/// Almost-transversal pairs `(A, A−p+q)` violating (Sym), each listed once.
pub fn check_sym(phi: &RGPFunction) -> Vec<(ESubset, ESubset)> {
    let mut out = Vec::new();
    for (a, v) in phi.entries() {
        if !a.is_almost_transversal() {
            continue;
        }
        let b = partner(a);
        if b < a {
            continue;
        }
        let (i, j) = pair_indices(a);
        if *v != phi.get(b).signed(i + j) {
            out.push((a, b));
        }
    }
    out
}

pub fn is_rgp(phi: &RGPFunction) -> Result<bool> {
    Ok(check_sym(phi).is_empty() && check_rgp(phi, RgpMode::Full)?.is_valid())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakVerdict {
    pub support_is_matroid: bool,
    pub sym_violations: Vec<(ESubset, ESubset)>,
    pub relations: RgpVerdict,
}

impl WeakVerdict {
    pub fn is_valid(&self) -> bool {
        self.support_is_matroid && self.sym_violations.is_empty() && self.relations.is_valid()
    }
}

/// Support, (Sym) and the weak relations together.
pub fn check_weak(phi: &RGPFunction) -> Result<WeakVerdict> {
    Ok(WeakVerdict {
        support_is_matroid: AntisymmetricMatroid::new(phi.n, &phi.support()).is_ok(),
        sym_violations: check_sym(phi),
        relations: check_rgp(phi, RgpMode::Weak)?,
    })
}

pub fn underlying(phi: &RGPFunction) -> Result<AntisymmetricMatroid> {
    AntisymmetricMatroid::new(phi.n, &phi.support())
}

pub fn pushforward(phi: &RGPFunction, m: TractMorphism) -> Result<RGPFunction> {
    if m.source() != phi.tract {
        return Err(Error::TractMismatch(m.source(), phi.tract));
    }
    let values = phi.values.iter().map(|v| m.apply(v)).collect::<Result<Vec<_>>>()?;
    RGPFunction::new(phi.n, m.target(), values)
}

/// Whether `phi2 = c · phi1` for a unit `c`.
pub fn equivalent(phi1: &RGPFunction, phi2: &RGPFunction) -> bool {
    if phi1.n != phi2.n || phi1.tract != phi2.tract {
        return false;
    }
    let Some(at) = phi1.values.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    let Ok(c) = phi2.values[at].div(&phi1.values[at]) else {
        return false;
    };
    if c.is_zero() {
        return false;
    }
    phi1.values.iter().zip(&phi2.values).all(|(a, b)| a.mul_unchecked(&c) == *b)
}

/// Image of an element under the column swap `i ↔ i*` for `i ∈ S`.
fn twist_element(e: Element, s: u64) -> Element {
    if s >> (e.index() - 1) & 1 == 1 {
        e.star()
    } else {
        e
    }
}

/// `φ'(B) = ε^{#(S∩B) + inv} φ(B Δ (S ∪ S*))`, matching the Plücker vector of
/// a matrix whose columns `i, i*` (`i ∈ S`) are replaced by `−i*, i`.
pub fn twist_rgp(phi: &RGPFunction, s: ESubset) -> Result<RGPFunction> {
    let n = phi.n;
    if s.n() != n || s.starred_part() != 0 {
        return Err(Error::Precondition("twist set must be a subset of [n]".into()));
    }
    let mask = s.unstarred_part();
    let flip = mask | mask << n;
    RGPFunction::from_fn(n, phi.tract, |b| {
        let source = ESubset::from_bits(n, b.bits() ^ (b.bits() & flip) ^ ((b.bits() & flip) >> n | (b.bits() & flip) << n) & ground::low_mask(2 * n));
        let images: Vec<usize> = b.elements().map(|e| twist_element(e, mask).bit(n)).collect();
        let mut inversions = 0;
        for a in 0..images.len() {
            for c in a + 1..images.len() {
                if images[a] > images[c] {
                    inversions += 1;
                }
            }
        }
        let plain_in_s = (b.unstarred_part() & mask).count_ones() as usize;
        phi.get(source).signed(plain_in_s + inversions)
    })
}

/// `φ(B) = ψ(B∩[n]) · ψ⊥(B*∩[n])` when `|B∩[n]| = r`, else zero.
pub fn antisym_from_gp(psi: &GPFunction) -> Result<RGPFunction> {
    let n = psi.n();
    let dual = psi.dual();
    RGPFunction::from_fn(n, psi.tract(), |b| {
        let plain = b.unstarred_part() as u32;
        let starred = b.starred_part() as u32;
        if plain.count_ones() as usize != psi.rank() {
            return psi.tract().zero();
        }
        psi.get(plain).mul_unchecked(&dual.get(starred))
    })
}

/// A vector in `F^E`, indexed by element bit position.
pub type FVector = Vec<TractElement>;

pub fn vector_support(n: usize, v: &[TractElement]) -> ESubset {
    let bits = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(0u64, |acc, (k, _)| acc | 1 << k);
    ESubset::from_bits(n, bits)
}

/// `⟨X,Y⟩ = Σ X(i)Y(i*) + ε X(i*)Y(i)` as a formal sum.
pub fn pairing(n: usize, tract: Tract, x: &[TractElement], y: &[TractElement]) -> FormalSum {
    let mut sum = FormalSum::new(tract);
    for i in 0..n {
        if !x[i].is_zero() && !y[n + i].is_zero() {
            sum.push(x[i].mul_unchecked(&y[n + i])).expect("same tract");
        }
        if !x[n + i].is_zero() && !y[i].is_zero() {
            sum.push(x[n + i].mul_unchecked(&y[i]).signed(1)).expect("same tract");
        }
    }
    sum
}

fn canonical(v: &[TractElement]) -> Option<FVector> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(v.iter().map(|x| x.mul_unchecked(&inv)).collect())
}

/// One canonical representative per projective class: the first nonzero
/// coordinate is 1, and closure under unit scaling is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FCircuitSet {
    n: usize,
    tract: Tract,
    vectors: Vec<FVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreparedFailure {
    ZeroVector,
    TwoSkewPairs(ESubset),
    /// Two classes with `supp(X) ⊆ supp(Y)`.
    Dominated(ESubset, ESubset),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSetVerdict {
    pub prepared: Option<PreparedFailure>,
    pub orthogonality: Option<(ESubset, ESubset)>,
    /// An `S` with no vector supported inside it.
    pub maximality: Option<ESubset>,
}

impl CircuitSetVerdict {
    pub fn is_valid(&self) -> bool {
        self.prepared.is_none() && self.orthogonality.is_none() && self.maximality.is_none()
    }
}

impl FCircuitSet {
    /// Normalizes and deduplicates; rejects zero vectors and shape errors.
    pub fn new(n: usize, tract: Tract, vectors: Vec<FVector>) -> Result<Self> {
        tract.validate()?;
        let mut out = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != 2 * n {
                return Err(Error::Invalid(format!("vector of length {} on a ground set of size {}", v.len(), 2 * n)));
            }
            if let Some(x) = v.iter().find(|x| x.tract() != tract) {
                return Err(Error::TractMismatch(tract, x.tract()));
            }
            out.push(canonical(&v).ok_or_else(|| Error::Invalid("zero vector in a circuit set".into()))?);
        }
        out.sort_unstable_by(|a, b| cmp_vectors(a, b));
        out.dedup();
        Ok(FCircuitSet { n, tract, vectors: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tract(&self) -> Tract {
        self.tract
    }

    pub fn vectors(&self) -> &[FVector] {
        &self.vectors
    }

    pub fn supports(&self) -> Vec<ESubset> {
        let mut s: Vec<ESubset> = self.vectors.iter().map(|v| vector_support(self.n, v)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// A vector with support inside `s`, if any.
    pub fn covering(&self, s: ESubset) -> Option<&FVector> {
        self.vectors.iter().find(|v| vector_support(self.n, v).is_subset(s))
    }

    pub fn check(&self) -> Result<CircuitSetVerdict> {
        let n = self.n;
        let supports: Vec<ESubset> = self.vectors.iter().map(|v| vector_support(n, v)).collect();
        let mut prepared = supports.iter().find(|s| s.skew_pair_count() > 1).map(|s| PreparedFailure::TwoSkewPairs(*s));
        if prepared.is_none() {
            'outer: for a in 0..supports.len() {
                for b in 0..supports.len() {
                    if a != b && supports[a].is_subset(supports[b]) {
                        prepared = Some(PreparedFailure::Dominated(supports[a], supports[b]));
                        break 'outer;
                    }
                }
            }
        }
        let mut orthogonality = None;
        'orth: for a in 0..self.vectors.len() {
            for b in a..self.vectors.len() {
                if !pairing(n, self.tract, &self.vectors[a], &self.vectors[b]).is_null() {
                    orthogonality = Some((supports[a], supports[b]));
                    break 'orth;
                }
            }
        }
        let maximality = if n == 0 {
            None
        } else {
            relation_s_sets(n)?.into_iter().find(|s| !supports.iter().any(|c| c.is_subset(*s)))
        };
        Ok(CircuitSetVerdict { prepared, orthogonality, maximality })
    }

    /// Swaps the coordinates `i` and `i*` of every vector.
    pub fn star(&self) -> FCircuitSet {
        let n = self.n;
        let vectors = self.vectors.iter().map(|v| (0..2 * n).map(|k| v[(k + n) % (2 * n)].clone()).collect()).collect();
        FCircuitSet::new(n, self.tract, vectors).expect("same shape")
    }

    pub fn underlying(&self) -> Result<CircuitFamily> {
        CircuitFamily::new(self.n, &self.supports())
    }
}

fn cmp_vectors(a: &[TractElement], b: &[TractElement]) -> core::cmp::Ordering {
    a.iter().map(TractElement::value).cmp(b.iter().map(TractElement::value))
}

/// The vector `X_S(y) = ε^{χ(y) + S<y} φ(S−y)` for `y ∈ S`.
pub fn x_vector(phi: &RGPFunction, s: ESubset) -> FVector {
    let n = phi.n;
    let mut v = alloc::vec![phi.tract.zero(); 2 * n];
    for y in s.elements() {
        v[y.bit(n)] = phi.get(s.without(y)).signed(y.chi() + s.smaller_count(y));
    }
    v
}

/// Vectors `X_{B+x*}` over transversal bases `B` and `x ∈ B`.
pub fn circuit_set_from_rgp(phi: &RGPFunction) -> Result<FCircuitSet> {
    if !check_sym(phi).is_empty() {
        return Err(Error::Precondition("(Sym) fails".into()));
    }
    if !check_rgp(phi, RgpMode::Full)?.is_valid() {
        return Err(Error::Precondition("(rGP) fails".into()));
    }
    circuit_set_from_rgp_unchecked(phi)
}

pub(crate) fn circuit_set_from_rgp_unchecked(phi: &RGPFunction) -> Result<FCircuitSet> {
    let mut vectors = Vec::new();
    for (b, v) in phi.entries() {
        if v.is_zero() || !b.is_transversal() {
            continue;
        }
        for x in b.elements() {
            vectors.push(x_vector(phi, b.with(x.star())));
        }
    }
    FCircuitSet::new(phi.n, phi.tract, vectors)
}

/// `γ(B₁,B₂) = ε^{χ(x)+χ(y)+S<x+S<y} X(y)/X(x)` with `S = B₁ ∪ B₂`,
/// `{x} = S∖B₁`, `{y} = S∖B₂`.
pub fn gamma(c: &FCircuitSet, b1: ESubset, b2: ESubset) -> Result<TractElement> {
    let s = b1.union(b2);
    if b1.difference(b2).len() != 1 || s.skew_pair_count() != 1 || b1.len() != c.n || b2.len() != c.n {
        return Err(Error::Precondition(format!("{b1} and {b2} are not adjacent")));
    }
    let x = s.difference(b1).elements().next().expect("one element");
    let y = s.difference(b2).elements().next().expect("one element");
    let v = c.covering(s).ok_or_else(|| Error::Precondition(format!("no vector supported inside {s}")))?;
    let (vx, vy) = (&v[x.bit(c.n)], &v[y.bit(c.n)]);
    if vx.is_zero() || vy.is_zero() {
        return Err(Error::Precondition(format!("{b1} or {b2} is not a basis")));
    }
    Ok(vy.div(vx)?.signed(x.chi() + y.chi() + s.smaller_count(x) + s.smaller_count(y)))
}

/// Adjacency in the basis graph: `|B∖B'| = 1` and one endpoint transversal.
pub fn basis_graph_adjacent(b: ESubset, b2: ESubset) -> bool {
    b.difference(b2).len() == 1 && (b.is_transversal() || b2.is_transversal())
}

/// Builds `φ` by γ-products along BFS paths from the lexicographically least
/// basis, then re-checks every edge of the basis graph.
pub fn rgp_from_circuit_set(c: &FCircuitSet) -> Result<RGPFunction> {
    let verdict = c.check()?;
    if !verdict.is_valid() {
        return Err(Error::Precondition(format!("not an antisymmetric circuit set: {verdict:?}")));
    }
    let m = bases_from_circuits(&c.underlying()?)?;
    let bases = m.bases();
    let adj: Vec<Vec<usize>> = (0..bases.len())
        .map(|a| (0..bases.len()).filter(|&b| basis_graph_adjacent(bases[a], bases[b])).collect())
        .collect();
    let mut values: Vec<Option<TractElement>> = alloc::vec![None; bases.len()];
    values[0] = Some(c.tract.one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        let va = values[a].clone().expect("visited");
        for &b in &adj[a] {
            if values[b].is_none() {
                values[b] = Some(va.mul_unchecked(&gamma(c, bases[a], bases[b])?));
                queue.push_back(b);
            }
        }
    }
    if values.iter().any(Option::is_none) {
        return Err(Error::Inconsistent("basis graph is disconnected".into()));
    }
    for a in 0..bases.len() {
        for &b in &adj[a] {
            let via = values[a].as_ref().expect("set").mul_unchecked(&gamma(c, bases[a], bases[b])?);
            if via != *values[b].as_ref().expect("set") {
                return Err(Error::Inconsistent(format!(
                    "γ-products disagree between {} and {}",
                    bases[a], bases[b]
                )));
            }
        }
    }
    RGPFunction::from_entries(c.n, c.tract, bases.iter().copied().zip(values.into_iter().map(Option::unwrap)))
}
