//! Lagrangian subspaces of `k^E` given by `n × 2n` matrices `[Λ₁ | Λ₂]`.

use alloc::format;
use alloc::vec::Vec;

use crate::antisym::{bases_from_circuits, AntisymmetricMatroid};
use crate::error::{Error, Result};
use crate::ground::{self, ESubset, Element};
use crate::linalg::{Field, FieldMatrix, Scalar};
use crate::rgp::{self, equivalent, twist_rgp, FCircuitSet, RGPFunction};

/// `ω(X,Y) = Σ X(i)Y(i*) − X(i*)Y(i)`.
pub fn omega(field: Field, n: usize, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for i in 0..n {
        acc = field.add(&acc, &field.mul(&x[i], &y[n + i]));
        acc = field.sub(&acc, &field.mul(&x[n + i], &y[i]));
    }
    acc
}

/// Full-rank check plus both Lagrangian criteria, which must agree.
pub fn is_lagrangian(m: &FieldMatrix) -> Result<bool> {
    let n = m.rows();
    if m.cols() != 2 * n {
        return Err(Error::Invalid(format!("expected {} columns, got {}", 2 * n, m.cols())));
    }
    if m.rank() != n {
        return Err(Error::Precondition("matrix does not have full row rank".into()));
    }
    let f = m.field();
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    let product = m.select_columns(&left).mul(&m.select_columns(&right).transpose())?;
    let symmetric = product.is_symmetric();
    let isotropic = (0..n).all(|a| (a + 1..n).all(|b| f.is_zero(&omega(f, n, m.row(a), m.row(b)))));
    if symmetric != isotropic {
        return Err(Error::Inconsistent("Lagrangian criteria disagree".into()));
    }
    Ok(symmetric)
}

/// A matrix whose row space is verified to be Lagrangian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianWitness {
    matrix: FieldMatrix,
}

impl LagrangianWitness {
    pub fn new(matrix: FieldMatrix) -> Result<Self> {
        if !is_lagrangian(&matrix)? {
            return Err(Error::Invalid("row space is not Lagrangian".into()));
        }
        Ok(LagrangianWitness { matrix })
    }

    /// `[I | Σ]`; `Σ` must be symmetric.
    pub fn from_symmetric(sigma: &FieldMatrix) -> Result<Self> {
        if !sigma.is_symmetric() {
            return Err(Error::Invalid("Σ is not symmetric".into()));
        }
        let n = sigma.rows();
        let f = sigma.field();
        let mut m = FieldMatrix::zeros(f, n, 2 * n);
        for r in 0..n {
            m.set(r, r, f.one());
            for c in 0..n {
                m.set(r, n + c, sigma.get(r, c).clone());
            }
        }
        LagrangianWitness::new(m)
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> FieldMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn same_subspace(&self, other: &LagrangianWitness) -> bool {
        self.matrix.same_row_space(&other.matrix)
    }
}

fn columns(n: usize, b: ESubset) -> Vec<usize> {
    b.elements().map(|e| e.bit(n)).collect()
}

/// `det Λ[n, B]` for a column set `B`.
pub fn minor(m: &FieldMatrix, b: ESubset) -> Scalar {
    m.select_columns(&columns(m.rows(), b)).det().expect("square")
}

/// `Φ(W) = (det Λ[n,B])_{B ∈ T_n ∪ A_n}`.
pub fn plucker(w: &LagrangianWitness) -> RGPFunction {
    let f = w.field();
    RGPFunction::from_fn(w.n(), f.tract(), |b| f.to_tract(&minor(&w.matrix, b))).expect("a full-rank matrix has a nonzero minor")
}

/// The Plücker-support antisymmetric matroid `M(Λ)`.
pub fn matroid_of(w: &LagrangianWitness) -> AntisymmetricMatroid {
    rgp::underlying(&plucker(w)).expect("Plücker supports are antisymmetric matroids")
}

/// Minimal-support row-space vectors with at most one skew pair: the rows of
/// `Λ[n,B]⁻¹Λ` over transversals `B` with `det Λ[n,B] ≠ 0`.
pub fn circuit_vectors(w: &LagrangianWitness) -> FCircuitSet {
    let n = w.n();
    let f = w.field();
    let mut vectors = Vec::new();
    for b in ground::transversals(n).expect("n within range") {
        let sub = w.matrix.select_columns(&columns(n, b));
        let Ok(inv) = sub.inverse() else { continue };
        let reduced = inv.mul(&w.matrix).expect("shapes agree");
        for r in 0..n {
            vectors.push(reduced.row(r).iter().map(|s| f.to_tract(s)).collect());
        }
    }
    FCircuitSet::new(n, f.tract(), vectors).expect("nonzero rows")
}

/// `B(matroid from row-space circuits) = B(Φ)*`.
pub fn support_duality_check(w: &LagrangianWitness) -> bool {
    let Ok(family) = circuit_vectors(w).underlying() else {
        return false;
    };
    let Ok(from_circuits) = bases_from_circuits(&family) else {
        return false;
    };
    let mut starred: Vec<ESubset> = plucker(w).support().into_iter().map(ESubset::star).collect();
    starred.sort_unstable();
    from_circuits.bases() == starred.as_slice()
}

fn require_field(phi: &RGPFunction) -> Result<Field> {
    Field::from_tract(phi.tract())
}

/// Rebuilds a matrix from Plücker-type coordinates using the
/// lexicographically least transversal `T` with `x_T ≠ 0`:
/// `X_i(j) = (−1)^{T<i + (T−i)<j} x_{T−i+j} / x_T` for `j ∈ T* + i`.
pub fn reconstruct(x: &RGPFunction) -> Result<LagrangianWitness> {
    let f = require_field(x)?;
    if !rgp::is_rgp(x)? {
        return Err(Error::Precondition("input is not a restricted G-P function".into()));
    }
    let n = x.n();
    let t = x
        .entries()
        .find(|(b, v)| b.is_transversal() && !v.is_zero())
        .map(|(b, _)| b)
        .ok_or_else(|| Error::Inconsistent("no transversal coordinate is nonzero".into()))?;
    let xt = f.scalar(x.get(t))?;
    let mut m = FieldMatrix::zeros(f, n, 2 * n);
    for (r, i) in t.elements().enumerate() {
        let rest = t.without(i);
        for j in t.star().with(i).elements() {
            let v = f.div(&f.scalar(x.get(rest.with(j)))?, &xt)?;
            m.set(r, j.bit(n), f.signed(&v, t.smaller_count(i) + rest.smaller_count(j)));
        }
    }
    let w = LagrangianWitness::new(m)?;
    if !equivalent(&plucker(&w), x) {
        return Err(Error::Inconsistent("reconstructed minors differ from the input".into()));
    }
    Ok(w)
}

fn check_twist_set(n: usize, s: ESubset) -> Result<u64> {
    if s.n() != n || s.starred_part() != 0 {
        return Err(Error::Precondition("twist set must be a subset of [n]".into()));
    }
    Ok(s.unstarred_part())
}

/// `Ψ_S`: for `i ∈ S`, the new column `i*` is the old column `i` and the new
/// column `i` is minus the old column `i*`.
pub fn twist(m: &FieldMatrix, s: ESubset) -> Result<FieldMatrix> {
    let n = m.rows();
    let mask = check_twist_set(n, s)?;
    let f = m.field();
    let mut out = m.clone();
    for i in (0..n).filter(|i| mask >> i & 1 == 1) {
        for r in 0..n {
            out.set(r, n + i, m.get(r, i).clone());
            out.set(r, i, f.neg(m.get(r, n + i)));
        }
    }
    Ok(out)
}

/// Inverse of [`twist`].
pub fn untwist(m: &FieldMatrix, s: ESubset) -> Result<FieldMatrix> {
    let n = m.rows();
    let mask = check_twist_set(n, s)?;
    let f = m.field();
    let mut out = m.clone();
    for i in (0..n).filter(|i| mask >> i & 1 == 1) {
        for r in 0..n {
            out.set(r, i, m.get(r, n + i).clone());
            out.set(r, n + i, f.neg(m.get(r, i)));
        }
    }
    Ok(out)
}

pub fn twist_witness(w: &LagrangianWitness, s: ESubset) -> Result<LagrangianWitness> {
    LagrangianWitness::new(twist(&w.matrix, s)?)
}

/// `π(W ∩ {X(i) = 0})` on the ground set with the pair of `i` removed.
pub fn subspace_minor(w: &LagrangianWitness, i: Element) -> Result<LagrangianWitness> {
    let n = w.n();
    if i.index() == 0 || i.index() > n {
        return Err(Error::Invalid(format!("{i} is not in the ground set")));
    }
    let f = w.field();
    let col = i.bit(n);
    let column = FieldMatrix::from_rows(f, alloc::vec![(0..n).map(|r| w.matrix.get(r, col).clone()).collect()])?;
    let combos = column.kernel();
    let y = FieldMatrix::from_rows(f, combos)?;
    let sub = if y.rows() == 0 { FieldMatrix::zeros(f, 0, 2 * n) } else { y.mul(&w.matrix)? };
    let keep: Vec<usize> = (0..2 * n).filter(|&c| c != i.index() - 1 && c != n + i.index() - 1).collect();
    let projected = sub.select_columns(&keep);
    let basis = projected.row_space_basis();
    if basis.rows() != n - 1 {
        return Err(Error::Inconsistent(format!("minor has dimension {}", basis.rows())));
    }
    LagrangianWitness::new(basis)
}

/// `(−1)^{tn + C(t,2) + ΣX}`, the sign in
/// `det Λ[n, [n]−X+Y*] = sign · det Σ[X,Y]` for `Λ = [I | Σ]`, `|X| = |Y| = t`.
pub fn laplace_sign(n: usize, x: &[usize]) -> bool {
    let t = x.len();
    (t * n + t * t.saturating_sub(1) / 2 + x.iter().sum::<usize>()) % 2 == 1
}

/// Coordinate `[n] − X + Y*` for index sets `X, Y ⊆ [n]` (1-based).
pub fn laplace_coordinate(n: usize, x: &[usize], y: &[usize]) -> ESubset {
    let mut s = ESubset::unstarred(n);
    for &k in x {
        s = s.without(Element::plain(k));
    }
    for &k in y {
        s = s.with(Element::starred(k));
    }
    s
}

/// Turns a weak function over a field into a Lagrangian matrix:
/// twist so `[n]` is a basis, read off `Σ`, untwist, and confirm the minors.
pub fn weak_to_strong(phi: &RGPFunction) -> Result<LagrangianWitness> {
    let f = require_field(phi)?;
    let verdict = rgp::check_weak(phi)?;
    if !verdict.support_is_matroid {
        return Err(Error::Precondition("support is not an antisymmetric matroid".into()));
    }
    if let Some((a, b)) = verdict.sym_violations.first() {
        return Err(Error::Precondition(format!("(Sym) fails at {a} and {b}")));
    }
    if let Some(v) = verdict.relations.violations.first() {
        return Err(Error::Precondition(format!(
            "{}-term relation fails at S={}, T={} with {} nonzero terms",
            v.width, v.s, v.t, v.nonzero_terms
        )));
    }
    let n = phi.n();
    let t0 = phi
        .entries()
        .find(|(b, v)| b.is_transversal() && !v.is_zero())
        .map(|(b, _)| b)
        .ok_or_else(|| Error::Inconsistent("no transversal basis".into()))?;
    let s = ESubset::from_bits(n, t0.starred_part());
    let twisted = twist_rgp(phi, s)?;
    let full = ESubset::unstarred(n);
    let base = f.scalar(twisted.get(full))?;
    if f.is_zero(&base) {
        return Err(Error::Inconsistent("[n] is not a basis after twisting".into()));
    }
    let mut sigma = FieldMatrix::zeros(f, n, n);
    for i in 1..=n {
        for j in 1..=n {
            let b = full.without(Element::plain(i)).with(Element::starred(j));
            let v = f.div(&f.scalar(twisted.get(b))?, &base)?;
            sigma.set(i - 1, j - 1, f.signed(&v, n - i));
        }
    }
    if !sigma.is_symmetric() {
        return Err(Error::Inconsistent("Σ read from the coordinates is not symmetric".into()));
    }
    let lambda = LagrangianWitness::from_symmetric(&sigma)?;
    let w = LagrangianWitness::new(untwist(lambda.matrix(), s)?)?;
    let minors = plucker(&w);
    if !equivalent(&minors, phi) {
        let first = phi.coordinates().iter().copied().find(|b| {
            let scale = f.div(&f.scalar(phi.get(t0)).unwrap(), &f.scalar(minors.get(t0)).unwrap()).unwrap();
            f.mul(&f.scalar(minors.get(*b)).unwrap(), &scale) != f.scalar(phi.get(*b)).unwrap()
        });
        return Err(Error::Inconsistent(format!(
            "minor identity fails at {}",
            first.map_or_else(|| "?".into(), |b| b.to_text())
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rgp::{check_rgp, check_sym, circuit_set_from_rgp, rgp_from_circuit_set, RgpMode};
    use crate::tracts::Tract;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn set(n: usize, s: &str) -> ESubset {
        ESubset::parse(n, s).unwrap()
    }

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::Rat(BigRational::new(a.into(), b.into()))
    }

    fn five_basis_matrix() -> LagrangianWitness {
        LagrangianWitness::new(FieldMatrix::from_i64(Field::Rationals, &[&[1, 0, 1, 1], &[0, 1, 1, 1]])).unwrap()
    }

    fn identity_pair(f: Field, n: usize) -> LagrangianWitness {
        LagrangianWitness::from_symmetric(&FieldMatrix::identity(f, n)).unwrap()
    }

    /// `V⊥ ⊕ V` for `V` the row space of `[[1,0,1],[0,1,1]]`: `V⊥` is spanned by
    /// `(1,1,−1)` and sits in the unstarred columns.
    fn ant_u23() -> LagrangianWitness {
        LagrangianWitness::new(FieldMatrix::from_i64(
            Field::Rationals,
            &[&[1, 1, -1, 0, 0, 0], &[0, 0, 0, 1, 0, 1], &[0, 0, 0, 0, 1, 1]],
        ))
        .unwrap()
    }

    fn symmetric(f: Field, n: usize, entries: &[i64]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(f, n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let v = f.from_i64(entries[k % entries.len()]);
                k += 1;
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        m
    }

    /// Cofactor-expansion determinant, independent of elimination.
    fn det_cofactor(f: Field, m: &[Vec<Scalar>]) -> Scalar {
        if m.is_empty() {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..m.len() {
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            acc = f.add(&acc, &f.signed(&f.mul(&m[0][j], &det_cofactor(f, &minor)), j));
        }
        acc
    }

    fn sorted(mut v: Vec<ESubset>) -> Vec<ESubset> {
        v.sort();
        v
    }

    #[test]
    fn lagrangian_examples() {
        let f = Field::Rationals;
        assert!(is_lagrangian(five_basis_matrix().matrix()).unwrap());
        assert!(is_lagrangian(identity_pair(f, 3).matrix()).unwrap());
        let bad = FieldMatrix::from_i64(f, &[&[1, 0, 0, 1], &[0, 1, 0, 0]]);
        assert!(!is_lagrangian(&bad).unwrap());
        let deficient = FieldMatrix::from_i64(f, &[&[1, 0, 0, 1], &[1, 0, 0, 1]]);
        assert!(is_lagrangian(&deficient).is_err());
    }

    #[test]
    fn plucker_examples() {
        let phi = plucker(&five_basis_matrix());
        let q1 = Tract::Rationals.one();
        let m1 = q1.signed(1);
        let expected = [("1,2", &q1), ("1,1*", &q1), ("1,2*", &q1), ("2,1*", &m1), ("2,2*", &m1)];
        for (s, v) in expected {
            assert_eq!(phi.get(set(2, s)), v, "{s}");
        }
        assert!(phi.get(set(2, "1*,2*")).is_zero());
        // Cofactor oracle on every coordinate.
        let m = five_basis_matrix().into_matrix();
        for (b, v) in phi.entries() {
            let rows: Vec<Vec<Scalar>> = (0..2).map(|r| columns(2, b).iter().map(|&c| m.get(r, c).clone()).collect()).collect();
            assert_eq!(Field::Rationals.to_tract(&det_cofactor(Field::Rationals, &rows)), *v);
        }

        let ii = plucker(&identity_pair(Field::Rationals, 2));
        for (b, v) in ii.entries() {
            assert_eq!(v.is_zero(), !b.is_transversal());
        }
        let one = LagrangianWitness::new(FieldMatrix::from_i64(Field::Rationals, &[&[1, 3]])).unwrap();
        let p = plucker(&one);
        assert_eq!(p.get(set(1, "1")), &Tract::Rationals.one());
        assert_eq!(p.get(set(1, "1*")), &Tract::Rationals.from_i64(3).unwrap());
    }

    #[test]
    fn circuit_vector_examples() {
        let c = circuit_vectors(&five_basis_matrix());
        assert_eq!(c.supports(), sorted(["1,2", "1,1*,2*", "2,1*,2*"].iter().map(|s| set(2, s)).collect()));
        assert!(c.check().unwrap().is_valid());
        let c = circuit_vectors(&ant_u23());
        assert_eq!(c.supports(), sorted(["1,2,3", "1*,2*", "1*,3*", "2*,3*"].iter().map(|s| set(3, s)).collect()));
        let c = circuit_vectors(&identity_pair(Field::Prime(5), 3));
        assert_eq!(c.supports(), sorted((1..=3).map(|i| ESubset::pair(3, i)).collect()));
        for w in [five_basis_matrix(), ant_u23(), identity_pair(Field::Prime(3), 3)] {
            assert!(support_duality_check(&w));
        }
    }

    /// Minimal supports by brute force over all `≤1`-pair candidate supports.
    fn brute_force_supports(w: &LagrangianWitness) -> Vec<ESubset> {
        let n = w.n();
        let rref = w.matrix().row_space_basis();
        let mut out = Vec::new();
        for bits in 1u64..1 << (2 * n) {
            let c = ESubset::from_bits(n, bits);
            if c.skew_pair_count() > 1 {
                continue;
            }
            let outside: Vec<usize> = (0..2 * n).filter(|k| bits >> k & 1 == 0).collect();
            let restricted = rref.select_columns(&outside).transpose();
            let kernel = if outside.is_empty() {
                (0..n).map(|r| (0..n).map(|k| if k == r { w.field().one() } else { w.field().zero() }).collect()).collect()
            } else {
                restricted.kernel()
            };
            if kernel.len() != 1 {
                continue;
            }
            let y = FieldMatrix::from_rows(w.field(), kernel).unwrap();
            let v = y.mul(&rref).unwrap();
            let support = (0..2 * n).filter(|&k| !w.field().is_zero(v.get(0, k))).fold(0u64, |a, k| a | 1 << k);
            if support == bits {
                out.push(c);
            }
        }
        sorted(out)
    }

    #[test]
    fn circuit_vectors_rebuild_minors() {
        let w = five_basis_matrix();
        let c = circuit_vectors(&w);
        assert_eq!(c.star(), circuit_set_from_rgp(&plucker(&w)).unwrap());
        assert!(equivalent(&rgp_from_circuit_set(&c.star()).unwrap(), &plucker(&w)));
    }

    #[test]
    fn reconstruct_examples() {
        let w = five_basis_matrix();
        let back = reconstruct(&plucker(&w)).unwrap();
        assert!(back.same_subspace(&w));
        let x = RGPFunction::from_entries(1, Tract::Rationals, [(set(1, "1"), Tract::Rationals.one())]).unwrap();
        let m = reconstruct(&x).unwrap();
        assert_eq!(m.matrix(), &FieldMatrix::from_i64(Field::Rationals, &[&[1, 0]]));
        let sigma = symmetric(Field::Prime(5), 4, &[1, 2, 3, 4, 0, 2, 1, 3, 3, 4]);
        let w = LagrangianWitness::from_symmetric(&sigma).unwrap();
        assert!(reconstruct(&plucker(&w)).unwrap().same_subspace(&w));
    }

    #[test]
    fn twist_examples() {
        let f = Field::Rationals;
        let sigma = symmetric(f, 3, &[2, -1, 1, 3, 1, 1]);
        let w = LagrangianWitness::from_symmetric(&sigma).unwrap();
        assert_eq!(twist(w.matrix(), ESubset::empty(3)).unwrap(), *w.matrix());
        let all = ESubset::unstarred(3);
        let tw = twist_witness(&w, all).unwrap();
        let before = matroid_of(&w);
        let after = matroid_of(&tw);
        let starred: Vec<ESubset> = sorted(before.bases().iter().map(|b| b.star()).collect());
        assert_eq!(after.bases(), starred.as_slice());
        for bits in 0u64..8 {
            let s = ESubset::from_bits(3, bits);
            let once = twist(w.matrix(), s).unwrap();
            let twice = twist(&once, s).unwrap();
            let four = twist(&twist(&twice, s).unwrap(), s).unwrap();
            assert_eq!(&four, w.matrix());
            assert_eq!(untwist(&once, s).unwrap(), *w.matrix());
            let tw2 = LagrangianWitness::new(twice).unwrap();
            assert_eq!(matroid_of(&tw2), before);
            let mapped: Vec<ESubset> = sorted(
                before
                    .bases()
                    .iter()
                    .map(|b| {
                        let flip = bits | bits << 3;
                        let moved = b.bits() & flip;
                        ESubset::from_bits(3, (b.bits() & !flip) | (moved >> 3) | ((moved << 3) & 0o77))
                    })
                    .collect(),
            );
            assert_eq!(matroid_of(&LagrangianWitness::new(once).unwrap()).bases(), mapped.as_slice());
        }
    }

    #[test]
    fn subspace_minor_examples() {
        let f = Field::Prime(3);
        let w = identity_pair(f, 3);
        let m = subspace_minor(&w, Element::plain(1)).unwrap();
        assert!(m.same_subspace(&identity_pair(f, 2)));
        let w = five_basis_matrix();
        for e in [Element::plain(1), Element::starred(1), Element::plain(2), Element::starred(2)] {
            let minor = subspace_minor(&w, e).unwrap();
            assert_eq!(matroid_of(&minor), matroid_of(&w).elementary_minor(e).unwrap(), "{e}");
        }
        let one = identity_pair(Field::Rationals, 1);
        let empty = subspace_minor(&one, Element::plain(1)).unwrap();
        assert_eq!(empty.n(), 0);
        assert_eq!(matroid_of(&empty).bases(), &[ESubset::empty(0)]);
    }

    #[test]
    fn pd_minor_sign() {
        let f = Field::Rationals;
        let sigma = FieldMatrix::from_rows(
            f,
            alloc::vec![
                alloc::vec![q(1, 1), q(1, 2), q(1, 4)],
                alloc::vec![q(1, 2), q(1, 1), q(1, 4)],
                alloc::vec![q(1, 4), q(1, 4), q(1, 1)],
            ],
        )
        .unwrap();
        let w = LagrangianWitness::from_symmetric(&sigma).unwrap();
        let coordinate = laplace_coordinate(3, &[1, 2], &[2, 3]);
        assert_eq!(coordinate, set(3, "3,2*,3*"));
        let value = minor(w.matrix(), coordinate);
        let sub = sigma.select_columns(&[1, 2]);
        let rows = FieldMatrix::from_rows(f, (0..2).map(|r| sub.row(r).to_vec()).collect()).unwrap();
        let expected = rows.det().unwrap();
        assert_eq!(expected, q(-1, 8));
        let sign = laplace_sign(3, &[1, 2]);
        assert_eq!(value, if sign { f.neg(&expected) } else { expected });
    }

    #[test]
    fn laplace_identity_exhaustive() {
        for n in 1..=4usize {
            let f = Field::Rationals;
            let sigma = symmetric(f, n, &[2, -1, 3, 1, 5, -2, 7, 1, 4, -3]);
            let w = LagrangianWitness::from_symmetric(&sigma).unwrap();
            for xb in 0u32..1 << n {
                for yb in 0u32..1 << n {
                    let x: Vec<usize> = (1..=n).filter(|k| xb >> (k - 1) & 1 == 1).collect();
                    let y: Vec<usize> = (1..=n).filter(|k| yb >> (k - 1) & 1 == 1).collect();
                    if x.len() != y.len() || (yb & !xb).count_ones() > 1 {
                        continue;
                    }
                    let rows: Vec<Vec<Scalar>> =
                        x.iter().map(|&i| y.iter().map(|&j| sigma.get(i - 1, j - 1).clone()).collect()).collect();
                    let d = det_cofactor(f, &rows);
                    let coord = minor(w.matrix(), laplace_coordinate(n, &x, &y));
                    let expected = if laplace_sign(n, &x) { f.neg(&d) } else { d };
                    assert_eq!(coord, expected, "n={n} X={x:?} Y={y:?}");
                }
            }
        }
    }

    #[test]
    fn weak_to_strong_examples() {
        let f = Field::Prime(3);
        let sigma = symmetric(f, 4, &[1, 2, 0, 1, 2, 2, 1, 0, 1, 2]);
        let w = LagrangianWitness::from_symmetric(&sigma).unwrap();
        let got = weak_to_strong(&plucker(&w)).unwrap();
        assert_eq!(got.matrix(), w.matrix());

        let one = RGPFunction::from_entries(
            1,
            Tract::Rationals,
            [(set(1, "1"), Tract::Rationals.from_i64(2).unwrap()), (set(1, "1*"), Tract::Rationals.from_i64(3).unwrap())],
        )
        .unwrap();
        let m = weak_to_strong(&one).unwrap();
        assert_eq!(m.matrix(), &FieldMatrix::from_rows(Field::Rationals, alloc::vec![alloc::vec![q(1, 1), q(3, 2)]]).unwrap());

        // Indicator over GF(2) of a support that passes every three-term relation.
        let support: Vec<ESubset> = ground::coordinates(4)
            .unwrap()
            .into_iter()
            .filter(|b| {
                let rest = b.bits() & !(b.skew_pair_mask() | b.skew_pair_mask() << 4);
                let stars = (rest >> 4).count_ones();
                if b.is_transversal() {
                    stars == 0 || stars == 2
                } else {
                    stars <= 1
                }
            })
            .collect();
        let phi = RGPFunction::indicator(4, Tract::Prime(2), &support).unwrap();
        let err = weak_to_strong(&phi).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.starts_with("4-term")), "{err}");
    }

    fn field_of(k: usize) -> Field {
        [Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Rationals][k]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn pipeline_on_random_symmetric(n in 1usize..=4, e in proptest::collection::vec(-4i64..=4, 10), k in 0usize..4, tw in 0u64..16) {
            let f = field_of(k);
            let base = LagrangianWitness::from_symmetric(&symmetric(f, n, &e)).unwrap();
            let s = ESubset::from_bits(n, tw & ground_mask(n));
            let w = twist_witness(&base, s).unwrap();
            let phi = plucker(&w);
            prop_assert!(check_sym(&phi).is_empty());
            prop_assert!(check_rgp(&phi, RgpMode::Full).unwrap().is_valid());
            prop_assert!(reconstruct(&phi).unwrap().same_subspace(&w));
            prop_assert!(weak_to_strong(&phi).unwrap().same_subspace(&w));
            prop_assert_eq!(twist_rgp(&plucker(&base), s).unwrap(), phi.clone());
            prop_assert!(support_duality_check(&w));
            let c = circuit_vectors(&w);
            prop_assert!(c.check().unwrap().is_valid());
            prop_assert_eq!(c.supports(), brute_force_supports(&w));
            let starred: Vec<ESubset> = sorted(circuit_set_from_rgp(&phi).unwrap().supports().into_iter().map(ESubset::star).collect());
            prop_assert_eq!(c.supports(), starred);
            prop_assert!(equivalent(&rgp_from_circuit_set(&circuit_set_from_rgp(&phi).unwrap()).unwrap(), &phi));
            prop_assert_eq!(c.star(), circuit_set_from_rgp(&phi).unwrap());
            let m = matroid_of(&w);
            for i in 1..=n {
                for e in [Element::plain(i), Element::starred(i)] {
                    let minor = subspace_minor(&w, e).unwrap();
                    prop_assert_eq!(matroid_of(&minor), m.elementary_minor(e).unwrap());
                }
            }
        }
    }

    fn ground_mask(n: usize) -> u64 {
        (1u64 << n) - 1
    }
}
