//! Exact matrices over `GF(p)` and `Q`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::tracts::{format_rational, is_prime, parse_rational, Tract, TractElement, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rationals,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) && p < 1 << 31 {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Invalid(format!("GF({p}) requires a prime modulus")))
        }
    }

    pub fn tract(self) -> Tract {
        match self {
            Field::Prime(p) => Tract::Prime(p),
            Field::Rationals => Tract::Rationals,
        }
    }

    pub fn from_tract(t: Tract) -> Result<Field> {
        match t {
            Tract::Prime(p) => Ok(Field::Prime(p)),
            Tract::Rationals => Ok(Field::Rationals),
            other => Err(Error::Unsupported(format!("{other} is not a field"))),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u32),
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(q.clone())),
            Field::Prime(_) => {
                let t = self.tract().from_rational(q)?;
                Ok(Scalar::Mod(t.as_residue().expect("residue")))
            }
        }
    }

    #[inline]
    pub fn is_zero(self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(r) => *r == 0,
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    #[inline]
    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(((*x as u64 + *y as u64) % p as u64) as u32),
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => unreachable!("scalar does not belong to {self:?}"),
        }
    }

    #[inline]
    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            (_, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => unreachable!("scalar does not belong to {self:?}"),
        }
    }

    #[inline]
    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((*x as u64 * *y as u64 % p as u64) as u32),
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => unreachable!("scalar does not belong to {self:?}"),
        }
    }

    pub fn inv(self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => {
                let mut acc = 1u64;
                let mut base = *x as u64;
                let mut e = p as u64 - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p as u64;
                    }
                    base = base * base % p as u64;
                    e >>= 1;
                }
                Scalar::Mod(acc as u32)
            }
            (_, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => unreachable!("scalar does not belong to {self:?}"),
        })
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `(−1)^k · a`.
    pub fn signed(self, a: &Scalar, k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            a.clone()
        } else {
            self.neg(a)
        }
    }

    pub fn to_tract(self, a: &Scalar) -> TractElement {
        match a {
            Scalar::Mod(r) => self.tract().from_i64(*r as i64).expect("residue"),
            Scalar::Rat(q) => self.tract().from_rational(q).expect("rational"),
        }
    }

    pub fn scalar(self, x: &TractElement) -> Result<Scalar> {
        if x.tract() != self.tract() {
            return Err(Error::TractMismatch(self.tract(), x.tract()));
        }
        Ok(match x.value() {
            Value::Zero => self.zero(),
            Value::Residue(r) => Scalar::Mod(*r),
            Value::Rational(q) => Scalar::Rat(q.clone()),
            Value::Sign(_) => unreachable!("fields have no sign payload"),
        })
    }

    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        match self {
            Field::Prime(p) => {
                if let Ok(v) = text.parse::<i64>() {
                    return Ok(Scalar::Mod(v.rem_euclid(p as i64) as u32));
                }
                let q = parse_rational(text).ok_or_else(|| Error::Parse(format!("bad GF({p}) entry `{text}`")))?;
                self.from_rational(&q)
            }
            Field::Rationals => parse_rational(text)
                .map(Scalar::Rat)
                .ok_or_else(|| Error::Parse(format!("bad rational entry `{text}`"))),
        }
    }

    pub fn format(self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(r) => format!("{r}"),
            Scalar::Rat(q) => format_rational(q),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.tract(), f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl FieldMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Ok(FieldMatrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|r| r.iter().map(|v| field.from_i64(*v)).collect()).collect();
        FieldMatrix::from_rows(field, data).expect("rectangular literal")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Invalid("incompatible matrix product".into()));
        }
        let f = self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !f.is_zero(a) {
                        acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant of a square matrix: Bareiss over `Z` after clearing
    /// denominators for `Q`, plain elimination for `GF(p)`.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        match self.field {
            Field::Prime(_) => Ok(self.det_elimination()),
            Field::Rationals => Ok(Scalar::Rat(self.det_bareiss())),
        }
    }

    fn det_elimination(&self) -> Scalar {
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(a.get(r, col))) else {
                return f.zero();
            };
            if piv != col {
                a.swap_rows(piv, col);
                det = f.neg(&det);
            }
            let pv = a.get(col, col).clone();
            det = f.mul(&det, &pv);
            let inv = f.inv(&pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(a.get(r, c), &f.mul(&factor, a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    fn det_bareiss(&self) -> BigRational {
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let row: Vec<&BigRational> = self
                .row(r)
                .iter()
                .map(|s| match s {
                    Scalar::Rat(q) => q,
                    Scalar::Mod(_) => unreachable!(),
                })
                .collect();
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &l;
            m.push(row.iter().map(|q| q.numer() * (&l / q.denom())).collect());
        }
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigRational::zero();
                };
                m.swap(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut d = m[n - 1][n - 1].clone();
        if sign {
            d = -d;
        }
        BigRational::new(d, scale)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(piv) = (row..a.rows).find(|&r| !f.is_zero(a.get(r, col))) else {
                continue;
            };
            a.swap_rows(piv, row);
            let inv = f.inv(a.get(row, col)).expect("nonzero pivot");
            for c in col..a.cols {
                let v = f.mul(a.get(row, c), &inv);
                a.set(row, c, v);
            }
            for r in 0..a.rows {
                if r == row || f.is_zero(a.get(r, col)) {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let v = f.sub(a.get(r, c), &f.mul(&factor, a.get(row, c)));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = alloc::vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(k, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Invalid("inverse of a non-square matrix".into()));
        }
        let mut aug = FieldMatrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Invalid("singular matrix".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(red.select_columns(&cols))
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self) -> FieldMatrix {
        let (r, pivots) = self.rref();
        let rows: Vec<Vec<Scalar>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let mut out = FieldMatrix::from_rows(self.field, rows).expect("rectangular");
        out.cols = self.cols;
        out
    }

    pub fn same_row_space(&self, other: &FieldMatrix) -> bool {
        self.field == other.field && self.cols == other.cols && self.row_space_basis() == other.row_space_basis()
    }
}

/// `det` of a square `i64` matrix, computed over `Q`. Test helper for oracles.
pub fn det_i64(rows: &[&[i64]]) -> BigRational {
    match FieldMatrix::from_i64(Field::Rationals, rows).det().expect("square") {
        Scalar::Rat(q) => q,
        Scalar::Mod(_) => unreachable!(),
    }
}

/// Whether all leading principal minors of a rational square matrix are positive.
pub fn is_positive_definite(m: &FieldMatrix) -> bool {
    if m.field != Field::Rationals || !m.is_symmetric() {
        return false;
    }
    (1..=m.rows).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        let sub = m.select_columns(&idx);
        let sub = FieldMatrix::from_rows(m.field, (0..k).map(|r| sub.row(r).to_vec()).collect()).expect("square");
        matches!(sub.det(), Ok(Scalar::Rat(q)) if q.is_positive())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Scalar {
        Scalar::Rat(BigRational::new(a.into(), b.into()))
    }

    /// Cofactor expansion along the first row.
    fn det_cofactor(f: Field, m: &[Vec<Scalar>]) -> Scalar {
        let n = m.len();
        if n == 0 {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..n {
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = f.mul(&m[0][j], &det_cofactor(f, &minor));
            acc = f.add(&acc, &f.signed(&term, j));
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_i64(&[&[1, 2], &[3, 4]]), BigRational::from_integer((-2).into()));
        assert_eq!(det_i64(&[]), BigRational::one());
        let f = Field::Prime(5);
        let m = FieldMatrix::from_i64(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), Scalar::Mod(3));
        let z = FieldMatrix::from_i64(Field::Rationals, &[&[0, 1], &[1, 0]]);
        assert_eq!(z.det().unwrap(), q(-1, 1));
    }

    #[test]
    fn rational_minor_of_pd_example() {
        let s = FieldMatrix::from_rows(
            Field::Rationals,
            alloc::vec![
                alloc::vec![q(1, 1), q(1, 2), q(1, 4)],
                alloc::vec![q(1, 2), q(1, 1), q(1, 4)],
                alloc::vec![q(1, 4), q(1, 4), q(1, 1)],
            ],
        )
        .unwrap();
        assert!(is_positive_definite(&s));
        // Rows {1,2}, columns {2,3}.
        let m = FieldMatrix::from_rows(
            Field::Rationals,
            alloc::vec![alloc::vec![q(1, 2), q(1, 4)], alloc::vec![q(1, 1), q(1, 4)]],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), q(-1, 8));
    }

    #[test]
    fn kernel_and_inverse() {
        let f = Field::Rationals;
        let m = FieldMatrix::from_i64(f, &[&[1, 0, 1, 1], &[0, 1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let col = FieldMatrix::from_rows(f, v.iter().map(|x| alloc::vec![x.clone()]).collect()).unwrap();
            let prod = m.mul(&col).unwrap();
            assert!(prod.data.iter().all(|x| f.is_zero(x)));
        }
        let a = FieldMatrix::from_i64(f, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FieldMatrix::identity(f, 2));
        assert!(FieldMatrix::from_i64(f, &[&[1, 1], &[1, 1]]).inverse().is_err());
    }

    fn entries(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
        proptest::collection::vec((-4i64..=4, 1i64..=4), n * n)
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=4, e in entries(4)) {
            let f = Field::Rationals;
            let rows: Vec<Vec<Scalar>> = (0..n).map(|r| (0..n).map(|c| { let (a, b) = e[r * 4 + c]; q(a, b) }).collect()).collect();
            let m = FieldMatrix::from_rows(f, rows.clone()).unwrap();
            prop_assert_eq!(m.det().unwrap(), det_cofactor(f, &rows));
        }

        #[test]
        fn prime_det_matches_cofactor(n in 1usize..=4, e in entries(4), pi in 0usize..4) {
            let p = [2u32, 3, 5, 97][pi];
            let f = Field::Prime(p);
            let rows: Vec<Vec<Scalar>> = (0..n).map(|r| (0..n).map(|c| f.from_i64(e[r * 4 + c].0)).collect()).collect();
            let m = FieldMatrix::from_rows(f, rows.clone()).unwrap();
            prop_assert_eq!(m.det().unwrap(), det_cofactor(f, &rows));
            prop_assert_eq!(m.rank() == n, !f.is_zero(&det_cofactor(f, &rows)));
        }
    }
}
