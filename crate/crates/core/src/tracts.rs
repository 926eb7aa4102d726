//! Tracts: an abelian group with zero plus a null set of formal sums.
//!
//! Supported tracts are the Krasner hyperfield `K`, the sign hyperfield
//! `S`, the tropical hyperfield `T` (multiplicative presentation over
//! positive rationals), prime fields `GF(p)`, the rationals `Q`, the regular
//! partial field `U0` and the initial tract `I`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tract {
    Krasner,
    Sign,
    Tropical,
    Prime(u32),
    Rationals,
    Regular,
    Initial,
}

/// Payload of a tract element. `Zero` is shared by all tracts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Zero,
    /// `±1` for `S`, `U0`, `I`; always `1` for `K`.
    Sign(i8),
    /// Nonzero residue for `GF(p)`.
    Residue(u32),
    /// Nonzero rational for `Q`, positive rational for `T`.
    Rational(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TractElement {
    tract: Tract,
    value: Value,
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Tract {
    pub fn prime(p: u32) -> Result<Tract> {
        if is_prime(p) && p < 1 << 31 {
            Ok(Tract::Prime(p))
        } else {
            Err(Error::Invalid(format!("GF({p}) requires a prime modulus")))
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Tract::Prime(p) => Tract::prime(p).map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn zero(self) -> TractElement {
        TractElement { tract: self, value: Value::Zero }
    }

    pub fn one(self) -> TractElement {
        let value = match self {
            Tract::Krasner | Tract::Sign | Tract::Regular | Tract::Initial => Value::Sign(1),
            Tract::Prime(_) => Value::Residue(1),
            Tract::Tropical | Tract::Rationals => Value::Rational(BigRational::one()),
        };
        TractElement { tract: self, value }
    }

    /// The distinguished unit `ε` with `1 + ε ∈ N_F`.
    pub fn epsilon(self) -> TractElement {
        let value = match self {
            Tract::Krasner | Tract::Tropical => return self.one(),
            Tract::Sign | Tract::Regular | Tract::Initial => Value::Sign(-1),
            Tract::Prime(p) => Value::Residue(p - 1),
            Tract::Rationals => Value::Rational(-BigRational::one()),
        };
        TractElement { tract: self, value }
    }

    /// `ε^k`.
    pub fn sign(self, k: usize) -> TractElement {
        if k.is_multiple_of(2) {
            self.one()
        } else {
            self.epsilon()
        }
    }

    /// Whether `ε = 1` in this tract.
    pub fn has_trivial_epsilon(self) -> bool {
        self.epsilon() == self.one()
    }

    /// All units when the unit group is finite.
    pub fn units(self) -> Option<Vec<TractElement>> {
        let values: Vec<Value> = match self {
            Tract::Krasner => alloc::vec![Value::Sign(1)],
            Tract::Sign | Tract::Regular | Tract::Initial => {
                alloc::vec![Value::Sign(1), Value::Sign(-1)]
            }
            Tract::Prime(p) => (1..p).map(Value::Residue).collect(),
            Tract::Tropical | Tract::Rationals => return None,
        };
        Some(values.into_iter().map(|value| TractElement { tract: self, value }).collect())
    }

    pub fn is_field(self) -> bool {
        matches!(self, Tract::Prime(_) | Tract::Rationals)
    }

    pub fn from_i64(self, v: i64) -> Result<TractElement> {
        if v == 0 {
            return Ok(self.zero());
        }
        match self {
            Tract::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u32;
                Ok(TractElement::new(self, if r == 0 { Value::Zero } else { Value::Residue(r) }))
            }
            Tract::Rationals => Ok(TractElement::new(
                self,
                Value::Rational(BigRational::from_integer(BigInt::from(v))),
            )),
            _ => self.parse_value(&v.to_string()),
        }
    }

    pub fn from_rational(self, q: &BigRational) -> Result<TractElement> {
        match self {
            Tract::Rationals | Tract::Tropical => {
                if q.is_zero() {
                    Ok(self.zero())
                } else if self == Tract::Tropical && q.is_negative() {
                    Err(Error::Invalid(format!("tropical value must be positive: {q}")))
                } else {
                    Ok(TractElement::new(self, Value::Rational(q.clone())))
                }
            }
            Tract::Prime(p) => {
                let pp = BigInt::from(p);
                let den = q.denom().mod_floor_positive(&pp);
                if den.is_zero() {
                    return Err(Error::Invalid(format!("{q} has no image in GF({p})")));
                }
                let num = q.numer().mod_floor_positive(&pp);
                let num = u64::try_from(num).expect("reduced residue");
                let den = u64::try_from(den).expect("reduced residue");
                let r = num * pow_mod(den, p as u64 - 2, p as u64) % p as u64;
                Ok(TractElement::new(self, if r == 0 { Value::Zero } else { Value::Residue(r as u32) }))
            }
            _ => Err(Error::Unsupported(format!("rational values in {self}"))),
        }
    }

    /// Parses the canonical text form of a value of this tract.
    pub fn parse_value(self, text: &str) -> Result<TractElement> {
        let text = text.trim();
        let bad = || Error::Parse(format!("bad {self} value `{text}`"));
        if text == "0" {
            return Ok(self.zero());
        }
        match self {
            Tract::Krasner => match text {
                "1" => Ok(self.one()),
                _ => Err(bad()),
            },
            Tract::Sign | Tract::Regular | Tract::Initial => match text {
                "1" => Ok(self.one()),
                "-1" => Ok(self.epsilon()),
                _ => Err(bad()),
            },
            Tract::Prime(p) => {
                let v: i64 = text.parse().map_err(|_| bad())?;
                self.from_i64(v.rem_euclid(p as i64))
            }
            Tract::Rationals | Tract::Tropical => {
                let q = parse_rational(text).ok_or_else(bad)?;
                self.from_rational(&q)
            }
        }
    }
}

trait ModFloorPositive {
    fn mod_floor_positive(&self, m: &BigInt) -> BigInt;
}

impl ModFloorPositive for BigInt {
    fn mod_floor_positive(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a, b),
        None => (text, "1"),
    };
    let ok = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with('-') {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for Tract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tract::Krasner => f.write_str("K"),
            Tract::Sign => f.write_str("S"),
            Tract::Tropical => f.write_str("T"),
            Tract::Prime(p) => write!(f, "GF({p})"),
            Tract::Rationals => f.write_str("Q"),
            Tract::Regular => f.write_str("U0"),
            Tract::Initial => f.write_str("I"),
        }
    }
}

impl FromStr for Tract {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tract> {
        match s {
            "K" => Ok(Tract::Krasner),
            "S" => Ok(Tract::Sign),
            "T" => Ok(Tract::Tropical),
            "Q" => Ok(Tract::Rationals),
            "U0" => Ok(Tract::Regular),
            "I" => Ok(Tract::Initial),
            _ => {
                let p = s
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown tract `{s}`")))?;
                Tract::prime(p)
            }
        }
    }
}

impl TractElement {
    fn new(tract: Tract, value: Value) -> Self {
        TractElement { tract, value }
    }

    #[inline]
    pub fn tract(&self) -> Tract {
        self.tract
    }

    #[inline]
    pub fn value(&self) -> &Value {
        &self.value
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == Value::Zero
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match self.value {
            Value::Residue(r) => Some(r),
            Value::Zero => Some(0),
            _ => None,
        }
    }

    fn same_tract(&self, other: &Self) -> Result<()> {
        if self.tract != other.tract {
            return Err(Error::TractMismatch(self.tract, other.tract));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_tract(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Zero, _) | (_, Value::Zero) => Value::Zero,
            (Value::Sign(a), Value::Sign(b)) => Value::Sign(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                let Tract::Prime(p) = self.tract else { unreachable!() };
                Value::Residue((*a as u64 * *b as u64 % p as u64) as u32)
            }
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            _ => unreachable!("payload does not match tract"),
        };
        TractElement { tract: self.tract, value }
    }

    pub fn inv(&self) -> Result<Self> {
        let value = match &self.value {
            Value::Zero => return Err(Error::ZeroInverse),
            Value::Sign(a) => Value::Sign(*a),
            Value::Residue(a) => {
                let Tract::Prime(p) = self.tract else { unreachable!() };
                Value::Residue(pow_mod(*a as u64, p as u64 - 2, p as u64) as u32)
            }
            Value::Rational(q) => Value::Rational(q.recip()),
        };
        Ok(TractElement { tract: self.tract, value })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_tract(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// `ε^k · x`.
    pub fn signed(&self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self.clone()
        } else {
            self.mul_unchecked(&self.tract.epsilon())
        }
    }

    /// Canonical value text.
    pub fn to_text(&self) -> String {
        match &self.value {
            Value::Zero => "0".into(),
            Value::Sign(s) => s.to_string(),
            Value::Residue(r) => r.to_string(),
            Value::Rational(q) => format_rational(q),
        }
    }
}

impl fmt::Display for TractElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A sorted multiset of nonzero elements of one tract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    tract: Tract,
    terms: Vec<Value>,
}

impl FormalSum {
    pub fn new(tract: Tract) -> Self {
        FormalSum { tract, terms: Vec::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = TractElement>>(tract: Tract, terms: I) -> Result<Self> {
        let mut s = FormalSum::new(tract);
        for t in terms {
            s.push(t)?;
        }
        Ok(s)
    }

    pub fn tract(&self) -> Tract {
        self.tract
    }

    pub fn push(&mut self, x: TractElement) -> Result<()> {
        if x.tract != self.tract {
            return Err(Error::TractMismatch(self.tract, x.tract));
        }
        if x.value != Value::Zero {
            let at = self.terms.partition_point(|v| *v <= x.value);
            self.terms.insert(at, x.value);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = TractElement> + '_ {
        self.terms.iter().map(|v| TractElement::new(self.tract, v.clone()))
    }

    /// Multiplies every term by a unit.
    pub fn scaled(&self, c: &TractElement) -> Result<Self> {
        FormalSum::from_terms(self.tract, self.terms().map(|t| t.mul_unchecked(c)))
    }

    /// Membership in the null set `N_F`.
    pub fn is_null(&self) -> bool {
        let terms = &self.terms;
        if terms.is_empty() {
            return true;
        }
        match self.tract {
            Tract::Krasner => terms.len() != 1,
            Tract::Sign => {
                terms.contains(&Value::Sign(1)) && terms.contains(&Value::Sign(-1))
            }
            Tract::Tropical => {
                let k = terms.len();
                k >= 2 && terms[k - 1] == terms[k - 2]
            }
            Tract::Prime(p) => {
                let total = terms.iter().fold(0u64, |acc, v| match v {
                    Value::Residue(r) => (acc + *r as u64) % p as u64,
                    _ => unreachable!(),
                });
                total == 0
            }
            Tract::Rationals => {
                let mut total = BigRational::zero();
                for v in terms {
                    if let Value::Rational(q) = v {
                        total += q;
                    }
                }
                total.is_zero()
            }
            Tract::Regular => {
                let total: i64 = terms
                    .iter()
                    .map(|v| match v {
                        Value::Sign(s) => *s as i64,
                        _ => unreachable!(),
                    })
                    .sum();
                total == 0
            }
            Tract::Initial => *terms == [Value::Sign(-1), Value::Sign(1)],
        }
    }
}

/// The closed list of supported tract morphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TractMorphism {
    /// Any tract to `K`, every unit to `1`.
    ToKrasner(Tract),
    /// `Q → S`, by sign.
    RationalsToSign,
    /// `U0 → F` for a field, `S` or `K`.
    RegularToField(Tract),
    Identity(Tract),
}

impl TractMorphism {
    pub fn new_regular(target: Tract) -> Result<Self> {
        match target {
            Tract::Prime(_) | Tract::Rationals | Tract::Sign | Tract::Krasner | Tract::Regular => {
                Ok(TractMorphism::RegularToField(target))
            }
            _ => Err(Error::Unsupported(format!("no morphism U0 -> {target}"))),
        }
    }

    pub fn source(self) -> Tract {
        match self {
            TractMorphism::ToKrasner(t) | TractMorphism::Identity(t) => t,
            TractMorphism::RationalsToSign => Tract::Rationals,
            TractMorphism::RegularToField(_) => Tract::Regular,
        }
    }

    pub fn target(self) -> Tract {
        match self {
            TractMorphism::ToKrasner(_) => Tract::Krasner,
            TractMorphism::RationalsToSign => Tract::Sign,
            TractMorphism::RegularToField(t) | TractMorphism::Identity(t) => t,
        }
    }

    pub fn apply(self, x: &TractElement) -> Result<TractElement> {
        if x.tract != self.source() {
            return Err(Error::TractMismatch(self.source(), x.tract));
        }
        let target = self.target();
        if x.is_zero() {
            return Ok(target.zero());
        }
        match self {
            TractMorphism::Identity(_) => Ok(x.clone()),
            TractMorphism::ToKrasner(_) => Ok(target.one()),
            TractMorphism::RationalsToSign => {
                let q = x.as_rational().expect("rational payload");
                Ok(if q.is_positive() { target.one() } else { target.epsilon() })
            }
            TractMorphism::RegularToField(t) => {
                if !matches!(t, Tract::Prime(_) | Tract::Rationals | Tract::Sign | Tract::Krasner | Tract::Regular) {
                    return Err(Error::Unsupported(format!("no morphism U0 -> {t}")));
                }
                Ok(if x.value == Value::Sign(1) { target.one() } else { target.epsilon() })
            }
        }
    }

    pub fn apply_sum(self, s: &FormalSum) -> Result<FormalSum> {
        let mut out = FormalSum::new(self.target());
        for t in s.terms() {
            out.push(self.apply(&t)?)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(t: Tract, s: &str) -> TractElement {
        t.parse_value(s).unwrap()
    }

    fn sum(t: Tract, vals: &[&str]) -> FormalSum {
        FormalSum::from_terms(t, vals.iter().map(|v| el(t, v))).unwrap()
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(Tract::Sign.epsilon(), el(Tract::Sign, "-1"));
        assert_eq!(Tract::Krasner.epsilon(), Tract::Krasner.one());
        assert_eq!(Tract::Prime(2).epsilon(), Tract::Prime(2).one());
        assert_eq!(Tract::Tropical.epsilon(), Tract::Tropical.one());
        assert_eq!(Tract::Prime(5).epsilon(), el(Tract::Prime(5), "4"));
    }

    #[test]
    fn null_set_examples() {
        let k = Tract::Krasner;
        assert!(sum(k, &["1", "1"]).is_null());
        assert!(!sum(k, &["1"]).is_null());
        let s = Tract::Sign;
        assert!(sum(s, &["1", "-1"]).is_null());
        assert!(!sum(s, &["1", "1"]).is_null());
        let t = Tract::Tropical;
        assert!(sum(t, &["3", "3", "2"]).is_null());
        assert!(!sum(t, &["3", "2"]).is_null());
        let g3 = Tract::Prime(3);
        assert!(sum(g3, &["1", "1", "1"]).is_null());
        assert!(!sum(g3, &["1", "1"]).is_null());
        let u = Tract::Regular;
        assert!(!sum(u, &["1", "1", "-1"]).is_null());
        assert!(sum(u, &["1", "-1"]).is_null());
        let i = Tract::Initial;
        assert!(sum(i, &["1", "-1"]).is_null());
        assert!(!sum(i, &["1", "1", "-1", "-1"]).is_null());
        for tr in [k, s, t, g3, u, i, Tract::Rationals] {
            assert!(FormalSum::new(tr).is_null());
        }
    }

    #[test]
    fn zero_terms_are_dropped() {
        let s = sum(Tract::Rationals, &["0", "1/2", "0"]);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn mul_inv_errors() {
        let a = Tract::Sign.one();
        let b = Tract::Krasner.one();
        assert!(matches!(a.mul(&b), Err(Error::TractMismatch(..))));
        assert!(matches!(Tract::Rationals.zero().inv(), Err(Error::ZeroInverse)));
        let x = el(Tract::Prime(7), "3");
        assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), Tract::Prime(7).one());
        let z = Tract::Prime(7).zero();
        assert!(x.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn morphism_examples() {
        let q = el(Tract::Rationals, "-7/2");
        assert_eq!(TractMorphism::RationalsToSign.apply(&q).unwrap(), Tract::Sign.epsilon());
        for t in [Tract::Rationals, Tract::Prime(5), Tract::Sign, Tract::Tropical] {
            let x = t.one().signed(1);
            assert_eq!(TractMorphism::ToKrasner(t).apply(&x).unwrap(), Tract::Krasner.one());
        }
        assert_eq!(TractMorphism::Identity(Tract::Rationals).apply(&q).unwrap(), q);
        assert!(TractMorphism::new_regular(Tract::Initial).is_err());
        assert!(TractMorphism::RationalsToSign.apply(&Tract::Sign.one()).is_err());
    }

    #[test]
    fn text_forms() {
        for s in ["K", "S", "T", "Q", "U0", "I", "GF(2)", "GF(97)"] {
            assert_eq!(s.parse::<Tract>().unwrap().to_string(), s);
        }
        assert!("GF(4)".parse::<Tract>().is_err());
        assert_eq!(el(Tract::Rationals, "2").to_text(), "2/1");
        assert_eq!(el(Tract::Rationals, "-2/4").to_text(), "-1/2");
        assert!(Tract::Tropical.parse_value("-1").is_err());
        assert!(Tract::Rationals.parse_value("1/0").is_err());
        assert_eq!(el(Tract::Prime(5), "-1"), el(Tract::Prime(5), "4"));
    }

    fn finite_tracts() -> Vec<Tract> {
        alloc::vec![
            Tract::Krasner,
            Tract::Sign,
            Tract::Regular,
            Tract::Initial,
            Tract::Prime(2),
            Tract::Prime(3),
            Tract::Prime(5),
            Tract::Prime(7),
        ]
    }

    #[test]
    fn epsilon_squares_to_one_and_unit_pairs() {
        for t in finite_tracts().into_iter().chain([Tract::Rationals, Tract::Tropical]) {
            let e = t.epsilon();
            assert_eq!(e.mul(&e).unwrap(), t.one(), "{t}");
        }
        for t in finite_tracts() {
            let units = t.units().unwrap();
            for x in &units {
                assert!(!sum_of(t, std::slice::from_ref(x)).is_null());
                for y in &units {
                    let null = sum_of(t, &[x.clone(), y.clone()]).is_null();
                    assert_eq!(null, *y == x.signed(1), "{t}: {x} {y}");
                }
            }
        }
    }

    fn sum_of(t: Tract, xs: &[TractElement]) -> FormalSum {
        FormalSum::from_terms(t, xs.iter().cloned()).unwrap()
    }

    /// Every multiset of units of size at most `k`.
    fn multisets(units: &[TractElement], k: usize) -> Vec<Vec<TractElement>> {
        let mut out = alloc::vec![Vec::new()];
        let mut frontier = alloc::vec![(Vec::new(), 0usize)];
        for _ in 0..k {
            let mut next = Vec::new();
            for (m, start) in frontier {
                for (i, u) in units.iter().enumerate().skip(start) {
                    let mut m2: Vec<TractElement> = m.clone();
                    m2.push(u.clone());
                    out.push(m2.clone());
                    next.push((m2, i));
                }
            }
            frontier = next;
        }
        out
    }

    #[test]
    fn scaling_and_morphisms_preserve_null_sums_exhaustively() {
        for t in finite_tracts() {
            let units = t.units().unwrap();
            let mut morphisms = alloc::vec![TractMorphism::ToKrasner(t), TractMorphism::Identity(t)];
            if t == Tract::Regular {
                for target in [Tract::Prime(2), Tract::Prime(3), Tract::Prime(5), Tract::Rationals, Tract::Sign, Tract::Krasner] {
                    morphisms.push(TractMorphism::new_regular(target).unwrap());
                }
            }
            for m in multisets(&units, 5) {
                let s = sum_of(t, &m);
                let null = s.is_null();
                for c in &units {
                    assert_eq!(s.scaled(c).unwrap().is_null(), null, "{t} {m:?}");
                }
                if null {
                    for f in &morphisms {
                        assert!(f.apply_sum(&s).unwrap().is_null(), "{f:?} {m:?}");
                    }
                }
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (-6i64..=6, 1i64..=4)
            .prop_filter("nonzero", |(a, _)| *a != 0)
            .prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
    }

    proptest! {
        #[test]
        fn rational_unit_pairs(a in small_rational(), b in small_rational()) {
            let t = Tract::Rationals;
            let x = t.from_rational(&a).unwrap();
            let y = t.from_rational(&b).unwrap();
            let null = sum_of(t, &[x.clone(), y.clone()]).is_null();
            prop_assert_eq!(null, y == x.signed(1));
        }

        #[test]
        fn rational_sums_fuzzed(xs in proptest::collection::vec(small_rational(), 0..6), c in small_rational()) {
            let t = Tract::Rationals;
            let mut terms: Vec<TractElement> = xs.iter().map(|q| t.from_rational(q).unwrap()).collect();
            // Append the negated total so that half of the cases are null.
            let total: BigRational = xs.iter().cloned().fold(BigRational::zero(), |a, b| a + b);
            if !total.is_zero() && xs.len() % 2 == 0 {
                terms.push(t.from_rational(&-total).unwrap());
            }
            let s = sum_of(t, &terms);
            let cu = t.from_rational(&c).unwrap();
            prop_assert_eq!(s.scaled(&cu).unwrap().is_null(), s.is_null());
            if s.is_null() {
                prop_assert!(TractMorphism::RationalsToSign.apply_sum(&s).unwrap().is_null());
                prop_assert!(TractMorphism::ToKrasner(t).apply_sum(&s).unwrap().is_null());
            }
            prop_assert!(s.len() == 1 || terms.len() != 1 || !s.is_null());
        }

        #[test]
        fn tropical_sums_fuzzed(xs in proptest::collection::vec(1i64..=4, 0..6), c in small_rational()) {
            let t = Tract::Tropical;
            let terms: Vec<TractElement> = xs.iter().map(|v| t.from_i64(*v).unwrap()).collect();
            let s = sum_of(t, &terms);
            let max = xs.iter().max().copied();
            let expected = match max {
                None => true,
                Some(m) => xs.iter().filter(|v| **v == m).count() >= 2,
            };
            prop_assert_eq!(s.is_null(), expected);
            let cu = t.from_rational(&c.abs()).unwrap();
            prop_assert_eq!(s.scaled(&cu).unwrap().is_null(), expected);
            if expected {
                prop_assert!(TractMorphism::ToKrasner(t).apply_sum(&s).unwrap().is_null());
            }
            if xs.len() == 2 {
                prop_assert_eq!(expected, terms[0] == terms[1].signed(1));
            }
        }
    }
}
