//! The ground set `±[n] = {1, …, n, 1*, …, n*}` and its subsets.
//!
//! Elements are ordered `1 < … < n < 1* < … < n*`. A subset is a 64-bit
//! mask in which element `i` occupies bit `i - 1` and `i*` occupies bit
//! `n + i - 1`, so the mask order of bits coincides with the element order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported half-size of the ground set (one 64-bit word).
pub const MAX_N: usize = 32;

/// An element `i` or `i*` of `±[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    index: u8,
    starred: bool,
}

impl Element {
    pub fn new(index: usize, starred: bool) -> Self {
        assert!((1..=MAX_N).contains(&index), "element index out of range: {index}");
        Element { index: index as u8, starred }
    }

    pub fn plain(index: usize) -> Self {
        Element::new(index, false)
    }

    pub fn starred(index: usize) -> Self {
        Element::new(index, true)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.index as usize
    }

    #[inline]
    pub fn is_starred(self) -> bool {
        self.starred
    }

    /// `χ(x)`: 0 for `i`, 1 for `i*`.
    #[inline]
    pub fn chi(self) -> usize {
        self.starred as usize
    }

    #[inline]
    pub fn star(self) -> Self {
        Element { index: self.index, starred: !self.starred }
    }

    /// Bit position inside a mask over `±[n]`.
    #[inline]
    pub fn bit(self, n: usize) -> usize {
        self.index() - 1 + if self.starred { n } else { 0 }
    }

    #[inline]
    pub fn from_bit(n: usize, bit: usize) -> Self {
        debug_assert!(bit < 2 * n);
        if bit < n {
            Element::plain(bit + 1)
        } else {
            Element::starred(bit - n + 1)
        }
    }

    /// Comparison under the fixed linear order of `±[n]`.
    pub fn precedes(self, other: Element) -> bool {
        (self.starred, self.index) < (other.starred, other.index)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, starred) = match s.strip_suffix('*') {
            Some(d) => (d, true),
            None => (s, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(alloc::format!("bad element `{s}`")));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad element `{s}`")))?;
        if index == 0 || index > MAX_N {
            return Err(Error::Parse(alloc::format!("element index out of range in `{s}`")));
        }
        Ok(Element::new(index, starred))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    Transversal,
    AlmostTransversal,
    Neither,
}

/// A subset of `±[n]`.
///
/// Ordering and hashing use `(n, bits)`, which makes ascending-mask order the
/// canonical deterministic order of every enumeration in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ESubset {
    n: u8,
    bits: u64,
}

impl ESubset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N, "ground set too large: n = {n}");
        ESubset { n: n as u8, bits: 0 }
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n <= MAX_N, "ground set too large: n = {n}");
        debug_assert!(n == MAX_N || bits >> (2 * n) == 0, "mask exceeds ground set");
        ESubset { n: n as u8, bits }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(n: usize, elements: I) -> Self {
        let mut s = ESubset::empty(n);
        for e in elements {
            assert!(e.index() <= n, "element {e} outside ±[{n}]");
            s = s.with(e);
        }
        s
    }

    /// `[n]` itself, the all-unstarred transversal.
    pub fn unstarred(n: usize) -> Self {
        ESubset::from_bits(n, low_mask(n))
    }

    /// `[n]*`, the all-starred transversal.
    pub fn all_starred(n: usize) -> Self {
        ESubset::from_bits(n, low_mask(n) << n)
    }

    /// The skew pair `{i, i*}`.
    pub fn pair(n: usize, index: usize) -> Self {
        ESubset::from_elements(n, [Element::plain(index), Element::starred(index)])
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, e: Element) -> bool {
        e.index() <= self.n() && self.bits >> e.bit(self.n()) & 1 == 1
    }

    #[inline]
    pub fn with(self, e: Element) -> Self {
        ESubset { n: self.n, bits: self.bits | 1 << e.bit(self.n()) }
    }

    #[inline]
    pub fn without(self, e: Element) -> Self {
        ESubset { n: self.n, bits: self.bits & !(1 << e.bit(self.n())) }
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ESubset { n: self.n, bits: self.bits | other.bits }
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ESubset { n: self.n, bits: self.bits & other.bits }
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ESubset { n: self.n, bits: self.bits & !other.bits }
    }

    #[inline]
    pub fn symmetric_difference(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ESubset { n: self.n, bits: self.bits ^ other.bits }
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Elementwise star.
    #[inline]
    pub fn star(self) -> Self {
        let n = self.n();
        let low = low_mask(n);
        ESubset { n: self.n, bits: (self.bits & low) << n | (self.bits >> n) & low }
    }

    /// Mask over `[n]` (bit `i - 1`) of the indices `i` with `{i, i*} ⊆ S`.
    #[inline]
    pub fn skew_pair_mask(self) -> u64 {
        let n = self.n();
        self.bits & (self.bits >> n) & low_mask(n)
    }

    #[inline]
    pub fn skew_pair_count(self) -> usize {
        self.skew_pair_mask().count_ones() as usize
    }

    /// Mask over `[n]` of the indices whose pair meets `S`.
    #[inline]
    pub fn touched_mask(self) -> u64 {
        let n = self.n();
        (self.bits | self.bits >> n) & low_mask(n)
    }

    /// Subsets of transversals: no skew pair.
    #[inline]
    pub fn is_subtransversal(self) -> bool {
        self.skew_pair_mask() == 0
    }

    /// `S_{<x}`: the number of elements of `S` preceding `x`.
    #[inline]
    pub fn smaller_count(self, x: Element) -> usize {
        let bit = x.bit(self.n());
        (self.bits & ((1u64 << bit) - 1)).count_ones() as usize
    }

    /// `S_{≤x}`.
    #[inline]
    pub fn smaller_eq_count(self, x: Element) -> usize {
        self.smaller_count(x) + self.contains(x) as usize
    }

    pub fn classify(self) -> Classification {
        if self.len() != self.n() {
            return Classification::Neither;
        }
        match self.skew_pair_count() {
            0 => Classification::Transversal,
            1 => Classification::AlmostTransversal,
            _ => Classification::Neither,
        }
    }

    #[inline]
    pub fn is_transversal(self) -> bool {
        self.classify() == Classification::Transversal
    }

    #[inline]
    pub fn is_almost_transversal(self) -> bool {
        self.classify() == Classification::AlmostTransversal
    }

    /// Elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements { n: self.n(), bits: self.bits }
    }

    /// Mask over `[n]` restricted to the unstarred part, as a plain index set.
    #[inline]
    pub fn unstarred_part(self) -> u64 {
        self.bits & low_mask(self.n())
    }

    /// Mask over `[n]` of indices `i` with `i* ∈ S`.
    #[inline]
    pub fn starred_part(self) -> u64 {
        self.bits >> self.n() & low_mask(self.n())
    }

    /// Canonical text form, comma-joined element texts (`"1,2,3*"`).
    pub fn to_text(self) -> String {
        let mut out = String::new();
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{e}"));
        }
        out
    }

    /// Parses the comma-joined form; the empty string is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut s = ESubset::empty(n);
        let text = text.trim();
        if text.is_empty() {
            return Ok(s);
        }
        for part in text.split(',') {
            let e: Element = part.trim().parse()?;
            if e.index() > n {
                return Err(Error::Parse(alloc::format!("element {e} outside ±[{n}]")));
            }
            if s.contains(e) {
                return Err(Error::Parse(alloc::format!("duplicate element {e}")));
            }
            s = s.with(e);
        }
        Ok(s)
    }
}

impl fmt::Debug for ESubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

impl fmt::Display for ESubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

pub struct Elements {
    n: usize,
    bits: u64,
}

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.bits == 0 {
            return None;
        }
        let bit = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(Element::from_bit(self.n, bit))
    }
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Capacity { n, max: MAX_N });
    }
    Ok(())
}

/// All transversals of `±[n]`, ascending by mask.
pub fn transversals(n: usize) -> Result<Vec<ESubset>> {
    check_capacity(n)?;
    let low = low_mask(n);
    let mut out: Vec<ESubset> = (0..1u64 << n)
        .map(|starred| ESubset::from_bits(n, (low & !starred) | starred << n))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// All almost-transversals of `±[n]`, ascending by mask.
pub fn almost_transversals(n: usize) -> Result<Vec<ESubset>> {
    check_capacity(n)?;
    let mut out = Vec::new();
    for t in transversals(n)? {
        for p in 1..=n {
            for q in 1..=n {
                if p == q {
                    continue;
                }
                // Keep the representative where q is removed from t and p doubled.
                let a = t.union(ESubset::pair(n, p)).difference(ESubset::pair(n, q));
                out.push(a);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `T_n` or `A_n`, per the requested classification.
pub fn enumerate(n: usize, kind: Classification) -> Result<Vec<ESubset>> {
    if n == 0 {
        return Err(Error::Precondition("enumerate requires n >= 1".into()));
    }
    match kind {
        Classification::Transversal => transversals(n),
        Classification::AlmostTransversal => almost_transversals(n),
        Classification::Neither => Err(Error::Precondition(
            "only transversals and almost-transversals are enumerated".into(),
        )),
    }
}

/// `T_n ∪ A_n` in ascending mask order, the coordinate index set of
/// restricted Grassmann–Plücker functions.
pub fn coordinates(n: usize) -> Result<Vec<ESubset>> {
    let mut all = transversals(n)?;
    all.extend(almost_transversals(n)?);
    all.sort_unstable();
    Ok(all)
}

/// Subsets `S` of size `n + 1` with exactly one skew pair.
pub fn near_sets(n: usize) -> Result<Vec<ESubset>> {
    let mut out = Vec::new();
    for t in transversals(n)? {
        for e in t.star().elements() {
            out.push(t.with(e));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Subtransversals of size `n - 1`.
pub fn co_near_sets(n: usize) -> Result<Vec<ESubset>> {
    let mut out = Vec::new();
    for t in transversals(n)? {
        for e in t.elements() {
            out.push(t.without(e));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Removes the skew pair `{i, i*}` and relabels `j > i` to `j - 1`.
pub fn delete_pair(s: ESubset, index: usize) -> ESubset {
    let n = s.n();
    debug_assert!(index >= 1 && index <= n);
    let mut out = ESubset::empty(n - 1);
    for e in s.elements() {
        if e.index() == index {
            continue;
        }
        let j = if e.index() > index { e.index() - 1 } else { e.index() };
        out = out.with(Element::new(j, e.is_starred()));
    }
    out
}

/// Inverse relabelling of [`delete_pair`]: inserts an empty pair at `index`.
pub fn insert_pair(s: ESubset, index: usize) -> ESubset {
    let n = s.n() + 1;
    let mut out = ESubset::empty(n);
    for e in s.elements() {
        let j = if e.index() >= index { e.index() + 1 } else { e.index() };
        out = out.with(Element::new(j, e.is_starred()));
    }
    out
}
