//! Ordinary matroids on `[n]`, stored by explicit basis lists.
//!
//! Subsets of `[n]` are `u32` masks with element `i` at bit `i - 1`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tracts::{FormalSum, Tract, TractElement};

pub const MAX_GROUND: usize = 16;

#[inline]
fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn elements(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b + 1)
    })
}

/// Plain-text form of a subset of `[n]`, comma-joined.
pub fn mask_text(mask: u32) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = elements(mask).map(|e| format!("{e}")).collect();
    parts.join(",")
}

/// `r`-subsets of `[n]` in ascending mask order.
pub fn k_subsets(n: usize, r: usize) -> Vec<u32> {
    (0..=full(n)).filter(|m| m.count_ones() as usize == r).collect()
}

/// A violating `(B, B', e)` triple of the strong exchange axiom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub b: u32,
    pub b_prime: u32,
    pub e: usize,
}

/// Strong basis exchange. `Ok(())` on success; the first violating triple in
/// ascending mask order otherwise. An empty family fails with no witness.
pub fn check_basis_exchange(family: &[u32]) -> core::result::Result<(), Option<ExchangeWitness>> {
    if family.is_empty() {
        return Err(None);
    }
    let mut sorted = family.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let contains = |m: u32| sorted.binary_search(&m).is_ok();
    for &b in &sorted {
        for &bp in &sorted {
            for e in elements(b & !bp) {
                let eb = 1u32 << (e - 1);
                let ok = elements(bp & !b).any(|f| {
                    let fb = 1u32 << (f - 1);
                    contains(b & !eb | fb) && contains(bp & !fb | eb)
                });
                if !ok {
                    return Err(Some(ExchangeWitness { b, b_prime: bp, e }));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    bases: Vec<u32>,
}

impl Matroid {
    pub fn new(n: usize, mut bases: Vec<u32>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::Capacity { n, max: MAX_GROUND });
        }
        if bases.iter().any(|b| b & !full(n) != 0) {
            return Err(Error::Invalid(format!("basis outside [{n}]")));
        }
        bases.sort_unstable();
        bases.dedup();
        match check_basis_exchange(&bases) {
            Ok(()) => Ok(Matroid { n, bases }),
            Err(None) => Err(Error::Invalid("empty basis family".into())),
            Err(Some(w)) => Err(Error::Invalid(format!(
                "basis exchange fails at B={{{}}}, B'={{{}}}, e={}",
                mask_text(w.b),
                mask_text(w.b_prime),
                w.e
            ))),
        }
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Invalid(format!("U_{{{r},{n}}} needs r <= n")));
        }
        Matroid::new(n, k_subsets(n, r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.bases[0].count_ones() as usize
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn is_basis(&self, b: u32) -> bool {
        self.bases.binary_search(&b).is_ok()
    }

    pub fn is_independent(&self, s: u32) -> bool {
        self.bases.iter().any(|b| s & !b == 0)
    }

    /// Minimal dependent sets, ascending by mask.
    pub fn circuits(&self) -> Vec<u32> {
        (0..=full(self.n))
            .filter(|&s| !self.is_independent(s) && elements(s).all(|e| self.is_independent(s & !(1 << (e - 1)))))
            .collect()
    }

    pub fn dual(&self) -> Matroid {
        let mut bases: Vec<u32> = self.bases.iter().map(|b| !b & full(self.n)).collect();
        bases.sort_unstable();
        Matroid { n: self.n, bases }
    }

    pub fn cocircuits(&self) -> Vec<u32> {
        self.dual().circuits()
    }

    fn is_loop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| b >> (i - 1) & 1 == 0)
    }

    fn is_coloop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| b >> (i - 1) & 1 == 1)
    }

    fn relabel(&self, bases: impl Iterator<Item = u32>, i: usize) -> Matroid {
        let low = (1u32 << (i - 1)) - 1;
        let mut out: Vec<u32> = bases.map(|b| (b & low) | (b >> i) << (i - 1)).collect();
        out.sort_unstable();
        out.dedup();
        Matroid { n: self.n - 1, bases: out }
    }

    fn check_element(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::Invalid(format!("element {i} outside [{}]", self.n)));
        }
        Ok(())
    }

    /// `M / i`, relabelled onto `[n - 1]`.
    pub fn contract(&self, i: usize) -> Result<Matroid> {
        self.check_element(i)?;
        if self.is_loop(i) {
            return self.delete(i);
        }
        let bit = 1u32 << (i - 1);
        Ok(self.relabel(self.bases.iter().filter(|b| *b & bit != 0).map(|b| b & !bit), i))
    }

    /// `M \ i`, relabelled onto `[n - 1]`.
    pub fn delete(&self, i: usize) -> Result<Matroid> {
        self.check_element(i)?;
        let bit = 1u32 << (i - 1);
        if self.is_coloop(i) {
            return Ok(self.relabel(self.bases.iter().map(|b| b & !bit), i));
        }
        Ok(self.relabel(self.bases.iter().copied().filter(|b| b & bit == 0), i))
    }
}

/// Every matroid on `[n]`, by filtering all families of equicardinal subsets.
pub fn enumerate_matroids(n: usize) -> Result<Vec<Matroid>> {
    if n > 4 {
        return Err(Error::Capacity { n, max: 4 });
    }
    let mut out = Vec::new();
    for r in 0..=n {
        let candidates = k_subsets(n, r);
        let k = candidates.len();
        for pick in 1u64..(1u64 << k) {
            let family: Vec<u32> = (0..k).filter(|j| pick >> j & 1 == 1).map(|j| candidates[j]).collect();
            if check_basis_exchange(&family).is_ok() {
                out.push(Matroid { n, bases: family });
            }
        }
    }
    Ok(out)
}

fn is_clutter(family: &[u32]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(a, &x)| family.iter().enumerate().all(|(b, &y)| a == b || x & !y != 0))
}

/// Minty's painting axiom for a candidate circuit/cocircuit pair on `[n]`.
pub fn check_minty(c: &[u32], d: &[u32], n: usize) -> bool {
    let nontrivial = |f: &[u32]| f.iter().all(|x| *x != 0) && is_clutter(f);
    if !nontrivial(c) || !nontrivial(d) {
        return false;
    }
    if c.iter().any(|x| d.iter().any(|y| (x & y).count_ones() == 1)) {
        return false;
    }
    minty_uncovered(c, d, n).is_none()
}

/// First tripartition `(P, Q, {e})` of `[n]` not covered by the pair.
pub fn minty_uncovered(c: &[u32], d: &[u32], n: usize) -> Option<(u32, u32, usize)> {
    let all = full(n);
    for e in 1..=n {
        let eb = 1u32 << (e - 1);
        let rest = all & !eb;
        // P ranges over the subsets of `rest`, ascending.
        let mut p = 0u32;
        loop {
            let q = rest & !p;
            let covered = c.iter().any(|x| x & eb != 0 && x & !(p | eb) == 0)
                || d.iter().any(|y| y & eb != 0 && y & !(q | eb) == 0);
            if !covered {
                return Some((p, q, e));
            }
            if p == rest {
                break;
            }
            p = (p.wrapping_sub(rest)) & rest;
        }
    }
    None
}

/// `sign(B)` for `B ⊆ [n]`: sign of the permutation listing `B` then `[n] \ B`.
pub fn complement_sign(n: usize, b: u32) -> bool {
    let mut inversions = 0usize;
    for (k, e) in elements(b & full(n)).enumerate() {
        inversions += e - 1 - k;
    }
    inversions % 2 == 1
}

/// A Grassmann–Plücker function of rank `r` on `[n]` over a tract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPFunction {
    n: usize,
    r: usize,
    tract: Tract,
    keys: Vec<u32>,
    values: Vec<TractElement>,
}

impl GPFunction {
    pub fn new(n: usize, r: usize, tract: Tract, values: impl IntoIterator<Item = (u32, TractElement)>) -> Result<Self> {
        if n > MAX_GROUND || r > n {
            return Err(Error::Invalid(format!("bad shape r={r}, n={n}")));
        }
        let keys = k_subsets(n, r);
        let mut vals = alloc::vec![tract.zero(); keys.len()];
        for (k, v) in values {
            if v.tract() != tract {
                return Err(Error::TractMismatch(tract, v.tract()));
            }
            let at = keys
                .binary_search(&k)
                .map_err(|_| Error::Invalid(format!("{{{}}} is not an {r}-subset of [{n}]", mask_text(k))))?;
            vals[at] = v;
        }
        if vals.iter().all(|v| v.is_zero()) {
            return Err(Error::Precondition("identically zero Grassmann-Pluecker function".into()));
        }
        Ok(GPFunction { n, r, tract, keys, values: vals })
    }

    /// The indicator of the bases of `m` over `K`, or `1` on bases over any tract.
    pub fn constant_on(m: &Matroid, tract: Tract) -> Self {
        let values = m.bases().iter().map(|b| (*b, tract.one()));
        GPFunction::new(m.n(), m.rank(), tract, values).expect("nonempty basis family")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn tract(&self) -> Tract {
        self.tract
    }

    pub fn get(&self, b: u32) -> TractElement {
        match self.keys.binary_search(&b) {
            Ok(at) => self.values[at].clone(),
            Err(_) => self.tract.zero(),
        }
    }

    pub fn support(&self) -> Vec<u32> {
        self.keys.iter().zip(&self.values).filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k).collect()
    }

    pub fn underlying(&self) -> Result<Matroid> {
        Matroid::new(self.n, self.support())
    }

    /// `ψ^⊥([n] \ B) = sign(B) ψ(B)`.
    pub fn dual(&self) -> GPFunction {
        let all = full(self.n);
        let values = self
            .keys
            .iter()
            .zip(&self.values)
            .map(|(b, v)| (!b & all, v.signed(complement_sign(self.n, *b) as usize)));
        GPFunction::new(self.n, self.n - self.r, self.tract, values).expect("dual of a nontrivial function")
    }
}

/// Checks every Grassmann–Plücker relation; returns the first failing `(S, T)`.
pub fn check_gp(psi: &GPFunction) -> core::result::Result<(), (u32, u32)> {
    let (n, r) = (psi.n, psi.r);
    if r == 0 || r == n {
        return Ok(());
    }
    for s in k_subsets(n, r + 1) {
        for t in k_subsets(n, r - 1) {
            let mut sum = FormalSum::new(psi.tract);
            for x in elements(s & !t) {
                let xb = 1u32 << (x - 1);
                let k = (s & (xb - 1)).count_ones() + (t & (xb - 1)).count_ones();
                let term = psi.get(s & !xb).mul_unchecked(&psi.get(t | xb)).signed(k as usize);
                sum.push(term).expect("homogeneous tract");
            }
            if !sum.is_null() {
                return Err((s, t));
            }
        }
    }
    Ok(())
}
