//! Truncated Hahn series `Σ c_γ t^γ` with exponents in `Z[1/p]`, and the
//! map `F_p[X, Y] → F_p((t^{Z[1/p]}))` given by `X ↦ t`,
//! `Y ↦ Σ_{i≥1} t^{1 − p^{-i}}`.
//!
//! A [`HahnSeries`] stores its terms below a threshold `exact_below`; every
//! omitted term has exponent at least the threshold. Sums and products
//! track the threshold, so leading terms below it are certified.
//!
//! The image of `Y` is a root of `Z^p − X^{p−1}Z − X^{p−1}`, so the map has
//! a kernel: [`hahn_embed_value`] then exhausts its bound.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{GroupError, SeriesError};
use crate::field::{Fq, GroundField};
use crate::group::{GroupElement, GroupKind, ValueGroup};
use crate::poly::Polynomial;

/// Depth of the first truncation of the image of `Y`.
pub const INITIAL_DEPTH: u32 = 2;
/// Deepest truncation tried before reporting exhaustion.
pub const MAX_DEPTH: u32 = 24;

/// A Hahn series known exactly below `exact_below` (exactly everywhere when
/// that is `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnSeries {
    field: GroundField,
    terms: BTreeMap<BigRational, Fq>,
    exact_below: Option<BigRational>,
}

fn min_opt(a: Option<BigRational>, b: Option<BigRational>) -> Option<BigRational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl HahnSeries {
    /// A finitely supported series, known exactly.
    pub fn exact(field: GroundField, terms: impl IntoIterator<Item = (BigRational, Fq)>) -> Self {
        let mut s = HahnSeries {
            field,
            terms: BTreeMap::new(),
            exact_below: None,
        };
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Terms below `bound`, all others unknown but at or above `bound`.
    pub fn truncated(
        field: GroundField,
        terms: impl IntoIterator<Item = (BigRational, Fq)>,
        bound: BigRational,
    ) -> Self {
        let mut s = Self::exact(field, terms);
        s.set_bound(Some(bound));
        s
    }

    pub fn zero(field: GroundField) -> Self {
        Self::exact(field, [])
    }

    /// `c·t^e`.
    pub fn monomial(field: GroundField, e: BigRational, c: Fq) -> Self {
        Self::exact(field, [(e, c)])
    }

    pub fn one(field: GroundField) -> Self {
        Self::monomial(field, BigRational::zero(), Fq::ONE)
    }

    fn add_term(&mut self, e: BigRational, c: Fq) {
        if c.is_zero() {
            return;
        }
        let f = self.field;
        let entry = self.terms.entry(e).or_insert(Fq::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn set_bound(&mut self, bound: Option<BigRational>) {
        if let Some(b) = &bound {
            self.terms.retain(|e, _| e < b);
        }
        self.exact_below = bound;
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    /// Known terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &Fq)> {
        self.terms.iter()
    }

    pub fn exact_below(&self) -> Option<&BigRational> {
        self.exact_below.as_ref()
    }

    /// A lower bound for every exponent, known or not; `None` for the exact
    /// zero series.
    fn lower_bound(&self) -> Option<BigRational> {
        min_opt(self.terms.keys().next().cloned(), self.exact_below.clone())
    }

    /// The least exponent, when it is certified.
    pub fn leading_exponent(&self) -> Option<&BigRational> {
        self.terms.keys().next()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.exact_below.is_none()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out.set_bound(min_opt(self.exact_below.clone(), other.exact_below.clone()));
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> Self {
        let mut out = HahnSeries::zero(self.field);
        for (e, d) in &self.terms {
            out.add_term(e.clone(), self.field.mul(c, *d));
        }
        out.set_bound(if c.is_zero() { None } else { self.exact_below.clone() });
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bound = min_opt(
            self.exact_below.as_ref().zip(other.lower_bound()).map(|(a, b)| a + b),
            other.exact_below.as_ref().zip(self.lower_bound()).map(|(a, b)| a + b),
        );
        let mut out = HahnSeries::zero(self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if bound.as_ref().is_some_and(|b| &e >= b) {
                    // exponents of `other` only grow from here
                    break;
                }
                out.add_term(e, self.field.mul(*c1, *c2));
            }
        }
        out.set_bound(bound);
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = HahnSeries::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^p`, computed termwise in characteristic `p`.
    pub fn frobenius(&self) -> Self {
        let p = BigRational::from_integer(BigInt::from(self.field.characteristic()));
        let mut out = HahnSeries::zero(self.field);
        for (e, c) in &self.terms {
            out.add_term(e * &p, self.field.frobenius(*c, 1));
        }
        out.set_bound(self.exact_below.as_ref().map(|b| b * &p));
        out
    }
}

fn p_power(p: u32, i: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(p).pow(i))
}

/// The image of `Y` truncated after `depth` terms: `Σ_{i=1}^{depth}
/// t^{1 − p^{-i}}`, exact below `1 − p^{-(depth+1)}`.
pub fn hahn_y_image(field: GroundField, depth: u32) -> HahnSeries {
    let p = field.characteristic();
    let one = BigRational::one();
    let terms = (1..=depth).map(|i| (&one - p_power(p, i).recip(), Fq::ONE));
    HahnSeries::truncated(field, terms, &one - p_power(p, depth + 1).recip())
}

/// The image of a polynomial in `X, Y` with `Y` truncated at `depth`.
pub fn hahn_image(f: &Polynomial, depth: u32) -> Result<HahnSeries, SeriesError> {
    if f.nvars() != 2 {
        return Err(SeriesError::BadArity(f.nvars()));
    }
    let field = f.field();
    let y = hahn_y_image(field, depth);
    let mut y_powers: BTreeMap<u64, HahnSeries> = BTreeMap::new();
    let mut acc = HahnSeries::zero(field);
    for (m, c) in f.terms() {
        let exps: Vec<u64> = m
            .exponents()
            .iter()
            .map(|e| e.to_u64())
            .collect::<Option<_>>()
            .ok_or_else(|| SeriesError::HahnBoundExhausted {
                bound: format!("exponent too large in {m:?}"),
            })?;
        let x_part = HahnSeries::monomial(field, BigRational::from_integer(BigInt::from(exps[0])), *c);
        let y_part = y_powers.entry(exps[1]).or_insert_with(|| y.pow(exps[1]));
        acc = acc.add(&x_part.mul(y_part));
    }
    Ok(acc)
}

/// Least exponent of the image of a nonzero polynomial, deepening the
/// truncation of `Y` until a term below `bound` is certified.
pub fn hahn_embed_value(f: &Polynomial, bound: &BigRational) -> Result<GroupElement, SeriesError> {
    if f.is_zero() {
        return Err(SeriesError::ZeroInput);
    }
    let exhausted = || SeriesError::HahnBoundExhausted { bound: format!("{bound}") };
    for depth in INITIAL_DEPTH..=MAX_DEPTH {
        let img = hahn_image(f, depth)?;
        if let Some(e) = img.leading_exponent() {
            if e >= bound {
                return Err(exhausted());
            }
            return Ok(GroupElement(alloc::vec![e.clone()]));
        }
        if img.exact_below().is_some_and(|b| b >= bound) {
            return Err(exhausted());
        }
    }
    Err(exhausted())
}

fn divisible_by(group: &ValueGroup, p: u32) -> bool {
    match group.kind() {
        GroupKind::PDivisible(q) => *q == p,
        GroupKind::LexSum(cs) => !cs.is_empty() && cs.iter().all(|g| divisible_by(g, p)),
        _ => false,
    }
}

/// For a positive value `γ` of a `p`-divisible group, the value `γ/p`, with
/// `p·(γ/p) = γ` checked exactly: every positive value is `p` times a
/// positive value.
pub fn unit_pth_power_factor(group: &ValueGroup, p: u32, gamma: &GroupElement) -> Result<GroupElement, SeriesError> {
    if !divisible_by(group, p) {
        return Err(GroupError::NotPDivisible.into());
    }
    group.contains(gamma)?;
    if !group.is_positive(gamma)? {
        return Err(GroupError::NotPositive.into());
    }
    let root = group.divide(gamma, p)?;
    let back = root.scale(&BigInt::from(p));
    if back != *gamma || !group.is_positive(&root)? {
        return Err(GroupError::NotInGroup(format!("{} is not p times {}", group.render(gamma), group.render(&root))).into());
    }
    Ok(root)
}
