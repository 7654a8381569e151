//! Sparse multivariate polynomials over a [`GroundField`].
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! the lexicographic order with the first variable most significant. No zero
//! coefficient is ever stored.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::{Fq, GroundField};

/// Exponent vector of a monomial. Entries are arbitrary precision so that
/// Frobenius scaling by `p^e` never overflows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub(crate) Vec<BigUint>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![BigUint::zero(); nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = BigUint::one();
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = u64>>(exps: I) -> Self {
        Monomial(exps.into_iter().map(BigUint::from).collect())
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, factor: &BigUint) -> Monomial {
        Monomial(self.0.iter().map(|a| a * factor).collect())
    }

    /// `self / other` when every exponent of `other` is at most that of `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a >= b).then(|| a - b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        )
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    pub fn total_degree(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Splits every exponent as `a = q·m + r` with `0 ≤ r < m`, returning
    /// `(quotient, remainder)` monomials.
    pub fn div_rem_exponents(&self, modulus: &BigUint) -> (Monomial, Monomial) {
        let (q, r): (Vec<_>, Vec<_>) = self.0.iter().map(|a| a.div_rem(modulus)).unzip();
        (Monomial(q), Monomial(r))
    }
}

/// A polynomial in `nvars` variables over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: GroundField,
    nvars: usize,
    terms: BTreeMap<Monomial, Fq>,
}

impl core::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let names: Vec<alloc::string::String> =
            (1..=self.nvars).map(|i| alloc::format!("x{i}")).collect();
        f.write_str(&crate::parse::render_polynomial(self, &names, "g"))
    }
}

impl Polynomial {
    pub fn zero(field: GroundField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: GroundField, nvars: usize, c: Fq) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: GroundField, nvars: usize) -> Self {
        Self::constant(field, nvars, Fq::ONE)
    }

    pub fn var(field: GroundField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        Self::term(field, Monomial::var(nvars, i), Fq::ONE)
    }

    pub fn term(field: GroundField, monomial: Monomial, c: Fq) -> Self {
        let nvars = monomial.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Polynomial {
            field,
            nvars,
            terms,
        }
    }

    /// Builds a polynomial from terms, merging repeats and dropping zeros.
    pub fn from_terms<I>(field: GroundField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Fq)>,
    {
        let mut out = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.arity(), nvars, "monomial arity mismatch");
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Fq) {
        if c.is_zero() {
            return;
        }
        let f = self.field;
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Fq)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Fq {
        self.terms.get(m).copied().unwrap_or(Fq::ZERO)
    }

    /// The constant value when the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Fq> {
        match self.terms.len() {
            0 => Some(Fq::ZERO),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(*c)
            }
            _ => None,
        }
    }

    /// The single term when the polynomial is a nonzero monomial times a unit.
    pub fn as_term(&self) -> Option<(&Monomial, Fq)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (m, *c))
        } else {
            None
        }
    }

    /// Greatest term in the lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, Fq)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn total_degree(&self) -> Option<BigUint> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Greatest exponent of variable `i` appearing in the support.
    pub fn degree_in(&self, i: usize) -> BigUint {
        self.terms
            .keys()
            .map(|m| m.0[i].clone())
            .max()
            .unwrap_or_else(BigUint::zero)
    }

    /// Greatest common monomial divisor of the support (`1` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    fn check_compatible(&self, other: &Polynomial) {
        assert!(
            self.field == other.field,
            "ground field mismatch: {:?} vs {:?}",
            self.field,
            other.field
        );
        assert_eq!(self.nvars, other.nvars, "arity mismatch");
    }

    pub fn scale(&self, c: Fq) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        let f = self.field;
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), *a)).collect(),
        }
    }

    /// Divides every term by `m`; panics if `m` does not divide the support.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.checked_div(m).expect("monomial does not divide"), *a))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Polynomial {
        if let Some((m, c)) = self.as_term() {
            let mc = self.field.pow(c, e);
            return Self::term(self.field, m.scale(&BigUint::from(e)), mc);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest cofactor `m` (after removing the `p`-power part of the exponent)
    /// accepted by [`Polynomial::pow_big`] for bases with more than one term.
    pub const MAX_DENSE_POWER: u64 = 1 << 16;

    /// `self^e` for an arbitrary-precision exponent. The `p`-power part of `e`
    /// is applied as Frobenius, so only the cofactor is expanded by squaring;
    /// returns `None` when that cofactor exceeds [`Self::MAX_DENSE_POWER`]
    /// and the base is not a single term.
    pub fn pow_big(&self, e: &BigUint) -> Option<Polynomial> {
        if let Some((m, c)) = self.as_term() {
            // c is nonzero, so c^e depends only on e mod (q - 1)
            let ce = (e % BigUint::from(self.field.order() - 1)).to_u64().unwrap_or(0);
            let cc = self.field.pow(c, ce);
            return Some(Self::term(self.field, m.scale(e), cc));
        }
        if e.is_zero() {
            return Some(Self::one(self.field, self.nvars));
        }
        let p = BigUint::from(self.field.characteristic());
        let mut cof = e.clone();
        let mut j = 0u32;
        while (&cof % &p).is_zero() {
            cof /= &p;
            j += 1;
        }
        let m = cof.to_u64().filter(|m| *m <= Self::MAX_DENSE_POWER)?;
        Some(self.pow(m).frobenius(j))
    }

    /// `f^{p^e}`: exponents scale by `p^e`, coefficients are raised to `p^e`.
    pub fn frobenius(&self, e: u32) -> Polynomial {
        let f = self.field;
        let q = BigUint::from(f.characteristic()).pow(e);
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale(&q), f.frobenius(*c, e)))
                .collect(),
        }
    }

    /// Applies `f` to every monomial (which must be injective on the support).
    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, nvars: usize, mut f: F) -> Self {
        let mut out = Self::zero(self.field, nvars);
        for (m, c) in &self.terms {
            out.add_term(f(m), *c);
        }
        out
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms<F: FnMut(&Monomial, Fq) -> bool>(&self, mut keep: F) -> Self {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, **c))
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Exact division by `d`, if `d` divides `self` (lexicographic division
    /// with zero remainder).
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        self.check_compatible(d);
        let (lm, lc) = d.leading_term()?;
        let lc_inv = self.field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(lm)?;
            let qc = self.field.mul(rc, lc_inv);
            let step = Self::term(self.field, qm, qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Evaluates the exponent of variable `i` of every monomial as a `u64`
    /// when that fits; used for univariate views.
    pub fn small_exponent(m: &Monomial, i: usize) -> Option<u64> {
        m.0[i].to_u64()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.field;
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_compatible(rhs);
        let f = self.field;
        let mut out = Polynomial::zero(f, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), f.mul(*ca, *cb));
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
