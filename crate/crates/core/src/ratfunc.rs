//! Rational functions `K = F_q(x_1, …, x_n)` without a GCD engine.
//!
//! Equality is decided by cross-multiplication. Representatives are kept
//! tidy (not canonical) by cancelling the common monomial content, dividing
//! out exact polynomial quotients when one side divides the other, and making
//! the leading coefficient of the denominator `1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::field::{Fq, GroundField};
use crate::poly::{Monomial, Polynomial};

/// A function field `F_q(x_1, …, x_n)`, optionally with some variables (or
/// the whole field) closed under `p`-th roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub base: GroundField,
    pub variables: Vec<String>,
    /// The whole field is perfect (`K = K^p`).
    pub perfected: bool,
    /// Indices of variables adjoined together with all their `p`-power roots,
    /// as in `F_p(s^{1/p^∞})`.
    pub perfect_closure: Vec<usize>,
    /// Symbol used for the generator of `F_q` over `F_p` when `q ≠ p`.
    pub generator_name: String,
}

impl FieldDescriptor {
    pub fn new<S: Into<String>>(base: GroundField, variables: impl IntoIterator<Item = S>) -> Self {
        FieldDescriptor {
            base,
            variables: variables.into_iter().map(Into::into).collect(),
            perfected: false,
            perfect_closure: Vec::new(),
            generator_name: String::from("g"),
        }
    }

    /// The perfection of `F_q(variables)`.
    pub fn perfected(mut self) -> Self {
        self.perfected = true;
        self
    }

    pub fn with_perfect_closure(mut self, indices: Vec<usize>) -> Self {
        self.perfect_closure = indices;
        self
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn p(&self) -> u32 {
        self.base.characteristic()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Transcendence degree over the ground field.
    pub fn transcendence_degree(&self) -> usize {
        self.variables.len()
    }

    /// `[K : K^p]`: `p^n` for `F_q(x_1..x_n)` (the base is perfect), reduced by
    /// one factor of `p` per perfectly closed variable, and `1` when perfected.
    pub fn degree_over_pth_powers(&self) -> BigUint {
        if self.perfected {
            return BigUint::one();
        }
        let free = self.variables.len() - self.perfect_closure.len();
        BigUint::from(self.p()).pow(free as u32)
    }

    pub fn zero(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::zero(self.base, self.nvars()))
    }

    pub fn one(&self) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::one(self.base, self.nvars()))
    }

    pub fn var(&self, i: usize) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::var(self.base, self.nvars(), i))
    }

    pub fn constant(&self, c: Fq) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::constant(self.base, self.nvars(), c))
    }
}

/// An element `num / den` of a rational function field.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        rf_eq(self, other).unwrap_or(false)
    }
}

impl Eq for RationalFunction {}

/// Semantic equality: `a·den(b) − b·den(a) = 0`.
pub fn rf_eq(a: &RationalFunction, b: &RationalFunction) -> Result<bool, AlgebraError> {
    if a.nvars() != b.nvars() {
        return Err(AlgebraError::ArityMismatch {
            left: a.nvars(),
            right: b.nvars(),
        });
    }
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    Ok((&(&a.num * &b.den) - &(&b.num * &a.den)).is_zero())
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::ArityMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        if num.field() != den.field() {
            return Err(AlgebraError::FieldMismatch);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.field(), p.nvars());
        RationalFunction { num: p, den: one }
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let (field, n) = (num.field(), num.nvars());
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(field, n),
            };
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        let (mut num, mut den) = if common.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&common), den.div_monomial(&common))
        };
        if den.as_term().is_none() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = Polynomial::one(field, n);
            } else if num.as_term().is_none() {
                if let Some(q) = den.exact_div(&num) {
                    num = Polynomial::one(field, n);
                    den = q;
                }
            }
        }
        let (_, lc) = den.leading_term().expect("nonzero denominator");
        if lc != Fq::ONE {
            let inv = field.inv(lc).expect("nonzero");
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> GroundField {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this element equals, if the denominator is a constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        let c = self.den.as_constant()?;
        let inv = self.field().inv(c)?;
        Some(self.num.scale(inv))
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self::normalized(base.num.pow(e), base.den.pow(e)))
    }

    /// `self^e` for a nonnegative arbitrary-precision exponent.
    pub fn pow_big(&self, e: &BigUint) -> Result<Self, AlgebraError> {
        let too_big = || AlgebraError::ExponentTooLarge(alloc::format!("{e}"));
        let num = self.num.pow_big(e).ok_or_else(too_big)?;
        let den = self.den.pow_big(e).ok_or_else(too_big)?;
        Ok(Self::normalized(num, den))
    }

    /// `f^{p^e}`.
    pub fn frobenius(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.frobenius(e),
            den: self.den.frobenius(e),
        }
    }

    pub fn scale(&self, c: Fq) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Image under the field homomorphism sending variable `i` to `images[i]`.
    ///
    /// All images must live in one common target field. Fails when the image
    /// of the denominator vanishes.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                left: self.nvars(),
                right: images.len(),
            });
        }
        let Some(first) = images.first() else {
            // no variables: constants map to themselves, but the target arity
            // is unknown, so keep the element as is
            return Ok(self.clone());
        };
        let (field, m) = (first.field(), first.nvars());
        for img in images {
            if img.nvars() != m {
                return Err(AlgebraError::ArityMismatch {
                    left: m,
                    right: img.nvars(),
                });
            }
            if img.field() != field || field != self.field() {
                return Err(AlgebraError::FieldMismatch);
            }
        }
        // common denominator exponents per variable
        let maxdeg: Vec<BigUint> = (0..self.nvars())
            .map(|i| self.num.degree_in(i).max(self.den.degree_in(i)))
            .collect();
        let mut cache = PowCache::default();
        let num = eval_cleared(&self.num, images, &maxdeg, &mut cache)?;
        let den = eval_cleared(&self.den, images, &maxdeg, &mut cache)?;
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        let _ = m;
        Ok(Self::normalized(num, den))
    }
}

#[derive(Default)]
struct PowCache {
    entries: Vec<((usize, bool, BigUint), Polynomial)>,
}

impl PowCache {
    fn get(
        &mut self,
        base: &Polynomial,
        key: (usize, bool, BigUint),
    ) -> Result<Polynomial, AlgebraError> {
        if let Some((_, v)) = self.entries.iter().find(|(k, _)| *k == key) {
            return Ok(v.clone());
        }
        let v = base
            .pow_big(&key.2)
            .ok_or_else(|| AlgebraError::ExponentTooLarge(alloc::format!("{}", key.2)))?;
        self.entries.push((key, v.clone()));
        Ok(v)
    }
}

/// `Σ c Π num_i^{α_i} den_i^{D_i − α_i}`, i.e. `P(images) · Π den_i^{D_i}`.
fn eval_cleared(
    poly: &Polynomial,
    images: &[RationalFunction],
    maxdeg: &[BigUint],
    cache: &mut PowCache,
) -> Result<Polynomial, AlgebraError> {
    let first = &images[0];
    let (field, m) = (first.field(), first.nvars());
    let mut acc = Polynomial::zero(field, m);
    for (mono, c) in poly.terms() {
        let mut term = Polynomial::constant(field, m, *c);
        for (i, a) in mono.exponents().iter().enumerate() {
            let img = &images[i];
            if !a.is_zero() {
                term = &term * &cache.get(&img.num, (i, true, a.clone()))?;
            }
            let rest = &maxdeg[i] - a;
            if !rest.is_zero() && img.den.as_constant() != Some(Fq::ONE) {
                term = &term * &cache.get(&img.den, (i, false, rest))?;
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

/// A Laurent monomial `x^v` (entries of `v` may be negative) as a rational
/// function.
pub fn laurent_monomial(
    base: GroundField,
    exponents: &[num_bigint::BigInt],
) -> RationalFunction {
    let n = exponents.len();
    let mut num = Vec::with_capacity(n);
    let mut den = Vec::with_capacity(n);
    for e in exponents {
        let mag = e.magnitude().clone();
        if e.sign() == num_bigint::Sign::Minus {
            num.push(BigUint::zero());
            den.push(mag);
        } else {
            num.push(mag);
            den.push(BigUint::zero());
        }
    }
    RationalFunction {
        num: Polynomial::term(base, Monomial(num), Fq::ONE),
        den: Polynomial::term(base, Monomial(den), Fq::ONE),
    }
}

/// Convenience for small exponents in tests and examples.
pub fn small_exponent(e: &BigUint) -> Option<u64> {
    e.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::rf_parse;

    fn field(p: u32, vars: &[&str]) -> FieldDescriptor {
        FieldDescriptor::new(GroundField::prime(p).unwrap(), vars.iter().copied())
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let k = field(5, &["x", "y", "z"]);
        let a = rf_parse("x/y", &k).unwrap();
        let b = rf_parse("x*z/(y*z)", &k).unwrap();
        assert!(rf_eq(&a, &a).unwrap());
        assert!(rf_eq(&a, &b).unwrap());
        assert!(!rf_eq(&k.var(0), &k.var(1)).unwrap());
        let other = field(5, &["x", "y"]);
        assert_eq!(
            rf_eq(&a, &other.var(0)),
            Err(AlgebraError::ArityMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn difference_of_squares_cancels() {
        let k = field(3, &["x", "y"]);
        let f = rf_parse("(x^2 - y^2)/(x - y)", &k).unwrap();
        let g = rf_parse("x + y", &k).unwrap();
        assert_eq!(f, g);
        // the exact quotient is taken, so the representative is the polynomial
        assert!(f.as_polynomial().is_some());
    }

    #[test]
    fn blow_up_substitution() {
        let k = field(2, &["x", "y", "z"]);
        let chart = field(2, &["x", "u", "w"]);
        let images = [
            rf_parse("x", &chart).unwrap(),
            rf_parse("u*x", &chart).unwrap(),
            rf_parse("w*x", &chart).unwrap(),
        ];
        let z = rf_parse("z", &k).unwrap();
        assert_eq!(z.substitute(&images).unwrap(), rf_parse("w*x", &chart).unwrap());
        let slope = rf_parse("y/x", &k).unwrap();
        assert_eq!(slope.substitute(&images).unwrap(), rf_parse("u", &chart).unwrap());
        let id = [k.var(0), k.var(1), k.var(2)];
        let f = rf_parse("(x*y + z^3)/(1 + x)", &k).unwrap();
        assert_eq!(f.substitute(&id).unwrap(), f);
    }

    #[test]
    fn substitution_zero_denominator() {
        let k = field(2, &["x", "y"]);
        let target = field(2, &["t"]);
        let f = rf_parse("1/(x + y)", &k).unwrap();
        let t = target.var(0);
        assert_eq!(
            f.substitute(&[t.clone(), t]),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn degrees_over_pth_powers() {
        let k = field(3, &["x", "y"]);
        assert_eq!(k.degree_over_pth_powers(), BigUint::from(9u32));
        let l = field(3, &["s"]).perfected();
        assert_eq!(l.degree_over_pth_powers(), BigUint::one());
        let lx = field(3, &["s", "x"]).with_perfect_closure(alloc::vec![0]);
        assert_eq!(lx.degree_over_pth_powers(), BigUint::from(3u32));
    }
}
