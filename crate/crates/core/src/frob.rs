//! Frobenius decomposition along the monomial `p`-basis, the monomial
//! splitting of a monomialized valuation ring, and its verifiers.
//!
//! Over a perfect ground field, `F_q(x_1..x_n)` is free over its `p^e`-th
//! powers on `{x^β : 0 ≤ β_i < p^e}`. Writing `f = Σ c_β^{p^e} x^β`, the
//! splitting keeps the coefficient of `x^0`: `φ(f) = c_0^{p^e}`, which on a
//! polynomial is the sum of its terms with every exponent divisible by
//! `p^e`. On a quotient `a/b` it is `φ(a·b^{p^e−1}) / b^{p^e}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use crate::error::{SplitError, ValuationError};
use crate::field::GroundField;
use crate::group::GroupElement;
use crate::parse::render;
use crate::poly::{Monomial, Polynomial};
use crate::ratfunc::{rf_eq, FieldDescriptor, RationalFunction};
use crate::sample::{random_nonzero_polynomial, PolyShape};
use crate::valuation::{GaussValuation, MonomialValuation};

/// `f = Σ c_β^{p^e} · x^β` with `0 ≤ β_i < p^e`.
///
/// Variables listed in `kept` are not decomposed: their exponents stay in
/// the coefficients, which then live in the field where those variables
/// are replaced by their `p^e`-th roots (see [`decompose_keeping`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobDecomposition {
    field: GroundField,
    nvars: usize,
    iteration: u32,
    kept: Vec<usize>,
    coefficients: BTreeMap<Monomial, RationalFunction>,
}

impl FrobDecomposition {
    pub fn iteration(&self) -> u32 {
        self.iteration
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// `(β, c_β)` pairs with `c_β ≠ 0`, in ascending `β`.
    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.coefficients.iter()
    }

    pub fn coefficient(&self, beta: &Monomial) -> Option<&RationalFunction> {
        self.coefficients.get(beta)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `c_0`, the coefficient of the basis element `1` (zero if absent).
    pub fn constant_coefficient(&self) -> RationalFunction {
        self.coefficients
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(|| RationalFunction::from_poly(Polynomial::zero(self.field, self.nvars)))
    }

    /// `Σ c_β^{p^e} · x^β`. With kept variables the result is written in
    /// the coordinates of the root field.
    pub fn recompose(&self) -> RationalFunction {
        let mut acc = RationalFunction::from_poly(Polynomial::zero(self.field, self.nvars));
        for (beta, c) in &self.coefficients {
            let basis = RationalFunction::from_poly(Polynomial::term(self.field, beta.clone(), crate::field::Fq::ONE));
            acc = &acc + &(&c.frobenius(self.iteration) * &basis);
        }
        acc
    }
}

fn p_power(field: GroundField, e: u32) -> BigUint {
    BigUint::from(field.characteristic()).pow(e)
}

/// Polynomial decomposition: exponents split as `α = p^e·γ + β` (kept
/// variables: `γ = α`, `β = 0`) and coefficients replaced by `p^e`-th roots.
fn decompose_poly(f: &Polynomial, e: u32, kept: &[usize]) -> BTreeMap<Monomial, Polynomial> {
    let field = f.field();
    let q = p_power(field, e);
    let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (quot, rem): (Vec<BigUint>, Vec<BigUint>) = m
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, a)| if kept.contains(&i) { (a.clone(), BigUint::zero()) } else { a.div_rem(&q) })
            .unzip();
        out.entry(Monomial(rem))
            .or_insert_with(|| Polynomial::zero(field, f.nvars()))
            .add_term(Monomial(quot), field.pth_root(*c, e));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Decomposition of a rational function `a/b` through
/// `a·b^{p^e−1} / b^{p^e}`, leaving `kept` variables undecomposed.
pub fn decompose_keeping(f: &RationalFunction, e: u32, kept: &[usize]) -> Result<FrobDecomposition, SplitError> {
    if e == 0 {
        return Err(SplitError::ZeroIteration);
    }
    let field = f.field();
    let nvars = f.nvars();
    let q = p_power(field, e);
    let (a, b) = (f.numerator(), f.denominator());
    let mut coefficients = BTreeMap::new();
    if !a.is_zero() {
        let numerator = if b.as_constant() == Some(crate::field::Fq::ONE) {
            a.clone()
        } else {
            let k = b
                .pow_big(&(&q - 1u32))
                .ok_or_else(|| ValuationError::Algebra(crate::error::AlgebraError::ExponentTooLarge(q.to_string())))?;
            a * &k
        };
        let den_parts = decompose_poly(&b.frobenius(e), e, kept);
        let root_den = den_parts
            .get(&Monomial::one(nvars))
            .cloned()
            .expect("a p^e-th power decomposes onto the basis element 1");
        for (beta, c) in decompose_poly(&numerator, e, kept) {
            let coeff = RationalFunction::new(c, root_den.clone()).map_err(ValuationError::Algebra)?;
            coefficients.insert(beta, coeff);
        }
    }
    Ok(FrobDecomposition {
        field,
        nvars,
        iteration: e,
        kept: kept.to_vec(),
        coefficients,
    })
}

/// Decomposition of a polynomial along the full monomial basis.
pub fn p_decompose(f: &Polynomial, e: u32) -> Result<FrobDecomposition, SplitError> {
    decompose_keeping(&RationalFunction::from_poly(f.clone()), e, &[])
}

/// Decomposition of a rational function along the full monomial basis.
pub fn p_decompose_rational(f: &RationalFunction, e: u32) -> Result<FrobDecomposition, SplitError> {
    decompose_keeping(f, e, &[])
}

/// `φ_e(f) = c_0^{p^e}` on a polynomial.
fn phi(f: &Polynomial, e: u32) -> Result<Polynomial, SplitError> {
    let d = p_decompose(f, e)?;
    let c0 = d.constant_coefficient();
    Ok(c0.frobenius(e).as_polynomial().expect("coefficients of a polynomial are polynomials"))
}

fn require_split_setting(nu: &MonomialValuation) -> Result<(), SplitError> {
    nu.require_monomialized()?;
    if !nu.field().perfect_closure.is_empty() || nu.field().perfected {
        return Err(ValuationError::InvalidDescriptor(
            "the monomial splitting needs a rational function field over a finite field".to_string(),
        )
        .into());
    }
    Ok(())
}

/// The monomial splitting on polynomials: the image of `1` under
/// `f ↦ c_0^p` (terms whose exponents are all divisible by `p`).
pub fn eta_split(f: &RationalFunction, nu: &MonomialValuation) -> Result<RationalFunction, SplitError> {
    require_split_setting(nu)?;
    let poly = f.as_polynomial().ok_or(SplitError::NotPolynomial)?;
    Ok(RationalFunction::from_poly(phi(&poly, 1)?))
}

/// Extension of the `e`-th iterate of the splitting to the valuation ring:
/// `a/b ↦ φ_e(a·b^{p^e−1}) / b^{p^e}`.
pub fn extend_split(r: &RationalFunction, nu: &MonomialValuation, e: u32) -> Result<RationalFunction, SplitError> {
    if e == 0 {
        return Err(SplitError::ZeroIteration);
    }
    require_split_setting(nu)?;
    if r.is_zero() {
        return Ok(r.clone());
    }
    let v = nu.value(r)?;
    if !nu.group().is_nonnegative(&v).map_err(ValuationError::Group)? {
        return Err(SplitError::OutsideRing(nu.render_value(&v)));
    }
    let d = p_decompose_rational(r, e)?;
    Ok(d.constant_coefficient().frobenius(e))
}

/// Compares `ν(f)` with the least value `ν(c_β^p · x^β)` over the
/// decomposition of `f`.
pub fn verify_inf_eq(f: &Polynomial, nu: &MonomialValuation) -> Result<bool, SplitError> {
    require_split_setting(nu)?;
    let lhs = nu.poly_value(f)?;
    let p = BigUint::from(nu.p());
    let group = nu.group();
    let mut rhs: Option<GroupElement> = None;
    for (beta, c) in p_decompose(f, 1)?.coefficients() {
        let v = nu.value(c)?.scale_unsigned(&p).add(&nu.pairing(beta));
        rhs = Some(match rhs {
            Some(r) if group.cmp(&r, &v).map_err(ValuationError::Group)? != Ordering::Greater => r,
            _ => v,
        });
    }
    let rhs = rhs.ok_or(SplitError::Valuation(ValuationError::ZeroInput))?;
    Ok(group.cmp(&lhs, &rhs).map_err(ValuationError::Group)? == Ordering::Equal)
}

/// `η(a) = 0` or `ν(η(a)) ≥ ν(a)`.
pub fn verify_claim(a: &Polynomial, nu: &MonomialValuation) -> Result<bool, SplitError> {
    let va = nu.poly_value(a)?;
    let eta = eta_split(&RationalFunction::from_poly(a.clone()), nu)?;
    if eta.is_zero() {
        return Ok(true);
    }
    let ve = nu.value(&eta)?;
    Ok(nu.group().cmp(&ve, &va).map_err(ValuationError::Group)? != Ordering::Less)
}

/// A property checked while certifying a splitting, with its sample count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedProperty {
    pub name: String,
    pub samples: usize,
}

/// Evidence that the monomial splitting of a monomialized valuation ring
/// passed every check on the sampled budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingWitness {
    pub descriptor: String,
    pub basis: String,
    pub iteration: u32,
    pub log: Vec<VerifiedProperty>,
}

fn claim_failure(f: &RationalFunction, field: &FieldDescriptor, detail: &str) -> SplitError {
    SplitError::ClaimFailed {
        input: render(f, field),
        detail: detail.to_string(),
    }
}

/// Runs the splitting checks on `samples` random inputs and issues a
/// witness only if all of them pass.
pub fn splitting_witness<R: Rng + ?Sized>(
    nu: &MonomialValuation,
    rng: &mut R,
    samples: usize,
    shape: PolyShape,
) -> Result<SplittingWitness, SplitError> {
    require_split_setting(nu)?;
    let field = nu.field();
    let (base, n) = (field.base, field.nvars());
    let poly = |rng: &mut R| random_nonzero_polynomial(rng, base, n, shape);
    let rf = RationalFunction::from_poly;
    let mut log = Vec::new();

    let one = field.one();
    if !rf_eq(&extend_split(&one, nu, 1)?, &one).map_err(ValuationError::Algebra)? {
        return Err(claim_failure(&one, field, "the splitting does not fix 1"));
    }
    log.push(VerifiedProperty { name: "unit".into(), samples: 1 });

    let mut counts = [0usize; 5];
    for _ in 0..samples {
        let f = poly(rng);
        let g = poly(rng);
        let ff = rf(f.clone());
        if !rf_eq(&p_decompose(&f, 1)?.recompose(), &ff).map_err(ValuationError::Algebra)? {
            return Err(claim_failure(&ff, field, "recomposition differs"));
        }
        counts[0] += 1;
        if !verify_claim(&f, nu)? {
            return Err(claim_failure(&ff, field, "splitting lowered the value"));
        }
        counts[1] += 1;
        if !verify_inf_eq(&f, nu)? {
            return Err(claim_failure(&ff, field, "value differs from the least term value"));
        }
        counts[2] += 1;
        let gp = rf(g.frobenius(1));
        let lhs = extend_split(&(&gp * &ff), nu, 1)?;
        let rhs = &gp * &extend_split(&ff, nu, 1)?;
        if !rf_eq(&lhs, &rhs).map_err(ValuationError::Algebra)? {
            return Err(claim_failure(&ff, field, "splitting is not linear over p-th powers"));
        }
        counts[3] += 1;
        // order the pair so the quotient lies in the valuation ring
        let (a, b) = match nu.group().cmp(&nu.poly_value(&f)?, &nu.poly_value(&g)?).map_err(ValuationError::Group)? {
            Ordering::Less => (g, f),
            _ => (f, g),
        };
        let r = RationalFunction::new(a, b).map_err(ValuationError::Algebra)?;
        let img = extend_split(&r, nu, 1)?;
        if !nu.in_ring(&img)? {
            return Err(claim_failure(&r, field, "extension leaves the valuation ring"));
        }
        counts[4] += 1;
    }
    let names = ["recomposition", "claim", "inf-equation", "p-linearity", "lands in ring"];
    log.extend(names.iter().zip(counts).map(|(name, samples)| VerifiedProperty {
        name: (*name).into(),
        samples,
    }));
    Ok(SplittingWitness {
        descriptor: format!("monomial valuation on F_{}({}) with values in {}", base.order(), field.variables.join(", "), nu.group()),
        basis: "monomial p-basis {x^b : 0 <= b_i <= p-1}, splitting sends 1 to 1 and every other basis element to 0".into(),
        iteration: 1,
        log,
    })
}

/// Where a free-basis check happens.
#[derive(Clone, Copy, Debug)]
pub enum BasisSetting<'a> {
    /// A monomial valuation on `F_q(x_1..x_n)`; decompose along all variables.
    Monomial(&'a MonomialValuation),
    /// The Gauss extension to `L(X)`; decompose along `x` only, roots of
    /// elements of `L` live `e` perfection levels up.
    Gauss(&'a GaussValuation),
}

/// The coordinates found for one sample element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementCertificate {
    pub element: RationalFunction,
    /// `r_i` with `element = Σ r_i^{p^e} · basis_i`.
    pub coordinates: Vec<RationalFunction>,
    /// Whether every `r_i` lies in the valuation ring.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasisReport {
    pub iteration: u32,
    pub certificates: Vec<ElementCertificate>,
    pub all_certified: bool,
}

/// The monomial basis `{x^β : 0 ≤ β_i < p^e}` of `K` over `K^{p^e}`.
pub fn monomial_basis(field: &FieldDescriptor, e: u32) -> Vec<RationalFunction> {
    let n = field.nvars();
    betas(field.base, n, e, &field.perfect_closure)
        .into_iter()
        .map(|m| RationalFunction::from_poly(Polynomial::term(field.base, m, crate::field::Fq::ONE)))
        .collect()
}

/// `{1, x, …, x^{p^e−1}}` in `L(X)`.
pub fn gauss_basis(w: &GaussValuation, e: u32) -> Vec<RationalFunction> {
    monomial_basis(w.field(), e)
}

/// All exponent vectors with entries in `[0, p^e)` on decomposed variables
/// and `0` on kept ones.
fn betas(field: GroundField, n: usize, e: u32, kept: &[usize]) -> Vec<Monomial> {
    let q = p_power(field, e);
    let mut out = vec![vec![BigUint::zero(); n]];
    for i in (0..n).filter(|i| !kept.contains(i)) {
        let mut next = Vec::new();
        for v in &out {
            let mut k = BigUint::zero();
            while k < q {
                let mut w = v.clone();
                w[i] = k.clone();
                next.push(w);
                k += 1u32;
            }
        }
        out = next;
    }
    let mut ms: Vec<Monomial> = out.into_iter().map(Monomial).collect();
    ms.sort();
    ms
}

/// Solves `M·X = B` over the rational function field by Gaussian
/// elimination; `None` when `M` is singular.
fn solve(mut m: Vec<Vec<RationalFunction>>, mut rhs: Vec<Vec<RationalFunction>>) -> Result<Option<Vec<Vec<RationalFunction>>>, SplitError> {
    let n = m.len();
    let alg = ValuationError::Algebra;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(None);
        };
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].inv().map_err(alg)?;
        for x in m[col].iter_mut().chain(rhs[col].iter_mut()) {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for k in 0..n {
                let t = &factor * &m[col][k];
                m[r][k] = &m[r][k] - &t;
            }
            for k in 0..rhs[r].len() {
                let t = &factor * &rhs[col][k];
                rhs[r][k] = &rhs[r][k] - &t;
            }
        }
    }
    Ok(Some(rhs))
}

/// For each sample `v`, solves `v = Σ r_i^{p^e} · b_i` over `K^{p^e}` and
/// checks that every `r_i` lies in the valuation ring.
///
/// Errors when the basis has the wrong size or does not span `K` over
/// `K^{p^e}`, or when a sample lies outside the valuation ring.
pub fn verify_free_basis(
    sample: &[RationalFunction],
    basis: &[RationalFunction],
    setting: BasisSetting<'_>,
    e: u32,
) -> Result<FreeBasisReport, SplitError> {
    if e == 0 {
        return Err(SplitError::ZeroIteration);
    }
    let (field, ring, root_ring, kept, lift): (FieldDescriptor, MonomialValuation, MonomialValuation, Vec<usize>, Option<GaussValuation>) =
        match setting {
            BasisSetting::Monomial(nu) => {
                if !nu.field().perfect_closure.is_empty() || nu.field().perfected {
                    return Err(ValuationError::InvalidDescriptor(
                        "free-basis check over a monomial valuation needs a plain rational function field".into(),
                    )
                    .into());
                }
                (nu.field().clone(), nu.clone(), nu.clone(), Vec::new(), None)
            }
            BasisSetting::Gauss(w) => {
                let up = w.at_level(w.level() + e)?;
                (w.field().clone(), w.as_monomial().clone(), up.as_monomial().clone(), vec![0], Some(up))
            }
        };
    let expected = field.degree_over_pth_powers().pow(e);
    if BigUint::from(basis.len()) != expected {
        return Err(SplitError::BasisSize {
            got: basis.len(),
            expected: expected.to_string(),
        });
    }
    for v in sample {
        if !ring.in_ring(v)? {
            return Err(SplitError::OutsideRing(ring.render_value(&ring.value(v)?)));
        }
    }
    let rows = betas(field.base, field.nvars(), e, &kept);
    let index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let column = |f: &RationalFunction| -> Result<Vec<RationalFunction>, SplitError> {
        let mut col = vec![RationalFunction::from_poly(Polynomial::zero(field.base, field.nvars())); rows.len()];
        for (beta, c) in decompose_keeping(f, e, &kept)?.coefficients() {
            col[index[beta]] = c.clone();
        }
        Ok(col)
    };
    let basis_cols: Vec<Vec<RationalFunction>> = basis.iter().map(&column).collect::<Result<_, _>>()?;
    let sample_cols: Vec<Vec<RationalFunction>> = sample.iter().map(&column).collect::<Result<_, _>>()?;
    let m: Vec<Vec<RationalFunction>> = (0..rows.len()).map(|r| basis_cols.iter().map(|c| c[r].clone()).collect()).collect();
    let b: Vec<Vec<RationalFunction>> = (0..rows.len()).map(|r| sample_cols.iter().map(|c| c[r].clone()).collect()).collect();
    let solution = solve(m, b)?.ok_or_else(|| SplitError::NotSpanning("the decomposition matrix of the basis is singular".into()))?;

    let to_root_field = |f: &RationalFunction| -> Result<RationalFunction, SplitError> {
        match &lift {
            Some(up) => Ok(up.lift(f, up.level() - e)?),
            None => Ok(f.clone()),
        }
    };
    let lifted_basis: Vec<RationalFunction> = basis.iter().map(&to_root_field).collect::<Result<_, _>>()?;
    let mut certificates = Vec::with_capacity(sample.len());
    for (j, v) in sample.iter().enumerate() {
        let coords: Vec<RationalFunction> = solution.iter().map(|row| row[j].clone()).collect();
        // recombine independently of the elimination
        let mut acc = field.zero();
        for (r, b) in coords.iter().zip(&lifted_basis) {
            acc = &acc + &(&r.frobenius(e) * b);
        }
        if !rf_eq(&acc, &to_root_field(v)?).map_err(ValuationError::Algebra)? {
            return Err(SplitError::NotSpanning(format!("coordinates of {} do not recombine", render(v, &field))));
        }
        let mut certified = true;
        for r in &coords {
            certified &= root_ring.in_ring(r)?;
        }
        certificates.push(ElementCertificate {
            element: v.clone(),
            coordinates: coords,
            certified,
        });
    }
    let all_certified = certificates.iter().all(|c| c.certified);
    Ok(FreeBasisReport {
        iteration: e,
        certificates,
        all_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Irrational, ValueGroup};
    use crate::parse::{poly_parse, rf_parse};
    use crate::valuation::GaussVariant;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(p: u32, vars: &[&str]) -> FieldDescriptor {
        FieldDescriptor::new(GroundField::prime(p).unwrap(), vars.iter().copied())
    }

    fn lex(p: u32, n: usize) -> MonomialValuation {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        MonomialValuation::lex(FieldDescriptor::new(GroundField::prime(p).unwrap(), names))
    }

    /// Terms whose exponents are all divisible by `p^e`: the splitting on
    /// polynomials, computed without the decomposition.
    fn divisible_terms(f: &Polynomial, e: u32) -> Polynomial {
        let q = p_power(f.field(), e);
        f.filter_terms(|m, _| m.exponents().iter().all(|a| (a % &q).is_zero()))
    }

    #[test]
    fn decomposition_examples() {
        let k = field(2, &["x"]);
        let d = p_decompose(&poly_parse("x^3 + x^2", &k).unwrap(), 1).unwrap();
        let x = k.var(0);
        assert_eq!(d.len(), 2);
        assert_eq!(d.coefficient(&Monomial::from_exponents([1])), Some(&x));
        assert_eq!(d.coefficient(&Monomial::from_exponents([0])), Some(&x));
        let k3 = field(3, &["x"]);
        let d = p_decompose(&poly_parse("x^3", &k3).unwrap(), 1).unwrap();
        assert_eq!(d.coefficient(&Monomial::from_exponents([0])), Some(&k3.var(0)));
        let d = p_decompose(&poly_parse("1", &k3).unwrap(), 1).unwrap();
        assert_eq!(d.coefficient(&Monomial::from_exponents([0])), Some(&k3.one()));
        assert!(p_decompose(&Polynomial::zero(k3.base, 1), 1).unwrap().is_empty());
        assert_eq!(p_decompose(&Polynomial::one(k3.base, 1), 0), Err(SplitError::ZeroIteration));
    }

    #[test]
    fn eta_examples() {
        let nu = lex(2, 1);
        let k = nu.field().clone();
        let eta = |s: &str| eta_split(&rf_parse(s, &k).unwrap(), &nu).unwrap();
        assert!(eta("x1^3").is_zero());
        assert_eq!(eta("1"), k.one());
        assert_eq!(eta("x1^2 + x1^3"), rf_parse("x1^2", &k).unwrap());
        assert_eq!(eta_split(&rf_parse("1/x1", &k).unwrap(), &nu), Err(SplitError::NotPolynomial));
    }

    #[test]
    fn extend_examples() {
        let nu = lex(2, 2);
        let k = nu.field().clone();
        let ext = |s: &str| extend_split(&rf_parse(s, &k).unwrap(), &nu, 1).unwrap();
        assert!(ext("x1/x2").is_zero());
        assert_eq!(ext("x1^2/x2^2"), rf_parse("x1^2/x2^2", &k).unwrap());
        assert_eq!(ext("1"), k.one());
        assert!(matches!(
            extend_split(&rf_parse("x2/x1", &k).unwrap(), &nu, 1),
            Err(SplitError::OutsideRing(_))
        ));
    }

    #[test]
    fn refuses_non_monomialized() {
        let k = field(2, &["x", "y"]);
        let nu = MonomialValuation::from_weights(k.clone(), ValueGroup::lex(1), vec![GroupElement::from_integers([1]); 2]).unwrap();
        assert!(matches!(
            eta_split(&k.one(), &nu),
            Err(SplitError::Valuation(ValuationError::NotMonomialized(_)))
        ));
    }

    #[test]
    fn claim_and_inf_examples() {
        let nu = lex(2, 2);
        let k = nu.field().clone();
        for s in ["x1 + x2^2", "x1", "x1^2", "x1^2 + x2", "x1*x2^3 + x1^4"] {
            let f = poly_parse(s, &k).unwrap();
            assert!(verify_inf_eq(&f, &nu).unwrap(), "{s}");
            assert!(verify_claim(&f, &nu).unwrap(), "{s}");
        }
        // blow-up coordinates: x, u (residue), w with weights 1 and pi - 1
        let kc = field(2, &["x", "u", "w"]);
        let g = ValueGroup::embedded(Irrational::Pi);
        let nu = MonomialValuation::new(
            kc.clone(),
            g,
            vec![GroupElement::from_integers([1, 0]), GroupElement::from_integers([0, 0]), GroupElement::from_integers([-1, 1])],
            vec![0, 2],
            vec![1],
        )
        .unwrap();
        assert!(verify_inf_eq(&poly_parse("x + u*x", &kc).unwrap(), &nu).unwrap());
    }

    #[test]
    fn witness_is_issued_for_lex() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let w = splitting_witness(&lex(3, 2), &mut rng, 40, PolyShape::default()).unwrap();
        assert_eq!(w.iteration, 1);
        assert!(w.log.iter().any(|p| p.name == "claim" && p.samples == 40));
    }

    #[test]
    fn free_basis_gauss() {
        for p in [2u32, 3] {
            let w = GaussValuation::new(p, GaussVariant::GroupFirst).unwrap();
            let k = w.field().clone();
            let basis = gauss_basis(&w, 1);
            assert_eq!(basis.len(), p as usize);
            let xp1 = rf_parse(&format!("x^{}", p + 1), &k).unwrap();
            let report = verify_free_basis(&[k.one(), xp1], &basis, BasisSetting::Gauss(&w), 1).unwrap();
            assert!(report.all_certified);
            assert_eq!(report.certificates[0].coordinates[0], k.one());
            assert!(report.certificates[0].coordinates[1..].iter().all(|c| c.is_zero()));
            let c = &report.certificates[1].coordinates;
            assert_eq!(c[1], k.var(1));
            assert!(c.iter().enumerate().all(|(i, r)| i == 1 || r.is_zero()));
            let s = rf_parse("s^2*x + s", &k).unwrap();
            assert!(verify_free_basis(&[s], &basis, BasisSetting::Gauss(&w), 1).unwrap().all_certified);
            assert!(matches!(
                verify_free_basis(&[], &basis[..1], BasisSetting::Gauss(&w), 1),
                Err(SplitError::BasisSize { .. })
            ));
        }
    }

    #[test]
    fn free_basis_lex() {
        let nu = lex(2, 2);
        let k = nu.field().clone();
        let basis = monomial_basis(&k, 1);
        assert_eq!(basis.len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sample: Vec<RationalFunction> =
            (0..10).map(|_| random_nonzero_polynomial(&mut rng, k.base, 2, PolyShape::default()).into()).collect();
        assert!(verify_free_basis(&sample, &basis, BasisSetting::Monomial(&nu), 1).unwrap().all_certified);
        // x1/x2 is in the ring but its coordinate 1/x2 is not
        let frac = rf_parse("x1/x2", &k).unwrap();
        assert!(!verify_free_basis(&[frac], &basis, BasisSetting::Monomial(&nu), 1).unwrap().all_certified);
        let mut bad = basis.clone();
        bad[3] = bad[0].clone();
        assert!(matches!(
            verify_free_basis(&[], &bad, BasisSetting::Monomial(&nu), 1),
            Err(SplitError::NotSpanning(_))
        ));
    }

    fn arb_case() -> impl Strategy<Value = (u32, usize, u32, u64)> {
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..=3, 1u32..=2, any::<u64>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_recomposes_and_matches_filter((p, n, e, seed) in arb_case()) {
            let nu = lex(p, n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_nonzero_polynomial(&mut rng, nu.field().base, n, PolyShape::default());
            let d = p_decompose(&f, e).unwrap();
            prop_assert_eq!(d.recompose(), RationalFunction::from_poly(f.clone()));
            prop_assert_eq!(phi(&f, e).unwrap(), divisible_terms(&f, e));
        }

        #[test]
        fn extension_is_linear_and_lands_in_ring((p, n, e, seed) in arb_case()) {
            let nu = lex(p, n);
            let k = nu.field().clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let shape = PolyShape { max_degree: 3, max_terms: 3 };
            let a = random_nonzero_polynomial(&mut rng, k.base, n, shape);
            let b = random_nonzero_polynomial(&mut rng, k.base, n, shape);
            let g = random_nonzero_polynomial(&mut rng, k.base, n, shape);
            let h = random_nonzero_polynomial(&mut rng, k.base, n, shape);
            let (a, b) = if nu.group().cmp(&nu.poly_value(&a).unwrap(), &nu.poly_value(&b).unwrap()).unwrap() == Ordering::Less { (b, a) } else { (a, b) };
            let r = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let img = extend_split(&r, &nu, e).unwrap();
            prop_assert!(nu.in_ring(&img).unwrap());
            let gq = RationalFunction::from_poly(g.frobenius(e));
            prop_assert_eq!(extend_split(&(&gq * &r), &nu, e).unwrap(), &gq * &img);
            let rh = RationalFunction::new(&h * &a, &h * &b).unwrap();
            prop_assert_eq!(extend_split(&rh, &nu, e).unwrap(), img);
            prop_assert_eq!(extend_split(&gq, &nu, e).unwrap(), gq);
        }
    }
}
