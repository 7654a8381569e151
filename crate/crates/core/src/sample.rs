//! Seeded random elements for property checks and verifier sweeps.

use alloc::vec::Vec;

use rand::Rng;

use crate::field::{Fq, GroundField};
use crate::poly::{Monomial, Polynomial};
use crate::ratfunc::RationalFunction;

/// Shape of sampled polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyShape {
    /// Bound on the total degree of every term.
    pub max_degree: u32,
    /// Number of terms drawn (duplicates merge, so fewer may survive).
    pub max_terms: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape {
            max_degree: 6,
            max_terms: 5,
        }
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: GroundField) -> Fq {
    let q = field.order() as u32;
    field.element(rng.gen_range(1..q)).expect("index in range")
}

/// A random exponent vector of total degree at most `max_degree`.
pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_degree: u32) -> Monomial {
    let mut exps = alloc::vec![0u64; nvars];
    if nvars > 0 {
        let d = rng.gen_range(0..=max_degree);
        for _ in 0..d {
            exps[rng.gen_range(0..nvars)] += 1;
        }
    }
    Monomial::from_exponents(exps)
}

/// A random polynomial; may be zero.
pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    field: GroundField,
    nvars: usize,
    shape: PolyShape,
) -> Polynomial {
    let terms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut out = Polynomial::zero(field, nvars);
    for _ in 0..terms {
        let m = random_monomial(rng, nvars, shape.max_degree);
        let c = random_nonzero_scalar(rng, field);
        out = &out + &Polynomial::term(field, m, c);
    }
    out
}

/// A random nonzero polynomial.
pub fn random_nonzero_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    field: GroundField,
    nvars: usize,
    shape: PolyShape,
) -> Polynomial {
    loop {
        let f = random_polynomial(rng, field, nvars, shape);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random quotient of nonzero polynomials.
pub fn random_rational_function<R: Rng + ?Sized>(
    rng: &mut R,
    field: GroundField,
    nvars: usize,
    shape: PolyShape,
) -> RationalFunction {
    let num = random_nonzero_polynomial(rng, field, nvars, shape);
    let den = random_nonzero_polynomial(rng, field, nvars, shape);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `count` random nonzero polynomials.
pub fn polynomial_batch<R: Rng + ?Sized>(
    rng: &mut R,
    field: GroundField,
    nvars: usize,
    shape: PolyShape,
    count: usize,
) -> Vec<Polynomial> {
    (0..count)
        .map(|_| random_nonzero_polynomial(rng, field, nvars, shape))
        .collect()
}
