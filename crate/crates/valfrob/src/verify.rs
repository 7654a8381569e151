//! Property suites behind `valfrob verify`, the gallery and the acceptance
//! run. Each check runs on seeded random inputs and stops at the first
//! counterexample.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valfrob_core::frob::gauss_basis;
use valfrob_core::sample::{random_nonzero_polynomial, PolyShape};
use valfrob_core::{
    eta_split, extend_split, hahn_embed_value, p_decompose, poly_parse, render, rf_eq, rf_parse, series_split,
    unit_pth_power_factor, verify_claim, verify_free_basis, verify_inf_eq, BasisSetting, FieldDescriptor,
    GaussValuation, GaussVariant, GroundField, GroupElement, LazySeries, Monomial, MonomialValuation, Polynomial,
    RationalFunction, SeriesEmbedding, ValuationDescriptor, ValueGroup,
};

use crate::descriptor::Loaded;
use crate::error::CliError;

/// One row of a verification table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Inputs examined (up to and including a failing one).
    pub samples: usize,
    pub failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.subject);
        for c in &self.checks {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {status} {:<28} {:>5} samples", c.name, c.samples));
            if let Some(f) = &c.failure {
                out.push_str(&format!("  ({f})"));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "subject": self.subject,
            "passed": self.all_passed(),
            "checks": self.checks.iter().map(|c| serde_json::json!({
                "name": c.name,
                "samples": c.samples,
                "passed": c.passed(),
                "failure": c.failure,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Seed, sample count and precision for a verification run.
#[derive(Clone, Debug)]
pub struct VerifyBudget {
    pub seed: u64,
    pub samples: usize,
    /// Exponent bound for Hahn series evaluation.
    pub hahn_bound: BigRational,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            seed: 0,
            samples: 200,
            hahn_bound: BigRational::from_integer(BigInt::from(DEFAULT_HAHN_BOUND)),
        }
    }
}

/// Default exponent bound for Hahn evaluation.
pub const DEFAULT_HAHN_BOUND: i64 = 16;
/// Length of the series truncations in the series split laws.
pub const SERIES_TRUNCATION: usize = 200;

/// Runs `samples` rounds of `body`, stopping at the first failure message.
fn run_check<F>(name: &str, samples: usize, mut body: F) -> Result<Check, CliError>
where
    F: FnMut(usize) -> Result<Option<String>, CliError>,
{
    for i in 0..samples {
        if let Some(msg) = body(i)? {
            return Ok(Check {
                name: name.to_string(),
                samples: i + 1,
                failure: Some(msg),
            });
        }
    }
    Ok(Check {
        name: name.to_string(),
        samples,
        failure: None,
    })
}

fn same(a: &RationalFunction, b: &RationalFunction) -> Result<bool, CliError> {
    Ok(rf_eq(a, b).map_err(valfrob_core::ValuationError::Algebra)?)
}

fn show(f: &RationalFunction, field: &FieldDescriptor) -> String {
    render(f, field)
}

fn draw(rng: &mut ChaCha8Rng, nu: &MonomialValuation, shape: PolyShape) -> Polynomial {
    let field = nu.field();
    random_nonzero_polynomial(rng, field.base, field.nvars(), shape)
}

/// Recomposition, `p`-th power linearity and `1 ↦ 1` for the extended
/// splitting.
pub fn splitting_axioms(
    nu: &MonomialValuation,
    rng: &mut ChaCha8Rng,
    samples: usize,
    shape: PolyShape,
) -> Result<Vec<Check>, CliError> {
    let field = nu.field();
    let one = field.one();
    let unit = run_check("splitting fixes 1", 1, |_| {
        let img = extend_split(&one, nu, 1)?;
        Ok((!same(&img, &one)?).then(|| format!("1 maps to {}", show(&img, field))))
    })?;
    let recomposition = run_check("recomposition", samples, |_| {
        let f = draw(rng, nu, shape);
        let back = p_decompose(&f, 1)?.recompose();
        let ff = RationalFunction::from_poly(f);
        Ok((!same(&back, &ff)?).then(|| format!("{} recomposes to {}", show(&ff, field), show(&back, field))))
    })?;
    let linearity = run_check("p-th power linearity", samples, |_| {
        let f = RationalFunction::from_poly(draw(rng, nu, shape));
        let gp = RationalFunction::from_poly(draw(rng, nu, shape).frobenius(1));
        let lhs = extend_split(&(&gp * &f), nu, 1)?;
        let rhs = &gp * &extend_split(&f, nu, 1)?;
        Ok((!same(&lhs, &rhs)?).then(|| format!("g^p f with f = {}, g^p = {}", show(&f, field), show(&gp, field))))
    })?;
    Ok(vec![unit, recomposition, linearity])
}

/// The value bound `η(a) = 0 or ν(η(a)) ≥ ν(a)` and the equation
/// `ν(f) = min ν(c_β^p x^β)` on random polynomials.
pub fn claim_suite(
    nu: &MonomialValuation,
    rng: &mut ChaCha8Rng,
    samples: usize,
    shape: PolyShape,
) -> Result<Vec<Check>, CliError> {
    let field = nu.field();
    let mut inputs = Vec::with_capacity(samples);
    for _ in 0..samples {
        inputs.push(draw(rng, nu, shape));
    }
    let claim = run_check("splitting never lowers values", samples, |i| {
        let f = &inputs[i];
        Ok((!verify_claim(f, nu)?).then(|| show(&f.clone().into(), field)))
    })?;
    let inf = run_check("value is least term value", samples, |i| {
        let f = &inputs[i];
        Ok((!verify_inf_eq(f, nu)?).then(|| show(&f.clone().into(), field)))
    })?;
    Ok(vec![claim, inf])
}

/// Extension to fractions `a/b` with `ν(a) ≥ ν(b)`: the image stays in the
/// valuation ring, and on polynomials it agrees with the polynomial
/// splitting.
pub fn extension_suite(
    nu: &MonomialValuation,
    rng: &mut ChaCha8Rng,
    samples: usize,
    shape: PolyShape,
) -> Result<Vec<Check>, CliError> {
    let field = nu.field();
    let group = nu.group();
    let in_ring = run_check("extension stays in the ring", samples, |_| {
        let f = draw(rng, nu, shape);
        let g = draw(rng, nu, shape);
        let (a, b) = match group.cmp(&nu.poly_value(&f)?, &nu.poly_value(&g)?)? {
            Ordering::Less => (g, f),
            _ => (f, g),
        };
        let r = RationalFunction::new(a, b).map_err(valfrob_core::ValuationError::Algebra)?;
        let img = extend_split(&r, nu, 1)?;
        if img.is_zero() {
            return Ok(None);
        }
        let v = nu.value(&img)?;
        Ok((!group.is_nonnegative(&v)?).then(|| format!("{} maps to value {}", show(&r, field), nu.render_value(&v))))
    })?;
    let agrees = run_check("extension agrees on polynomials", samples, |_| {
        let f = RationalFunction::from_poly(draw(rng, nu, shape));
        let ext = extend_split(&f, nu, 1)?;
        let eta = eta_split(&f, nu)?;
        Ok((!same(&ext, &eta)?).then(|| show(&f, field)))
    })?;
    Ok(vec![in_ring, agrees])
}

/// Terms whose exponents are all divisible by `p`: the splitting computed
/// straight from its defining rule on monomials.
pub fn divisible_terms(f: &Polynomial, p: u32) -> Polynomial {
    let p = num_bigint::BigUint::from(p);
    f.filter_terms(|m, _| m.exponents().iter().all(|e| (e % &p).is_zero()))
}

/// The polynomial splitting against the divisible-terms rule.
pub fn divisible_terms_oracle(
    nu: &MonomialValuation,
    rng: &mut ChaCha8Rng,
    samples: usize,
    shape: PolyShape,
) -> Result<Check, CliError> {
    let field = nu.field();
    run_check("matches divisible-terms rule", samples, |_| {
        let f = draw(rng, nu, shape);
        let expect = RationalFunction::from_poly(divisible_terms(&f, nu.p()));
        let got = eta_split(&f.clone().into(), nu)?;
        Ok((!same(&got, &expect)?).then(|| show(&f.into(), field)))
    })
}

/// `x^α ↦ x^α` when `p` divides every `α_i`, `0` otherwise, over every
/// exponent vector with entries at most `max_exponent`.
pub fn monomial_rule(nu: &MonomialValuation, max_exponent: u64) -> Result<Check, CliError> {
    let field = nu.field();
    let n = field.nvars();
    let p = u64::from(nu.p());
    let mut exps: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        exps = exps
            .into_iter()
            .flat_map(|v| {
                (0..=max_exponent).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    run_check("monomial rule", exps.len(), |i| {
        let alpha = &exps[i];
        let m = Polynomial::term(field.base, Monomial::from_exponents(alpha.iter().copied()), field.base.from_i64(1));
        let m = RationalFunction::from_poly(m);
        let expect = if alpha.iter().all(|a| a % p == 0) { m.clone() } else { field.zero() };
        let got = eta_split(&m, nu)?;
        Ok((!same(&got, &expect)?).then(|| format!("{} maps to {}", show(&m, field), show(&got, field))))
    })
}

/// Everything above for one monomialized valuation.
pub fn monomial_suite(nu: &MonomialValuation, budget: &VerifyBudget) -> Result<Vec<Check>, CliError> {
    let mono = nu.verify_monomialized();
    let mut checks = vec![Check {
        name: "monomialized".to_string(),
        samples: 1,
        failure: (!mono.holds).then(|| mono.diagnostics.join("; ")),
    }];
    if !mono.holds {
        return Ok(checks);
    }
    let shape = PolyShape::default();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    checks.extend(splitting_axioms(nu, &mut rng, budget.samples, shape)?);
    checks.extend(claim_suite(nu, &mut rng, budget.samples, shape)?);
    checks.extend(extension_suite(nu, &mut rng, budget.samples, shape)?);
    checks.push(divisible_terms_oracle(nu, &mut rng, budget.samples, shape)?);
    if nu.field().nvars() <= 3 {
        checks.push(monomial_rule(nu, 2 * u64::from(nu.p()))?);
    }
    Ok(checks)
}

/// Random elements `a/b` of the valuation ring of a monomial valuation.
pub fn ring_elements(nu: &MonomialValuation, rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<RationalFunction>, CliError> {
    let shape = PolyShape {
        max_degree: 4,
        max_terms: 3,
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let f = draw(rng, nu, shape);
        let g = draw(rng, nu, shape);
        let (a, b) = match nu.group().cmp(&nu.poly_value(&f)?, &nu.poly_value(&g)?)? {
            Ordering::Less => (g, f),
            _ => (f, g),
        };
        out.push(RationalFunction::new(a, b).map_err(valfrob_core::ValuationError::Algebra)?);
    }
    Ok(out)
}

/// Certifies `{1, x, …, x^{p−1}}` on sampled ring elements (group first)
/// or exhibits an element it does not certify (degree first).
pub fn gauss_suite(w: &GaussValuation, budget: &VerifyBudget) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let basis = gauss_basis(w, 1);
    let field = w.field();
    let mut checks = Vec::new();
    let inner = w.as_monomial();
    let shape = PolyShape::default();
    checks.push(run_check("value is multiplicative", budget.samples, |_| {
        let f = RationalFunction::from_poly(draw(&mut rng, inner, shape));
        let g = RationalFunction::from_poly(draw(&mut rng, inner, shape));
        let lhs = w.value(&(&f * &g))?;
        let rhs = w.value(&f)?.add(&w.value(&g)?);
        Ok((lhs != rhs).then(|| format!("{} times {}", show(&f, field), show(&g, field))))
    })?);
    match w.variant() {
        GaussVariant::GroupFirst => {
            let sample = ring_elements(inner, &mut rng, budget.samples)?;
            let report = verify_free_basis(&sample, &basis, BasisSetting::Gauss(w), 1)?;
            let bad = report.certificates.iter().position(|c| !c.certified);
            checks.push(Check {
                name: "free basis {1..x^(p-1)}".to_string(),
                samples: bad.map_or(sample.len(), |i| i + 1),
                failure: bad.map(|i| show(&sample[i], field)),
            });
        }
        GaussVariant::ZFirst => {
            // x/s lies in the ring but its coordinate s^(-1/p) does not
            let witness = rf_parse("x/s", field)?;
            let report = verify_free_basis(std::slice::from_ref(&witness), &basis, BasisSetting::Gauss(w), 1)?;
            checks.push(Check {
                name: "basis fails on x/s".to_string(),
                samples: 1,
                failure: report.all_certified.then(|| "x/s was certified".to_string()),
            });
        }
    }
    Ok(checks)
}

/// Coefficientwise split laws on seeded truncations: additivity, the
/// projection law `split(a^p b) = a split(b)` and `split(a^p) = a`.
pub fn series_split_suite(field: GroundField, seed: u64, samples: usize, length: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series = |rng: &mut ChaCha8Rng| LazySeries::seeded(field, rng.gen()).truncate(length);
    let p = field.characteristic() as usize;
    // every product below has degree under (p + 1) * length
    let window = (p + 1) * length;
    let eq = |a: &LazySeries, b: &LazySeries| a.prefix(window) == b.prefix(window);
    let mut additive = 0;
    let mut projection = 0;
    let mut fixes = 0;
    let mut fail = [None, None, None];
    for i in 0..samples {
        let a = series(&mut rng);
        let b = series(&mut rng);
        if fail[0].is_none() {
            additive += 1;
            if !eq(&series_split(&a.add(&b)), &series_split(&a).add(&series_split(&b))) {
                fail[0] = Some(format!("sample {i}"));
            }
        }
        if fail[1].is_none() {
            projection += 1;
            if !eq(&series_split(&a.frobenius(1).mul(&b)), &a.mul(&series_split(&b))) {
                fail[1] = Some(format!("sample {i}"));
            }
        }
        if fail[2].is_none() {
            fixes += 1;
            if !eq(&series_split(&a.frobenius(1)), &a) {
                fail[2] = Some(format!("sample {i}"));
            }
        }
    }
    let [f0, f1, f2] = fail;
    vec![
        Check {
            name: "series split additive".into(),
            samples: additive,
            failure: f0,
        },
        Check {
            name: "series split projection law".into(),
            samples: projection,
            failure: f1,
        },
        Check {
            name: "series split fixes p-th powers".into(),
            samples: fixes,
            failure: f2,
        },
    ]
}

/// Values of `X`, `Y`, multiplicativity and the ultrametric inequality of
/// the series embedding, and the split laws.
pub fn series_suite(e: &SeriesEmbedding, budget: &VerifyBudget) -> Result<Vec<Check>, CliError> {
    let field = e.field();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let shape = PolyShape {
        max_degree: 4,
        max_terms: 4,
    };
    let draw_poly =
        |rng: &mut ChaCha8Rng| RationalFunction::from_poly(random_nonzero_polynomial(rng, field.base, 2, shape));
    let vx = e.embed_value(&field.var(0))?;
    let vy = e.embed_value(&field.var(1))?;
    let mut checks = vec![
        Check {
            name: "value of x is 1".into(),
            samples: 1,
            failure: (vx != 1).then(|| format!("got {vx}")),
        },
        Check {
            name: "value of y is at least 2".into(),
            samples: 1,
            failure: (vy < 2).then(|| format!("got {vy}")),
        },
    ];
    let rounds = budget.samples.min(60);
    checks.push(run_check("value is multiplicative", rounds, |_| {
        let f = draw_poly(&mut rng);
        let g = draw_poly(&mut rng);
        let lhs = e.embed_value(&(&f * &g))?;
        let rhs = e.embed_value(&f)? + e.embed_value(&g)?;
        Ok((lhs != rhs).then(|| format!("{} times {}", show(&f, field), show(&g, field))))
    })?);
    checks.push(run_check("ultrametric inequality", rounds, |_| {
        let f = draw_poly(&mut rng);
        let g = draw_poly(&mut rng);
        let sum = &f + &g;
        if sum.is_zero() {
            return Ok(None);
        }
        let lhs = e.embed_value(&sum)?;
        let rhs = e.embed_value(&f)?.min(e.embed_value(&g)?);
        Ok((lhs < rhs).then(|| format!("{} plus {}", show(&f, field), show(&g, field))))
    })?);
    checks.extend(series_split_suite(field.base, budget.seed, budget.samples.min(20), SERIES_TRUNCATION));
    Ok(checks)
}

fn hahn_field(p: u32) -> Result<FieldDescriptor, CliError> {
    Ok(FieldDescriptor::new(GroundField::prime(p)?, ["x", "y"]))
}

/// Exact value of `expr` under the Hahn series embedding of `F_p(x, y)`.
pub fn hahn_value(p: u32, expr: &str, bound: &BigRational) -> Result<GroupElement, CliError> {
    let field = hahn_field(p)?;
    let f = rf_parse(expr, &field)?;
    let num = hahn_embed_value(f.numerator(), bound)?;
    let den = hahn_embed_value(f.denominator(), bound)?;
    Ok(num.sub(&den))
}

/// `p`-divisibility of positive values and exact values of `x`, `y` and
/// monomials under the Hahn embedding.
pub fn hahn_suite(p: u32, budget: &VerifyBudget) -> Result<Vec<Check>, CliError> {
    let group = ValueGroup::p_divisible(p);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut checks = Vec::new();
    let rounds = budget.samples.min(20);
    checks.push(run_check("positive values are p-divisible", rounds, |_| {
        let gamma = loop {
            let g = group.random_element(&mut rng, 50);
            if group.is_positive(&g)? {
                break g;
            }
        };
        let root = unit_pth_power_factor(&group, p, &gamma)?;
        let ok = root.scale(&BigInt::from(p)) == gamma && group.is_positive(&root)?;
        Ok((!ok).then(|| group.render(&gamma)))
    })?);
    let pr = BigRational::from_integer(BigInt::from(p));
    let y_value = BigRational::one() - pr.recip();
    let field = hahn_field(p)?;
    let mut expected = vec![
        ("x".to_string(), BigRational::one()),
        ("y".to_string(), y_value.clone()),
        (format!("y^{p} - x^{}*y", p - 1), pr.clone() - BigRational::one()),
    ];
    for a in 0..3i64 {
        for b in 0..3i64 {
            if a + b > 0 {
                let v = BigRational::from_integer(a.into()) + BigRational::from_integer(b.into()) * &y_value;
                expected.push((format!("x^{a}*y^{b}"), v));
            }
        }
    }
    checks.push(run_check("exact Hahn values", expected.len(), |i| {
        let (expr, want) = &expected[i];
        let poly = poly_parse(expr, &field)?;
        let got = hahn_embed_value(&poly, &budget.hahn_bound)?;
        Ok((got.0[0] != *want).then(|| format!("{expr}: got {}, expected {want}", got.0[0])))
    })?);
    Ok(checks)
}

/// The suite matching the descriptor's kind.
pub fn verify_loaded(loaded: &Loaded, budget: &VerifyBudget) -> Result<VerifyReport, CliError> {
    let subject = format!("{} on {}", loaded.descriptor.kind_name(), loaded.descriptor.field_label());
    let checks = match &loaded.descriptor {
        ValuationDescriptor::Monomial(_) | ValuationDescriptor::Laurent { .. } => {
            let nu = loaded.split_valuation().expect("monomial model");
            let mut checks = Vec::new();
            if let (Some(orig), Some(chart)) = (&loaded.original, &loaded.chart) {
                // values agree in both coordinate systems
                let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ 0x5eed);
                let shape = PolyShape::default();
                checks.push(run_check("chart preserves values", budget.samples.min(100), |_| {
                    let f = RationalFunction::from_poly(draw(&mut rng, orig, shape));
                    let lhs = orig.value(&f)?;
                    let rhs = nu.value(&chart.apply(&f)?)?;
                    Ok((lhs != rhs).then(|| show(&f, orig.field())))
                })?);
            }
            checks.extend(monomial_suite(&nu, budget)?);
            checks
        }
        ValuationDescriptor::Gauss(w) => gauss_suite(w, budget)?,
        ValuationDescriptor::SeriesEmbedding(e) => series_suite(e, budget)?,
        ValuationDescriptor::Hahn { p } => hahn_suite(*p, budget)?,
    };
    Ok(VerifyReport { subject, checks })
}
