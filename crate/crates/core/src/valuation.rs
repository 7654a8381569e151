//! Monomial valuations, coordinate charts, residue maps and the Gauss
//! extension over the perfect closure of `F_p(s)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{AlgebraError, ValuationError};
use crate::field::GroundField;
use crate::group::{GroupElement, ValueGroup};
use crate::lattice::{self, IntMatrix};
use crate::poly::{Monomial, Polynomial};
use crate::ratfunc::{laurent_monomial, FieldDescriptor, RationalFunction};

/// A valuation on `F_q(x_1, …, x_n)` determined by nonnegative variable
/// weights: a polynomial gets the least weight pairing over its support.
///
/// `parameters` and `residue_vars` record a declared monomialized shape; they
/// are only consulted by [`MonomialValuation::verify_monomialized`] and the
/// splitting routines that require it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    field: FieldDescriptor,
    group: ValueGroup,
    weights: Vec<GroupElement>,
    parameters: Vec<usize>,
    residue_vars: Vec<usize>,
    /// Weights times `scale`, as integers (per variable, per coordinate).
    scaled: Vec<Vec<BigInt>>,
    scale: BigInt,
}

/// Outcome of [`MonomialValuation::verify_monomialized`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomializedCheck {
    pub holds: bool,
    pub diagnostics: Vec<String>,
}

/// `κ_ν = F_q(t_1, …, t_r)` with each `t_j` a Laurent monomial of value 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub field: FieldDescriptor,
    /// Exponent vector (in the valued field's variables) of each generator.
    pub generators: Vec<Vec<BigInt>>,
}

impl ResidueField {
    pub fn transcendence_degree(&self) -> usize {
        self.generators.len()
    }

    /// The generators written in the source variables, e.g. `y/x`.
    pub fn describe_generators(&self, source: &FieldDescriptor) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| {
                let f = laurent_monomial(source.base, g);
                crate::parse::render(&f, source)
            })
            .collect()
    }
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn to_bigint(e: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, e.clone())
}

impl MonomialValuation {
    pub fn new(
        field: FieldDescriptor,
        group: ValueGroup,
        weights: Vec<GroupElement>,
        parameters: Vec<usize>,
        residue_vars: Vec<usize>,
    ) -> Result<Self, ValuationError> {
        let n = field.nvars();
        if weights.len() != n {
            return Err(ValuationError::InvalidDescriptor(format!(
                "{} weights for {n} variables",
                weights.len()
            )));
        }
        for (i, w) in weights.iter().enumerate() {
            group.contains(w)?;
            if !group.is_nonnegative(w)? {
                return Err(ValuationError::InvalidDescriptor(format!(
                    "weight of `{}` is negative",
                    field.variables[i]
                )));
            }
        }
        if let Some(&bad) = parameters.iter().chain(&residue_vars).find(|&&i| i >= n) {
            return Err(ValuationError::InvalidDescriptor(format!("variable index {bad} out of range")));
        }
        let scale = lcm_of_denominators(weights.iter().flat_map(|w| w.coords().iter()));
        let scaled = weights
            .iter()
            .map(|w| {
                w.coords()
                    .iter()
                    .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        Ok(MonomialValuation {
            field,
            group,
            weights,
            parameters,
            residue_vars,
            scaled,
            scale,
        })
    }

    /// Monomial valuation with every variable a parameter (positive weight)
    /// or a residue variable (zero weight), according to its weight.
    pub fn from_weights(
        field: FieldDescriptor,
        group: ValueGroup,
        weights: Vec<GroupElement>,
    ) -> Result<Self, ValuationError> {
        let mut params = Vec::new();
        let mut residue = Vec::new();
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                residue.push(i);
            } else {
                params.push(i);
            }
        }
        Self::new(field, group, weights, params, residue)
    }

    /// `ν_lex` on `F_q(x_1..x_n)`: `x_i ↦ e_i` in `Z^n` with `e_1 > … > e_n`.
    pub fn lex(field: FieldDescriptor) -> Self {
        let n = field.nvars();
        let weights = (0..n)
            .map(|i| GroupElement::from_integers((0..n).map(|j| i64::from(i == j))))
            .collect();
        Self::new(field, ValueGroup::lex(n), weights, (0..n).collect(), Vec::new()).expect("lex weights are valid")
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn group(&self) -> &ValueGroup {
        &self.group
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    pub fn parameters(&self) -> &[usize] {
        &self.parameters
    }

    pub fn residue_vars(&self) -> &[usize] {
        &self.residue_vars
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    fn scaled_pairing(&self, m: &Monomial) -> GroupElement {
        let arity = self.group.arity();
        let mut acc = vec![BigInt::zero(); arity];
        for (e, w) in m.exponents().iter().zip(&self.scaled) {
            if e.is_zero() {
                continue;
            }
            let e = to_bigint(e);
            for (a, c) in acc.iter_mut().zip(w) {
                *a += &e * c;
            }
        }
        GroupElement(acc.into_iter().map(BigRational::from_integer).collect())
    }

    fn unscale(&self, g: GroupElement) -> GroupElement {
        if self.scale.is_one() {
            return g;
        }
        let inv = BigRational::new(BigInt::one(), self.scale.clone());
        g.scale_rational(&inv)
    }

    /// `⟨w, α⟩` for an exponent vector `α`.
    pub fn pairing(&self, m: &Monomial) -> GroupElement {
        self.unscale(self.scaled_pairing(m))
    }

    /// Minimum pairing over the support and the monomials attaining it.
    fn min_terms(&self, f: &Polynomial) -> Result<(GroupElement, Vec<Monomial>), ValuationError> {
        let mut best: Option<(GroupElement, Vec<Monomial>)> = None;
        for (m, _) in f.terms() {
            let v = self.scaled_pairing(m);
            match &mut best {
                None => best = Some((v, vec![m.clone()])),
                Some((b, ms)) => match self.group.cmp(&v, b)? {
                    Ordering::Less => best = Some((v, vec![m.clone()])),
                    Ordering::Equal => ms.push(m.clone()),
                    Ordering::Greater => {}
                },
            }
        }
        best.ok_or(ValuationError::ZeroInput)
    }

    pub fn poly_value(&self, f: &Polynomial) -> Result<GroupElement, ValuationError> {
        self.check_arity(f.nvars())?;
        let (v, _) = self.min_terms(f)?;
        Ok(self.unscale(v))
    }

    /// `ν(num) − ν(den)`.
    pub fn value(&self, f: &RationalFunction) -> Result<GroupElement, ValuationError> {
        self.check_arity(f.nvars())?;
        if f.is_zero() {
            return Err(ValuationError::ZeroInput);
        }
        let (a, _) = self.min_terms(f.numerator())?;
        let (b, _) = self.min_terms(f.denominator())?;
        Ok(self.unscale(a.sub(&b)))
    }

    fn check_arity(&self, n: usize) -> Result<(), ValuationError> {
        if n != self.field.nvars() {
            return Err(ValuationError::Algebra(AlgebraError::ArityMismatch {
                left: self.field.nvars(),
                right: n,
            }));
        }
        Ok(())
    }

    /// The terms of `f` whose pairing attains `ν(f)`.
    pub fn initial_form(&self, f: &Polynomial) -> Result<Polynomial, ValuationError> {
        self.check_arity(f.nvars())?;
        let (_, ms) = self.min_terms(f)?;
        Ok(f.filter_terms(|m, _| ms.contains(m)))
    }

    /// Whether `ν(f) ≥ 0` (zero counts as inside the ring).
    pub fn in_ring(&self, f: &RationalFunction) -> Result<bool, ValuationError> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.group.is_nonnegative(&self.value(f)?)?)
    }

    pub fn render_value(&self, v: &GroupElement) -> String {
        self.group.render(v)
    }

    /// Integer weight matrix: rows are group coordinates, columns variables.
    /// Scaled by a common positive denominator, so its kernel is exact.
    fn scaled_matrix(&self) -> IntMatrix {
        (0..self.group.arity())
            .map(|r| self.scaled.iter().map(|w| w[r].clone()).collect())
            .collect()
    }

    /// The unscaled weight matrix when every coordinate is an integer.
    pub fn integer_matrix(&self) -> Option<IntMatrix> {
        let cols: Option<Vec<Vec<BigInt>>> = self.weights.iter().map(GroupElement::integer_coords).collect();
        let cols = cols?;
        Some(
            (0..self.group.arity())
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect(),
        )
    }

    /// `κ_ν`: one Laurent-monomial generator per basis vector of the lattice
    /// of exponent vectors with value 0.
    pub fn residue_field(&self) -> ResidueField {
        let n = self.field.nvars();
        let gens = lattice::kernel_basis(&self.scaled_matrix(), n);
        let mut counter = 0;
        let names: Vec<String> = gens
            .iter()
            .map(|g| {
                let nonzero: Vec<usize> = (0..n).filter(|&i| !g[i].is_zero()).collect();
                if nonzero.len() == 1 && g[nonzero[0]].is_one() {
                    self.field.variables[nonzero[0]].clone()
                } else {
                    counter += 1;
                    format!("t{counter}")
                }
            })
            .collect();
        let mut field = FieldDescriptor::new(self.field.base, names);
        field.generator_name = self.field.generator_name.clone();
        ResidueField { field, generators: gens }
    }

    /// The image of `r` (with `ν(r) = 0`) in `κ_ν`, as a rational function
    /// in the generators of [`MonomialValuation::residue_field`].
    pub fn residue(&self, r: &RationalFunction) -> Result<RationalFunction, ValuationError> {
        let v = self.value(r)?;
        if !v.is_zero() {
            return Err(ValuationError::NonzeroValue(self.group.render(&v)));
        }
        let kappa = self.residue_field();
        let in_num = self.initial_form(r.numerator())?;
        let in_den = self.initial_form(r.denominator())?;
        let (anchor, _) = in_den.leading_term().expect("nonzero");
        let anchor: Vec<BigInt> = anchor.exponents().iter().map(to_bigint).collect();
        let rewrite = |p: &Polynomial| -> Result<Vec<(Vec<BigInt>, crate::field::Fq)>, ValuationError> {
            p.terms()
                .map(|(m, c)| {
                    let delta: Vec<BigInt> =
                        m.exponents().iter().zip(&anchor).map(|(e, a)| to_bigint(e) - a).collect();
                    let coords =
                        lattice::coordinates_in(&kappa.generators, &delta).ok_or(ValuationError::NotExpressible)?;
                    Ok((coords, *c))
                })
                .collect()
        };
        let num_terms = rewrite(&in_num)?;
        let den_terms = rewrite(&in_den)?;
        let r_dim = kappa.generators.len();
        let mut shift = vec![BigInt::zero(); r_dim];
        for (coords, _) in num_terms.iter().chain(&den_terms) {
            for (s, c) in shift.iter_mut().zip(coords) {
                if c < s {
                    *s = c.clone();
                }
            }
        }
        let base = self.field.base;
        let build = |terms: &[(Vec<BigInt>, crate::field::Fq)]| {
            Polynomial::from_terms(
                base,
                r_dim,
                terms.iter().map(|(coords, c)| {
                    let exps: Vec<BigUint> = coords
                        .iter()
                        .zip(&shift)
                        .map(|(x, s)| (x - s).to_biguint().expect("shifted exponent is nonnegative"))
                        .collect();
                    (Monomial(exps), *c)
                }),
            )
        };
        Ok(RationalFunction::new(build(&num_terms), build(&den_terms))?)
    }

    /// Whether the weights generate the declared group.
    pub fn weights_generate_group(&self) -> bool {
        match self.integer_matrix() {
            Some(m) => lattice::columns_span_lattice(&m, self.group.arity(), self.field.nvars()),
            None => false,
        }
    }

    /// Checks the declared monomialized shape: parameters and residue
    /// variables partition the variables, residue weights vanish, parameter
    /// weights are positive and form a basis of the (finitely generated)
    /// value group.
    pub fn verify_monomialized(&self) -> MonomializedCheck {
        let mut diagnostics = Vec::new();
        let n = self.field.nvars();
        let name = |i: usize| self.field.variables[i].clone();
        let mut seen = vec![0u32; n];
        for &i in self.parameters.iter().chain(&self.residue_vars) {
            seen[i] += 1;
        }
        for (i, &k) in seen.iter().enumerate() {
            if k == 0 {
                diagnostics.push(format!("`{}` is neither a parameter nor a residue variable", name(i)));
            } else if k > 1 {
                diagnostics.push(format!("`{}` is declared more than once", name(i)));
            }
        }
        for &i in &self.residue_vars {
            if !self.weights[i].is_zero() {
                diagnostics.push(format!("residue variable `{}` has nonzero weight", name(i)));
            }
        }
        for &i in &self.parameters {
            if self.weights[i].is_zero() {
                diagnostics.push(format!("parameter `{}` has weight 0", name(i)));
            }
        }
        if !self.group.is_finitely_generated() {
            diagnostics.push("value group is not finitely generated".to_string());
        } else {
            let d = self.group.arity();
            if self.parameters.len() != d {
                diagnostics.push(format!(
                    "{} parameter weights cannot freely generate a group of rank {d}",
                    self.parameters.len()
                ));
            } else {
                let cols: Option<Vec<Vec<BigInt>>> = self
                    .parameters
                    .iter()
                    .map(|&i| self.weights[i].integer_coords())
                    .collect();
                match cols {
                    None => diagnostics.push("parameter weights are not integral".to_string()),
                    Some(cols) => {
                        let m: IntMatrix = (0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                        let det = lattice::determinant(&m);
                        if !det.abs().is_one() {
                            diagnostics.push(format!(
                                "parameter weights span a sublattice of index {} (determinant must be ±1)",
                                det.abs()
                            ));
                        }
                    }
                }
            }
        }
        MonomializedCheck {
            holds: diagnostics.is_empty(),
            diagnostics,
        }
    }

    /// Errors unless the declared monomialized shape verifies.
    pub fn require_monomialized(&self) -> Result<(), ValuationError> {
        let check = self.verify_monomialized();
        if check.holds {
            Ok(())
        } else {
            Err(ValuationError::NotMonomialized(check.diagnostics.join("; ")))
        }
    }
}

/// A change of coordinates `x_i ↦ y^{E_i}` by Laurent monomials with a
/// unimodular exponent matrix, e.g. the blow-up chart
/// `(x, y, z) ↦ (x, u·x, w·x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub source: FieldDescriptor,
    pub target: FieldDescriptor,
    /// Row `i` is the exponent vector of the image of source variable `i`.
    pub exponents: Vec<Vec<BigInt>>,
}

impl Chart {
    pub fn new(
        source: FieldDescriptor,
        target: FieldDescriptor,
        exponents: Vec<Vec<BigInt>>,
    ) -> Result<Self, ValuationError> {
        let n = source.nvars();
        if target.nvars() != n || exponents.len() != n || exponents.iter().any(|r| r.len() != n) {
            return Err(ValuationError::InvalidDescriptor(
                "a chart needs as many target as source variables and a square exponent matrix".to_string(),
            ));
        }
        if source.base != target.base {
            return Err(ValuationError::Algebra(AlgebraError::FieldMismatch));
        }
        if !lattice::determinant(&exponents).abs().is_one() {
            return Err(ValuationError::InvalidDescriptor(
                "chart exponent matrix is not unimodular".to_string(),
            ));
        }
        Ok(Chart { source, target, exponents })
    }

    /// Builds a chart from images that must be Laurent monomials with
    /// coefficient `1`.
    pub fn from_images(
        source: FieldDescriptor,
        target: FieldDescriptor,
        images: &[RationalFunction],
    ) -> Result<Self, ValuationError> {
        let mut rows = Vec::new();
        for (i, img) in images.iter().enumerate() {
            let bad = || {
                ValuationError::InvalidDescriptor(format!(
                    "image of `{}` is not a Laurent monomial",
                    source.variables.get(i).map(String::as_str).unwrap_or("?")
                ))
            };
            let (nm, nc) = img.numerator().as_term().ok_or_else(bad)?;
            let (dm, dc) = img.denominator().as_term().ok_or_else(bad)?;
            if nc != dc {
                return Err(bad());
            }
            rows.push(
                nm.exponents()
                    .iter()
                    .zip(dm.exponents())
                    .map(|(a, b)| to_bigint(a) - to_bigint(b))
                    .collect(),
            );
        }
        if rows.len() != source.nvars() {
            return Err(ValuationError::InvalidDescriptor(format!(
                "{} images for {} variables",
                rows.len(),
                source.nvars()
            )));
        }
        Self::new(source, target, rows)
    }

    pub fn images(&self) -> Vec<RationalFunction> {
        self.exponents
            .iter()
            .map(|e| laurent_monomial(self.target.base, e))
            .collect()
    }

    /// Rewrites an element of the source field in chart coordinates.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, ValuationError> {
        Ok(f.substitute(&self.images())?)
    }

    /// The valuation on the source field induced by `ν` on the chart:
    /// `w(x_i) = Σ_j E_ij · w(y_j)`.
    pub fn pull_back(&self, nu: &MonomialValuation) -> Result<MonomialValuation, ValuationError> {
        let weights = self
            .exponents
            .iter()
            .map(|row| {
                row.iter()
                    .zip(nu.weights())
                    .fold(nu.group().zero(), |acc, (e, w)| acc.add(&w.scale(e)))
            })
            .collect();
        MonomialValuation::from_weights(self.source.clone(), nu.group().clone(), weights)
    }
}

/// Lex order of the two factors of the Gauss extension's value group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaussVariant {
    /// `Γ_ν ⊕ Z`: the base value is compared first.
    GroupFirst,
    /// `Z ⊕ Γ_ν`: the `X`-degree is compared first.
    ZFirst,
}

/// Largest perfection level a [`ValuedBaseField`] escalates to.
pub const MAX_PERFECTION_LEVEL: u32 = 12;

/// A finite window `F_p(s^{1/p^e})` of the perfect field `F_p(s^{1/p^∞})`
/// with the `s`-adic valuation into `Z[1/p]`.
///
/// At level `e` elements are rational functions in `u = s^{1/p^e}`, written
/// `s` at level 0 and `s<e>` above. Raising the level maps `u ↦ u'^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedBaseField {
    p: u32,
    level: u32,
}

impl ValuedBaseField {
    pub fn new(p: u32, level: u32) -> Result<Self, ValuationError> {
        if level > MAX_PERFECTION_LEVEL {
            return Err(ValuationError::LevelCap {
                requested: level,
                cap: MAX_PERFECTION_LEVEL,
            });
        }
        GroundField::prime(p).map_err(|e| ValuationError::InvalidDescriptor(e.to_string()))?;
        Ok(ValuedBaseField { p, level })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Name of the variable `s^{1/p^level}`.
    pub fn variable_name(&self) -> String {
        if self.level == 0 {
            "s".to_string()
        } else {
            format!("s{}", self.level)
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        FieldDescriptor::new(GroundField::prime(self.p).expect("checked"), [self.variable_name()])
            .with_perfect_closure(vec![0])
    }

    /// Value of `s^{1/p^level}`.
    pub fn generator_value(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.p).pow(self.level))
    }

    /// The next level up, or a [`ValuationError::LevelCap`] error.
    pub fn escalate(&self, by: u32) -> Result<Self, ValuationError> {
        Self::new(self.p, self.level + by)
    }

    /// The `s`-adic valuation of an element at this level.
    pub fn value(&self, a: &RationalFunction) -> Result<BigRational, ValuationError> {
        let nu = MonomialValuation::new(
            self.field(),
            ValueGroup::p_divisible(self.p),
            vec![GroupElement(vec![self.generator_value()])],
            vec![0],
            Vec::new(),
        )?;
        Ok(nu.value(a)?.0[0].clone())
    }

    /// The unique `p^e`-th root of `a` (a rational function in `u` at this
    /// level), living `e` levels up.
    pub fn pth_root(&self, a: &RationalFunction, e: u32) -> Result<(Self, RationalFunction), ValuationError> {
        let up = self.escalate(e)?;
        let f = GroundField::prime(self.p).expect("checked");
        let root = |poly: &Polynomial| {
            Polynomial::from_terms(f, 1, poly.terms().map(|(m, c)| (m.clone(), f.pth_root(*c, e))))
        };
        Ok((up, RationalFunction::new(root(a.numerator()), root(a.denominator()))?))
    }
}

/// The extension `w` of the `s`-adic valuation of `L = F_p(s^{1/p^∞})` to
/// `L(X)`, `w(Σ a_i X^i) = inf (ν(a_i), i)` in the chosen lex order.
///
/// Realized at a finite level `e` as the monomial valuation on
/// `F_p(s^{1/p^e}, x)` with weights `(1/p^e, 0)` and `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussValuation {
    base: ValuedBaseField,
    variant: GaussVariant,
    inner: MonomialValuation,
}

impl GaussValuation {
    pub fn new(p: u32, variant: GaussVariant) -> Result<Self, ValuationError> {
        Self::at(ValuedBaseField::new(p, 0)?, variant)
    }

    fn at(base: ValuedBaseField, variant: GaussVariant) -> Result<Self, ValuationError> {
        let p = base.p();
        let field = FieldDescriptor::new(GroundField::prime(p).expect("checked"), [base.variable_name(), "x".to_string()])
            .with_perfect_closure(vec![0]);
        let s = base.generator_value();
        let zero = BigRational::zero();
        let one = BigRational::one();
        let (group, ws, wx) = match variant {
            GaussVariant::GroupFirst => (
                ValueGroup::lex_sum(vec![ValueGroup::p_divisible(p), ValueGroup::lex(1)]),
                vec![s, zero.clone()],
                vec![zero, one],
            ),
            GaussVariant::ZFirst => (
                ValueGroup::lex_sum(vec![ValueGroup::lex(1), ValueGroup::p_divisible(p)]),
                vec![zero.clone(), s],
                vec![one, zero],
            ),
        };
        let inner = MonomialValuation::new(
            field,
            group,
            vec![GroupElement(ws), GroupElement(wx)],
            vec![0, 1],
            Vec::new(),
        )?;
        Ok(GaussValuation { base, variant, inner })
    }

    pub fn variant(&self) -> GaussVariant {
        self.variant
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn level(&self) -> u32 {
        self.base.level()
    }

    pub fn base(&self) -> &ValuedBaseField {
        &self.base
    }

    /// The same valuation viewed at perfection level `level` (at least the
    /// current one).
    pub fn at_level(&self, level: u32) -> Result<Self, ValuationError> {
        Self::at(ValuedBaseField::new(self.p(), level)?, self.variant)
    }

    /// `L(X)` at the current level: variables `s<e>` and `x`.
    pub fn field(&self) -> &FieldDescriptor {
        self.inner.field()
    }

    pub fn group(&self) -> &ValueGroup {
        self.inner.group()
    }

    /// The underlying monomial valuation at the current level.
    pub fn as_monomial(&self) -> &MonomialValuation {
        &self.inner
    }

    /// `w(f)` for `f` in `L(X)` at the current level.
    pub fn value(&self, f: &RationalFunction) -> Result<GroupElement, ValuationError> {
        self.inner.value(f)
    }

    /// Rewrites an element given at level `from ≤ self.level()` at the
    /// current level (`s^{1/p^from} ↦ u^{p^(level - from)}`).
    pub fn lift(&self, f: &RationalFunction, from: u32) -> Result<RationalFunction, ValuationError> {
        if from > self.level() {
            return Err(ValuationError::InvalidDescriptor(format!(
                "cannot lower an element from level {from} to {}",
                self.level()
            )));
        }
        let k = BigUint::from(self.p()).pow(self.level() - from);
        let field = self.field();
        let images = [
            field.var(0).pow_big(&k).map_err(ValuationError::Algebra)?,
            field.var(1),
        ];
        Ok(f.substitute(&images)?)
    }
}
