//! Lazy power series in `t` over a finite field, and the embedding of
//! `F_p(X, Y)` into `F_p((t))` by `X ↦ t`, `Y ↦ t·p(t)` for a seeded
//! pseudorandom `p(t)`.
//!
//! A [`LazySeries`] is an expression tree whose nodes memoize the
//! coefficient prefix computed so far. The memo uses `RefCell`, so a series
//! is confined to one thread; clones share the memo.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SeriesError;
use crate::field::{Fq, GroundField};
use crate::poly::Polynomial;
use crate::ratfunc::{FieldDescriptor, RationalFunction};

/// Seed of the documented default `p(t)` stream.
pub const DEFAULT_SEED: u64 = 20_170_419;
/// Initial precision cap of [`SeriesEmbedding`].
pub const DEFAULT_CAP: usize = 256;
/// Caps double from the initial cap up to this limit before giving up.
pub const CAP_LIMIT: usize = 16_384;

enum Kind {
    /// Finitely many terms `(exponent, coefficient)`, sorted, nonzero.
    Finite(Vec<(usize, Fq)>),
    Seeded(RefCell<ChaCha8Rng>),
    Add(LazySeries, LazySeries),
    Neg(LazySeries),
    Scale(Fq, LazySeries),
    Shift(usize, LazySeries),
    Mul(LazySeries, LazySeries),
    /// `a^{p^e}`.
    Frobenius(u32, LazySeries),
    /// Coefficientwise splitting: keep exponents divisible by `p`, take
    /// `p`-th roots, divide exponents by `p`.
    Split(LazySeries),
}

struct Node {
    field: GroundField,
    kind: Kind,
    memo: RefCell<Vec<Fq>>,
}

/// A formal power series `Σ c_i t^i`, computed on demand.
#[derive(Clone)]
pub struct LazySeries(Rc<Node>);

impl core::fmt::Debug for LazySeries {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let n = self.0.memo.borrow().len();
        write!(f, "LazySeries({} over {:?}, {n} coefficients known)", self.kind_name(), self.0.field)
    }
}

impl LazySeries {
    fn node(field: GroundField, kind: Kind) -> Self {
        LazySeries(Rc::new(Node {
            field,
            kind,
            memo: RefCell::new(Vec::new()),
        }))
    }

    fn kind_name(&self) -> &'static str {
        match self.0.kind {
            Kind::Finite(_) => "finite",
            Kind::Seeded(_) => "seeded",
            Kind::Add(..) => "sum",
            Kind::Neg(_) => "negation",
            Kind::Scale(..) => "scaled",
            Kind::Shift(..) => "shifted",
            Kind::Mul(..) => "product",
            Kind::Frobenius(..) => "frobenius",
            Kind::Split(_) => "split",
        }
    }

    pub fn field(&self) -> GroundField {
        self.0.field
    }

    /// A series with finitely many terms.
    pub fn finite(field: GroundField, terms: impl IntoIterator<Item = (usize, Fq)>) -> Self {
        let mut map: BTreeMap<usize, Fq> = BTreeMap::new();
        for (i, c) in terms {
            let e = map.entry(i).or_insert(Fq::ZERO);
            *e = field.add(*e, c);
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::node(field, Kind::Finite(terms))
    }

    pub fn zero(field: GroundField) -> Self {
        Self::finite(field, [])
    }

    pub fn constant(field: GroundField, c: Fq) -> Self {
        Self::finite(field, [(0, c)])
    }

    pub fn one(field: GroundField) -> Self {
        Self::constant(field, Fq::ONE)
    }

    /// `c·t^k`.
    pub fn monomial(field: GroundField, k: usize, c: Fq) -> Self {
        Self::finite(field, [(k, c)])
    }

    /// The series `t`.
    pub fn t(field: GroundField) -> Self {
        Self::monomial(field, 1, Fq::ONE)
    }

    /// The pseudorandom stream `p(t)` for `seed`: coefficient 0 is `0`,
    /// coefficient 1 is nonzero, the rest are uniform in the field.
    pub fn seeded(field: GroundField, seed: u64) -> Self {
        Self::node(field, Kind::Seeded(RefCell::new(ChaCha8Rng::seed_from_u64(seed))))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::node(self.field(), Kind::Add(self.clone(), other.clone()))
    }

    pub fn neg(&self) -> Self {
        Self::node(self.field(), Kind::Neg(self.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fq) -> Self {
        Self::node(self.field(), Kind::Scale(c, self.clone()))
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        Self::node(self.field(), Kind::Shift(k, self.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::node(self.field(), Kind::Mul(self.clone(), other.clone()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.field());
        let mut base = self.clone();
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { acc.mul(&base) };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^{p^e}`.
    pub fn frobenius(&self, e: u32) -> Self {
        Self::node(self.field(), Kind::Frobenius(e, self.clone()))
    }

    /// The splitting of `κ[[t]]` over `κ^p[[t^p]]` sending `t^i ↦ 0` unless
    /// `p | i`, read back through Frobenius: `Σ c_i t^i ↦ Σ c_{pj}^{1/p} t^j`.
    pub fn split(&self) -> Self {
        Self::node(self.field(), Kind::Split(self.clone()))
    }

    /// Ensures the memo covers indices `< n`.
    fn extend_to(&self, n: usize) {
        let have = self.0.memo.borrow().len();
        if have >= n {
            return;
        }
        let f = self.0.field;
        let p = f.characteristic() as usize;
        // children first, so that no memo is borrowed mutably twice
        match &self.0.kind {
            Kind::Add(a, b) | Kind::Mul(a, b) => {
                a.extend_to(n);
                b.extend_to(n);
            }
            Kind::Neg(a) | Kind::Scale(_, a) => a.extend_to(n),
            Kind::Shift(k, a) => a.extend_to(n.saturating_sub(*k)),
            Kind::Frobenius(e, a) => {
                let q = p.pow(*e);
                a.extend_to(n.div_ceil(q));
            }
            Kind::Split(a) => a.extend_to((n - 1) * p + 1),
            Kind::Finite(_) | Kind::Seeded(_) => {}
        }
        let mut memo = self.0.memo.borrow_mut();
        for i in have..n {
            let c = match &self.0.kind {
                Kind::Finite(terms) => terms
                    .binary_search_by_key(&i, |(k, _)| *k)
                    .map(|j| terms[j].1)
                    .unwrap_or(Fq::ZERO),
                Kind::Seeded(rng) => {
                    let mut rng = rng.borrow_mut();
                    let q = f.order() as u32;
                    match i {
                        0 => Fq::ZERO,
                        1 => f.element(rng.gen_range(1..q)).expect("in range"),
                        _ => f.element(rng.gen_range(0..q)).expect("in range"),
                    }
                }
                Kind::Add(a, b) => f.add(a.memo_at(i), b.memo_at(i)),
                Kind::Neg(a) => f.neg(a.memo_at(i)),
                Kind::Scale(c, a) => f.mul(*c, a.memo_at(i)),
                Kind::Shift(k, a) => {
                    if i < *k {
                        Fq::ZERO
                    } else {
                        a.memo_at(i - k)
                    }
                }
                Kind::Mul(a, b) => mul_coefficient(f, a, b, i),
                Kind::Frobenius(e, a) => {
                    let q = p.pow(*e);
                    if i % q == 0 {
                        f.frobenius(a.memo_at(i / q), *e)
                    } else {
                        Fq::ZERO
                    }
                }
                Kind::Split(a) => f.pth_root(a.memo_at(i * p), 1),
            };
            memo.push(c);
        }
    }

    fn memo_at(&self, i: usize) -> Fq {
        self.0.memo.borrow()[i]
    }

    /// Coefficient of `t^i`.
    pub fn coefficient(&self, i: usize) -> Fq {
        self.extend_to(i + 1);
        self.memo_at(i)
    }

    /// Coefficients of `t^0, …, t^{n-1}`.
    pub fn prefix(&self, n: usize) -> Vec<Fq> {
        self.extend_to(n);
        self.0.memo.borrow()[..n].to_vec()
    }

    /// The series cut off below `t^n`, as a finite series.
    pub fn truncate(&self, n: usize) -> Self {
        let terms: Vec<(usize, Fq)> = self.prefix(n).into_iter().enumerate().collect();
        Self::finite(self.field(), terms)
    }

    /// Least index `< cap` with a nonzero coefficient.
    pub fn series_ord(&self, cap: usize) -> Result<usize, SeriesError> {
        if let Kind::Finite(terms) = &self.0.kind {
            return match terms.first() {
                Some((k, _)) if *k < cap => Ok(*k),
                _ => Err(SeriesError::PrecisionExhausted { cap }),
            };
        }
        // grow geometrically so products are not recomputed term by term
        let mut known = 0;
        let mut step = 16.min(cap.max(1));
        while known < cap {
            let upto = (known + step).min(cap);
            self.extend_to(upto);
            let memo = self.0.memo.borrow();
            if let Some(j) = memo[known..upto].iter().position(|c| !c.is_zero()) {
                return Ok(known + j);
            }
            known = upto;
            step *= 2;
        }
        Err(SeriesError::PrecisionExhausted { cap })
    }
}

fn mul_coefficient(f: GroundField, a: &LazySeries, b: &LazySeries, i: usize) -> Fq {
    // a sparse finite factor keeps products with monomials cheap
    for (x, y) in [(a, b), (b, a)] {
        if let Kind::Finite(terms) = &x.0.kind {
            let mut acc = Fq::ZERO;
            for (k, c) in terms {
                if *k > i {
                    break;
                }
                acc = f.add(acc, f.mul(*c, y.memo_at(i - k)));
            }
            return acc;
        }
    }
    let am = a.0.memo.borrow();
    let bm = b.0.memo.borrow();
    let mut acc = Fq::ZERO;
    for k in 0..=i {
        let (x, y) = (am[k], bm[i - k]);
        if !x.is_zero() && !y.is_zero() {
            acc = f.add(acc, f.mul(x, y));
        }
    }
    acc
}

/// `series_ord` of a combination of series: a free-function form.
pub fn series_ord(x: &LazySeries, cap: usize) -> Result<usize, SeriesError> {
    x.series_ord(cap)
}

/// `series_split` as a free function.
pub fn series_split(x: &LazySeries) -> LazySeries {
    x.split()
}

/// A field embedding `F_p(x, y) → F_p((t))` given by the images of the
/// variables, with precision escalation for orders.
#[derive(Clone, Debug)]
pub struct SeriesEmbedding {
    field: FieldDescriptor,
    images: Vec<LazySeries>,
    seed: Option<u64>,
    cap: usize,
    limit: usize,
}

impl SeriesEmbedding {
    /// `x ↦ t`, `y ↦ t·p(t)` with `p(t)` the seeded stream; since `t | p(t)`
    /// and the coefficient of `t` in `p(t)` is nonzero, `y` has order 2.
    pub fn new(p: u32, seed: u64) -> Result<Self, SeriesError> {
        let base = GroundField::prime(p).map_err(|_| SeriesError::BadArity(0))?;
        let field = FieldDescriptor::new(base, ["x", "y"]);
        let t = LazySeries::t(base);
        let y = LazySeries::seeded(base, seed).shift(1);
        Ok(SeriesEmbedding {
            field,
            images: alloc::vec![t, y],
            seed: Some(seed),
            cap: DEFAULT_CAP,
            limit: CAP_LIMIT,
        })
    }

    /// An embedding with explicit images, one per variable of `field`.
    pub fn with_images(field: FieldDescriptor, images: Vec<LazySeries>) -> Result<Self, SeriesError> {
        if images.len() != field.nvars() {
            return Err(SeriesError::BadArity(images.len()));
        }
        Ok(SeriesEmbedding {
            field,
            images,
            seed: None,
            cap: DEFAULT_CAP,
            limit: CAP_LIMIT,
        })
    }

    /// Sets the initial cap (at most the escalation limit).
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.clamp(1, self.limit);
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit.max(1);
        self.cap = self.cap.min(self.limit);
        self
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn images(&self) -> &[LazySeries] {
        &self.images
    }

    /// The image of a polynomial, exact in all coefficients below `limit`.
    pub fn image(&self, f: &Polynomial) -> LazySeries {
        let base = self.field.base;
        let n = self.images.len();
        // orders of the images bound which terms can matter below the limit
        let ords: Vec<Option<usize>> = self.images.iter().map(|s| s.series_ord(self.limit).ok()).collect();
        let mut powers: BTreeMap<(usize, u64), LazySeries> = BTreeMap::new();
        let mut acc = LazySeries::zero(base);
        'terms: for (m, c) in f.terms() {
            let mut low = 0usize;
            let mut small = Vec::with_capacity(n);
            for (i, e) in m.exponents().iter().enumerate() {
                if num_traits::Zero::is_zero(e) {
                    small.push(0u64);
                    continue;
                }
                let Some(ord) = ords[i] else {
                    // the image vanishes below the limit, and so does the term
                    continue 'terms;
                };
                let e_small = e.to_u64().filter(|&k| (k as u128) * (ord as u128) < self.limit as u128);
                let Some(k) = e_small else { continue 'terms };
                low += k as usize * ord;
                if low >= self.limit {
                    continue 'terms;
                }
                small.push(k);
            }
            let mut term = LazySeries::constant(base, *c);
            for (i, &k) in small.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((i, k)).or_insert_with(|| self.images[i].pow(k)).clone();
                term = term.mul(&pw);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// `ord_t` of the image of a nonzero polynomial, escalating the cap.
    pub fn poly_order(&self, f: &Polynomial) -> Result<usize, SeriesError> {
        if f.is_zero() {
            return Err(SeriesError::ZeroInput);
        }
        let img = self.image(f);
        let mut cap = self.cap;
        loop {
            match img.series_ord(cap) {
                Ok(k) => return Ok(k),
                Err(_) if cap < self.limit => cap = (cap * 2).min(self.limit),
                Err(_) => return Err(SeriesError::PrecisionExhausted { cap: self.limit }),
            }
        }
    }

    /// `ν(f) = ord_t(image(num)) − ord_t(image(den))`.
    pub fn embed_value(&self, f: &RationalFunction) -> Result<i64, SeriesError> {
        if f.nvars() != self.field.nvars() {
            return Err(SeriesError::BadArity(f.nvars()));
        }
        if f.is_zero() {
            return Err(SeriesError::ZeroInput);
        }
        let a = self.poly_order(f.numerator())?;
        let b = self.poly_order(f.denominator())?;
        Ok(a as i64 - b as i64)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::rf_parse;
    use crate::sample::{random_nonzero_polynomial, PolyShape};
    use proptest::prelude::*;

    fn gf(p: u32) -> GroundField {
        GroundField::prime(p).unwrap()
    }

    #[test]
    fn orders() {
        let f = gf(5);
        assert_eq!(LazySeries::t(f).series_ord(10), Ok(1));
        let p_t = LazySeries::seeded(f, DEFAULT_SEED);
        assert_eq!(p_t.coefficient(0), Fq::ZERO);
        assert_ne!(p_t.coefficient(1), Fq::ZERO);
        assert!(p_t.shift(1).series_ord(10).unwrap() >= 2);
        assert_eq!(
            LazySeries::zero(f).series_ord(100),
            Err(SeriesError::PrecisionExhausted { cap: 100 })
        );
        let zero_stream = p_t.sub(&p_t);
        assert_eq!(zero_stream.series_ord(100), Err(SeriesError::PrecisionExhausted { cap: 100 }));
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let f = gf(7);
        let a = LazySeries::seeded(f, 42).prefix(300);
        let b = LazySeries::seeded(f, 42).prefix(300);
        assert_eq!(a, b);
        let c = LazySeries::seeded(f, 43).prefix(300);
        assert_ne!(a, c);
        // memoized prefix agrees with regeneration after partial reads
        let s = LazySeries::seeded(f, 42);
        let _ = s.coefficient(17);
        assert_eq!(s.prefix(300), a);
    }

    #[test]
    fn products_match_naive_convolution() {
        let f = gf(3);
        let a = LazySeries::seeded(f, 1);
        let b = LazySeries::seeded(f, 2).add(&LazySeries::one(f));
        let prod = a.mul(&b).prefix(60);
        let (x, y) = (a.prefix(60), b.prefix(60));
        for i in 0..60 {
            let mut acc = 0u32;
            for k in 0..=i {
                acc += x[k].index() * y[i - k].index();
            }
            assert_eq!(prod[i].index(), acc % 3);
        }
    }

    #[test]
    fn split_examples() {
        for p in [2u32, 3, 5] {
            let f = gf(p);
            let tp = LazySeries::monomial(f, p as usize, Fq::ONE);
            assert_eq!(tp.split().prefix(20), LazySeries::t(f).prefix(20));
            assert_eq!(LazySeries::t(f).split().series_ord(50), Err(SeriesError::PrecisionExhausted { cap: 50 }));
            let x = LazySeries::finite(f, [(0, Fq::ONE), (1, Fq::ONE), (p as usize, Fq::ONE)]);
            let expect = LazySeries::finite(f, [(0, Fq::ONE), (1, Fq::ONE)]);
            assert_eq!(x.split().prefix(20), expect.prefix(20));
        }
    }

    #[test]
    fn embedding_examples() {
        let e = SeriesEmbedding::new(3, DEFAULT_SEED).unwrap();
        let k = e.field().clone();
        let v = |s: &str| e.embed_value(&rf_parse(s, &k).unwrap()).unwrap();
        assert_eq!(v("x"), 1);
        assert_eq!(v("1"), 0);
        assert_eq!(v("y"), 2);
        assert_eq!(v("y/x"), v("y") - 1);
        assert_eq!(e.embed_value(&k.zero()), Err(SeriesError::ZeroInput));
    }

    #[test]
    fn escalation_reports_the_limit() {
        let base = gf(2);
        let field = FieldDescriptor::new(base, ["x", "y"]);
        let t = LazySeries::t(base);
        let e = SeriesEmbedding::with_images(field.clone(), alloc::vec![t.clone(), t]).unwrap();
        let f = rf_parse("x + y", &field).unwrap();
        assert_eq!(e.embed_value(&f), Err(SeriesError::PrecisionExhausted { cap: CAP_LIMIT }));
        // a value past the first cap is found after doubling
        let g = rf_parse("x^300", &field).unwrap();
        assert_eq!(e.embed_value(&g), Ok(300));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn split_is_additive_and_a_projection(p in prop::sample::select(alloc::vec![2u32, 3, 5]), s1 in any::<u64>(), s2 in any::<u64>()) {
            let f = gf(p);
            let a = LazySeries::seeded(f, s1).add(&LazySeries::one(f)).truncate(200);
            let b = LazySeries::seeded(f, s2).truncate(400);
            prop_assert_eq!(a.add(&b).split().prefix(200), a.split().add(&b.split()).prefix(200));
            prop_assert_eq!(a.frobenius(1).mul(&b).split().prefix(200), a.mul(&b.split()).prefix(200));
            prop_assert_eq!(a.frobenius(1).split().prefix(200), a.prefix(200));
        }

        #[test]
        fn embed_value_is_multiplicative(p in prop::sample::select(alloc::vec![2u32, 3, 5]), seed in any::<u64>(), rng_seed in any::<u64>()) {
            use rand::SeedableRng;
            let e = SeriesEmbedding::new(p, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            let shape = PolyShape { max_degree: 4, max_terms: 4 };
            let f = random_nonzero_polynomial(&mut rng, e.field().base, 2, shape);
            let g = random_nonzero_polynomial(&mut rng, e.field().base, 2, shape);
            let vf = e.embed_value(&f.clone().into()).unwrap();
            let vg = e.embed_value(&g.clone().into()).unwrap();
            prop_assert_eq!(e.embed_value(&(&f * &g).into()).unwrap(), vf + vg);
        }
    }
}
