//! Ordered abelian groups used as value groups.
//!
//! Elements are stored as rational coordinate vectors over the generator
//! basis of the group: integers for `lex` and `embedded` factors, rationals
//! with `p`-power denominators for `Z[1/p]`. A `lex_sum` concatenates the
//! coordinates of its components and compares them component by component.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;

use crate::error::GroupError;

/// Decimal digits of `pi` after the point; the enclosure refiner stops here.
const PI_DIGITS: &str = "1415926535897932384626433832795028841971693993751058209749445923";

/// Largest number of decimal digits the `pi` oracle can certify.
pub const PI_PRECISION: u32 = PI_DIGITS.len() as u32;

/// An irrational real generator with a certified enclosure procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Irrational {
    /// `pi`, refined from a fixed digit table.
    Pi,
    /// `sqrt(2)`, decided exactly by squaring.
    Sqrt2,
}

impl Irrational {
    pub fn name(self) -> &'static str {
        match self {
            Irrational::Pi => "pi",
            Irrational::Sqrt2 => "sqrt2",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        match name {
            "pi" => Ok(Irrational::Pi),
            "sqrt2" => Ok(Irrational::Sqrt2),
            other => Err(GroupError::UnknownIrrational(String::from(other))),
        }
    }

    /// A rational enclosure `lo < alpha < hi` with `hi - lo = 10^-digits`.
    ///
    /// Enclosures for increasing `digits` are nested.
    pub fn enclosure(self, digits: u32) -> Result<(BigRational, BigRational), GroupError> {
        let scale = BigInt::from(10u32).pow(digits);
        let lo_num = match self {
            Irrational::Pi => {
                if digits > PI_PRECISION {
                    return Err(GroupError::PrecisionExhausted { digits: PI_PRECISION });
                }
                let mut s = String::from("3");
                s.push_str(&PI_DIGITS[..digits as usize]);
                s.parse::<BigInt>().expect("digit table")
            }
            // floor(sqrt(2 * 10^(2 digits)))
            Irrational::Sqrt2 => (BigInt::from(2u32) * &scale * &scale).sqrt(),
        };
        let lo = BigRational::new(lo_num.clone(), scale.clone());
        let hi = BigRational::new(lo_num + 1, scale);
        Ok((lo, hi))
    }

    /// Sign of `a + b·alpha` for rationals `a`, `b`.
    pub fn sign_of(self, a: &BigRational, b: &BigRational) -> Result<Ordering, GroupError> {
        if b.is_zero() {
            return Ok(a.cmp(&BigRational::zero()));
        }
        match self {
            Irrational::Sqrt2 => {
                // a + b·sqrt2 vs 0, with sqrt2 irrational so never equal
                let a_sign = a.cmp(&BigRational::zero());
                let b_sign = b.cmp(&BigRational::zero());
                if a_sign != Ordering::Less && b_sign == Ordering::Greater {
                    return Ok(Ordering::Greater);
                }
                if a_sign != Ordering::Greater && b_sign == Ordering::Less {
                    return Ok(Ordering::Less);
                }
                // opposite signs: compare a^2 with 2 b^2
                let two_b2 = b * b * BigRational::from_integer(BigInt::from(2));
                let a2 = a * a;
                let a_dominates = a2 > two_b2;
                Ok(if a_dominates { a_sign } else { b_sign })
            }
            Irrational::Pi => {
                // a + b·pi > 0  iff  pi > -a/b when b > 0 (reversed when b < 0)
                let threshold = -(a / b);
                for digits in 0..=PI_PRECISION {
                    let (lo, hi) = self.enclosure(digits)?;
                    let above = if threshold <= lo {
                        Some(true)
                    } else if threshold >= hi {
                        Some(false)
                    } else {
                        None
                    };
                    if let Some(above) = above {
                        let positive = above == b.is_positive();
                        return Ok(if positive { Ordering::Greater } else { Ordering::Less });
                    }
                }
                Err(GroupError::PrecisionExhausted { digits: PI_PRECISION })
            }
        }
    }
}

/// The kinds of value group supported.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `Z^d` ordered lexicographically.
    Lex(usize),
    /// `Z` (rank 1) or `Z + Z·alpha` (rank 2) inside the reals.
    Embedded {
        rank: usize,
        irrational: Option<Irrational>,
    },
    /// `Z[1/p]` inside the rationals.
    PDivisible(u32),
    /// Lexicographic sum of the components, the first most significant.
    LexSum(Vec<ValueGroup>),
}

/// An ordered abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValueGroup {
    kind: GroupKind,
}

/// An element of a [`ValueGroup`], as coordinates over its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<BigRational>);

impl GroupElement {
    pub fn zero(arity: usize) -> Self {
        GroupElement(alloc::vec![BigRational::zero(); arity])
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coords: I) -> Self {
        GroupElement(
            coords
                .into_iter()
                .map(|c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "group element arity mismatch");
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.arity(), other.arity(), "group element arity mismatch");
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        GroupElement(self.0.iter().map(|a| a * &k).collect())
    }

    pub fn scale_unsigned(&self, k: &BigUint) -> Self {
        self.scale(&BigInt::from_biguint(Sign::Plus, k.clone()))
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        GroupElement(self.0.iter().map(|a| a * k).collect())
    }

    /// Every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if all coordinates are integers.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

fn is_p_power(mut n: BigInt, p: u32) -> bool {
    let p = BigInt::from(p);
    while !n.is_one() {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return false;
        }
        n = q;
    }
    true
}

impl ValueGroup {
    pub fn lex(d: usize) -> Self {
        ValueGroup { kind: GroupKind::Lex(d) }
    }

    /// `Z + Z·alpha` inside the reals.
    pub fn embedded(irrational: Irrational) -> Self {
        ValueGroup {
            kind: GroupKind::Embedded {
                rank: 2,
                irrational: Some(irrational),
            },
        }
    }

    /// `Z` inside the reals.
    pub fn integers() -> Self {
        ValueGroup {
            kind: GroupKind::Embedded {
                rank: 1,
                irrational: None,
            },
        }
    }

    pub fn p_divisible(p: u32) -> Self {
        ValueGroup {
            kind: GroupKind::PDivisible(p),
        }
    }

    pub fn lex_sum(components: Vec<ValueGroup>) -> Self {
        ValueGroup {
            kind: GroupKind::LexSum(components),
        }
    }

    /// Checked constructor for embedded groups (rank 1 without, rank 2 with
    /// an irrational generator).
    pub fn embedded_with_rank(rank: usize, irrational: Option<Irrational>) -> Result<Self, GroupError> {
        match (rank, irrational) {
            (1, None) => Ok(Self::integers()),
            (2, Some(alpha)) => Ok(Self::embedded(alpha)),
            _ => Err(GroupError::NotInGroup(format!(
                "embedded groups have rank 1 (no irrational) or rank 2 (one irrational), got rank {rank}"
            ))),
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Number of stored coordinates per element.
    pub fn arity(&self) -> usize {
        match &self.kind {
            GroupKind::Lex(d) => *d,
            GroupKind::Embedded { rank, .. } => *rank,
            GroupKind::PDivisible(_) => 1,
            GroupKind::LexSum(cs) => cs.iter().map(ValueGroup::arity).sum(),
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero(self.arity())
    }

    /// `dim_Q(Q ⊗ Γ)`.
    pub fn rational_rank(&self) -> usize {
        match &self.kind {
            GroupKind::Lex(d) => *d,
            GroupKind::Embedded { rank, .. } => *rank,
            GroupKind::PDivisible(_) => 1,
            GroupKind::LexSum(cs) => cs.iter().map(ValueGroup::rational_rank).sum(),
        }
    }

    /// Number of proper convex subgroups chains, i.e. the rank of the group
    /// (Krull dimension of a valuation ring with this value group).
    pub fn krull_dimension(&self) -> usize {
        match &self.kind {
            GroupKind::Lex(d) => *d,
            GroupKind::Embedded { rank, .. } => usize::from(*rank > 0),
            GroupKind::PDivisible(_) => 1,
            GroupKind::LexSum(cs) => cs.iter().map(ValueGroup::krull_dimension).sum(),
        }
    }

    pub fn is_p_divisible(&self) -> bool {
        match &self.kind {
            GroupKind::PDivisible(_) => true,
            GroupKind::LexSum(cs) => !cs.is_empty() && cs.iter().all(ValueGroup::is_p_divisible),
            _ => false,
        }
    }

    pub fn is_finitely_generated(&self) -> bool {
        match &self.kind {
            GroupKind::PDivisible(_) => false,
            GroupKind::LexSum(cs) => cs.iter().all(ValueGroup::is_finitely_generated),
            _ => true,
        }
    }

    /// Finitely generated of rational rank at most one with a smallest
    /// positive element: the value group of a discrete valuation ring.
    pub fn is_discrete_rank_one(&self) -> bool {
        self.is_finitely_generated() && self.rational_rank() == 1 && self.smallest_positive().is_some()
    }

    /// Checks that `a` is an element of this group.
    pub fn contains(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.arity() != self.arity() {
            return Err(GroupError::NotInGroup(format!(
                "expected {} coordinates, got {}",
                self.arity(),
                a.arity()
            )));
        }
        self.check_coords(a.coords())
    }

    fn check_coords(&self, coords: &[BigRational]) -> Result<(), GroupError> {
        match &self.kind {
            GroupKind::Lex(_) | GroupKind::Embedded { .. } => {
                if let Some(c) = coords.iter().find(|c| !c.is_integer()) {
                    return Err(GroupError::NotInGroup(format!("coordinate {c} is not an integer")));
                }
                Ok(())
            }
            GroupKind::PDivisible(p) => {
                let c = &coords[0];
                if is_p_power(c.denom().clone(), *p) {
                    Ok(())
                } else {
                    Err(GroupError::NotInGroup(format!(
                        "{c} does not have a power of {p} as denominator"
                    )))
                }
            }
            GroupKind::LexSum(cs) => {
                let mut at = 0;
                for g in cs {
                    let n = g.arity();
                    g.check_coords(&coords[at..at + n])?;
                    at += n;
                }
                Ok(())
            }
        }
    }

    /// The group order. Fallible only for `pi`-embedded groups whose
    /// comparison needs more digits than the oracle carries.
    pub fn cmp(&self, a: &GroupElement, b: &GroupElement) -> Result<Ordering, GroupError> {
        assert_eq!(a.arity(), self.arity(), "group element arity mismatch");
        assert_eq!(b.arity(), self.arity(), "group element arity mismatch");
        self.cmp_coords(&a.0, &b.0)
    }

    fn cmp_coords(&self, a: &[BigRational], b: &[BigRational]) -> Result<Ordering, GroupError> {
        match &self.kind {
            GroupKind::Lex(_) | GroupKind::PDivisible(_) => Ok(a.cmp(b)),
            GroupKind::Embedded { rank, irrational } => {
                if *rank == 1 {
                    return Ok(a[0].cmp(&b[0]));
                }
                let alpha = irrational.expect("rank 2 embedded group has an irrational");
                alpha.sign_of(&(&a[0] - &b[0]), &(&a[1] - &b[1]))
            }
            GroupKind::LexSum(cs) => {
                let mut at = 0;
                for g in cs {
                    let n = g.arity();
                    let o = g.cmp_coords(&a[at..at + n], &b[at..at + n])?;
                    if o != Ordering::Equal {
                        return Ok(o);
                    }
                    at += n;
                }
                Ok(Ordering::Equal)
            }
        }
    }

    pub fn is_positive(&self, a: &GroupElement) -> Result<bool, GroupError> {
        Ok(self.cmp(a, &self.zero())? == Ordering::Greater)
    }

    pub fn is_nonnegative(&self, a: &GroupElement) -> Result<bool, GroupError> {
        Ok(self.cmp(a, &self.zero())? != Ordering::Less)
    }

    /// The smaller of two elements.
    pub fn min<'a>(&self, a: &'a GroupElement, b: &'a GroupElement) -> Result<&'a GroupElement, GroupError> {
        Ok(if self.cmp(a, b)? == Ordering::Greater { b } else { a })
    }

    /// `[Γ : pΓ]`: `p^rank` for finitely generated groups, `1` for `Z[1/p]`
    /// (and `p` for `Z[1/ℓ]` with `ℓ ≠ p`), multiplicative over lex sums.
    pub fn index_p_gamma(&self, p: u32) -> BigUint {
        let p_big = BigUint::from(p);
        match &self.kind {
            GroupKind::Lex(d) => p_big.pow(*d as u32),
            GroupKind::Embedded { rank, .. } => p_big.pow(*rank as u32),
            GroupKind::PDivisible(q) => {
                if *q == p {
                    BigUint::one()
                } else {
                    p_big
                }
            }
            GroupKind::LexSum(cs) => cs.iter().map(|g| g.index_p_gamma(p)).product(),
        }
    }

    /// The least positive element, when one exists.
    pub fn smallest_positive(&self) -> Option<GroupElement> {
        match &self.kind {
            GroupKind::Lex(0) => None,
            GroupKind::Lex(d) => {
                let mut e = GroupElement::zero(*d);
                e.0[d - 1] = BigRational::one();
                Some(e)
            }
            GroupKind::Embedded { rank: 1, .. } => Some(GroupElement::from_integers([1])),
            GroupKind::Embedded { .. } | GroupKind::PDivisible(_) => None,
            GroupKind::LexSum(cs) => {
                // the last nontrivial component decides
                let g = cs.iter().rev().find(|g| g.arity() > 0)?;
                let inner = g.smallest_positive()?;
                let mut e = self.zero();
                let start = self.arity() - g.arity();
                e.0[start..].clone_from_slice(&inner.0);
                Some(e)
            }
        }
    }

    /// `γ / n` when it lies in the group.
    pub fn divide(&self, a: &GroupElement, n: u32) -> Result<GroupElement, GroupError> {
        let q = a.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(n)));
        self.contains(&q)?;
        Ok(q)
    }

    /// Human-readable rendering: a plain number for one coordinate,
    /// `a + b*alpha` for embedded rank two, a tuple otherwise.
    pub fn render(&self, a: &GroupElement) -> String {
        match &self.kind {
            GroupKind::Embedded {
                rank: 2,
                irrational: Some(alpha),
            } => render_linear(&a.0[0], &a.0[1], alpha.name()),
            _ if a.arity() == 1 => format!("{}", a.0[0]),
            _ => {
                let parts: Vec<String> = a.0.iter().map(|c| format!("{c}")).collect();
                format!("({})", parts.join(", "))
            }
        }
    }

    /// A random element with numerators in `[-bound, bound]` (denominators up
    /// to `p^3` in `Z[1/p]` factors).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> GroupElement {
        let mut coords = Vec::with_capacity(self.arity());
        self.push_random(rng, bound, &mut coords);
        GroupElement(coords)
    }

    fn push_random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64, out: &mut Vec<BigRational>) {
        match &self.kind {
            GroupKind::Lex(d) => {
                for _ in 0..*d {
                    out.push(BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))));
                }
            }
            GroupKind::Embedded { rank, .. } => {
                for _ in 0..*rank {
                    out.push(BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))));
                }
            }
            GroupKind::PDivisible(p) => {
                let den = BigInt::from(*p).pow(rng.gen_range(0u32..=3));
                out.push(BigRational::new(BigInt::from(rng.gen_range(-bound..=bound)), den));
            }
            GroupKind::LexSum(cs) => {
                for g in cs {
                    g.push_random(rng, bound, out);
                }
            }
        }
    }
}

fn render_linear(a: &BigRational, b: &BigRational, name: &str) -> String {
    let coef = |b: &BigRational| -> String {
        if b.is_one() {
            String::from(name)
        } else if *b == -BigRational::one() {
            format!("-{name}")
        } else {
            format!("{b}*{name}")
        }
    };
    match (a.is_zero(), b.is_zero()) {
        (_, true) => format!("{a}"),
        (true, false) => coef(b),
        (false, false) => {
            if b.is_negative() {
                format!("{a} - {}", coef(&-b))
            } else {
                format!("{a} + {}", coef(b))
            }
        }
    }
}

impl core::fmt::Display for ValueGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match &self.kind {
            GroupKind::Lex(d) => write!(f, "Z^{d} (lex)"),
            GroupKind::Embedded { rank: 1, .. } => write!(f, "Z"),
            GroupKind::Embedded { irrational, .. } => {
                write!(f, "Z + Z*{}", irrational.map(Irrational::name).unwrap_or("?"))
            }
            GroupKind::PDivisible(p) => write!(f, "Z[1/{p}]"),
            GroupKind::LexSum(cs) => {
                let parts: Vec<String> = cs.iter().map(|g| format!("{g}")).collect();
                write!(f, "({}) (lex)", parts.join(" + "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lex_order_prefers_first_coordinate() {
        let g = ValueGroup::lex(2);
        let a = GroupElement::from_integers([1, 0]);
        let b = GroupElement::from_integers([0, 5]);
        assert_eq!(g.cmp(&a, &b), Ok(Ordering::Greater));
        assert_eq!(g.cmp(&a, &a), Ok(Ordering::Equal));
    }

    #[test]
    fn pi_enclosures_are_nested_and_correct() {
        let mut prev: Option<(BigRational, BigRational)> = None;
        for d in 0..=PI_PRECISION {
            let (lo, hi) = Irrational::Pi.enclosure(d).unwrap();
            // classical rational bounds: 333/106 < pi < 355/113 < 22/7
            assert!(lo < q(22, 7) && hi > q(333, 106));
            if d >= 7 {
                assert!(hi < q(355, 113) && lo > q(333, 106));
            }
            if let Some((plo, phi)) = prev {
                assert!(plo <= lo && hi <= phi);
            }
            prev = Some((lo, hi));
        }
        assert!(matches!(
            Irrational::Pi.enclosure(PI_PRECISION + 1),
            Err(GroupError::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn two_vs_two_pi() {
        let g = ValueGroup::embedded(Irrational::Pi);
        let two = GroupElement::from_integers([2, 0]);
        let two_pi = GroupElement::from_integers([0, 2]);
        assert_eq!(g.cmp(&two, &two_pi), Ok(Ordering::Less));
        // 355 - 113 pi > 0, 22 - 7 pi > 0, 333 - 106 pi < 0
        let s = |a, b| Irrational::Pi.sign_of(&q(a, 1), &q(b, 1)).unwrap();
        assert_eq!(s(355, -113), Ordering::Greater);
        assert_eq!(s(22, -7), Ordering::Greater);
        assert_eq!(s(333, -106), Ordering::Less);
        assert_eq!(s(-3, 1), Ordering::Greater);
    }

    #[test]
    fn pi_comparison_beyond_table_fails_loudly() {
        // p/q convergent-like approximation to 70 digits: 10^70 * pi truncated
        let digits = "31415926535897932384626433832795028841971693993751058209749445923078164";
        let n: BigInt = digits.parse().unwrap();
        let d = BigInt::from(10u32).pow(70u32);
        let a = -BigRational::new(n, d);
        assert_eq!(
            Irrational::Pi.sign_of(&a, &BigRational::one()),
            Err(GroupError::PrecisionExhausted { digits: PI_PRECISION })
        );
    }

    #[test]
    fn sqrt2_signs_are_exact() {
        let s = |a, b| Irrational::Sqrt2.sign_of(&q(a, 1), &q(b, 1)).unwrap();
        assert_eq!(s(-1, 1), Ordering::Greater);
        assert_eq!(s(-2, 1), Ordering::Less);
        assert_eq!(s(3, -2), Ordering::Greater);
        assert_eq!(s(1393, -985), Ordering::Less);
        assert_eq!(s(-1393, 985), Ordering::Greater);
    }

    #[test]
    fn index_examples() {
        assert_eq!(ValueGroup::lex(2).index_p_gamma(2), BigUint::from(4u32));
        assert_eq!(ValueGroup::p_divisible(5).index_p_gamma(5), BigUint::one());
        assert_eq!(ValueGroup::p_divisible(5).index_p_gamma(3), BigUint::from(3u32));
        let sum = ValueGroup::lex_sum(alloc::vec![ValueGroup::p_divisible(3), ValueGroup::lex(1)]);
        assert_eq!(sum.index_p_gamma(3), BigUint::from(3u32));
        assert!(!sum.is_p_divisible());
        assert!(ValueGroup::lex_sum(alloc::vec![ValueGroup::p_divisible(3)]).is_p_divisible());
    }

    #[test]
    fn smallest_positive_examples() {
        assert_eq!(
            ValueGroup::lex(3).smallest_positive(),
            Some(GroupElement::from_integers([0, 0, 1]))
        );
        assert_eq!(ValueGroup::embedded(Irrational::Pi).smallest_positive(), None);
        assert_eq!(ValueGroup::p_divisible(2).smallest_positive(), None);
        let first = ValueGroup::lex_sum(alloc::vec![ValueGroup::p_divisible(2), ValueGroup::lex(1)]);
        let mut expect = GroupElement::zero(2);
        expect.0[1] = BigRational::one();
        assert_eq!(first.smallest_positive(), Some(expect));
        let last = ValueGroup::lex_sum(alloc::vec![ValueGroup::lex(1), ValueGroup::p_divisible(2)]);
        assert_eq!(last.smallest_positive(), None);
    }

    #[test]
    fn ranks() {
        assert_eq!(ValueGroup::lex(3).rational_rank(), 3);
        assert_eq!(ValueGroup::embedded(Irrational::Pi).rational_rank(), 2);
        assert_eq!(ValueGroup::embedded(Irrational::Pi).krull_dimension(), 1);
        assert_eq!(ValueGroup::p_divisible(7).rational_rank(), 1);
    }

    #[test]
    fn membership() {
        let g = ValueGroup::p_divisible(3);
        assert!(g.contains(&GroupElement(alloc::vec![q(5, 9)])).is_ok());
        assert!(g.contains(&GroupElement(alloc::vec![q(5, 6)])).is_err());
        assert!(ValueGroup::lex(1).contains(&GroupElement(alloc::vec![q(1, 2)])).is_err());
        assert_eq!(g.divide(&GroupElement(alloc::vec![q(3, 3)]), 3).unwrap().0[0], q(1, 3));
        assert!(ValueGroup::lex(1).divide(&GroupElement::from_integers([1]), 2).is_err());
    }

    #[test]
    fn rendering() {
        let g = ValueGroup::embedded(Irrational::Pi);
        assert_eq!(g.render(&GroupElement::from_integers([-1, 1])), "-1 + pi");
        assert_eq!(g.render(&GroupElement::from_integers([2, 0])), "2");
        assert_eq!(g.render(&GroupElement::from_integers([0, -3])), "-3*pi");
        assert_eq!(ValueGroup::lex(2).render(&GroupElement::from_integers([0, 1])), "(0, 1)");
        assert_eq!(ValueGroup::p_divisible(2).render(&GroupElement(alloc::vec![q(1, 2)])), "1/2");
    }

    fn groups() -> Vec<ValueGroup> {
        alloc::vec![
            ValueGroup::lex(1),
            ValueGroup::lex(3),
            ValueGroup::integers(),
            ValueGroup::embedded(Irrational::Pi),
            ValueGroup::embedded(Irrational::Sqrt2),
            ValueGroup::p_divisible(3),
            ValueGroup::lex_sum(alloc::vec![ValueGroup::p_divisible(2), ValueGroup::lex(1)]),
            ValueGroup::lex_sum(alloc::vec![ValueGroup::embedded(Irrational::Pi), ValueGroup::lex(2)]),
        ]
    }

    proptest! {
        #[test]
        fn order_is_total_and_translation_invariant(which in 0usize..8, seed in any::<u64>()) {
            let g = &groups()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = g.random_element(&mut rng, 50);
            let b = g.random_element(&mut rng, 50);
            let c = g.random_element(&mut rng, 50);
            let ab = g.cmp(&a, &b).unwrap();
            prop_assert_eq!(ab, g.cmp(&a.add(&c), &b.add(&c)).unwrap());
            prop_assert_eq!(ab.reverse(), g.cmp(&b, &a).unwrap());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            let bc = g.cmp(&b, &c).unwrap();
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert_ne!(g.cmp(&a, &c).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn index_matches_rank_for_finitely_generated(which in 0usize..8, p in prop::sample::select(alloc::vec![2u32, 3, 5, 7])) {
            let g = &groups()[which];
            if g.is_finitely_generated() {
                prop_assert_eq!(g.index_p_gamma(p), BigUint::from(p).pow(g.rational_rank() as u32));
            }
        }

        #[test]
        fn smallest_positive_is_minimal(which in 0usize..8, seed in any::<u64>()) {
            let g = &groups()[which];
            if let Some(eps) = g.smallest_positive() {
                prop_assert!(g.is_positive(&eps).unwrap());
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..50 {
                    let a = g.random_element(&mut rng, 20);
                    if g.is_positive(&a).unwrap() {
                        prop_assert_ne!(g.cmp(&a, &eps).unwrap(), Ordering::Less);
                    }
                }
            }
        }
    }
}
