//! Finite ground fields `F_q`, `q = p^k`.
//!
//! Prime fields are supported for every prime `p < 2^31`. Proper extensions are
//! supported for `p ∈ {2, 3}` and `k ≤ 4`, each realised as `F_p[g]/(c(g))` for
//! a fixed Conway polynomial `c`.
//!
//! Elements are [`Fq`] handles that only make sense together with the
//! [`GroundField`] that produced them: the encoding of `Σ c_i g^i` is the
//! integer `Σ c_i p^i`.

use core::fmt;

use crate::error::FieldError;

/// Largest supported characteristic (exclusive).
pub const MAX_PRIME: u32 = 1 << 31;

/// Conway polynomials, coefficients from low to high degree (monic).
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
];

/// An element of some [`GroundField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer encoding `Σ c_i p^i`.
    pub fn index(self) -> u32 {
        self.0
    }
}

/// The finite field `F_{p^k}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroundField {
    p: u32,
    k: u32,
    /// Monic modulus, low to high; only the first `k + 1` entries are used.
    modulus: [u32; 5],
}

impl fmt::Debug for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

impl fmt::Display for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl GroundField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::Unsupported { p, k });
        }
        let mut modulus = [0u32; 5];
        if k == 1 {
            modulus[1] = 1;
        } else {
            let (_, _, coeffs) = CONWAY
                .iter()
                .find(|(cp, ck, _)| *cp == p && *ck == k)
                .ok_or(FieldError::Unsupported { p, k })?;
            modulus[..coeffs.len()].copy_from_slice(coeffs);
        }
        Ok(GroundField { p, k, modulus })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// The generator `g` of `F_q` over `F_p` (the class of the Conway variable).
    /// For prime fields this is `1`.
    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            Fq::ONE
        } else {
            Fq(self.p)
        }
    }

    /// All elements, in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.order() as u32).map(Fq)
    }

    /// Element from its integer encoding; `None` when out of range.
    pub fn element(&self, index: u32) -> Option<Fq> {
        ((index as u64) < self.order()).then_some(Fq(index))
    }

    /// Image of an integer under `Z → F_p ⊂ F_q`.
    pub fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    /// Image of a nonnegative decimal literal of any size.
    pub fn from_biguint(&self, n: &num_bigint::BigUint) -> Fq {
        let r = n % num_bigint::BigUint::from(self.p);
        Fq(r.iter_u32_digits().next().unwrap_or(0))
    }

    fn digits(&self, a: Fq) -> [u32; 4] {
        let mut out = [0u32; 4];
        let mut v = a.0;
        for d in out.iter_mut().take(self.k as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> Fq {
        let mut v = 0u32;
        for d in digits[..self.k as usize].iter().rev() {
            v = v * self.p + d;
        }
        Fq(v)
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32);
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let mut s = [0u32; 4];
        for i in 0..self.k as usize {
            s[i] = (x[i] + y[i]) % self.p;
        }
        self.encode(&s)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.k == 1 {
            return Fq(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let x = self.digits(a);
        let mut s = [0u32; 4];
        for i in 0..self.k as usize {
            s[i] = (self.p - x[i]) % self.p;
        }
        self.encode(&s)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let k = self.k as usize;
        let p = self.p;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u32; 8];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // reduce by the monic modulus from the top
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                for (i, m) in self.modulus[..k].iter().enumerate() {
                    let shift = deg - k + i;
                    prod[shift] = (prod[shift] + (p - c) * m % p) % p;
                }
            }
        }
        self.encode(&prod)
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `c^{p^e}`.
    pub fn frobenius(&self, c: Fq, e: u32) -> Fq {
        let mut out = c;
        for _ in 0..(e % self.k) {
            out = self.pow(out, self.p as u64);
        }
        out
    }

    /// The unique `d` with `d^{p^e} = c`.
    ///
    /// Frobenius has order `k` on `F_{p^k}`, so the inverse of its `e`-th
    /// iterate is its `(k - e mod k)`-th iterate.
    pub fn pth_root(&self, c: Fq, e: u32) -> Fq {
        let back = (self.k - e % self.k) % self.k;
        self.frobenius(c, back)
    }

    /// Renders an element: plain integers in prime fields, otherwise a
    /// polynomial in `generator_name`.
    pub fn render(&self, a: Fq, generator_name: &str) -> alloc::string::String {
        use alloc::format;
        use alloc::string::String;
        if self.k == 1 {
            return format!("{}", a.0);
        }
        let d = self.digits(a);
        let mut parts: alloc::vec::Vec<String> = alloc::vec::Vec::new();
        for i in (0..self.k as usize).rev() {
            let c = d[i];
            if c == 0 {
                continue;
            }
            let part = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => String::from(generator_name),
                (1, c) => format!("{c}*{generator_name}"),
                (i, 1) => format!("{generator_name}^{i}"),
                (i, c) => format!("{c}*{generator_name}^{i}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            String::from("0")
        } else {
            parts.join(" + ")
        }
    }
}
