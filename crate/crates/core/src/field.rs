//! Arithmetic in the prime field Z/pZ.
//!
//! Elements are plain `u64` values kept in canonical form `[0, p)`; all
//! operations go through a [`Modulus`], which is `Copy` and meant to be
//! passed around by value.

use crate::error::{Error, Result};

/// A field element: canonical representative in `[0, p)`.
pub type FieldElem = u64;

/// The prime used by the worked examples.
pub const P101: u64 = 101;
/// Default prime for generated instances and benchmarks.
pub const P65537: u64 = 65537;

const MAX_BITS: u32 = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    /// Number of products `(p-1)^2` that fit in a `u128` accumulator.
    acc_limit: u32,
    /// Barrett data: `p < 2^k`, `mu = floor(2^(2k) / p)`.
    k: u32,
    mu: u64,
    /// `2^64 mod p`
    r64: u64,
}

impl Modulus {
    /// Builds the modulus after a deterministic primality check.
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1u64 << MAX_BITS) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let sq = ((p - 1) as u128) * ((p - 1) as u128);
        let acc_limit = if sq == 0 {
            u32::MAX
        } else {
            (u128::MAX / sq).min(u32::MAX as u128) as u32
        };
        let k = 64 - p.leading_zeros();
        let mu = ((1u128 << (2 * k)) / p as u128) as u64;
        let r64 = ((1u128 << 64) % p as u128) as u64;
        Ok(Modulus {
            p,
            acc_limit,
            k,
            mu,
            r64,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// How many products of two reduced elements a `u128` can absorb.
    #[inline]
    pub fn acc_limit(&self) -> u32 {
        self.acc_limit
    }

    /// Reduces an arbitrary integer.
    #[inline]
    pub fn elem(&self, x: u64) -> FieldElem {
        x % self.p
    }

    /// Maps a signed integer into the field.
    pub fn from_i64(&self, x: i64) -> FieldElem {
        let r = x.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Barrett reduction, valid for `x < 2^(2k)`.
    #[inline]
    fn barrett(&self, x: u128) -> FieldElem {
        let q = if self.k <= 32 {
            ((x as u64 as u128 * self.mu as u128) >> (2 * self.k)) as u64
        } else {
            let top = (x >> (self.k - 1)) as u64;
            ((top as u128 * self.mu as u128) >> (self.k + 1)) as u64
        };
        // the true remainder is below 3p, so wrapping arithmetic is exact
        let mut r = (x as u64).wrapping_sub(q.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.barrett(a as u128 * b as u128)
    }

    /// `a + b * c`
    #[inline]
    pub fn mul_add(&self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        self.barrett(a as u128 + b as u128 * c as u128)
    }

    #[inline]
    pub fn reduce_wide(&self, x: u128) -> FieldElem {
        if x >> (2 * self.k) == 0 {
            return self.barrett(x);
        }
        let (hi, lo) = ((x >> 64) as u64, x as u64);
        self.mul_add(lo % self.p, hi % self.p, self.r64)
    }

    pub fn pow(&self, mut base: FieldElem, mut exp: u64) -> FieldElem {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Lazy dot-product accumulator for this modulus.
    #[inline]
    pub fn acc(&self) -> Acc {
        Acc {
            sum: 0,
            pending: 0,
            f: *self,
        }
    }

    /// `sum_i a[i] * b[i]` with lazy reduction.
    pub fn dot(&self, a: &[FieldElem], b: &[FieldElem]) -> FieldElem {
        let mut acc = self.acc();
        for (&x, &y) in a.iter().zip(b) {
            acc.add_prod(x, y);
        }
        acc.value()
    }
}

/// Double-word accumulator that reduces only when it could overflow.
#[derive(Clone, Copy, Debug)]
pub struct Acc {
    sum: u128,
    pending: u32,
    f: Modulus,
}

impl Acc {
    #[inline]
    pub fn add_prod(&mut self, a: u64, b: u64) {
        if self.pending + 1 >= self.f.acc_limit {
            self.sum = self.f.reduce_wide(self.sum) as u128;
            self.pending = 0;
        }
        self.sum += a as u128 * b as u128;
        self.pending += 1;
    }

    #[inline]
    pub fn add(&mut self, a: u64) {
        self.add_prod(a, 1);
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.f.reduce_wide(self.sum)
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &SMALL {
        let mut x = powmod(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
