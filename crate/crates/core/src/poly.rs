//! Dense univariate polynomials over the prime field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};

const KARATSUBA_CUTOFF: usize = 32;
/// Divisor and quotient sizes above which division uses a series inverse.
const FAST_DIV_CUTOFF: usize = 48;

/// Polynomial with coefficients lowest degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    f: Modulus,
    c: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (k, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (k, a) {
                (0, _) => write!(out, "{a}")?,
                (1, 1) => write!(out, "T")?,
                (1, _) => write!(out, "{a}*T")?,
                (_, 1) => write!(out, "T^{k}")?,
                _ => write!(out, "{a}*T^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(f: Modulus) -> Self {
        Poly { f, c: Vec::new() }
    }

    pub fn one(f: Modulus) -> Self {
        Self::constant(f, 1)
    }

    pub fn constant(f: Modulus, a: FieldElem) -> Self {
        Self::from_coeffs(f, vec![a])
    }

    /// The variable `T`.
    pub fn t(f: Modulus) -> Self {
        Self::from_coeffs(f, vec![0, 1])
    }

    /// `a * T^k`
    pub fn monomial(f: Modulus, a: FieldElem, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = a;
        Self::from_coeffs(f, c)
    }

    /// Coefficients lowest degree first; reduced and trimmed.
    pub fn from_coeffs(f: Modulus, mut c: Vec<FieldElem>) -> Self {
        for x in c.iter_mut() {
            *x = f.elem(*x);
        }
        let mut p = Poly { f, c };
        p.trim();
        p
    }

    pub fn from_i64s(f: Modulus, c: &[i64]) -> Self {
        Self::from_coeffs(f, c.iter().map(|&x| f.from_i64(x)).collect())
    }

    /// `prod (T - r)` over the given roots.
    pub fn from_roots(f: Modulus, roots: &[FieldElem]) -> Self {
        let mut p = Self::one(f);
        for &r in roots {
            p = p.mul(&Self::from_coeffs(f, vec![f.neg(f.elem(r)), 1]));
        }
        p
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.f
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.c
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg_i64(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    /// Number of stored coefficients, i.e. degree + 1.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == 1
    }

    pub fn coeff(&self, k: usize) -> FieldElem {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> FieldElem {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|k| self.f.add(self.coeff(k), other.coeff(k))).collect();
        Self::from_coeffs(self.f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n).map(|k| self.f.sub(self.coeff(k), other.coeff(k))).collect();
        Self::from_coeffs(self.f, c)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            f: self.f,
            c: self.c.iter().map(|&a| self.f.neg(a)).collect(),
        }
    }

    pub fn scale(&self, a: FieldElem) -> Poly {
        let a = self.f.elem(a);
        Self::from_coeffs(self.f, self.c.iter().map(|&x| self.f.mul(x, a)).collect())
    }

    /// `self += a * T^k * other`
    pub fn add_scaled_shifted(&mut self, other: &Poly, a: FieldElem, k: usize) {
        if other.is_zero() || a == 0 {
            return;
        }
        let need = other.c.len() + k;
        if self.c.len() < need {
            self.c.resize(need, 0);
        }
        let f = self.f;
        for (j, &b) in other.c.iter().enumerate() {
            self.c[j + k] = f.mul_add(self.c[j + k], a, b);
        }
        self.trim();
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.f);
        }
        Poly::from_coeffs(self.f, mul_slices(&self.f, &self.c, &other.c))
    }

    /// Product truncated mod `T^n`.
    pub fn mul_trunc(&self, other: &Poly, n: usize) -> Poly {
        let a = &self.c[..self.c.len().min(n)];
        let b = &other.c[..other.c.len().min(n)];
        if a.is_empty() || b.is_empty() {
            return Self::zero(self.f);
        }
        let mut c = mul_slices(&self.f, a, b);
        c.truncate(n);
        Poly::from_coeffs(self.f, c)
    }

    /// `self * T^k`
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly { f: self.f, c }
    }

    /// Quotient by `T^k`.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k >= self.c.len() {
            return Self::zero(self.f);
        }
        Poly {
            f: self.f,
            c: self.c[k..].to_vec(),
        }
    }

    /// Remainder mod `T^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.f, self.c[..self.c.len().min(n)].to_vec())
    }

    /// Coefficients of degree `lo..hi` as a polynomial.
    pub fn slice(&self, lo: usize, hi: usize) -> Poly {
        let hi = hi.min(self.c.len());
        if lo >= hi {
            return Self::zero(self.f);
        }
        Poly::from_coeffs(self.f, self.c[lo..hi].to_vec())
    }

    /// `T^n * self(1/T)`; requires `n >= deg`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut c = vec![0; n + 1];
        for (k, &a) in self.c.iter().enumerate() {
            assert!(k <= n, "reverse length below degree");
            c[n - k] = a;
        }
        Poly::from_coeffs(self.f, c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.f.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn quo_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < d.c.len() {
            return Ok((Self::zero(self.f), self.clone()));
        }
        let f = self.f;
        let dn = d.c.len() - 1;
        let qn = self.c.len() - dn;
        if dn >= FAST_DIV_CUTOFF && qn >= FAST_DIV_CUTOFF {
            // quotient from the reversed series: rev(q) = rev(a) / rev(d) mod T^qn
            let a_rev = self.reverse(self.c.len() - 1).truncate(qn);
            let d_rev = d.reverse(dn).series_inv(qn)?;
            let q = a_rev.mul_trunc(&d_rev, qn).reverse(qn - 1);
            let r = self.sub(&q.mul(d)).truncate(dn);
            return Ok((q, r));
        }
        let inv = f.inv(d.lead())?;
        let mut r = self.c.clone();
        let mut q = vec![0; self.c.len() - dn];
        for k in (0..q.len()).rev() {
            let a = f.mul(r[k + dn], inv);
            q[k] = a;
            if a != 0 {
                let na = f.neg(a);
                for (j, &b) in d.c.iter().enumerate() {
                    r[k + j] = f.mul_add(r[k + j], na, b);
                }
            }
        }
        r.truncate(dn);
        Ok((Poly::from_coeffs(f, q), Poly::from_coeffs(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.quo_rem(d)?.1)
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.quo_rem(d)?;
        if !r.is_zero() {
            return Err(Error::invalid("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(other).rem(m)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `g = u*self + v*other`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.f;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Self::one(f), Self::zero(f));
        let (mut v0, mut v1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.quo_rem(&r1).expect("nonzero divisor");
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = core::mem::replace(&mut r1, r);
            u0 = core::mem::replace(&mut u1, u);
            v0 = core::mem::replace(&mut v1, v);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero");
        (r0.scale(inv), u0.scale(inv), v0.scale(inv))
    }

    /// Inverse of `self` modulo `m`.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = self.rem(m)?;
        let (g, u, _) = a.ext_gcd(m);
        if !g.is_one() {
            return Err(Error::NotInvertible {
                gcd: if g.is_zero() { m.monic() } else { g },
            });
        }
        u.rem(m)
    }

    /// `self / other mod m`.
    pub fn div_mod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul_mod(&other.inv_mod(m)?, m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(self.f).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m)?;
            }
            base = base.mul_mod(&base, m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let x = self.f.elem(x);
        self.c.iter().rev().fold(0, |acc, &a| self.f.mul_add(a, acc, x))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.f;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| f.mul(a, f.elem(k as u64)))
            .collect();
        Poly::from_coeffs(f, c)
    }

    /// Power series inverse mod `T^n`, by Newton iteration.
    pub fn series_inv(&self, n: usize) -> Result<Poly> {
        let f = self.f;
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut g = Self::constant(f, f.inv(c0)?);
        let mut prec = 1;
        while prec < n {
            prec = (2 * prec).min(n);
            // g <- g * (2 - self * g)
            let e = self.mul_trunc(&g, prec);
            let two_minus = Self::constant(f, 2).sub(&e);
            g = g.mul_trunc(&two_minus, prec);
        }
        Ok(g.truncate(n))
    }

    /// `self(T + a)`.
    pub fn taylor_shift(&self, a: FieldElem) -> Poly {
        let f = self.f;
        let a = f.elem(a);
        if a == 0 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = f.mul_add(c[j], a, c[j + 1]);
            }
        }
        Poly::from_coeffs(f, c)
    }

    /// Squarefree part `P / gcd(P, P')`, made monic.
    ///
    /// Correct as long as the degree is below the characteristic.
    pub fn squarefree_part(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::invalid("squarefree part of the zero polynomial"));
        }
        if self.c.len() as u64 > self.f.p() {
            return Err(Error::invalid("degree must be below the characteristic"));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_exact(&g)?.monic())
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_one()
    }

    /// Chinese remaindering: the unique `r` with `deg r < deg(q1 q2)`,
    /// `r = a1 mod q1`, `r = a2 mod q2`.
    pub fn crt_pair(a1: &Poly, q1: &Poly, a2: &Poly, q2: &Poly) -> Result<Poly> {
        if q1.is_zero() || q2.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = match q1.inv_mod(q2) {
            Ok(v) => v,
            Err(Error::NotInvertible { .. }) => return Err(Error::NotCoprime),
            Err(e) => return Err(e),
        };
        // r = a1 + q1 * ((a2 - a1) / q1 mod q2)
        let a1 = a1.rem(q1)?;
        let k = a2.sub(&a1).mul_mod(&inv, q2)?;
        Ok(a1.add(&q1.mul(&k)))
    }

    /// Padé approximation: given the series `self mod T^n`, finds `(num, den)`
    /// with `den(0) != 0`, `deg num < num_bound`, `deg den <= den_bound` and
    /// `num = den * self mod T^n`. `den` is returned monic.
    pub fn rational_reconstruct(&self, n: usize, num_bound: usize, den_bound: usize) -> Option<(Poly, Poly)> {
        let f = self.f;
        let (mut r0, mut r1) = (Self::monomial(f, 1, n), self.truncate(n));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while r1.len() > num_bound {
            let (q, r) = r0.quo_rem(&r1).ok()?;
            let t = t0.sub(&q.mul(&t1));
            r0 = core::mem::replace(&mut r1, r);
            t0 = core::mem::replace(&mut t1, t);
        }
        let (num, den) = (r1, t1);
        if den.is_zero() || den.coeff(0) == 0 || den.len() > den_bound + 1 {
            return None;
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).ok()?, den.div_exact(&g).ok()?)
        };
        let inv = f.inv(den.lead()).ok()?;
        Some((num.scale(inv), den.scale(inv)))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.f);
        }
        let g = self.gcd(other);
        self.mul(&other.div_exact(&g).expect("gcd divides")).monic()
    }
}

/// Full product of two nonempty coefficient slices.
pub(crate) fn mul_slices(f: &Modulus, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_CUTOFF {
        return schoolbook(f, a, b);
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    // chop the longer operand into pieces of the shorter length
    for (ci, chunk) in a.chunks(b.len()).enumerate() {
        let part = karatsuba(f, chunk, b);
        let off = ci * b.len();
        for (k, &v) in part.iter().enumerate() {
            out[off + k] = f.add(out[off + k], v);
        }
    }
    out
}

fn schoolbook(f: &Modulus, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let n = a.len() + b.len() - 1;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc = f.acc();
        for i in lo..=hi {
            acc.add_prod(a[i], b[k - i]);
        }
        out.push(acc.value());
    }
    out
}

fn karatsuba(f: &Modulus, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(f, a, b);
    }
    if a.len() != b.len() {
        return mul_slices(f, a, b);
    }
    let n = a.len();
    let h = n / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let sa = add_slices(f, a0, a1);
    let sb = add_slices(f, b0, b1);
    let z1 = karatsuba(f, &sa, &sb);
    let mut out = vec![0; 2 * n - 1];
    for (k, &v) in z0.iter().enumerate() {
        out[k] = f.add(out[k], v);
        out[k + h] = f.sub(out[k + h], v);
    }
    for (k, &v) in z2.iter().enumerate() {
        out[k + 2 * h] = f.add(out[k + 2 * h], v);
        out[k + h] = f.sub(out[k + h], v);
    }
    for (k, &v) in z1.iter().enumerate() {
        out[k + h] = f.add(out[k + h], v);
    }
    out
}

fn add_slices(f: &Modulus, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| f.add(a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{P101, P65537};
    use crate::rng::Rng;

    fn f101() -> Modulus {
        Modulus::new(P101).unwrap()
    }

    fn random_poly(rng: &mut Rng, f: &Modulus, len: usize) -> Poly {
        Poly::from_coeffs(*f, rng.elems(f, len))
    }

    #[test]
    fn large_division_identity() {
        let f = Modulus::new(crate::field::P65537).unwrap();
        let mut rng = crate::rng::Rng::new(77);
        for &(na, nd) in &[(300usize, 120usize), (500, 60), (200, 199), (97, 49)] {
            let a = Poly::from_coeffs(f, rng.elems(&f, na));
            let d = Poly::from_coeffs(f, rng.elems(&f, nd));
            let (q, r) = a.quo_rem(&d).unwrap();
            assert!(r.len() < d.len());
            assert_eq!(q.mul(&d).add(&r), a);
        }
    }

    #[test]
    fn gcd_example() {
        let f = f101();
        // (T-1)(T-3) has no root at 2
        let a = Poly::from_i64s(f, &[3, -4, 1]);
        let b = Poly::from_i64s(f, &[-4, 2]);
        assert!(a.gcd(&b).is_one());
        let a = Poly::from_i64s(f, &[2, -3, 1]);
        assert_eq!(a.gcd(&b), Poly::from_coeffs(f, vec![99, 1]));
    }

    #[test]
    fn mul_by_one_and_eval() {
        let f = f101();
        let q = Poly::from_coeffs(f, vec![61, 8, 1]);
        assert_eq!(q.mul(&Poly::one(f)), q);
        assert_eq!(q.eval(33), 0);
        assert_eq!(q.eval(60), 0);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = Modulus::new(P65537).unwrap();
        let mut rng = Rng::new(11);
        for &(la, lb) in &[(40, 40), (100, 37), (257, 64), (33, 200)] {
            let a = rng.elems(&f, la);
            let b = rng.elems(&f, lb);
            assert_eq!(mul_slices(&f, &a, &b), schoolbook(&f, &a, &b));
        }
    }

    #[test]
    fn quo_rem_identity() {
        let f = f101();
        let mut rng = Rng::new(2);
        for _ in 0..50 {
            let a = random_poly(&mut rng, &f, 12);
            let mut b = random_poly(&mut rng, &f, 5);
            if b.is_zero() {
                b = Poly::one(f);
            }
            let (q, r) = a.quo_rem(&b).unwrap();
            assert_eq!(q.mul(&b).add(&r), a);
            assert!(r.len() < b.len());
        }
        assert_eq!(Poly::one(f).quo_rem(&Poly::zero(f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn modular_inverse_and_failure() {
        let f = f101();
        let m = Poly::from_coeffs(f, vec![61, 8, 1]);
        let a = Poly::from_coeffs(f, vec![3, 7]);
        let inv = a.inv_mod(&m).unwrap();
        assert!(a.mul_mod(&inv, &m).unwrap().is_one());
        let shared = Poly::from_roots(f, &[33]);
        match shared.inv_mod(&m) {
            Err(Error::NotInvertible { gcd }) => assert_eq!(gcd, shared),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn squarefree_examples() {
        let f = f101();
        let p = Poly::from_coeffs(f, vec![7, 100, 76, 1]);
        assert_eq!(p.squarefree_part().unwrap(), Poly::from_coeffs(f, vec![61, 8, 1]));
        let q = Poly::from_coeffs(f, vec![61, 8, 1]);
        assert_eq!(q.squarefree_part().unwrap(), q);
        let cube = Poly::from_roots(f, &[5, 5, 5]);
        assert_eq!(cube.squarefree_part().unwrap(), Poly::from_roots(f, &[5]));
        assert!(Poly::zero(f).squarefree_part().is_err());
    }

    #[test]
    fn crt_examples() {
        let f = f101();
        let c = Poly::constant(f, 9);
        let q1 = Poly::from_roots(f, &[1]);
        let q2 = Poly::from_roots(f, &[2]);
        assert_eq!(Poly::crt_pair(&c, &q1, &c, &q2).unwrap(), c);
        let r = Poly::crt_pair(&Poly::zero(f), &q1, &Poly::one(f), &q2).unwrap();
        assert_eq!((r.eval(1), r.eval(2)), (0, 1));
        assert_eq!(r, Poly::from_i64s(f, &[-1, 1]));
        assert_eq!(Poly::crt_pair(&c, &q1, &c, &q1), Err(Error::NotCoprime));

        let mut rng = Rng::new(4);
        let q1 = Poly::from_roots(f, &[3, 4, 9]);
        let q2 = Poly::from_roots(f, &[10, 20]);
        let a1 = random_poly(&mut rng, &f, 3);
        let a2 = random_poly(&mut rng, &f, 2);
        let r = Poly::crt_pair(&a1, &q1, &a2, &q2).unwrap();
        assert_eq!(r.rem(&q1).unwrap(), a1);
        assert_eq!(r.rem(&q2).unwrap(), a2);
        assert!(r.len() <= 5);
    }

    #[test]
    fn series_inverse() {
        let f = Modulus::new(P65537).unwrap();
        let mut rng = Rng::new(8);
        let mut a = random_poly(&mut rng, &f, 20);
        a = a.add(&Poly::one(f));
        if a.coeff(0) == 0 {
            a = a.add(&Poly::one(f));
        }
        let inv = a.series_inv(45).unwrap();
        assert!(a.mul_trunc(&inv, 45).is_one());
        assert!(Poly::t(f).series_inv(3).is_err());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = f101();
        let p = Poly::from_coeffs(f, vec![5, 3, 0, 7, 1]);
        let s = p.taylor_shift(13);
        for x in 0..10 {
            assert_eq!(s.eval(x), p.eval(x + 13));
        }
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let f = Modulus::new(P65537).unwrap();
        let num = Poly::from_coeffs(f, vec![4, 9, 2]);
        let den = Poly::from_coeffs(f, vec![3, 1, 5, 1]).monic();
        let s = num.mul_trunc(&den.series_inv(7).unwrap(), 7);
        let (n2, d2) = s.rational_reconstruct(7, 3, 3).unwrap();
        assert_eq!(d2, den);
        let lead = den.lead();
        assert_eq!(n2.scale(lead), num);
    }
}
