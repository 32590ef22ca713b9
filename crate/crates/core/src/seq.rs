//! Scalar linearly recurrent sequences: minimal polynomials, numerators,
//! Laurent expansions and power projections.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};
use crate::poly::{mul_slices, Poly};

/// Finite prefix `(l_0, l_1, ...)` of a sequence over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeq {
    f: Modulus,
    terms: Vec<FieldElem>,
}

impl ScalarSeq {
    pub fn new(f: Modulus, mut terms: Vec<FieldElem>) -> Self {
        for x in terms.iter_mut() {
            *x = f.elem(*x);
        }
        ScalarSeq { f, terms }
    }

    pub fn from_i64s(f: Modulus, terms: &[i64]) -> Self {
        ScalarSeq {
            f,
            terms: terms.iter().map(|&x| f.from_i64(x)).collect(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.f
    }
    pub fn terms(&self) -> &[FieldElem] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn into_terms(self) -> Vec<FieldElem> {
        self.terms
    }

    /// True if `p` cancels every window of the prefix it fits in.
    pub fn is_cancelled_by(&self, p: &Poly) -> bool {
        let Some(d) = p.degree() else {
            return false;
        };
        let f = self.f;
        (0..self.terms.len().saturating_sub(d)).all(|s| f.dot(p.coeffs(), &self.terms[s..s + d + 1]) == 0)
    }
}

/// Classic Berlekamp-Massey on the first `2 * bound` terms (or all of them
/// if fewer are supplied). Returns the monic generator of that prefix; it is
/// the minimal polynomial of the infinite sequence only when the true order
/// is at most `bound` and `2 * bound` terms are present.
pub fn berlekamp_massey(seq: &ScalarSeq, bound: usize) -> Poly {
    let f = seq.f;
    let n = seq.terms.len().min(2 * bound);
    let s = &seq.terms[..n];
    // connection polynomial c(x) = 1 + c_1 x + ... + c_L x^L
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u64;
    for i in 0..n {
        let mut acc = f.acc();
        for j in 0..=l.min(c.len() - 1) {
            acc.add_prod(c[j], s[i - j]);
        }
        let disc = acc.value();
        if disc == 0 {
            m += 1;
            continue;
        }
        let coef = f.mul(disc, f.inv(bd).expect("nonzero"));
        let old = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + m] = f.sub(c[j + m], f.mul(coef, bj));
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = old;
            bd = disc;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, 0);
    // P(T) = T^L c(1/T)
    c.reverse();
    Poly::from_coeffs(f, c)
}

/// Numerator `(P * sum_{s<d} l_{d-1-s} T^s) div T^d` with `d = deg P`.
pub fn scalar_numerator_direct(seq: &ScalarSeq, p: &Poly) -> Result<Poly> {
    let f = seq.f;
    let d = p
        .degree()
        .ok_or_else(|| Error::invalid("numerator with respect to the zero polynomial"))?;
    if seq.len() < d {
        return Err(Error::InsufficientTerms {
            needed: d,
            got: seq.len(),
        });
    }
    let rev: Vec<FieldElem> = seq.terms[..d].iter().rev().copied().collect();
    Ok(p.mul(&Poly::from_coeffs(f, rev)).shift_down(d))
}

/// First `k` coefficients `v_s` of `A/F = sum_s v_s / T^(s+1)`.
pub fn laurent_expand(a: &Poly, fp: &Poly, k: usize) -> Result<ScalarSeq> {
    let f = fp.modulus();
    let n = fp.degree().ok_or(Error::DivisionByZero)?;
    if a.len() > n {
        return Err(Error::invalid("Laurent expansion needs deg A < deg F"));
    }
    if n == 0 || k == 0 {
        return Ok(ScalarSeq::new(f, vec![0; k]));
    }
    let ar = a.reverse(n - 1);
    let fr = fp.reverse(n);
    let inv = fr.series_inv(k)?;
    let v = ar.mul_trunc(&inv, k);
    let mut terms = v.into_coeffs();
    terms.resize(k, 0);
    Ok(ScalarSeq { f, terms })
}

/// Reference power projection: `l(H^s mod F)` for `s < t` by repeated
/// modular multiplication.
pub fn power_projection_naive(fp: &Poly, h: &Poly, ell: &[FieldElem], t: usize) -> Result<ScalarSeq> {
    let f = fp.modulus();
    let r = check_projection_args(fp, h, ell)?;
    let mut out = Vec::with_capacity(t);
    if r == 0 {
        return Ok(ScalarSeq::new(f, vec![0; t]));
    }
    let hm = h.rem(fp)?;
    let mut cur = Poly::one(f).rem(fp)?;
    for _ in 0..t {
        out.push(f.dot(cur.coeffs(), ell));
        cur = cur.mul_mod(&hm, fp)?;
    }
    Ok(ScalarSeq { f, terms: out })
}

fn check_projection_args(fp: &Poly, h: &Poly, ell: &[FieldElem]) -> Result<usize> {
    let r = fp.degree().ok_or(Error::DivisionByZero)?;
    if ell.len() != r {
        return Err(Error::shape("linear form must have deg F entries"));
    }
    if h.len() > r && r > 0 {
        return Err(Error::invalid("power projection needs deg H < deg F"));
    }
    Ok(r)
}

/// Linear form on K[T]/F given by its values on `1, T, ..., T^(r-1)`,
/// with the precomputations needed for transposed products.
struct DualForm<'a> {
    f: Modulus,
    fp: &'a Poly,
    r: usize,
    /// series inverse of the reversal of F, to precision 2r - 1
    rev_inv: Poly,
}

impl<'a> DualForm<'a> {
    fn new(fp: &'a Poly) -> Result<Self> {
        let r = fp.degree().expect("nonzero");
        let rev_inv = fp.reverse(r).series_inv(2 * r - 1)?;
        Ok(DualForm {
            f: fp.modulus(),
            fp,
            r,
            rev_inv,
        })
    }

    /// Values of `ell` on `T^i` for `i < 2r - 1`.
    fn extend(&self, ell: &[FieldElem]) -> Vec<FieldElem> {
        let r = self.r;
        // numerator N of sum ell(T^i)/T^(i+1) = N/F
        let rev: Vec<FieldElem> = ell.iter().rev().copied().collect();
        let num = self.fp.mul(&Poly::from_coeffs(self.f, rev)).shift_down(r);
        // Laurent expansion of N/F to 2r - 1 terms
        let k = 2 * r - 1;
        let ar = num.reverse(r - 1);
        let mut v = ar.mul_trunc(&self.rev_inv, k).into_coeffs();
        v.resize(k, 0);
        v
    }

    /// The form `x -> ell(g * x mod F)`.
    fn transposed_mul(&self, ell: &[FieldElem], g: &Poly) -> Vec<FieldElem> {
        let r = self.r;
        let e = self.extend(ell);
        let mut grev = vec![0; r];
        for (j, &c) in g.coeffs().iter().enumerate() {
            grev[r - 1 - j] = c;
        }
        if g.is_zero() {
            return vec![0; r];
        }
        // out_i = sum_j g_j e_(i+j): coefficient r-1+i of rev(g) * e
        let prod = mul_slices(&self.f, &grev, &e);
        (0..r).map(|i| prod.get(r - 1 + i).copied().unwrap_or(0)).collect()
    }
}

/// The linear form `x -> l(g x mod F)` on K[T]/F, from the values of `l`
/// on `1, T, ..., T^(deg F - 1)`.
pub fn transposed_product(fp: &Poly, g: &Poly, ell: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let r = check_projection_args(fp, &Poly::zero(fp.modulus()), ell)?;
    if r == 0 {
        return Ok(Vec::new());
    }
    let fm = fp.monic();
    let g = g.rem(&fm)?;
    DualForm::new(&fm).map(|d| d.transposed_mul(ell, &g))
}

/// `l(H^s mod F)` for `s < t`, where `ell` holds `l(T^i)` for `i < deg F`.
///
/// Baby-step giant-step with transposed modular products when `t <= deg F`;
/// beyond that, the first `2 deg F` values determine a recurrence that is
/// unrolled.
pub fn power_projection(fp: &Poly, h: &Poly, ell: &[FieldElem], t: usize) -> Result<ScalarSeq> {
    power_projections(fp, h, &[ell.to_vec()], t).map(|mut v| v.pop().expect("one form"))
}

/// [`power_projection`] for several forms at once, sharing the baby steps.
pub fn power_projections(fp: &Poly, h: &Poly, ells: &[Vec<FieldElem>], t: usize) -> Result<Vec<ScalarSeq>> {
    let f = fp.modulus();
    if ells.is_empty() {
        return Ok(Vec::new());
    }
    let mut r = 0;
    for ell in ells {
        r = check_projection_args(fp, h, ell)?;
    }
    if r == 0 || t == 0 {
        return Ok(ells.iter().map(|_| ScalarSeq::new(f, vec![0; t])).collect());
    }
    let fm = fp.monic();
    let h = h.rem(&fm)?;
    let head = bsgs_projections(&fm, &h, ells, t.min(2 * r))?;
    if t <= 2 * r {
        return Ok(head);
    }
    Ok(head
        .into_iter()
        .map(|head| {
            let p = berlekamp_massey(&head, r);
            let d = p.degree().unwrap_or(0);
            let mut terms = head.into_terms();
            let tail: Vec<FieldElem> = p.coeffs()[..d].iter().map(|&c| f.neg(c)).collect();
            while terms.len() < t {
                let s = terms.len() - d;
                terms.push(f.dot(&tail, &terms[s..s + d]));
            }
            ScalarSeq { f, terms }
        })
        .collect())
}

fn bsgs_projections(fm: &Poly, h: &Poly, ells: &[Vec<FieldElem>], t: usize) -> Result<Vec<ScalarSeq>> {
    let f = fm.modulus();
    let dual = DualForm::new(fm)?;
    let r = dual.r;
    // more baby steps when several forms share them
    let prod = t * ells.len().max(1);
    let mut k = prod.isqrt();
    if k * k < prod {
        k += 1;
    }
    let k = k.clamp(1, t.max(1));
    let mut baby: Vec<Vec<FieldElem>> = Vec::with_capacity(k);
    let mut cur = Poly::one(f);
    for _ in 0..k {
        let mut v = cur.coeffs().to_vec();
        v.resize(r, 0);
        baby.push(v);
        cur = cur.mul_mod(h, fm)?;
    }
    let giant = cur;
    let mut seqs = Vec::with_capacity(ells.len());
    for ell in ells {
        let mut out = Vec::with_capacity(t);
        let mut form = ell.clone();
        'outer: loop {
            for b in &baby {
                if out.len() == t {
                    break 'outer;
                }
                out.push(f.dot(&form, b));
            }
            if out.len() == t {
                break;
            }
            form = dual.transposed_mul(&form, &giant);
        }
        seqs.push(ScalarSeq { f, terms: out });
    }
    Ok(seqs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::P101;
    use crate::rng::Rng;

    fn f101() -> Modulus {
        Modulus::new(P101).unwrap()
    }

    #[test]
    fn fibonacci() {
        let f = f101();
        let fib = ScalarSeq::new(f, vec![1, 1, 2, 3, 5, 8]);
        let p = berlekamp_massey(&fib, 2);
        assert_eq!(p, Poly::from_i64s(f, &[-1, -1, 1]));
        assert_eq!(scalar_numerator_direct(&fib, &p).unwrap(), Poly::t(f));
        let back = laurent_expand(&Poly::t(f), &p, 8).unwrap();
        assert_eq!(back.terms(), &[1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn constant_and_zero_sequences() {
        let f = f101();
        let c = ScalarSeq::new(f, vec![7; 4]);
        assert_eq!(berlekamp_massey(&c, 1), Poly::from_i64s(f, &[-1, 1]));
        let z = ScalarSeq::new(f, vec![0; 6]);
        let p = Poly::from_roots(f, &[2, 3]);
        assert!(scalar_numerator_direct(&z, &p).unwrap().is_zero());
        assert!(berlekamp_massey(&z, 3).is_one());
    }

    #[test]
    fn two_point_sequence() {
        let f = f101();
        let terms: Vec<u64> = (0..4).map(|s| f.add(17, f.mul(33, f.pow(3, s)))).collect();
        let seq = ScalarSeq::new(f, terms);
        let p = berlekamp_massey(&seq, 2);
        assert_eq!(p, Poly::from_roots(f, &[1, 3]));
        assert_eq!(p, Poly::from_coeffs(f, vec![3, 97, 1]));
        let num = scalar_numerator_direct(&seq, &p).unwrap();
        assert_eq!(num, Poly::from_coeffs(f, vec![17, 50]));
        let back = laurent_expand(&num, &p, 6).unwrap();
        let expect: Vec<u64> = (0..6).map(|s| f.add(17, f.mul(33, f.pow(3, s)))).collect();
        assert_eq!(back.terms(), &expect[..]);
        assert_eq!(&back.terms()[..2], &[50, 15]);
    }

    #[test]
    fn laurent_monomial_and_guard() {
        let f = f101();
        let v = laurent_expand(&Poly::one(f), &Poly::t(f), 4).unwrap();
        assert_eq!(v.terms(), &[1, 0, 0, 0]);
        assert!(laurent_expand(&Poly::t(f), &Poly::t(f), 3).is_err());
    }

    #[test]
    fn projection_matches_naive() {
        let f = f101();
        let mut rng = Rng::new(21);
        for &(deg, t) in &[(8usize, 32usize), (5, 3), (12, 12), (1, 7)] {
            let mut c = rng.elems(&f, deg);
            c.push(1 + rng.below(100) as u64);
            let fp = Poly::from_coeffs(f, c);
            let h = Poly::from_coeffs(f, rng.elems(&f, deg));
            let ell = rng.elems(&f, deg);
            let fast = power_projection(&fp, &h, &ell, t).unwrap();
            let slow = power_projection_naive(&fp, &h, &ell, t).unwrap();
            assert_eq!(fast, slow, "deg {deg}, t {t}");
        }
    }

    #[test]
    fn projection_trivial_cases() {
        let f = f101();
        let fp = Poly::from_roots(f, &[1, 2, 3, 4]);
        let ell = vec![5, 6, 7, 8];
        let v = power_projection(&fp, &Poly::t(f), &ell, 4).unwrap();
        assert_eq!(v.terms(), &[5, 6, 7, 8]);
        let z = power_projection(&fp, &Poly::zero(f), &ell, 3).unwrap();
        assert_eq!(z.terms(), &[5, 0, 0]);
    }
}
