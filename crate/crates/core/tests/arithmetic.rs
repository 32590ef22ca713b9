mod common;

use bfglm_core::{Error, Modulus, Poly};
use common::{field, naive_mul, naive_rem, trim};
use proptest::prelude::*;

fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(101u64), Just(65537), Just(2147483647), Just((1u64 << 61) - 1)]
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), 0..max_len)
}

fn poly(f: Modulus, raw: &[u64]) -> Poly {
    Poly::from_coeffs(f, raw.iter().map(|&x| f.elem(x)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_fermat(p in primes(), a in 1u64..u64::MAX) {
        let f = field(p);
        let a = f.elem(a);
        prop_assume!(a != 0);
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        prop_assert_eq!(f.pow(a, p - 1), 1);
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
    }

    #[test]
    fn product_matches_schoolbook(p in primes(), a in coeffs(160), b in coeffs(160)) {
        let f = field(p);
        let (pa, pb) = (poly(f, &a), poly(f, &b));
        let want = naive_mul(&f, pa.coeffs(), pb.coeffs());
        let got = pa.mul(&pb);
        prop_assert_eq!(got.coeffs(), &want[..]);
    }

    #[test]
    fn division_identity(p in primes(), a in coeffs(220), d in coeffs(120)) {
        let f = field(p);
        let (pa, pd) = (poly(f, &a), poly(f, &d));
        prop_assume!(!pd.is_zero());
        let (q, r) = pa.quo_rem(&pd).unwrap();
        prop_assert!(r.len() < pd.len());
        prop_assert_eq!(q.mul(&pd).add(&r), pa.clone());
        prop_assert_eq!(r.coeffs(), &naive_rem(&f, pa.coeffs(), pd.coeffs())[..]);
    }

    #[test]
    fn bezout_and_inverse(p in primes(), a in coeffs(40), b in coeffs(40)) {
        let f = field(p);
        let (pa, pb) = (poly(f, &a), poly(f, &b));
        prop_assume!(!pa.is_zero() && !pb.is_zero());
        let (g, s, t) = pa.ext_gcd(&pb);
        prop_assert_eq!(s.mul(&pa).add(&t.mul(&pb)), g.clone());
        prop_assert!(pa.rem(&g).unwrap().is_zero() && pb.rem(&g).unwrap().is_zero());
        prop_assert!(g.is_monic());
        if pb.degree().unwrap() > 0 {
            match pa.inv_mod(&pb) {
                Ok(inv) => {
                    prop_assert!(g.is_one());
                    prop_assert!(inv.mul(&pa).sub(&Poly::one(f)).rem(&pb).unwrap().is_zero());
                }
                Err(Error::NotInvertible { gcd }) => prop_assert_eq!(gcd, g),
                Err(e) => prop_assert!(false, "unexpected error {:?}", e),
            }
        }
    }

    #[test]
    fn crt_reconstructs_both_residues(a in coeffs(10), b in coeffs(10), r1 in coeffs(12), r2 in coeffs(12)) {
        let f = field(65537);
        let (q1, q2) = (poly(f, &a).add(&Poly::monomial(f, 1, 10)), poly(f, &b).add(&Poly::monomial(f, 1, 9)));
        prop_assume!(q1.gcd(&q2).is_one());
        let (a1, a2) = (poly(f, &r1).rem(&q1).unwrap(), poly(f, &r2).rem(&q2).unwrap());
        let c = Poly::crt_pair(&a1, &q1, &a2, &q2).unwrap();
        prop_assert!(c.len() <= 19);
        prop_assert_eq!(c.rem(&q1).unwrap(), a1);
        prop_assert_eq!(c.rem(&q2).unwrap(), a2);
    }

    #[test]
    fn squarefree_part_drops_repeated_factors(roots in prop::collection::vec(0u64..101, 1..8)) {
        let f = field(101);
        let p = common::poly_with_roots(f, &roots);
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(p.squarefree_part().unwrap(), common::poly_with_roots(f, &distinct));
        prop_assert_eq!(p.is_squarefree(), distinct.len() == roots.len());
    }

    #[test]
    fn series_inverse_and_taylor_shift(p in primes(), a in coeffs(80), n in 1usize..120, s in any::<u64>()) {
        let f = field(p);
        let pa = poly(f, &a);
        prop_assume!(pa.coeff(0) != 0);
        let inv = pa.series_inv(n).unwrap();
        prop_assert_eq!(pa.mul_trunc(&inv, n), Poly::one(f));
        let s = f.elem(s);
        let shifted = pa.taylor_shift(s);
        prop_assert_eq!(shifted.taylor_shift(f.neg(s)), pa.clone());
        prop_assert_eq!(shifted.eval(0), pa.eval(s));
    }

    #[test]
    fn rational_reconstruction_recovers_fractions(num in coeffs(6), den in coeffs(6)) {
        let f = field(65537);
        let (pn, pd) = (poly(f, &num), poly(f, &den).add(&Poly::one(f)).truncate(6));
        prop_assume!(pd.coeff(0) != 0 && !pn.is_zero());
        let g = pn.gcd(&pd);
        let (pn, pd) = (pn.div_exact(&g).unwrap(), pd.div_exact(&g).unwrap());
        let n = 12;
        let series = pn.mul_trunc(&pd.series_inv(n).unwrap(), n);
        let (rn, rd) = series.rational_reconstruct(n, 6, 6).unwrap();
        prop_assert_eq!(rn.mul(&pd), pn.mul(&rd));
    }
}

#[test]
fn large_operands_use_the_fast_path_correctly() {
    let f = field(65537);
    let mut rng = bfglm_core::Rng::new(11);
    let a = Poly::from_coeffs(f, rng.elems(&f, 700));
    let mut d = rng.elems(&f, 300);
    d.push(1);
    let d = Poly::from_coeffs(f, d);
    let (q, r) = a.quo_rem(&d).unwrap();
    assert_eq!(q.mul(&d).add(&r), a);
    assert_eq!(r.coeffs(), &trim(naive_rem(&f, a.coeffs(), d.coeffs()))[..]);
}

#[test]
fn errors_are_reported() {
    assert_eq!(Modulus::new(100), Err(Error::InvalidModulus(100)));
    let f = field(101);
    assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    assert!(Poly::one(f).quo_rem(&Poly::zero(f)).is_err());
    assert!(Poly::zero(f).series_inv(3).is_err());
}
