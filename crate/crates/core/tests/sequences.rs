mod common;

use bfglm_core::{
    berlekamp_massey, laurent_expand, power_projection, power_projections, scalar_numerator_direct, transposed_product,
    Poly, Rng, ScalarSeq,
};
use common::{field, naive_mul, naive_power_projection, naive_rem};

#[test]
fn fibonacci_numerator() {
    let f = field(101);
    let fib = ScalarSeq::new(f, vec![1, 1, 2, 3, 5, 8, 13, 21]);
    let p = berlekamp_massey(&fib, 4);
    assert_eq!(p, Poly::from_i64s(f, &[-1, -1, 1]));
    assert_eq!(scalar_numerator_direct(&fib, &p).unwrap(), Poly::t(f));
}

#[test]
fn berlekamp_massey_finds_planted_recurrences() {
    let f = field(65537);
    let mut rng = Rng::new(21);
    for d in 1..30 {
        let mut c = rng.elems(&f, d);
        c.push(1);
        let p = Poly::from_coeffs(f, c);
        // terms of a generic element of K[T]/P under a generic projection
        let s = laurent_expand(&Poly::from_coeffs(f, rng.elems(&f, d)), &p, 2 * d).unwrap();
        let found = berlekamp_massey(&s, d);
        assert!(s.is_cancelled_by(&found));
        assert!(found.degree().unwrap() <= d);
        // minimal unless the random numerator shares a factor with p
        if found.degree() == Some(d) {
            assert_eq!(found, p);
        }
    }
}

#[test]
fn laurent_expansion_round_trip() {
    let f = field(101);
    let mut rng = Rng::new(2);
    for d in 1..12 {
        let mut c = rng.elems(&f, d);
        c.push(1);
        let p = Poly::from_coeffs(f, c);
        let a = Poly::from_coeffs(f, rng.elems(&f, d));
        let s = laurent_expand(&a, &p, 3 * d).unwrap();
        assert!(s.is_cancelled_by(&p));
        assert_eq!(scalar_numerator_direct(&s, &p).unwrap(), a);
    }
}

#[test]
fn power_projection_matches_naive_powers() {
    let f = field(65537);
    let mut rng = Rng::new(31);
    for case in 0..50 {
        let r = 1 + rng.below(64);
        let t = 1 + rng.below(256);
        let mut fp = rng.elems(&f, r);
        fp.push(1 + rng.below(100) as u64);
        let h = rng.elems(&f, r);
        let ell = rng.elems(&f, r);
        let want = naive_power_projection(&f, &fp, &h, &ell, t);
        let got = power_projection(&Poly::from_coeffs(f, fp.clone()), &Poly::from_coeffs(f, h), &ell, t).unwrap();
        assert_eq!(got.terms(), &want[..], "case {case}: deg F = {r}, t = {t}");
    }
}

#[test]
fn batched_projections_agree_with_single_ones() {
    let f = field(101);
    let mut rng = Rng::new(4);
    let mut fp = rng.elems(&f, 20);
    fp.push(1);
    let fp = Poly::from_coeffs(f, fp);
    let h = Poly::from_coeffs(f, rng.elems(&f, 20));
    let forms: Vec<Vec<u64>> = (0..4).map(|_| rng.elems(&f, 20)).collect();
    let all = power_projections(&fp, &h, &forms, 45).unwrap();
    for (form, seq) in forms.iter().zip(&all) {
        assert_eq!(seq, &power_projection(&fp, &h, form, 45).unwrap());
    }
    assert!(power_projections(&fp, &h, &[], 5).unwrap().is_empty());
}

#[test]
fn transposed_product_matches_definition() {
    let f = field(65537);
    let mut rng = Rng::new(8);
    for r in 1..25 {
        let mut fp = rng.elems(&f, r);
        fp.push(1);
        let g = rng.elems(&f, r + 3);
        let ell = rng.elems(&f, r);
        let got = transposed_product(
            &Poly::from_coeffs(f, fp.clone()),
            &Poly::from_coeffs(f, g.clone()),
            &ell,
        )
        .unwrap();
        for (i, &gi) in got.iter().enumerate() {
            let mut mono = vec![0; i + 1];
            mono[i] = 1;
            let x = naive_rem(&f, &naive_mul(&f, &g, &mono), &fp);
            let want = x.iter().zip(&ell).fold(0, |s, (&a, &b)| f.add(s, f.mul(a, b)));
            assert_eq!(gi, want);
        }
    }
}

#[test]
fn projection_errors() {
    let f = field(101);
    let fp = Poly::from_coeffs(f, vec![1, 0, 1]);
    assert!(power_projection(&fp, &Poly::t(f), &[1], 4).is_err());
    assert!(power_projection(&fp, &Poly::from_coeffs(f, vec![0, 0, 0, 1]), &[1, 2], 4).is_err());
}
