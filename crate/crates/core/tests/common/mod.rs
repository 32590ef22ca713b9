//! Naive oracles and small instance builders shared by the integration tests.
#![allow(dead_code)]

use bfglm_core::{DenseMat, FieldElem, Instance, Modulus, Poly, Rng, SparseMat};

pub fn field(p: u64) -> Modulus {
    Modulus::new(p).unwrap()
}

/// Schoolbook product on raw coefficient vectors.
pub fn naive_mul(f: &Modulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Long division remainder; `d` must have a nonzero leading coefficient.
pub fn naive_rem(f: &Modulus, a: &[u64], d: &[u64]) -> Vec<u64> {
    let d = trim(d.to_vec());
    let mut r = trim(a.to_vec());
    let inv = f.inv(*d.last().unwrap()).unwrap();
    while r.len() >= d.len() {
        let c = f.mul(*r.last().unwrap(), inv);
        let off = r.len() - d.len();
        for (k, &x) in d.iter().enumerate() {
            r[off + k] = f.sub(r[off + k], f.mul(c, x));
        }
        r = trim(r);
    }
    r
}

/// `l(H^s mod F)` by repeated naive products.
pub fn naive_power_projection(f: &Modulus, fp: &[u64], h: &[u64], ell: &[u64], t: usize) -> Vec<u64> {
    let mut cur = vec![1];
    let mut out = Vec::with_capacity(t);
    for _ in 0..t {
        out.push(cur.iter().zip(ell).fold(0, |s, (&a, &b)| f.add(s, f.mul(a, b))));
        cur = naive_rem(f, &naive_mul(f, &cur, h), fp);
    }
    out
}

/// Null space of a dense matrix (rows of equations) by Gauss-Jordan.
pub fn nullspace(f: &Modulus, mut a: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(row, p);
        let inv = f.inv(a[row][col]).unwrap();
        for x in a[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != row && a[i][col] != 0 {
                let c = a[i][col];
                let src = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(src) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[r][fc]);
            }
            v
        })
        .collect()
}

/// Local algebra of one point: size 1, or `K[e]/(e^2)` with nilpotent
/// parts `nil` on each coordinate.
#[derive(Clone, Debug)]
pub struct TestPoint {
    pub coords: Vec<u64>,
    pub nil: Option<Vec<u64>>,
}

impl TestPoint {
    pub fn simple(coords: Vec<u64>) -> Self {
        TestPoint { coords, nil: None }
    }
}

/// Multiplication matrices for the given points, hidden by a dense
/// change of basis whose first column is the element 1.
pub fn build_instance(f: Modulus, points: &[TestPoint], rng: &mut Rng) -> Instance {
    let n = points[0].coords.len();
    let dim: usize = points.iter().map(|p| if p.nil.is_some() { 2 } else { 1 }).sum();
    let mut diag = vec![DenseMat::zeros(f, dim, dim); n];
    let mut starts = Vec::new();
    let mut off = 0;
    for p in points {
        starts.push(off);
        for i in 0..n {
            diag[i].set(off, off, p.coords[i]);
            if let Some(c) = &p.nil {
                diag[i].set(off + 1, off + 1, p.coords[i]);
                diag[i].set(off + 1, off, c[i]);
            }
        }
        off += if p.nil.is_some() { 2 } else { 1 };
    }
    // S = (I + E) U with E e_0 the other block starts, U unit upper triangular
    let mut s_low = DenseMat::identity(f, dim);
    for &st in &starts[1..] {
        s_low.set(st, 0, 1);
    }
    let mut up = DenseMat::identity(f, dim);
    for i in 0..dim {
        for j in i + 1..dim {
            if rng.below(3) == 0 {
                up.set(i, j, rng.elem(&f));
            }
        }
    }
    let s = s_low.mul(&up).unwrap();
    let s_inv = s.inverse().unwrap();
    let mats = diag
        .iter()
        .map(|d| SparseMat::from_dense(&s_inv.mul(&d.mul(&s).unwrap()).unwrap()).unwrap())
        .collect();
    Instance::new(mats).unwrap()
}

/// `k` distinct random simple points in `n` variables.
pub fn random_points(f: &Modulus, n: usize, k: usize, rng: &mut Rng) -> Vec<TestPoint> {
    let mut pts: Vec<TestPoint> = Vec::new();
    while pts.len() < k {
        let c = rng.elems(f, n);
        if pts.iter().all(|p| p.coords != c) {
            pts.push(TestPoint::simple(c));
        }
    }
    pts
}

/// The monic polynomial with the given roots, as an independent oracle.
pub fn poly_with_roots(f: Modulus, roots: &[FieldElem]) -> Poly {
    roots.iter().fold(Poly::one(f), |acc, &r| {
        acc.mul(&Poly::from_coeffs(f, vec![f.neg(r), 1]))
    })
}

/// Lagrange interpolation through `(x_j, y_j)`.
pub fn interpolate(f: Modulus, xs: &[u64], ys: &[u64]) -> Poly {
    let mut out = Poly::zero(f);
    for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::one(f);
        let mut den = 1;
        for (k, &xk) in xs.iter().enumerate() {
            if k != j {
                basis = basis.mul(&Poly::from_coeffs(f, vec![f.neg(xk), 1]));
                den = f.mul(den, f.sub(xj, xk));
            }
        }
        out = out.add(&basis.scale(f.mul(yj, f.inv(den).unwrap())));
    }
    out
}
