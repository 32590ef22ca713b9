//! Polynomial matrices: approximant bases, Popov forms, minimal matrix
//! generators, largest invariant factors and quotient rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};
use crate::poly::Poly;
use crate::rng::Rng;

/// Orders below this are handled by the iterative algorithm.
const PMBASIS_CUTOFF: usize = 32;
/// Extra precision doublings attempted before giving up on a lifting.
const LIFT_RETRIES: usize = 4;

/// Dense `rows x cols` matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMat {
    f: Modulus,
    rows: usize,
    cols: usize,
    e: Vec<Poly>,
}

impl PolyMat {
    pub fn zeros(f: Modulus, rows: usize, cols: usize) -> Self {
        PolyMat {
            f,
            rows,
            cols,
            e: vec![Poly::zero(f); rows * cols],
        }
    }

    pub fn identity(f: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.e[i * n + i] = Poly::one(f);
        }
        m
    }

    pub fn from_polys(f: Modulus, rows: usize, cols: usize, e: Vec<Poly>) -> Self {
        assert_eq!(e.len(), rows * cols, "entry count does not match shape");
        PolyMat { f, rows, cols, e }
    }

    /// Entries given as coefficient lists, lowest degree first.
    pub fn from_coeff_rows(f: Modulus, rows: &[&[&[u64]]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut e = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            e.extend(row.iter().map(|cs| Poly::from_coeffs(f, cs.to_vec())));
        }
        PolyMat { f, rows: r, cols: c, e }
    }

    /// Constant matrix.
    pub fn from_dense(m: &DenseMat) -> Self {
        let f = m.modulus();
        let e = m.data().iter().map(|&x| Poly::constant(f, x)).collect();
        PolyMat {
            f,
            rows: m.rows(),
            cols: m.cols(),
            e,
        }
    }

    /// `sum_k C_k T^k`.
    pub fn from_coeff_matrices(f: Modulus, rows: usize, cols: usize, cs: &[DenseMat]) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                e.push(Poly::from_coeffs(f, cs.iter().map(|c| c.get(i, j)).collect()));
            }
        }
        PolyMat { f, rows, cols, e }
    }

    pub fn modulus(&self) -> Modulus {
        self.f
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.e[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.e[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [Poly] {
        &mut self.e[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    /// Row degree, `None` for a zero row.
    pub fn row_degree(&self, i: usize) -> Option<usize> {
        self.row(i).iter().filter_map(|p| p.degree()).max()
    }

    /// Shifted row degree `max_j deg(p_ij) + s_j`, `None` for a zero row.
    pub fn shifted_row_degree(&self, i: usize, shift: &[i64]) -> Option<i64> {
        self.row(i)
            .iter()
            .zip(shift)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, &s)| p.deg_i64() + s)
            .max()
    }

    pub fn degree(&self) -> Option<usize> {
        self.e.iter().filter_map(|p| p.degree()).max()
    }

    /// Coefficient matrix of `T^k`.
    pub fn coeff(&self, k: usize) -> DenseMat {
        let data = self.e.iter().map(|p| p.coeff(k)).collect();
        DenseMat::from_vec(self.f, self.rows, self.cols, data)
    }

    pub fn map(&self, g: impl Fn(&Poly) -> Poly) -> PolyMat {
        PolyMat {
            f: self.f,
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(g).collect(),
        }
    }

    pub fn truncate(&self, n: usize) -> PolyMat {
        self.map(|p| p.truncate(n))
    }

    /// Entrywise quotient by `T^k`.
    pub fn shift_down(&self, k: usize) -> PolyMat {
        self.map(|p| p.shift_down(k))
    }

    /// Entrywise `p(T + a)`.
    pub fn taylor_shift(&self, a: FieldElem) -> PolyMat {
        self.map(|p| p.taylor_shift(a))
    }

    pub fn eval(&self, a: FieldElem) -> DenseMat {
        let data = self.e.iter().map(|p| p.eval(a)).collect();
        DenseMat::from_vec(self.f, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> PolyMat {
        let mut t = Self::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.e[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> PolyMat {
        let mut e = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            for j in c0..c1 {
                e.push(self.get(i, j).clone());
            }
        }
        PolyMat {
            f: self.f,
            rows: r1 - r0,
            cols: c1 - c0,
            e,
        }
    }

    /// Stacks the given rows of `self` in order.
    pub fn select_rows(&self, idx: &[usize]) -> PolyMat {
        let mut e = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            e.extend_from_slice(self.row(i));
        }
        PolyMat {
            f: self.f,
            rows: idx.len(),
            cols: self.cols,
            e,
        }
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::shape(
                "polynomial matrix product with mismatched inner dimension",
            ));
        }
        let mut out = Self::zeros(self.f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.e[idx] = out.e[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Left product by a constant matrix.
    pub fn left_mul_const(&self, c: &DenseMat) -> Result<PolyMat> {
        self.lin_comb_rows(c)
    }

    fn lin_comb_rows(&self, c: &DenseMat) -> Result<PolyMat> {
        if c.cols() != self.rows {
            return Err(Error::shape("constant factor has wrong width"));
        }
        let mut out = Self::zeros(self.f, c.rows(), self.cols);
        for i in 0..c.rows() {
            for k in 0..self.rows {
                let a = c.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    out.e[i * self.cols + j].add_scaled_shifted(self.get(k, j), a, 0);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("sum of polynomial matrices of different shapes"));
        }
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a.add(b)).collect();
        Ok(PolyMat {
            f: self.f,
            rows: self.rows,
            cols: self.cols,
            e,
        })
    }

    pub fn sub(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("difference of polynomial matrices of different shapes"));
        }
        let e = self.e.iter().zip(&other.e).map(|(a, b)| a.sub(b)).collect();
        Ok(PolyMat {
            f: self.f,
            rows: self.rows,
            cols: self.cols,
            e,
        })
    }

    pub fn scale(&self, p: &Poly) -> PolyMat {
        self.map(|x| x.mul(p))
    }

    /// Shifted leading matrix: entry `(i, j)` is the coefficient of degree
    /// `rdeg_s(i) - s_j` in entry `(i, j)`. Zero rows give zero rows.
    pub fn leading_matrix(&self, shift: &[i64]) -> DenseMat {
        let mut l = DenseMat::zeros(self.f, self.rows, self.cols);
        for i in 0..self.rows {
            let Some(d) = self.shifted_row_degree(i, shift) else {
                continue;
            };
            for j in 0..self.cols {
                let k = d - shift[j];
                if k >= 0 {
                    l.set(i, j, self.get(i, j).coeff(k as usize));
                }
            }
        }
        l
    }

    /// Shifted pivot of row `i`: the rightmost column reaching the shifted
    /// row degree, with the degree of that entry.
    pub fn pivot(&self, i: usize, shift: &[i64]) -> Option<(usize, usize)> {
        let d = self.shifted_row_degree(i, shift)?;
        (0..self.cols)
            .rev()
            .find(|&j| !self.get(i, j).is_zero() && self.get(i, j).deg_i64() + shift[j] == d)
            .map(|j| (j, self.get(i, j).degree().expect("nonzero")))
    }
}

/// Finite prefix of a sequence of `m x m` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatSeq {
    m: usize,
    terms: Vec<DenseMat>,
}

impl MatSeq {
    pub fn new(terms: Vec<DenseMat>) -> Result<Self> {
        let m = terms.first().map_or(0, |t| t.rows());
        if terms.iter().any(|t| t.rows() != m || t.cols() != m) {
            return Err(Error::shape("sequence terms must be square of one size"));
        }
        Ok(MatSeq { m, terms })
    }

    /// Allows `m x k` terms, as for vector sequences.
    pub fn new_rect(terms: Vec<DenseMat>) -> Result<Self> {
        let (m, k) = terms.first().map_or((0, 0), |t| (t.rows(), t.cols()));
        if terms.iter().any(|t| t.rows() != m || t.cols() != k) {
            return Err(Error::shape("sequence terms must share one shape"));
        }
        Ok(MatSeq { m, terms })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn terms(&self) -> &[DenseMat] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// True if every row of `p` is a left relation on every window of the
/// prefix that fits: `sum_k p_k F_(s+k) = 0`.
pub fn cancels_sequence(p: &PolyMat, seq: &MatSeq) -> bool {
    let f = p.modulus();
    for i in 0..p.rows() {
        let Some(d) = p.row_degree(i) else {
            continue;
        };
        let coeffs: Vec<Vec<FieldElem>> = (0..=d).map(|k| p.row(i).iter().map(|q| q.coeff(k)).collect()).collect();
        for s in 0..seq.len().saturating_sub(d) {
            let mut acc = vec![0; seq.terms[0].cols()];
            for (k, c) in coeffs.iter().enumerate() {
                let v = seq.terms[s + k].vec_mul(c).expect("shapes agree");
                for (a, b) in acc.iter_mut().zip(v) {
                    *a = f.add(*a, b);
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return false;
            }
        }
    }
    true
}

/// Basis of `{ p : p F = 0 mod T^order }`, reduced for the given shift.
/// Divide-and-conquer above a small order, iterative below.
pub fn approximant_basis(fm: &PolyMat, order: usize, shift: &[i64]) -> PolyMat {
    pmbasis(&fm.truncate(order), order, shift).0
}

/// Reference order-by-order algorithm.
pub fn approximant_basis_iterative(fm: &PolyMat, order: usize, shift: &[i64]) -> PolyMat {
    mbasis(&fm.truncate(order), order, shift).0
}

fn pmbasis(fm: &PolyMat, order: usize, shift: &[i64]) -> (PolyMat, Vec<i64>) {
    if order <= PMBASIS_CUTOFF {
        return mbasis(fm, order, shift);
    }
    let h = order / 2;
    let (b1, s1) = pmbasis(&fm.truncate(h), h, shift);
    let res = b1.mul(fm).expect("shapes agree").shift_down(h).truncate(order - h);
    let (b2, s2) = pmbasis(&res, order - h, &s1);
    (b2.mul(&b1).expect("shapes agree"), s2)
}

/// Iterative approximant basis. Returns the basis and its shifted row
/// degrees (tracked, equal to the actual ones for a reduced output).
fn mbasis(fm: &PolyMat, order: usize, shift: &[i64]) -> (PolyMat, Vec<i64>) {
    let f = fm.modulus();
    let (r, c) = (fm.rows(), fm.cols());
    assert_eq!(shift.len(), r, "one shift entry per row");
    let mut b = PolyMat::identity(f, r);
    let mut res = fm.clone();
    let mut degs = shift.to_vec();
    for k in 0..order {
        let mut perm: Vec<usize> = (0..r).collect();
        perm.sort_by_key(|&i| (degs[i], i));
        // reduced residual rows of the pivots found so far
        let mut pivots: Vec<(usize, usize, Vec<FieldElem>)> = Vec::new();
        for &i in &perm {
            let mut v: Vec<FieldElem> = (0..c).map(|j| res.get(i, j).coeff(k)).collect();
            for (pi, pc, pv) in &pivots {
                let a = v[*pc];
                if a == 0 {
                    continue;
                }
                let coef = f.neg(f.mul(a, f.inv(pv[*pc]).expect("pivot nonzero")));
                for (x, &y) in v.iter_mut().zip(pv) {
                    *x = f.mul_add(*x, coef, y);
                }
                for j in 0..r {
                    let src = b.get(*pi, j).clone();
                    b.row_mut(i)[j].add_scaled_shifted(&src, coef, 0);
                }
                for j in 0..c {
                    let src = res.get(*pi, j).clone();
                    res.row_mut(i)[j].add_scaled_shifted(&src, coef, 0);
                }
            }
            if let Some(pc) = v.iter().position(|&x| x != 0) {
                pivots.push((i, pc, v));
            }
        }
        for (i, _, _) in &pivots {
            let i = *i;
            for j in 0..r {
                let p = b.get(i, j).shift_up(1);
                b.set(i, j, p);
            }
            for j in 0..c {
                let p = res.get(i, j).shift_up(1).truncate(order);
                res.set(i, j, p);
            }
            degs[i] += 1;
        }
    }
    (b, degs)
}

/// Mulders-Storjohann: transforms a nonsingular matrix into shifted weak
/// Popov form (pairwise distinct pivot columns) by unimodular row operations.
pub fn weak_popov(mut b: PolyMat, shift: &[i64]) -> PolyMat {
    let f = b.modulus();
    loop {
        let piv: Vec<Option<(usize, usize)>> = (0..b.rows()).map(|i| b.pivot(i, shift)).collect();
        let mut clash = None;
        'search: for i in 0..b.rows() {
            for k in i + 1..b.rows() {
                if let (Some((ci, _)), Some((ck, _))) = (piv[i], piv[k]) {
                    if ci == ck {
                        clash = Some((i, k));
                        break 'search;
                    }
                }
            }
        }
        let Some((i, k)) = clash else {
            return b;
        };
        let (col, di) = piv[i].expect("pivot");
        let (_, dk) = piv[k].expect("pivot");
        // reduce the row of larger pivot degree by the other
        let (hi, lo, dh, dl) = if di >= dk { (i, k, di, dk) } else { (k, i, dk, di) };
        let a = b.get(hi, col).lead();
        let bl = b.get(lo, col).lead();
        let coef = f.neg(f.mul(a, f.inv(bl).expect("nonzero")));
        for j in 0..b.cols() {
            let src = b.get(lo, j).clone();
            b.row_mut(hi)[j].add_scaled_shifted(&src, coef, dh - dl);
        }
    }
}

/// Shifted Popov basis of `{ p : p F = 0 mod T^order }`: rows ordered by
/// pivot column, pivots monic and of degree strictly larger than the other
/// entries of their column.
///
/// A first reduced basis gives the pivot degrees `delta`; a basis reduced
/// for the shift `-delta` then differs from the Popov basis by a constant
/// left factor, its `-delta` leading matrix.
pub fn popov_approximant_basis(fm: &PolyMat, order: usize, shift: &[i64]) -> Result<PolyMat> {
    let r = fm.rows();
    let first = weak_popov(approximant_basis(fm, order, shift), shift);
    let mut delta = vec![0i64; r];
    for i in 0..r {
        let (c, d) = first
            .pivot(i, shift)
            .ok_or(Error::GenericityFailure("singular approximant basis"))?;
        delta[c] = d as i64;
    }
    let neg: Vec<i64> = delta.iter().map(|&d| -d).collect();
    let second = approximant_basis(fm, order, &neg);
    let lead = second.leading_matrix(&neg);
    let inv = lead
        .inverse()
        .map_err(|_| Error::GenericityFailure("approximant basis is not reduced"))?;
    let popov = second.left_mul_const(&inv)?;
    debug_assert!(is_popov(&popov, shift));
    Ok(popov)
}

/// Checks the shifted Popov conditions with row `i` pivoting at column `i`.
pub fn is_popov(p: &PolyMat, shift: &[i64]) -> bool {
    if p.rows() != p.cols() {
        return false;
    }
    for i in 0..p.rows() {
        match p.pivot(i, shift) {
            Some((c, d)) if c == i => {
                if !p.get(i, i).is_monic() {
                    return false;
                }
                for k in 0..p.rows() {
                    if k != i && p.get(k, i).len() > d {
                        return false;
                    }
                }
            }
            _ => return false,
        }
    }
    true
}

/// True iff the leading-coefficient matrix (at the row degrees) of a square
/// matrix without zero rows is invertible.
pub fn is_row_reduced(p: &PolyMat) -> bool {
    is_row_reduced_shifted(p, &vec![0; p.cols()])
}

pub fn is_row_reduced_shifted(p: &PolyMat, shift: &[i64]) -> bool {
    if p.rows() != p.cols() || (0..p.rows()).any(|i| p.row_degree(i).is_none()) {
        return false;
    }
    p.leading_matrix(shift).det() != 0
}

/// Decides whether the row vector `v` (a `1 x n` matrix) lies in the row
/// space of the nonsingular `shift`-reduced matrix `b`, by repeatedly
/// cancelling its leading term. Exact left division.
pub fn row_space_contains(b: &PolyMat, shift: &[i64], v: &PolyMat) -> bool {
    let f = b.modulus();
    let n = b.cols();
    let rdeg: Vec<i64> = (0..b.rows())
        .map(|i| b.shifted_row_degree(i, shift).unwrap_or(i64::MIN))
        .collect();
    let lead = b.leading_matrix(shift);
    let mut v = v.clone();
    while let Some(dv) = v.shifted_row_degree(0, shift) {
        let target: Vec<FieldElem> = (0..n)
            .map(|j| {
                let k = dv - shift[j];
                if k >= 0 {
                    v.get(0, j).coeff(k as usize)
                } else {
                    0
                }
            })
            .collect();
        let usable: Vec<usize> = (0..b.rows()).filter(|&i| rdeg[i] <= dv).collect();
        if usable.is_empty() {
            return false;
        }
        let mut sub = DenseMat::zeros(f, usable.len(), n);
        for (a, &i) in usable.iter().enumerate() {
            for j in 0..n {
                sub.set(a, j, lead.get(i, j));
            }
        }
        let Some(x) = sub.solve_left(&target) else {
            return false;
        };
        for (a, &i) in usable.iter().enumerate() {
            if x[a] == 0 {
                continue;
            }
            let k = (dv - rdeg[i]) as usize;
            for j in 0..n {
                let src = b.get(i, j).clone();
                v.row_mut(0)[j].add_scaled_shifted(&src, f.neg(x[a]), k);
            }
        }
        if let Some(d2) = v.shifted_row_degree(0, shift) {
            if d2 >= dv {
                return false;
            }
        }
    }
    true
}

/// Minimal left matrix generator in Popov form.
///
/// Builds `[sum_(s<d) F_s T^(d-s-1) ; -I]` with `d = min(dl + dr + 1,
/// #terms)`, computes the Popov approximant basis at order `d`, and keeps
/// the `m` rows whose pivot lies in the left block; their left block is the
/// generator. Rows of degree above `dl` signal unlucky projections.
pub fn minimal_matrix_generator(seq: &MatSeq, dl: usize, dr: usize) -> Result<PolyMat> {
    let m = seq.m();
    if m == 0 {
        return Err(Error::invalid("empty matrix sequence"));
    }
    let d = (dl + dr + 1).min(seq.len());
    if d == 0 {
        return Err(Error::InsufficientTerms { needed: 1, got: 0 });
    }
    let f = seq.terms()[0].modulus();
    let mut sys = PolyMat::zeros(f, 2 * m, m);
    for i in 0..m {
        for j in 0..m {
            let c: Vec<FieldElem> = (0..d).map(|k| seq.terms()[d - 1 - k].get(i, j)).collect();
            sys.set(i, j, Poly::from_coeffs(f, c));
        }
        sys.set(m + i, i, Poly::constant(f, f.neg(1)));
    }
    let basis = popov_approximant_basis(&sys, d, &vec![0; 2 * m])?;
    let rows: Vec<usize> = (0..m).collect();
    let gen = basis.select_rows(&rows).submatrix(0, m, 0, m);
    if (0..m).any(|i| gen.row_degree(i).map_or(true, |x| x > dl)) {
        return Err(Error::GenericityFailure("generator degree exceeds its bound"));
    }
    Ok(gen)
}

fn sum_row_degrees(p: &PolyMat) -> usize {
    (0..p.rows()).map(|i| p.row_degree(i).unwrap_or(0)).sum()
}

/// Finds `a` with `P(a)` invertible: `0` if possible, else random points.
fn regular_point(p: &PolyMat, rng: Option<&mut Rng>) -> Result<FieldElem> {
    if p.eval(0).det() != 0 {
        return Ok(0);
    }
    let f = p.modulus();
    match rng {
        Some(rng) => {
            for _ in 0..64 {
                let a = rng.nonzero_elem(&f);
                if p.eval(a).det() != 0 {
                    return Ok(a);
                }
            }
        }
        None => {
            for a in 1..f.p().min(1 << 16) {
                if p.eval(a).det() != 0 {
                    return Ok(a);
                }
            }
        }
    }
    Err(Error::GenericityFailure("matrix is singular at every point tried"))
}

/// Power series solution of `P x = y` to precision `n`, with `P(0)`
/// invertible. Returns the coefficient vectors `x_0, ..., x_(n-1)`.
fn lift_right(p: &PolyMat, p0_inv: &DenseMat, y: &[FieldElem], n: usize) -> Vec<Vec<FieldElem>> {
    let f = p.modulus();
    let m = p.rows();
    let deg = p.degree().unwrap_or(0);
    let coeffs: Vec<DenseMat> = (0..=deg).map(|k| p.coeff(k)).collect();
    let mut xs: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = if k == 0 { y.to_vec() } else { vec![0; m] };
        for j in 1..=deg.min(k) {
            let t = coeffs[j].mul_vec(&xs[k - j]).expect("shapes agree");
            for (a, b) in rhs.iter_mut().zip(t) {
                *a = f.sub(*a, b);
            }
        }
        xs.push(p0_inv.mul_vec(&rhs).expect("shapes agree"));
    }
    xs
}

/// Largest invariant factor of a nonsingular row-reduced matrix: the monic
/// lcm of the denominators of `P^(-1) y` for a random constant `y`,
/// obtained by series lifting and rational reconstruction.
pub fn largest_invariant_factor(p: &PolyMat, rng: &mut Rng) -> Result<Poly> {
    let f = p.modulus();
    let m = p.rows();
    if m != p.cols() || m == 0 {
        return Err(Error::shape("invariant factor of a non-square matrix"));
    }
    let delta = sum_row_degrees(p);
    if delta == 0 {
        return if p.eval(0).det() != 0 {
            Ok(Poly::one(f))
        } else {
            Err(Error::invalid("singular matrix"))
        };
    }
    let a = regular_point(p, Some(rng))?;
    let ps = p.taylor_shift(a);
    let p0_inv = ps.eval(0).inverse()?;
    let y = rng.elems(&f, m);
    let z = rng.elems(&f, m);
    let mut n = 2 * delta + 1;
    for _ in 0..=LIFT_RETRIES {
        let xs = lift_right(&ps, &p0_inv, &y, n);
        let found =
            reconstruct_projected(&ps, &xs, &y, &z, n, delta).or_else(|| reconstruct_lcm(&ps, &xs, &y, n, delta));
        if let Some(s) = found {
            return Ok(s.taylor_shift(f.neg(a)).monic());
        }
        n *= 2;
    }
    Err(Error::PrecisionFailure)
}

/// Component `i` of a lifted vector series.
fn series_component(f: Modulus, xs: &[Vec<FieldElem>], i: usize) -> Poly {
    Poly::from_coeffs(f, xs.iter().map(|x| x[i]).collect())
}

/// Certifies `s` by checking `P (s x) = s y` exactly.
fn certify_denominator(ps: &PolyMat, s: &Poly, nums: Vec<Poly>, y: &[FieldElem]) -> bool {
    let m = ps.rows();
    let col = PolyMat::from_polys(ps.modulus(), m, 1, nums);
    match ps.mul(&col) {
        Ok(lhs) => (0..m).all(|i| *lhs.get(i, 0) == s.scale(y[i])),
        Err(_) => false,
    }
}

/// One reconstruction on the projection `z . x`; its denominator is the
/// whole lcm unless `z` is unlucky, which the exact check catches.
fn reconstruct_projected(
    ps: &PolyMat,
    xs: &[Vec<FieldElem>],
    y: &[FieldElem],
    z: &[FieldElem],
    n: usize,
    delta: usize,
) -> Option<Poly> {
    let f = ps.modulus();
    let proj = Poly::from_coeffs(f, xs.iter().map(|x| f.dot(z, x)).collect());
    let (_, s) = proj.rational_reconstruct(n, delta + 1, delta)?;
    let nums = (0..ps.rows())
        .map(|i| series_component(f, xs, i).mul(&s).truncate(delta + 1))
        .collect();
    certify_denominator(ps, &s, nums, y).then_some(s)
}

fn reconstruct_lcm(ps: &PolyMat, xs: &[Vec<FieldElem>], y: &[FieldElem], n: usize, delta: usize) -> Option<Poly> {
    let f = ps.modulus();
    let m = ps.rows();
    let mut fracs = Vec::with_capacity(m);
    let mut s = Poly::one(f);
    for i in 0..m {
        let series = series_component(f, xs, i);
        let (num, den) = series.rational_reconstruct(n, delta + 1, delta)?;
        s = s.lcm(&den);
        fracs.push((num, den));
    }
    if s.len() > delta + 1 {
        return None;
    }
    let nums: Vec<Poly> = fracs
        .iter()
        .map(|(num, den)| num.mul(&s.div_exact(den).expect("lcm is a multiple")))
        .collect();
    certify_denominator(ps, &s, nums, y).then_some(s)
}

/// The row `a_i` with `a_i P = s1 e_i`, for `s1` a multiple of the largest
/// invariant factor of `P`. Computed by left series lifting and certified by
/// exact multiplication.
pub fn left_quotient_row(p: &PolyMat, s1: &Poly, i: usize) -> Result<PolyMat> {
    let f = p.modulus();
    let m = p.rows();
    if m != p.cols() || i >= m {
        return Err(Error::shape("quotient row of a non-square matrix or bad index"));
    }
    let a = regular_point(p, None)?;
    let ps = p.taylor_shift(a);
    let ss = s1.taylor_shift(a);
    let ds = s1.degree().unwrap_or(0);
    let deg = ps.degree().unwrap_or(0);
    let n = ds + deg + 1;
    let p0_inv = ps.eval(0).inverse()?;
    let coeffs: Vec<DenseMat> = (0..=deg).map(|k| ps.coeff(k)).collect();
    let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = vec![0; m];
        rhs[i] = ss.coeff(k);
        for j in 1..=deg.min(k) {
            let t = coeffs[j].vec_mul(&rows[k - j]).expect("shapes agree");
            for (x, y) in rhs.iter_mut().zip(t) {
                *x = f.sub(*x, y);
            }
        }
        rows.push(p0_inv.vec_mul(&rhs).expect("shapes agree"));
    }
    let keep = ds + 1;
    let e: Vec<Poly> = (0..m)
        .map(|j| Poly::from_coeffs(f, rows[..keep].iter().map(|r| r[j]).collect()).taylor_shift(f.neg(a)))
        .collect();
    let row = PolyMat::from_polys(f, 1, m, e);
    let prod = row.mul(p)?;
    for j in 0..m {
        let want = if j == i { s1.clone() } else { Poly::zero(f) };
        if *prod.get(0, j) != want {
            return Err(Error::GenericityFailure("quotient row does not satisfy a P = s1 e_i"));
        }
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{P101, P65537};

    fn f101() -> Modulus {
        Modulus::new(P101).unwrap()
    }

    fn example_generator(f: Modulus) -> PolyMat {
        PolyMat::from_coeff_rows(f, &[&[&[62, 60, 1], &[25, 88]], &[&[33, 100], &[78, 84, 1]]])
    }

    fn example_seq(f: Modulus) -> MatSeq {
        MatSeq::new(vec![
            DenseMat::from_rows(f, &[&[92, 75], &[83, 51]]),
            DenseMat::from_rows(f, &[&[54, 34], &[70, 73]]),
            DenseMat::from_rows(f, &[&[92, 54], &[16, 74]]),
            DenseMat::from_rows(f, &[&[94, 51], &[91, 51]]),
        ])
        .unwrap()
    }

    fn check_order(b: &PolyMat, fm: &PolyMat, order: usize) {
        let prod = b.mul(fm).unwrap();
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                assert!(prod.get(i, j).truncate(order).is_zero());
            }
        }
    }

    #[test]
    fn generator_of_worked_example() {
        let f = f101();
        let seq = example_seq(f);
        let gen = minimal_matrix_generator(&seq, 2, 2).unwrap();
        assert_eq!(gen, example_generator(f));
        assert!(cancels_sequence(&gen, &seq));
        assert!(is_row_reduced(&gen));
    }

    #[test]
    fn generator_scalar_and_zero() {
        let f = f101();
        let fib: Vec<DenseMat> = [1u64, 1, 2, 3, 5, 8]
            .iter()
            .map(|&x| DenseMat::from_rows(f, &[&[x]]))
            .collect();
        let gen = minimal_matrix_generator(&MatSeq::new(fib).unwrap(), 2, 2).unwrap();
        assert_eq!(gen.get(0, 0), &Poly::from_i64s(f, &[-1, -1, 1]));
        let zeros = vec![DenseMat::zeros(f, 2, 2); 4];
        let gen = minimal_matrix_generator(&MatSeq::new(zeros).unwrap(), 2, 2).unwrap();
        assert_eq!(gen, PolyMat::identity(f, 2));
    }

    #[test]
    fn invariant_factor_and_quotient_row() {
        let f = f101();
        let gen = example_generator(f);
        let mut rng = Rng::new(1);
        let s1 = largest_invariant_factor(&gen, &mut rng).unwrap();
        assert_eq!(s1, Poly::from_coeffs(f, vec![7, 100, 76, 1]));
        let a1 = left_quotient_row(&gen, &s1, 0).unwrap();
        assert_eq!(a1, PolyMat::from_coeff_rows(f, &[&[&[16, 1], &[13]]]));
    }

    #[test]
    fn invariant_factor_diagonal() {
        let f = Modulus::new(P65537).unwrap();
        let g = Poly::from_roots(f, &[3, 5, 9]);
        let h = Poly::from_roots(f, &[3]);
        let d = PolyMat::from_polys(f, 2, 2, vec![g.scale(7), Poly::zero(f), Poly::zero(f), h]);
        let mut rng = Rng::new(2);
        assert_eq!(largest_invariant_factor(&d, &mut rng).unwrap(), g);
        let one = PolyMat::from_polys(f, 1, 1, vec![g.scale(4)]);
        assert_eq!(largest_invariant_factor(&one, &mut rng).unwrap(), g);
        // singular at zero: forces the shifted lifting
        let z = Poly::from_roots(f, &[0, 0, 7]);
        let d = PolyMat::from_polys(
            f,
            2,
            2,
            vec![z.clone(), Poly::zero(f), Poly::zero(f), Poly::from_roots(f, &[0])],
        );
        assert_eq!(largest_invariant_factor(&d, &mut rng).unwrap(), z);
        let s = PolyMat::identity(f, 3).scale(&z);
        let row = left_quotient_row(&s, &z, 2).unwrap();
        assert_eq!(
            row,
            PolyMat::from_polys(f, 1, 3, vec![Poly::zero(f), Poly::zero(f), Poly::one(f)])
        );
    }

    #[test]
    fn row_reducedness() {
        let f = f101();
        assert!(is_row_reduced(&PolyMat::identity(f, 3)));
        let t = Poly::t(f);
        let bad = PolyMat::from_polys(f, 2, 2, vec![t.clone(), Poly::zero(f), t, Poly::zero(f)]);
        assert!(!is_row_reduced(&bad));
    }

    #[test]
    fn zero_input_gives_identity() {
        let f = f101();
        let z = PolyMat::zeros(f, 3, 2);
        assert_eq!(approximant_basis(&z, 5, &[0, 0, 0]), PolyMat::identity(f, 3));
    }

    #[test]
    fn divide_and_conquer_agrees_with_iterative() {
        let f = Modulus::new(P65537).unwrap();
        let mut rng = Rng::new(31);
        let order = 80;
        let e = (0..6).map(|_| Poly::from_coeffs(f, rng.elems(&f, order))).collect();
        let fm = PolyMat::from_polys(f, 3, 2, e);
        let shift = [0, 2, -1];
        let a = approximant_basis(&fm, order, &shift);
        let b = approximant_basis_iterative(&fm, order, &shift);
        check_order(&a, &fm, order);
        check_order(&b, &fm, order);
        assert!(is_row_reduced_shifted(&a, &shift));
        assert!(is_row_reduced_shifted(&b, &shift));
        let pa = popov_approximant_basis(&fm, order, &shift).unwrap();
        assert!(is_popov(&pa, &shift));
        for i in 0..3 {
            assert!(row_space_contains(&pa, &shift, &b.select_rows(&[i])));
            assert!(row_space_contains(&b, &shift, &pa.select_rows(&[i])));
        }
    }
}
