//! Small dense matrices over the field: blocking matrices, sequence terms,
//! leading-coefficient matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat {
    f: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl DenseMat {
    pub fn zeros(f: Modulus, rows: usize, cols: usize) -> Self {
        DenseMat {
            f,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(f: Modulus, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % f.p();
        }
        m
    }

    /// Row-major data; entries are reduced mod p.
    pub fn from_vec(f: Modulus, rows: usize, cols: usize, mut data: Vec<FieldElem>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        for x in data.iter_mut() {
            *x = f.elem(*x);
        }
        DenseMat { f, rows, cols, data }
    }

    pub fn from_rows(f: Modulus, rows: &[&[u64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| f.elem(x)));
        }
        DenseMat {
            f,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Column vector.
    pub fn column(f: Modulus, v: &[FieldElem]) -> Self {
        Self::from_vec(f, v.len(), 1, v.to_vec())
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
    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = self.f.elem(v);
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [FieldElem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.f, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMat) -> Result<DenseMat> {
        if self.cols != other.rows {
            return Err(Error::shape(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let f = self.f;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.acc();
                for k in 0..self.cols {
                    acc.add_prod(self.get(i, k), other.get(k, j));
                }
                out.data[i * other.cols + j] = acc.value();
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector given as a slice.
    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::shape("vector length does not match column count"));
        }
        Ok((0..self.rows).map(|i| self.f.dot(self.row(i), v)).collect())
    }

    /// `v * self` for a row vector given as a slice.
    pub fn vec_mul(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.rows {
            return Err(Error::shape("vector length does not match row count"));
        }
        let f = self.f;
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut acc = f.acc();
            for i in 0..self.rows {
                acc.add_prod(v[i], self.get(i, j));
            }
            out.push(acc.value());
        }
        Ok(out)
    }

    pub fn add(&self, other: &DenseMat) -> Result<DenseMat> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &DenseMat) -> Result<DenseMat> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &DenseMat, op: impl Fn(&Modulus, FieldElem, FieldElem) -> FieldElem) -> Result<DenseMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("elementwise operation on different shapes"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(&self.f, a, b))
            .collect();
        Ok(DenseMat {
            f: self.f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.f;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i != r {
                    let factor = self.get(i, c);
                    if factor != 0 {
                        for j in 0..self.cols {
                            let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                            self.data[i * self.cols + j] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<DenseMat> {
        if self.rows != self.cols {
            return Err(Error::shape("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.f.p();
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Self::zeros(self.f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols);
        let f = self.f;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1 % f.p();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| a.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    a.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = a.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(a.get(i, c), inv);
                if factor != 0 {
                    for j in c..n {
                        let v = f.sub(a.get(i, j), f.mul(factor, a.get(c, j)));
                        a.data[i * n + j] = v;
                    }
                }
            }
        }
        det
    }

    /// Basis of `{ x : self * x = 0 }`, one vector per free column.
    pub fn right_kernel(&self) -> Vec<Vec<FieldElem>> {
        let f = self.f;
        let mut a = self.clone();
        let pivots = a.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0; self.cols];
            x[free] = 1 % f.p();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = f.neg(a.get(r, free));
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of `{ y : y * self = 0 }`.
    pub fn left_kernel(&self) -> Vec<Vec<FieldElem>> {
        self.transpose().right_kernel()
    }

    /// Solves `x * self = b` for a row vector `x`, if a solution exists.
    pub fn solve_left(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let t = self.transpose();
        t.solve_right(b)
    }

    /// Solves `self * x = b`, if a solution exists.
    pub fn solve_right(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.f;
        let mut aug = Self::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i];
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}
