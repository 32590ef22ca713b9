//! Square sparse matrices in compressed row storage.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    f: Modulus,
    dim: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<FieldElem>,
}

impl SparseMat {
    pub fn zero(f: Modulus, dim: usize) -> Self {
        SparseMat {
            f,
            dim,
            row_ptr: vec![0; dim + 1],
            col_idx: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn identity(f: Modulus, dim: usize) -> Self {
        let trip = (0..dim).map(|i| (i, i, 1)).collect::<Vec<_>>();
        Self::from_triplets(f, dim, trip).expect("in range")
    }

    /// Builds from `(row, col, value)` triplets in any order. Duplicate
    /// positions are summed and zeros dropped.
    pub fn from_triplets(f: Modulus, dim: usize, mut trip: Vec<(usize, usize, FieldElem)>) -> Result<Self> {
        if let Some(&(r, c, _)) = trip.iter().find(|&&(r, c, _)| r >= dim || c >= dim) {
            return Err(Error::shape(alloc::format!(
                "entry ({r}, {c}) outside a {dim}x{dim} matrix"
            )));
        }
        trip.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; dim + 1];
        let mut col_idx = Vec::with_capacity(trip.len());
        let mut vals: Vec<FieldElem> = Vec::with_capacity(trip.len());
        let mut rows: Vec<usize> = Vec::with_capacity(trip.len());
        for (r, c, v) in trip {
            let v = f.elem(v);
            if rows.last() == Some(&r) && col_idx.last() == Some(&c) {
                let last = vals.last_mut().expect("nonempty");
                *last = f.add(*last, v);
            } else {
                rows.push(r);
                col_idx.push(c);
                vals.push(v);
            }
        }
        let mut keep_c = Vec::with_capacity(col_idx.len());
        let mut keep_v = Vec::with_capacity(vals.len());
        for ((r, c), v) in rows.into_iter().zip(col_idx).zip(vals) {
            if v != 0 {
                row_ptr[r + 1] += 1;
                keep_c.push(c);
                keep_v.push(v);
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(SparseMat {
            f,
            dim,
            row_ptr,
            col_idx: keep_c,
            vals: keep_v,
        })
    }

    pub fn from_dense(m: &DenseMat) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::shape("sparse matrices are square"));
        }
        let mut trip = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if v != 0 {
                    trip.push((i, j, v));
                }
            }
        }
        Self::from_triplets(m.modulus(), m.rows(), trip)
    }

    pub fn to_dense(&self) -> DenseMat {
        let mut d = DenseMat::zeros(self.f, self.dim, self.dim);
        for (i, j, v) in self.triplets() {
            d.set(i, j, v);
        }
        d
    }

    pub fn modulus(&self) -> Modulus {
        self.f
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// nnz / D^2
    pub fn density(&self) -> f64 {
        if self.dim == 0 {
            return 0.0;
        }
        self.nnz() as f64 / (self.dim as f64 * self.dim as f64)
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[FieldElem]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.vals[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0,
        }
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, FieldElem)> + '_ {
        (0..self.dim).flat_map(move |i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).map(move |(&j, &x)| (i, j, x))
        })
    }

    /// Row vector times matrix, with lazy reduction of the column sums.
    pub fn vec_mat(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.dim {
            return Err(Error::shape("vector length does not match matrix dimension"));
        }
        let mut out = vec![0; self.dim];
        self.vec_mat_into(v, &mut out, &mut vec![0u128; self.dim]);
        Ok(out)
    }

    /// `out = v * self`, reusing a scratch accumulator of length `dim`.
    pub(crate) fn vec_mat_into(&self, v: &[FieldElem], out: &mut [FieldElem], acc: &mut [u128]) {
        let f = self.f;
        let p = f.p() as u128;
        let limit = f.acc_limit().max(2) as usize - 1;
        acc.iter_mut().for_each(|x| *x = 0);
        let mut pending = 0usize;
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            if pending == limit {
                acc.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
            let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
            let w = vi as u128;
            for k in a..b {
                acc[self.col_idx[k]] += w * self.vals[k] as u128;
            }
            pending += 1;
        }
        for (o, &x) in out.iter_mut().zip(acc.iter()) {
            *o = (x % p) as u64;
        }
    }

    /// Matrix times column vector.
    pub fn mat_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.dim {
            return Err(Error::shape("vector length does not match matrix dimension"));
        }
        Ok((0..self.dim)
            .map(|i| {
                let (cols, vals) = self.row(i);
                let mut acc = self.f.acc();
                for (&j, &x) in cols.iter().zip(vals) {
                    acc.add_prod(x, v[j]);
                }
                acc.value()
            })
            .collect())
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<FieldElem> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> SparseMat {
        let trip = self.triplets().map(|(i, j, v)| (j, i, v)).collect();
        Self::from_triplets(self.f, self.dim, trip).expect("in range")
    }

    pub fn scale(&self, a: FieldElem) -> SparseMat {
        let trip = self.triplets().map(|(i, j, v)| (i, j, self.f.mul(v, a))).collect();
        Self::from_triplets(self.f, self.dim, trip).expect("in range")
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.dim != other.dim {
            return Err(Error::shape("sparse product of different dimensions"));
        }
        let f = self.f;
        let mut trip = Vec::new();
        let mut acc = vec![0u64; self.dim];
        let mut touched = vec![false; self.dim];
        let mut list = Vec::new();
        for i in 0..self.dim {
            let (ci, vi) = self.row(i);
            for (&k, &a) in ci.iter().zip(vi) {
                let (cj, vj) = other.row(k);
                for (&j, &b) in cj.iter().zip(vj) {
                    acc[j] = f.mul_add(acc[j], a, b);
                    if !touched[j] {
                        touched[j] = true;
                        list.push(j);
                    }
                }
            }
            for &j in &list {
                trip.push((i, j, acc[j]));
                acc[j] = 0;
                touched[j] = false;
            }
            list.clear();
        }
        Self::from_triplets(f, self.dim, trip)
    }

    pub fn add(&self, other: &SparseMat) -> Result<SparseMat> {
        if self.dim != other.dim {
            return Err(Error::shape("sparse sum of different dimensions"));
        }
        let trip = self.triplets().chain(other.triplets()).collect();
        Self::from_triplets(self.f, self.dim, trip)
    }

    pub fn sub(&self, other: &SparseMat) -> Result<SparseMat> {
        self.add(&other.scale(self.f.neg(1)))
    }
}

/// `t_1 M_1 + ... + t_n M_n`; cancelled entries are dropped.
pub fn combine_matrices(t: &[FieldElem], mats: &[SparseMat]) -> Result<SparseMat> {
    if t.len() != mats.len() {
        return Err(Error::shape("one coefficient per matrix is required"));
    }
    let first = mats.first().ok_or_else(|| Error::invalid("no matrices to combine"))?;
    let (f, dim) = (first.f, first.dim);
    if mats.iter().any(|m| m.dim != dim || m.f != f) {
        return Err(Error::shape("matrices differ in dimension or modulus"));
    }
    let mut trip = Vec::new();
    for (&ti, m) in t.iter().zip(mats) {
        let ti = f.elem(ti);
        if ti == 0 {
            continue;
        }
        trip.extend(m.triplets().map(|(i, j, v)| (i, j, f.mul(ti, v))));
    }
    SparseMat::from_triplets(f, dim, trip)
}
