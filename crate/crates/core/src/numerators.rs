//! Matrix and scalar numerators of block-Krylov sequences.

use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::krylov::KrylovTable;
use crate::poly::Poly;
use crate::polymat::PolyMat;

/// `(P * sum_(s<d) E_s T^(d-1-s)) div T^d` with `d = terms.len()`, which
/// must be at least `deg P`. Each term is `m x k`; the result is `m x k`.
pub fn matrix_numerator(terms: &[DenseMat], pmat: &PolyMat) -> Result<PolyMat> {
    let f = pmat.modulus();
    let d = terms.len();
    let need = pmat.degree().unwrap_or(0);
    if d < need || d == 0 {
        return Err(Error::InsufficientTerms {
            needed: need.max(1),
            got: d,
        });
    }
    let (m, k) = (terms[0].rows(), terms[0].cols());
    if m != pmat.cols() || terms.iter().any(|t| t.rows() != m || t.cols() != k) {
        return Err(Error::shape("numerator terms do not match the generator"));
    }
    let mut e = Vec::with_capacity(m * k);
    for i in 0..m {
        for j in 0..k {
            e.push(Poly::from_coeffs(
                f,
                (0..d).map(|s| terms[d - 1 - s].get(i, j)).collect(),
            ));
        }
    }
    let z = PolyMat::from_polys(f, m, k, e);
    Ok(pmat.mul(&z)?.shift_down(d))
}

/// Same as [`matrix_numerator`] for a sequence of column vectors.
pub fn vector_numerator(terms: &[Vec<FieldElem>], pmat: &PolyMat) -> Result<PolyMat> {
    let f = pmat.modulus();
    let cols: Vec<DenseMat> = terms.iter().map(|t| DenseMat::column(f, t)).collect();
    matrix_numerator(&cols, pmat)
}

/// Data shared by all scalar numerator computations for one generator.
#[derive(Clone, Copy, Debug)]
pub struct NumeratorInputs<'a> {
    pub pmat: &'a PolyMat,
    pub s1: &'a Poly,
    pub a_row: &'a PolyMat,
    pub table: &'a KrylovTable,
    /// number of table blocks consumed
    pub blocks: usize,
}

impl<'a> NumeratorInputs<'a> {
    pub fn new(
        pmat: &'a PolyMat,
        s1: &'a Poly,
        a_row: &'a PolyMat,
        table: &'a KrylovTable,
        blocks: usize,
    ) -> Result<Self> {
        if blocks > table.count() {
            return Err(Error::InsufficientTerms {
                needed: blocks,
                got: table.count(),
            });
        }
        if a_row.rows() != 1 || a_row.cols() != pmat.rows() || table.m() != pmat.rows() {
            return Err(Error::shape("numerator inputs have inconsistent block sizes"));
        }
        Ok(NumeratorInputs {
            pmat,
            s1,
            a_row,
            table,
            blocks,
        })
    }

    fn projected(&self, w: &[FieldElem]) -> Result<Vec<Vec<FieldElem>>> {
        if w.len() != self.table.dim() {
            return Err(Error::shape("w must have length D"));
        }
        Ok(self.table.blocks()[..self.blocks]
            .iter()
            .map(|b| b.mul_vec(w).expect("shapes agree"))
            .collect())
    }
}

/// `a_row * Omega(E, P)` for precomputed projections `E_s = L_s w`.
pub fn scalar_numerator_from_terms(pmat: &PolyMat, a_row: &PolyMat, terms: &[Vec<FieldElem>]) -> Result<Poly> {
    let omega = vector_numerator(terms, pmat)?;
    Ok(a_row.mul(&omega)?.get(0, 0).clone())
}

/// Scalar numerator of `(u_i M^s w)_s` with respect to `s1`, where `u_i`
/// is the row of `U^T` selected by `a_row`.
pub fn scalar_numerator(inp: &NumeratorInputs<'_>, w: &[FieldElem]) -> Result<Poly> {
    let e = inp.projected(w)?;
    scalar_numerator_from_terms(inp.pmat, inp.a_row, &e)
}

/// As [`scalar_numerator`], with `E_s = L_s w - corrections_s`.
pub fn scalar_numerator_corrected(
    inp: &NumeratorInputs<'_>,
    w: &[FieldElem],
    corrections: &[Vec<FieldElem>],
) -> Result<Poly> {
    let f = inp.pmat.modulus();
    let m = inp.pmat.rows();
    if corrections.len() < inp.blocks || corrections.iter().any(|c| c.len() != m) {
        return Err(Error::shape("corrections must provide one length-m vector per block"));
    }
    let mut e = inp.projected(w)?;
    for (x, c) in e.iter_mut().zip(corrections) {
        for (a, &b) in x.iter_mut().zip(c) {
            *a = f.sub(*a, b);
        }
    }
    scalar_numerator_from_terms(inp.pmat, inp.a_row, &e)
}
