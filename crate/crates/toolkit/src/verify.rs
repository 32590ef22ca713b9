//! Checks a parametrization against the multiplication matrices alone, and
//! against known points when available.

use std::fmt;

use bfglm_core::Instance;
use bfglm_core::{
    apply_poly, berlekamp_massey, combine_matrices, verify_against_points, PointReport, Poly, Rng, ScalarSeq,
    SparseMat, ZeroDimParam,
};

use crate::error::ToolResult;
use crate::gen::GroundTruth;

/// Random vectors tested against the recomputed minimal polynomial.
const ANNIHILATION_CHECKS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// `deg Q = D`: every point found and every local algebra reduced.
    CertifiedComplete,
    /// The described points belong to the variety.
    SubsetConsistent,
    Failed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::CertifiedComplete => "certified complete and radical",
            Status::SubsetConsistent => "subset-consistent",
            Status::Failed => "FAILED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub invariants_ok: bool,
    /// Minimal polynomial of the separating element, recomputed.
    pub minpoly: Poly,
    /// `minpoly(M) w = 0` for every random `w` tried.
    pub minpoly_annihilates: bool,
    pub q_divides_minpoly: bool,
    /// `Q` is the squarefree part of the minimal polynomial: no point missed.
    pub all_points_found: bool,
    /// `X_i - V_i(X)` is nilpotent on the part of the algebra above `Q`.
    pub coordinates_ok: bool,
    pub degree_ok: bool,
    pub points: Option<PointReport>,
    pub status: Status,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Failed
    }
}

/// Minimal polynomial of `M` by scalar Wiedemann, confirmed on random
/// vectors; retried a few times against unlucky projections.
pub fn recompute_minpoly(mat: &SparseMat, rng: &mut Rng) -> ToolResult<(Poly, bool)> {
    let f = mat.modulus();
    let dim = mat.dim();
    let mut last = Poly::one(f);
    for _ in 0..3 {
        let u = rng.elems(&f, dim);
        let mut w = rng.elems(&f, dim);
        let mut terms = Vec::with_capacity(2 * dim);
        for _ in 0..2 * dim {
            terms.push(f.dot(&u, &w));
            w = mat.mat_vec(&w)?;
        }
        let p = berlekamp_massey(&ScalarSeq::new(f, terms), dim);
        let mut ok = true;
        for _ in 0..ANNIHILATION_CHECKS {
            let x = rng.elems(&f, dim);
            if apply_poly(mat, &p, &x)?.iter().any(|&v| v != 0) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok((p, true));
        }
        last = p;
    }
    Ok((last, false))
}

/// Runs the structural, algebraic and (optional) point checks.
pub fn verify_solution(
    inst: &Instance,
    param: &ZeroDimParam,
    truth: Option<&GroundTruth>,
    rng: &mut Rng,
) -> ToolResult<VerifyReport> {
    let f = inst.modulus();
    let dim = inst.dim();
    let invariants_ok = param.check().is_ok() && param.n() == inst.n() && param.modulus() == f;
    if param.n() != inst.n() || param.modulus() != f {
        return Ok(VerifyReport {
            invariants_ok,
            minpoly: Poly::one(f),
            minpoly_annihilates: false,
            q_divides_minpoly: false,
            all_points_found: false,
            coordinates_ok: false,
            degree_ok: false,
            points: None,
            status: Status::Failed,
        });
    }
    let mat = combine_matrices(param.t(), inst.mats())?;
    let (minpoly, minpoly_annihilates) = recompute_minpoly(&mat, rng)?;
    let q = param.q();
    let q_divides_minpoly = minpoly.rem(q)?.is_zero();
    let all_points_found = minpoly.squarefree_part()? == *q;
    let degree_ok = param.degree() <= dim;

    // the factor of the minimal polynomial above the roots of Q
    let mut above = Poly::one(f);
    let mut rest = minpoly.clone();
    loop {
        let g = rest.gcd(q);
        if g.is_one() {
            break;
        }
        above = above.mul(&g);
        rest = rest.div_exact(&g)?;
    }
    let w = apply_poly(&mat, &rest, &rng.elems(&f, dim))?;
    let cap = dim.saturating_sub(param.degree()) + 1;
    let mut coordinates_ok = true;
    for (mi, vi) in inst.mats().iter().zip(param.v()) {
        let mut z = w.clone();
        let mut steps = 0;
        while z.iter().any(|&x| x != 0) {
            if steps == cap {
                coordinates_ok = false;
                break;
            }
            let a = mi.mat_vec(&z)?;
            let b = apply_poly(&mat, vi, &z)?;
            z = a.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect();
            steps += 1;
        }
    }
    let points = truth.map(|t| verify_against_points(param, &t.points));
    let ok = invariants_ok
        && minpoly_annihilates
        && q_divides_minpoly
        && coordinates_ok
        && degree_ok
        && points.as_ref().map_or(true, |p| p.passed());
    let status = match (ok, param.degree() == dim) {
        (false, _) => Status::Failed,
        (true, true) => Status::CertifiedComplete,
        (true, false) => Status::SubsetConsistent,
    };
    Ok(VerifyReport {
        invariants_ok,
        minpoly,
        minpoly_annihilates,
        q_divides_minpoly,
        all_points_found,
        coordinates_ok,
        degree_ok,
        points,
        status,
    })
}
