//! Splitting variant: parametrize the points on which `X_1` already
//! separates using the sparse `M_1` alone, then solve only the remaining
//! points with the dense combination, after subtracting their known
//! contribution from the Krylov sequences.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};
use crate::krylov::{krylov_left_sequence, project_right, KrylovTable};
use crate::numerators::{scalar_numerator_corrected, vector_numerator, NumeratorInputs};
use crate::param::{
    certify_minpoly, certify_separation, check_blocks, generator_stage, parametrization_from_series, table_terms,
    BlockOptions, Instance, RetryLoop, SolveStats, SolverConfig, Stopwatch, ZeroDimParam,
};
use crate::poly::Poly;
use crate::polymat::{left_quotient_row, MatSeq, PolyMat};
use crate::rng::Rng;
use crate::seq::{laurent_expand, power_projection, power_projections, transposed_product, ScalarSeq};
use crate::sparse::{combine_matrices, SparseMat};

/// Attempts at a random linear form before reporting a non-separating form.
const FORM_RETRIES: usize = 3;

/// Quantities of the `X_1` pass reused by the correction step.
#[derive(Clone, Debug)]
pub struct X1SolveCache {
    pub table: KrylovTable,
    pub seq: MatSeq,
    pub generator: PolyMat,
    /// Minimal polynomial of `X_1`.
    pub minpoly: Poly,
    /// `a_i` with `a_i P = minpoly e_i`, one per row.
    pub a_rows: Vec<PolyMat>,
    /// Points where `X_1` separates and the local algebra is reduced,
    /// parametrized by `X_1`.
    pub param_a: ZeroDimParam,
    /// Blocks consumed by numerators.
    pub d: usize,
}

impl X1SolveCache {
    pub fn d_a(&self) -> usize {
        self.param_a.degree()
    }
}

/// Values of the solved part of each projected sequence, at powers of the
/// separating element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionSet {
    /// `2 d_B` matrices, `m x m`, with `d_B = ceil(D_B/m)` (2 if `D_B < m`).
    pub delta: Vec<DenseMat>,
    /// `d_B` matrices, `m x n`.
    pub delta_coord: Vec<DenseMat>,
    /// `d_B` vectors of length `m`.
    pub delta_one: Vec<Vec<FieldElem>>,
    pub d_b: usize,
}

/// Timings and sizes of one splitting solve.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SplitTrace {
    pub d_a: usize,
    pub d_b: usize,
    pub x1_seconds: f64,
    pub correction_seconds: f64,
    pub residual_seconds: f64,
    pub union_seconds: f64,
    pub krylov_seconds: f64,
}

/// First pass on `M_1`. `y` holds the coefficients of `Y = sum_(k>=2) y_k X_k`.
pub fn block_parametrization_x1(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    y: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<(X1SolveCache, ZeroDimParam)> {
    let f = inst.modulus();
    let dim = inst.dim();
    let m = check_blocks(dim, u, v)?;
    let n = inst.n();
    if y.len() + 1 != n {
        return Err(Error::shape("Y needs one coefficient per variable after the first"));
    }
    let d = dim.div_ceil(m);
    let m1 = &inst.mats()[0];
    let table = krylov_left_sequence(m1, u, 2 * d, opts.workers)?;
    let seq = MatSeq::new(project_right(&table, v)?)?;
    let (gen, minpoly, a1) = generator_stage(&seq, d, dim, rng)?;

    // simple roots of the minimal polynomial
    let mut fp = minpoly.squarefree_part()?;
    let repeated = minpoly.gcd(&minpoly.derivative());
    fp = fp.div_exact(&fp.gcd(&repeated))?;

    let unit = inst.unit();
    let ny = apply_sum(inst.mats(), y, &unit)?;
    let nny = apply_sum(inst.mats(), y, &ny)?;
    let mut ws = vec![unit, ny, nny];
    ws.extend((1..n).map(|i| inst.coordinate(i)));
    let terms = table_terms(&table, &ws, d)?;
    let nums = terms
        .iter()
        .map(|e| Ok(a1.mul(&vector_numerator(e, &gen)?)?.get(0, 0).clone()))
        .collect::<Result<Vec<Poly>>>()?;
    let (a0, a1n, a2) = (&nums[0], &nums[1], &nums[2]);
    fp = fp.gcd(&a0.mul(a2).sub(&a1n.mul(a1n)));

    let param_a = if fp.degree().unwrap_or(0) == 0 {
        let mut t = vec![0; n];
        t[0] = 1;
        ZeroDimParam::empty(f, t)
    } else {
        let a0_inv = a0.inv_mod(&fp)?;
        let mut g = vec![Poly::t(f).rem(&fp)?];
        for c in &nums[3..] {
            g.push(c.mul_mod(&a0_inv, &fp)?);
        }
        let mut t = vec![0; n];
        t[0] = 1;
        ZeroDimParam::new(fp, g, t)?
    };

    let mut a_rows = vec![a1];
    for i in 1..m {
        a_rows.push(left_quotient_row(&gen, &minpoly, i)?);
    }
    let cache = X1SolveCache {
        table,
        seq,
        generator: gen,
        minpoly,
        a_rows,
        param_a: param_a.clone(),
        d,
    };
    Ok((cache, param_a))
}

/// `(sum_k y_k M_(k+1)) w`.
fn apply_sum(mats: &[SparseMat], y: &[FieldElem], w: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let f = mats[0].modulus();
    let mut out = vec![0; w.len()];
    for (m, &c) in mats[1..].iter().zip(y) {
        if c == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(m.mat_vec(w)?) {
            *o = f.mul_add(*o, c, x);
        }
    }
    Ok(out)
}

/// Precomputed data for repeated decompositions against one
/// `(minpoly, param_A, t)`.
#[derive(Clone, Debug)]
pub struct Decomposer {
    fp: Poly,
    e_inv: Poly,
    h: Poly,
}

impl Decomposer {
    pub fn new(minpoly: &Poly, param_a: &ZeroDimParam, t: &[FieldElem]) -> Result<Self> {
        let f = minpoly.modulus();
        let fp = param_a.q().clone();
        if t.len() != param_a.n() {
            return Err(Error::shape("one coefficient per variable"));
        }
        let e = minpoly.div_exact(&fp)?;
        let e_inv = e.inv_mod(&fp).map_err(|_| Error::NotCoprime)?;
        let mut h = Poly::zero(f);
        for (g, &c) in param_a.v().iter().zip(t) {
            h.add_scaled_shifted(g, c, 0);
        }
        let h = h.rem(&fp)?;
        Ok(Decomposer { fp, e_inv, h })
    }

    /// `l_A(X^s)` for `s < tau`, from the numerator `C` of `l(X_1^s)` with
    /// respect to the minimal polynomial.
    pub fn apply(&self, c: &Poly, tau: usize) -> Result<ScalarSeq> {
        let f = self.fp.modulus();
        let r = self.fp.degree().unwrap_or(0);
        if r == 0 || tau == 0 || c.is_zero() {
            return Ok(ScalarSeq::new(f, vec![0; tau]));
        }
        let a = c.mul_mod(&self.e_inv, &self.fp)?;
        let v = laurent_expand(&a, &self.fp, r)?;
        power_projection(&self.fp, &self.h, v.terms(), tau)
    }
}

/// Splits the numerator `C` of `l(X_1^s)` as `C/M = A/F + B/E` and returns
/// `l_A(X^s)` for `s < tau`, `X = sum t_i X_i`.
pub fn decompose(minpoly: &Poly, c: &Poly, param_a: &ZeroDimParam, t: &[FieldElem], tau: usize) -> Result<ScalarSeq> {
    Decomposer::new(minpoly, param_a, t)?.apply(c, tau)
}

/// Blocks of the residual sequences. Fewer residual points than columns
/// give a sequence of rank below `m`, whose generator needs at least two
/// blocks to be determined.
fn residual_blocks(d_b: usize, m: usize) -> usize {
    if d_b < m {
        2
    } else {
        d_b.div_ceil(m)
    }
}

/// Correction sequences for the residual solve.
pub fn correction_matrices(
    cache: &X1SolveCache,
    inst: &Instance,
    v: &DenseMat,
    t: &[FieldElem],
) -> Result<CorrectionSet> {
    let f = inst.modulus();
    let dim = inst.dim();
    let (m, n) = (cache.table.m(), inst.n());
    let d_b = dim - cache.d_a().min(dim);
    if d_b == 0 {
        return Err(Error::invalid("nothing left for the residual solve"));
    }
    let db = residual_blocks(d_b, m);
    let mut delta = vec![DenseMat::zeros(f, m, m); 2 * db];
    let mut delta_coord = vec![DenseMat::zeros(f, m, n); db];
    let mut delta_one = vec![vec![0; m]; db];
    if cache.d_a() == 0 {
        return Ok(CorrectionSet {
            delta,
            delta_coord,
            delta_one,
            d_b,
        });
    }
    let dec = Decomposer::new(&cache.minpoly, &cache.param_a, t)?;
    let mut ws: Vec<Vec<FieldElem>> = (0..m).map(|j| v.col(j)).collect();
    ws.extend((0..n).map(|k| inst.coordinate(k)));
    ws.push(inst.unit());
    let terms = table_terms(&cache.table, &ws, cache.d)?;
    for (idx, e) in terms.iter().enumerate() {
        let omega = vector_numerator(e, &cache.generator)?;
        let tau = if idx < m { 2 * db } else { db };
        for (i, a) in cache.a_rows.iter().enumerate() {
            let c = a.mul(&omega)?.get(0, 0).clone();
            let vals = dec.apply(&c, tau)?;
            for (s, &x) in vals.terms().iter().enumerate() {
                if idx < m {
                    delta[s].set(i, idx, x);
                } else if idx < m + n {
                    delta_coord[s].set(i, idx - m, x);
                } else {
                    delta_one[s][i] = x;
                }
            }
        }
    }
    Ok(CorrectionSet {
        delta,
        delta_coord,
        delta_one,
        d_b,
    })
}

/// Solve on the residual points with the combination `M = sum t_i M_i` and
/// corrected sequences. Returns the parametrization and the invariant
/// factor found.
pub fn block_parametrization_residual(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    corr: &CorrectionSet,
    t: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<ZeroDimParam> {
    residual_inner(inst, u, v, corr, t, opts, rng).map(|(p, _)| p)
}

fn residual_inner(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    corr: &CorrectionSet,
    t: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<(ZeroDimParam, f64)> {
    let f = inst.modulus();
    let m = check_blocks(inst.dim(), u, v)?;
    if corr.d_b == 0 {
        return Err(Error::invalid("residual solve with an empty residual"));
    }
    let db = residual_blocks(corr.d_b, m);
    if corr.delta.len() < 2 * db || corr.delta_coord.len() < db || corr.delta_one.len() < db {
        return Err(Error::shape("correction sequences are too short"));
    }
    let mat = combine_matrices(t, inst.mats())?;
    let clock = Stopwatch::start();
    let table = krylov_left_sequence(&mat, u, 2 * db, opts.workers)?;
    let ks = clock.seconds();
    let raw = project_right(&table, v)?;
    let terms = raw
        .iter()
        .zip(&corr.delta)
        .map(|(a, b)| a.sub(b))
        .collect::<Result<Vec<_>>>()?;
    let seq = MatSeq::new(terms)?;
    let (gen, s, a1) = generator_stage(&seq, db, corr.d_b, rng)?;
    let r = s.squarefree_part()?;
    if r.degree().unwrap_or(0) == 0 {
        return Ok((ZeroDimParam::empty(f, t.to_vec()), ks));
    }
    let inp = NumeratorInputs::new(&gen, &s, &a1, &table, db)?;
    let c1 = scalar_numerator_corrected(&inp, &inst.unit(), &corr.delta_one)?;
    let c1_inv = c1.inv_mod(&r)?;
    let mut w = Vec::with_capacity(inst.n());
    for i in 0..inst.n() {
        let col: Vec<Vec<FieldElem>> = corr.delta_coord.iter().map(|d| d.col(i)).collect();
        let c = scalar_numerator_corrected(&inp, &inst.coordinate(i), &col)?;
        w.push(c.mul_mod(&c1_inv, &r)?);
    }
    Ok((ZeroDimParam::new(r, w, t.to_vec())?, ks))
}

/// Re-expresses a parametrization in terms of the separating form
/// `sum t_i X_i`, through power projections on `K[S]/F`.
pub fn change_separating_element(param: &ZeroDimParam, t: &[FieldElem], rng: &mut Rng) -> Result<ZeroDimParam> {
    let f = param.modulus();
    if t.len() != param.n() {
        return Err(Error::shape("one coefficient per variable"));
    }
    let fp = param.q();
    let r = param.degree();
    if r == 0 {
        return Ok(ZeroDimParam::empty(f, t.to_vec()));
    }
    let mut lambda = Poly::zero(f);
    for (g, &c) in param.v().iter().zip(t) {
        lambda.add_scaled_shifted(g, c, 0);
    }
    let lambda = lambda.rem(fp)?;
    for _ in 0..FORM_RETRIES {
        let ell = rng.elems(&f, r);
        let mut forms = vec![ell.clone()];
        for g in param.v() {
            forms.push(transposed_product(fp, g, &ell)?);
        }
        let mut seqs = power_projections(fp, &lambda, &forms, 2 * r)?;
        let coords = seqs.split_off(1);
        match parametrization_from_series(&seqs[0], &coords, r, t) {
            Ok(p) if p.degree() == r => return Ok(p),
            Ok(_) => {}
            Err(e) if e.is_retryable() => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonSeparating)
}

/// Parametrization of the union of two disjoint point sets described with
/// the same separating form.
pub fn union_params(pa: &ZeroDimParam, pb: &ZeroDimParam) -> Result<ZeroDimParam> {
    if pa.t() != pb.t() {
        return Err(Error::invalid(
            "union of parametrizations with different separating forms",
        ));
    }
    if pb.degree() == 0 {
        return Ok(pa.clone());
    }
    if pa.degree() == 0 {
        return Ok(pb.clone());
    }
    let q = pa.q().mul(pb.q());
    let v = pa
        .v()
        .iter()
        .zip(pb.v())
        .map(|(a, b)| Poly::crt_pair(a, pa.q(), b, pb.q()))
        .collect::<Result<Vec<_>>>()?;
    ZeroDimParam::new(q, v, pa.t().to_vec())
}

/// Full splitting pipeline: `X_1` pass, corrections, residual, coordinate
/// change, union. The residual stages are skipped when every point is
/// handled by the first pass.
pub fn block_parametrization_with_splitting(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    t: &[FieldElem],
    y: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<(ZeroDimParam, SplitTrace)> {
    if t.len() != inst.n() {
        return Err(Error::shape("one coefficient per variable"));
    }
    let mut trace = SplitTrace::default();
    let clock = Stopwatch::start();
    let (cache, pa1) = block_parametrization_x1(inst, u, v, y, opts, rng)?;
    certify_minpoly(&inst.mats()[0], &cache.minpoly, rng)?;
    trace.x1_seconds = clock.seconds();
    trace.d_a = cache.d_a();
    trace.d_b = inst.dim() - trace.d_a;

    let pb = if trace.d_b > 0 {
        let clock = Stopwatch::start();
        let corr = correction_matrices(&cache, inst, v, t)?;
        trace.correction_seconds = clock.seconds();
        let clock = Stopwatch::start();
        let (pb, ks) = residual_inner(inst, u, v, &corr, t, opts, rng)?;
        trace.residual_seconds = clock.seconds();
        trace.krylov_seconds += ks;
        pb
    } else {
        ZeroDimParam::empty(inst.modulus(), t.to_vec())
    };
    let clock = Stopwatch::start();
    let pa = change_separating_element(&pa1, t, rng)?;
    let out = union_params(&pa, &pb).map_err(|e| match e {
        Error::NotCoprime => Error::NonSeparating,
        e => e,
    })?;
    trace.union_seconds = clock.seconds();
    Ok((out, trace))
}

/// Instance with variable `k` moved to the front.
fn reorder(inst: &Instance, k: usize) -> Result<Instance> {
    let mut mats = inst.mats().to_vec();
    let first = mats.remove(k);
    mats.insert(0, first);
    Instance::new(mats)
}

fn move_to_front<T: Clone>(xs: &[T], k: usize) -> Vec<T> {
    let mut v = xs.to_vec();
    let x = v.remove(k);
    v.insert(0, x);
    v
}

fn move_back<T: Clone>(xs: &[T], k: usize) -> Vec<T> {
    let mut v = xs.to_vec();
    let x = v.remove(0);
    v.insert(k, x);
    v
}

/// Randomized splitting solve with retries, using variable `x1_index` as
/// the sparse first variable.
pub fn solve_split(
    inst: &Instance,
    cfg: &SolverConfig,
    x1_index: usize,
    rng: &mut Rng,
) -> Result<(ZeroDimParam, SolveStats, SplitTrace)> {
    if x1_index >= inst.n() {
        return Err(Error::invalid("x1 index out of range"));
    }
    let f: Modulus = inst.modulus();
    let clock = Stopwatch::start();
    let work = if x1_index == 0 {
        inst.clone()
    } else {
        reorder(inst, x1_index)?
    };
    let m = cfg.m.clamp(1, inst.dim());
    let opts = BlockOptions {
        workers: cfg.workers,
        streaming: false,
    };
    let mut lp = RetryLoop::new(&f, inst.n(), cfg.retries, rng);
    loop {
        lp.stats.attempts += 1;
        let u = rng.sample_block(&f, inst.dim(), m);
        let v = rng.sample_block(&f, inst.dim(), m);
        let y = rng.elems(&f, inst.n() - 1);
        let t = move_to_front(&lp.t, x1_index);
        let run = block_parametrization_with_splitting(&work, &u, &v, &t, &y, &opts, rng).and_then(|(p, trace)| {
            let out = ZeroDimParam::new(p.q().clone(), move_back(p.v(), x1_index), lp.t.clone())?;
            let mat = combine_matrices(out.t(), inst.mats())?;
            certify_separation(inst, &mat, &out, inst.dim() - out.degree() + 1, rng)?;
            Ok((out, trace))
        });
        match run {
            Ok((out, trace)) => {
                lp.stats.krylov_seconds += trace.krylov_seconds;
                lp.stats.total_seconds = clock.seconds();
                lp.stats.minpoly_degree = out.degree();
                return Ok((out, lp.stats, trace));
            }
            Err(e) => {
                if let Some(e) = lp.fail(e, &f, rng) {
                    return Err(e);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::P101;

    #[test]
    fn union_with_empty_and_two_points() {
        let f = Modulus::new(P101).unwrap();
        let t = vec![1, 0];
        let a = ZeroDimParam::new(
            Poly::from_roots(f, &[1]),
            vec![Poly::constant(f, 1), Poly::constant(f, 4)],
            t.clone(),
        )
        .unwrap();
        let b = ZeroDimParam::new(
            Poly::from_roots(f, &[3]),
            vec![Poly::constant(f, 3), Poly::constant(f, 2)],
            t.clone(),
        )
        .unwrap();
        assert_eq!(union_params(&a, &ZeroDimParam::empty(f, t.clone())).unwrap(), a);
        let u = union_params(&a, &b).unwrap();
        assert_eq!(u.q(), &Poly::from_coeffs(f, vec![3, 97, 1]));
        assert_eq!(u.v()[1], Poly::from_coeffs(f, vec![5, 100]));
        assert_eq!(union_params(&a, &a), Err(Error::NotCoprime));
    }

    #[test]
    fn identity_change_of_form() {
        let f = Modulus::new(P101).unwrap();
        let p = ZeroDimParam::new(
            Poly::from_coeffs(f, vec![3, 97, 1]),
            vec![Poly::t(f), Poly::from_coeffs(f, vec![5, 100])],
            vec![1, 0],
        )
        .unwrap();
        let mut rng = Rng::new(4);
        assert_eq!(change_separating_element(&p, &[1, 0], &mut rng).unwrap(), p);
        let q = change_separating_element(&p, &[7, 11], &mut rng).unwrap();
        // points (1,4) and (3,2) map to 7+44 and 21+22
        assert_eq!(q.q(), &Poly::from_roots(f, &[51, 43]));
        assert_eq!(q.point_at(51), vec![1, 4]);
        assert_eq!(q.point_at(43), vec![3, 2]);
        // X_2 takes distinct values here, X = X_1 + X_2 does not: 1+4 != 3+2 fails
        assert_eq!(
            change_separating_element(&p, &[1, 1], &mut rng),
            Err(Error::NonSeparating)
        );
    }

    #[test]
    fn decompose_edges() {
        let f = Modulus::new(P101).unwrap();
        let m = Poly::from_roots(f, &[1, 3]);
        let pa = ZeroDimParam::new(m.clone(), vec![Poly::t(f)], vec![1]).unwrap();
        assert_eq!(
            decompose(&m, &Poly::zero(f), &pa, &[1], 4).unwrap().terms(),
            &[0, 0, 0, 0]
        );
        assert!(decompose(&m, &Poly::one(f), &pa, &[1], 0).unwrap().is_empty());
        // F = M: the whole sequence comes back. 17 + 33*3^s has numerator 50T+17
        let c = Poly::from_coeffs(f, vec![17, 50]);
        let got = decompose(&m, &c, &pa, &[1], 5).unwrap();
        let want: Vec<u64> = (0..5).map(|s| f.add(17, f.mul(33, f.pow(3, s)))).collect();
        assert_eq!(got.terms(), &want[..]);
        // keep only the root 3
        let pa3 = ZeroDimParam::new(Poly::from_roots(f, &[3]), vec![Poly::constant(f, 3)], vec![1]).unwrap();
        let got = decompose(&m, &c, &pa3, &[1], 4).unwrap();
        let want: Vec<u64> = (0..4).map(|s| f.mul(33, f.pow(3, s))).collect();
        assert_eq!(got.terms(), &want[..]);
    }
}
