//! Zero-dimensional parametrizations: the abstract algorithm on scalar
//! sequences and the block-Krylov solver.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};
use crate::krylov::{krylov_left_sequence, krylov_projected, project_right, project_vector, KrylovTable};
use crate::numerators::scalar_numerator_from_terms;
use crate::poly::Poly;
use crate::polymat::{largest_invariant_factor, left_quotient_row, minimal_matrix_generator, MatSeq, PolyMat};
use crate::rng::Rng;
use crate::seq::{berlekamp_massey, scalar_numerator_direct, ScalarSeq};
use crate::sparse::{combine_matrices, SparseMat};

/// `((Q, V_1, ..., V_n), X)` with `X = sum t_i X_i`: the points are
/// `(V_1(r), ..., V_n(r))` for the roots `r` of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDimParam {
    q: Poly,
    v: Vec<Poly>,
    t: Vec<FieldElem>,
}

impl ZeroDimParam {
    /// Validates: `Q` monic and squarefree, `deg V_i < deg Q`, and
    /// `sum t_i V_i = T mod Q`.
    pub fn new(q: Poly, v: Vec<Poly>, t: Vec<FieldElem>) -> Result<Self> {
        let p = ZeroDimParam { q, v, t };
        p.check()?;
        Ok(p)
    }

    /// Parametrization of the empty set.
    pub fn empty(f: Modulus, t: Vec<FieldElem>) -> Self {
        let n = t.len();
        ZeroDimParam {
            q: Poly::one(f),
            v: vec![Poly::zero(f); n],
            t,
        }
    }

    pub fn check(&self) -> Result<()> {
        let f = self.q.modulus();
        if self.v.len() != self.t.len() {
            return Err(Error::shape("one coordinate polynomial per variable"));
        }
        if !self.q.is_monic() {
            return Err(Error::GenericityFailure("Q is not monic"));
        }
        if !self.q.is_squarefree() {
            return Err(Error::GenericityFailure("Q is not squarefree"));
        }
        let dq = self.q.degree().expect("monic");
        if self.v.iter().any(|x| x.len() > dq) {
            return Err(Error::GenericityFailure("coordinate polynomial not reduced modulo Q"));
        }
        let mut sum = Poly::zero(f);
        for (vi, &ti) in self.v.iter().zip(&self.t) {
            sum.add_scaled_shifted(vi, ti, 0);
        }
        if sum != Poly::t(f).rem(&self.q)? {
            return Err(Error::GenericityFailure("separating form does not evaluate to T"));
        }
        Ok(())
    }

    pub fn modulus(&self) -> Modulus {
        self.q.modulus()
    }
    pub fn q(&self) -> &Poly {
        &self.q
    }
    pub fn v(&self) -> &[Poly] {
        &self.v
    }
    pub fn t(&self) -> &[FieldElem] {
        &self.t
    }
    pub fn n(&self) -> usize {
        self.t.len()
    }
    /// Number of points.
    pub fn degree(&self) -> usize {
        self.q.degree().unwrap_or(0)
    }

    /// The point attached to a root `r` of `Q`.
    pub fn point_at(&self, r: FieldElem) -> Vec<FieldElem> {
        self.v.iter().map(|p| p.eval(r)).collect()
    }

    /// Value of the separating form at a point.
    pub fn form_value(&self, point: &[FieldElem]) -> FieldElem {
        let f = self.modulus();
        self.t.iter().zip(point).fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
    }
}

/// Multiplication matrices of a zero-dimensional quotient algebra, in a
/// basis whose first element is `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    f: Modulus,
    dim: usize,
    mats: Vec<SparseMat>,
}

impl Instance {
    /// Checks shapes, `p > D`, and commutativity on random vectors.
    pub fn new(mats: Vec<SparseMat>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::invalid("at least one matrix is required"))?;
        let (f, dim) = (first.modulus(), first.dim());
        if dim == 0 {
            return Err(Error::invalid("algebra dimension must be positive"));
        }
        if mats.iter().any(|m| m.dim() != dim || m.modulus() != f) {
            return Err(Error::shape("all matrices must share dimension and modulus"));
        }
        if f.p() <= dim as u64 {
            return Err(Error::invalid("characteristic must exceed the dimension"));
        }
        let mut rng = Rng::new(0x00c0_ffee);
        for _ in 0..2 {
            let w = rng.elems(&f, dim);
            let images: Vec<Vec<FieldElem>> = mats.iter().map(|m| m.mat_vec(&w).expect("shape")).collect();
            for i in 0..mats.len() {
                for j in i + 1..mats.len() {
                    if mats[i].mat_vec(&images[j])? != mats[j].mat_vec(&images[i])? {
                        return Err(Error::invalid("multiplication matrices do not commute"));
                    }
                }
            }
        }
        Ok(Instance { f, dim, mats })
    }

    pub fn modulus(&self) -> Modulus {
        self.f
    }
    pub fn n(&self) -> usize {
        self.mats.len()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mats(&self) -> &[SparseMat] {
        &self.mats
    }

    /// The unit vector of the basis element `1`.
    pub fn unit(&self) -> Vec<FieldElem> {
        let mut e = vec![0; self.dim];
        e[0] = 1;
        e
    }

    /// Coordinates of `X_i`: `M_i` applied to the unit vector.
    pub fn coordinate(&self, i: usize) -> Vec<FieldElem> {
        self.mats[i].column(0)
    }
}

/// `p(M) w` by Horner's rule.
pub fn apply_poly(m: &SparseMat, p: &Poly, w: &[FieldElem]) -> Result<Vec<FieldElem>> {
    let f = m.modulus();
    let mut acc = vec![0; w.len()];
    for &c in p.coeffs().iter().rev() {
        acc = m.mat_vec(&acc)?;
        for (a, &x) in acc.iter_mut().zip(w) {
            *a = f.mul_add(*a, c, x);
        }
    }
    Ok(acc)
}

/// Parametrization from the values `l(X^s)` and `l(X_i X^s)` of a linear
/// form: minimal polynomial by Berlekamp-Massey, then numerator quotients.
/// Each sequence needs at least `2 bound` terms.
pub fn parametrization_from_series(
    ell_powers: &ScalarSeq,
    ell_coord: &[ScalarSeq],
    bound: usize,
    t: &[FieldElem],
) -> Result<ZeroDimParam> {
    let f = ell_powers.modulus();
    if ell_coord.len() != t.len() {
        return Err(Error::shape("one coordinate sequence per variable"));
    }
    for s in core::iter::once(ell_powers).chain(ell_coord) {
        if s.len() < 2 * bound {
            return Err(Error::InsufficientTerms {
                needed: 2 * bound,
                got: s.len(),
            });
        }
    }
    let p = berlekamp_massey(ell_powers, bound);
    if p.is_one() {
        return Ok(ZeroDimParam::empty(f, t.to_vec()));
    }
    let q = p.squarefree_part()?;
    let c1 = scalar_numerator_direct(ell_powers, &p)?;
    let c1_inv = c1.inv_mod(&q)?;
    let v = ell_coord
        .iter()
        .map(|s| scalar_numerator_direct(s, &p)?.mul_mod(&c1_inv, &q))
        .collect::<Result<Vec<_>>>()?;
    ZeroDimParam::new(q, v, t.to_vec())
}

/// Execution options of a single block solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockOptions {
    pub workers: usize,
    /// Project on the fly instead of storing the blocks `U^T M^s`.
    pub streaming: bool,
}

impl Default for BlockOptions {
    fn default() -> Self {
        BlockOptions {
            workers: 1,
            streaming: false,
        }
    }
}

/// Intermediate values of one block solve.
#[derive(Clone, Debug)]
pub struct BlockTrace {
    pub seq: MatSeq,
    pub generator: PolyMat,
    pub s1: Poly,
    pub q: Poly,
    pub a1: PolyMat,
    pub c1: Poly,
    pub c_coord: Vec<Poly>,
    pub krylov_seconds: f64,
}

#[cfg(feature = "std")]
pub(crate) struct Stopwatch(std::time::Instant);
#[cfg(feature = "std")]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }
    pub(crate) fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}
#[cfg(not(feature = "std"))]
pub(crate) struct Stopwatch;
#[cfg(not(feature = "std"))]
impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch
    }
    pub(crate) fn seconds(&self) -> f64 {
        0.0
    }
}

pub(crate) fn check_blocks(dim: usize, u: &DenseMat, v: &DenseMat) -> Result<usize> {
    let m = u.cols();
    if u.rows() != dim || v.rows() != dim || v.cols() != m {
        return Err(Error::shape("U and V must both be D x m"));
    }
    if m == 0 || m > dim {
        return Err(Error::invalid("block size must satisfy 1 <= m <= D"));
    }
    Ok(m)
}

/// Generator, largest invariant factor and first quotient row of a matrix
/// sequence with `2d` terms.
pub(crate) fn generator_stage(seq: &MatSeq, d: usize, dim: usize, rng: &mut Rng) -> Result<(PolyMat, Poly, PolyMat)> {
    let gen = minimal_matrix_generator(seq, d, d)?;
    let s1 = largest_invariant_factor(&gen, rng)?;
    if s1.degree().unwrap_or(0) > dim {
        return Err(Error::GenericityFailure("invariant factor exceeds the dimension"));
    }
    let a1 = left_quotient_row(&gen, &s1, 0)?;
    Ok((gen, s1, a1))
}

/// First `count` projections of each vector in `ws` through a table.
pub(crate) fn table_terms(
    table: &KrylovTable,
    ws: &[Vec<FieldElem>],
    count: usize,
) -> Result<Vec<Vec<Vec<FieldElem>>>> {
    ws.iter()
        .map(|w| {
            let mut e = project_vector(table, w)?;
            e.truncate(count);
            Ok(e)
        })
        .collect()
}

/// Block-Krylov parametrization with separating form `sum t_i X_i`.
pub fn block_parametrization(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    t: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<ZeroDimParam> {
    block_parametrization_traced(inst, u, v, t, opts, rng).map(|(p, _)| p)
}

pub fn block_parametrization_traced(
    inst: &Instance,
    u: &DenseMat,
    v: &DenseMat,
    t: &[FieldElem],
    opts: &BlockOptions,
    rng: &mut Rng,
) -> Result<(ZeroDimParam, BlockTrace)> {
    let f = inst.modulus();
    let dim = inst.dim();
    let m = check_blocks(dim, u, v)?;
    if t.len() != inst.n() {
        return Err(Error::shape("one coefficient per variable"));
    }
    let mat = combine_matrices(t, inst.mats())?;
    let d = dim.div_ceil(m);
    let mut ws = vec![inst.unit()];
    ws.extend((0..inst.n()).map(|i| inst.coordinate(i)));

    let clock = Stopwatch::start();
    let (seq_terms, num_terms) = if opts.streaming {
        let k = ws.len();
        let mut right = DenseMat::zeros(f, dim, m + k);
        for r in 0..dim {
            for j in 0..m {
                right.set(r, j, v.get(r, j));
            }
            for (j, w) in ws.iter().enumerate() {
                right.set(r, m + j, w[r]);
            }
        }
        let blocks = krylov_projected(&mat, u, &right, 2 * d, opts.workers)?;
        let seq_terms: Vec<DenseMat> = blocks
            .iter()
            .map(|b| {
                let mut s = DenseMat::zeros(f, m, m);
                for i in 0..m {
                    for j in 0..m {
                        s.set(i, j, b.get(i, j));
                    }
                }
                s
            })
            .collect();
        let num_terms: Vec<Vec<Vec<FieldElem>>> = (0..k)
            .map(|j| {
                blocks[..d]
                    .iter()
                    .map(|b| (0..m).map(|i| b.get(i, m + j)).collect())
                    .collect()
            })
            .collect();
        (seq_terms, num_terms)
    } else {
        let table = krylov_left_sequence(&mat, u, 2 * d, opts.workers)?;
        (project_right(&table, v)?, table_terms(&table, &ws, d)?)
    };
    let krylov_seconds = clock.seconds();

    let seq = MatSeq::new(seq_terms)?;
    let (gen, s1, a1) = generator_stage(&seq, d, dim, rng)?;
    let q = s1.squarefree_part()?;
    let c1 = scalar_numerator_from_terms(&gen, &a1, &num_terms[0])?;
    let c_coord = num_terms[1..]
        .iter()
        .map(|e| scalar_numerator_from_terms(&gen, &a1, e))
        .collect::<Result<Vec<_>>>()?;
    let c1_inv = c1.inv_mod(&q)?;
    let vs = c_coord
        .iter()
        .map(|c| c.mul_mod(&c1_inv, &q))
        .collect::<Result<Vec<_>>>()?;
    let param = ZeroDimParam::new(q.clone(), vs, t.to_vec())?;
    let trace = BlockTrace {
        seq,
        generator: gen,
        s1,
        q,
        a1,
        c1,
        c_coord,
        krylov_seconds,
    };
    Ok((param, trace))
}

/// Solver configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub m: usize,
    pub workers: usize,
    /// Additional attempts after the first.
    pub retries: usize,
    pub streaming: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            m: 2,
            workers: 1,
            retries: 8,
            streaming: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    pub attempts: usize,
    pub t_resamples: usize,
    pub krylov_seconds: f64,
    pub total_seconds: f64,
    /// Degree of the minimal polynomial of the separating element.
    pub minpoly_degree: usize,
    pub failures: Vec<Error>,
}

/// Drives the retry policy shared by the solvers: fresh `U, V` on every
/// failure, a fresh `t` after two consecutive failures with the same `t`.
pub(crate) struct RetryLoop {
    pub(crate) t: Vec<FieldElem>,
    same_t_failures: usize,
    pub(crate) stats: SolveStats,
    limit: usize,
}

impl RetryLoop {
    pub(crate) fn new(f: &Modulus, n: usize, retries: usize, rng: &mut Rng) -> Self {
        RetryLoop {
            t: rng.elems(f, n),
            same_t_failures: 0,
            stats: SolveStats::default(),
            limit: retries + 1,
        }
    }

    /// Records a failure; returns the error to propagate if the loop ends.
    pub(crate) fn fail(&mut self, e: Error, f: &Modulus, rng: &mut Rng) -> Option<Error> {
        if !e.is_retryable() {
            return Some(e);
        }
        self.stats.failures.push(e);
        if self.stats.attempts >= self.limit {
            return Some(Error::UnluckyRandomness {
                attempts: self.stats.attempts,
            });
        }
        self.same_t_failures += 1;
        if self.same_t_failures >= 2 || matches!(self.stats.failures.last(), Some(Error::NonSeparating)) {
            let n = self.t.len();
            self.t = rng.elems(f, n);
            self.same_t_failures = 0;
            self.stats.t_resamples += 1;
        }
        None
    }
}

/// Confirms that `s1(M) w = 0` for a random `w`.
pub(crate) fn certify_minpoly(mat: &SparseMat, s1: &Poly, rng: &mut Rng) -> Result<()> {
    let w = rng.elems(&mat.modulus(), mat.dim());
    if apply_poly(mat, s1, &w)?.iter().any(|&x| x != 0) {
        return Err(Error::GenericityFailure("invariant factor does not annihilate M"));
    }
    Ok(())
}

/// Checks that `t` separates the points of `param`: for a random `c`,
/// `M_c - V_c(M)` must vanish on a random vector after at most `cap`
/// applications. Two points merged by `t` make it non-nilpotent. One round
/// misses with probability about `2/p`; rounds are repeated until that is
/// below `1e-8`. Each round costs about `deg Q` products by `M`.
pub(crate) fn certify_separation(
    inst: &Instance,
    mat: &SparseMat,
    param: &ZeroDimParam,
    cap: usize,
    rng: &mut Rng,
) -> Result<()> {
    if param.degree() == 0 {
        return Ok(());
    }
    let miss = 2.0 / inst.modulus().p() as f64;
    let mut bound = miss;
    loop {
        separation_round(inst, mat, param, cap, rng)?;
        if bound < 1e-8 {
            return Ok(());
        }
        bound *= miss;
    }
}

fn separation_round(inst: &Instance, mat: &SparseMat, param: &ZeroDimParam, cap: usize, rng: &mut Rng) -> Result<()> {
    let f = inst.modulus();
    let c = rng.elems(&f, inst.n());
    let mc = combine_matrices(&c, inst.mats())?;
    let vc = c
        .iter()
        .zip(param.v())
        .fold(Poly::zero(f), |acc, (&ci, vi)| acc.add(&vi.scale(ci)));
    let mut z = rng.elems(&f, inst.dim());
    for _ in 0..cap {
        let a = mc.mat_vec(&z)?;
        let b = apply_poly(mat, &vc, &z)?;
        z = a.iter().zip(&b).map(|(&x, &y)| f.sub(x, y)).collect();
        if z.iter().all(|&x| x == 0) {
            return Ok(());
        }
    }
    Err(Error::NonSeparating)
}

/// Randomized block solve with retries; `m` is clamped to `D`.
pub fn solve(inst: &Instance, cfg: &SolverConfig, rng: &mut Rng) -> Result<(ZeroDimParam, SolveStats)> {
    let f = inst.modulus();
    let clock = Stopwatch::start();
    let m = cfg.m.clamp(1, inst.dim());
    let opts = BlockOptions {
        workers: cfg.workers,
        streaming: cfg.streaming,
    };
    let mut lp = RetryLoop::new(&f, inst.n(), cfg.retries, rng);
    loop {
        lp.stats.attempts += 1;
        let u = rng.sample_block(&f, inst.dim(), m);
        let v = rng.sample_block(&f, inst.dim(), m);
        let t = lp.t.clone();
        let run = block_parametrization_traced(inst, &u, &v, &t, &opts, rng).and_then(|(p, tr)| {
            let mat = combine_matrices(&t, inst.mats())?;
            // also catches a wrong invariant factor: V_c(M) is then wrong
            // on the missed eigenspaces
            let cap = tr.s1.degree().unwrap_or(0) - p.degree() + 1;
            certify_separation(inst, &mat, &p, cap, rng)?;
            Ok((p, tr))
        });
        match run {
            Ok((p, tr)) => {
                lp.stats.krylov_seconds += tr.krylov_seconds;
                lp.stats.total_seconds = clock.seconds();
                lp.stats.minpoly_degree = tr.s1.degree().unwrap_or(0);
                return Ok((p, lp.stats));
            }
            Err(e) => {
                if let Some(e) = lp.fail(e, &f, rng) {
                    return Err(e);
                }
            }
        }
    }
}

/// Outcome of comparing a parametrization with known points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    /// `deg Q` equals the number of distinct form values on the points.
    pub degree_ok: bool,
    pub distinct_values: usize,
    /// Per point: `Q(X(a)) = 0` and `V_i(X(a)) = a_i`.
    pub point_ok: Vec<bool>,
    /// No points were supplied.
    pub vacuous: bool,
}

impl PointReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.point_ok.iter().all(|&b| b)
    }
}

/// Checks a parametrization against a list of points. Together, the
/// degree check and the per-point checks certify equality of point sets.
pub fn verify_against_points(param: &ZeroDimParam, truth: &[Vec<FieldElem>]) -> PointReport {
    let mut values: Vec<FieldElem> = truth.iter().map(|a| param.form_value(a)).collect();
    let point_ok = truth
        .iter()
        .map(|a| {
            let x = param.form_value(a);
            a.len() == param.n() && param.q().eval(x) == 0 && param.point_at(x) == *a
        })
        .collect();
    values.sort_unstable();
    values.dedup();
    PointReport {
        degree_ok: truth.is_empty() || param.degree() == values.len(),
        distinct_values: values.len(),
        point_ok,
        vacuous: truth.is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::P101;

    fn example() -> (Instance, DenseMat, DenseMat) {
        let f = Modulus::new(P101).unwrap();
        let m1 = DenseMat::from_rows(
            f,
            &[&[7, 91, 100, 0], &[41, 2, 20, 0], &[100, 10, 8, 1], &[1, 71, 86, 0]],
        );
        let m2 = DenseMat::from_rows(f, &[&[40, 1, 91, 0], &[5, 0, 2, 1], &[0, 0, 10, 0], &[81, 0, 71, 0]]);
        let inst = Instance::new(vec![
            SparseMat::from_dense(&m1).unwrap(),
            SparseMat::from_dense(&m2).unwrap(),
        ])
        .unwrap();
        let u = DenseMat::from_rows(f, &[&[84, 38], &[29, 58], &[80, 43], &[7, 82]]);
        let v = DenseMat::from_rows(f, &[&[6, 97], &[83, 58], &[0, 95], &[59, 89]]);
        (inst, u, v)
    }

    #[test]
    fn worked_example_both_modes() {
        let (inst, u, v) = example();
        let f = inst.modulus();
        for streaming in [false, true] {
            let opts = BlockOptions { workers: 2, streaming };
            let (p, tr) = block_parametrization_traced(&inst, &u, &v, &[2, 53], &opts, &mut Rng::new(3)).unwrap();
            assert_eq!(p.q(), &Poly::from_coeffs(f, vec![61, 8, 1]));
            assert_eq!(
                p.v(),
                &[Poly::from_coeffs(f, vec![14, 15]), Poly::from_coeffs(f, vec![9, 49])]
            );
            assert_eq!(tr.c1, Poly::from_coeffs(f, vec![13, 75, 84]));
            assert_eq!(tr.c_coord[0], Poly::from_coeffs(f, vec![16, 47, 88]));
            let rep = verify_against_points(&p, &[vec![4, 10], vec![5, 20]]);
            assert!(rep.passed());
        }
    }

    #[test]
    fn wrong_point_is_flagged() {
        let (inst, u, v) = example();
        let p = block_parametrization(&inst, &u, &v, &[2, 53], &BlockOptions::default(), &mut Rng::new(3)).unwrap();
        let rep = verify_against_points(&p, &[vec![4, 10], vec![5, 21]]);
        assert_eq!(rep.point_ok, vec![true, false]);
        assert!(!rep.passed());
        let empty = verify_against_points(&p, &[]);
        assert!(empty.vacuous && empty.passed());
    }

    #[test]
    fn series_example_two_points() {
        let f = Modulus::new(P101).unwrap();
        // l = 17 f(1,4) + 33 f(3,2), X = X_1
        let powers: Vec<u64> = (0..4).map(|s| f.add(17, f.mul(33, f.pow(3, s)))).collect();
        let x2: Vec<u64> = (0..4)
            .map(|s| f.add(f.mul(17, 4), f.mul(33, f.mul(2, f.pow(3, s)))))
            .collect();
        let x1: Vec<u64> = (0..4).map(|s| f.add(17, f.mul(33, f.pow(3, s + 1)))).collect();
        let p = parametrization_from_series(
            &ScalarSeq::new(f, powers),
            &[ScalarSeq::new(f, x1), ScalarSeq::new(f, x2)],
            2,
            &[1, 0],
        )
        .unwrap();
        assert_eq!(p.q(), &Poly::from_coeffs(f, vec![3, 97, 1]));
        assert_eq!(p.v()[1], Poly::from_coeffs(f, vec![5, 100]));
        assert_eq!((p.v()[1].eval(1), p.v()[1].eval(3)), (4, 2));
    }

    #[test]
    fn dimension_one() {
        let f = Modulus::new(P101).unwrap();
        let mats = vec![
            SparseMat::from_triplets(f, 1, vec![(0, 0, 7)]).unwrap(),
            SparseMat::from_triplets(f, 1, vec![(0, 0, 9)]).unwrap(),
        ];
        let inst = Instance::new(mats).unwrap();
        let cfg = SolverConfig {
            m: 3,
            ..SolverConfig::default()
        };
        let (p, _) = solve(&inst, &cfg, &mut Rng::new(5)).unwrap();
        let x = f.add(f.mul(p.t()[0], 7), f.mul(p.t()[1], 9));
        assert_eq!(p.q(), &Poly::from_roots(f, &[x]));
        assert_eq!(p.v(), &[Poly::constant(f, 7), Poly::constant(f, 9)]);
    }

    #[test]
    fn rejects_bad_instances() {
        let f = Modulus::new(P101).unwrap();
        let a = SparseMat::from_triplets(f, 2, vec![(0, 1, 1)]).unwrap();
        let b = SparseMat::from_triplets(f, 2, vec![(1, 0, 1)]).unwrap();
        assert!(Instance::new(vec![a, b]).is_err());
        let small = Modulus::new(3).unwrap();
        assert!(Instance::new(vec![SparseMat::identity(small, 3)]).is_err());
    }
}
