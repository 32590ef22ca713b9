//! Instances with known solutions.
//!
//! Each point contributes a diagonal block to every `M_i`: a simple point
//! gives `alpha_i`, a point of block size `nu` gives `alpha_i I + c_i N`
//! with `N` the nilpotent shift. The block-diagonal matrices are then
//! conjugated by `S = (I + E)(I + E')` where `E^2 = E'^2 = 0`, `E` is
//! strictly lower and maps the first basis vector to the element `1`, and
//! `E'` is strictly upper.

use std::collections::HashSet;

use bfglm_core::{FieldElem, Instance, Modulus, Poly, Rng, SparseMat};

use crate::error::{ToolError, ToolResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointStructure {
    Simple,
    /// Local algebra `K[e]/(e^nu)`.
    Nilpotent(usize),
}

impl PointStructure {
    pub fn size(&self) -> usize {
        match self {
            PointStructure::Simple => 1,
            PointStructure::Nilpotent(nu) => *nu,
        }
    }
}

/// Requested point: coordinates, block size, and the nilpotent parts `c_i`
/// (ignored for block size 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub coords: Vec<FieldElem>,
    pub size: usize,
    pub nil: Vec<FieldElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub points: Vec<Vec<FieldElem>>,
    pub structure: Vec<PointStructure>,
    /// Pairs of point indices sharing their first coordinate.
    pub collisions: Vec<(usize, usize)>,
}

impl GroundTruth {
    pub fn new(points: Vec<Vec<FieldElem>>, structure: Vec<PointStructure>) -> Self {
        let mut collisions = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].first() == points[j].first() {
                    collisions.push((i, j));
                }
            }
        }
        GroundTruth {
            points,
            structure,
            collisions,
        }
    }

    pub fn dim(&self) -> usize {
        self.structure.iter().map(|s| s.size()).sum()
    }

    /// Points whose local algebra is reduced and whose first coordinate is
    /// unique: the part a first-variable pass can recover.
    pub fn x1_separated(&self) -> Vec<usize> {
        let shared: HashSet<usize> = self.collisions.iter().flat_map(|&(a, b)| [a, b]).collect();
        (0..self.points.len())
            .filter(|i| self.structure[*i] == PointStructure::Simple && !shared.contains(i))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenRequest {
    pub n: usize,
    pub points: Vec<PointSpec>,
    /// Extra off-diagonal entries per row of each conjugation factor.
    pub fill: usize,
    pub conjugate: bool,
}

impl GenRequest {
    pub fn new(n: usize) -> Self {
        GenRequest {
            n,
            points: Vec::new(),
            fill: 2,
            conjugate: true,
        }
    }

    pub fn simple(mut self, coords: Vec<FieldElem>) -> Self {
        let n = coords.len();
        self.points.push(PointSpec {
            coords,
            size: 1,
            nil: vec![0; n],
        });
        self
    }

    pub fn nilpotent(mut self, coords: Vec<FieldElem>, size: usize, nil: Vec<FieldElem>) -> Self {
        self.points.push(PointSpec { coords, size, nil });
        self
    }

    fn fresh_point(&self, f: &Modulus, rng: &mut Rng, first: Option<FieldElem>) -> Vec<FieldElem> {
        loop {
            let mut c = rng.elems(f, self.n);
            if let Some(a) = first {
                c[0] = a;
            }
            if self.points.iter().all(|p| p.coords != c) {
                return c;
            }
        }
    }

    /// Adds a random simple point.
    pub fn add_random(self, f: &Modulus, rng: &mut Rng) -> Self {
        let c = self.fresh_point(f, rng, None);
        self.simple(c)
    }

    /// Adds a random point of block size 2 whose nilpotent part is visible
    /// to the first variable.
    pub fn add_double(self, f: &Modulus, rng: &mut Rng) -> Self {
        let c = self.fresh_point(f, rng, None);
        let mut nil = rng.elems(f, self.n);
        nil[0] = rng.nonzero_elem(f);
        self.nilpotent(c, 2, nil)
    }

    /// Adds a simple point sharing its first coordinate with an earlier one.
    pub fn add_collision(self, f: &Modulus, rng: &mut Rng) -> Self {
        assert!(!self.points.is_empty(), "a collision needs an earlier point");
        let base = self.points[rng.below(self.points.len())].coords[0];
        let c = self.fresh_point(f, rng, Some(base));
        self.simple(c)
    }

    /// `count` random simple points.
    pub fn random(f: &Modulus, n: usize, count: usize, rng: &mut Rng) -> Self {
        (0..count).fold(GenRequest::new(n), |r, _| r.add_random(f, rng))
    }

    /// Random simple points, then points of block size 2, then simple
    /// points colliding with earlier ones in the first coordinate.
    pub fn mixed(f: &Modulus, n: usize, simple: usize, doubles: usize, collisions: usize, rng: &mut Rng) -> Self {
        let r = GenRequest::random(f, n, simple, rng);
        let r = (0..doubles).fold(r, |r, _| r.add_double(f, rng));
        (0..collisions).fold(r, |r, _| r.add_collision(f, rng))
    }

    pub fn dim(&self) -> usize {
        self.points.iter().map(|p| p.size).sum()
    }

    fn validate(&self, f: &Modulus) -> ToolResult<()> {
        let bad = |m: &str| Err(ToolError::InvalidSpec(m.to_string()));
        if self.n == 0 {
            return bad("at least one variable is required");
        }
        if self.points.is_empty() {
            return bad("at least one point is required");
        }
        if self.dim() as u64 >= f.p() {
            return bad("dimension must be below the characteristic");
        }
        let mut seen = HashSet::new();
        for p in &self.points {
            if p.coords.len() != self.n || p.nil.len() != self.n {
                return bad("point with the wrong number of coordinates");
            }
            if p.coords.iter().chain(&p.nil).any(|&x| x >= f.p()) {
                return bad("coordinate outside [0, p)");
            }
            if p.size == 0 {
                return bad("block size must be positive");
            }
            if p.size > 1 && p.nil.iter().all(|&x| x == 0) {
                return bad("a nilpotent block needs a nonzero nilpotent part");
            }
            if !seen.insert(p.coords.clone()) {
                return bad("duplicate point");
            }
        }
        Ok(())
    }
}

/// Builds commuting multiplication matrices with the requested points.
pub fn generate_instance(p: u64, req: &GenRequest, rng: &mut Rng) -> ToolResult<(Instance, GroundTruth)> {
    let f = Modulus::new(p)?;
    req.validate(&f)?;
    let dim = req.dim();
    let mut starts = Vec::with_capacity(req.points.len());
    let mut trips: Vec<Vec<(usize, usize, FieldElem)>> = vec![Vec::new(); req.n];
    let mut off = 0;
    for pt in &req.points {
        starts.push(off);
        for (i, tr) in trips.iter_mut().enumerate() {
            for j in 0..pt.size {
                tr.push((off + j, off + j, pt.coords[i]));
                if j + 1 < pt.size {
                    tr.push((off + j + 1, off + j, pt.nil[i]));
                }
            }
        }
        off += pt.size;
    }
    let mut mats = trips
        .into_iter()
        .map(|t| SparseMat::from_triplets(f, dim, t))
        .collect::<Result<Vec<_>, _>>()?;
    if req.conjugate && dim > 1 {
        let (s, s_inv) = conjugator(&f, dim, &starts, req.fill, rng)?;
        mats = mats
            .iter()
            .map(|m| s_inv.mul(&m.mul(&s)?))
            .collect::<Result<Vec<_>, _>>()?;
    }
    let inst = Instance::new(mats)?;
    let structure = req
        .points
        .iter()
        .map(|p| {
            if p.size == 1 {
                PointStructure::Simple
            } else {
                PointStructure::Nilpotent(p.size)
            }
        })
        .collect();
    let truth = GroundTruth::new(req.points.iter().map(|p| p.coords.clone()).collect(), structure);
    Ok((inst, truth))
}

/// Radical instance in shape position over the basis `1, x_1, .., x_1^(D-1)`:
/// `M_1` is the companion matrix of the first coordinates and
/// `M_i = V_i(M_1)` for random `V_i` of degree `k`. `M_1` stays very sparse
/// while the other matrices get about `k` dense columns.
pub fn generate_shape_instance(
    p: u64,
    dim: usize,
    n: usize,
    k: usize,
    rng: &mut Rng,
) -> ToolResult<(Instance, GroundTruth)> {
    let f = Modulus::new(p)?;
    if n == 0 || dim == 0 || dim as u64 >= p {
        return Err(ToolError::InvalidSpec("need n >= 1 and 1 <= D < p".into()));
    }
    let mut seen = HashSet::new();
    let mut firsts = Vec::with_capacity(dim);
    while firsts.len() < dim {
        let a = rng.elem(&f);
        if seen.insert(a) {
            firsts.push(a);
        }
    }
    let q = Poly::from_roots(f, &firsts);
    let mut trips: Vec<(usize, usize, FieldElem)> = (0..dim - 1).map(|c| (c + 1, c, 1)).collect();
    for j in 0..dim {
        let c = f.neg(q.coeff(j));
        if c != 0 {
            trips.push((j, dim - 1, c));
        }
    }
    let mut mats = vec![SparseMat::from_triplets(f, dim, trips)?];
    let mut shapes = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let v = Poly::from_coeffs(f, rng.elems(&f, k.min(dim - 1) + 1));
        // column c of V(M_1) holds T^c V mod Q
        let mut col = v.coeffs().to_vec();
        col.resize(dim, 0);
        let mut entries = Vec::new();
        for c in 0..dim {
            entries.extend(col.iter().enumerate().filter(|(_, &x)| x != 0).map(|(r, &x)| (r, c, x)));
            let top = col.pop().expect("dim > 0");
            col.insert(0, 0);
            for (x, &qj) in col.iter_mut().zip(q.coeffs()) {
                *x = f.sub(*x, f.mul(top, qj));
            }
        }
        mats.push(SparseMat::from_triplets(f, dim, entries)?);
        shapes.push(v);
    }
    let points = firsts
        .iter()
        .map(|&a| std::iter::once(a).chain(shapes.iter().map(|v| v.eval(a))).collect())
        .collect();
    let inst = Instance::new(mats)?;
    Ok((inst, GroundTruth::new(points, vec![PointStructure::Simple; dim])))
}

/// `S` and `S^(-1)` with `S e_0` equal to the sum of the block-start
/// vectors.
fn conjugator(
    f: &Modulus,
    dim: usize,
    starts: &[usize],
    fill: usize,
    rng: &mut Rng,
) -> ToolResult<(SparseMat, SparseMat)> {
    let is_start: HashSet<usize> = starts.iter().copied().collect();
    // E: rows in `lower_rows`, columns in its complement, strictly lower.
    let lower_rows: Vec<bool> = (0..dim)
        .map(|i| i > 0 && (is_start.contains(&i) || rng.below(2) == 0))
        .collect();
    let lower_cols: Vec<usize> = (0..dim).filter(|&i| !lower_rows[i]).collect();
    let mut e = Vec::new();
    for r in 0..dim {
        if !lower_rows[r] {
            continue;
        }
        if is_start.contains(&r) {
            e.push((r, 0, 1));
        }
        let below: Vec<usize> = lower_cols.iter().copied().filter(|&c| c < r && c > 0).collect();
        for _ in 0..fill.min(below.len()) {
            e.push((r, below[rng.below(below.len())], rng.nonzero_elem(f)));
        }
    }
    // E': strictly upper, rows and columns in complementary random sets.
    let upper_rows: Vec<bool> = (0..dim).map(|_| rng.below(2) == 0).collect();
    let upper_cols: Vec<usize> = (0..dim).filter(|&i| !upper_rows[i]).collect();
    let mut e2 = Vec::new();
    for r in 0..dim {
        if !upper_rows[r] {
            continue;
        }
        let above: Vec<usize> = upper_cols.iter().copied().filter(|&c| c > r).collect();
        for _ in 0..fill.min(above.len()) {
            e2.push((r, above[rng.below(above.len())], rng.nonzero_elem(f)));
        }
    }
    let id = SparseMat::identity(*f, dim);
    let e = SparseMat::from_triplets(*f, dim, e)?;
    let e2 = SparseMat::from_triplets(*f, dim, e2)?;
    let s = id.add(&e)?.mul(&id.add(&e2)?)?;
    let s_inv = id.sub(&e2)?.mul(&id.sub(&e)?)?;
    Ok((s, s_inv))
}
