//! Left block-Krylov sequences `L_s = U^T M^s`.
//!
//! Row `i` of every block depends only on row `i` of `U^T`, so rows are
//! handed to independent workers. Results never depend on the worker count.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMat;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Modulus};
use crate::sparse::SparseMat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrylovTable {
    m: usize,
    dim: usize,
    blocks: Vec<DenseMat>,
}

impl KrylovTable {
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn count(&self) -> usize {
        self.blocks.len()
    }
    pub fn blocks(&self) -> &[DenseMat] {
        &self.blocks
    }
    pub fn block(&self, s: usize) -> &DenseMat {
        &self.blocks[s]
    }
}

fn check_left(m: &SparseMat, u: &DenseMat, count: usize) -> Result<()> {
    if u.rows() != m.dim() {
        return Err(Error::shape("U must have D rows"));
    }
    if u.cols() == 0 {
        return Err(Error::shape("U must have at least one column"));
    }
    if count == 0 {
        return Err(Error::invalid("at least one Krylov block is required"));
    }
    Ok(())
}

/// Runs `job(i)` for every row index `i < m` using up to `workers` threads,
/// returning results in row order.
fn per_row<T, J>(m: usize, workers: usize, job: J) -> Vec<T>
where
    T: Send,
    J: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "std")]
    {
        let workers = workers.max(1).min(m);
        if workers > 1 {
            let mut slots: Vec<Option<T>> = (0..m).map(|_| None).collect();
            std::thread::scope(|scope| {
                let job = &job;
                let mut handles = Vec::new();
                for w in 0..workers {
                    handles.push(scope.spawn(move || (w..m).step_by(workers).map(|i| (i, job(i))).collect::<Vec<_>>()));
                }
                for h in handles {
                    for (i, r) in h.join().expect("Krylov worker panicked") {
                        slots[i] = Some(r);
                    }
                }
            });
            return slots.into_iter().map(|x| x.expect("every row computed")).collect();
        }
    }
    let _ = workers;
    (0..m).map(job).collect()
}

/// Computes `L_0, ..., L_(count-1)` with `L_s = U^T M^s`.
pub fn krylov_left_sequence(mat: &SparseMat, u: &DenseMat, count: usize, workers: usize) -> Result<KrylovTable> {
    check_left(mat, u, count)?;
    let (dim, m) = (mat.dim(), u.cols());
    let rows: Vec<Vec<Vec<FieldElem>>> = per_row(m, workers, |i| {
        let mut seq = Vec::with_capacity(count);
        let mut cur = u.col(i);
        let mut scratch = vec![0u128; dim];
        for s in 0..count {
            if s + 1 < count {
                let mut next = vec![0; dim];
                mat.vec_mat_into(&cur, &mut next, &mut scratch);
                seq.push(core::mem::replace(&mut cur, next));
            } else {
                seq.push(core::mem::take(&mut cur));
            }
        }
        seq
    });
    let f = mat.modulus();
    let blocks = (0..count)
        .map(|s| {
            let mut data = Vec::with_capacity(m * dim);
            for r in &rows {
                data.extend_from_slice(&r[s]);
            }
            DenseMat::from_vec(f, m, dim, data)
        })
        .collect();
    Ok(KrylovTable { m, dim, blocks })
}

/// `F_s = L_s V` for every block of the table.
pub fn project_right(table: &KrylovTable, v: &DenseMat) -> Result<Vec<DenseMat>> {
    if v.rows() != table.dim {
        return Err(Error::shape("V must have D rows"));
    }
    table.blocks.iter().map(|b| b.mul(v)).collect()
}

/// `E_s = L_s w` for every block of the table.
pub fn project_vector(table: &KrylovTable, w: &[FieldElem]) -> Result<Vec<Vec<FieldElem>>> {
    if w.len() != table.dim {
        return Err(Error::shape("w must have length D"));
    }
    table.blocks.iter().map(|b| b.mul_vec(w)).collect()
}

/// Streaming variant: returns `U^T M^s R` for `s < count` without keeping
/// the blocks `L_s`. `R` is `D x k`; each output is `m x k`.
pub fn krylov_projected(
    mat: &SparseMat,
    u: &DenseMat,
    right: &DenseMat,
    count: usize,
    workers: usize,
) -> Result<Vec<DenseMat>> {
    check_left(mat, u, count)?;
    if right.rows() != mat.dim() {
        return Err(Error::shape("right projection must have D rows"));
    }
    let (dim, m, k) = (mat.dim(), u.cols(), right.cols());
    let f: Modulus = mat.modulus();
    let rt = right.transpose();
    let rows: Vec<Vec<Vec<FieldElem>>> = per_row(m, workers, |i| {
        let mut out = Vec::with_capacity(count);
        let mut cur = u.col(i);
        let mut next = vec![0; dim];
        let mut scratch = vec![0u128; dim];
        for s in 0..count {
            out.push((0..k).map(|j| f.dot(&cur, rt.row(j))).collect::<Vec<_>>());
            if s + 1 < count {
                mat.vec_mat_into(&cur, &mut next, &mut scratch);
                core::mem::swap(&mut cur, &mut next);
            }
        }
        out
    });
    Ok((0..count)
        .map(|s| {
            let mut data = Vec::with_capacity(m * k);
            for r in &rows {
                data.extend_from_slice(&r[s]);
            }
            DenseMat::from_vec(f, m, k, data)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::P101;
    use crate::rng::Rng;
    use crate::sparse::combine_matrices;

    fn example(f: Modulus) -> (SparseMat, DenseMat, DenseMat) {
        let m1 = DenseMat::from_rows(
            f,
            &[&[7, 91, 100, 0], &[41, 2, 20, 0], &[100, 10, 8, 1], &[1, 71, 86, 0]],
        );
        let m2 = DenseMat::from_rows(f, &[&[40, 1, 91, 0], &[5, 0, 2, 1], &[0, 0, 10, 0], &[81, 0, 71, 0]]);
        let m = combine_matrices(
            &[2, 53],
            &[SparseMat::from_dense(&m1).unwrap(), SparseMat::from_dense(&m2).unwrap()],
        )
        .unwrap();
        let u = DenseMat::from_rows(f, &[&[84, 38], &[29, 58], &[80, 43], &[7, 82]]);
        let v = DenseMat::from_rows(f, &[&[6, 97], &[83, 58], &[0, 95], &[59, 89]]);
        (m, u, v)
    }

    #[test]
    fn worked_example_blocks() {
        let f = Modulus::new(P101).unwrap();
        let (m, u, v) = example(f);
        let t = krylov_left_sequence(&m, &u, 4, 2).unwrap();
        let want: [&[&[u64]]; 4] = [
            &[&[84, 29, 80, 7], &[38, 58, 43, 82]],
            &[&[54, 28, 67, 81], &[34, 52, 90, 29]],
            &[&[33, 91, 3, 2], &[47, 77, 47, 7]],
            &[&[89, 80, 87, 82], &[34, 56, 55, 34]],
        ];
        for (s, w) in want.iter().enumerate() {
            assert_eq!(t.block(s), &DenseMat::from_rows(f, w));
        }
        let seq = project_right(&t, &v).unwrap();
        assert_eq!(seq[0], DenseMat::from_rows(f, &[&[92, 75], &[83, 51]]));
        assert_eq!(seq[1], DenseMat::from_rows(f, &[&[54, 34], &[70, 73]]));
        assert_eq!(seq[2], DenseMat::from_rows(f, &[&[92, 54], &[16, 74]]));
        assert_eq!(seq[3], DenseMat::from_rows(f, &[&[94, 51], &[91, 51]]));
        let e = project_vector(&t, &[1, 0, 0, 0]).unwrap();
        assert_eq!(e, vec![vec![84, 38], vec![54, 34], vec![33, 47], vec![89, 34]]);
        assert!(project_vector(&t, &[0; 4]).unwrap().iter().all(|x| x == &vec![0, 0]));
        let single = krylov_left_sequence(&m, &u, 1, 1).unwrap();
        assert_eq!(single.blocks(), &[u.transpose()]);
    }

    #[test]
    fn worker_budget_does_not_matter() {
        let f = Modulus::new(65537).unwrap();
        let mut rng = Rng::new(9);
        let dim = 30;
        let trip = (0..150)
            .map(|_| (rng.below(dim), rng.below(dim), rng.elem(&f)))
            .collect();
        let m = SparseMat::from_triplets(f, dim, trip).unwrap();
        let u = rng.sample_block(&f, dim, 4);
        let a = krylov_left_sequence(&m, &u, 12, 1).unwrap();
        let b = krylov_left_sequence(&m, &u, 12, 4).unwrap();
        assert_eq!(a, b);
        let dense = m.to_dense();
        for s in 0..11 {
            assert_eq!(a.block(s).mul(&dense).unwrap(), *a.block(s + 1));
        }
        let r = rng.sample_block(&f, dim, 3);
        let streamed = krylov_projected(&m, &u, &r, 12, 3).unwrap();
        assert_eq!(streamed, project_right(&a, &r).unwrap());
    }
}
