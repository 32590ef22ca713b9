//! Seeded randomness. Every probabilistic choice in the crate draws from an
//! explicitly passed [`Rng`]; there is no global state.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::dense::DenseMat;
use crate::field::{FieldElem, Modulus};

#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform element of `[0, p)` by rejection sampling.
    pub fn elem(&mut self, f: &Modulus) -> FieldElem {
        let p = f.p();
        let zone = u64::MAX - (u64::MAX % p);
        loop {
            let x = self.inner.next_u64();
            if x < zone {
                return x % p;
            }
        }
    }

    /// Uniform nonzero element.
    pub fn nonzero_elem(&mut self, f: &Modulus) -> FieldElem {
        loop {
            let x = self.elem(f);
            if x != 0 {
                return x;
            }
        }
    }

    pub fn elems(&mut self, f: &Modulus, count: usize) -> alloc::vec::Vec<FieldElem> {
        (0..count).map(|_| self.elem(f)).collect()
    }

    /// Uniform index in `[0, bound)`.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let b = bound as u64;
        let zone = u64::MAX - (u64::MAX % b);
        loop {
            let x = self.inner.next_u64();
            if x < zone {
                return (x % b) as usize;
            }
        }
    }

    /// Dense `rows x cols` block with uniform entries.
    pub fn sample_block(&mut self, f: &Modulus, rows: usize, cols: usize) -> DenseMat {
        assert!(rows >= 1 && cols >= 1, "block dimensions must be positive");
        let data = self.elems(f, rows * cols);
        DenseMat::from_vec(*f, rows, cols, data)
    }

    /// Independent child stream; the parent advances by one draw.
    pub fn child(&mut self) -> Rng {
        let s = self.inner.next_u64();
        Rng::new(s ^ 0x9e37_79b9_7f4a_7c15)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::P65537;

    #[test]
    fn same_seed_same_block() {
        let f = Modulus::new(P65537).unwrap();
        let a = Rng::new(7).sample_block(&f, 2, 2);
        let b = Rng::new(7).sample_block(&f, 2, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn block_shape_and_range() {
        let f = Modulus::new(101).unwrap();
        let mut rng = Rng::new(1);
        let a = rng.sample_block(&f, 4, 2);
        assert_eq!((a.rows(), a.cols()), (4, 2));
        assert!(a.data().iter().all(|&x| x < 101));
        let one = rng.sample_block(&f, 1, 1);
        assert_eq!(one.data().len(), 1);
    }

    #[test]
    fn children_differ_from_parent() {
        let f = Modulus::new(P65537).unwrap();
        let mut parent = Rng::new(3);
        let mut c1 = parent.child();
        let mut c2 = parent.child();
        assert_ne!(c1.elems(&f, 8), c2.elems(&f, 8));
    }
}
