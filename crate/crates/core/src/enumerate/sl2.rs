use std::collections::HashMap;

use rayon::prelude::*;

use crate::continuant::Mat2;
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// Every determinant-one matrix over a ring, with the left action of each
/// generator `E(a)` tabulated as index maps.
#[derive(Debug, Clone)]
pub struct Sl2Table {
    matrices: Vec<Mat2>,
    index: HashMap<Mat2, u32>,
    identity: usize,
    step: Vec<Vec<u32>>,
    inverse_step: Vec<Vec<u32>>,
}

impl Sl2Table {
    /// Scan all `|A|^4` candidate matrices. Fails when `|A| > max_ring_size`.
    pub fn build(r: &Ring, max_ring_size: usize) -> Result<Sl2Table> {
        let n = r.size();
        if n > max_ring_size {
            return Err(Error::Budget(format!(
                "SL2 scan over a ring of {n} elements exceeds the limit of {max_ring_size}"
            )));
        }
        let one = r.one();
        let matrices: Vec<Mat2> = (0..n as u32)
            .into_par_iter()
            .flat_map_iter(|a| {
                let a = Elem(a);
                let mut out = Vec::new();
                for b in r.elements() {
                    for c in r.elements() {
                        let bc = r.mul(b, c);
                        for d in r.elements() {
                            if r.sub(r.mul(a, d), bc) == one {
                                out.push(Mat2::new(a, b, c, d));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let index: HashMap<Mat2, u32> = matrices
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, i as u32))
            .collect();
        let identity = index[&Mat2::identity(r)] as usize;

        let step: Vec<Vec<u32>> = r
            .elements()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&a| matrices.iter().map(|m| index[&m.left_step(r, a)]).collect())
            .collect();
        let inverse_step = step
            .iter()
            .map(|map| {
                let mut inv = vec![0u32; map.len()];
                for (i, &j) in map.iter().enumerate() {
                    inv[j as usize] = i as u32;
                }
                inv
            })
            .collect();
        Ok(Sl2Table {
            matrices,
            index,
            identity,
            step,
            inverse_step,
        })
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[Mat2] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> Mat2 {
        self.matrices[i]
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// `i ↦ index of E(a) · matrices[i]`.
    pub fn step(&self, a: Elem) -> &[u32] {
        &self.step[a.index()]
    }

    /// The inverse permutation of [`Sl2Table::step`].
    pub fn inverse_step(&self, a: Elem) -> &[u32] {
        &self.inverse_step[a.index()]
    }
}
