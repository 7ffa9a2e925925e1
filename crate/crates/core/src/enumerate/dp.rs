use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::sl2::Sl2Table;
use crate::continuant::Mat2;
use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// Scalar type for exact counts.
pub trait Count: Clone + Zero + One + Send + Sync + for<'a> AddAssign<&'a Self> {
    /// Whether every value up to `bound` is representable.
    fn holds(bound: &BigUint) -> bool;

    fn to_biguint(&self) -> BigUint;
}

impl Count for BigUint {
    fn holds(_: &BigUint) -> bool {
        true
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

impl Count for u128 {
    fn holds(bound: &BigUint) -> bool {
        bound.to_u128().is_some()
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Count for u64 {
    fn holds(bound: &BigUint) -> bool {
        bound.to_u64().is_some()
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }
}

/// Counts indexed by the matrices of an [`Sl2Table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVec<C> {
    counts: Vec<C>,
}

impl<C: Count> CountVec<C> {
    /// One count at `index`, zero elsewhere.
    pub fn unit(len: usize, index: usize) -> CountVec<C> {
        let mut counts = vec![C::zero(); len];
        counts[index] = C::one();
        CountVec { counts }
    }

    pub fn counts(&self) -> &[C] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> &C {
        &self.counts[i]
    }

    pub fn total(&self) -> C {
        let mut acc = C::zero();
        for c in &self.counts {
            acc += c;
        }
        acc
    }

    /// One transfer round: the count at `M` moves to `E(a)·M` for every `a`.
    /// Each target pulls from its unique preimage under every generator.
    pub fn advance(&self, r: &Ring, table: &Sl2Table) -> CountVec<C> {
        let maps: Vec<&[u32]> = r.elements().map(|a| table.inverse_step(a)).collect();
        let counts = (0..self.counts.len())
            .into_par_iter()
            .map(|j| {
                let mut acc = C::zero();
                for map in &maps {
                    acc += &self.counts[map[j] as usize];
                }
                acc
            })
            .collect();
        CountVec { counts }
    }
}

/// Transfer-matrix counter for one ring, caching the vector for each `n`.
#[derive(Debug, Clone)]
pub struct DpCounter<C = BigUint> {
    ring: Ring,
    table: Sl2Table,
    vectors: Vec<CountVec<C>>,
}

impl<C: Count> DpCounter<C> {
    pub fn new(ring: &Ring, max_ring_size: usize) -> Result<DpCounter<C>> {
        let table = Sl2Table::build(ring, max_ring_size)?;
        let seed = CountVec::unit(table.len(), table.identity());
        Ok(DpCounter {
            ring: ring.clone(),
            table,
            vectors: vec![seed],
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn table(&self) -> &Sl2Table {
        &self.table
    }

    /// The vector whose entry at `B` is `|Ω_n^B|`.
    pub fn vector(&mut self, n: usize) -> Result<&CountVec<C>> {
        let bound = BigUint::from(self.ring.size()).pow(n as u32);
        if !C::holds(&bound) {
            return Err(Error::Budget(format!(
                "counts up to {bound} overflow the chosen count type"
            )));
        }
        while self.vectors.len() <= n {
            let next = self
                .vectors
                .last()
                .expect("seeded at construction")
                .advance(&self.ring, &self.table);
            self.vectors.push(next);
        }
        Ok(&self.vectors[n])
    }

    /// `|Ω_n^B|`; zero when `B` is not in SL₂.
    pub fn omega(&mut self, n: usize, b: &Mat2) -> Result<C> {
        let idx = self.table.index_of(b);
        let v = self.vector(n)?;
        Ok(idx.map_or_else(C::zero, |i| v.get(i).clone()))
    }

    /// `|R_n^a|`: sum over matrices whose top-left entry is `a`.
    pub fn roots(&mut self, n: usize, a: Elem) -> Result<C> {
        Ok(self.roots_by_target(n)?.swap_remove(a.index()))
    }

    /// `|R_n^a|` for every `a`, indexed by element.
    pub fn roots_by_target(&mut self, n: usize) -> Result<Vec<C>> {
        let size = self.ring.size();
        self.vector(n)?;
        let v = &self.vectors[n];
        let mut out = vec![C::zero(); size];
        for (m, c) in self.table.matrices().iter().zip(v.counts()) {
            out[m.a11.index()] += c;
        }
        Ok(out)
    }

    /// `w_n^u = |Ω_n^{diag(u, u⁻¹)}|`.
    pub fn quiddity(&mut self, n: usize, u: Elem) -> Result<C> {
        let inv = self
            .ring
            .inverse(u)
            .ok_or_else(|| Error::NotUnit(self.ring.display(u)))?;
        let b = Mat2::diag(&self.ring, u, inv);
        self.omega(n, &b)
    }

    /// `Σ_{u ∈ U(A)} w_n^u`.
    pub fn sum_w(&mut self, n: usize) -> Result<C> {
        let mut acc = C::zero();
        for u in self.ring.units() {
            acc += &self.quiddity(n, u)?;
        }
        Ok(acc)
    }
}
