//! Commutative-ring axiom checks for externally supplied rings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, Ring};

fn check_triple(r: &Ring, a: Elem, b: Elem, c: Elem) -> Result<(), String> {
    let show = |e: Elem| e.0;
    if r.add(r.add(a, b), c) != r.add(a, r.add(b, c)) {
        return Err(format!(
            "addition is not associative at ({}, {}, {})",
            show(a),
            show(b),
            show(c)
        ));
    }
    if r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)) {
        return Err(format!(
            "multiplication is not associative at ({}, {}, {})",
            show(a),
            show(b),
            show(c)
        ));
    }
    if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
        return Err(format!(
            "distributivity fails at ({}, {}, {})",
            show(a),
            show(b),
            show(c)
        ));
    }
    Ok(())
}

fn check_pair(r: &Ring, a: Elem, b: Elem) -> Result<(), String> {
    if r.add(a, b) != r.add(b, a) {
        return Err(format!("addition is not commutative at ({}, {})", a.0, b.0));
    }
    if r.mul(a, b) != r.mul(b, a) {
        return Err(format!(
            "multiplication is not commutative at ({}, {})",
            a.0, b.0
        ));
    }
    Ok(())
}

/// Check the commutative unitary ring axioms. Pairs are always checked
/// exhaustively; triples exhaustively up to `exhaustive_limit` elements and
/// by `samples` seeded random draws above it.
pub fn check_axioms(
    ring: &Ring,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> Result<(), String> {
    let (zero, one) = (ring.zero(), ring.one());
    if zero == one {
        return Err("zero and one coincide".into());
    }
    for a in ring.elements() {
        if ring.add(a, zero) != a {
            return Err(format!("{} + 0 != {}", a.0, a.0));
        }
        if ring.mul(a, one) != a {
            return Err(format!("{} * 1 != {}", a.0, a.0));
        }
        if ring.add(a, ring.neg(a)) != zero {
            return Err(format!("{} has no additive inverse", a.0));
        }
        for b in ring.elements() {
            check_pair(ring, a, b)?;
        }
    }
    if ring.size() <= exhaustive_limit {
        for a in ring.elements() {
            for b in ring.elements() {
                for c in ring.elements() {
                    check_triple(ring, a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = ring.size() as u32;
        for _ in 0..samples {
            let (a, b, c) = (
                Elem(rng.gen_range(0..n)),
                Elem(rng.gen_range(0..n)),
                Elem(rng.gen_range(0..n)),
            );
            check_triple(ring, a, b, c)?;
        }
    }
    Ok(())
}
