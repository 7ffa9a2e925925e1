//! Continuants `K_n` and the matrices `M_n` over a built ring.
//!
//! `K_n(a_1, ..., a_n) = a_n K_{n-1}(a_1, ..., a_{n-1}) - K_{n-2}(a_1, ..., a_{n-2})`
//! with `K_{-1} = 0` and `K_0 = 1`, and
//! `M_n(a_1, ..., a_n) = E(a_n) ... E(a_1)` where `E(a) = [[a, -1], [1, 0]]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Elem, Ring};

/// A 2×2 matrix over a ring, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a11: Elem,
    pub a12: Elem,
    pub a21: Elem,
    pub a22: Elem,
}

impl Mat2 {
    pub const fn new(a11: Elem, a12: Elem, a21: Elem, a22: Elem) -> Mat2 {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity(r: &Ring) -> Mat2 {
        Mat2::diag(r, r.one(), r.one())
    }

    pub fn diag(r: &Ring, d1: Elem, d2: Elem) -> Mat2 {
        Mat2::new(d1, r.zero(), r.zero(), d2)
    }

    /// `E(a) = [[a, -1], [1, 0]]`.
    pub fn generator(r: &Ring, a: Elem) -> Mat2 {
        Mat2::new(a, r.neg(r.one()), r.one(), r.zero())
    }

    pub fn mul(&self, r: &Ring, o: &Mat2) -> Mat2 {
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| r.add(r.mul(x, y), r.mul(z, w));
        Mat2::new(
            dot(self.a11, o.a11, self.a12, o.a21),
            dot(self.a11, o.a12, self.a12, o.a22),
            dot(self.a21, o.a11, self.a22, o.a21),
            dot(self.a21, o.a12, self.a22, o.a22),
        )
    }

    /// `E(a) · self`, the left step used by the counting DP.
    pub fn left_step(&self, r: &Ring, a: Elem) -> Mat2 {
        Mat2::new(
            r.sub(r.mul(a, self.a11), self.a21),
            r.sub(r.mul(a, self.a12), self.a22),
            self.a11,
            self.a12,
        )
    }

    pub fn det(&self, r: &Ring) -> Elem {
        r.sub(r.mul(self.a11, self.a22), r.mul(self.a12, self.a21))
    }

    pub fn neg(&self, r: &Ring) -> Mat2 {
        Mat2::new(
            r.neg(self.a11),
            r.neg(self.a12),
            r.neg(self.a21),
            r.neg(self.a22),
        )
    }

    /// Inverse of a determinant-one matrix: `[[d, -b], [-c, a]]`.
    pub fn sl2_inverse(&self, r: &Ring) -> Mat2 {
        Mat2::new(self.a22, r.neg(self.a12), r.neg(self.a21), self.a11)
    }

    pub fn display(&self, r: &Ring) -> String {
        format!(
            "[[{},{}],[{},{}]]",
            r.display(self.a11),
            r.display(self.a12),
            r.display(self.a21),
            r.display(self.a22)
        )
    }
}

/// An ordered tuple of elements of one ring.
#[derive(Clone)]
pub struct Tuple<'r> {
    ring: &'r Ring,
    entries: Vec<Elem>,
}

impl fmt::Debug for Tuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.display())
    }
}

impl<'r> Tuple<'r> {
    pub fn new(ring: &'r Ring, entries: Vec<Elem>) -> Result<Tuple<'r>> {
        if let Some(bad) = entries.iter().find(|e| e.index() >= ring.size()) {
            return Err(Error::Invalid(format!(
                "element index {} is outside a ring of size {}",
                bad.0,
                ring.size()
            )));
        }
        Ok(Tuple { ring, entries })
    }

    /// Parse comma-separated element literals; the empty string is the
    /// empty tuple.
    pub fn parse(ring: &'r Ring, text: &str) -> Result<Tuple<'r>> {
        if text.trim().is_empty() {
            return Ok(Tuple {
                ring,
                entries: Vec::new(),
            });
        }
        let entries = crate::rings::split_top_level(text, ',')
            .into_iter()
            .map(|s| ring.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Tuple { ring, entries })
    }

    pub fn ring(&self) -> &'r Ring {
        self.ring
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn reversed(&self) -> Tuple<'r> {
        Tuple {
            ring: self.ring,
            entries: self.entries.iter().rev().copied().collect(),
        }
    }

    /// The tuple `(λa_1, λ⁻¹a_2, λa_3, ...)`.
    pub fn alternate_scale(&self, lambda: Elem) -> Result<Tuple<'r>> {
        let r = self.ring;
        let inv = r
            .inverse(lambda)
            .ok_or_else(|| Error::NotUnit(r.display(lambda)))?;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, &a)| r.mul(if i % 2 == 0 { lambda } else { inv }, a))
            .collect();
        Ok(Tuple { ring: r, entries })
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|&e| self.ring.display(e)).collect();
        parts.join(",")
    }
}

/// `K_n` of a slice, by the two-register right-append recurrence.
pub fn continuant_of(r: &Ring, entries: &[Elem]) -> Elem {
    let (mut prev, mut cur) = (r.zero(), r.one());
    for &a in entries {
        let next = r.sub(r.mul(a, cur), prev);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn continuant(t: &Tuple<'_>) -> Elem {
    continuant_of(t.ring, &t.entries)
}

/// `M_n` of a nonempty slice.
pub fn m_matrix_of(r: &Ring, entries: &[Elem]) -> Result<Mat2> {
    let (&first, rest) = entries
        .split_first()
        .ok_or_else(|| Error::Invalid("M_n needs a nonempty tuple".into()))?;
    Ok(rest
        .iter()
        .fold(Mat2::generator(r, first), |m, &a| m.left_step(r, a)))
}

pub fn m_matrix(t: &Tuple<'_>) -> Result<Mat2> {
    m_matrix_of(t.ring, &t.entries)
}

/// Whether the entries of `M_n(t)` are the continuants
/// `[[K_n(a_1..a_n), -K_{n-1}(a_2..a_n)], [K_{n-1}(a_1..a_{n-1}), -K_{n-2}(a_2..a_{n-1})]]`.
/// The empty tuple has no matrix and yields `false`.
pub fn check_entry_identity(t: &Tuple<'_>) -> bool {
    let r = t.ring;
    let a = &t.entries;
    let Ok(m) = m_matrix(t) else {
        return false;
    };
    let n = a.len();
    let inner = if n >= 2 {
        continuant_of(r, &a[1..n - 1])
    } else {
        r.zero()
    };
    m == Mat2::new(
        continuant_of(r, a),
        r.neg(continuant_of(r, &a[1..])),
        continuant_of(r, &a[..n - 1]),
        r.neg(inner),
    )
}

/// The three-entry tuple equivalent to `(a, u, v, b)` when `uv - 1` is a
/// unit: `M_4(a,u,v,b) = M_3(a + (1-v)(uv-1)⁻¹, uv - 1, b + (1-u)(uv-1)⁻¹)`.
pub fn contract_four(r: &Ring, a: Elem, u: Elem, v: Elem, b: Elem) -> Option<[Elem; 3]> {
    let one = r.one();
    let s = r.sub(r.mul(u, v), one);
    let s_inv = r.inverse(s)?;
    Some([
        r.add(a, r.mul(r.sub(one, v), s_inv)),
        s,
        r.add(b, r.mul(r.sub(one, u), s_inv)),
    ])
}

/// The three-entry tuple equivalent to `(a, u, v, b, c)` when `v` and
/// `x = ((vb - 1)(uv - 1) - 1)v⁻¹` are units:
/// `M_5(a,u,v,b,c) = M_3(a - (vb - 2)x⁻¹, x, c - (uv - 2)x⁻¹)`.
pub fn contract_five(r: &Ring, a: Elem, u: Elem, v: Elem, b: Elem, c: Elem) -> Option<[Elem; 3]> {
    let one = r.one();
    let two = r.add(one, one);
    let v_inv = r.inverse(v)?;
    let vb = r.mul(v, b);
    let uv = r.mul(u, v);
    let x = r.mul(r.sub(r.mul(r.sub(vb, one), r.sub(uv, one)), one), v_inv);
    let x_inv = r.inverse(x)?;
    Some([
        r.sub(a, r.mul(r.sub(vb, two), x_inv)),
        x,
        r.sub(c, r.mul(r.sub(uv, two), x_inv)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ring_from_str;

    #[test]
    fn small_continuants() {
        let r = ring_from_str("Zmod:4").unwrap();
        let t = |s: &str| Tuple::parse(&r, s).unwrap();
        assert_eq!(continuant(&t("")), r.one());
        assert_eq!(continuant(&t("2")), Elem(2));
        assert_eq!(continuant(&t("2,3")), r.from_int(5));
        assert_eq!(continuant(&t("1,1,1")), Elem(3));
    }

    #[test]
    fn quiddity_one_one_one_is_minus_identity() {
        let r = ring_from_str("Zmod:1000").unwrap();
        let m = m_matrix(&Tuple::parse(&r, "1,1,1").unwrap()).unwrap();
        assert_eq!(m, Mat2::identity(&r).neg(&r));
    }

    #[test]
    fn single_generator_and_empty_tuple() {
        let r = ring_from_str("Zmod:9").unwrap();
        let t = Tuple::parse(&r, "5").unwrap();
        assert_eq!(m_matrix(&t).unwrap(), Mat2::generator(&r, Elem(5)));
        assert!(check_entry_identity(&t));
        assert!(m_matrix(&Tuple::parse(&r, "").unwrap()).is_err());
    }

    #[test]
    fn rejects_foreign_indices() {
        let r = ring_from_str("Zmod:3").unwrap();
        assert!(Tuple::new(&r, vec![Elem(3)]).is_err());
    }
}
