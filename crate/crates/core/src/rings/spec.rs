//! Ring-spec strings: `Zmod:12`, `GF:2^4`, `PolyQuot:GF:2^2/x^2`, ...

use std::fmt;
use std::path::PathBuf;

use super::gf;
use super::poly::{parse_poly, IntPoly};
use crate::error::{Error, Result};

/// Hard limit on `p^k` accepted by the parser, independent of the build cap.
const GF_PARSE_LIMIT: u64 = 1 << 24;

/// Parsed description of a finite ring construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// ℤ/Nℤ, N ≥ 2.
    Zmod(u64),
    /// The field with `p^k` elements; `modulus` is the defining polynomial
    /// over F_p when given explicitly.
    Gf {
        p: u64,
        k: u32,
        modulus: Option<IntPoly>,
    },
    /// `base[x] / (relations)`.
    PolyQuot {
        base: Box<RingSpec>,
        relations: Vec<IntPoly>,
    },
    /// `base[x, y] / (relations)`.
    Bivar {
        base: Box<RingSpec>,
        relations: Vec<IntPoly>,
    },
    /// Direct product of at least two rings.
    Product(Vec<RingSpec>),
    /// Explicit addition and multiplication tables loaded from JSON.
    Table(PathBuf),
}

/// Parse a ring-spec string.
pub fn parse_spec(text: &str) -> Result<RingSpec> {
    parse_at(text.trim(), 0)
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

fn parse_integer(text: &str, pos: usize, what: &str) -> Result<u64> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| Error::syntax(pos, format!("expected {what}, found {text:?}")))
}

fn parse_at(text: &str, offset: usize) -> Result<RingSpec> {
    let Some(colon) = text.find(':') else {
        return Err(Error::syntax(offset, "expected '<Variant>:'"));
    };
    let (head, rest) = (&text[..colon], &text[colon + 1..]);
    let body = offset + colon + 1;
    match head {
        "Zmod" => {
            let n = parse_integer(rest, body, "modulus")?;
            if n < 2 {
                return Err(Error::syntax(body, "Zmod modulus must be at least 2"));
            }
            Ok(RingSpec::Zmod(n))
        }
        "GF" => parse_gf(rest, body),
        "PolyQuot" | "Bivar" => {
            let bivariate = head == "Bivar";
            let Some(slash) = rest.rfind('/') else {
                return Err(Error::syntax(body, "expected '<spec>/<relations>'"));
            };
            let base = parse_at(&rest[..slash], body)?;
            let mut relations = Vec::new();
            let mut start = slash + 1;
            for piece in rest[slash + 1..].split(',') {
                relations.push(parse_poly(piece, body + start, bivariate)?);
                start += piece.len() + 1;
            }
            let base = Box::new(base);
            Ok(if bivariate {
                RingSpec::Bivar { base, relations }
            } else {
                RingSpec::PolyQuot { base, relations }
            })
        }
        "Prod" => {
            let mut factors = Vec::new();
            let mut start = 0;
            for piece in rest.split(';') {
                if piece.trim_start().starts_with("Prod:") {
                    return Err(Error::syntax(
                        body + start,
                        "nested Prod is ambiguous; list the factors in one Prod",
                    ));
                }
                factors.push(parse_at(piece.trim(), body + start)?);
                start += piece.len() + 1;
            }
            if factors.len() < 2 {
                return Err(Error::syntax(body, "Prod needs at least two factors"));
            }
            Ok(RingSpec::Product(factors))
        }
        "Table" => {
            if rest.trim().is_empty() {
                return Err(Error::syntax(body, "expected a table path"));
            }
            Ok(RingSpec::Table(PathBuf::from(rest.trim())))
        }
        other => Err(Error::syntax(
            offset,
            format!("unknown ring variant {other:?}"),
        )),
    }
}

fn parse_gf(rest: &str, body: usize) -> Result<RingSpec> {
    let (order, modulus_text) = match rest.find('/') {
        Some(i) => (&rest[..i], Some((&rest[i + 1..], body + i + 1))),
        None => (rest, None),
    };
    let Some(caret) = order.find('^') else {
        return Err(Error::syntax(body, "expected GF:<p>^<k>"));
    };
    let p = parse_integer(&order[..caret], body, "prime")?;
    let k = parse_integer(&order[caret + 1..], body + caret + 1, "degree")?;
    if !gf::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let k = u32::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::syntax(body + caret + 1, "degree must be a positive integer"))?;
    match p.checked_pow(k) {
        Some(size) if size <= GF_PARSE_LIMIT => {}
        _ => {
            return Err(Error::SizeCap {
                size: (p as u128).saturating_pow(k),
                cap: GF_PARSE_LIMIT as usize,
            })
        }
    }
    let modulus = match modulus_text {
        None => None,
        Some((text, pos)) => {
            let poly = parse_poly(text, pos, false)?;
            let reduced = gf::reduce_mod(&poly, p);
            if reduced.len() != k as usize + 1 || !gf::is_irreducible(&reduced, p) {
                return Err(Error::Reducible {
                    poly: poly.to_string(),
                    p,
                    degree: k,
                });
            }
            Some(poly)
        }
    };
    Ok(RingSpec::Gf { p, k, modulus })
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Zmod:{n}"),
            RingSpec::Gf { p, k, modulus } => {
                write!(f, "GF:{p}^{k}")?;
                if let Some(m) = modulus {
                    write!(f, "/{m}")?;
                }
                Ok(())
            }
            RingSpec::PolyQuot { base, relations } | RingSpec::Bivar { base, relations } => {
                let head = if matches!(self, RingSpec::Bivar { .. }) {
                    "Bivar"
                } else {
                    "PolyQuot"
                };
                write!(f, "{head}:{base}/")?;
                for (i, r) in relations.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
            RingSpec::Product(factors) => {
                f.write_str("Prod:")?;
                for (i, s) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
            RingSpec::Table(path) => write!(f, "Table:{}", path.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_variant() {
        assert_eq!(parse_spec("Zmod:12").unwrap(), RingSpec::Zmod(12));
        assert_eq!(
            parse_spec("GF:2^4").unwrap(),
            RingSpec::Gf {
                p: 2,
                k: 4,
                modulus: None
            }
        );
        match parse_spec("PolyQuot:GF:2^2/x^2").unwrap() {
            RingSpec::PolyQuot { base, relations } => {
                assert_eq!(
                    *base,
                    RingSpec::Gf {
                        p: 2,
                        k: 2,
                        modulus: None
                    }
                );
                assert_eq!(relations, vec![IntPoly::monomial(1, 2, 0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("Bivar:Zmod:2/x^2,y^2").unwrap() {
            RingSpec::Bivar { relations, .. } => assert_eq!(relations.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("Prod:Zmod:2;GF:3^1").unwrap() {
            RingSpec::Product(f) => assert_eq!(f.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_spec("Table:ring.json").unwrap(),
            RingSpec::Table("ring.json".into())
        );
    }

    #[test]
    fn nested_base_with_modulus_splits_at_last_slash() {
        let s = parse_spec("PolyQuot:GF:2^2/x^2+x+1/x^3").unwrap();
        assert_eq!(s.to_string(), "PolyQuot:GF:2^2/x^2+x+1/x^3");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_spec("Ring:5"),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse_spec("Zmod:1"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_spec("Zmod:abc"),
            Err(Error::Syntax { pos: 5, .. })
        ));
        assert!(matches!(parse_spec("GF:6^1"), Err(Error::NotPrime(6))));
        assert!(matches!(
            parse_spec("GF:2^2/x^2+1"),
            Err(Error::Reducible { .. })
        ));
        assert!(matches!(
            parse_spec("GF:2^2/x^3+x+1"),
            Err(Error::Reducible { .. })
        ));
        assert!(matches!(
            parse_spec("Prod:Zmod:2"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_spec("PolyQuot:Zmod:4/y^2"),
            Err(Error::Syntax { .. })
        ));
        assert!(parse_spec("GF:2^2/x^2+x+1").is_ok());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "Zmod:27",
            "GF:3^2",
            "GF:2^4/x^4+x+1",
            "PolyQuot:Zmod:4/x^2,2*x",
            "Bivar:Zmod:2/x^2,y^2",
            "Prod:Zmod:2;Zmod:9",
        ] {
            assert_eq!(parse_spec(s).unwrap().to_string(), s);
        }
    }
}
