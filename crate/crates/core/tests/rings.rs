use proptest::prelude::*;
use quiddity::rings::{build_ring_with, check_axioms, parse_spec, BuildOptions, TableFile};
use quiddity::{ring_from_str, Elem, Error, Ring};

const SPECS: &[&str] = &[
    "Zmod:2",
    "Zmod:12",
    "Zmod:27",
    "GF:2^3",
    "GF:3^2/x^2+1",
    "GF:2^5",
    "PolyQuot:Zmod:4/x^2,2*x",
    "PolyQuot:GF:2^2/x^2",
    "PolyQuot:Zmod:4/x^2+x+1",
    "PolyQuot:Zmod:3/x^3",
    "Bivar:Zmod:2/x^2,y^2",
    "Bivar:Zmod:2/x^2,x*y,y^2",
    "Prod:Zmod:2;GF:3^1",
    "Prod:Zmod:4;GF:2^2",
];

fn units_by_search(r: &Ring) -> Vec<Elem> {
    r.elements()
        .filter(|&a| r.elements().any(|b| r.mul(a, b) == r.one()))
        .collect()
}

#[test]
fn every_construction_satisfies_the_axioms() {
    for spec in SPECS {
        let r = ring_from_str(spec).unwrap();
        check_axioms(&r, 64, 20_000, 7).unwrap_or_else(|e| panic!("{spec}: {e}"));
    }
}

#[test]
fn sizes_of_constructions() {
    let expected = [
        ("Zmod:12", 12),
        ("GF:2^5", 32),
        ("PolyQuot:Zmod:4/x^2,2*x", 8),
        ("PolyQuot:GF:2^2/x^2", 16),
        ("PolyQuot:Zmod:4/x^2+x+1", 16),
        ("Bivar:Zmod:2/x^2,y^2", 16),
        ("Bivar:Zmod:2/x^2,x*y,y^2", 8),
        ("Prod:Zmod:4;GF:2^2", 16),
    ];
    for (spec, size) in expected {
        assert_eq!(ring_from_str(spec).unwrap().size(), size, "{spec}");
    }
}

#[test]
fn unit_bookkeeping_matches_search() {
    for spec in SPECS {
        let r = ring_from_str(spec).unwrap();
        let units = units_by_search(&r);
        assert_eq!(r.units(), units, "{spec}");
        for &u in &units {
            let inv = r.inverse(u).unwrap();
            assert_eq!(r.mul(u, inv), r.one());
        }
    }
}

#[test]
fn locality_matches_nonunit_ideal() {
    for spec in SPECS {
        let r = ring_from_str(spec).unwrap();
        let nonunits = r.nonunits();
        let closed = nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !r.is_unit(r.add(a, b))));
        assert_eq!(r.is_local(), closed, "{spec}");
        if closed {
            assert_eq!(r.residue_size(), Some(r.size() / nonunits.len()), "{spec}");
            // 1 + m is a unit for every non-unit m
            assert!(nonunits.iter().all(|&m| r.is_unit(r.add(r.one(), m))));
        } else {
            assert_eq!(r.residue_size(), None);
        }
    }
}

#[test]
fn elements_round_trip_through_literals() {
    for spec in SPECS {
        let r = ring_from_str(spec).unwrap();
        for a in r.elements() {
            let text = r.display(a);
            assert_eq!(r.parse_element(&text).unwrap(), a, "{spec} {text}");
        }
    }
}

#[test]
fn table_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["Zmod:6", "GF:2^2", "Bivar:Zmod:2/x^2,y^2"] {
        let r = ring_from_str(spec).unwrap();
        let path = dir.path().join("ring.json");
        let table = TableFile::from_ring(&r);
        std::fs::write(&path, serde_json::to_string(&table).unwrap()).unwrap();
        let t = ring_from_str(&format!("Table:{}", path.display())).unwrap();
        assert_eq!(t.size(), r.size());
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!(t.add(a, b), r.add(a, b));
                assert_eq!(t.mul(a, b), r.mul(a, b));
            }
        }
        assert_eq!(t.is_local(), r.is_local());
    }
}

#[test]
fn malformed_table_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"size":2,"zero":0,"one":1,"add":[[0,1],[1,0]],"mul":[[0,0],[0,5]]}"#,
    )
    .unwrap();
    assert!(matches!(
        ring_from_str(&format!("Table:{}", path.display())),
        Err(Error::InvalidTable(_))
    ));
    assert!(matches!(
        ring_from_str("Table:/nonexistent/ring.json"),
        Err(Error::Io { .. })
    ));
}

#[test]
fn construction_errors() {
    assert!(matches!(ring_from_str("GF:4^1"), Err(Error::NotPrime(4))));
    assert!(matches!(
        ring_from_str("PolyQuot:Zmod:2/x^2,x+1"),
        Err(Error::Quotient(_))
    ));
    let opts = BuildOptions { size_cap: 100 };
    assert!(matches!(
        build_ring_with(&parse_spec("GF:2^7").unwrap(), &opts),
        Err(Error::SizeCap {
            size: 128,
            cap: 100
        })
    ));
    let r = ring_from_str("Zmod:9").unwrap();
    assert!(matches!(r.parse_element("x"), Err(Error::Element { .. })));
}

proptest! {
    #[test]
    fn integers_mod_n_agree_with_machine_arithmetic(n in 2u64..200, a in -1000i64..1000, b in -1000i64..1000) {
        let r = ring_from_str(&format!("Zmod:{n}")).unwrap();
        let m = n as i64;
        let (x, y) = (r.from_int(a), r.from_int(b));
        prop_assert_eq!(r.add(x, y), r.from_int((a + b).rem_euclid(m)));
        prop_assert_eq!(r.mul(x, y), r.from_int((a * b).rem_euclid(m)));
        prop_assert_eq!(r.sub(x, y), r.from_int((a - b).rem_euclid(m)));
    }

    #[test]
    fn field_elements_are_units(p in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..4) {
        let r = ring_from_str(&format!("GF:{p}^{k}")).unwrap();
        prop_assert_eq!(r.size() as u64, p.pow(k));
        prop_assert_eq!(r.unit_count(), r.size() - 1);
        // a^q = a
        for a in r.elements() {
            prop_assert_eq!(r.pow(a, p.pow(k)), a);
        }
    }
}
