mod common;

use common::{oracle_betti, rank_mod, rank_q};
use num_rational::BigRational;
use num_traits::One;
use rainbow_core::{generate, reduced_betti, ComplexName, FieldSpec, SimplicialComplex};

fn facets(k: &SimplicialComplex) -> Vec<Vec<String>> {
    k.facet_labels().into_iter().map(|f| f.into_iter().map(|v| v.0).collect()).collect()
}

fn named(s: &str) -> SimplicialComplex {
    generate(&s.parse::<ComplexName>().unwrap()).unwrap().complex
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

const FIELDS: [FieldSpec; 4] = [FieldSpec::GF2, FieldSpec::GF3, FieldSpec::GF5, FieldSpec::Q];

#[test]
fn oracle_sanity_on_rational_pivots() {
    let m = vec![
        vec![BigRational::from_integer(2.into()), BigRational::one()],
        vec![BigRational::from_integer(4.into()), BigRational::from_integer(2.into())],
    ];
    assert_eq!(rank_q(m), 1);
    assert_eq!(rank_mod(vec![vec![2, 1], vec![1, 2]], 3), 1);
    assert_eq!(rank_mod(vec![vec![2, 1], vec![1, 2]], 5), 2);
}

#[test]
fn torus_from_the_oracle() {
    let t = named("torus7");
    for f in FIELDS {
        assert_eq!(oracle_betti(&facets(&t), f), vec![0, 0, 2, 1], "{f}");
    }
}

#[test]
fn projective_plane_from_the_oracle() {
    let rp = named("rp2_6");
    assert_eq!(oracle_betti(&facets(&rp), FieldSpec::GF2), vec![0, 0, 1, 1]);
    for f in [FieldSpec::GF3, FieldSpec::GF5, FieldSpec::Q] {
        assert_eq!(oracle_betti(&facets(&rp), f), vec![0, 0, 0, 0], "{f}");
    }
}

#[test]
fn library_agrees_with_oracle_on_catalog() {
    let names = [
        "simplex(0)", "simplex(3)", "sphere(1)", "sphere(2)", "sphere(3)", "torus7", "rp2_6", "cycle(5)",
        "disjoint(3)",
    ];
    for n in names {
        let k = named(n);
        for f in FIELDS {
            let lib = reduced_betti(&k, f).values().to_vec();
            assert_eq!(trimmed(lib), trimmed(oracle_betti(&facets(&k), f)), "{n} over {f}");
        }
    }
}

#[test]
fn library_agrees_with_oracle_on_odd_complexes() {
    let cases: Vec<Vec<Vec<&str>>> = vec![
        // cone over two points glued with a loose triangle
        vec![vec!["a", "b", "c"], vec!["c", "d"], vec!["d", "e"], vec!["e", "c"]],
        // two hollow triangles sharing a vertex
        vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"], vec!["a", "x"], vec!["x", "y"], vec!["a", "y"]],
        // single vertex and an isolated edge
        vec![vec!["p"], vec!["q", "r"]],
        // Möbius strip
        vec![
            vec!["0", "1", "2"],
            vec!["1", "2", "3"],
            vec!["2", "3", "4"],
            vec!["3", "4", "0"],
            vec!["4", "0", "1"],
        ],
    ];
    for facets_in in cases {
        let k = SimplicialComplex::from_facets(facets_in.clone()).unwrap();
        let owned: Vec<Vec<String>> =
            facets_in.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect();
        for f in FIELDS {
            let lib = reduced_betti(&k, f).values().to_vec();
            assert_eq!(trimmed(lib), trimmed(oracle_betti(&owned, f)), "{facets_in:?} over {f}");
        }
    }
}
