use proptest::prelude::*;
use rainbow_core::chromatic::nonempty_subsets;
use rainbow_core::{
    barycentric_subdivision, boundary_matrices_with, check_meshulam, check_theorem, chromatic_subcomplex,
    derived_neighborhood, generate, rainbow_simplices, random_coloring, reduced_betti, supplement_complex,
    ComplexName, Field, FieldSpec, PrimeField, Rationals, SimplicialComplex, TheoremId, VertexId,
};

const LABELS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..LABELS.len(), 1..=4), 1..7).prop_map(|facets| {
        SimplicialComplex::from_facets(facets.into_iter().map(|f| f.into_iter().map(|i| LABELS[i]))).unwrap()
    })
}

fn mask_strategy() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), LABELS.len())
}

fn labels_in(k: &SimplicialComplex, mask: &[bool]) -> Vec<VertexId> {
    k.vertex_set().into_iter().filter(|v| mask[LABELS.iter().position(|l| *l == v.as_str()).unwrap()]).collect()
}

fn relabel(k: &SimplicialComplex, perm: &[usize]) -> SimplicialComplex {
    let map = |v: &VertexId| {
        let i = LABELS.iter().position(|l| *l == v.as_str()).unwrap();
        LABELS[perm[i]]
    };
    SimplicialComplex::from_facets(k.facet_labels().iter().map(|f| f.iter().map(map).collect::<Vec<_>>())).unwrap()
}

fn face_labels(k: &SimplicialComplex) -> Vec<Vec<VertexId>> {
    (0..=k.dim()).flat_map(|d| k.faces(d).unwrap().iter().map(|s| k.labels_of(s)).collect::<Vec<_>>()).collect()
}

const MENU: [FieldSpec; 4] = [FieldSpec::GF2, FieldSpec::GF3, FieldSpec::GF5, FieldSpec::Q];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_are_downward_closed(k in complex_strategy()) {
        for d in 1..=k.dim() {
            for s in k.faces(d).unwrap() {
                for f in s.boundary_faces() {
                    prop_assert!(k.faces(d - 1).unwrap().contains(&f));
                }
            }
        }
    }

    #[test]
    fn induced_on_everything_is_identity(k in complex_strategy()) {
        let all = k.vertex_set();
        prop_assert_eq!(k.induced_subcomplex(&all).unwrap(), k);
    }

    #[test]
    fn induced_is_monotone(k in complex_strategy(), m1 in mask_strategy(), m2 in mask_strategy()) {
        let small: Vec<bool> = m1.iter().zip(&m2).map(|(a, b)| *a && *b).collect();
        let a = k.induced_subcomplex(&labels_in(&k, &small)).unwrap();
        let b = k.induced_subcomplex(&labels_in(&k, &m1)).unwrap();
        let bigger = face_labels(&b);
        for f in face_labels(&a) {
            prop_assert!(bigger.contains(&f));
        }
    }

    #[test]
    fn boundary_squares_to_zero(k in complex_strategy()) {
        prop_assert!(boundary_matrices_with(&k, &Rationals).composes_to_zero());
        for p in [2, 3, 5] {
            prop_assert!(boundary_matrices_with(&k, &PrimeField::new(p).unwrap()).composes_to_zero());
        }
    }

    #[test]
    fn reduced_euler_relation(k in complex_strategy()) {
        for f in MENU {
            prop_assert_eq!(reduced_betti(&k, f).reduced_euler(), k.euler_characteristic() - 1);
        }
    }

    #[test]
    fn rank_survives_transpose(k in complex_strategy()) {
        let m = boundary_matrices_with(&k, &Rationals);
        for d in 0..=k.dim().max(0) as usize {
            let b = m.boundary(d);
            prop_assert_eq!(Rationals.rank(b), Rationals.rank(&b.transpose()));
        }
        let gf3 = PrimeField::new(3).unwrap();
        let m = boundary_matrices_with(&k, &gf3);
        for d in 0..=k.dim().max(0) as usize {
            let b = m.boundary(d);
            prop_assert_eq!(gf3.rank(b), gf3.rank(&b.transpose()));
        }
    }

    #[test]
    fn betti_ignores_label_order(k in complex_strategy(), perm in Just((0..LABELS.len()).collect::<Vec<_>>()).prop_shuffle()) {
        let moved = relabel(&k, &perm);
        prop_assert_eq!(reduced_betti(&moved, FieldSpec::Q), reduced_betti(&k, FieldSpec::Q));
        prop_assert_eq!(reduced_betti(&moved, FieldSpec::GF2), reduced_betti(&k, FieldSpec::GF2));
    }

    #[test]
    fn neighborhood_and_supplement_shadows(k in complex_strategy(), mask in mask_strategy()) {
        let u1 = labels_in(&k, &mask);
        let u2: Vec<VertexId> = k.vertex_set().into_iter().filter(|v| !u1.contains(v)).collect();
        let base = k.induced_subcomplex(&u1).unwrap();
        let n = derived_neighborhood(&u1, &k).unwrap();
        let s = supplement_complex(&u2, &k).unwrap();
        for f in [FieldSpec::GF2, FieldSpec::Q] {
            prop_assert_eq!(reduced_betti(&n, f), reduced_betti(&base, f));
            prop_assert_eq!(reduced_betti(&s, f), reduced_betti(&base, f));
        }
    }

    #[test]
    fn neighborhood_and_supplement_cover_the_subdivision(k in complex_strategy(), mask in mask_strategy()) {
        let u = labels_in(&k, &mask);
        let sd = barycentric_subdivision(&k).unwrap();
        let mut covered = sd.derived_neighborhood(&u).unwrap().vertex_set();
        covered.extend(sd.supplement_complex(&u).unwrap().vertex_set());
        covered.sort();
        covered.dedup();
        prop_assert_eq!(covered, sd.subdivided.vertex_set());
    }

    #[test]
    fn subdivision_keeps_betti(k in complex_strategy()) {
        let sd = barycentric_subdivision(&k).unwrap();
        for f in [FieldSpec::GF2, FieldSpec::Q] {
            prop_assert_eq!(reduced_betti(&sd.subdivided, f), reduced_betti(&k, f));
        }
    }

    #[test]
    fn chromatic_subcomplex_properties(k in complex_strategy(), seed in any::<u64>(), classes in 1usize..4) {
        prop_assume!(k.num_vertices() >= classes);
        let c = random_coloring(&k, classes, seed).unwrap();
        let all: Vec<usize> = (0..classes).collect();
        prop_assert_eq!(chromatic_subcomplex(&k, &c, &all).unwrap(), k.clone());
        for s in nonempty_subsets(classes) {
            for t in nonempty_subsets(classes) {
                if s.iter().any(|i| t.contains(i)) {
                    continue;
                }
                let mut st = s.clone();
                st.extend(&t);
                let union = chromatic_subcomplex(&k, &c, &st).unwrap();
                for part in [&s, &t] {
                    let sub = chromatic_subcomplex(&k, &c, part).unwrap();
                    prop_assert_eq!(union.induced_subcomplex(&sub.vertex_set()).unwrap(), sub);
                }
            }
        }
    }

    #[test]
    fn rainbow_ignores_class_order(
        k in complex_strategy(),
        seed in any::<u64>(),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        prop_assume!(k.dim() == 2 && k.num_vertices() >= 3);
        let c = random_coloring(&k, 3, seed).unwrap();
        let p = c.permuted(&perm);
        let mut a = rainbow_simplices(&k, &c).unwrap();
        let mut b = rainbow_simplices(&k, &p).unwrap();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let r1 = check_meshulam(&k, &c, FieldSpec::Q).unwrap();
        let r2 = check_meshulam(&k, &p, FieldSpec::Q).unwrap();
        prop_assert_eq!(r1.all_hold, r2.all_hold);
    }

    #[test]
    fn meshulam_pass_yields_rainbow(k in complex_strategy(), seed in any::<u64>()) {
        let classes = (k.dim() + 1) as usize;
        prop_assume!(k.num_vertices() >= classes);
        let c = random_coloring(&k, classes, seed).unwrap();
        for f in MENU {
            let r = check_meshulam(&k, &c, f).unwrap();
            prop_assert!(r.consistent);
        }
    }
}

#[test]
fn sphere_theorem_implies_meshulam() {
    for n in 1..=3usize {
        let k = generate(&ComplexName::SimplexBoundary(n)).unwrap().complex;
        let ks = [k.clone(), barycentric_subdivision(&k).unwrap().subdivided];
        for (i, k) in ks.iter().enumerate() {
            let runs = if i == 0 { 20 } else { 8 };
            for seed in 0..runs {
                let c = random_coloring(k, n + 1, seed).unwrap();
                for f in [FieldSpec::GF2, FieldSpec::Q] {
                    let sphere = check_theorem(k, &c, TheoremId::Sphere, &[f]).unwrap();
                    if sphere.all_hold {
                        let m = check_meshulam(k, &c, f).unwrap();
                        assert!(m.all_hold, "n={n} seed={seed} over {f}");
                    }
                }
            }
        }
    }
}

#[test]
fn sperner_colorings_respect_carriers() {
    for (n, depth) in [(1, 3), (2, 1), (2, 2), (3, 1)] {
        let inst = rainbow_core::sperner_instance(n, depth).unwrap();
        for (color, class) in inst.coloring.classes().iter().enumerate() {
            for v in class {
                let carrier = inst.map.carrier_of(v).unwrap();
                assert!(carrier.contains(&VertexId::from(color.to_string())), "{v:?} in class {color}");
            }
        }
    }
}

#[test]
fn closed_catalog_entries_have_no_boundary() {
    for name in ["torus7", "rp2_6", "sphere(1)", "sphere(2)", "sphere(4)"] {
        let k = generate(&name.parse().unwrap()).unwrap().complex;
        assert!(k.boundary_complex().unwrap().is_empty(), "{name}");
    }
}
