mod common;

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;
use simplicial::homology::bareiss_rank;
use simplicial::signed_graph::Node;
use simplicial::*;

use common::*;

fn complex_strategy(max_vertices: usize, max_dim: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_vertices).prop_flat_map(move |n| {
        vec(btree_set(0..n, 1..=max_dim + 1), 1..6).prop_map(move |facets| {
            let mut fs: Vec<Vec<usize>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
            fs.extend((0..n).map(|v| vec![v]));
            SimplicialComplex::from_facets(&fs).unwrap()
        })
    })
}

/// A complex of dimension at least one, paired with a level below the top.
fn complex_with_level() -> impl Strategy<Value = (SimplicialComplex, isize)> {
    complex_strategy(7, 3)
        .prop_filter("needs an edge", |k| k.dim() >= 1)
        .prop_flat_map(|k| {
            let top = k.dim() - 1;
            (Just(k), 0..=top)
        })
}

fn spectrum(m: &LaplacianMatrix) -> Vec<f64> {
    eigenvalues(m).unwrap().values
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn boundary_signs_alternate(k in complex_strategy(7, 3)) {
        let o = Orientation::canonical();
        for fbar in k.all_faces().filter(|f| !f.is_empty()) {
            let lower = k.faces_of_dim(fbar.dim() - 1);
            let nonzero: Vec<i8> = lower
                .iter()
                .map(|f| incidence_sign(f, fbar, &o).unwrap())
                .filter(|&s| s != 0)
                .collect();
            prop_assert_eq!(nonzero.len(), fbar.len());
            for (j, f) in fbar.boundary() {
                let expected = if j % 2 == 0 { 1 } else { -1 };
                prop_assert_eq!(incidence_sign(&f, fbar, &o).unwrap(), expected);
            }
        }
    }

    #[test]
    fn reorienting_a_face_negates_its_incidences(k in complex_strategy(6, 3), seed in any::<u64>()) {
        let mut r = rng(seed);
        let o = random_orientation(&mut r, &k);
        for fbar in k.all_faces().filter(|f| f.len() >= 2) {
            for (_, f) in fbar.boundary() {
                let flipped = o.reorient(&f).unwrap();
                prop_assert_eq!(
                    incidence_sign(&f, fbar, &flipped).unwrap(),
                    -incidence_sign(&f, fbar, &o).unwrap()
                );
            }
        }
    }

    #[test]
    fn closing_facets_is_idempotent(k in complex_strategy(8, 3)) {
        let facets: Vec<Vec<usize>> = k.facets().iter().map(|f| f.vertices().to_vec()).collect();
        let again = SimplicialComplex::from_facets(&facets).unwrap();
        prop_assert_eq!(&again, &k);
        prop_assert_eq!(again.facets(), k.facets());
    }

    #[test]
    fn skeletons_compose(k in complex_strategy(7, 3), p in -1isize..4, q in -1isize..4) {
        prop_assert_eq!(k.skeleton(p).skeleton(q), k.skeleton(p.min(q)));
    }

    #[test]
    fn coboundary_squares_to_zero(k in complex_strategy(8, 3), seed in any::<u64>()) {
        let o = random_orientation(&mut rng(seed), &k);
        for i in 0..k.dim() {
            let d1 = coboundary_matrix(&k, i, &o).unwrap();
            let d0 = coboundary_matrix(&k, i - 1, &o).unwrap();
            let prod = d1.compose(&d0).unwrap();
            prop_assert!(prod.iter().flatten().all(|&x| x == 0));
        }
    }

    #[test]
    fn laplacian_matches_entrywise_definition((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        for (kind, signless) in [(LaplacianKind::Up, false), (LaplacianKind::SignlessUp, true)] {
            let m = laplacian(&k, i, &w, &o, kind).unwrap().matrix;
            let oracle = up_laplacian_oracle(&k, i, &w, &o, signless);
            prop_assert!((m - oracle).amax() < 1e-12);
        }
    }

    #[test]
    fn signless_is_entrywise_absolute_value((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        let l = laplacian(&k, i, &w, &o, LaplacianKind::Up).unwrap().matrix;
        let q = laplacian(&k, i, &w, &o, LaplacianKind::SignlessUp).unwrap().matrix;
        prop_assert!((l.abs() - q).amax() < 1e-12);
    }

    #[test]
    fn reorientation_acts_by_signature_conjugation((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        let base = laplacian(&k, i, &w, &o, LaplacianKind::Up).unwrap().matrix;
        let lower = k.faces_of_dim(i);
        let j = (seed as usize) % lower.len();
        let flipped = laplacian(&k, i, &w, &o.reorient(&lower[j]).unwrap(), LaplacianKind::Up).unwrap().matrix;
        let conj = nalgebra::DMatrix::from_fn(base.nrows(), base.ncols(), |a, b| {
            let s = if (a == j) != (b == j) { -1.0 } else { 1.0 };
            s * base[(a, b)]
        });
        prop_assert_eq!(flipped, conj);
        let upper = k.faces_of_dim(i + 1);
        let u = (seed as usize / 7) % upper.len();
        let same = laplacian(&k, i, &w, &o.reorient(&upper[u]).unwrap(), LaplacianKind::Up).unwrap().matrix;
        prop_assert_eq!(same, base);
    }

    #[test]
    fn up_and_down_share_nonzero_spectrum((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        let nonzero = |v: Vec<f64>| -> Vec<f64> { v.into_iter().filter(|x| x.abs() > 1e-7).collect() };
        let up = nonzero(spectrum(&laplacian(&k, i, &w, &o, LaplacianKind::Up).unwrap()));
        let down = nonzero(spectrum(&laplacian(&k, i + 1, &w, &o, LaplacianKind::Down).unwrap()));
        prop_assert_eq!(up.len(), down.len());
        prop_assert!(max_abs_diff(&up, &down) < 1e-8);
    }

    #[test]
    fn spectra_are_nonnegative(k in complex_strategy(7, 3), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        for i in 0..=k.dim() {
            let mut kinds = vec![LaplacianKind::Down, LaplacianKind::SignlessDown];
            if i < k.dim() {
                kinds.extend([LaplacianKind::Up, LaplacianKind::SignlessUp, LaplacianKind::Full]);
            }
            for kind in kinds {
                let s = eigenvalues(&laplacian(&k, i, &w, &o, kind).unwrap()).unwrap();
                prop_assert!(s.min().unwrap_or(0.0) >= -1e-9, "{kind} at level {i}: {:?}", s.values);
            }
        }
    }

    #[test]
    fn spectra_do_not_depend_on_orientation((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o1 = random_orientation(&mut r, &k);
        let o2 = random_orientation(&mut r, &k);
        for kind in [LaplacianKind::Up, LaplacianKind::SignlessUp, LaplacianKind::Down, LaplacianKind::Full] {
            let a = spectrum(&laplacian(&k, i, &w, &o1, kind).unwrap());
            let b = spectrum(&laplacian(&k, i, &w, &o2, kind).unwrap());
            prop_assert!(max_abs_diff(&a, &b) < 1e-8);
        }
    }

    #[test]
    fn jacobi_reconstructs_and_agrees_with_nalgebra((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_weights(&mut r, &k);
        let o = random_orientation(&mut r, &k);
        for kind in [LaplacianKind::Up, LaplacianKind::SignlessUp, LaplacianKind::Full] {
            let s = laplacian(&k, i, &w, &o, kind).unwrap().symmetrized();
            let e = jacobi_eigen(&s);
            prop_assert!((e.reconstruct() - &s).norm() < 1e-9);
            prop_assert!(max_abs_diff(&e.values, &reference_eigenvalues(&s)) < 1e-9);
        }
    }

    #[test]
    fn largest_eigenvalue_inequalities((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = if seed % 2 == 0 { Weights::unit(&k) } else { random_weights(&mut r, &k) };
        let o = random_orientation(&mut r, &k);
        let rep = bound_report(&k, i, &w, &o).unwrap();
        prop_assert!(rep.lambda_max_up <= rep.lambda_max_signless + 1e-8);
        prop_assert!(rep.lambda_max_signless <= rep.degree_sum_bound + 1e-8);
        prop_assert!(rep.degree_sum_bound <= rep.hj_bound + 1e-12);
        prop_assert_eq!(rep.path_connected, path_connected_oracle(&k, i));
        prop_assert!(rep.violations().is_empty(), "{:?}", rep.violations());
    }

    #[test]
    fn balance_survives_switching((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = incidence_signed_graph(&k, i, &random_orientation(&mut r, &k)).unwrap();
        let set: Vec<Node> = g.nodes().filter(|_| rand::Rng::gen_bool(&mut r, 0.5)).collect();
        let h = switch(&g, &set).unwrap();
        let (a, b) = (is_balanced(&g), is_balanced(&h));
        prop_assert_eq!(a.verdict(), b.verdict());
        prop_assert!(a.verify(&g) && b.verify(&h));
        if g.edges().len() <= signed_graph::BRUTE_FORCE_EDGE_CAP {
            prop_assert_eq!(brute_force_balance(&g).unwrap(), a.verdict());
            prop_assert_eq!(brute_force_balance(&h).unwrap(), b.verdict());
        }
    }

    #[test]
    fn reorienting_is_switching_at_that_node((k, i) in complex_with_level(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let o = random_orientation(&mut r, &k);
        let g = incidence_signed_graph(&k, i, &o).unwrap();
        let all: Vec<Node> = g.nodes().collect();
        let node = all[(seed as usize) % all.len()];
        let via_orientation = incidence_signed_graph(&k, i, &o.reorient(g.face(node)).unwrap()).unwrap();
        let via_switching = switch(&g, &[node]).unwrap();
        prop_assert_eq!(via_orientation.edges(), via_switching.edges());
    }

    #[test]
    fn path_connectivity_matches_definition(k in complex_strategy(8, 3)) {
        for i in 0..=k.dim().max(0) {
            prop_assert_eq!(k.is_path_connected(i).unwrap(), path_connected_oracle(&k, i), "level {}", i);
        }
    }

    #[test]
    fn exact_rank_matches_floating_rank(k in complex_strategy(8, 3)) {
        let o = Orientation::canonical();
        for i in -1..k.dim() {
            let d = coboundary_matrix(&k, i, &o).unwrap().to_dense();
            prop_assert_eq!(bareiss_rank(&d), float_rank(&d));
        }
    }

    #[test]
    fn euler_poincare(k in complex_strategy(8, 3)) {
        let b = betti_numbers(&k).betti;
        let alt = |x: usize, i: usize| if i.is_multiple_of(2) { x as i64 } else { -(x as i64) };
        let chi: i64 = (0..=k.dim()).map(|i| alt(k.count(i), i as usize)).sum();
        let reduced: i64 = b.iter().enumerate().map(|(i, &x)| alt(x, i)).sum();
        prop_assert_eq!(chi, 1 + reduced);
    }

    #[test]
    fn harmonic_forms_count_homology(k in complex_strategy(7, 3)) {
        let b = betti_numbers(&k).betti;
        for w in [Weights::unit(&k), Weights::normalized(&k)] {
            for i in 0..=k.dim() {
                prop_assert_eq!(harmonic_dimension(&k, i, &w).unwrap(), b[i as usize]);
            }
        }
    }

    #[test]
    fn normalized_weights_satisfy_their_condition(k in complex_strategy(8, 3)) {
        prop_assert!(Weights::normalized(&k).is_normalized(&k, 1e-12));
    }
}
