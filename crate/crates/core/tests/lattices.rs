mod common;

use sphdesign::design::{design_strength, even_moment, gegenbauer_sum, pair_spectrum, pair_spectrum_direct};
use sphdesign::embed::{embed, embedded_gram, realize_coordinates, theorem_check};
use sphdesign::lattice::{catalog, dual, halve_antipodal, halve_antipodal_seeded, minimal_vectors, CATALOG};
use sphdesign::report::{analyze, analyze_set, AnalysisOptions, Halving};
use sphdesign::{rat, Error};

#[test]
fn catalog_kissing_numbers() {
    for entry in CATALOG.iter().filter(|e| e.name != "Leech") {
        let spec = catalog(entry.name).unwrap();
        let x = minimal_vectors(&spec).unwrap();
        assert_eq!(x.len(), entry.kissing, "{}", entry.name);
        assert_eq!(x.min_norm(), &rat(entry.min_norm.0, entry.min_norm.1), "{}", entry.name);
        assert!(x.is_antipodal(), "{}", entry.name);
    }
}

#[test]
fn catalog_names_are_forgiving() {
    assert_eq!(catalog("e6#").unwrap().name, "E6dual");
    assert_eq!(catalog("leech").unwrap().name, "Leech");
    assert!(matches!(catalog("Z3"), Err(Error::UnknownLattice { .. })));
}

#[test]
fn duals_from_inversion() {
    let e6 = dual(&catalog("E6").unwrap()).unwrap();
    let x = minimal_vectors(&e6).unwrap();
    assert_eq!((x.len(), x.min_norm().clone()), (54, rat(4, 3)));

    // E8 is unimodular, so its dual has the same shell
    let e8 = dual(&catalog("E8").unwrap()).unwrap();
    let x = minimal_vectors(&e8).unwrap();
    assert_eq!((x.len(), x.min_norm().clone()), (240, rat(2, 1)));

    let e7 = dual(&catalog("E7").unwrap()).unwrap();
    assert_eq!(minimal_vectors(&e7).unwrap().len(), 56);
}

#[test]
fn kissing_mismatch_is_an_error() {
    let mut spec = catalog("D4").unwrap();
    spec.expected_kissing = Some(25);
    assert!(matches!(minimal_vectors(&spec), Err(Error::KissingMismatch { found: 24, .. })));
}

#[test]
fn fast_spectrum_matches_direct_on_catalog() {
    for name in ["A2", "D4", "E6", "E6dual", "E7dual", "E8", "K10dual"] {
        let x = minimal_vectors(&catalog(name).unwrap()).unwrap();
        assert_eq!(pair_spectrum(&x), pair_spectrum_direct(&x), "{name}");
        let half = halve_antipodal(&x).unwrap();
        assert_eq!(pair_spectrum(&half), pair_spectrum_direct(&half), "{name} halved");
    }
}

#[test]
fn design_strengths() {
    let cases = [("A2", 5), ("D4", 5), ("E6", 5), ("E7", 5), ("E8", 7), ("CT12", 5), ("BW16", 7)];
    for (name, t) in cases {
        let x = minimal_vectors(&catalog(name).unwrap()).unwrap();
        assert_eq!(design_strength(&pair_spectrum(&x), 11).unwrap(), t, "{name}");
    }
    let oct = pair_spectrum(&common::octahedron());
    assert_eq!(design_strength(&oct, 11).unwrap(), 3);
}

#[test]
fn moment_and_gegenbauer_tests_agree() {
    let mut sets: Vec<_> = CATALOG
        .iter()
        .filter(|e| e.name != "Leech")
        .map(|e| minimal_vectors(&catalog(e.name).unwrap()).unwrap())
        .collect();
    sets.push(common::hexagon());
    sets.extend((2..=6).map(common::cross_polytope));
    for x in &sets {
        let spec = pair_spectrum(x);
        for big_k in 1..=5 {
            let moments = (1..=big_k).all(|k| even_moment(&spec, 2 * k).unwrap().holds());
            let sums = (1..=2 * big_k + 1).all(|k| gegenbauer_sum(&spec, k).unwrap() == rat(0, 1));
            assert_eq!(moments, sums, "rank {} N {} K {big_k}", x.rank(), x.len());
        }
    }
}

#[test]
fn union_with_negatives_keeps_strength() {
    let half = halve_antipodal(&minimal_vectors(&catalog("E8").unwrap()).unwrap()).unwrap();
    let full = half.with_negatives();
    assert_eq!(full.len(), 240);
    assert_eq!(design_strength(&pair_spectrum(&full), 11).unwrap(), 7);
}

#[test]
fn halving_does_not_change_the_embedding() {
    for name in ["D4", "E8"] {
        let x = minimal_vectors(&catalog(name).unwrap()).unwrap();
        let canonical = embed(&pair_spectrum(&halve_antipodal(&x).unwrap())).unwrap();
        for seed in 0..10 {
            let half = halve_antipodal_seeded(&x, seed).unwrap();
            assert_eq!(half.with_negatives().sorted(), x.sorted());
            assert_eq!(embed(&pair_spectrum(&half)).unwrap(), canonical, "{name} seed {seed}");
        }
    }
}

#[test]
fn seeded_reports_match_canonical() {
    let spec = catalog("E8").unwrap();
    let base = analyze(&spec, &AnalysisOptions::default()).unwrap().to_json();
    for seed in [1, 99] {
        let opts = AnalysisOptions {
            halving: Halving::Seeded(seed),
            ..Default::default()
        };
        assert_eq!(analyze(&spec, &opts).unwrap().to_json(), base);
    }
}

#[test]
fn embedded_gram_ranks() {
    for (name, rank) in [("A2", 2), ("D4", 9), ("E6", 20), ("E8", 35)] {
        let half = halve_antipodal(&minimal_vectors(&catalog(name).unwrap()).unwrap()).unwrap();
        let cert = embedded_gram(&half, 512).unwrap().certify();
        assert!(cert.is_psd && cert.unit_diagonal, "{name}");
        assert_eq!((cert.rank, cert.dim_harm2), (rank, rank as u64), "{name}");
    }
}

#[test]
fn realized_e8_coordinates() {
    let x = minimal_vectors(&catalog("E8").unwrap()).unwrap();
    let half = halve_antipodal(&x).unwrap();
    let pts = realize_coordinates(&half, 12, 512).unwrap();
    assert_eq!(pts.len(), 240);
    assert!(pts.iter().all(|p| p.len() == 35));
    for p in &pts {
        let n: f64 = p.iter().map(|c| c * c).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
    // realized inner products take only the embedded values
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    for i in 0..pts.len() {
        for j in 0..i {
            let s = dot(&pts[i], &pts[j]).abs();
            assert!((s - 1.0 / 7.0).abs() < 1e-12 || (s - 1.0).abs() < 1e-12, "{s}");
        }
    }
}

#[test]
fn octahedron_is_the_negative_control() {
    let a = analyze_set("octahedron", &common::octahedron(), None, &AnalysisOptions::default()).unwrap();
    let v = a.venkov5.unwrap();
    assert!(!v.holds);
    assert_eq!((v.lhs4, v.target4), (rat(1, 3), rat(1, 5)));
    let e = a.embedded.unwrap();
    assert!(!e.theorem.is_3design);
    assert_eq!((e.theorem.lhs, e.theorem.rhs), (rat(1, 2), rat(1, 5)));
}

#[test]
fn theorem_check_on_strongly_perfect_lattices() {
    for name in ["A2", "D4", "E6", "E6dual", "E7", "E7dual", "E8", "K10", "K10dual", "CT12", "BW16"] {
        let x = minimal_vectors(&catalog(name).unwrap()).unwrap();
        let d = x.rank() - 1;
        let t = theorem_check(&embed(&pair_spectrum(&halve_antipodal(&x).unwrap())).unwrap()).unwrap();
        assert!(t.is_3design, "{name}");
        assert_eq!(t.rhs, rat(2, (d * (d + 3)) as i64), "{name}");
    }
}
