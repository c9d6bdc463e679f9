use proptest::prelude::*;
use sphdesign::design::{gegenbauer, pair_spectrum, pair_spectrum_direct};
use sphdesign::exact::Matrix;
use sphdesign::lattice::files::{parse_gram, write_gram};
use sphdesign::lattice::{catalog, enumerate_short_vectors, halve_antipodal_seeded, minimal_vectors};
use sphdesign::{rat, GramMatrix, Rational, VectorSet};

/// `B·Bᵀ + I` for a small integer matrix `B`: always positive definite.
fn pd_gram(n: usize) -> impl Strategy<Value = GramMatrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |b| {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| b[i * n + k] * b[j * n + k]).sum::<i64>() + i64::from(i == j))
                    .collect()
            })
            .collect();
        GramMatrix::from_integers(&rows).unwrap()
    })
}

/// `B·Bᵀ` for an `n × m` integer `B`: PSD with rank at most `m`.
fn psd_gram(n: usize, m: usize) -> impl Strategy<Value = (GramMatrix, Vec<i64>)> {
    prop::collection::vec(-2i64..=2, n * m).prop_map(move |b| {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (0..m).map(|k| b[i * m + k] * b[j * m + k]).sum()).collect())
            .collect();
        (GramMatrix::from_integers(&rows).unwrap(), b)
    })
}

fn brute_force(g: &GramMatrix, bound: &Rational, radius: i64) -> Vec<Vec<i64>> {
    let n = g.dim();
    let mut out = Vec::new();
    let mut v = vec![-radius; n];
    loop {
        if v.iter().any(|&c| c != 0) && &g.inner(&v, &v) <= bound {
            out.push(v.clone());
        }
        let mut i = 0;
        while i < n && v[i] == radius {
            v[i] = -radius;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ldlt_reconstructs(g in pd_gram(4)) {
        let f = g.ldlt().unwrap();
        prop_assert!(f.is_positive_definite());
        prop_assert_eq!(&f.reconstruct(), g.matrix());
    }

    #[test]
    fn inverse_is_an_involution(g in pd_gram(3)) {
        let inv = g.invert().unwrap();
        prop_assert_eq!(inv.matrix().mul(g.matrix()).unwrap(), Matrix::identity(3));
        prop_assert_eq!(inv.invert().unwrap(), g);
    }

    #[test]
    fn psd_rank_is_scale_invariant((g, _) in psd_gram(5, 3), p in 1i64..50, q in 1i64..50) {
        let r = g.psd_rank();
        prop_assert!(r.is_psd);
        prop_assert!(r.rank <= 3);
        prop_assert_eq!(g.scaled(&rat(p, q)).psd_rank(), r);
    }

    #[test]
    fn negated_psd_is_not_psd((g, b) in psd_gram(4, 2)) {
        prop_assume!(b.iter().any(|&x| x != 0));
        prop_assert!(!g.scaled(&rat(-1, 1)).psd_rank().is_psd);
    }

    #[test]
    fn enumeration_matches_brute_force(g in pd_gram(3), bound in 1i64..12) {
        let bound = Rational::from_integer(bound.into());
        let mut got = enumerate_short_vectors(&g, &bound).unwrap();
        got.sort();
        // every Gram here dominates the identity, so |v_i| <= sqrt(bound) < 4
        prop_assert_eq!(&got, &brute_force(&g, &bound, 3));
        for v in &got {
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            prop_assert!(got.binary_search(&neg).is_ok());
        }
    }

    #[test]
    fn gram_files_round_trip(g in pd_gram(4)) {
        prop_assert_eq!(parse_gram(&write_gram(&g, &["generated"])).unwrap(), g);
    }

    #[test]
    fn gegenbauer_is_normalized(k in 0usize..12, d in 1usize..30) {
        prop_assert_eq!(gegenbauer(k, d).unwrap().eval(&rat(1, 1)), rat(1, 1));
        let parity = if k % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(gegenbauer(k, d).unwrap().eval(&rat(-1, 1)), rat(parity, 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn halvings_reunite(seed in any::<u64>()) {
        let x = minimal_vectors(&catalog("E6").unwrap()).unwrap();
        let half = halve_antipodal_seeded(&x, seed).unwrap();
        prop_assert_eq!(half.len(), 36);
        prop_assert!(!half.has_antipodal_pair());
        prop_assert_eq!(half.with_negatives().sorted(), x.sorted());
    }

    #[test]
    fn spectra_of_subsets(mask in prop::collection::vec(any::<bool>(), 240)) {
        let x = minimal_vectors(&catalog("E8").unwrap()).unwrap();
        let picked: Vec<Vec<i64>> = x.vectors().zip(&mask).filter(|(_, &m)| m).map(|(v, _)| v.to_vec()).collect();
        prop_assume!(!picked.is_empty());
        let sub = VectorSet::new(x.gram().clone(), x.min_norm().clone(), picked).unwrap();
        let fast = pair_spectrum(&sub);
        prop_assert_eq!(fast.total(), (sub.len() * sub.len()) as u64);
        prop_assert!(fast.is_consistent());
        prop_assert_eq!(fast, pair_spectrum_direct(&sub));
    }
}
