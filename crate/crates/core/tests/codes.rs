use std::collections::BTreeSet;

use pirkit::codes::{
    build_proof_witness, check_certificate, construct, construct_pir2, construct_pir3,
    construct_pir4, enumerate_recovery_sets, find_disjoint_recovery_sets, lower_bound_ok, rho,
    rho3, verify_pk, weight_two_pairs, PirCode, RecoveryCertificate, RecoverySet,
};
use pirkit::gf2::{BitMatrix, BitVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(s: usize, n: usize, rng: &mut ChaCha8Rng) -> BitMatrix {
    BitMatrix::from_rows(n, (0..s).map(|_| BitVector::random(n, rng)).collect()).unwrap()
}

fn subset_sum(g: &BitMatrix, mask: u32) -> BitVector {
    let mut acc = BitVector::zeros(g.rows());
    for c in 0..g.cols() {
        if mask >> c & 1 == 1 {
            acc.xor_assign(&g.column(c));
        }
    }
    acc
}

/// All column subsets adding up to `e_i`, by trying every subset.
fn brute_recovery_sets(g: &BitMatrix, i: usize) -> BTreeSet<Vec<usize>> {
    let target = BitVector::unit(g.rows(), i);
    (0u32..1 << g.cols())
        .filter(|&mask| subset_sum(g, mask) == target)
        .map(|mask| (0..g.cols()).filter(|c| mask >> c & 1 == 1).collect())
        .collect()
}

/// Whether `k` disjoint recovery sets for `e_i` exist, by labelling every
/// column with a set number in `0..=k` (0 meaning unused).
fn brute_disjoint(g: &BitMatrix, i: usize, k: usize) -> bool {
    let n = g.cols();
    let target = BitVector::unit(g.rows(), i);
    let columns = g.columns();
    let total = (k + 1).pow(n as u32);
    (0..total).any(|mut code| {
        let mut sums = vec![BitVector::zeros(g.rows()); k];
        for col in &columns {
            let label = code % (k + 1);
            code /= k + 1;
            if label > 0 {
                sums[label - 1].xor_assign(col);
            }
        }
        sums.iter().all(|s| *s == target)
    })
}

#[test]
fn enumeration_matches_all_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let s = rng.random_range(1..=4);
        let n = rng.random_range(s..=9);
        let g = random_matrix(s, n, &mut rng);
        for i in 0..s {
            let brute = brute_recovery_sets(&g, i);
            match enumerate_recovery_sets(&g, i) {
                Ok(sets) => {
                    let got: BTreeSet<Vec<usize>> =
                        sets.iter().map(|r| r.columns().to_vec()).collect();
                    assert_eq!(got.len(), sets.len(), "duplicates returned");
                    assert_eq!(got, brute);
                    assert_eq!(sets.len(), 1 << (n - g.rank()));
                }
                Err(_) => assert!(brute.is_empty()),
            }
        }
    }
}

#[test]
fn disjoint_search_matches_labelling_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut positives = 0;
    for trial in 0..300 {
        let s = rng.random_range(1..=3);
        let n = rng.random_range(s..=7);
        let k = 1 + trial % 3;
        let g = random_matrix(s, n, &mut rng);
        for i in 0..s {
            let expected = brute_disjoint(&g, i, k);
            let got = find_disjoint_recovery_sets(&g, i, k).unwrap_or_default();
            assert_eq!(got.is_some(), expected, "g = {g:?}, i = {i}, k = {k}");
            if let Some(sets) = got {
                positives += 1;
                assert_eq!(sets.len(), k);
                let mut seen = BTreeSet::new();
                for set in &sets {
                    let mut acc = BitVector::zeros(s);
                    for &c in set.columns() {
                        assert!(seen.insert(c));
                        acc.xor_assign(&g.column(c));
                    }
                    assert_eq!(acc, BitVector::unit(s, i));
                }
            }
        }
    }
    assert!(positives > 50);
}

#[test]
fn verify_matches_oracle_on_small_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for trial in 0..200 {
        let s = rng.random_range(1..=3);
        let n = rng.random_range(s..=7);
        let k = 2 + trial % 2;
        let g = random_matrix(s, n, &mut rng);
        let expected = (0..s).all(|i| brute_disjoint(&g, i, k));
        let cert = verify_pk(&g, k).unwrap();
        assert_eq!(cert.is_some(), expected);
        if let Some(cert) = cert {
            assert!(check_certificate(&g, &cert, k));
        }
    }
}

#[test]
fn property_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    for _ in 0..400 {
        let s = rng.random_range(1..=4);
        let n = rng.random_range(s..=10);
        let g = random_matrix(s, n, &mut rng);
        for k in 2..=4 {
            if verify_pk(&g, k).unwrap().is_none() {
                continue;
            }
            checked += 1;
            assert!(verify_pk(&g, k - 1).unwrap().is_some());
            let extra = BitMatrix::from_columns(s, &[BitVector::random(s, &mut rng)]).unwrap();
            let longer = g.hstack(&extra).unwrap();
            assert!(verify_pk(&longer, k).unwrap().is_some());
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert!(verify_pk(&g.permute_columns(&perm).unwrap(), k)
                .unwrap()
                .is_some());
        }
    }
    assert!(checked > 30);
}

#[test]
fn certificates_are_sound() {
    let code = construct_pir3(6);
    let g = code.generator();
    let cert = code.certificate().unwrap();
    assert!(check_certificate(g, cert, 3));
    assert!(check_certificate(g, &cert.truncated(2), 2));
    assert!(!check_certificate(g, &cert.truncated(2), 3));

    // moving one column between two sets of the same coordinate breaks it
    let mut sets: Vec<Vec<RecoverySet>> = cert.iter().map(<[RecoverySet]>::to_vec).collect();
    let mut second: Vec<usize> = sets[0][1].columns().to_vec();
    second.push(sets[0][2].columns()[0]);
    sets[0][1] = RecoverySet::new(second);
    assert!(!check_certificate(g, &RecoveryCertificate::new(sets), 3));

    // a set that misses its target
    let mut sets: Vec<Vec<RecoverySet>> = cert.iter().map(<[RecoverySet]>::to_vec).collect();
    sets[2][0] = RecoverySet::new([0]);
    assert!(!check_certificate(g, &RecoveryCertificate::new(sets), 3));

    let text = cert.to_text();
    assert_eq!(RecoveryCertificate::from_text(&text).unwrap(), *cert);
}

#[test]
fn two_server_codes_verify() {
    for s in 1..=50 {
        let code = construct_pir2(s);
        assert_eq!(code.redundancy(), 1);
        assert!(verify_pk(code.generator(), 2).unwrap().is_some());
        assert!(verify_pk(code.generator(), 3).unwrap().is_none());
    }
}

#[test]
fn four_server_codes_verify() {
    for s in 1..=100 {
        let code = construct_pir4(s);
        assert_eq!(code.redundancy(), rho(s, 4).unwrap());
        let cert = verify_pk(code.generator(), 4).unwrap();
        assert!(cert.is_some(), "s = {s}");
    }
}

#[test]
fn three_server_constructions_are_optimal_and_certified() {
    for s in 1..=10_000 {
        let (r, pairs) = weight_two_pairs(s);
        assert_eq!(r, rho3(s));
        assert_eq!(pairs.len(), s);
        assert!(pairs.iter().all(|&(a, b)| a < b && b < r));
        let distinct: BTreeSet<_> = pairs.iter().collect();
        assert_eq!(distinct.len(), s);
        assert!(lower_bound_ok(s, r));
        assert!(r < 2 || !lower_bound_ok(s, r - 1));
    }
    for s in [1, 2, 3, 7, 64, 65, 500, 2345, 10_000] {
        let code = construct_pir3(s);
        assert_eq!(code.redundancy(), rho3(s));
        assert!(check_certificate(
            code.generator(),
            code.certificate().unwrap(),
            3
        ));
        let code = construct_pir4(s);
        assert!(check_certificate(
            code.generator(),
            code.certificate().unwrap(),
            4
        ));
    }
}

#[test]
fn construct_dispatch() {
    assert_eq!(construct(3, 5).unwrap(), construct_pir3(5));
    assert!(construct(5, 3).is_err());
    assert!(construct(3, 0).is_err());
}

/// Randomly disguises a 3-server code: permutes rows, shuffles columns and
/// appends random columns, then lets the verifier find a certificate.
#[test]
fn witness_replays_on_disguised_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for trial in 0..120 {
        let s = 1 + trial % 8;
        let base = construct_pir3(s);
        let mut rows: Vec<BitVector> = base.generator().row_vectors().to_vec();
        rows.shuffle(&mut rng);
        let mut g = BitMatrix::from_rows(base.length(), rows).unwrap();
        let extra = rng.random_range(0..=2);
        if extra > 0 {
            g = g.hstack(&random_matrix(s, extra, &mut rng)).unwrap();
        }
        let mut perm: Vec<usize> = (0..g.cols()).collect();
        perm.shuffle(&mut rng);
        let g = g.permute_columns(&perm).unwrap();

        let cert = verify_pk(&g, 3).unwrap().expect("disguised code keeps P_3");
        let code = PirCode::new(g, 3, Some(cert)).unwrap();
        let w = build_proof_witness(&code).unwrap();
        assert!(w.span_dimension >= s);
        assert!(w.x_square.len() <= w.redundancy() * (w.redundancy() - 1) / 2);
        assert_eq!(w.coordinates.len(), s);
    }
}
