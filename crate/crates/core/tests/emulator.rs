use num_rational::Ratio;
use pirkit::codes::{construct_pir2, construct_pir3, construct_pir4, PirCode};
use pirkit::emulator::{
    encode_database, overhead_report, run_seeded_session, run_session, Database, ServerRole,
};
use pirkit::gf2::BitVector;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hands out a fixed list of words and insists that all of them are used.
struct ScriptedRng {
    words: Vec<u64>,
    pos: usize,
}

impl ScriptedRng {
    fn new(words: Vec<u64>) -> Self {
        Self { words, pos: 0 }
    }

    fn exhausted(&self) -> bool {
        self.pos == self.words.len()
    }
}

impl RngCore for ScriptedRng {
    fn next_u32(&mut self) -> u32 {
        self.next_u64() as u32
    }

    fn next_u64(&mut self) -> u64 {
        let w = self.words[self.pos];
        self.pos += 1;
        w
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let w = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&w[..chunk.len()]);
        }
    }
}

/// Number of random vectors a session for `part` draws: `k - 1` designated
/// queries plus one per dummy server.
fn draws(code: &PirCode, part: usize) -> usize {
    let used: usize = code
        .certificate()
        .unwrap()
        .sets_for(part)
        .iter()
        .map(|s| s.len())
        .sum();
    code.k() - 1 + code.length() - used
}

fn split_words(bits: u64, count: usize, part_len: usize) -> Vec<u64> {
    (0..count)
        .map(|j| (bits >> (j * part_len)) & ((1 << part_len) - 1))
        .collect()
}

fn database_from_bits(bits: u64, parts: usize, part_len: usize) -> Database {
    let flat = BitVector::from_u64(parts * part_len, bits);
    Database::from_flat(&flat, part_len).unwrap()
}

/// Every database, index and randomness value of a small instance.
fn exhaustive_correctness(code: &PirCode, part_len: usize) -> usize {
    let s = code.dimension();
    let mut sessions = 0;
    for db_bits in 0u64..1 << (s * part_len) {
        let db = database_from_bits(db_bits, s, part_len);
        let storage = encode_database(&db, code).unwrap();
        for index in 0..s * part_len {
            let count = draws(code, index / part_len);
            for r in 0u64..1 << (count * part_len) {
                let mut rng = ScriptedRng::new(split_words(r, count, part_len));
                let t = run_session(&db, &storage, code, index, &mut rng).unwrap();
                assert!(rng.exhausted());
                assert!(
                    t.is_correct(),
                    "db {db_bits:b}, index {index}, randomness {r:b}"
                );
                sessions += 1;
            }
        }
    }
    sessions
}

#[test]
fn single_bit_database_for_all_randomness() {
    let code = construct_pir3(1);
    let db = Database::new(vec![BitVector::ones(1)]).unwrap();
    let storage = encode_database(&db, &code).unwrap();
    for r in 0u64..4 {
        let mut rng = ScriptedRng::new(split_words(r, 2, 1));
        let t = run_session(&db, &storage, &code, 0, &mut rng).unwrap();
        assert!(t.result);
        assert!(t.expected);
    }
}

#[test]
fn exhaustive_correctness_on_small_codes() {
    assert_eq!(exhaustive_correctness(&construct_pir3(1), 3), 8 * 3 * 64);
    assert!(exhaustive_correctness(&construct_pir3(3), 2) > 0);
    assert!(exhaustive_correctness(&construct_pir3(4), 1) > 0);
    assert!(exhaustive_correctness(&construct_pir2(3), 2) > 0);
    assert!(exhaustive_correctness(&construct_pir4(2), 1) > 0);
}

#[test]
fn randomized_correctness_at_larger_sizes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for code in [construct_pir3(10), construct_pir4(7), construct_pir2(5)] {
        let s = code.dimension();
        for _ in 0..20 {
            let db = Database::random(s, 70, &mut rng).unwrap();
            let storage = encode_database(&db, &code).unwrap();
            for index in (0..s * 70).step_by(13) {
                let t = run_seeded_session(&db, &storage, &code, index, rng.next_u64()).unwrap();
                assert!(t.is_correct());
            }
        }
    }
}

#[test]
fn designated_queries_sum_to_the_offset() {
    let code = construct_pir4(5);
    let db = Database::zeros(5, 9).unwrap();
    let storage = encode_database(&db, &code).unwrap();
    for index in 0..45 {
        let t = run_seeded_session(&db, &storage, &code, index, index as u64).unwrap();
        let mut sum = BitVector::zeros(9);
        for q in &t.designated_queries {
            sum.xor_assign(q);
        }
        assert_eq!(sum, BitVector::unit(9, t.offset));
        for ex in &t.exchanges {
            if let ServerRole::Recovery(j) = ex.role {
                assert_eq!(ex.query, t.designated_queries[j]);
            }
        }
    }
}

#[test]
fn encoding_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for code in [construct_pir3(6), construct_pir4(3), construct_pir2(4)] {
        let s = code.dimension();
        for _ in 0..50 {
            let x = Database::random(s, 33, &mut rng).unwrap();
            let y = Database::random(s, 33, &mut rng).unwrap();
            let ex = encode_database(&x, &code).unwrap();
            let ey = encode_database(&y, &code).unwrap();
            let exy = encode_database(&x.xor(&y).unwrap(), &code).unwrap();
            for m in 0..code.length() {
                let mut sum = ex.coded_part(m).clone();
                sum.xor_assign(ey.coded_part(m));
                assert_eq!(&sum, exy.coded_part(m));
            }
            assert_eq!(exy.total_bits(), code.length() * 33);
        }
    }
}

/// For a fixed index, the query seen by each single server is uniform over
/// all randomness values.
#[test]
fn single_server_views_are_uniform_exhaustively() {
    let part_len = 2;
    let code = construct_pir3(4);
    let db = Database::zeros(4, part_len).unwrap();
    let storage = encode_database(&db, &code).unwrap();
    for index in 0..4 * part_len {
        let count = draws(&code, index / part_len);
        let total = 1u64 << (count * part_len);
        let mut hist = vec![[0u64; 4]; code.length()];
        for r in 0..total {
            let mut rng = ScriptedRng::new(split_words(r, count, part_len));
            let t = run_session(&db, &storage, &code, index, &mut rng).unwrap();
            for ex in &t.exchanges {
                hist[ex.server][ex.query.words()[0] as usize] += 1;
            }
        }
        for h in &hist {
            assert!(h.iter().all(|&c| c == total / 4), "index {index}: {h:?}");
        }
    }
}

#[test]
fn single_server_views_pass_a_frequency_test() {
    // L = 6: 64 cells, 64 000 sessions, chi-square with 63 degrees of
    // freedom; 120 sits far in the upper tail
    let part_len = 6;
    let code = construct_pir3(3);
    let db = Database::zeros(3, part_len).unwrap();
    let storage = encode_database(&db, &code).unwrap();
    let sessions = 64_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut hist = vec![[0u64; 64]; code.length()];
    for _ in 0..sessions {
        let t = run_session(&db, &storage, &code, 7, &mut rng).unwrap();
        for ex in &t.exchanges {
            hist[ex.server][ex.query.words()[0] as usize] += 1;
        }
    }
    let expected = sessions as f64 / 64.0;
    for h in &hist {
        let chi2: f64 = h
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 120.0, "chi-square {chi2}");
    }
}

#[test]
fn seeded_sessions_are_reproducible() {
    let code = construct_pir3(6);
    let db = Database::random(6, 16, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let storage = encode_database(&db, &code).unwrap();
    let a = run_seeded_session(&db, &storage, &code, 50, 99).unwrap();
    let b = run_seeded_session(&db, &storage, &code, 50, 99).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    let c = run_seeded_session(&db, &storage, &code, 50, 100).unwrap();
    assert_ne!(a.to_text(), c.to_text());
}

#[test]
fn overhead_examples() {
    let r = overhead_report(&construct_pir3(10), 1);
    assert_eq!(r.overhead, Ratio::new(3, 2));
    assert_eq!(r.replication_overhead, 3);
    let r = overhead_report(&construct_pir4(10), 16);
    assert_eq!(r.overhead, Ratio::new(16, 10));
    assert_eq!(r.replication_overhead, 4);
    assert_eq!(r.coded_bits * r.dimension, r.database_bits * r.length);
}
