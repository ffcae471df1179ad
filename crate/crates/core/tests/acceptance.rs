//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! report is printed in order; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use pirkit::codes::{
    build_proof_witness, check_certificate, construct_pir3, min_redundancy_search, rho,
    systematic_from_columns, verify_pk,
};
use pirkit::emulator::{
    encode_database, make_queries, overhead_report, run_seeded_session, Database,
};
use pirkit::gf2::{lemma3_combine, set_square, span_contains, BitVector, VectorSet};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn criterion_1() -> Result<String, String> {
    let mut found = Vec::new();
    for s in 1..=6 {
        let out = min_redundancy_search(s, 3, 6)
            .map_err(|e| format!("s={s}: {e}"))?
            .ok_or_else(|| format!("s={s}: no code with r <= 6"))?;
        let expected = rho(s, 3).map_err(|e| e.to_string())?;
        if out.redundancy != expected {
            return Err(format!(
                "s={s}: search {} vs formula {expected}",
                out.redundancy
            ));
        }
        found.push(out.redundancy);
    }
    if found != [2, 3, 3, 4, 4, 4] {
        return Err(format!("optima {found:?}"));
    }
    Ok(format!("optima {found:?}"))
}

fn criterion_2() -> Result<String, String> {
    let mut found = Vec::new();
    for s in 1..=3 {
        let out = min_redundancy_search(s, 4, 6)
            .map_err(|e| format!("s={s}: {e}"))?
            .ok_or_else(|| format!("s={s}: no code with r <= 6"))?;
        let expected = rho(s, 3).map_err(|e| e.to_string())? + 1;
        if out.redundancy != expected {
            return Err(format!("s={s}: search {} vs {expected}", out.redundancy));
        }
        found.push(out.redundancy);
    }
    Ok(format!("optima {found:?}"))
}

fn criterion_3() -> Result<String, String> {
    // every 4 x 3 parity block, columns given as 4-bit values
    let mut with_p3 = 0;
    for block in 0u64..1 << 12 {
        let cols = [block & 0xf, (block >> 4) & 0xf, (block >> 8) & 0xf];
        let g = systematic_from_columns(4, &cols);
        if verify_pk(&g, 3).map_err(|e| e.to_string())?.is_some() {
            with_p3 += 1;
        }
    }
    if with_p3 != 0 {
        return Err(format!("{with_p3} of 4096 matrices have P_3"));
    }
    Ok("0 of 4096 matrices have P_3".into())
}

fn criterion_4() -> Result<String, String> {
    for s in 1..=1000usize {
        let code = construct_pir3(s);
        let formula = ((2.0 * s as f64 + 0.25).sqrt() + 0.5).ceil() as usize;
        if code.redundancy() != formula {
            return Err(format!("s={s}: r={} vs {formula}", code.redundancy()));
        }
        let cert = code.certificate().ok_or(format!("s={s}: no certificate"))?;
        if !check_certificate(code.generator(), cert, 3) {
            return Err(format!("s={s}: certificate rejected"));
        }
    }
    Ok("s = 1..1000".into())
}

fn criterion_5() -> Result<String, String> {
    let mut min_slack = usize::MAX;
    for s in 1..=50 {
        let w = build_proof_witness(&construct_pir3(s)).map_err(|e| format!("s={s}: {e}"))?;
        for (i, a) in w.a_columns.iter().enumerate() {
            if !span_contains(&w.x_square, a).map_err(|e| e.to_string())? {
                return Err(format!("s={s}: a_{} outside span(X^2)", i + 1));
            }
        }
        if w.span_dimension < s {
            return Err(format!("s={s}: dim span(X^2) = {}", w.span_dimension));
        }
        min_slack = min_slack.min(w.span_dimension - s);
    }
    Ok(format!("s = 1..50, min dim span(X^2) - s = {min_slack}"))
}

fn criterion_6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    const TRIALS: usize = 10_000;
    for t in 0..TRIALS {
        let n = rng.random_range(1..=64);
        let size = rng.random_range(0..=16);
        let x = VectorSet::from_vectors(n, (0..size).map(|_| BitVector::random(n, &mut rng)))
            .map_err(|e| e.to_string())?;
        let m = x.len();
        if set_square(&x).len() > m * m.saturating_sub(1) / 2 {
            return Err(format!("square bound instance {t}: |X| = {m}"));
        }
    }
    for t in 0..TRIALS {
        let n = rng.random_range(1..=64);
        let u = BitVector::random(n, &mut rng);
        let mut v = [
            BitVector::zeros(n),
            BitVector::zeros(n),
            BitVector::zeros(n),
        ];
        for pos in 0..n {
            let owner = rng.random_range(0..4);
            if owner > 0 {
                v[owner - 1].set(pos, true);
            }
        }
        if lemma3_combine(&u, &v[0], &v[1], &v[2]).map_err(|e| e.to_string())? != u {
            return Err(format!("product identity instance {t}"));
        }
    }
    Ok(format!("{TRIALS} + {TRIALS} instances"))
}

fn criterion_7() -> Result<String, String> {
    let code = construct_pir3(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sessions = 0usize;
    for trial in 0..10_000 {
        let db = Database::random(3, 4, &mut rng).map_err(|e| e.to_string())?;
        let seed = rng.next_u64();
        let storage = encode_database(&db, &code).map_err(|e| e.to_string())?;
        for index in 0..12 {
            let t =
                run_seeded_session(&db, &storage, &code, index, seed).map_err(|e| e.to_string())?;
            if !t.is_correct() {
                return Err(format!("trial {trial}, index {index}: wrong bit"));
            }
            sessions += 1;
        }
    }
    let report = overhead_report(&code, 4);
    if report.overhead != Ratio::from_integer(2) || report.replication_overhead != 3 {
        return Err(format!(
            "overhead {} vs replication {}",
            report.overhead, report.replication_overhead
        ));
    }
    Ok(format!("{sessions} sessions correct, overhead 2 vs 3"))
}

fn criterion_8() -> Result<String, String> {
    const L: usize = 3;
    const K: usize = 3;
    for offset in 0..L {
        let mut counts = [[0usize; 1 << L]; K];
        for bits in 0u64..1 << (L * (K - 1)) {
            let randomness: Vec<BitVector> = (0..K - 1)
                .map(|j| BitVector::from_u64(L, (bits >> (j * L)) & ((1 << L) - 1)))
                .collect();
            let queries = make_queries(L, offset, K, &randomness).map_err(|e| e.to_string())?;
            for (j, q) in queries.iter().enumerate() {
                counts[j][q.words()[0] as usize] += 1;
            }
        }
        for (j, c) in counts.iter().enumerate() {
            if c.iter().any(|&x| x != 8) {
                return Err(format!("offset {offset}, query {}: counts {c:?}", j + 1));
            }
        }
    }
    Ok("each query value appears 8 times in 64".into())
}

fn main() -> ExitCode {
    let checks: [(&str, Check, Duration); 8] = [
        (
            "oracle matches formula, k = 3",
            criterion_1,
            Duration::from_secs(300),
        ),
        (
            "even-k relation, k = 4",
            criterion_2,
            Duration::from_secs(600),
        ),
        (
            "no 4 x 7 systematic code has P_3",
            criterion_3,
            Duration::from_secs(60),
        ),
        (
            "constructor exactness, s <= 1000",
            criterion_4,
            Duration::from_secs(60),
        ),
        (
            "proof witness replay, s <= 50",
            criterion_5,
            Duration::from_secs(60),
        ),
        (
            "square bound and product identity",
            criterion_6,
            Duration::from_secs(60),
        ),
        (
            "emulator correctness and overhead",
            criterion_7,
            Duration::from_secs(120),
        ),
        (
            "marginal uniformity of queries",
            criterion_8,
            Duration::from_secs(1),
        ),
    ];
    let mut failures = 0;
    for (number, (name, check, limit)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took longer than {limit:?}")),
            Err(reason) => ("FAIL", reason),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {}: {status} {name} ({detail}) in {:.2?}",
            number + 1,
            elapsed
        );
    }
    if failures == 0 {
        println!("all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failures} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
