//! `pirkit`: build, check and exercise k-server PIR codes from the shell.
//!
//! Exit status 0 means success, 1 a negative answer (the matrix lacks the
//! property, the bound is violated, nothing was found), 2 a usage, format
//! or guard error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pirkit::codes::{
    build_proof_witness, construct, diagnose_certificate, lower_bound_ok, min_redundancy_search,
    parse_code_text, rho, CodeError, PirCode, RecoveryCertificate, SearchLimits, Verifier,
    SEARCH_GUARD_ENV,
};
use pirkit::emulator::{encode_database, overhead_report, run_seeded_session, Database};
use pirkit::gf2::{BitMatrix, BitVector};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(
    name = "pirkit",
    version,
    about = "Binary k-server PIR codes: construction, verification, search and emulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an optimal code and write it with its recovery certificate
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Code file; the certificate goes to FILE.cert
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide property P_k for a generator matrix
    Verify {
        /// Server count; defaults to the `k` header of the input file
        #[arg(long)]
        k: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        /// Check this certificate instead of searching
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print the optimal redundancy for dimension s and k servers
    Rho {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
    },
    /// Test the necessary condition r(r-1) >= 2s
    Bound {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
    },
    /// Exhaustive search for the minimal redundancy
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        rmax: usize,
        /// Worker threads; the result does not depend on it
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Replay the redundancy lower bound on a 3-server code
    Witness {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Run one private retrieval against simulated servers
    Emulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        partlen: usize,
        /// Global bit index, 0-based
        #[arg(long)]
        index: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Also write the transcript here
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Database as one line of parts * partlen bits; random from the
        /// seed when absent
        #[arg(long)]
        db: Option<PathBuf>,
    },
}

enum Failure {
    Negative(String),
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure::Usage(message.to_string())
}

fn code_error(e: CodeError) -> Failure {
    match e {
        CodeError::TooLarge { .. } => Failure::Usage(format!(
            "{e}; set {SEARCH_GUARD_ENV} to raise the limit (exactness preserved, runtime unbounded)"
        )),
        other => Failure::Usage(other.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<(Option<usize>, BitMatrix), Failure> {
    parse_code_text(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_certificate(path: &Path) -> Result<RecoveryCertificate, Failure> {
    RecoveryCertificate::from_text(&read_file(path)?)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verifier() -> Result<Verifier, Failure> {
    Ok(Verifier::new(SearchLimits::from_env().map_err(code_error)?))
}

fn cert_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".cert");
    PathBuf::from(name)
}

/// The code in `input` with a certificate, read from `cert` or found by
/// the exact verifier.
fn load_code(
    input: &Path,
    cert: Option<&Path>,
    default_k: Option<usize>,
) -> Result<PirCode, Failure> {
    let (header_k, g) = load_matrix(input)?;
    let k = header_k
        .or(default_k)
        .ok_or_else(|| usage("server count unknown: add a `k` header to the code file"))?;
    match cert {
        Some(path) => PirCode::new(g, k, Some(load_certificate(path)?)).map_err(code_error),
        None => PirCode::verified(g, k, &verifier()?)
            .map_err(code_error)?
            .ok_or_else(|| Failure::Negative(format!("not P_{k}: no certificate exists"))),
    }
}

fn cmd_construct(k: usize, s: usize, out: &Path) -> Outcome {
    if k >= 5 {
        return Err(usage("no construction for k ≥ 5"));
    }
    let code = construct(k, s).map_err(code_error)?;
    write_file(out, &code.to_text())?;
    let cert = cert_path(out);
    write_file(
        &cert,
        &code
            .certificate()
            .expect("constructions are certified")
            .to_text(),
    )?;
    let report = overhead_report(&code, 1);
    Ok(format!(
        "k={k} s={s} n={} r={}\noverhead (s+r)/s = {} (replication: {k})\nwrote {} and {}\n",
        code.length(),
        code.redundancy(),
        report.overhead,
        out.display(),
        cert.display()
    ))
}

fn cmd_verify(k: Option<usize>, input: &Path, cert: Option<&Path>) -> Outcome {
    let (header_k, g) = load_matrix(input)?;
    let k = k
        .or(header_k)
        .ok_or_else(|| usage("server count unknown: pass --k or add a `k` header"))?;
    if k == 0 {
        return Err(usage("k must be positive"));
    }
    match cert {
        Some(path) => {
            let cert = load_certificate(path)?;
            diagnose_certificate(&g, &cert, k)
                .map_err(|d| Failure::Negative(format!("certificate rejected for P_{k}: {d}")))?;
            Ok(format!(
                "P_{k} holds (certificate checked)\n{}",
                cert.to_text()
            ))
        }
        None => match verifier()?.verify_pk(&g, k).map_err(code_error)? {
            Some(cert) => Ok(format!("P_{k} holds\n{}", cert.to_text())),
            None => Err(Failure::Negative(format!("not P_{k}"))),
        },
    }
}

fn cmd_rho(k: usize, s: usize) -> Outcome {
    Ok(format!("{}\n", rho(s, k).map_err(code_error)?))
}

fn cmd_bound(s: usize, r: usize) -> Outcome {
    if s == 0 {
        return Err(usage("s must be positive"));
    }
    if lower_bound_ok(s, r) {
        Ok(format!("s={s} r={r} satisfies r(r-1) ≥ 2s\n"))
    } else {
        Err(Failure::Negative(format!(
            "s={s} r={r} violates r(r-1) ≥ 2s"
        )))
    }
}

fn cmd_search(k: usize, s: usize, rmax: usize, jobs: Option<usize>) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be positive"));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(usage)?;
    match pool
        .install(|| min_redundancy_search(s, k, rmax))
        .map_err(code_error)?
    {
        Some(found) => Ok(format!(
            "{}\n{}",
            found.redundancy,
            found.generator.to_text()
        )),
        None => Err(Failure::Negative(format!(
            "no {k}-server PIR code of dimension {s} with r ≤ {rmax}"
        ))),
    }
}

fn cmd_witness(input: &Path, cert: Option<&Path>) -> Outcome {
    let code = load_code(input, cert, Some(3))?;
    let s = code.dimension();
    let w = build_proof_witness(&code).map_err(|e| match e {
        CodeError::ProofStep { .. } => Failure::Negative(e.to_string()),
        other => code_error(other),
    })?;
    let r = w.redundancy();
    let mut out = String::new();
    let perm: Vec<String> = w
        .systematized
        .column_permutation
        .iter()
        .map(|c| (c + 1).to_string())
        .collect();
    writeln!(out, "code: s={s} r={r} k={}", code.k()).unwrap();
    writeln!(
        out,
        "systematic form A G Π = [I_s | P], Π = ({}): OK",
        perm.join(" ")
    )
    .unwrap();
    writeln!(out, "recovery equations a_i = Σ_R x'_t for i=1..{s}: OK").unwrap();
    writeln!(out, "disjoint supports of v_1, v_2, v_3 for i=1..{s}: OK").unwrap();
    writeln!(
        out,
        "parity equations a_i + v_j = Σ_T x'_t for i=1..{s}: OK"
    )
    .unwrap();
    writeln!(out, "product identity for i=1..{s}: OK").unwrap();
    writeln!(out, "products x'_j x'_k belong to X² for i=1..{s}: OK").unwrap();
    writeln!(out, "a_i ∈ span(X²) for i=1..{s}: OK").unwrap();
    writeln!(
        out,
        "|X| = {}, |X²| = {}, dim span(X²) = {}",
        w.x_set.len(),
        w.x_square.len(),
        w.span_dimension
    )
    .unwrap();
    writeln!(
        out,
        "s = {s} ≤ dim span(X²) = {} ≤ r(r-1)/2 = {}: OK",
        w.span_dimension,
        r * r.saturating_sub(1) / 2
    )
    .unwrap();
    Ok(out)
}

struct EmulateArgs<'a> {
    input: &'a Path,
    parts: usize,
    partlen: usize,
    index: usize,
    seed: u64,
    cert: Option<&'a Path>,
    transcript: Option<&'a Path>,
    db: Option<&'a Path>,
}

fn load_database(path: &Path, parts: usize, partlen: usize) -> Result<Database, Failure> {
    let text = read_file(path)?;
    let line = text
        .strip_suffix('\n')
        .ok_or_else(|| usage(format!("{}: missing final newline", path.display())))?;
    let bits: BitVector = line
        .parse()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if bits.len() != parts * partlen {
        return Err(usage(format!(
            "{}: expected {} bits, found {}",
            path.display(),
            parts * partlen,
            bits.len()
        )));
    }
    Database::from_flat(&bits, partlen).map_err(usage)
}

fn cmd_emulate(args: EmulateArgs<'_>) -> Outcome {
    let code = load_code(args.input, args.cert, None)?;
    if args.parts != code.dimension() {
        return Err(usage(format!(
            "--parts {} does not match code dimension {}",
            args.parts,
            code.dimension()
        )));
    }
    if args.partlen == 0 {
        return Err(usage("--partlen must be positive"));
    }
    let db = match args.db {
        Some(path) => load_database(path, args.parts, args.partlen)?,
        None => {
            // a separate stream so the database and the queries are unrelated
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            rng.set_stream(1);
            Database::random(args.parts, args.partlen, &mut rng).map_err(usage)?
        }
    };
    let storage = encode_database(&db, &code).map_err(usage)?;
    let transcript =
        run_seeded_session(&db, &storage, &code, args.index, args.seed).map_err(usage)?;
    let text = transcript.to_text();
    if let Some(path) = args.transcript {
        write_file(path, &text)?;
    }
    let out = format!("{text}{}\n", overhead_report(&code, args.partlen));
    if transcript.is_correct() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Negative(
            "reconstructed bit differs from the database".into(),
        ))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { k, s, out } => cmd_construct(k, s, &out),
        Command::Verify { k, input, cert } => cmd_verify(k, &input, cert.as_deref()),
        Command::Rho { k, s } => cmd_rho(k, s),
        Command::Bound { s, r } => cmd_bound(s, r),
        Command::Search { k, s, rmax, jobs } => cmd_search(k, s, rmax, jobs),
        Command::Witness { input, cert } => cmd_witness(&input, cert.as_deref()),
        Command::Emulate {
            input,
            parts,
            partlen,
            index,
            seed,
            cert,
            transcript,
            db,
        } => cmd_emulate(EmulateArgs {
            input: &input,
            parts,
            partlen,
            index,
            seed,
            cert: cert.as_deref(),
            transcript: transcript.as_deref(),
            db: db.as_deref(),
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(message)) => {
            println!("{message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
