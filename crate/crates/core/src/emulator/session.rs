use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CodedStorage, Database, EmulatorError};
use crate::codes::PirCode;
use crate::gf2::BitVector;

/// The `k` queries of the additive scheme: `randomness` supplies
/// `q_1, ..., q_{k-1}` and `q_k = q_1 + ... + q_{k-1} + e_offset`, so the
/// queries always add up to `e_offset`.
pub fn make_queries(
    part_len: usize,
    offset: usize,
    k: usize,
    randomness: &[BitVector],
) -> Result<Vec<BitVector>, EmulatorError> {
    if k < 2 {
        return Err(EmulatorError::TooFewServers { k });
    }
    if offset >= part_len {
        return Err(EmulatorError::IndexOutOfRange {
            index: offset,
            total: part_len,
        });
    }
    if randomness.len() != k - 1 {
        return Err(EmulatorError::RandomnessShape {
            expected: k - 1,
            found: randomness.len(),
        });
    }
    if let Some(bad) = randomness.iter().find(|q| q.len() != part_len) {
        return Err(EmulatorError::RandomnessShape {
            expected: part_len,
            found: bad.len(),
        });
    }
    let mut last = BitVector::unit(part_len, offset);
    for q in randomness {
        last.xor_assign(q);
    }
    let mut queries = randomness.to_vec();
    queries.push(last);
    Ok(queries)
}

/// [`make_queries`] with `q_1, ..., q_{k-1}` drawn uniformly from `rng`.
pub fn sample_queries<R: Rng + ?Sized>(
    part_len: usize,
    offset: usize,
    k: usize,
    rng: &mut R,
) -> Result<Vec<BitVector>, EmulatorError> {
    let randomness: Vec<BitVector> = (0..k.saturating_sub(1))
        .map(|_| BitVector::random(part_len, rng))
        .collect();
    make_queries(part_len, offset, k, &randomness)
}

/// One storage node. It sees its coded part and the query sent to it and
/// nothing else.
#[derive(Clone, Debug)]
pub struct Server {
    coded_part: BitVector,
}

impl Server {
    pub fn new(coded_part: BitVector) -> Self {
        Self { coded_part }
    }

    /// Inner product of the query with the stored part.
    pub fn answer(&self, query: &BitVector) -> bool {
        self.coded_part.dot(query)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ServerRole {
    /// Member of the `j`-th recovery set (0-based) of the target part.
    Recovery(usize),
    /// Outside every recovery set; receives a fresh uniform query whose
    /// answer is discarded.
    Dummy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ServerExchange {
    pub server: usize,
    pub role: ServerRole,
    pub query: BitVector,
    pub answer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionTranscript {
    pub parts: usize,
    pub part_len: usize,
    pub servers: usize,
    pub k: usize,
    pub global_index: usize,
    pub part: usize,
    pub offset: usize,
    pub seed: Option<u64>,
    /// `q_1, ..., q_k` before they are assigned to servers.
    pub designated_queries: Vec<BitVector>,
    pub exchanges: Vec<ServerExchange>,
    /// Per recovery set, the XOR of its servers' answers.
    pub partial_results: Vec<bool>,
    pub result: bool,
    pub expected: bool,
}

impl SessionTranscript {
    pub fn is_correct(&self) -> bool {
        self.result == self.expected
    }

    /// Line-oriented dump: a `session ...` header, one line per server
    /// (1-based server and set numbers), and a `result=... expected=...`
    /// footer.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let seed = self
            .seed
            .map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(
            out,
            "session s={} L={} n={} k={} index={} seed={}",
            self.parts, self.part_len, self.servers, self.k, self.global_index, seed
        )
        .unwrap();
        for ex in &self.exchanges {
            let role = match ex.role {
                ServerRole::Recovery(j) => (j + 1).to_string(),
                ServerRole::Dummy => "dummy".to_string(),
            };
            writeln!(
                out,
                "{} role={} query={} answer={}",
                ex.server + 1,
                role,
                ex.query,
                u8::from(ex.answer)
            )
            .unwrap();
        }
        writeln!(
            out,
            "result={} expected={}",
            u8::from(self.result),
            u8::from(self.expected)
        )
        .unwrap();
        out
    }
}

/// Privately retrieves bit `global_index` of `db` from the servers holding
/// `storage`.
///
/// Every server gets exactly one query: `q_j` if it belongs to the `j`-th
/// recovery set of the target part, a fresh uniform vector otherwise. The
/// client XORs the answers within each recovery set, which gives
/// `<q_j, part_t>`, and XORs those `k` values to get bit `offset` of
/// `part_t`. `db` itself is read only to fill in the `expected` field.
///
/// Randomness is drawn from `rng` in a fixed order: `q_1, ..., q_{k-1}`,
/// then dummy queries by increasing server index.
pub fn run_session<R: Rng + ?Sized>(
    db: &Database,
    storage: &CodedStorage,
    code: &PirCode,
    global_index: usize,
    rng: &mut R,
) -> Result<SessionTranscript, EmulatorError> {
    let cert = code
        .certificate()
        .ok_or(EmulatorError::MissingCertificate)?;
    let g = code.generator();
    if db.parts() != g.rows() {
        return Err(EmulatorError::DimensionMismatch {
            parts: db.parts(),
            dimension: g.rows(),
        });
    }
    if storage.servers() != g.cols() || storage.part_len() != db.part_len() {
        return Err(EmulatorError::ShapeMismatch);
    }
    let (part, offset) = db.locate(global_index)?;
    let k = code.k();
    let n = storage.servers();
    let part_len = db.part_len();

    let sets = cert.sets_for(part);
    let mut roles = vec![ServerRole::Dummy; n];
    for (j, set) in sets.iter().enumerate() {
        for &m in set.columns() {
            roles[m] = ServerRole::Recovery(j);
        }
    }

    let designated = sample_queries(part_len, offset, k, rng)?;
    let queries: Vec<BitVector> = roles
        .iter()
        .map(|role| match role {
            ServerRole::Recovery(j) => designated[*j].clone(),
            ServerRole::Dummy => BitVector::random(part_len, rng),
        })
        .collect();

    let servers: Vec<Server> = storage
        .coded_parts()
        .iter()
        .cloned()
        .map(Server::new)
        .collect();
    let answers: Vec<bool> = servers
        .par_iter()
        .zip(queries.par_iter())
        .map(|(server, q)| server.answer(q))
        .collect();

    let mut partial_results = vec![false; k];
    for (m, role) in roles.iter().enumerate() {
        if let ServerRole::Recovery(j) = role {
            partial_results[*j] ^= answers[m];
        }
    }
    let result = partial_results.iter().fold(false, |acc, &b| acc ^ b);

    let exchanges = queries
        .into_iter()
        .zip(answers)
        .zip(roles)
        .enumerate()
        .map(|(server, ((query, answer), role))| ServerExchange {
            server,
            role,
            query,
            answer,
        })
        .collect();

    Ok(SessionTranscript {
        parts: db.parts(),
        part_len,
        servers: n,
        k,
        global_index,
        part,
        offset,
        seed: None,
        designated_queries: designated,
        exchanges,
        partial_results,
        result,
        expected: db.bit(global_index)?,
    })
}

/// [`run_session`] driven by a ChaCha8 generator seeded with `seed`; the
/// seed is recorded in the transcript.
pub fn run_seeded_session(
    db: &Database,
    storage: &CodedStorage,
    code: &PirCode,
    global_index: usize,
    seed: u64,
) -> Result<SessionTranscript, EmulatorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = run_session(db, storage, code, global_index, &mut rng)?;
    transcript.seed = Some(seed);
    Ok(transcript)
}
