//! In-process emulation of coded-storage private information retrieval.
//!
//! A database of `s` parts is encoded with the generator of a `k`-server
//! PIR code and spread over `n = s + r` servers, one coded part each. To
//! read one bit the client splits the unit query `e_offset` into `k`
//! additive shares and sends share `j` to every server of the `j`-th
//! recovery set of the target part; the remaining servers get independent
//! uniform dummy queries. Each server's view is a single uniformly
//! distributed vector, and the servers together store `n / s` times the
//! database instead of `k` times.

mod report;
mod session;
mod storage;

pub use report::{overhead_report, OverheadReport};
pub use session::{
    make_queries, run_seeded_session, run_session, sample_queries, Server, ServerExchange,
    ServerRole, SessionTranscript,
};
pub use storage::{encode_database, CodedStorage, Database};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmulatorError {
    #[error("database must have at least one part of at least one bit")]
    EmptyDatabase,
    #[error("parts must share one length: expected {expected}, found {found}")]
    RaggedParts { expected: usize, found: usize },
    #[error("database has {parts} parts but the code has dimension {dimension}")]
    DimensionMismatch { parts: usize, dimension: usize },
    #[error("database, storage and code shapes disagree")]
    ShapeMismatch,
    #[error("index {index} out of range (size {total})")]
    IndexOutOfRange { index: usize, total: usize },
    #[error("the additive query scheme needs k >= 2, got {k}")]
    TooFewServers { k: usize },
    #[error("randomness has the wrong shape: expected {expected}, found {found}")]
    RandomnessShape { expected: usize, found: usize },
    #[error("code has no recovery certificate")]
    MissingCertificate,
}
