//! Binary `k`-server PIR codes.
//!
//! A generator `G` (`s x n`) has property `P_k` when, for every message
//! coordinate `i`, `k` pairwise-disjoint sets of its columns each add up to
//! the unit vector `e_i`. This module decides that property exactly, builds
//! redundancy-optimal codes for `k` in `{2, 3, 4}`, evaluates the exact
//! optimal redundancies and cross-checks them by brute force, and replays
//! the `r (r - 1) >= 2 s` lower bound on concrete codes.

mod bounds;
mod certificate;
mod construct;
mod oracle;
mod recovery;
mod witness;

pub use bounds::{lower_bound_ok, rho, rho3};
pub use certificate::{
    check_certificate, diagnose_certificate, CertificateDefect, RecoveryCertificate, RecoverySet,
};
pub use construct::{construct, construct_pir2, construct_pir3, construct_pir4, weight_two_pairs};
pub use oracle::{
    find_systematic, min_redundancy_search, min_redundancy_search_with, systematic_from_columns,
    OracleLimits, OracleOutcome, DEFAULT_ORACLE_CELLS,
};
pub use recovery::{
    enumerate_recovery_sets, find_disjoint_recovery_sets, verify_pk, SearchLimits, Verifier,
    DEFAULT_MAX_REDUNDANCY, SEARCH_GUARD_ENV,
};
pub use witness::{build_proof_witness, CoordinateWitness, ProofStep, ProofWitness};

use thiserror::Error;

use crate::gf2::{parse_err, parse_matrix_lines, text_lines, BitMatrix, Gf2Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("coordinate {coordinate} out of range for dimension {dimension}")]
    CoordinateOutOfRange { coordinate: usize, dimension: usize },
    #[error("unit vector e_{} is not a combination of the columns", coordinate + 1)]
    NoSolution { coordinate: usize },
    #[error("instance too large for exact search: redundancy {redundancy} exceeds limit {limit}")]
    TooLarge { redundancy: usize, limit: usize },
    #[error("invalid search guard {value:?}: expected an integer in 0..=63")]
    InvalidGuard { value: String },
    #[error("server count must be positive, got {k}")]
    InvalidServerCount { k: usize },
    #[error("dimension must be positive, got {s}")]
    InvalidDimension { s: usize },
    #[error("no construction or exact redundancy known for k = {k}; supported k: 2, 3, 4")]
    UnsupportedK { k: usize },
    #[error("oracle guard exceeded: s * r = {s} * {r} > {max_cells}")]
    OracleGuard {
        s: usize,
        r: usize,
        max_cells: usize,
    },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(#[from] CertificateDefect),
    #[error("matrix has rank {rank} but {rows} rows; a generator needs full row rank")]
    NotFullRank { rank: usize, rows: usize },
    #[error("code has no recovery certificate")]
    MissingCertificate,
    #[error("proof step failed: {step}{}", coordinate.map(|c| format!(" at coordinate {}", c + 1)).unwrap_or_default())]
    ProofStep {
        step: ProofStep,
        coordinate: Option<usize>,
    },
}

/// A generator matrix with its server count and, optionally, a recovery
/// certificate that has been checked against it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PirCode {
    generator: BitMatrix,
    k: usize,
    certificate: Option<RecoveryCertificate>,
}

impl PirCode {
    /// Checks the certificate if one is given (a valid certificate implies
    /// full row rank), otherwise checks the rank directly.
    pub fn new(
        generator: BitMatrix,
        k: usize,
        certificate: Option<RecoveryCertificate>,
    ) -> Result<Self, CodeError> {
        if k == 0 {
            return Err(CodeError::InvalidServerCount { k });
        }
        match &certificate {
            Some(cert) => diagnose_certificate(&generator, cert, k)?,
            None => {
                let rank = generator.rank();
                if rank < generator.rows() {
                    return Err(CodeError::NotFullRank {
                        rank,
                        rows: generator.rows(),
                    });
                }
            }
        }
        Ok(Self {
            generator,
            k,
            certificate,
        })
    }

    /// Skips validation; for tests that need to hand malformed codes to
    /// downstream checks.
    #[doc(hidden)]
    pub fn new_unchecked(
        generator: BitMatrix,
        k: usize,
        certificate: Option<RecoveryCertificate>,
    ) -> Self {
        Self {
            generator,
            k,
            certificate,
        }
    }

    /// Runs the exact verifier and attaches the certificate it finds.
    /// `Ok(None)` when the matrix lacks property `P_k`.
    pub fn verified(
        generator: BitMatrix,
        k: usize,
        verifier: &Verifier,
    ) -> Result<Option<Self>, CodeError> {
        Ok(verifier.verify_pk(&generator, k)?.map(|cert| Self {
            generator,
            k,
            certificate: Some(cert),
        }))
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn certificate(&self) -> Option<&RecoveryCertificate> {
        self.certificate.as_ref()
    }

    /// Replaces the certificate after validating it.
    pub fn with_certificate(self, cert: RecoveryCertificate) -> Result<Self, CodeError> {
        Self::new(self.generator, self.k, Some(cert))
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn redundancy(&self) -> usize {
        self.length() - self.dimension()
    }

    /// `"k <value>"` followed by the matrix text format.
    pub fn to_text(&self) -> String {
        format!("k {}\n{}", self.k, self.generator.to_text())
    }
}

/// Parses a code file: an optional `"k <value>"` header, then a matrix.
/// Returns the header value, if present, with the matrix.
pub fn parse_code_text(text: &str) -> Result<(Option<usize>, BitMatrix), Gf2Error> {
    let lines = text_lines(text)?;
    let mut iter = lines.into_iter().enumerate().peekable();
    let mut k = None;
    if let Some((_, first)) = iter.peek() {
        if let Some(value) = first.strip_prefix("k ") {
            if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(1, format!("invalid server count {value:?}")));
            }
            k = Some(
                value
                    .parse()
                    .map_err(|e| parse_err(1, format!("invalid server count: {e}")))?,
            );
            iter.next();
        }
    }
    let matrix = parse_matrix_lines(&mut iter)?;
    Ok((k, matrix))
}
