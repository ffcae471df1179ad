//! Brute-force search for the minimal redundancy of a `k`-server PIR code.
//!
//! Every PIR code has a systematic generator `[I_s | P]` with the same
//! parameters, so only those are searched. Reordering the columns of `P`
//! permutes recovery sets without changing property `P_k`, so `P` is
//! enumerated as a non-decreasing sequence of column values. Two further
//! cuts are exact for a search that tries `r = 0, 1, 2, ...` in turn:
//!
//! - a zero column of `P` never helps, since dropping it leaves a code with
//!   redundancy `r - 1` that already had property `P_k`;
//! - every row of `P` needs weight at least `k - 1`, since each of the `k`
//!   disjoint sets for `e_i` must contain a column with a one in row `i`.

use rayon::prelude::*;

use super::{CodeError, SearchLimits, Verifier};
use crate::gf2::{BitMatrix, BitVector};

/// Default cap on `s * r` for any redundancy level the oracle explores.
pub const DEFAULT_ORACLE_CELLS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest `s * r` (cells of `P`) the search will enumerate.
    pub max_cells: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_cells: DEFAULT_ORACLE_CELLS,
        }
    }
}

/// The minimal redundancy found and the first optimal generator in
/// enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOutcome {
    pub redundancy: usize,
    pub generator: BitMatrix,
}

/// [`min_redundancy_search_with`] under the default guard.
pub fn min_redundancy_search(
    s: usize,
    k: usize,
    r_max: usize,
) -> Result<Option<OracleOutcome>, CodeError> {
    min_redundancy_search_with(s, k, r_max, OracleLimits::default())
}

/// Smallest `r <= r_max` such that some `[I_s | P]` with `P` of size
/// `s x r` has property `P_k`, or `None` if there is none.
///
/// Each level `r` is refused with [`CodeError::OracleGuard`] before it is
/// searched if `s * r` exceeds the guard.
pub fn min_redundancy_search_with(
    s: usize,
    k: usize,
    r_max: usize,
    limits: OracleLimits,
) -> Result<Option<OracleOutcome>, CodeError> {
    if s == 0 {
        return Err(CodeError::InvalidDimension { s });
    }
    if k == 0 {
        return Err(CodeError::InvalidServerCount { k });
    }
    for r in 0..=r_max {
        if s * r > limits.max_cells {
            return Err(CodeError::OracleGuard {
                s,
                r,
                max_cells: limits.max_cells,
            });
        }
        if let Some(generator) = find_systematic(s, r, k)? {
            return Ok(Some(OracleOutcome {
                redundancy: r,
                generator,
            }));
        }
    }
    Ok(None)
}

/// First `[I_s | P]` in canonical enumeration order with property `P_k`,
/// `P` having `r` nonzero columns in non-decreasing order.
pub fn find_systematic(s: usize, r: usize, k: usize) -> Result<Option<BitMatrix>, CodeError> {
    assert!(s < 64, "column values are packed into u64");
    let verifier = Verifier::new(SearchLimits::new(r));
    let top: u64 = 1 << s;
    if r == 0 {
        let g = BitMatrix::identity(s);
        return Ok(verifier.verify_pk(&g, k)?.map(|_| g));
    }
    // Workers take one leading column value each; find_map_first keeps the
    // answer independent of scheduling.
    (1..top)
        .into_par_iter()
        .map(|first| {
            let mut cols = Vec::with_capacity(r);
            cols.push(first);
            search_tail(s, r, k, top, &verifier, &mut cols)
        })
        .find_map_first(|res| match res {
            Ok(None) => None,
            other => Some(other),
        })
        .unwrap_or(Ok(None))
}

fn search_tail(
    s: usize,
    r: usize,
    k: usize,
    top: u64,
    verifier: &Verifier,
    cols: &mut Vec<u64>,
) -> Result<Option<BitMatrix>, CodeError> {
    if cols.len() == r {
        if !rows_heavy_enough(s, k, cols) {
            return Ok(None);
        }
        let g = systematic_from_columns(s, cols);
        return Ok(verifier.verify_pk(&g, k)?.map(|_| g));
    }
    let from = *cols.last().expect("at least one column placed");
    for next in from..top {
        cols.push(next);
        let found = search_tail(s, r, k, top, verifier, cols)?;
        cols.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn rows_heavy_enough(s: usize, k: usize, cols: &[u64]) -> bool {
    let need = k.saturating_sub(1);
    (0..s).all(|i| cols.iter().filter(|&&c| (c >> i) & 1 == 1).count() >= need)
}

/// `[I_s | P]` where column `j` of `P` holds the low `s` bits of `cols[j]`,
/// bit `i` in row `i`.
pub fn systematic_from_columns(s: usize, cols: &[u64]) -> BitMatrix {
    let p = BitMatrix::from_columns(
        s,
        &cols
            .iter()
            .map(|&c| BitVector::from_u64(s, c))
            .collect::<Vec<_>>(),
    )
    .expect("columns have length s");
    BitMatrix::identity(s).hstack(&p).expect("same row count")
}
