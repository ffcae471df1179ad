//! Exact decision of property `P_k`.
//!
//! The columns summing to `e_i` are the supports of the solutions of
//! `G z = e_i`, an affine space of dimension `n - rank(G)`. All `2^(n-rank)`
//! solutions are enumerated and a depth-first set packing looks for `k`
//! pairwise-disjoint ones. Candidates are tried smallest first, and failed
//! packing states are memoized so that permutations of the same partial
//! packing are explored once.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::{CodeError, RecoveryCertificate, RecoverySet};
use crate::gf2::{BitMatrix, BitVector, RowEchelon};

/// Environment variable overriding [`SearchLimits::max_redundancy`].
pub const SEARCH_GUARD_ENV: &str = "PIRKIT_SEARCH_GUARD";

/// Default bound on the solution-space dimension the exact search accepts.
pub const DEFAULT_MAX_REDUNDANCY: usize = 20;

// The enumerator counts solutions in a u64.
const HARD_MAX_REDUNDANCY: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `n - rank(G)` for which the `2^(n-rank)` solutions are
    /// enumerated. Larger instances are refused rather than approximated.
    pub max_redundancy: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_redundancy: DEFAULT_MAX_REDUNDANCY,
        }
    }
}

impl SearchLimits {
    pub fn new(max_redundancy: usize) -> Self {
        Self { max_redundancy }
    }

    /// Reads `PIRKIT_SEARCH_GUARD` if set, else the default.
    pub fn from_env() -> Result<Self, CodeError> {
        match std::env::var(SEARCH_GUARD_ENV) {
            Ok(value) => Self::parse_guard(&value),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse_guard(value: &str) -> Result<Self, CodeError> {
        match value.trim().parse::<usize>() {
            Ok(v) if v <= HARD_MAX_REDUNDANCY => Ok(Self::new(v)),
            _ => Err(CodeError::InvalidGuard {
                value: value.to_string(),
            }),
        }
    }
}

/// Exact `P_k` verifier with a fixed enumeration limit.
#[derive(Clone, Copy, Debug, Default)]
pub struct Verifier {
    limits: SearchLimits,
}

impl Verifier {
    pub fn new(limits: SearchLimits) -> Self {
        Self { limits }
    }

    pub fn limits(&self) -> SearchLimits {
        self.limits
    }

    fn echelon(&self, g: &BitMatrix) -> Result<RowEchelon, CodeError> {
        let ech = RowEchelon::new(g);
        let dim = g.cols() - ech.rank();
        if dim > self.limits.max_redundancy.min(HARD_MAX_REDUNDANCY) {
            return Err(CodeError::TooLarge {
                redundancy: dim,
                limit: self.limits.max_redundancy,
            });
        }
        Ok(ech)
    }

    /// All column sets adding up to `e_i` (0-based `i`), as column masks in
    /// search order: by size, then lexicographically. `None` when `e_i` is
    /// outside the column space.
    fn candidates(
        ech: &RowEchelon,
        rows: usize,
        i: usize,
    ) -> Result<Option<Vec<BitVector>>, CodeError> {
        let Some(sols) = ech.solve(&BitVector::unit(rows, i))? else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(1 << sols.dimension());
        sols.for_each(|z| out.push(z.clone()));
        out.sort_by_cached_key(|m| (m.weight(), LexKey(m.words().to_vec())));
        Ok(Some(out))
    }

    fn check_coordinate(g: &BitMatrix, i: usize) -> Result<(), CodeError> {
        if i >= g.rows() {
            return Err(CodeError::CoordinateOutOfRange {
                coordinate: i,
                dimension: g.rows(),
            });
        }
        Ok(())
    }

    /// Every column set whose columns add up to `e_i`: `2^(n - rank)` sets
    /// for a consistent system. `i` is 0-based.
    pub fn enumerate_recovery_sets(
        &self,
        g: &BitMatrix,
        i: usize,
    ) -> Result<Vec<RecoverySet>, CodeError> {
        Self::check_coordinate(g, i)?;
        let ech = self.echelon(g)?;
        let cands =
            Self::candidates(&ech, g.rows(), i)?.ok_or(CodeError::NoSolution { coordinate: i })?;
        Ok(cands.iter().map(RecoverySet::from_mask).collect())
    }

    /// `k` pairwise-disjoint recovery sets for `e_i`, or `None` if no such
    /// family exists.
    pub fn find_disjoint_recovery_sets(
        &self,
        g: &BitMatrix,
        i: usize,
        k: usize,
    ) -> Result<Option<Vec<RecoverySet>>, CodeError> {
        if k == 0 {
            return Err(CodeError::InvalidServerCount { k });
        }
        Self::check_coordinate(g, i)?;
        let ech = self.echelon(g)?;
        Self::pack_coordinate(&ech, g, i, k)
    }

    fn pack_coordinate(
        ech: &RowEchelon,
        g: &BitMatrix,
        i: usize,
        k: usize,
    ) -> Result<Option<Vec<RecoverySet>>, CodeError> {
        let Some(cands) = Self::candidates(ech, g.rows(), i)? else {
            return Ok(None);
        };
        Ok(Packer::new(&cands, k, g.cols()).run().map(|picked| {
            picked
                .iter()
                .map(|&c| RecoverySet::from_mask(&cands[c]))
                .collect()
        }))
    }

    /// Decides property `P_k` exactly, returning a certificate when it holds.
    pub fn verify_pk(
        &self,
        g: &BitMatrix,
        k: usize,
    ) -> Result<Option<RecoveryCertificate>, CodeError> {
        if k == 0 {
            return Err(CodeError::InvalidServerCount { k });
        }
        let ech = self.echelon(g)?;
        if ech.rank() < g.rows() {
            // some e_i lies outside the column space
            return Ok(None);
        }
        let mut sets = Vec::with_capacity(g.rows());
        for i in 0..g.rows() {
            match Self::pack_coordinate(&ech, g, i, k)? {
                Some(found) => sets.push(found),
                None => return Ok(None),
            }
        }
        Ok(Some(RecoveryCertificate::new(sets)))
    }
}

/// Orders equal-weight masks by their sorted index lists: the lowest
/// differing column decides, and the mask holding it comes first.
#[derive(PartialEq, Eq)]
struct LexKey(Vec<u64>);

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&a, &b) in self.0.iter().zip(&other.0) {
            let diff = a ^ b;
            if diff != 0 {
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Depth-first search for `k` pairwise-disjoint masks among `cands`, which
/// must be sorted by weight.
struct Packer<'a> {
    cands: &'a [BitVector],
    k: usize,
    n: usize,
    chosen: Vec<usize>,
    // (columns used, sets chosen) -> lowest start index already refuted
    refuted: HashMap<(BitVector, usize), usize>,
}

impl<'a> Packer<'a> {
    fn new(cands: &'a [BitVector], k: usize, n: usize) -> Self {
        Self {
            cands,
            k,
            n,
            chosen: Vec::with_capacity(k),
            refuted: HashMap::new(),
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let used = BitVector::zeros(self.n);
        if self.dfs(0, &used, 0) {
            Some(self.chosen)
        } else {
            None
        }
    }

    fn dfs(&mut self, start: usize, used: &BitVector, used_count: usize) -> bool {
        let depth = self.chosen.len();
        if depth == self.k {
            return true;
        }
        let key = (used.clone(), depth);
        if self.refuted.get(&key).is_some_and(|&from| start >= from) {
            return false;
        }
        let need = self.k - depth;
        let free = self.n - used_count;
        for idx in start..self.cands.len() {
            if self.cands.len() - idx < need {
                break;
            }
            let cand = &self.cands[idx];
            let size = cand.weight();
            // candidates only grow from here on
            if size * need > free {
                break;
            }
            if !cand.is_disjoint(used) {
                continue;
            }
            let mut next = used.clone();
            next.or_assign(cand);
            self.chosen.push(idx);
            if self.dfs(idx + 1, &next, used_count + size) {
                return true;
            }
            self.chosen.pop();
        }
        let entry = self.refuted.entry(key).or_insert(start);
        *entry = (*entry).min(start);
        false
    }
}

/// [`Verifier::enumerate_recovery_sets`] with default limits.
pub fn enumerate_recovery_sets(g: &BitMatrix, i: usize) -> Result<Vec<RecoverySet>, CodeError> {
    Verifier::default().enumerate_recovery_sets(g, i)
}

/// [`Verifier::find_disjoint_recovery_sets`] with default limits.
pub fn find_disjoint_recovery_sets(
    g: &BitMatrix,
    i: usize,
    k: usize,
) -> Result<Option<Vec<RecoverySet>>, CodeError> {
    Verifier::default().find_disjoint_recovery_sets(g, i, k)
}

/// [`Verifier::verify_pk`] with default limits.
pub fn verify_pk(g: &BitMatrix, k: usize) -> Result<Option<RecoveryCertificate>, CodeError> {
    Verifier::default().verify_pk(g, k)
}
