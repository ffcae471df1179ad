//! Redundancy-optimal constructions for two, three and four servers.
//!
//! Each constructor builds its certificate directly from the structure of
//! the code and validates it with [`check_certificate`] before returning,
//! so a construction that ever failed to have property `P_k` would panic
//! instead of being handed out.
//!
//! [`check_certificate`]: super::check_certificate

use super::{rho3, CodeError, PirCode, RecoveryCertificate, RecoverySet};
use crate::gf2::{BitMatrix, BitVector};

/// The first `s` position pairs `(a, b)`, `a < b < r`, in lexicographic
/// order, for `r = rho3(s)`. Row `t` of the 3-server parity block has ones
/// exactly at the two positions of pair `t`.
pub fn weight_two_pairs(s: usize) -> (usize, Vec<(usize, usize)>) {
    let r = rho3(s);
    let pairs = (0..r)
        .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
        .take(s)
        .collect::<Vec<_>>();
    debug_assert_eq!(pairs.len(), s);
    (r, pairs)
}

fn systematic_generator(
    s: usize,
    parity_cols: usize,
    rows: impl Fn(usize) -> Vec<usize>,
) -> BitMatrix {
    let n = s + parity_cols;
    let data = (0..s)
        .map(|i| {
            let mut row = BitVector::unit(n, i);
            for p in rows(i) {
                row.set(s + p, true);
            }
            row
        })
        .collect();
    BitMatrix::from_rows(n, data).expect("rows have length n")
}

fn certified(generator: BitMatrix, k: usize, sets: Vec<Vec<RecoverySet>>) -> PirCode {
    let cert = RecoveryCertificate::new(sets);
    match PirCode::new(generator, k, Some(cert)) {
        Ok(code) => code,
        Err(e) => panic!("{k}-server construction failed its own certificate: {e}"),
    }
}

/// `[I_s | 1]`: one all-ones parity column, redundancy 1.
pub fn construct_pir2(s: usize) -> PirCode {
    assert!(s >= 1, "dimension must be positive");
    let g = systematic_generator(s, 1, |_| vec![0]);
    let sets = (0..s)
        .map(|i| {
            let rest = (0..s).filter(|&j| j != i).chain([s]);
            vec![RecoverySet::new([i]), RecoverySet::new(rest)]
        })
        .collect();
    certified(g, 2, sets)
}

/// Rows of `[P]` grouped by parity position: `incident[c]` lists the rows
/// whose pair contains `c`.
fn incidence(r: usize, pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut incident = vec![Vec::new(); r];
    for (t, &(a, b)) in pairs.iter().enumerate() {
        incident[a].push(t);
        incident[b].push(t);
    }
    incident
}

/// Recovery sets of row `i` through parity position `c` of the weight-2
/// block: parity column `c` plus every other row that has a one at `c`.
fn through_parity(s: usize, i: usize, c: usize, incident: &[Vec<usize>]) -> RecoverySet {
    RecoverySet::new(
        incident[c]
            .iter()
            .copied()
            .filter(|&t| t != i)
            .chain([s + c]),
    )
}

/// `[I_s | P]` where the rows of `P` are distinct weight-2 vectors of length
/// `rho3(s)`. Redundancy is exactly `rho3(s)`.
///
/// For row `i` with ones at `a < b` the three recovery sets are `{i}`,
/// parity `a` with the other rows meeting `a`, and parity `b` with the other
/// rows meeting `b`. Distinct rows share at most one position, so the last
/// two sets never intersect.
pub fn construct_pir3(s: usize) -> PirCode {
    assert!(s >= 1, "dimension must be positive");
    let (r, pairs) = weight_two_pairs(s);
    let g = systematic_generator(s, r, |i| vec![pairs[i].0, pairs[i].1]);
    let incident = incidence(r, &pairs);
    let sets = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            vec![
                RecoverySet::new([i]),
                through_parity(s, i, a, &incident),
                through_parity(s, i, b, &incident),
            ]
        })
        .collect();
    certified(g, 3, sets)
}

/// `[I_s | P | 1]`: the 3-server code plus one all-ones column, so the
/// redundancy is `rho3(s) + 1`.
///
/// The fourth recovery set of row `i = {a, b}` is the all-ones column, every
/// parity column other than `a` and `b`, and every row whose pair avoids
/// both `a` and `b`. Row `t` is hit once by the ones column and once per
/// position of `t` outside `{a, b}`: odd for `i` and for the rows avoiding
/// `{a, b}`, even for the rest. Adding the identity columns of the avoiding
/// rows leaves `e_i`.
pub fn construct_pir4(s: usize) -> PirCode {
    assert!(s >= 1, "dimension must be positive");
    let (r, pairs) = weight_two_pairs(s);
    let g = systematic_generator(s, r + 1, |i| vec![pairs[i].0, pairs[i].1, r]);
    let incident = incidence(r, &pairs);
    let sets = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let avoiding = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(x, y))| x != a && x != b && y != a && y != b)
                .map(|(t, _)| t);
            let other_parity = (0..r).filter(|&c| c != a && c != b).map(|c| s + c);
            vec![
                RecoverySet::new([i]),
                through_parity(s, i, a, &incident),
                through_parity(s, i, b, &incident),
                RecoverySet::new(avoiding.chain(other_parity).chain([s + r])),
            ]
        })
        .collect();
    certified(g, 4, sets)
}

/// Dispatches to the optimal construction for `k` servers.
pub fn construct(k: usize, s: usize) -> Result<PirCode, CodeError> {
    if s == 0 {
        return Err(CodeError::InvalidDimension { s });
    }
    match k {
        2 => Ok(construct_pir2(s)),
        3 => Ok(construct_pir3(s)),
        4 => Ok(construct_pir4(s)),
        _ => Err(CodeError::UnsupportedK { k }),
    }
}
