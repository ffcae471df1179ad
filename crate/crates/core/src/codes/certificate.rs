use std::fmt;

use thiserror::Error;

use crate::gf2::{parse_err, text_lines, BitMatrix, BitVector, Gf2Error};

/// A set of generator column indices (0-based, sorted, no repeats).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecoverySet(Vec<usize>);

impl RecoverySet {
    pub fn new<I: IntoIterator<Item = usize>>(columns: I) -> Self {
        let mut v: Vec<usize> = columns.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn from_mask(mask: &BitVector) -> Self {
        Self(mask.iter_ones().collect())
    }

    pub fn columns(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, column: usize) -> bool {
        self.0.binary_search(&column).is_ok()
    }

    /// Sum of the indexed columns of `columns`.
    fn column_sum(&self, columns: &[BitVector], rows: usize) -> BitVector {
        let mut acc = BitVector::zeros(rows);
        for &c in &self.0 {
            acc.xor_assign(&columns[c]);
        }
        acc
    }
}

/// Renders 1-based, e.g. `{2,4}`.
impl fmt::Display for RecoverySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", c + 1)?;
        }
        f.write_str("}")
    }
}

/// For every message coordinate `i`, a list of pairwise-disjoint column
/// sets whose columns each add up to `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryCertificate {
    sets: Vec<Vec<RecoverySet>>,
}

/// Why a certificate was rejected. Coordinates and columns are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateDefect {
    #[error("certificate covers {found} coordinates, matrix has {expected}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("coordinate {coordinate}: {found} recovery sets, expected {expected}")]
    SetCount {
        coordinate: usize,
        expected: usize,
        found: usize,
    },
    #[error("coordinate {coordinate}, set {set}: column {column} out of range (n = {n})")]
    IndexOutOfRange {
        coordinate: usize,
        set: usize,
        column: usize,
        n: usize,
    },
    #[error("coordinate {coordinate}: column {column} used by more than one set")]
    Overlap { coordinate: usize, column: usize },
    #[error("coordinate {coordinate}, set {set}: columns do not add up to the unit vector")]
    WrongSum { coordinate: usize, set: usize },
}

impl RecoveryCertificate {
    pub fn new(sets: Vec<Vec<RecoverySet>>) -> Self {
        Self { sets }
    }

    /// Number of coordinates covered.
    pub fn dimension(&self) -> usize {
        self.sets.len()
    }

    /// Sets per coordinate, taken from the first coordinate.
    pub fn k(&self) -> usize {
        self.sets.first().map_or(0, Vec::len)
    }

    pub fn sets_for(&self, coordinate: usize) -> &[RecoverySet] {
        &self.sets[coordinate]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[RecoverySet]> {
        self.sets.iter().map(Vec::as_slice)
    }

    /// Keeps only the first `k` sets of every coordinate.
    pub fn truncated(&self, k: usize) -> Self {
        Self {
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().take(k).cloned().collect())
                .collect(),
        }
    }

    /// Total number of column indices listed.
    pub fn total_size(&self) -> usize {
        self.sets.iter().flatten().map(RecoverySet::len).sum()
    }

    /// One line per coordinate: `i: {a,b};{c};...`, all indices 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, sets) in self.sets.iter().enumerate() {
            out.push_str(&format!("{}: ", i + 1));
            for (n, set) in sets.iter().enumerate() {
                if n > 0 {
                    out.push(';');
                }
                out.push_str(&set.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, Gf2Error> {
        let mut sets = Vec::new();
        for (idx, line) in text_lines(text)?.into_iter().enumerate() {
            let lineno = idx + 1;
            let (label, body) = line
                .split_once(": ")
                .ok_or_else(|| parse_err(lineno, "expected \"i: {...};...\""))?;
            if label != lineno.to_string() {
                return Err(parse_err(
                    lineno,
                    format!("expected coordinate {lineno}, found {label:?}"),
                ));
            }
            let parsed = body
                .split(';')
                .map(|chunk| parse_set(chunk).map_err(|m| parse_err(lineno, m)))
                .collect::<Result<Vec<_>, _>>()?;
            sets.push(parsed);
        }
        Ok(Self { sets })
    }
}

fn parse_set(chunk: &str) -> Result<RecoverySet, String> {
    let inner = chunk
        .strip_prefix('{')
        .and_then(|c| c.strip_suffix('}'))
        .ok_or_else(|| format!("malformed set {chunk:?}"))?;
    if inner.is_empty() {
        return Ok(RecoverySet::new([]));
    }
    let mut cols = Vec::new();
    for item in inner.split(',') {
        if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed index {item:?}"));
        }
        let idx: usize = item.parse().map_err(|e| format!("{item:?}: {e}"))?;
        if idx == 0 {
            return Err("indices are 1-based".into());
        }
        cols.push(idx - 1);
    }
    let set = RecoverySet::new(cols.iter().copied());
    if set.len() != cols.len() {
        return Err(format!("repeated index in {chunk:?}"));
    }
    Ok(set)
}

/// Validates `cert` against `g` without searching: every coordinate must
/// carry exactly `k` pairwise-disjoint sets, each summing to `e_i`.
///
/// Runs in time linear in the certificate size times `s`.
pub fn diagnose_certificate(
    g: &BitMatrix,
    cert: &RecoveryCertificate,
    k: usize,
) -> Result<(), CertificateDefect> {
    let s = g.rows();
    let n = g.cols();
    if cert.dimension() != s {
        return Err(CertificateDefect::CoordinateCount {
            expected: s,
            found: cert.dimension(),
        });
    }
    // Range check first so column extraction never sees a bad index.
    for (i, sets) in cert.iter().enumerate() {
        if sets.len() != k {
            return Err(CertificateDefect::SetCount {
                coordinate: i,
                expected: k,
                found: sets.len(),
            });
        }
        for (j, set) in sets.iter().enumerate() {
            if let Some(&column) = set.columns().iter().find(|&&c| c >= n) {
                return Err(CertificateDefect::IndexOutOfRange {
                    coordinate: i,
                    set: j,
                    column,
                    n,
                });
            }
        }
    }

    let columns = g.columns();
    // owner[c] == i + 1 marks column c as taken while checking coordinate i
    let mut owner = vec![0usize; n];
    for (i, sets) in cert.iter().enumerate() {
        for (j, set) in sets.iter().enumerate() {
            for &c in set.columns() {
                if owner[c] == i + 1 {
                    return Err(CertificateDefect::Overlap {
                        coordinate: i,
                        column: c,
                    });
                }
                owner[c] = i + 1;
            }
            let sum = set.column_sum(&columns, s);
            if sum.weight() != 1 || !sum.get(i) {
                return Err(CertificateDefect::WrongSum {
                    coordinate: i,
                    set: j,
                });
            }
        }
    }
    Ok(())
}

/// Boolean form of [`diagnose_certificate`].
pub fn check_certificate(g: &BitMatrix, cert: &RecoveryCertificate, k: usize) -> bool {
    diagnose_certificate(g, cert, k).is_ok()
}
