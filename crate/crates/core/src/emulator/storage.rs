use rand::Rng;

use super::EmulatorError;
use crate::codes::PirCode;
use crate::gf2::BitVector;

/// A database of `s * L` bits split into `s` parts of `L` bits.
/// Global bit `g` is bit `g mod L` of part `g / L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    part_len: usize,
    parts: Vec<BitVector>,
}

impl Database {
    pub fn new(parts: Vec<BitVector>) -> Result<Self, EmulatorError> {
        let part_len = parts.first().map_or(0, BitVector::len);
        if parts.is_empty() || part_len == 0 {
            return Err(EmulatorError::EmptyDatabase);
        }
        if let Some(bad) = parts.iter().find(|p| p.len() != part_len) {
            return Err(EmulatorError::RaggedParts {
                expected: part_len,
                found: bad.len(),
            });
        }
        Ok(Self { part_len, parts })
    }

    /// Splits a flat bit vector of length `s * part_len` into parts.
    pub fn from_flat(bits: &BitVector, part_len: usize) -> Result<Self, EmulatorError> {
        if part_len == 0 || bits.is_empty() || !bits.len().is_multiple_of(part_len) {
            return Err(EmulatorError::RaggedParts {
                expected: part_len,
                found: bits.len(),
            });
        }
        let parts = (0..bits.len() / part_len)
            .map(|t| {
                BitVector::from_bits(
                    &(0..part_len)
                        .map(|o| bits.get(t * part_len + o))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        Self::new(parts)
    }

    pub fn zeros(parts: usize, part_len: usize) -> Result<Self, EmulatorError> {
        Self::new(vec![BitVector::zeros(part_len); parts])
    }

    pub fn random<R: Rng + ?Sized>(
        parts: usize,
        part_len: usize,
        rng: &mut R,
    ) -> Result<Self, EmulatorError> {
        Self::new(
            (0..parts)
                .map(|_| BitVector::random(part_len, rng))
                .collect(),
        )
    }

    pub fn parts(&self) -> usize {
        self.parts.len()
    }

    pub fn part_len(&self) -> usize {
        self.part_len
    }

    pub fn part(&self, t: usize) -> &BitVector {
        &self.parts[t]
    }

    pub fn total_bits(&self) -> usize {
        self.parts.len() * self.part_len
    }

    /// Maps a global bit index to `(part, offset)`.
    pub fn locate(&self, global_index: usize) -> Result<(usize, usize), EmulatorError> {
        if global_index >= self.total_bits() {
            return Err(EmulatorError::IndexOutOfRange {
                index: global_index,
                total: self.total_bits(),
            });
        }
        Ok((global_index / self.part_len, global_index % self.part_len))
    }

    pub fn bit(&self, global_index: usize) -> Result<bool, EmulatorError> {
        let (t, o) = self.locate(global_index)?;
        Ok(self.parts[t].get(o))
    }

    /// Componentwise XOR of two databases of the same shape.
    pub fn xor(&self, other: &Self) -> Result<Self, EmulatorError> {
        if self.parts() != other.parts() || self.part_len != other.part_len {
            return Err(EmulatorError::ShapeMismatch);
        }
        Self::new(
            self.parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| {
                    let mut c = a.clone();
                    c.xor_assign(b);
                    c
                })
                .collect(),
        )
    }
}

/// What the `n` servers hold: coded part `m` is the XOR of the database
/// parts `t` with `G[t][m] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodedStorage {
    part_len: usize,
    coded_parts: Vec<BitVector>,
}

impl CodedStorage {
    pub fn servers(&self) -> usize {
        self.coded_parts.len()
    }

    pub fn part_len(&self) -> usize {
        self.part_len
    }

    pub fn coded_part(&self, m: usize) -> &BitVector {
        &self.coded_parts[m]
    }

    pub fn coded_parts(&self) -> &[BitVector] {
        &self.coded_parts
    }

    pub fn total_bits(&self) -> usize {
        self.coded_parts.len() * self.part_len
    }
}

/// Encodes `db` with the generator of `code`.
pub fn encode_database(db: &Database, code: &PirCode) -> Result<CodedStorage, EmulatorError> {
    let g = code.generator();
    if db.parts() != g.rows() {
        return Err(EmulatorError::DimensionMismatch {
            parts: db.parts(),
            dimension: g.rows(),
        });
    }
    let mut coded_parts = vec![BitVector::zeros(db.part_len()); g.cols()];
    for t in 0..g.rows() {
        for m in g.row(t).iter_ones() {
            coded_parts[m].xor_assign(db.part(t));
        }
    }
    Ok(CodedStorage {
        part_len: db.part_len(),
        coded_parts,
    })
}
