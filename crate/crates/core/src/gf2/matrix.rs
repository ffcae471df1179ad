use std::fmt;
use std::str::FromStr;

use super::{BitVector, Gf2Error, XorBasis};

/// An `rows x cols` matrix over GF(2), stored row-major.
///
/// The shape is fixed at construction; entries may be edited in place.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self {
            rows: size,
            cols: size,
            data: (0..size).map(|i| BitVector::unit(size, i)).collect(),
        }
    }

    /// Builds a matrix from its rows. All rows must share one length; an
    /// empty row list gives a `0 x cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Gf2Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.iter_ones() {
                m.data[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row].set(col, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    /// Column `j` as a vector of length `rows`.
    pub fn column(&self, j: usize) -> BitVector {
        assert!(
            j < self.cols,
            "column {j} out of range (cols={})",
            self.cols
        );
        BitVector::from_bits(&self.data.iter().map(|r| r.get(j)).collect::<Vec<_>>())
    }

    /// All columns, computed in one pass over the set bits.
    pub fn columns(&self) -> Vec<BitVector> {
        let mut cols = vec![BitVector::zeros(self.rows); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for j in row.iter_ones() {
                cols[j].set(i, true);
            }
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            data: self.columns(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut row = BitVector::zeros(cols);
                for j in a.iter_ones() {
                    row.set(j, true);
                }
                for j in b.iter_ones() {
                    row.set(self.cols + j, true);
                }
                row
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BitVector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vector(&self, v: &BitVector) -> Result<BitVector, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVector::from_bits(
            &self.data.iter().map(|row| row.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// Reorders columns so that column `j` of the result is column
    /// `permutation[j]` of `self`.
    pub fn permute_columns(&self, permutation: &[usize]) -> Result<Self, Gf2Error> {
        if !is_permutation(permutation, self.cols) {
            return Err(Gf2Error::InvalidPermutation { len: self.cols });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out = BitVector::zeros(self.cols);
                for (j, &src) in permutation.iter().enumerate() {
                    if row.get(src) {
                        out.set(j, true);
                    }
                }
                out
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Sub-matrix made of the listed columns, in order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        let data = self
            .data
            .iter()
            .map(|row| {
                BitVector::from_bits(&columns.iter().map(|&c| row.get(c)).collect::<Vec<_>>())
            })
            .collect();
        Self {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::new(self.cols);
        for row in &self.data {
            basis.insert(row.clone());
        }
        basis.dimension()
    }

    /// Serializes in the line-oriented matrix format: a `"s n"` header,
    /// then one line of `0`/`1` characters per row.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity((self.cols + 1) * (self.rows + 1));
        out.push_str(&format!("{} {}\n", self.rows, self.cols));
        for row in &self.data {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the matrix format produced by [`BitMatrix::to_text`].
    ///
    /// The header must hold two positive decimal integers separated by one
    /// space, every row must have exactly `n` characters from `{0,1}`, no
    /// line may carry trailing whitespace, and the text must end with a
    /// newline.
    pub fn from_text(text: &str) -> Result<Self, Gf2Error> {
        parse_matrix_lines(&mut text_lines(text)?.into_iter().enumerate())
    }
}

/// Splits newline-terminated text into lines, rejecting a missing final
/// newline and carriage returns.
pub(crate) fn text_lines(text: &str) -> Result<Vec<&str>, Gf2Error> {
    if text.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    let Some(body) = text.strip_suffix('\n') else {
        return Err(parse_err(
            text.lines().count(),
            "input must be newline-terminated",
        ));
    };
    Ok(body.split('\n').collect())
}

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Gf2Error {
    Gf2Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a matrix from `(index, line)` pairs; the line numbers in errors
/// are `index + 1`. Consumes the whole iterator.
pub(crate) fn parse_matrix_lines<'a, I>(lines: &mut I) -> Result<BitMatrix, Gf2Error>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (hidx, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let hline = hidx + 1;
    let mut fields = header.split(' ');
    let (Some(s), Some(n), None) = (fields.next(), fields.next(), fields.next()) else {
        return Err(parse_err(hline, "header must be \"s n\""));
    };
    let parse_dim = |field: &str| -> Result<usize, Gf2Error> {
        if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(hline, format!("invalid dimension {field:?}")));
        }
        match field.parse::<usize>() {
            Ok(0) => Err(parse_err(hline, "dimensions must be positive")),
            Ok(v) => Ok(v),
            Err(e) => Err(parse_err(hline, e.to_string())),
        }
    };
    let rows = parse_dim(s)?;
    let cols = parse_dim(n)?;

    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline + r + 1, format!("expected {rows} rows, found {r}")))?;
        if line.len() != cols {
            return Err(parse_err(
                idx + 1,
                format!("expected {cols} characters, found {}", line.len()),
            ));
        }
        let row = line.parse::<BitVector>().map_err(|e| match e {
            Gf2Error::Parse { message, .. } => parse_err(idx + 1, message),
            other => other,
        })?;
        data.push(row);
    }
    if let Some((idx, _)) = lines.next() {
        return Err(parse_err(idx + 1, "unexpected trailing line"));
    }
    Ok(BitMatrix { rows, cols, data })
}

pub(crate) fn is_permutation(permutation: &[usize], len: usize) -> bool {
    if permutation.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    for &p in permutation {
        if p >= len || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for BitMatrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_text(s)
    }
}
