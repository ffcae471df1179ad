use super::{BitMatrix, BitVector, Gf2Error};

/// Reduced row echelon form `reduced = transform * source` with the
/// transformation matrix kept alongside.
///
/// Pivots are chosen column by column from the lowest index, and within a
/// column from the lowest eligible row, so the result depends only on the
/// input.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    reduced: BitMatrix,
    transform: BitMatrix,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(source: &BitMatrix) -> Self {
        let rows = source.rows();
        let cols = source.cols();
        let mut red: Vec<BitVector> = source.row_vectors().to_vec();
        let mut tr: Vec<BitVector> = (0..rows).map(|i| BitVector::unit(rows, i)).collect();
        let mut pivots = Vec::new();

        for col in 0..cols {
            let rank = pivots.len();
            if rank == rows {
                break;
            }
            let Some(found) = (rank..rows).find(|&r| red[r].get(col)) else {
                continue;
            };
            red.swap(rank, found);
            tr.swap(rank, found);
            let (prow, ptr) = (red[rank].clone(), tr[rank].clone());
            for r in 0..rows {
                if r != rank && red[r].get(col) {
                    red[r].xor_assign(&prow);
                    tr[r].xor_assign(&ptr);
                }
            }
            pivots.push(col);
        }

        Self {
            reduced: BitMatrix::from_rows(cols, red).expect("row lengths preserved"),
            transform: BitMatrix::from_rows(rows, tr).expect("row lengths preserved"),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduced(&self) -> &BitMatrix {
        &self.reduced
    }

    /// Invertible matrix with `transform * source == reduced`.
    pub fn transform(&self) -> &BitMatrix {
        &self.transform
    }

    /// Pivot column of each nonzero row, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot columns, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.reduced.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.reduced.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// All solutions `z` of `source * z = target`, as one particular
    /// solution plus a kernel basis. `None` if the system is inconsistent.
    pub fn solve(&self, target: &BitVector) -> Result<Option<AffineSolutions>, Gf2Error> {
        let rows = self.reduced.rows();
        let cols = self.reduced.cols();
        if target.len() != rows {
            return Err(Gf2Error::DimensionMismatch {
                expected: rows,
                found: target.len(),
            });
        }
        let t = self.transform.mul_vector(target)?;
        if (self.rank()..rows).any(|r| t.get(r)) {
            return Ok(None);
        }
        let mut particular = BitVector::zeros(cols);
        for (r, &p) in self.pivots.iter().enumerate() {
            if t.get(r) {
                particular.set(p, true);
            }
        }
        let kernel = self
            .free_columns()
            .into_iter()
            .map(|f| {
                let mut z = BitVector::unit(cols, f);
                for (r, &p) in self.pivots.iter().enumerate() {
                    if self.reduced.get(r, f) {
                        z.set(p, true);
                    }
                }
                z
            })
            .collect();
        Ok(Some(AffineSolutions { particular, kernel }))
    }
}

/// The affine solution space `particular + span(kernel)`.
#[derive(Clone, Debug)]
pub struct AffineSolutions {
    pub particular: BitVector,
    pub kernel: Vec<BitVector>,
}

impl AffineSolutions {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// Visits all `2^dim` solutions in Gray-code order, one XOR per step.
    pub fn for_each<F: FnMut(&BitVector)>(&self, mut visit: F) {
        let mut z = self.particular.clone();
        visit(&z);
        let count: u64 = 1u64
            .checked_shl(self.kernel.len() as u32)
            .expect("solution space too large to enumerate");
        for step in 1..count {
            z.xor_assign(&self.kernel[step.trailing_zeros() as usize]);
            visit(&z);
        }
    }
}

/// A generator brought to systematic form: `a * g * perm = [I_s | p]`.
///
/// `column_permutation[j]` is the column of `g` that lands at position `j`.
/// The first `s` positions hold the pivot columns of `g` in increasing order,
/// the remaining `r` positions hold the other columns in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematizedForm {
    pub a: BitMatrix,
    pub column_permutation: Vec<usize>,
    pub p: BitMatrix,
}

impl SystematizedForm {
    pub fn dimension(&self) -> usize {
        self.a.rows()
    }

    pub fn redundancy(&self) -> usize {
        self.p.cols()
    }

    /// `inverse[c]` is the systematic position of original column `c`.
    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.column_permutation.len()];
        for (pos, &c) in self.column_permutation.iter().enumerate() {
            inv[c] = pos;
        }
        inv
    }

    /// The matrix `[I_s | p]`.
    pub fn systematic_matrix(&self) -> BitMatrix {
        BitMatrix::identity(self.dimension())
            .hstack(&self.p)
            .expect("p has s rows")
    }
}

/// Brings a full-row-rank matrix to systematic form.
pub fn systematize(g: &BitMatrix) -> Result<SystematizedForm, Gf2Error> {
    let ech = RowEchelon::new(g);
    if ech.rank() < g.rows() {
        return Err(Gf2Error::RankDeficient {
            rank: ech.rank(),
            rows: g.rows(),
        });
    }
    let free = ech.free_columns();
    let p = ech.reduced().select_columns(&free);
    let mut column_permutation = ech.pivots().to_vec();
    column_permutation.extend(free);
    Ok(SystematizedForm {
        a: ech.transform().clone(),
        column_permutation,
        p,
    })
}
