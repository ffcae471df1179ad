//! Mechanical replay of the redundancy lower bound for 3-server PIR codes.
//!
//! Given a code and its recovery certificate, the generator is brought to
//! the form `A G Π = [I_s | P]`. In those coordinates every recovery set
//! `R_j` of `e_i` splits into systematic positions `S_j` and parity
//! positions `T_j`, and
//!
//! ```text
//! a_i = sum_{R_j} x'_t,    v_j = sum_{S_j} e_t,    a_i + v_j = sum_{T_j} x'_t
//! ```
//!
//! where `a_i` is column `i` of `A` and `x'_t` column `t` of `[I_s | P]`.
//! The `v_j` have disjoint supports, so the three-term product identity
//! rebuilds `a_i` from products of parity columns. Hence every `a_i` lies
//! in the span of the pairwise products of parity columns, whose dimension
//! is therefore at least `s` and at most `r (r - 1) / 2`.
//!
//! [`build_proof_witness`] checks each of these equalities on the concrete
//! code and reports the first one that fails.

use std::fmt;

use super::{diagnose_certificate, lower_bound_ok, CodeError, PirCode};
use crate::gf2::{
    indexed_square, lemma3_combine, pairwise_product_sum, span_contains, systematize, BitVector,
    SystematizedForm, VectorSet,
};

/// The individual claims checked while replaying the argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofStep {
    /// The code carries at least three recovery sets per coordinate.
    ServerCount,
    /// The certificate is valid for the generator.
    Certificate,
    /// `A G Π = [I_s | P]` exists.
    Systematize,
    /// The columns of `[I_s | P]` indexed by each `R_j` add up to `a_i`.
    RecoveryEquation,
    /// `v_1, v_2, v_3` have pairwise disjoint supports.
    DisjointSupports,
    /// `a_i + v_j` is the sum of the parity columns indexed by `T_j`.
    ParityEquation,
    /// The three-term product identity returns `a_i`.
    ProductIdentity,
    /// Every product `x'_j x'_k` in the expansion belongs to the square.
    ProductsInSquare,
    /// `a_i` lies in the span of the square.
    SpanMembership,
    /// `s <= dim span(X^2) <= |X^2| <= r (r - 1) / 2`.
    DimensionBound,
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::ServerCount => "server count",
            Self::Certificate => "certificate",
            Self::Systematize => "systematic form",
            Self::RecoveryEquation => "recovery equation",
            Self::DisjointSupports => "disjoint supports",
            Self::ParityEquation => "parity equation",
            Self::ProductIdentity => "product identity",
            Self::ProductsInSquare => "products in square",
            Self::SpanMembership => "span membership",
            Self::DimensionBound => "dimension bound",
        };
        f.write_str(name)
    }
}

/// Per-coordinate proof objects. All index sets are positions in the
/// systematic (permuted) coordinates, 0-based.
#[derive(Clone, Debug)]
pub struct CoordinateWitness {
    pub coordinate: usize,
    pub recovery: [Vec<usize>; 3],
    /// `R_j` restricted to the first `s` positions.
    pub systematic: [Vec<usize>; 3],
    /// `R_j` restricted to the parity positions.
    pub parity: [Vec<usize>; 3],
    pub v: [BitVector; 3],
}

#[derive(Clone, Debug)]
pub struct ProofWitness {
    pub systematized: SystematizedForm,
    /// Columns `a_1, ..., a_s` of `A`.
    pub a_columns: Vec<BitVector>,
    pub coordinates: Vec<CoordinateWitness>,
    /// Parity columns `x'_{s+1}, ..., x'_n` in position order.
    pub parity_columns: Vec<BitVector>,
    /// The parity columns as a set.
    pub x_set: VectorSet,
    /// Distinct products `x'_j x'_k` over parity positions `j < k`.
    pub x_square: VectorSet,
    pub span_dimension: usize,
}

impl ProofWitness {
    pub fn dimension(&self) -> usize {
        self.a_columns.len()
    }

    pub fn redundancy(&self) -> usize {
        self.parity_columns.len()
    }
}

fn fail(step: ProofStep, coordinate: Option<usize>) -> CodeError {
    CodeError::ProofStep { step, coordinate }
}

fn column_sum(columns: &[BitVector], positions: &[usize], dim: usize) -> BitVector {
    let mut acc = BitVector::zeros(dim);
    for &p in positions {
        acc.xor_assign(&columns[p]);
    }
    acc
}

/// Replays the lower-bound argument on `code`, using the first three
/// recovery sets of each coordinate.
///
/// Fails with [`CodeError::ProofStep`] naming the step (and coordinate)
/// that does not hold; for a valid certificate that would indicate a bug.
pub fn build_proof_witness(code: &PirCode) -> Result<ProofWitness, CodeError> {
    let cert = code.certificate().ok_or(CodeError::MissingCertificate)?;
    if code.k() < 3 {
        return Err(fail(ProofStep::ServerCount, None));
    }
    let g = code.generator();
    diagnose_certificate(g, cert, code.k()).map_err(|_| fail(ProofStep::Certificate, None))?;

    let s = g.rows();
    let form = systematize(g).map_err(|_| fail(ProofStep::Systematize, None))?;
    let r = form.redundancy();
    let inverse = form.inverse_permutation();
    let sys_columns = form.systematic_matrix().columns();
    let a_columns = form.a.columns();
    let parity_columns = sys_columns[s..].to_vec();

    let x_set = VectorSet::from_vectors(s, parity_columns.iter().cloned())?;
    let x_square = indexed_square(s, &parity_columns)?;
    let square_basis = x_square.span_basis();

    let mut coordinates = Vec::with_capacity(s);
    for (i, a_i) in a_columns.iter().enumerate() {
        let here = Some(i);
        let sets = cert.sets_for(i);
        let recovery: [Vec<usize>; 3] = std::array::from_fn(|j| {
            let mut pos: Vec<usize> = sets[j].columns().iter().map(|&c| inverse[c]).collect();
            pos.sort_unstable();
            pos
        });
        for set in &recovery {
            if column_sum(&sys_columns, set, s) != *a_i {
                return Err(fail(ProofStep::RecoveryEquation, here));
            }
        }

        let systematic: [Vec<usize>; 3] =
            std::array::from_fn(|j| recovery[j].iter().copied().filter(|&p| p < s).collect());
        let parity: [Vec<usize>; 3] =
            std::array::from_fn(|j| recovery[j].iter().copied().filter(|&p| p >= s).collect());
        let v: [BitVector; 3] =
            std::array::from_fn(|j| BitVector::from_indices(s, systematic[j].iter().copied()));

        if !pairwise_product_sum(&v[0], &v[1], &v[2])?.is_zero()
            || !(v[0].is_disjoint(&v[1]) && v[0].is_disjoint(&v[2]) && v[1].is_disjoint(&v[2]))
        {
            return Err(fail(ProofStep::DisjointSupports, here));
        }

        let sums: [BitVector; 3] = std::array::from_fn(|j| column_sum(&sys_columns, &parity[j], s));
        for j in 0..3 {
            if a_i.checked_add(&v[j])? != sums[j] {
                return Err(fail(ProofStep::ParityEquation, here));
            }
        }

        if lemma3_combine(a_i, &v[0], &v[1], &v[2])? != *a_i {
            return Err(fail(ProofStep::ProductIdentity, here));
        }
        // Expand each product of sums into products of single parity
        // columns; T_1, T_2, T_3 are disjoint so every pair has j != k.
        let mut expanded = BitVector::zeros(s);
        for (x, y) in [(0, 1), (1, 2), (2, 0)] {
            for &p in &parity[x] {
                for &q in &parity[y] {
                    let term = sys_columns[p].checked_product(&sys_columns[q])?;
                    if p == q || !x_square.contains(&term) {
                        return Err(fail(ProofStep::ProductsInSquare, here));
                    }
                    expanded.xor_assign(&term);
                }
            }
        }
        if expanded != *a_i {
            return Err(fail(ProofStep::ProductIdentity, here));
        }
        if !span_contains(&x_square, a_i)? || !square_basis.contains(a_i) {
            return Err(fail(ProofStep::SpanMembership, here));
        }

        coordinates.push(CoordinateWitness {
            coordinate: i,
            recovery,
            systematic,
            parity,
            v,
        });
    }

    let span_dimension = square_basis.dimension();
    let pairs = r * r.saturating_sub(1) / 2;
    if span_dimension < s
        || span_dimension > x_square.len()
        || x_square.len() > pairs
        || !lower_bound_ok(s, r)
    {
        return Err(fail(ProofStep::DimensionBound, None));
    }

    Ok(ProofWitness {
        systematized: form,
        a_columns,
        coordinates,
        parity_columns,
        x_set,
        x_square,
        span_dimension,
    })
}
