use indexmap::IndexSet;

use super::{BitVector, Gf2Error, XorBasis};

/// A deduplicated set of vectors of one common length.
///
/// Members keep their first-insertion order so iteration is reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    dim: usize,
    members: IndexSet<BitVector>,
}

impl VectorSet {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            members: IndexSet::new(),
        }
    }

    pub fn from_vectors<I>(dim: usize, vectors: I) -> Result<Self, Gf2Error>
    where
        I: IntoIterator<Item = BitVector>,
    {
        let mut set = Self::new(dim);
        for v in vectors {
            set.insert(v)?;
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Inserts `v`; returns false if it was already a member.
    pub fn insert(&mut self, v: BitVector) -> Result<bool, Gf2Error> {
        if v.len() != self.dim {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(self.members.insert(v))
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.members.contains(v)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &BitVector> {
        self.members.iter()
    }

    pub fn get(&self, index: usize) -> Option<&BitVector> {
        self.members.get_index(index)
    }

    pub fn span_basis(&self) -> XorBasis {
        let mut basis = XorBasis::new(self.dim);
        for v in &self.members {
            basis.insert(v.clone());
        }
        basis
    }

    /// Dimension of the linear span of the members.
    pub fn span_dimension(&self) -> usize {
        self.span_basis().dimension()
    }
}

/// Decides whether `target` is a GF(2) linear combination of the members
/// of `basis_set`.
pub fn span_contains(basis_set: &VectorSet, target: &BitVector) -> Result<bool, Gf2Error> {
    if target.len() != basis_set.dim() {
        return Err(Gf2Error::DimensionMismatch {
            expected: basis_set.dim(),
            found: target.len(),
        });
    }
    Ok(basis_set.span_basis().contains(target))
}
