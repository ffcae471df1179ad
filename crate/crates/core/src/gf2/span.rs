use super::BitVector;

/// Incremental echelon basis for the span of a set of vectors.
///
/// Each stored vector has a distinct pivot (its lowest set bit) and is
/// reduced against every earlier basis vector, so one forward pass over the
/// basis reduces any vector to its canonical remainder.
#[derive(Clone, Debug)]
pub struct XorBasis {
    dim: usize,
    basis: Vec<(usize, BitVector)>,
}

impl XorBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dimension(&self) -> usize {
        self.dim
    }

    /// Dimension of the span accumulated so far.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Remainder of `v` after elimination against the basis; zero iff `v`
    /// lies in the span.
    ///
    /// # Panics
    /// Panics if `v.len()` differs from the ambient dimension.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (pivot, b) in &self.basis {
            if v.get(*pivot) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set. Returns true if the span grew.
    pub fn insert(&mut self, v: BitVector) -> bool {
        let r = self.reduce(&v);
        match r.lowest_one() {
            Some(pivot) => {
                self.basis.push((pivot, r));
                true
            }
            None => false,
        }
    }
}
