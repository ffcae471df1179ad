//! The componentwise product on `F_2^n`, which makes it a unital,
//! associative and commutative algebra, together with set squares.

use super::{BitVector, Gf2Error, VectorSet};

/// Componentwise product `(u_1 v_1, ..., u_n v_n)`.
pub fn product(u: &BitVector, v: &BitVector) -> Result<BitVector, Gf2Error> {
    u.checked_product(v)
}

/// The square of a set: all products `uv` of distinct members `u != v`,
/// deduplicated. Empty when the set has fewer than two members.
///
/// At most `|x| (|x| - 1) / 2` vectors are produced.
pub fn set_square(x: &VectorSet) -> VectorSet {
    let members: Vec<&BitVector> = x.iter().collect();
    let mut out = VectorSet::new(x.dim());
    for (a, u) in members.iter().enumerate() {
        for v in &members[a + 1..] {
            let mut uv = (*u).clone();
            uv.and_assign(v);
            out.insert(uv).expect("members share the set dimension");
        }
    }
    out
}

/// Square of an indexed family of vectors: products `x_j x_k` over all
/// index pairs `j < k`, deduplicated.
///
/// Differs from [`set_square`] only when the family repeats a vector: two
/// equal columns at different positions contribute their common value here,
/// while a set would have collapsed them first.
pub fn indexed_square(dim: usize, family: &[BitVector]) -> Result<VectorSet, Gf2Error> {
    let mut out = VectorSet::new(dim);
    for (a, u) in family.iter().enumerate() {
        if u.len() != dim {
            return Err(Gf2Error::DimensionMismatch {
                expected: dim,
                found: u.len(),
            });
        }
        for v in &family[a + 1..] {
            out.insert(u.checked_product(v)?)?;
        }
    }
    Ok(out)
}

/// Evaluates `(u + v1)(u + v2) + (u + v2)(u + v3) + (u + v3)(u + v1)`.
///
/// Whenever `v1 v2 + v1 v3 + v2 v3 = 0` the result is `u`; otherwise the
/// literal combination is still returned.
pub fn lemma3_combine(
    u: &BitVector,
    v1: &BitVector,
    v2: &BitVector,
    v3: &BitVector,
) -> Result<BitVector, Gf2Error> {
    let s1 = u.checked_add(v1)?;
    let s2 = u.checked_add(v2)?;
    let s3 = u.checked_add(v3)?;
    let mut out = s1.checked_product(&s2)?;
    out.xor_assign(&s2.checked_product(&s3)?);
    out.xor_assign(&s3.checked_product(&s1)?);
    Ok(out)
}

/// `v1 v2 + v1 v3 + v2 v3`, the quantity whose vanishing makes
/// [`lemma3_combine`] return `u`.
pub fn pairwise_product_sum(
    v1: &BitVector,
    v2: &BitVector,
    v3: &BitVector,
) -> Result<BitVector, Gf2Error> {
    let mut out = v1.checked_product(v2)?;
    out.xor_assign(&v1.checked_product(v3)?);
    out.xor_assign(&v2.checked_product(v3)?);
    Ok(out)
}
