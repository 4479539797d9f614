use thiserror::Error;

use crate::ring::Elem;
use crate::skew::{SkewPoly, SkewRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("{polys} polynomials but {indices} indices")]
    LengthMismatch { polys: usize, indices: usize },
    #[error("index {index} at position {position} exceeds the degree of that polynomial")]
    IndexOutOfRange { position: usize, index: usize },
    #[error("polynomial at position {0} belongs to a different ring or map")]
    Foreign(usize),
}

/// `a_{i₁} α^{i₁}(a_{i₂}) α^{i₁+i₂}(a_{i₃}) ⋯`, where `a_{i_j}` is the
/// coefficient of `x^{i_j}` in `P_j`. The zero polynomial admits index 0
/// with coefficient 0.
pub fn coefficient_chain(
    ctx: &SkewRing,
    polys: &[SkewPoly],
    indices: &[usize],
) -> Result<Elem, ChainError> {
    if polys.len() != indices.len() || polys.is_empty() {
        return Err(ChainError::LengthMismatch {
            polys: polys.len(),
            indices: indices.len(),
        });
    }
    let ring = ctx.ring();
    let mut coeffs = Vec::with_capacity(polys.len());
    for (position, (p, &index)) in polys.iter().zip(indices).enumerate() {
        if !ctx.contains(p) {
            return Err(ChainError::Foreign(position));
        }
        let c = match p.coeff(index) {
            Some(c) => c,
            None if p.is_zero() && index == 0 => ring.zero(),
            None => return Err(ChainError::IndexOutOfRange { position, index }),
        };
        coeffs.push(c);
    }
    let mut acc = coeffs[0];
    let mut shift = indices[0] as i64;
    for (&c, &i) in coeffs.iter().zip(indices).skip(1) {
        acc = ring.mul(acc, ctx.alpha().apply_pow(shift, c));
        shift += i as i64;
    }
    Ok(acc)
}
