use crate::ring::{Endomorphism, FiniteRing};
use crate::skew::{LaurentSkewPoly, SkewError, SkewPoly, SkewRing, TruncatedSkewSeries};

use super::search::{Conclusion, Hypothesis, Search, Twist};
use super::{element, Budget, DecideError, Envelope, Outcome, PropertyId, Tail, Verdict};

/// `k` in `0 .. t + p`: enough monomials `r x^k` to decide `p R[x;α] q = 0`,
/// since `h ↦ p h q` is additive and the sandwich at `k` and at `k + p` agree
/// up to a shift once `k ≥ t`.
pub fn sandwich_exponents(alpha: &Endomorphism) -> Vec<i64> {
    (0..alpha.orbit_len() as i64).collect()
}

/// `k` in `-(p-1) ..= p-1` for an automorphism of period `p`.
pub fn laurent_sandwich_exponents(alpha: &Endomorphism) -> Vec<i64> {
    let p = alpha.period() as i64;
    (-(p - 1)..p).collect()
}

/// `p (r x^k) q = 0` for every `r` and every `k` from [`sandwich_exponents`].
pub fn forall_sandwich_zero(ctx: &SkewRing, p: &SkewPoly, q: &SkewPoly) -> Result<bool, SkewError> {
    for r in ctx.ring().nonzero_elements() {
        for k in sandwich_exponents(ctx.alpha()) {
            if !ctx.sandwich(p, r, k as usize, q)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn forall_sandwich_zero_laurent(
    ctx: &SkewRing,
    p: &LaurentSkewPoly,
    q: &LaurentSkewPoly,
) -> Result<bool, SkewError> {
    for r in ctx.ring().nonzero_elements() {
        for k in laurent_sandwich_exponents(ctx.alpha()) {
            if !ctx.laurent_sandwich(p, r, k, q)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every known coefficient of `p (r x^k) q` vanishes. With `laurent` set the
/// exponents are signed, as for [`forall_sandwich_zero_laurent`].
pub fn forall_sandwich_zero_series(
    ctx: &SkewRing,
    p: &TruncatedSkewSeries,
    q: &TruncatedSkewSeries,
    laurent: bool,
) -> Result<bool, SkewError> {
    let ks = if laurent {
        laurent_sandwich_exponents(ctx.alpha())
    } else {
        sandwich_exponents(ctx.alpha())
    };
    let ring = ctx.ring();
    for r in ring.nonzero_elements() {
        for &k in &ks {
            let s = ctx.series_sandwich(p, r, k, q)?;
            if s.coeffs().iter().any(|&c| !ring.is_zero(c)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn rules(property: PropertyId) -> (bool, Hypothesis, Conclusion) {
    use Conclusion::*;
    use Hypothesis::*;
    // (twisted by α, hypothesis, conclusion)
    match property {
        PropertyId::Armendariz => (false, Product, Plain),
        PropertyId::AlphaArmendariz => (true, Product, Plain),
        PropertyId::AlphaSkewArmendariz => (true, Product, Skew),
        PropertyId::QuasiArmendariz => (false, Sandwich, Quasi),
        PropertyId::QAlphaArmendariz => (true, Sandwich, Quasi),
        PropertyId::QAlphaSkewArmendariz
        | PropertyId::LaurentQAlphaSkew
        | PropertyId::PowerseriesQAlphaSkew
        | PropertyId::LaurentPowerseriesQAlphaSkew => (true, Sandwich, QuasiSkew),
        PropertyId::AlphaQuasiArmendariz => (true, Sandwich, QuasiOrbit),
        _ => unreachable!("element-level properties have no polynomial rule"),
    }
}

fn wrong(property: PropertyId, envelope: Envelope) -> DecideError {
    DecideError::WrongEnvelope { property, envelope }
}

/// Decides `property` over `envelope`.
pub fn decide(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    property: PropertyId,
    envelope: Envelope,
    budget: Budget,
) -> Result<Verdict, DecideError> {
    if alpha.ring() != ring.id() {
        return Err(SkewError::EndomorphismMismatch.into());
    }
    if property.is_element_level() {
        if envelope != Envelope::Exhaustive {
            return Err(wrong(property, envelope));
        }
        return Ok(match property {
            PropertyId::Reduced => element::is_reduced(ring),
            PropertyId::Domain => element::is_domain(ring),
            PropertyId::Commutative => element::is_commutative(ring),
            PropertyId::Semicommutative => element::is_semicommutative(ring),
            PropertyId::Reversible => element::is_reversible(ring),
            PropertyId::Symmetric => element::is_symmetric(ring),
            PropertyId::Rigid => element::is_rigid(ring, alpha),
            _ => unreachable!(),
        });
    }
    let fits = match (property, envelope) {
        (p, Envelope::Degree { .. }) => p.is_degree_family(),
        (PropertyId::LaurentQAlphaSkew, Envelope::Window { .. }) => true,
        (PropertyId::PowerseriesQAlphaSkew, Envelope::Truncated { lead: 0, order, .. }) => {
            order >= 1
        }
        (PropertyId::LaurentPowerseriesQAlphaSkew, Envelope::Truncated { lead, order, .. }) => {
            order + lead as i64 >= 1
        }
        _ => false,
    };
    if !fits {
        return Err(wrong(property, envelope));
    }
    let laurent = matches!(
        property,
        PropertyId::LaurentQAlphaSkew | PropertyId::LaurentPowerseriesQAlphaSkew
    );
    if laurent && !alpha.is_automorphism() {
        return Err(DecideError::NotInvertible(property.to_string()));
    }
    let (p_min, p_len, q_min, q_len) = envelope.shape().ok_or_else(|| wrong(property, envelope))?;
    let space = Budget::space(ring.size(), p_len + q_len);
    if !budget.admits(space) {
        return Err(DecideError::BudgetExceeded {
            space,
            ceiling: budget.ceiling,
        });
    }
    let (twisted, hypothesis, conclusion) = rules(property);
    let twist = if twisted {
        Twist::alpha(alpha)
    } else {
        Twist::identity(ring)
    };
    let ks = match (twisted, laurent) {
        (false, _) => vec![0],
        (true, false) => sandwich_exponents(alpha),
        (true, true) => laurent_sandwich_exponents(alpha),
    };
    let full = p_len + q_len - 1;
    let (known, pair_limit) = match envelope {
        Envelope::Truncated {
            tail: Tail::Free, ..
        } => (p_len, p_len),
        _ => (full, usize::MAX),
    };
    let search = Search {
        ring,
        twist,
        p_min,
        p_len,
        q_min,
        q_len,
        known,
        pair_limit,
        ks,
        hypothesis,
        conclusion,
    };
    let outcome = match search.run() {
        None => Outcome::HoldsUpTo,
        Some(w) => Outcome::Fails(super::Witness::Polynomials(w)),
    };
    Ok(Verdict {
        property,
        envelope,
        outcome,
    })
}

/// One of the plain-polynomial conditions at degree `≤ d`.
pub fn check_armendariz_family(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    d: usize,
    variant: PropertyId,
    budget: Budget,
) -> Result<Verdict, DecideError> {
    let envelope = Envelope::Degree { degree: d };
    if !variant.is_degree_family() {
        return Err(wrong(variant, envelope));
    }
    decide(ring, alpha, variant, envelope, budget)
}

/// Laurent polynomials `p ∈ x^-m..x^n`, `q ∈ x^-t..x^s`.
pub fn check_laurent_q_alpha_skew(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    (m, n, t, s): (usize, usize, usize, usize),
    budget: Budget,
) -> Result<Verdict, DecideError> {
    decide(
        ring,
        alpha,
        PropertyId::LaurentQAlphaSkew,
        Envelope::Window { m, n, t, s },
        budget,
    )
}

/// Series known below `x^order`. `laurent_lead = Some(m)` starts both
/// inputs at `x^-m` and decides the Laurent series condition.
pub fn check_powerseries_q_alpha_skew(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    order: i64,
    tail: Tail,
    laurent_lead: Option<usize>,
    budget: Budget,
) -> Result<Verdict, DecideError> {
    let (property, lead) = match laurent_lead {
        None => (PropertyId::PowerseriesQAlphaSkew, 0),
        Some(m) => (PropertyId::LaurentPowerseriesQAlphaSkew, m),
    };
    decide(
        ring,
        alpha,
        property,
        Envelope::Truncated { order, lead, tail },
        budget,
    )
}
