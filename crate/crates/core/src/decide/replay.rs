//! Independent re-checking of failure witnesses through the public skew
//! arithmetic, without the search engine's tables.

use thiserror::Error;

use crate::ring::{Elem, Endomorphism, FiniteRing, RingError};
use crate::skew::{SkewError, SkewRing};

use super::family::{laurent_sandwich_exponents, sandwich_exponents};
use super::{ElementWitness, Envelope, PolyWitness, PropertyId, Tail, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("the verdict holds, so there is no witness to replay")]
    NoWitness,
    #[error("witness kind does not match property `{0}`")]
    WrongKind(PropertyId),
    #[error("witness lies outside the envelope: {0}")]
    OutsideEnvelope(String),
    #[error("hypothesis does not hold: {0}")]
    HypothesisFails(String),
    #[error("recorded value {recorded} but recomputed {computed}")]
    ValueMismatch { recorded: String, computed: String },
    #[error("the recorded violation evaluates to zero")]
    NoViolation,
    #[error("witness is incomplete: {0}")]
    Incomplete(&'static str),
    #[error(transparent)]
    Element(#[from] RingError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Decide(#[from] super::DecideError),
}

/// Re-evaluates the hypothesis and the violation recorded in `verdict`.
pub fn replay(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    verdict: &Verdict,
) -> Result<(), ReplayError> {
    let witness = verdict.witness().ok_or(ReplayError::NoWitness)?;
    match witness {
        Witness::Elements(w) if verdict.property.is_element_level() => {
            replay_elements(ring, alpha, verdict.property, w)
        }
        Witness::Polynomials(w) if !verdict.property.is_element_level() => {
            replay_polys(ring, alpha, verdict.property, verdict.envelope, w)
        }
        _ => Err(ReplayError::WrongKind(verdict.property)),
    }
}

fn check_value(
    ring: &FiniteRing,
    recorded: Option<Elem>,
    computed: Elem,
) -> Result<(), ReplayError> {
    if ring.is_zero(computed) {
        return Err(ReplayError::NoViolation);
    }
    match recorded {
        Some(r) if r != computed => Err(ReplayError::ValueMismatch {
            recorded: ring.label(r).to_string(),
            computed: ring.label(computed).to_string(),
        }),
        _ => Ok(()),
    }
}

fn replay_elements(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    property: PropertyId,
    w: &ElementWitness,
) -> Result<(), ReplayError> {
    for e in w.elements.iter().chain(&w.value) {
        ring.element(e.index() as u64)?;
    }
    let need = |k: usize| {
        if w.elements.len() == k {
            Ok(())
        } else {
            Err(ReplayError::Incomplete("wrong number of elements"))
        }
    };
    let hyp = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(ReplayError::HypothesisFails(what.to_string()))
        }
    };
    let e = &w.elements;
    match property {
        PropertyId::Reduced | PropertyId::Rigid => {
            need(1)?;
            let a = e[0];
            let other = if property == PropertyId::Rigid {
                alpha.image(a)
            } else {
                a
            };
            hyp(
                ring.is_zero(ring.mul(a, other)),
                "the product with itself is nonzero",
            )?;
            check_value(ring, None, a)
        }
        PropertyId::Domain => {
            if w.elements.is_empty() {
                return hyp(ring.is_zero_ring(), "empty witness on a nonzero ring");
            }
            need(2)?;
            hyp(ring.is_zero(ring.mul(e[0], e[1])), "ab is nonzero")?;
            check_value(ring, None, e[0])?;
            check_value(ring, None, e[1])
        }
        PropertyId::Commutative => {
            need(2)?;
            let diff = ring.sub(ring.mul(e[0], e[1]), ring.mul(e[1], e[0]));
            check_value(ring, None, diff)
        }
        PropertyId::Semicommutative => {
            need(3)?;
            hyp(ring.is_zero(ring.mul(e[0], e[1])), "ab is nonzero")?;
            check_value(ring, w.value, ring.mul(ring.mul(e[0], e[2]), e[1]))
        }
        PropertyId::Reversible => {
            need(2)?;
            hyp(ring.is_zero(ring.mul(e[0], e[1])), "ab is nonzero")?;
            check_value(ring, w.value, ring.mul(e[1], e[0]))
        }
        PropertyId::Symmetric => {
            need(3)?;
            hyp(
                ring.is_zero(ring.mul(ring.mul(e[0], e[1]), e[2])),
                "abc is nonzero",
            )?;
            check_value(ring, w.value, ring.mul(ring.mul(e[1], e[0]), e[2]))
        }
        _ => Err(ReplayError::WrongKind(property)),
    }
}

fn replay_polys(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    property: PropertyId,
    envelope: Envelope,
    w: &PolyWitness,
) -> Result<(), ReplayError> {
    for e in w.p.iter().chain(&w.q).chain(&w.middle).chain([&w.value]) {
        ring.element(e.index() as u64)?;
    }
    let (p_min, p_len, q_min, q_len) = envelope
        .shape()
        .ok_or_else(|| ReplayError::OutsideEnvelope(envelope.to_string()))?;
    if (w.p_min, w.p.len(), w.q_min, w.q.len()) != (p_min, p_len, q_min, q_len) {
        return Err(ReplayError::OutsideEnvelope(format!(
            "coefficient windows do not match `{envelope}`"
        )));
    }
    let (i, j) = w.pair;
    let (u, v) = (i - p_min, j - q_min);
    if u < 0 || v < 0 || u as usize >= p_len || v as usize >= q_len {
        return Err(ReplayError::OutsideEnvelope(format!("pair ({i}, {j})")));
    }
    let (u, v) = (u as usize, v as usize);
    let free_tail = matches!(
        envelope,
        Envelope::Truncated {
            tail: Tail::Free,
            ..
        }
    );
    if free_tail && u + v >= p_len {
        return Err(ReplayError::OutsideEnvelope(format!(
            "pair ({i}, {j}) is beyond the known precision"
        )));
    }

    let identity;
    let twisted = !matches!(
        property,
        PropertyId::Armendariz | PropertyId::QuasiArmendariz
    );
    let tau: &Endomorphism = if twisted {
        alpha
    } else {
        identity = Endomorphism::identity(ring);
        &identity
    };
    let ctx = SkewRing::new(ring, tau)?;
    let laurent = matches!(
        property,
        PropertyId::LaurentQAlphaSkew | PropertyId::LaurentPowerseriesQAlphaSkew
    );
    let ks: Vec<i64> = if !twisted {
        vec![0]
    } else if laurent {
        laurent_sandwich_exponents(alpha)
    } else {
        sandwich_exponents(alpha)
    };
    let product_hypothesis = matches!(
        property,
        PropertyId::Armendariz | PropertyId::AlphaArmendariz | PropertyId::AlphaSkewArmendariz
    );

    if free_tail {
        let p = ctx.series(w.p_min, w.p_min + p_len as i64, w.p.clone())?;
        let q = ctx.series(w.q_min, w.q_min + q_len as i64, w.q.clone())?;
        for r in ring.nonzero_elements() {
            for &k in &ks {
                let s = ctx.series_sandwich(&p, r, k, &q)?;
                if s.coeffs().iter().any(|&c| !ring.is_zero(c)) {
                    return Err(ReplayError::HypothesisFails(format!(
                        "p ({}*x^{k}) q = {}",
                        ring.label(r),
                        ctx.render_series(&s)
                    )));
                }
            }
        }
    } else if p_min < 0 || q_min < 0 || laurent {
        let p = ctx.laurent(w.p_min, w.p.clone())?;
        let q = ctx.laurent(w.q_min, w.q.clone())?;
        for r in ring.nonzero_elements() {
            for &k in &ks {
                let s = ctx.laurent_sandwich(&p, r, k, &q)?;
                if !s.is_zero() {
                    return Err(ReplayError::HypothesisFails(format!(
                        "p ({}*x^{k}) q = {}",
                        ring.label(r),
                        ctx.render_laurent(&s)
                    )));
                }
            }
        }
    } else {
        let p = ctx.poly(w.p.clone())?;
        let q = ctx.poly(w.q.clone())?;
        if product_hypothesis {
            let s = ctx.mul(&p, &q)?;
            if !s.is_zero() {
                return Err(ReplayError::HypothesisFails(format!(
                    "pq = {}",
                    ctx.render_poly(&s)
                )));
            }
        } else {
            for r in ring.nonzero_elements() {
                for &k in &ks {
                    let s = ctx.sandwich(&p, r, k as usize, &q)?;
                    if !s.is_zero() {
                        return Err(ReplayError::HypothesisFails(format!(
                            "p ({}*x^{k}) q = {}",
                            ring.label(r),
                            ctx.render_poly(&s)
                        )));
                    }
                }
            }
        }
    }

    let (a, b) = (w.p[u], w.q[v]);
    let middle = || {
        w.middle
            .ok_or(ReplayError::Incomplete("missing middle element"))
    };
    let computed = match property {
        PropertyId::Armendariz | PropertyId::AlphaArmendariz => ring.mul(a, b),
        PropertyId::AlphaSkewArmendariz => ring.mul(a, alpha.apply_pow(i, b)),
        PropertyId::QuasiArmendariz | PropertyId::QAlphaArmendariz => {
            ring.mul(ring.mul(a, middle()?), b)
        }
        PropertyId::AlphaQuasiArmendariz => {
            let t = w.power.ok_or(ReplayError::Incomplete("missing power"))?;
            if t < 0 {
                return Err(ReplayError::OutsideEnvelope(format!("power {t}")));
            }
            ring.mul(ring.mul(a, middle()?), alpha.apply_pow(t, b))
        }
        _ => ring.mul(ring.mul(a, middle()?), alpha.apply_pow(i, b)),
    };
    check_value(ring, Some(w.value), computed)
}
