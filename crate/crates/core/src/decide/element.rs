use crate::ring::{Elem, Endomorphism, FiniteRing};

use super::{ElementWitness, Envelope, Outcome, PropertyId, Verdict};

fn verdict(property: PropertyId, found: Option<ElementWitness>) -> Verdict {
    Verdict {
        property,
        envelope: Envelope::Exhaustive,
        outcome: match found {
            None => Outcome::HoldsUpTo,
            Some(w) => Outcome::Fails(super::Witness::Elements(w)),
        },
    }
}

fn witness(elements: &[Elem], value: Option<Elem>) -> Option<ElementWitness> {
    Some(ElementWitness {
        elements: elements.to_vec(),
        value,
    })
}

/// `a² = 0 ⟹ a = 0`; the witness is the least nonzero square-zero `a`.
pub fn is_reduced(ring: &FiniteRing) -> Verdict {
    let found = ring
        .nonzero_elements()
        .find(|&a| ring.is_zero(ring.mul(a, a)))
        .and_then(|a| witness(&[a], None));
    verdict(PropertyId::Reduced, found)
}

/// `r α(r) = 0 ⟹ r = 0`.
pub fn is_rigid(ring: &FiniteRing, alpha: &Endomorphism) -> Verdict {
    let found = ring
        .nonzero_elements()
        .find(|&r| ring.is_zero(ring.mul(r, alpha.image(r))))
        .and_then(|r| witness(&[r], None));
    verdict(PropertyId::Rigid, found)
}

/// A nonzero ring without zero divisors. The zero ring fails with an empty
/// witness.
pub fn is_domain(ring: &FiniteRing) -> Verdict {
    if ring.is_zero_ring() {
        return verdict(PropertyId::Domain, witness(&[], None));
    }
    let found = ring.nonzero_elements().find_map(|a| {
        ring.nonzero_elements()
            .find(|&b| ring.is_zero(ring.mul(a, b)))
            .and_then(|b| witness(&[a, b], None))
    });
    verdict(PropertyId::Domain, found)
}

pub fn is_commutative(ring: &FiniteRing) -> Verdict {
    let found = ring.elements().find_map(|a| {
        ring.elements()
            .find(|&b| ring.mul(a, b) != ring.mul(b, a))
            .and_then(|b| witness(&[a, b], None))
    });
    verdict(PropertyId::Commutative, found)
}

/// `ab = 0 ⟹ aRb = 0`; the witness is `(a, b, r)` with `arb ≠ 0`.
pub fn is_semicommutative(ring: &FiniteRing) -> Verdict {
    let found = ring.elements().find_map(|a| {
        ring.elements()
            .filter(|&b| ring.is_zero(ring.mul(a, b)))
            .find_map(|b| {
                ring.elements().find_map(|r| {
                    let v = ring.mul(ring.mul(a, r), b);
                    (!ring.is_zero(v)).then(|| ElementWitness {
                        elements: vec![a, b, r],
                        value: Some(v),
                    })
                })
            })
    });
    verdict(PropertyId::Semicommutative, found)
}

/// `ab = 0 ⟹ ba = 0`.
pub fn is_reversible(ring: &FiniteRing) -> Verdict {
    let found = ring.elements().find_map(|a| {
        ring.elements().find_map(|b| {
            let ba = ring.mul(b, a);
            (ring.is_zero(ring.mul(a, b)) && !ring.is_zero(ba)).then(|| ElementWitness {
                elements: vec![a, b],
                value: Some(ba),
            })
        })
    });
    verdict(PropertyId::Reversible, found)
}

/// `abc = 0 ⟹ bac = 0`.
pub fn is_symmetric(ring: &FiniteRing) -> Verdict {
    let found = ring.elements().find_map(|a| {
        ring.elements().find_map(|b| {
            let (ab, ba) = (ring.mul(a, b), ring.mul(b, a));
            ring.elements().find_map(|c| {
                let bac = ring.mul(ba, c);
                (ring.is_zero(ring.mul(ab, c)) && !ring.is_zero(bac)).then(|| ElementWitness {
                    elements: vec![a, b, c],
                    value: Some(bac),
                })
            })
        })
    });
    verdict(PropertyId::Symmetric, found)
}
