mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use skewring::decide::{
    decide, forall_sandwich_zero, replay, Budget, Envelope, Outcome, PropertyId, Verdict, Witness,
};
use skewring::ring::{Elem, Endomorphism, FiniteRing};
use skewring::skew::SkewRing;

use common::{all_vectors, iterate, naive_mul, small_systems};

const FAMILY: [PropertyId; 7] = [
    PropertyId::Armendariz,
    PropertyId::AlphaArmendariz,
    PropertyId::AlphaSkewArmendariz,
    PropertyId::QuasiArmendariz,
    PropertyId::QAlphaArmendariz,
    PropertyId::QAlphaSkewArmendariz,
    PropertyId::AlphaQuasiArmendariz,
];

fn systems() -> &'static [(FiniteRing, Endomorphism)] {
    static S: OnceLock<Vec<(FiniteRing, Endomorphism)>> = OnceLock::new();
    S.get_or_init(small_systems)
}

fn budget() -> Budget {
    Budget::new(100_000_000)
}

/// `p h q = 0` for every `h` of degree `≤ t + p`, coefficients unrestricted.
fn sandwich_oracle(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    hs: &[Vec<Elem>],
    p: &[Elem],
    q: &[Elem],
) -> bool {
    hs.iter()
        .all(|h| naive_mul(ring, alpha, &naive_mul(ring, alpha, p, h), q).is_empty())
}

fn h_range(ring: &FiniteRing, alpha: &Endomorphism) -> Vec<Vec<Elem>> {
    let (t, p) = alpha.orbit();
    all_vectors(ring, t + p + 1)
}

/// Brute force over all pairs of degree `≤ d`, straight from the definitions.
fn oracle_holds(ring: &FiniteRing, alpha: &Endomorphism, property: PropertyId, d: usize) -> bool {
    use PropertyId::*;
    let id = Endomorphism::identity(ring);
    let twist = match property {
        Armendariz | QuasiArmendariz => &id,
        _ => alpha,
    };
    let quasi = matches!(
        property,
        QuasiArmendariz | QAlphaArmendariz | QAlphaSkewArmendariz | AlphaQuasiArmendariz
    );
    let hs = if quasi {
        h_range(ring, twist)
    } else {
        Vec::new()
    };
    let zero = |x: Elem| ring.is_zero(x);
    let orbit = twist.orbit_len();
    let polys = all_vectors(ring, d + 1);
    for p in &polys {
        for q in &polys {
            let hyp = if quasi {
                sandwich_oracle(ring, twist, &hs, p, q)
            } else {
                naive_mul(ring, twist, p, q).is_empty()
            };
            if !hyp {
                continue;
            }
            for (i, &a) in p.iter().enumerate() {
                for &b in q {
                    let ok = match property {
                        Armendariz | AlphaArmendariz => zero(ring.mul(a, b)),
                        AlphaSkewArmendariz => zero(ring.mul(a, iterate(twist, i, b))),
                        QuasiArmendariz | QAlphaArmendariz => {
                            ring.elements().all(|r| zero(ring.mul(ring.mul(a, r), b)))
                        }
                        QAlphaSkewArmendariz => ring
                            .elements()
                            .all(|r| zero(ring.mul(ring.mul(a, r), iterate(twist, i, b)))),
                        AlphaQuasiArmendariz => ring.elements().all(|r| {
                            (0..orbit).all(|t| zero(ring.mul(ring.mul(a, r), iterate(twist, t, b))))
                        }),
                        _ => unreachable!(),
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn sandwich_check_matches_unrestricted_oracle() {
    let mut compared = 0;
    for (ring, alpha) in systems() {
        let ctx = SkewRing::new(ring, alpha).unwrap();
        let hs = h_range(ring, alpha);
        for d in 0..=1 {
            for p in all_vectors(ring, d + 1) {
                let pp = ctx.poly(p.clone()).unwrap();
                for q in all_vectors(ring, d + 1) {
                    let got =
                        forall_sandwich_zero(&ctx, &pp, &ctx.poly(q.clone()).unwrap()).unwrap();
                    assert_eq!(
                        got,
                        sandwich_oracle(ring, alpha, &hs, &p, &q),
                        "{} with {}: p {p:?} q {q:?}",
                        ring.name(),
                        alpha.name()
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 5_000);
}

#[test]
fn family_deciders_match_brute_force() {
    for (ring, alpha) in systems() {
        for property in FAMILY {
            for d in 0..=1 {
                let v = decide(
                    ring,
                    alpha,
                    property,
                    Envelope::Degree { degree: d },
                    budget(),
                )
                .unwrap();
                assert_eq!(
                    v.holds(),
                    oracle_holds(ring, alpha, property, d),
                    "{property} at degree {d} on {} with {}",
                    ring.name(),
                    alpha.name()
                );
                if !v.holds() {
                    replay(ring, alpha, &v).unwrap();
                }
            }
        }
    }
}

#[test]
fn element_properties_respect_known_inclusions() {
    use PropertyId::*;
    for (ring, alpha) in systems() {
        let holds = |p| {
            decide(ring, alpha, p, Envelope::Exhaustive, budget())
                .unwrap()
                .holds()
        };
        if holds(Rigid) {
            assert!(holds(Reduced), "{}", ring.name());
        }
        if holds(Domain) {
            assert!(holds(Reduced));
        }
        if holds(Commutative) {
            assert!(holds(Symmetric));
            assert!(holds(Reversible));
        }
        if ring.is_unital() {
            if holds(Reduced) {
                assert!(holds(Symmetric), "{}", ring.name());
            }
            if holds(Symmetric) {
                assert!(holds(Reversible), "{}", ring.name());
            }
            if holds(Reversible) {
                assert!(holds(Semicommutative), "{}", ring.name());
            }
        }
    }
}

fn tamper(v: &Verdict) -> Option<Verdict> {
    let Outcome::Fails(Witness::Polynomials(w)) = &v.outcome else {
        return None;
    };
    let mut w = w.clone();
    w.value = Elem::new(0);
    Some(Verdict {
        outcome: Outcome::Fails(Witness::Polynomials(w)),
        ..v.clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verdicts_are_monotone_in_degree(s in any::<prop::sample::Index>(), k in 0usize..7, d in 0usize..2) {
        let (ring, alpha) = s.get(systems());
        let property = FAMILY[k];
        let low = decide(ring, alpha, property, Envelope::Degree { degree: d }, budget()).unwrap();
        let high = decide(ring, alpha, property, Envelope::Degree { degree: d + 1 }, budget()).unwrap();
        prop_assert!(!high.holds() || low.holds());
    }

    #[test]
    fn windows_are_monotone(s in any::<prop::sample::Index>()) {
        let auts: Vec<_> = systems().iter().filter(|(_, a)| a.is_automorphism()).collect();
        let (ring, alpha) = *s.get(&auts);
        let at = |m, n, t, s| {
            decide(ring, alpha, PropertyId::LaurentQAlphaSkew, Envelope::Window { m, n, t, s }, budget())
                .unwrap()
                .holds()
        };
        let big = at(1, 1, 1, 1);
        if big {
            prop_assert!(at(0, 1, 0, 1) && at(1, 0, 1, 0) && at(0, 0, 0, 0));
        }
    }

    #[test]
    fn failures_replay_and_tampering_is_caught(s in any::<prop::sample::Index>(), k in 0usize..7, d in 0usize..3) {
        let (ring, alpha) = s.get(systems());
        let v = decide(ring, alpha, FAMILY[k], Envelope::Degree { degree: d }, budget()).unwrap();
        if !v.holds() {
            prop_assert!(replay(ring, alpha, &v).is_ok());
            let bad = tamper(&v).unwrap();
            prop_assert!(replay(ring, alpha, &bad).is_err());
        }
    }

    #[test]
    fn decisions_are_deterministic(s in any::<prop::sample::Index>(), k in 0usize..7) {
        let (ring, alpha) = s.get(systems());
        let a = decide(ring, alpha, FAMILY[k], Envelope::Degree { degree: 1 }, budget()).unwrap();
        let b = decide(ring, alpha, FAMILY[k], Envelope::Degree { degree: 1 }, budget()).unwrap();
        prop_assert_eq!(a, b);
    }
}
