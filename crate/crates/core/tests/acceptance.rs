//! Acceptance suite. Each criterion runs against its time limit and prints
//! one PASS or FAIL line; the process exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewring::corpus::{
    affordable_degree, chain_harness, laurent_consistency, run_implication_matrix,
    run_relabeling_transport, series_consistency, CorpusEntry,
};
use skewring::decide::{
    decide, forall_sandwich_zero, replay, Budget, Envelope, PropertyId, Verdict,
};
use skewring::ring::{Elem, Endomorphism};
use skewring::skew::{SkewPoly, SkewRing};

use common::{
    all_vectors, corpus, entry, iterate, naive_add, naive_mul, small_rings, small_systems, trim,
};

/// Large enough for degree 2 on the 25-element entry.
const WIDE: u128 = 1_000_000_000;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(
    e: &CorpusEntry,
    property: PropertyId,
    envelope: Envelope,
    budget: Budget,
) -> Result<Verdict, String> {
    decide(&e.ring, &e.alpha, property, envelope, budget)
        .map_err(|err| format!("{}: {err}", e.name))
}

fn failure_replays(e: &CorpusEntry, v: &Verdict) -> Result<(), String> {
    ensure(!v.holds(), || {
        format!("{} {} should fail ({})", e.name, v.property, v.envelope)
    })?;
    replay(&e.ring, &e.alpha, v).map_err(|err| format!("{} {}: {err}", e.name, v.property))
}

fn trivial_extension_witness() -> Check {
    let e = entry("z4-trivial-extension-negated");
    let v = run(
        &e,
        PropertyId::QAlphaSkewArmendariz,
        Envelope::Degree { degree: 1 },
        Budget::default(),
    )?;
    failure_replays(&e, &v)?;

    let (ring, alpha) = (&e.ring, &e.alpha);
    let el = |s: &str| ring.lookup(s).ok_or_else(|| format!("no element {s}"));
    let p = vec![el("(2,0)")?, el("(2,1)")?];
    let mut sandwiches = 0;
    for r in ring.elements() {
        for k in 0..2 {
            let mut h = vec![ring.zero(); k + 1];
            h[k] = r;
            let phq = naive_mul(ring, alpha, &naive_mul(ring, alpha, &p, &h), &p);
            ensure(phq.is_empty(), || {
                format!("p ({} x^{k}) q = {phq:?}", ring.label(r))
            })?;
            sandwiches += 1;
        }
    }
    let offending = ring.mul(ring.mul(p[1], el("(1,0)")?), iterate(alpha, 1, p[0]));
    ensure(offending == el("(0,2)")?, || {
        format!("offending value {}", ring.label(offending))
    })?;

    let ctx = SkewRing::new(ring, alpha).map_err(|err| err.to_string())?;
    let pp = ctx.poly(p.clone()).map_err(|err| err.to_string())?;
    ensure(
        forall_sandwich_zero(&ctx, &pp, &pp).map_err(|err| err.to_string())?,
        || "sandwich check rejects the known witness".into(),
    )?;
    Ok(format!(
        "decider fails at degree 1; known witness vanishes on {sandwiches} sandwiches, value (0,2)"
    ))
}

fn swap_entry() -> Check {
    let e = entry("z2-squared-swap");
    let b = Budget::default();
    ensure(
        run(&e, PropertyId::Reduced, Envelope::Exhaustive, b)?.holds(),
        || "not reduced".into(),
    )?;
    for d in 1..=2 {
        failure_replays(
            &e,
            &run(
                &e,
                PropertyId::AlphaSkewArmendariz,
                Envelope::Degree { degree: d },
                b,
            )?,
        )?;
    }
    let q = run(
        &e,
        PropertyId::QAlphaSkewArmendariz,
        Envelope::Degree { degree: 2 },
        b,
    )?;
    ensure(q.holds(), || "q-alpha-skew fails at degree 2".into())?;
    Ok("reduced; alpha-skew fails at degrees 1 and 2; q-alpha-skew holds at degree 2".into())
}

fn implication_matrix() -> Check {
    let mut rows = 0;
    let mut confirmed = 0;
    for e in corpus() {
        let m = run_implication_matrix(&e, 2, Budget::new(WIDE))
            .map_err(|err| format!("{}: {err}", e.name))?;
        ensure(m.degree == 2, || {
            format!("{} ran at degree {}", e.name, m.degree)
        })?;
        if let Some(bad) = m.violations().next() {
            return Err(format!("{}: {} {:?}", e.name, bad.rule, bad.status));
        }
        rows += m.rows.len();
        confirmed += m
            .rows
            .iter()
            .filter(|r| r.status == skewring::corpus::RowStatus::Confirmed)
            .count();
    }
    Ok(format!(
        "{rows} rows at degree 2, {confirmed} confirmed, no violations"
    ))
}

fn relabeling_transport() -> Check {
    let budget = Budget::default();
    let mut comparisons = 0;
    let mut degrees = Vec::new();
    for e in corpus() {
        let d = affordable_degree(&e.ring, 2, budget)
            .ok_or_else(|| format!("{} unaffordable", e.name))?;
        let r = run_relabeling_transport(&e, 0..20, d, budget)
            .map_err(|err| format!("{}: {err}", e.name))?;
        ensure(r.mismatches.is_empty(), || {
            format!("{}: {:?}", e.name, r.mismatches)
        })?;
        ensure(r.comparisons == 80, || {
            format!("{}: {} comparisons", e.name, r.comparisons)
        })?;
        comparisons += r.comparisons;
        degrees.push(format!("{}@{d}", e.name));
    }
    Ok(format!(
        "{comparisons} comparisons over 20 seeds per entry ({})",
        degrees.join(", ")
    ))
}

fn laurent_and_series() -> Check {
    let budget = Budget::new(WIDE);
    let mut windows = 0;
    let mut series = 0;
    for e in corpus() {
        if let Some(c) = laurent_consistency(&e, 2, budget).map_err(|err| err.to_string())? {
            ensure(
                c.laurent.envelope
                    == (Envelope::Window {
                        m: 1,
                        n: 1,
                        t: 1,
                        s: 1,
                    }),
                || format!("{}: window {}", e.name, c.laurent.envelope),
            )?;
            ensure(c.agrees(), || format!("{}: {:?}", e.name, c.problems))?;
            windows += 1;
        }
        if let Some(c) = series_consistency(&e, 3, budget).map_err(|err| err.to_string())? {
            ensure(
                matches!(c.plain.envelope, Envelope::Truncated { order: 3, .. }),
                || format!("{}: series ran at {}", e.name, c.plain.envelope),
            )?;
            ensure(c.agrees(), || format!("{}: {:?}", e.name, c.problems))?;
            series += 1;
        }
    }
    ensure(windows > 0 && series > 0, || "nothing compared".into())?;
    Ok(format!(
        "{windows} window comparisons at (1,1,1,1), {series} series comparisons at order 3"
    ))
}

fn sandwich_oracle() -> Check {
    let mut agreed = 0u64;
    let entries: Vec<_> = corpus()
        .into_iter()
        .filter(|e| e.ring.size() <= 4)
        .collect();
    ensure(entries.len() >= 3, || {
        format!("only {} small entries", entries.len())
    })?;
    for e in &entries {
        let (ring, alpha) = (&e.ring, &e.alpha);
        let ctx = SkewRing::new(ring, alpha).map_err(|err| err.to_string())?;
        let (t, period) = alpha.orbit();
        let hs = all_vectors(ring, t + period + 1);
        for d in 0..=1 {
            for p in all_vectors(ring, d + 1) {
                let pp = ctx.poly(p.clone()).map_err(|err| err.to_string())?;
                for q in all_vectors(ring, d + 1) {
                    let qq = ctx.poly(q.clone()).map_err(|err| err.to_string())?;
                    let got =
                        forall_sandwich_zero(&ctx, &pp, &qq).map_err(|err| err.to_string())?;
                    let want = hs.iter().all(|h| {
                        naive_mul(ring, alpha, &naive_mul(ring, alpha, &p, h), &q).is_empty()
                    });
                    ensure(got == want, || format!("{}: p {p:?} q {q:?}", e.name))?;
                    agreed += 1;
                }
            }
        }
    }
    Ok(format!(
        "{agreed} pairs over {} entries, full agreement",
        entries.len()
    ))
}

fn arithmetic_laws() -> Check {
    let mut triples = 0u64;
    for (ring, alpha) in small_systems() {
        let ctx = SkewRing::new(&ring, &alpha).map_err(|err| err.to_string())?;
        let vecs = all_vectors(&ring, 2);
        let polys = vecs
            .iter()
            .map(|v| ctx.poly(v.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| err.to_string())?;
        let mul = |a: &SkewPoly, b: &SkewPoly| -> Result<SkewPoly, String> {
            ctx.mul(a, b).map_err(|err| err.to_string())
        };
        let add = |a: &SkewPoly, b: &SkewPoly| -> Result<SkewPoly, String> {
            ctx.add(a, b).map_err(|err| err.to_string())
        };
        for (a, av) in polys.iter().zip(&vecs) {
            for (b, bv) in polys.iter().zip(&vecs) {
                let ab = mul(a, b)?;
                ensure(
                    trim(&ring, ab.coeffs().to_vec()) == naive_mul(&ring, &alpha, av, bv),
                    || format!("{} with {}: {av:?} * {bv:?}", ring.name(), alpha.name()),
                )?;
                for (c, cv) in polys.iter().zip(&vecs) {
                    ensure(mul(&ab, c)? == mul(a, &mul(b, c)?)?, || {
                        format!("associativity at {av:?} {bv:?} {cv:?}")
                    })?;
                    let left = mul(a, &add(b, c)?)?;
                    let want = naive_add(
                        &ring,
                        &naive_mul(&ring, &alpha, av, bv),
                        &naive_mul(&ring, &alpha, av, cv),
                    );
                    ensure(trim(&ring, left.coeffs().to_vec()) == want, || {
                        format!("left distributivity at {av:?} {bv:?} {cv:?}")
                    })?;
                    ensure(
                        mul(&add(a, b)?, c)? == add(&mul(a, c)?, &mul(b, c)?)?,
                        || format!("right distributivity at {av:?} {bv:?} {cv:?}"),
                    )?;
                    triples += 1;
                }
            }
        }
    }

    let rings = small_rings();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = 0;
    let cases = 10_000;
    for _ in 0..cases {
        let ring = &rings[rng.gen_range(0..rings.len())];
        let id = Endomorphism::identity(ring);
        let ctx = SkewRing::new(ring, &id).map_err(|err| err.to_string())?;
        let n = ring.size() as u32;
        let plen = rng.gen_range(0..6);
        let p: Vec<Elem> = (0..plen).map(|_| Elem::new(rng.gen_range(0..n))).collect();
        let qlen = rng.gen_range(0..6);
        let q: Vec<Elem> = (0..qlen).map(|_| Elem::new(rng.gen_range(0..n))).collect();
        let mut want = vec![ring.zero(); (p.len() + q.len()).saturating_sub(1)];
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in q.iter().enumerate() {
                want[i + j] = ring.add(want[i + j], ring.mul(a, b));
            }
        }
        let got = ctx
            .mul(
                &ctx.poly(p).map_err(|e| e.to_string())?,
                &ctx.poly(q).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
        if trim(ring, got.coeffs().to_vec()) != trim(ring, want) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || {
        format!("{mismatches} identity-twist mismatches")
    })?;
    Ok(format!(
        "{triples} degree-1 triples exhaustive; {cases} identity-twist cases, 0 mismatches"
    ))
}

fn coefficient_chains() -> Check {
    let mut checked = Vec::new();
    for e in corpus() {
        match chain_harness(&e, Budget::new(WIDE)).map_err(|err| err.to_string())? {
            None => {}
            Some(r) => {
                ensure(r.violations.is_empty(), || {
                    format!("{}: {:?}", e.name, r.violations)
                })?;
                checked.push(format!("{} ({} triples)", e.name, r.triples));
            }
        }
    }
    ensure(!checked.is_empty(), || {
        "no entry passes alpha-skew at degree 1".into()
    })?;
    Ok(format!("all chains vanish: {}", checked.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "trivial extension failure witness",
            Duration::from_secs(10),
            trivial_extension_witness,
        ),
        ("swap on Z2 + Z2", Duration::from_secs(5), swap_entry),
        (
            "implication matrix at degree 2",
            Duration::from_secs(120),
            implication_matrix,
        ),
        (
            "relabeling transport",
            Duration::from_secs(120),
            relabeling_transport,
        ),
        (
            "plain, Laurent and series agreement",
            Duration::from_secs(120),
            laurent_and_series,
        ),
        (
            "sandwich check against brute force",
            Duration::from_secs(60),
            sandwich_oracle,
        ),
        (
            "skew arithmetic laws",
            Duration::from_secs(60),
            arithmetic_laws,
        ),
        (
            "coefficient chains",
            Duration::from_secs(120),
            coefficient_chains,
        ),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (mark, detail) = match result {
            Ok(_) if elapsed > limit => ("FAIL", format!("took {elapsed:.2?}, limit {limit:?}")),
            Ok(msg) => ("PASS", msg),
            Err(msg) => ("FAIL", msg),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!(
            "{mark} criterion {}: {name} [{elapsed:.2?}] {detail}",
            n + 1
        );
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
