//! Consistency checks that run the deciders across corpus entries and
//! compare their verdicts with known implications between the properties.

use std::collections::HashMap;

use crate::decide::{
    decide, replay, Budget, DecideError, Envelope, Outcome, PolyWitness, PropertyId, Tail, Verdict,
    Witness,
};
use crate::ring::{
    direct_product, random_relabeling, Elem, Endomorphism, FiniteRing, RingIsomorphism,
};

use super::CorpusEntry;

/// The properties whose verdicts must survive relabeling.
pub const TRANSPORT_PROPERTIES: [PropertyId; 4] = [
    PropertyId::AlphaSkewArmendariz,
    PropertyId::AlphaArmendariz,
    PropertyId::QAlphaArmendariz,
    PropertyId::QAlphaSkewArmendariz,
];

/// The largest degree `≤ wanted` whose search space fits the budget.
pub fn affordable_degree(ring: &FiniteRing, wanted: usize, budget: Budget) -> Option<usize> {
    (0..=wanted)
        .rev()
        .find(|d| budget.admits(Budget::space(ring.size(), 2 * (d + 1))))
}

fn map_witness(w: &PolyWitness, f: impl Fn(Elem) -> Elem) -> PolyWitness {
    PolyWitness {
        p_min: w.p_min,
        p: w.p.iter().map(|&e| f(e)).collect(),
        q_min: w.q_min,
        q: w.q.iter().map(|&e| f(e)).collect(),
        pair: w.pair,
        middle: w.middle.map(&f),
        power: w.power,
        value: f(w.value),
    }
}

fn poly_witness(v: &Verdict) -> Option<&PolyWitness> {
    match v.witness() {
        Some(Witness::Polynomials(w)) => Some(w),
        _ => None,
    }
}

fn failing(property: PropertyId, envelope: Envelope, w: PolyWitness) -> Verdict {
    Verdict {
        property,
        envelope,
        outcome: Outcome::Fails(Witness::Polynomials(w)),
    }
}

fn outcome_word(v: &Verdict) -> &'static str {
    if v.holds() {
        "holds"
    } else {
        "fails"
    }
}

#[derive(Clone, Debug)]
pub struct TransportReport {
    pub entry: String,
    pub degree: usize,
    pub seeds: usize,
    pub comparisons: usize,
    pub mismatches: Vec<String>,
}

/// Compares verdicts on `(R, α)` with those on `(S, σασ⁻¹)` for random
/// relabelings `σ: R → S`. A failure witness on `R` is carried through `σ`
/// and must replay on `S`.
pub fn run_relabeling_transport(
    entry: &CorpusEntry,
    seeds: impl IntoIterator<Item = u64>,
    degree: usize,
    budget: Budget,
) -> Result<TransportReport, DecideError> {
    let envelope = Envelope::Degree { degree };
    let originals = TRANSPORT_PROPERTIES
        .iter()
        .map(|&p| decide(&entry.ring, &entry.alpha, p, envelope, budget))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = TransportReport {
        entry: entry.name.clone(),
        degree,
        seeds: 0,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    for seed in seeds {
        report.seeds += 1;
        let (s, sigma) = random_relabeling(&entry.ring, seed);
        let beta = sigma
            .transport(&s, &entry.alpha)
            .expect("conjugating a valid endomorphism by an isomorphism is valid");
        for (v, &property) in originals.iter().zip(&TRANSPORT_PROPERTIES) {
            report.comparisons += 1;
            let moved = decide(&s, &beta, property, envelope, budget)?;
            if moved.holds() != v.holds() || moved.envelope != v.envelope {
                report.mismatches.push(format!(
                    "seed {seed}, {property}: {} on the original, {} after relabeling",
                    outcome_word(v),
                    outcome_word(&moved)
                ));
                continue;
            }
            let Some(w) = poly_witness(v) else { continue };
            let carried = failing(property, envelope, transport_witness(&sigma, w));
            for (what, check) in [
                ("relabeled witness", &moved),
                ("transported witness", &carried),
            ] {
                if let Err(e) = replay(&s, &beta, check) {
                    report.mismatches.push(format!(
                        "seed {seed}, {property}: {what} fails to replay: {e}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct ProductReport {
    pub property: PropertyId,
    pub degree: usize,
    pub left_holds: bool,
    pub right_holds: bool,
    pub product: Verdict,
}

impl ProductReport {
    /// Whether the one-way implication from the factors to the product holds.
    pub fn consistent(&self) -> bool {
        !(self.left_holds && self.right_holds) || self.product.holds()
    }
}

/// Decides `property` on both factors and on `R₁ ⊕ R₂` with the
/// componentwise map.
pub fn run_product_check(
    left: (&FiniteRing, &Endomorphism),
    right: (&FiniteRing, &Endomorphism),
    property: PropertyId,
    degree: usize,
    budget: Budget,
) -> Result<ProductReport, DecideError> {
    let envelope = Envelope::Degree { degree };
    let l = decide(left.0, left.1, property, envelope, budget)?;
    let r = decide(right.0, right.1, property, envelope, budget)?;
    let ring = direct_product(left.0, right.0).map_err(|e| DecideError::Skew(e.into()))?;
    let alpha =
        Endomorphism::product(&ring, left.1, right.1).map_err(|e| DecideError::Skew(e.into()))?;
    let product = decide(&ring, &alpha, property, envelope, budget)?;
    Ok(ProductReport {
        property,
        degree,
        left_holds: l.holds(),
        right_holds: r.holds(),
        product,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    /// Some premise does not hold.
    Vacuous,
    /// Every premise and every conclusion holds.
    Confirmed,
    /// Every premise holds and some conclusion fails.
    Violated(String),
}

#[derive(Clone, Debug)]
pub struct ImplicationRow {
    pub rule: &'static str,
    pub status: RowStatus,
}

#[derive(Clone, Debug)]
pub struct MatrixReport {
    pub entry: String,
    pub degree: usize,
    pub rows: Vec<ImplicationRow>,
}

impl MatrixReport {
    pub fn violations(&self) -> impl Iterator<Item = &ImplicationRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.status, RowStatus::Violated(_)))
    }
}

#[derive(Clone, Copy)]
enum Premise {
    Holds(PropertyId),
    Injective,
    Surjective,
    FixesOne,
}

struct Rule {
    name: &'static str,
    premises: &'static [Premise],
    conclusions: &'static [PropertyId],
}

const RULES: &[Rule] = {
    use Premise::*;
    use PropertyId::*;
    &[
        Rule {
            name: "rigid implies reduced",
            premises: &[Holds(Rigid)],
            conclusions: &[Reduced],
        },
        Rule {
            name: "reduced implies q-alpha-skew",
            premises: &[Holds(Reduced)],
            conclusions: &[QAlphaSkewArmendariz],
        },
        Rule {
            name: "rigid implies q-alpha-skew",
            premises: &[Holds(Rigid)],
            conclusions: &[QAlphaSkewArmendariz],
        },
        Rule {
            name: "semicommutative alpha-skew with alpha(1) = 1 implies q-alpha-skew",
            premises: &[Holds(Semicommutative), FixesOne, Holds(AlphaSkewArmendariz)],
            conclusions: &[QAlphaSkewArmendariz],
        },
        Rule {
            name: "domain with injective map implies q-alpha-skew",
            premises: &[Holds(Domain), Injective],
            conclusions: &[QAlphaSkewArmendariz],
        },
        Rule {
            name: "domain with injective map implies q-alpha",
            premises: &[Holds(Domain), Injective],
            conclusions: &[QAlphaArmendariz],
        },
        Rule {
            name: "alpha-skew with surjective map implies q-alpha-skew",
            premises: &[Surjective, Holds(AlphaSkewArmendariz)],
            conclusions: &[QAlphaSkewArmendariz],
        },
        Rule {
            name: "alpha-armendariz with surjective map implies q-alpha-skew",
            premises: &[Surjective, Holds(AlphaArmendariz)],
            conclusions: &[QAlphaSkewArmendariz],
        },
    ]
};

/// Verdicts of one entry, computed on first use.
struct Memo<'a> {
    entry: &'a CorpusEntry,
    degree: usize,
    budget: Budget,
    cache: HashMap<PropertyId, Verdict>,
}

impl Memo<'_> {
    fn verdict(&mut self, property: PropertyId) -> Result<&Verdict, DecideError> {
        if !self.cache.contains_key(&property) {
            let envelope = if property.is_element_level() {
                Envelope::Exhaustive
            } else {
                Envelope::Degree {
                    degree: self.degree,
                }
            };
            let v = decide(
                &self.entry.ring,
                &self.entry.alpha,
                property,
                envelope,
                self.budget,
            )?;
            self.cache.insert(property, v);
        }
        Ok(&self.cache[&property])
    }

    fn premise(&mut self, p: Premise) -> Result<bool, DecideError> {
        let alpha = &self.entry.alpha;
        Ok(match p {
            Premise::Holds(property) => self.verdict(property)?.holds(),
            Premise::Injective => alpha.is_injective(),
            Premise::Surjective => alpha.is_surjective(),
            Premise::FixesOne => alpha.preserves_one() == Some(true),
        })
    }
}

/// Evaluates every implication row on `entry` at the largest affordable
/// degree `≤ degree`. Premises are checked in order and evaluation stops at
/// the first one that fails.
pub fn run_implication_matrix(
    entry: &CorpusEntry,
    degree: usize,
    budget: Budget,
) -> Result<MatrixReport, DecideError> {
    let degree = affordable_degree(&entry.ring, degree, budget).unwrap_or(0);
    let mut memo = Memo {
        entry,
        degree,
        budget,
        cache: HashMap::new(),
    };
    let mut rows = Vec::new();
    for rule in RULES {
        let mut applies = true;
        for &p in rule.premises {
            if !memo.premise(p)? {
                applies = false;
                break;
            }
        }
        let status = if !applies {
            RowStatus::Vacuous
        } else {
            let mut broken = Vec::new();
            for &c in rule.conclusions {
                if !memo.verdict(c)?.holds() {
                    broken.push(format!("{c} fails at degree {degree}"));
                }
            }
            if broken.is_empty() {
                RowStatus::Confirmed
            } else {
                RowStatus::Violated(broken.join("; "))
            }
        };
        rows.push(ImplicationRow {
            rule: rule.name,
            status,
        });
    }
    Ok(MatrixReport {
        entry: entry.name.clone(),
        degree,
        rows,
    })
}

/// A plain verdict next to its Laurent counterpart.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub entry: String,
    pub plain: Verdict,
    pub laurent: Verdict,
    pub problems: Vec<String>,
}

impl ConsistencyReport {
    pub fn agrees(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Multiplies `p` on the left by `x^m` and `q` on the right by `x^t`. The
/// coefficient `a_i` of `p` becomes `α^m(a_i)` at exponent `i + m`, while
/// `b_j` moves to exponent `j + t` unchanged, so the offending product
/// `a_i r α^i(b_j)` becomes `α^m` of itself with middle element `α^m(r)`.
/// Negative shifts undo the map.
fn shift_witness(alpha: &Endomorphism, w: &PolyWitness, m: i64, t: i64) -> PolyWitness {
    let am = |e: Elem| alpha.apply_pow(m, e);
    PolyWitness {
        p_min: w.p_min + m,
        p: w.p.iter().map(|&e| am(e)).collect(),
        q_min: w.q_min + t,
        q: w.q.clone(),
        pair: (w.pair.0 + m, w.pair.1 + t),
        middle: w.middle.map(am),
        power: w.power,
        value: am(w.value),
    }
}

fn compare_shifted(
    entry: &CorpusEntry,
    plain: Verdict,
    laurent: Verdict,
    m: i64,
    t: i64,
) -> ConsistencyReport {
    let mut problems = Vec::new();
    if plain.holds() != laurent.holds() {
        problems.push(format!(
            "{} {}, but {} {}",
            plain.property,
            outcome_word(&plain),
            laurent.property,
            outcome_word(&laurent)
        ));
    }
    if let Some(w) = poly_witness(&laurent) {
        let moved = failing(
            plain.property,
            plain.envelope,
            shift_witness(&entry.alpha, w, m, t),
        );
        if let Err(e) = replay(&entry.ring, &entry.alpha, &moved) {
            problems.push(format!(
                "shifted Laurent witness does not replay as a plain one: {e}"
            ));
        }
    }
    if let Some(w) = poly_witness(&plain) {
        let moved = failing(
            laurent.property,
            laurent.envelope,
            shift_witness(&entry.alpha, w, -m, -t),
        );
        if let Err(e) = replay(&entry.ring, &entry.alpha, &moved) {
            problems.push(format!(
                "shifted plain witness does not replay as a Laurent one: {e}"
            ));
        }
    }
    ConsistencyReport {
        entry: entry.name.clone(),
        plain,
        laurent,
        problems,
    }
}

/// Plain degree `≤ d` against the window `x^-1 .. x^(d-1)` for both
/// factors. Returns `None` when `α` is not invertible.
pub fn laurent_consistency(
    entry: &CorpusEntry,
    degree: usize,
    budget: Budget,
) -> Result<Option<ConsistencyReport>, DecideError> {
    if !entry.alpha.is_automorphism() {
        return Ok(None);
    }
    let m = degree.min(1);
    let plain = decide(
        &entry.ring,
        &entry.alpha,
        PropertyId::QAlphaSkewArmendariz,
        Envelope::Degree { degree },
        budget,
    )?;
    let laurent = decide(
        &entry.ring,
        &entry.alpha,
        PropertyId::LaurentQAlphaSkew,
        Envelope::Window {
            m,
            n: degree - m,
            t: m,
            s: degree - m,
        },
        budget,
    )?;
    Ok(Some(compare_shifted(
        entry, plain, laurent, m as i64, m as i64,
    )))
}

/// Series known below `x^order` against Laurent series from `x^-1` known
/// below `x^(order - 1)`. The order is lowered until the search fits the
/// budget; the verdicts record the order used.
pub fn series_consistency(
    entry: &CorpusEntry,
    order: i64,
    budget: Budget,
) -> Result<Option<ConsistencyReport>, DecideError> {
    if !entry.alpha.is_automorphism() || order < 2 {
        return Ok(None);
    }
    let order = match affordable_degree(&entry.ring, order as usize - 1, budget) {
        Some(d) if d >= 1 => d as i64 + 1,
        _ => return Ok(None),
    };
    let plain = decide(
        &entry.ring,
        &entry.alpha,
        PropertyId::PowerseriesQAlphaSkew,
        Envelope::Truncated {
            order,
            lead: 0,
            tail: Tail::Free,
        },
        budget,
    )?;
    let laurent = decide(
        &entry.ring,
        &entry.alpha,
        PropertyId::LaurentPowerseriesQAlphaSkew,
        Envelope::Truncated {
            order: order - 1,
            lead: 1,
            tail: Tail::Free,
        },
        budget,
    )?;
    Ok(Some(compare_shifted(entry, plain, laurent, 1, 1)))
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub entry: String,
    /// Triples `(P₁, P₂, P₃)` of degree `≤ 1` with `P₁P₂P₃ = 0`.
    pub triples: u64,
    pub violations: Vec<String>,
}

/// Checks, on an entry that passes the alpha-skew condition at degree 1,
/// that every coefficient chain `a_i α^i(b_j) α^(i+j)(c_k)` of a triple of
/// degree `≤ 1` polynomials with zero product vanishes. Returns `None` when
/// the entry fails the condition.
///
/// Pairs `(P₁, P₂)` are grouped by their product `W`. For a group and every
/// `P₃` with `W P₃ = 0`, all chains vanish exactly when each partial chain
/// `a_i α^i(b_j)` seen in the group kills `α^(i+j)(c_k)` for each `c_k`
/// seen among those `P₃`.
#[allow(clippy::needless_range_loop)]
pub fn chain_harness(
    entry: &CorpusEntry,
    budget: Budget,
) -> Result<Option<ChainReport>, DecideError> {
    let (ring, alpha) = (&entry.ring, &entry.alpha);
    let v = decide(
        ring,
        alpha,
        PropertyId::AlphaSkewArmendariz,
        Envelope::Degree { degree: 1 },
        budget,
    )?;
    if !v.holds() {
        return Ok(None);
    }
    let n = ring.size();
    let elems: Vec<Elem> = ring.elements().collect();
    let polys: Vec<[Elem; 2]> = elems
        .iter()
        .flat_map(|&a| elems.iter().map(move |&b| [a, b]))
        .collect();
    let pow = |e: i64, x: Elem| alpha.apply_pow(e, x);

    // partial[(i, j)] marks every a_i α^i(b_j) seen in the group.
    let mut groups: HashMap<[Elem; 3], (u64, [Vec<bool>; 4])> = HashMap::new();
    for p in &polys {
        for q in &polys {
            let w = [
                ring.mul(p[0], q[0]),
                ring.add(ring.mul(p[0], q[1]), ring.mul(p[1], pow(1, q[0]))),
                ring.mul(p[1], pow(1, q[1])),
            ];
            let g = groups
                .entry(w)
                .or_insert_with(|| (0, std::array::from_fn(|_| vec![false; n])));
            g.0 += 1;
            for i in 0..2 {
                for j in 0..2 {
                    g.1[2 * i + j][ring.mul(p[i], pow(i as i64, q[j])).index()] = true;
                }
            }
        }
    }

    let mut report = ChainReport {
        entry: entry.name.clone(),
        triples: 0,
        violations: Vec::new(),
    };
    let mut keys: Vec<&[Elem; 3]> = groups.keys().collect();
    keys.sort();
    for w in keys {
        let (count, partial) = &groups[w];
        let mut seen = [vec![false; n], vec![false; n]];
        let mut zero_count = 0u64;
        for c in &polys {
            let prod = [
                ring.mul(w[0], c[0]),
                ring.add(ring.mul(w[0], c[1]), ring.mul(w[1], pow(1, c[0]))),
                ring.add(ring.mul(w[1], pow(1, c[1])), ring.mul(w[2], pow(2, c[0]))),
                ring.mul(w[2], pow(2, c[1])),
            ];
            if prod.iter().all(|&x| ring.is_zero(x)) {
                zero_count += 1;
                seen[0][c[0].index()] = true;
                seen[1][c[1].index()] = true;
            }
        }
        report.triples += count * zero_count;
        for i in 0..2usize {
            for j in 0..2usize {
                for k in 0..2usize {
                    for x in elems.iter().filter(|x| partial[2 * i + j][x.index()]) {
                        for c in elems.iter().filter(|c| seen[k][c.index()]) {
                            let value = ring.mul(*x, pow((i + j) as i64, *c));
                            if !ring.is_zero(value) && report.violations.len() < 20 {
                                report.violations.push(format!(
                                    "chain ({i},{j},{k}) through {} and {} gives {}",
                                    ring.label(*x),
                                    ring.label(*c),
                                    ring.label(value)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(Some(report))
}

/// Applies an isomorphism to every element of a witness.
pub fn transport_witness(sigma: &RingIsomorphism, w: &PolyWitness) -> PolyWitness {
    map_witness(w, |e| sigma.apply(e))
}
