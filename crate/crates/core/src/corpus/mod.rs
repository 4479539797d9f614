//! Named finite rings with endomorphisms and the outcomes expected of them.
//!
//! Entries live in a TOML manifest: each names a builder, its parameters,
//! and a list of expected verdicts. Every expectation records where it comes
//! from in `source`: `stated` for claims about the ring made in the
//! literature, `computed` for values obtained by hand calculation, and
//! `immediate` for consequences of the definitions.

mod harness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decide::{
    decide, replay, Budget, DecideError, Envelope, PolyWitness, PropertyId, Verdict, Witness,
};
use crate::format::{BimoduleSpec, EndoSpec, FormatError, OutcomeTag, RingDefinition, RingSpec};
use crate::ring::{Elem, Endomorphism, FiniteRing};
use crate::skew::SkewRing;

pub use harness::{
    affordable_degree, chain_harness, laurent_consistency, run_implication_matrix,
    run_product_check, run_relabeling_transport, series_consistency, transport_witness,
    ChainReport, ConsistencyReport, ImplicationRow, MatrixReport, ProductReport, RowStatus,
    TransportReport, TRANSPORT_PROPERTIES,
};

pub const MANIFEST_SCHEMA: &str = "skewring-corpus/1";

/// The manifest shipped with the crate.
pub const DEFAULT_MANIFEST: &str = include_str!("manifest.toml");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed manifest: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unsupported manifest schema `{0}`")]
    Schema(String),
    #[error("unknown builder `{0}`")]
    UnknownBuilder(String),
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("duplicate entry `{0}`")]
    DuplicateEntry(String),
    #[error("bad parameter for `{builder}`: {reason}")]
    BadParameter { builder: String, reason: String },
    #[error(transparent)]
    Format(#[from] FormatError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Stated,
    Computed,
    Immediate,
}

/// A known failure witness, written with element labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnownWitness {
    pub p: String,
    pub q: String,
    pub pair: [i64; 2],
    #[serde(default)]
    pub middle: Option<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub property: PropertyId,
    pub envelope: Envelope,
    pub outcome: OutcomeTag,
    pub source: Source,
    /// Another witness that must replay, besides the one the decider finds.
    #[serde(default)]
    pub witness: Option<KnownWitness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub k: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub name: String,
    pub builder: String,
    #[serde(default)]
    pub params: Params,
    /// Excluded from the stated-claim checks of the harness.
    #[serde(default)]
    pub exploratory: bool,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: String,
    #[serde(default, rename = "entry")]
    pub entries: Vec<EntrySpec>,
}

/// A built entry.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub definition: RingDefinition,
    pub ring: FiniteRing,
    pub alpha: Endomorphism,
    pub exploratory: bool,
    pub expectations: Vec<Expectation>,
}

impl Manifest {
    pub fn from_toml_str(s: &str) -> Result<Self, CorpusError> {
        let m: Manifest = toml::from_str(s)?;
        if m.schema_version != MANIFEST_SCHEMA {
            return Err(CorpusError::Schema(m.schema_version));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &m.entries {
            if !seen.insert(e.name.as_str()) {
                return Err(CorpusError::DuplicateEntry(e.name.clone()));
            }
        }
        Ok(m)
    }

    pub fn default_manifest() -> Self {
        Self::from_toml_str(DEFAULT_MANIFEST).expect("the bundled manifest is valid")
    }

    pub fn entry(&self, name: &str) -> Result<&EntrySpec, CorpusError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| CorpusError::UnknownEntry(name.to_string()))
    }

    /// Builds every entry, sorted by name.
    pub fn build_all(&self) -> Result<Vec<CorpusEntry>, CorpusError> {
        let mut out = self
            .entries
            .iter()
            .map(EntrySpec::build)
            .collect::<Result<Vec<_>, _>>()?;
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }
}

impl EntrySpec {
    pub fn build(&self) -> Result<CorpusEntry, CorpusError> {
        let definition = definition(&self.name, &self.builder, &self.params)?;
        let (ring, alpha) = definition.build()?;
        Ok(CorpusEntry {
            name: self.name.clone(),
            definition,
            ring,
            alpha,
            exploratory: self.exploratory,
            expectations: self.expect.clone(),
        })
    }
}

fn bad(builder: &str, reason: &str) -> CorpusError {
    CorpusError::BadParameter {
        builder: builder.to_string(),
        reason: reason.to_string(),
    }
}

/// The ring definition produced by `builder`.
pub fn definition(
    label: &str,
    builder: &str,
    params: &Params,
) -> Result<RingDefinition, CorpusError> {
    let field = |default: u32| -> Result<u32, CorpusError> {
        let p = params.p.unwrap_or(default);
        if !crate::ring::is_prime(p as u64) {
            return Err(bad(builder, &format!("{p} is not prime")));
        }
        if p == 2 {
            return Err(bad(
                builder,
                "over a field of characteristic 2 the sign flip is the identity map",
            ));
        }
        Ok(p)
    };
    let (ring, endo) = match builder {
        "swap_on_z2_squared" => swap_on_z2_squared(),
        "negated_module_over_z4" => negated_module_over_z4(),
        "scaled_module_over_z5" => scaled_module_over_z5(),
        "upper_row_matrices" => upper_row_matrices(field(3)?),
        "right_column_matrices" => right_column_matrices(field(3)?),
        "corner_matrices" => corner_matrices(field(3)?),
        "field_frobenius" => {
            let p = params.p.unwrap_or(2);
            let k = params.k.unwrap_or(2);
            (
                RingSpec::GaloisField { p, k },
                EndoSpec::builtin("frobenius"),
            )
        }
        other => return Err(CorpusError::UnknownBuilder(other.to_string())),
    };
    Ok(RingDefinition::new(label, ring, Some(endo)))
}

fn zmod(n: usize) -> Box<RingSpec> {
    Box::new(RingSpec::Zmod { n })
}

/// `ℤ₂ ⊕ ℤ₂` with the coordinate swap.
pub fn swap_on_z2_squared() -> (RingSpec, EndoSpec) {
    (
        RingSpec::Product {
            left: zmod(2),
            right: zmod(2),
        },
        EndoSpec::builtin("swap"),
    )
}

/// `T(ℤ₄, ℤ₄)` with `(a, b) ↦ (a, -b)`.
pub fn negated_module_over_z4() -> (RingSpec, EndoSpec) {
    (
        RingSpec::TrivialExtension {
            base: zmod(4),
            bimodule: BimoduleSpec::Regular,
        },
        EndoSpec::builtin("negate_second_component"),
    )
}

/// `T(ℤ₅, ℤ₅)` with `(a, s) ↦ (a, 3s)`.
pub fn scaled_module_over_z5() -> (RingSpec, EndoSpec) {
    let images = (0..25u32)
        .map(|x| (x / 5) * 5 + (3 * (x % 5)) % 5)
        .collect();
    (
        RingSpec::TrivialExtension {
            base: zmod(5),
            bimodule: BimoduleSpec::Regular,
        },
        EndoSpec::images(images),
    )
}

/// Pairs `(a, b)` over `ℤ_p` stored at `a * p + b`, with the given product.
fn pair_ring(name: &str, p: u32, mul: impl Fn(u32, u32, u32, u32) -> (u32, u32)) -> RingSpec {
    let n = (p * p) as usize;
    let split = |x: usize| (x as u32 / p, x as u32 % p);
    let join = |(a, b): (u32, u32)| (a % p) * p + b % p;
    let table = |f: &dyn Fn(u32, u32, u32, u32) -> (u32, u32)| -> Vec<Vec<u32>> {
        (0..n)
            .map(|x| {
                let (a, b) = split(x);
                (0..n)
                    .map(|y| {
                        let (c, d) = split(y);
                        join(f(a, b, c, d))
                    })
                    .collect()
            })
            .collect()
    };
    RingSpec::Table {
        name: Some(format!("{name} over Z{p}")),
        labels: Some(
            (0..n)
                .map(|x| {
                    let (a, b) = split(x);
                    format!("({a},{b})")
                })
                .collect(),
        ),
        add: table(&|a, b, c, d| (a + c, b + d)),
        mul: table(&|a, b, c, d| mul(a, b, c, d)),
    }
}

fn pair_map(p: u32, f: impl Fn(u32, u32) -> (u32, u32)) -> EndoSpec {
    EndoSpec::images(
        (0..p * p)
            .map(|x| {
                let (a, b) = f(x / p, x % p);
                (a % p) * p + b % p
            })
            .collect(),
    )
}

/// Matrices `[[a, b], [0, 0]]` stored as `(a, b)`, with `(a, b) ↦ (a, -b)`.
/// The ring has a left identity but no two-sided one.
pub fn upper_row_matrices(p: u32) -> (RingSpec, EndoSpec) {
    (
        pair_ring("upper row matrices", p, |a, _b, c, d| (a * c, a * d)),
        pair_map(p, |a, b| (a, p - b)),
    )
}

/// Matrices `[[0, a], [0, b]]` stored as `(a, b)`, with `(a, b) ↦ (-a, b)`.
pub fn right_column_matrices(p: u32) -> (RingSpec, EndoSpec) {
    (
        pair_ring("right column matrices", p, |a, b, _c, d| (a * d, b * d)),
        pair_map(p, |a, b| (p - a, b)),
    )
}

/// Matrices `[[0, d], [0, 0]]` over `ℤ_p`: zero multiplication, with
/// `d ↦ -d`.
pub fn corner_matrices(p: u32) -> (RingSpec, EndoSpec) {
    let n = p as usize;
    (
        RingSpec::Table {
            name: Some(format!("corner matrices over Z{p}")),
            labels: None,
            add: (0..n)
                .map(|a| (0..n).map(|b| ((a + b) % n) as u32).collect())
                .collect(),
            mul: vec![vec![0; n]; n],
        },
        EndoSpec::images((0..p).map(|a| (p - a) % p).collect()),
    )
}

/// Outcome of one expectation.
#[derive(Clone, Debug)]
pub struct ExpectationReport {
    pub entry: String,
    pub expectation: Expectation,
    pub verdict: Result<Verdict, DecideError>,
    /// Empty when the expectation is met.
    pub problems: Vec<String>,
}

impl ExpectationReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Builds the polynomial witness described by `known` over `envelope`.
pub fn known_witness(
    ring: &FiniteRing,
    alpha: &Endomorphism,
    envelope: Envelope,
    known: &KnownWitness,
) -> Result<PolyWitness, String> {
    let Envelope::Degree { degree } = envelope else {
        return Err(format!(
            "known witnesses are only supported for degree envelopes, not `{envelope}`"
        ));
    };
    let ctx = SkewRing::new(ring, alpha).map_err(|e| e.to_string())?;
    let pad = |text: &str| -> Result<Vec<Elem>, String> {
        let mut c = ctx
            .parse_poly(text)
            .map_err(|e| e.to_string())?
            .coeffs()
            .to_vec();
        if c.len() > degree + 1 {
            return Err(format!("`{text}` has degree above {degree}"));
        }
        c.resize(degree + 1, ring.zero());
        Ok(c)
    };
    let elem = |label: &str| {
        ring.lookup(label)
            .ok_or_else(|| format!("unknown element `{label}`"))
    };
    Ok(PolyWitness {
        p_min: 0,
        p: pad(&known.p)?,
        q_min: 0,
        q: pad(&known.q)?,
        pair: (known.pair[0], known.pair[1]),
        middle: known.middle.as_deref().map(elem).transpose()?,
        power: None,
        value: elem(&known.value)?,
    })
}

/// Runs every expectation of `entry`, replaying each failure witness.
pub fn check_expectations(entry: &CorpusEntry, budget: Budget) -> Vec<ExpectationReport> {
    entry
        .expectations
        .iter()
        .map(|exp| {
            let verdict = decide(
                &entry.ring,
                &entry.alpha,
                exp.property,
                exp.envelope,
                budget,
            );
            let mut problems = Vec::new();
            match &verdict {
                Err(e) => problems.push(e.to_string()),
                Ok(v) => {
                    let actual = if v.holds() {
                        OutcomeTag::Holds
                    } else {
                        OutcomeTag::Fails
                    };
                    if actual != exp.outcome {
                        problems.push(format!("expected {:?}, got {:?}", exp.outcome, actual));
                    }
                    if !v.holds() {
                        if let Err(e) = replay(&entry.ring, &entry.alpha, v) {
                            problems.push(format!("decider witness does not replay: {e}"));
                        }
                    }
                }
            }
            if let Some(known) = &exp.witness {
                let replayed = known_witness(&entry.ring, &entry.alpha, exp.envelope, known)
                    .and_then(|w| {
                        let v = Verdict {
                            property: exp.property,
                            envelope: exp.envelope,
                            outcome: crate::decide::Outcome::Fails(Witness::Polynomials(w)),
                        };
                        replay(&entry.ring, &entry.alpha, &v).map_err(|e| e.to_string())
                    });
                if let Err(e) = replayed {
                    problems.push(format!("listed witness does not replay: {e}"));
                }
            }
            ExpectationReport {
                entry: entry.name.clone(),
                expectation: exp.clone(),
                verdict,
                problems,
            }
        })
        .collect()
}
