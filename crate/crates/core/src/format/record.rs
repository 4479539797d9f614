use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decide::{ElementWitness, Envelope, Outcome, PolyWitness, PropertyId, Verdict, Witness};
use crate::ring::{Elem, Endomorphism, FiniteRing, RingError};
use crate::skew::render_terms;

use super::{FormatError, RingDefinition};

pub const VERDICT_SCHEMA: &str = "skewring-verdict/1";

/// A verdict with enough context to rebuild the ring and replay it.
///
/// Witness elements are stored as carrier indices together with their
/// labels and the polynomials in text form. The indices are authoritative;
/// the labels and texts must agree with them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub schema_version: String,
    pub property: PropertyId,
    pub ring: String,
    pub endomorphism: String,
    pub outcome: OutcomeTag,
    pub envelope: Envelope,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub definition: RingDefinition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutcomeTag {
    Holds,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessRecord {
    Elements {
        elements: Vec<u64>,
        labels: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        value_label: Option<String>,
    },
    Polynomials {
        p_min: i64,
        p: Vec<u64>,
        p_text: String,
        q_min: i64,
        q: Vec<u64>,
        q_text: String,
        pair: [i64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        middle: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        middle_label: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        power: Option<i64>,
        value: u64,
        value_label: String,
    },
}

#[derive(Debug, Error)]
pub enum RecordError {
    /// The document cannot be read or refers to elements that do not exist.
    #[error(transparent)]
    Invalid(#[from] FormatError),
    /// The document is well formed but contradicts itself.
    #[error("inconsistent record: {0}")]
    Inconsistent(String),
}

impl From<RingError> for RecordError {
    fn from(e: RingError) -> Self {
        RecordError::Invalid(FormatError::Ring(e))
    }
}

impl From<toml::de::Error> for RecordError {
    fn from(e: toml::de::Error) -> Self {
        RecordError::Invalid(FormatError::Toml(e))
    }
}

fn index(e: Elem) -> u64 {
    e.index() as u64
}

fn label(ring: &FiniteRing, e: Elem) -> String {
    ring.label(e).to_string()
}

impl VerdictRecord {
    pub fn new(
        definition: &RingDefinition,
        ring: &FiniteRing,
        alpha: &Endomorphism,
        verdict: &Verdict,
    ) -> Self {
        let witness = verdict.witness().map(|w| match w {
            Witness::Elements(w) => WitnessRecord::Elements {
                elements: w.elements.iter().map(|&e| index(e)).collect(),
                labels: w.elements.iter().map(|&e| label(ring, e)).collect(),
                value: w.value.map(index),
                value_label: w.value.map(|e| label(ring, e)),
            },
            Witness::Polynomials(w) => WitnessRecord::Polynomials {
                p_min: w.p_min,
                p: w.p.iter().map(|&e| index(e)).collect(),
                p_text: render_terms(ring, w.p_min, &w.p),
                q_min: w.q_min,
                q: w.q.iter().map(|&e| index(e)).collect(),
                q_text: render_terms(ring, w.q_min, &w.q),
                pair: [w.pair.0, w.pair.1],
                middle: w.middle.map(index),
                middle_label: w.middle.map(|e| label(ring, e)),
                power: w.power,
                value: index(w.value),
                value_label: label(ring, w.value),
            },
        });
        VerdictRecord {
            schema_version: VERDICT_SCHEMA.to_string(),
            property: verdict.property,
            ring: definition.label.clone(),
            endomorphism: alpha.name().to_string(),
            outcome: if verdict.holds() {
                OutcomeTag::Holds
            } else {
                OutcomeTag::Fails
            },
            envelope: verdict.envelope,
            witness,
            definition: definition.clone(),
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self, RecordError> {
        let record: VerdictRecord = toml::from_str(s)?;
        if record.schema_version != VERDICT_SCHEMA {
            return Err(FormatError::Schema {
                found: record.schema_version,
                expected: VERDICT_SCHEMA,
            }
            .into());
        }
        record.definition.check_schema()?;
        Ok(record)
    }

    pub fn to_toml_string(&self) -> Result<String, FormatError> {
        Ok(toml::to_string(self)?)
    }

    /// Rebuilds the verdict over `ring`. Indices outside the carrier are
    /// [`RecordError::Invalid`]; labels, texts or an outcome that disagree
    /// with the indices are [`RecordError::Inconsistent`].
    pub fn to_verdict(&self, ring: &FiniteRing) -> Result<Verdict, RecordError> {
        let elem = |i: u64| ring.element(i);
        let elems = |v: &[u64]| v.iter().map(|&i| elem(i)).collect::<Result<Vec<_>, _>>();
        let same = |what: &str, recorded: &str, actual: &str| {
            if recorded == actual {
                Ok(())
            } else {
                Err(RecordError::Inconsistent(format!(
                    "{what} is recorded as `{recorded}` but the indices give `{actual}`"
                )))
            }
        };
        let outcome = match (&self.outcome, &self.witness) {
            (OutcomeTag::Holds, None) => Outcome::HoldsUpTo,
            (OutcomeTag::Holds, Some(_)) => {
                return Err(RecordError::Inconsistent(
                    "a holding verdict carries a witness".into(),
                ))
            }
            (OutcomeTag::Fails, None) => {
                return Err(RecordError::Inconsistent(
                    "a failing verdict has no witness".into(),
                ))
            }
            (
                OutcomeTag::Fails,
                Some(WitnessRecord::Elements {
                    elements,
                    labels,
                    value,
                    value_label,
                }),
            ) => {
                let es = elems(elements)?;
                let value = value.map(elem).transpose()?;
                let actual: Vec<String> = es.iter().map(|&e| label(ring, e)).collect();
                same("elements", &labels.join(", "), &actual.join(", "))?;
                same(
                    "value",
                    value_label.as_deref().unwrap_or(""),
                    &value.map(|v| label(ring, v)).unwrap_or_default(),
                )?;
                Outcome::Fails(Witness::Elements(ElementWitness {
                    elements: es,
                    value,
                }))
            }
            (
                OutcomeTag::Fails,
                Some(WitnessRecord::Polynomials {
                    p_min,
                    p,
                    p_text,
                    q_min,
                    q,
                    q_text,
                    pair,
                    middle,
                    middle_label,
                    power,
                    value,
                    value_label,
                }),
            ) => {
                let (p, q) = (elems(p)?, elems(q)?);
                let middle = middle.map(elem).transpose()?;
                let value = elem(*value)?;
                same("p", p_text, &render_terms(ring, *p_min, &p))?;
                same("q", q_text, &render_terms(ring, *q_min, &q))?;
                same(
                    "middle element",
                    middle_label.as_deref().unwrap_or(""),
                    &middle.map(|m| label(ring, m)).unwrap_or_default(),
                )?;
                same("value", value_label, &label(ring, value))?;
                Outcome::Fails(Witness::Polynomials(PolyWitness {
                    p_min: *p_min,
                    p,
                    q_min: *q_min,
                    q,
                    pair: (pair[0], pair[1]),
                    middle,
                    power: *power,
                    value,
                }))
            }
        };
        Ok(Verdict {
            property: self.property,
            envelope: self.envelope,
            outcome,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decide::{decide, Budget};
    use crate::format::{EndoSpec, RingSpec};

    fn negated_extension() -> RingDefinition {
        RingDefinition::new(
            "t-z4-z4",
            RingSpec::TrivialExtension {
                base: Box::new(RingSpec::Zmod { n: 4 }),
                bimodule: super::super::BimoduleSpec::Regular,
            },
            Some(EndoSpec::builtin("negate_second_component")),
        )
    }

    fn failing_record() -> (RingDefinition, FiniteRing, VerdictRecord) {
        let def = negated_extension();
        let (ring, alpha) = def.build().unwrap();
        let v = decide(
            &ring,
            &alpha,
            PropertyId::QAlphaSkewArmendariz,
            Envelope::Degree { degree: 1 },
            Budget::default(),
        )
        .unwrap();
        let rec = VerdictRecord::new(&def, &ring, &alpha, &v);
        (def, ring, rec)
    }

    #[test]
    fn round_trips_through_toml() {
        let (_, ring, rec) = failing_record();
        let text = rec.to_toml_string().unwrap();
        let back = VerdictRecord::from_toml_str(&text).unwrap();
        assert_eq!(back, rec);
        assert!(!back.to_verdict(&ring).unwrap().holds());
        assert!(text.contains("schema_version = \"skewring-verdict/1\""));
    }

    #[test]
    fn detects_tampering() {
        let (_, ring, mut rec) = failing_record();
        if let Some(WitnessRecord::Polynomials { value_label, .. }) = &mut rec.witness {
            *value_label = "(1,1)".into();
        }
        assert!(matches!(
            rec.to_verdict(&ring),
            Err(RecordError::Inconsistent(_))
        ));

        let (_, ring, mut rec) = failing_record();
        if let Some(WitnessRecord::Polynomials { p, .. }) = &mut rec.witness {
            p[0] = 99;
        }
        assert!(matches!(
            rec.to_verdict(&ring),
            Err(RecordError::Invalid(_))
        ));
    }
}
