//! TOML documents: ring definitions and verdict records.
//!
//! A ring definition looks like
//!
//! ```toml
//! schema_version = "skewring/1"
//! label = "z2-squared-swap"
//!
//! [ring]
//! kind = "product"
//! left = { kind = "zmod", n = 2 }
//! right = { kind = "zmod", n = 2 }
//!
//! [endomorphism]
//! builtin = "swap"
//! ```
//!
//! The endomorphism table takes exactly one of `builtin`, `images`,
//! `induced_from` (quotients) or `components` (products). Without it the
//! identity map is used.

mod record;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{
    Bimodule, Elem, Endomorphism, FiniteRing, Ideal, QuotientRing, RingBuilder, RingError,
};

pub use record::{OutcomeTag, RecordError, VerdictRecord, WitnessRecord, VERDICT_SCHEMA};

pub const DEFINITION_SCHEMA: &str = "skewring/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("could not serialize: {0}")]
    Serialize(#[from] toml::ser::Error),
    #[error("unsupported schema version `{found}`, expected `{expected}`")]
    Schema {
        found: String,
        expected: &'static str,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("endomorphism: {0}")]
    Endomorphism(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDefinition {
    pub schema_version: String,
    pub label: String,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endomorphism: Option<EndoSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    Product {
        left: Box<RingSpec>,
        right: Box<RingSpec>,
    },
    TrivialExtension {
        base: Box<RingSpec>,
        bimodule: BimoduleSpec,
    },
    /// Rows indexed by the left operand.
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        add: Vec<Vec<u32>>,
        mul: Vec<Vec<u32>>,
    },
    /// The quotient by the ideal generated by `generators`.
    Quotient {
        base: Box<RingSpec>,
        generators: Vec<ElementRef>,
    },
    GaloisField {
        p: u32,
        k: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BimoduleSpec {
    Regular,
    LeftRegular,
    RightRegular,
    Null {
        order: usize,
    },
    Table {
        labels: Vec<String>,
        add: Vec<Vec<u32>>,
        /// `left[r][m] = r·m`
        left: Vec<Vec<u32>>,
        /// `right[m][r] = m·r`
        right: Vec<Vec<u32>>,
    },
}

/// An element given by carrier index or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(u64),
    Label(String),
}

impl ElementRef {
    pub fn resolve(&self, ring: &FiniteRing) -> Result<Elem, FormatError> {
        match self {
            ElementRef::Index(i) => Ok(ring.element(*i)?),
            ElementRef::Label(s) => ring
                .lookup(s)
                .ok_or_else(|| FormatError::UnknownElement(s.clone())),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// `images[a]` is the image of element `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<ElementRef>>,
    /// A map on the base ring of a quotient, passed to the quotient.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub induced_from: Option<Box<EndoSpec>>,
    /// Maps on the two factors of a product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Box<ComponentMaps>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentMaps {
    pub left: EndoSpec,
    pub right: EndoSpec,
}

impl EndoSpec {
    pub fn builtin(name: &str) -> Self {
        EndoSpec {
            builtin: Some(name.to_string()),
            ..EndoSpec::default()
        }
    }

    pub fn images(images: Vec<u32>) -> Self {
        EndoSpec {
            images: Some(
                images
                    .into_iter()
                    .map(|i| ElementRef::Index(i as u64))
                    .collect(),
            ),
            ..EndoSpec::default()
        }
    }
}

/// A built ring together with the rings it was built from.
#[derive(Clone, Debug)]
pub struct BuiltRing {
    pub ring: FiniteRing,
    pub parts: Parts,
}

#[derive(Clone, Debug)]
pub enum Parts {
    Leaf,
    Product(Box<BuiltRing>, Box<BuiltRing>),
    Extension(Box<BuiltRing>),
    Quotient(Box<BuiltRing>, Box<QuotientRing>),
}

impl RingSpec {
    pub fn build(&self, builder: &RingBuilder) -> Result<BuiltRing, FormatError> {
        let leaf = |ring| BuiltRing {
            ring,
            parts: Parts::Leaf,
        };
        Ok(match self {
            RingSpec::Zmod { n } => leaf(builder.zmod(*n)?),
            RingSpec::GaloisField { p, k } => leaf(builder.galois_field(*p, *k)?),
            RingSpec::Table {
                name,
                labels,
                add,
                mul,
            } => {
                leaf(builder.table(name.as_deref().unwrap_or("table"), add, mul, labels.clone())?)
            }
            RingSpec::Product { left, right } => {
                let l = left.build(builder)?;
                let r = right.build(builder)?;
                BuiltRing {
                    ring: builder.direct_product(&l.ring, &r.ring)?,
                    parts: Parts::Product(Box::new(l), Box::new(r)),
                }
            }
            RingSpec::TrivialExtension { base, bimodule } => {
                let b = base.build(builder)?;
                let module = bimodule.build(&b.ring)?;
                BuiltRing {
                    ring: builder.trivial_extension(&b.ring, &module)?,
                    parts: Parts::Extension(Box::new(b)),
                }
            }
            RingSpec::Quotient { base, generators } => {
                let b = base.build(builder)?;
                let gens = generators
                    .iter()
                    .map(|g| g.resolve(&b.ring))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::generated(&b.ring, &gens)?;
                let q = builder.quotient(&b.ring, &ideal)?;
                BuiltRing {
                    ring: q.ring().clone(),
                    parts: Parts::Quotient(Box::new(b), Box::new(q)),
                }
            }
        })
    }
}

fn flatten(rows: &[Vec<u32>]) -> Vec<u32> {
    rows.iter().flatten().copied().collect()
}

impl BimoduleSpec {
    pub fn build(&self, ring: &FiniteRing) -> Result<Bimodule, FormatError> {
        Ok(match self {
            BimoduleSpec::Regular => Bimodule::regular(ring),
            BimoduleSpec::LeftRegular => Bimodule::left_regular(ring),
            BimoduleSpec::RightRegular => Bimodule::right_regular(ring),
            BimoduleSpec::Null { order } => Bimodule::null(ring, *order)?,
            BimoduleSpec::Table {
                labels,
                add,
                left,
                right,
            } => Bimodule::from_tables(
                ring,
                "M",
                flatten(add),
                flatten(left),
                flatten(right),
                labels.clone(),
            )?,
        })
    }
}

impl EndoSpec {
    pub fn build(&self, built: &BuiltRing) -> Result<Endomorphism, FormatError> {
        let ring = &built.ring;
        let given = [
            self.builtin.is_some(),
            self.images.is_some(),
            self.induced_from.is_some(),
            self.components.is_some(),
        ];
        let alpha = match given.iter().filter(|&&g| g).count() {
            0 => Endomorphism::identity(ring),
            1 => self.build_one(built)?,
            _ => {
                return Err(FormatError::Endomorphism(
                    "give only one of builtin, images, induced_from, components".into(),
                ))
            }
        };
        Ok(match &self.name {
            Some(name) => alpha.with_name(name),
            None => alpha,
        })
    }

    fn build_one(&self, built: &BuiltRing) -> Result<Endomorphism, FormatError> {
        let ring = &built.ring;
        if let Some(name) = &self.builtin {
            return Ok(Endomorphism::builtin(ring, name)?);
        }
        if let Some(images) = &self.images {
            let images = images
                .iter()
                .map(|e| e.resolve(ring).map(|x| x.index() as u32))
                .collect::<Result<Vec<_>, _>>()?;
            if images.len() != ring.size() {
                return Err(FormatError::Endomorphism(format!(
                    "{} images for a ring of size {}",
                    images.len(),
                    ring.size()
                )));
            }
            return Ok(Endomorphism::from_images(ring, images, "images")?);
        }
        if let Some(base_map) = &self.induced_from {
            let Parts::Quotient(base, q) = &built.parts else {
                return Err(FormatError::Endomorphism(
                    "induced_from needs a quotient ring".into(),
                ));
            };
            let alpha = base_map.build(base)?;
            return Ok(q.induced(&base.ring, &alpha)?);
        }
        if let Some(maps) = &self.components {
            let Parts::Product(l, r) = &built.parts else {
                return Err(FormatError::Endomorphism(
                    "components needs a product ring".into(),
                ));
            };
            let a = maps.left.build(l)?;
            let b = maps.right.build(r)?;
            return Ok(Endomorphism::product(ring, &a, &b)?);
        }
        unreachable!("caller checked that one source is given")
    }
}

impl RingDefinition {
    pub fn new(label: &str, ring: RingSpec, endomorphism: Option<EndoSpec>) -> Self {
        RingDefinition {
            schema_version: DEFINITION_SCHEMA.to_string(),
            label: label.to_string(),
            ring,
            endomorphism,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self, FormatError> {
        let def: RingDefinition = toml::from_str(s)?;
        def.check_schema()?;
        Ok(def)
    }

    pub fn to_toml_string(&self) -> Result<String, FormatError> {
        Ok(toml::to_string(self)?)
    }

    pub(crate) fn check_schema(&self) -> Result<(), FormatError> {
        if self.schema_version != DEFINITION_SCHEMA {
            return Err(FormatError::Schema {
                found: self.schema_version.clone(),
                expected: DEFINITION_SCHEMA,
            });
        }
        Ok(())
    }

    /// Builds the ring and its endomorphism with the default size cap.
    pub fn build(&self) -> Result<(FiniteRing, Endomorphism), FormatError> {
        self.build_with(&RingBuilder::default())
    }

    pub fn build_with(
        &self,
        builder: &RingBuilder,
    ) -> Result<(FiniteRing, Endomorphism), FormatError> {
        let built = self.ring.build(builder)?;
        let alpha = match &self.endomorphism {
            Some(spec) => spec.build(&built)?,
            None => Endomorphism::identity(&built.ring),
        };
        Ok((built.ring, alpha))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
schema_version = "skewring/1"
label = "z2-squared-swap"

[ring]
kind = "product"
left = { kind = "zmod", n = 2 }
right = { kind = "zmod", n = 2 }

[endomorphism]
builtin = "swap"
"#;

    #[test]
    fn parses_and_builds() {
        let def = RingDefinition::from_toml_str(EXAMPLE).unwrap();
        let (ring, alpha) = def.build().unwrap();
        assert_eq!(ring.size(), 4);
        assert_eq!(alpha.orbit(), (0, 2));
        let again = RingDefinition::from_toml_str(&def.to_toml_string().unwrap()).unwrap();
        assert_eq!(again, def);
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        let extra = EXAMPLE.replace("builtin = \"swap\"", "builtin = \"swap\"\ncolour = 3");
        assert!(matches!(
            RingDefinition::from_toml_str(&extra),
            Err(FormatError::Toml(_))
        ));
        let old = EXAMPLE.replace("skewring/1", "skewring/0");
        assert!(matches!(
            RingDefinition::from_toml_str(&old),
            Err(FormatError::Schema { .. })
        ));
        let kind = EXAMPLE.replace("kind = \"product\"", "kind = \"matrix\"");
        assert!(RingDefinition::from_toml_str(&kind).is_err());
    }

    #[test]
    fn induced_map_on_quotient() {
        let src = r#"
schema_version = "skewring/1"
label = "quotient"

[ring]
kind = "quotient"
generators = ["(2,0)", "(0,2)"]
[ring.base]
kind = "trivial_extension"
base = { kind = "zmod", n = 4 }
bimodule = { kind = "regular" }

[endomorphism.induced_from]
builtin = "negate_second_component"
"#;
        let (ring, alpha) = RingDefinition::from_toml_str(src).unwrap().build().unwrap();
        assert_eq!(ring.size(), 4);
        assert!(alpha.is_identity());
    }

    #[test]
    fn component_maps_and_images() {
        let src = r#"
schema_version = "skewring/1"
label = "gf4-times-z2"

[ring]
kind = "product"
left = { kind = "galois_field", p = 2, k = 2 }
right = { kind = "zmod", n = 2 }

[endomorphism.components]
left = { builtin = "frobenius" }
right = { images = [0, 1] }
"#;
        let (ring, alpha) = RingDefinition::from_toml_str(src).unwrap().build().unwrap();
        assert_eq!(ring.size(), 8);
        assert_eq!(alpha.orbit(), (0, 2));
    }

    #[test]
    fn reports_bad_tables_and_maps() {
        let src = r#"
schema_version = "skewring/1"
label = "bad"

[ring]
kind = "zmod"
n = 4

[endomorphism]
images = [0, 3, 2, 1]
"#;
        let err = RingDefinition::from_toml_str(src)
            .unwrap()
            .build()
            .unwrap_err();
        assert!(err.to_string().contains("[1, 1]"), "{err}");

        let two = r#"
schema_version = "skewring/1"
label = "two"
[ring]
kind = "zmod"
n = 2
[endomorphism]
builtin = "identity"
images = [0, 1]
"#;
        let err = RingDefinition::from_toml_str(two)
            .unwrap()
            .build()
            .unwrap_err();
        assert!(matches!(err, FormatError::Endomorphism(_)));
    }
}
