//! Exhaustive deciders for ring predicates and Armendariz-type conditions.
//!
//! Element-level predicates scan every pair or triple of the carrier. The
//! polynomial-level conditions are decided over a bounded envelope (degree,
//! exponent window, or truncation order) by enumerating every pair of
//! coefficient tuples; a failure carries a [`Witness`] that [`replay`]
//! re-checks through the public skew arithmetic.

mod chain;
mod element;
mod family;
mod replay;
mod search;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::Elem;
use crate::skew::SkewError;

pub use chain::{coefficient_chain, ChainError};
pub use element::{
    is_commutative, is_domain, is_reduced, is_reversible, is_rigid, is_semicommutative,
    is_symmetric,
};
pub use family::{
    check_armendariz_family, check_laurent_q_alpha_skew, check_powerseries_q_alpha_skew, decide,
    forall_sandwich_zero, forall_sandwich_zero_laurent, forall_sandwich_zero_series,
    laurent_sandwich_exponents, sandwich_exponents,
};
pub use replay::{replay, ReplayError};

/// Default ceiling on the number of coefficient tuples a search may visit.
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_TUPLE_BUDGET`].
pub const BUDGET_ENV: &str = "SKEWRING_TUPLE_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyId {
    Reduced,
    Domain,
    Commutative,
    Semicommutative,
    Reversible,
    Symmetric,
    Rigid,
    Armendariz,
    AlphaArmendariz,
    AlphaSkewArmendariz,
    QuasiArmendariz,
    QAlphaArmendariz,
    QAlphaSkewArmendariz,
    AlphaQuasiArmendariz,
    LaurentQAlphaSkew,
    PowerseriesQAlphaSkew,
    LaurentPowerseriesQAlphaSkew,
}

impl PropertyId {
    pub const ALL: [PropertyId; 17] = [
        PropertyId::Reduced,
        PropertyId::Domain,
        PropertyId::Commutative,
        PropertyId::Semicommutative,
        PropertyId::Reversible,
        PropertyId::Symmetric,
        PropertyId::Rigid,
        PropertyId::Armendariz,
        PropertyId::AlphaArmendariz,
        PropertyId::AlphaSkewArmendariz,
        PropertyId::QuasiArmendariz,
        PropertyId::QAlphaArmendariz,
        PropertyId::QAlphaSkewArmendariz,
        PropertyId::AlphaQuasiArmendariz,
        PropertyId::LaurentQAlphaSkew,
        PropertyId::PowerseriesQAlphaSkew,
        PropertyId::LaurentPowerseriesQAlphaSkew,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Reduced => "reduced",
            PropertyId::Domain => "domain",
            PropertyId::Commutative => "commutative",
            PropertyId::Semicommutative => "semicommutative",
            PropertyId::Reversible => "reversible",
            PropertyId::Symmetric => "symmetric",
            PropertyId::Rigid => "rigid",
            PropertyId::Armendariz => "armendariz",
            PropertyId::AlphaArmendariz => "alpha-armendariz",
            PropertyId::AlphaSkewArmendariz => "alpha-skew-armendariz",
            PropertyId::QuasiArmendariz => "quasi-armendariz",
            PropertyId::QAlphaArmendariz => "q-alpha-armendariz",
            PropertyId::QAlphaSkewArmendariz => "q-alpha-skew-armendariz",
            PropertyId::AlphaQuasiArmendariz => "alpha-quasi-armendariz",
            PropertyId::LaurentQAlphaSkew => "laurent-q-alpha-skew",
            PropertyId::PowerseriesQAlphaSkew => "powerseries-q-alpha-skew",
            PropertyId::LaurentPowerseriesQAlphaSkew => "laurent-powerseries-q-alpha-skew",
        }
    }

    /// Decided by scanning elements rather than polynomials.
    pub fn is_element_level(self) -> bool {
        matches!(
            self,
            PropertyId::Reduced
                | PropertyId::Domain
                | PropertyId::Commutative
                | PropertyId::Semicommutative
                | PropertyId::Reversible
                | PropertyId::Symmetric
                | PropertyId::Rigid
        )
    }

    /// The checks in the plain-polynomial family, parameterized by degree.
    pub fn is_degree_family(self) -> bool {
        matches!(
            self,
            PropertyId::Armendariz
                | PropertyId::AlphaArmendariz
                | PropertyId::AlphaSkewArmendariz
                | PropertyId::QuasiArmendariz
                | PropertyId::QAlphaArmendariz
                | PropertyId::QAlphaSkewArmendariz
                | PropertyId::AlphaQuasiArmendariz
        )
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown property `{0}`")]
pub struct UnknownProperty(pub String);

impl FromStr for PropertyId {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

/// What happens to series coefficients at or above the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Unknown; only coefficients below the order are constrained.
    Free,
    /// Forced to zero, so the inputs are polynomials and products are exact.
    Zero,
}

/// The quantifier range a verdict covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// Element-level predicates, checked over the whole carrier.
    Exhaustive,
    /// Polynomials of degree at most `degree`.
    Degree { degree: usize },
    /// `p` has exponents `-m ..= n`, `q` has exponents `-t ..= s`.
    Window {
        m: usize,
        n: usize,
        t: usize,
        s: usize,
    },
    /// Series starting at `x^(-lead)` known below `x^order`.
    Truncated { order: i64, lead: usize, tail: Tail },
}

impl Envelope {
    /// Exponent ranges `(p_min, p_len, q_min, q_len)` of the inputs.
    pub(crate) fn shape(&self) -> Option<(i64, usize, i64, usize)> {
        match *self {
            Envelope::Exhaustive => None,
            Envelope::Degree { degree } => Some((0, degree + 1, 0, degree + 1)),
            Envelope::Window { m, n, t, s } => {
                Some((-(m as i64), m + n + 1, -(t as i64), t + s + 1))
            }
            Envelope::Truncated { order, lead, .. } => {
                let len = usize::try_from(order + lead as i64)
                    .ok()
                    .filter(|&l| l > 0)?;
                Some((-(lead as i64), len, -(lead as i64), len))
            }
        }
    }
}

impl fmt::Display for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Envelope::Exhaustive => f.write_str("exhaustive"),
            Envelope::Degree { degree } => write!(f, "degree <= {degree}"),
            Envelope::Window { m, n, t, s } => {
                write!(f, "window p in x^-{m}..x^{n}, q in x^-{t}..x^{s}")
            }
            Envelope::Truncated { order, lead, tail } => {
                let tail = match tail {
                    Tail::Free => "free tail",
                    Tail::Zero => "zero tail",
                };
                if *lead == 0 {
                    write!(f, "truncated at x^{order}, {tail}")
                } else {
                    write!(f, "truncated at x^{order}, from x^-{lead}, {tail}")
                }
            }
        }
    }
}

/// Violating elements of an element-level predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementWitness {
    pub elements: Vec<Elem>,
    /// The nonzero value that should have vanished, when there is one.
    pub value: Option<Elem>,
}

/// A polynomial pair satisfying a hypothesis whose conclusion fails.
///
/// `p[u]` is the coefficient of `x^(p_min + u)`, likewise for `q`. The
/// vectors cover the whole envelope, so a series witness keeps its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyWitness {
    pub p_min: i64,
    pub p: Vec<Elem>,
    pub q_min: i64,
    pub q: Vec<Elem>,
    /// Exponents `(i, j)` of the offending coefficients `a_i`, `b_j`.
    pub pair: (i64, i64),
    /// The element `r` in `a_i r …` for the quasi conditions.
    pub middle: Option<Elem>,
    /// The power `t` in `a_i r α^t(b_j)` for the orbit condition.
    pub power: Option<i64>,
    pub value: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Elements(ElementWitness),
    Polynomials(PolyWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// No violation inside the envelope.
    HoldsUpTo,
    Fails(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub property: PropertyId,
    pub envelope: Envelope,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::HoldsUpTo)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Fails(w) => Some(w),
            Outcome::HoldsUpTo => None,
        }
    }
}

/// Ceiling on `|R|^(len p + len q)` for polynomial searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub ceiling: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ceiling: DEFAULT_TUPLE_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(ceiling: u128) -> Self {
        Budget { ceiling }
    }

    /// Reads [`BUDGET_ENV`], falling back to the default when unset.
    pub fn from_env() -> Result<Self, DecideError> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .replace('_', "")
                .parse::<u128>()
                .map(Budget::new)
                .map_err(|_| DecideError::BadBudget(v)),
            Err(_) => Ok(Budget::default()),
        }
    }

    /// `base^exp`, saturating.
    pub fn space(base: usize, exp: usize) -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base as u128);
        }
        acc
    }

    pub fn admits(&self, space: u128) -> bool {
        space <= self.ceiling
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("search space of {space} coefficient tuples exceeds the budget of {ceiling}")]
    BudgetExceeded { space: u128, ceiling: u128 },
    #[error("`{0}` needs an automorphism")]
    NotInvertible(String),
    #[error("envelope `{envelope}` does not apply to `{property}`")]
    WrongEnvelope {
        property: PropertyId,
        envelope: Envelope,
    },
    #[error("tuple budget `{0}` is not a nonnegative integer")]
    BadBudget(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
}
