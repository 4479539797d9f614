//! Finite rings given by explicit Cayley tables.
//!
//! Every ring is a carrier of `n` dense indices together with full addition
//! and multiplication tables. Construction always runs the exhaustive axiom
//! check, so a [`FiniteRing`] value is a proof that the tables describe an
//! associative ring (identity optional).

mod bimodule;
mod endo;
mod galois;
mod ideal;
mod iso;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

pub use bimodule::Bimodule;
pub use endo::{EndoId, Endomorphism};
pub use galois::is_prime;
pub use ideal::{Ideal, QuotientRing};
pub use iso::{random_relabeling, RingIsomorphism};

/// Default cap on the number of carrier elements.
pub const DEFAULT_SIZE_CAP: usize = 256;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Identity token of a constructed ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId(u64);

/// An element of some finite ring, stored as its carrier index.
///
/// Elements do not carry their ring; containers that hold elements
/// (polynomials, maps, ideals) carry the [`RingId`] instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const fn new(index: u32) -> Self {
        Elem(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Which ring axiom (or structure-map law) a table failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditionCommutative,
    AdditionAssociative,
    MultiplicationAssociative,
    LeftDistributive,
    RightDistributive,
    MapAdditive,
    MapMultiplicative,
    MapPreservesOne,
    MapBijective,
    LeftActionAdditive,
    LeftActionAssociative,
    RightActionAdditive,
    RightActionAssociative,
    ActionsCompatible,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AdditiveIdentity => "existence of an additive identity",
            Axiom::AdditiveInverse => "existence of additive inverses",
            Axiom::AdditionCommutative => "commutativity of addition",
            Axiom::AdditionAssociative => "associativity of addition",
            Axiom::MultiplicationAssociative => "associativity of multiplication",
            Axiom::LeftDistributive => "left distributivity a(b+c) = ab+ac",
            Axiom::RightDistributive => "right distributivity (a+b)c = ac+bc",
            Axiom::MapAdditive => "additivity f(a+b) = f(a)+f(b)",
            Axiom::MapMultiplicative => "multiplicativity f(ab) = f(a)f(b)",
            Axiom::MapPreservesOne => "f(1) = 1",
            Axiom::MapBijective => "bijectivity",
            Axiom::LeftActionAdditive => "biadditivity of the left action",
            Axiom::LeftActionAssociative => "(rs)m = r(sm)",
            Axiom::RightActionAdditive => "biadditivity of the right action",
            Axiom::RightActionAssociative => "(mr)s = m(rs)",
            Axiom::ActionsCompatible => "(rm)s = r(ms)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring size {size} exceeds the configured cap of {cap} elements")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error("carrier must have at least one element")]
    EmptyCarrier,
    #[error("table `{table}` has shape mismatch: expected {expected} entries, found {found}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("table `{table}` contains index {index} outside a carrier of size {size}")]
    IndexOutOfRange {
        table: &'static str,
        index: u64,
        size: usize,
    },
    #[error("axiom violated: {axiom} fails at {witness:?}")]
    Axiom { axiom: Axiom, witness: Vec<u32> },
    #[error(
        "invalid element label `{0}`: labels must be unique, non-empty, without whitespace or `*`"
    )]
    BadLabel(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("object belongs to a different ring than expected")]
    RingMismatch,
    #[error("not an ideal: {reason} at {witness:?}")]
    NotAnIdeal {
        reason: &'static str,
        witness: Vec<u32>,
    },
    #[error("the ideal is not mapped into itself: element {0} has image outside the ideal")]
    IdealNotInvariant(u32),
    #[error("builtin endomorphism `{name}` is not available: {reason}")]
    BuiltinUnavailable { name: String, reason: String },
    #[error("endomorphism orbit too long (more than {0} distinct powers)")]
    OrbitTooLong(usize),
}

/// How a ring was constructed, kept for builtin maps and projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Table,
    Zmod {
        n: usize,
    },
    /// Element `(i, j)` is stored at index `i * right_size + j`.
    Product {
        left: RingId,
        right: RingId,
        left_size: usize,
        right_size: usize,
        left_zero: Elem,
        right_zero: Elem,
        identical_factors: bool,
    },
    /// Element `(r, m)` is stored at index `r * module_size + m`.
    TrivialExtension {
        base: RingId,
        base_size: usize,
        module_size: usize,
        base_zero: Elem,
        module_zero: Elem,
    },
    Quotient {
        base: RingId,
    },
    /// Elements are coefficient vectors in base `p`, constant term least
    /// significant. `modulus` lists the non-leading coefficients of the monic
    /// defining polynomial, constant term first.
    GaloisField {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
    },
}

/// A validated finite ring with optional identity.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    id: RingId,
    name: String,
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: Option<u32>,
    labels: Vec<String>,
    structure: Structure,
}

impl FiniteRing {
    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Elem {
        Elem(self.zero)
    }

    pub fn one(&self) -> Option<Elem> {
        self.one.map(Elem)
    }

    pub fn is_unital(&self) -> bool {
        self.one.is_some()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.n == 1
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a.0 == self.zero
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n as u32).map(Elem)
    }

    /// Nonzero elements in index order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let zero = self.zero;
        (0..self.n as u32).filter(move |&i| i != zero).map(Elem)
    }

    /// Range-checked conversion from a raw index.
    pub fn element(&self, index: u64) -> Result<Elem, RingError> {
        if (index as u128) < self.n as u128 {
            Ok(Elem(index as u32))
        } else {
            Err(RingError::IndexOutOfRange {
                table: "element",
                index,
                size: self.n,
            })
        }
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lookup(&self, label: &str) -> Option<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Elem(i as u32))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub(crate) fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub(crate) fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub(crate) fn neg_table(&self) -> &[u32] {
        &self.neg
    }

    /// Splits a product-ring element into factor indices.
    pub fn product_components(&self, a: Elem) -> Option<(Elem, Elem)> {
        match self.structure {
            Structure::Product { right_size, .. } => Some((
                Elem((a.index() / right_size) as u32),
                Elem((a.index() % right_size) as u32),
            )),
            Structure::TrivialExtension { module_size, .. } => Some((
                Elem((a.index() / module_size) as u32),
                Elem((a.index() % module_size) as u32),
            )),
            _ => None,
        }
    }

    /// Runs the full axiom check on raw tables and assembles a ring.
    fn from_raw(
        name: String,
        n: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Vec<String>,
        structure: Structure,
    ) -> Result<Self, RingError> {
        let group = check_abelian_group(n, &add, "add")?;
        check_table(n, &mul, n * n, "mul")?;
        check_labels(n, &labels)?;
        let at = |t: &[u32], a: usize, b: usize| t[a * n + b] as usize;

        for a in 0..n {
            for b in 0..n {
                let ab = at(&mul, a, b);
                for c in 0..n {
                    if at(&mul, ab, c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(axiom(Axiom::MultiplicationAssociative, &[a, b, c]));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = at(&mul, a, at(&add, b, c));
                    if lhs != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(axiom(Axiom::LeftDistributive, &[a, b, c]));
                    }
                    let lhs = at(&mul, at(&add, a, b), c);
                    if lhs != at(&add, at(&mul, a, c), at(&mul, b, c)) {
                        return Err(axiom(Axiom::RightDistributive, &[a, b, c]));
                    }
                }
            }
        }
        let one = (0..n)
            .find(|&e| (0..n).all(|x| at(&mul, e, x) == x && at(&mul, x, e) == x))
            .map(|e| e as u32);

        Ok(FiniteRing {
            id: RingId(fresh_id()),
            name,
            n,
            add,
            mul,
            neg: group.neg,
            zero: group.zero,
            one,
            labels,
            structure,
        })
    }
}

impl PartialEq for FiniteRing {
    /// Table equality; ring identity tokens and names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.add == other.add && self.mul == other.mul
    }
}

pub(crate) fn axiom(axiom: Axiom, witness: &[usize]) -> RingError {
    RingError::Axiom {
        axiom,
        witness: witness.iter().map(|&x| x as u32).collect(),
    }
}

pub(crate) struct GroupData {
    pub zero: u32,
    pub neg: Vec<u32>,
}

pub(crate) fn check_table(
    n: usize,
    table: &[u32],
    expected: usize,
    name: &'static str,
) -> Result<(), RingError> {
    if table.len() != expected {
        return Err(RingError::TableShape {
            table: name,
            expected,
            found: table.len(),
        });
    }
    if let Some(&bad) = table.iter().find(|&&x| x as usize >= n) {
        return Err(RingError::IndexOutOfRange {
            table: name,
            index: bad as u64,
            size: n,
        });
    }
    Ok(())
}

/// Checks that `add` (an `n × n` table) is an abelian group operation.
pub(crate) fn check_abelian_group(
    n: usize,
    add: &[u32],
    name: &'static str,
) -> Result<GroupData, RingError> {
    if n == 0 {
        return Err(RingError::EmptyCarrier);
    }
    check_table(n, add, n * n, name)?;
    let at = |a: usize, b: usize| add[a * n + b] as usize;
    let zero = (0..n)
        .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or_else(|| axiom(Axiom::AdditiveIdentity, &[]))?;
    for a in 0..n {
        for b in 0..a {
            if at(a, b) != at(b, a) {
                return Err(axiom(Axiom::AdditionCommutative, &[a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(axiom(Axiom::AdditionAssociative, &[a, b, c]));
                }
            }
        }
    }
    let mut neg = Vec::with_capacity(n);
    for a in 0..n {
        let inv = (0..n)
            .find(|&b| at(a, b) == zero)
            .ok_or_else(|| axiom(Axiom::AdditiveInverse, &[a]))?;
        neg.push(inv as u32);
    }
    Ok(GroupData {
        zero: zero as u32,
        neg,
    })
}

pub(crate) fn check_labels(n: usize, labels: &[String]) -> Result<(), RingError> {
    if labels.len() != n {
        return Err(RingError::TableShape {
            table: "labels",
            expected: n,
            found: labels.len(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if l.is_empty() || l.contains(char::is_whitespace) || l.contains('*') || !seen.insert(l) {
            return Err(RingError::BadLabel(l.clone()));
        }
    }
    Ok(())
}

fn numeric_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Constructs rings subject to a carrier size cap.
#[derive(Clone, Copy, Debug)]
pub struct RingBuilder {
    cap: usize,
}

impl Default for RingBuilder {
    fn default() -> Self {
        RingBuilder {
            cap: DEFAULT_SIZE_CAP,
        }
    }
}

impl RingBuilder {
    pub fn with_cap(cap: usize) -> Self {
        RingBuilder { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_cap(&self, size: u128) -> Result<usize, RingError> {
        if size > self.cap as u128 {
            Err(RingError::SizeCapExceeded {
                size,
                cap: self.cap,
            })
        } else if size == 0 {
            Err(RingError::EmptyCarrier)
        } else {
            Ok(size as usize)
        }
    }

    /// The ring of integers modulo `n`. `n = 1` gives the zero ring.
    pub fn zmod(&self, n: usize) -> Result<FiniteRing, RingError> {
        let n = self.check_cap(n as u128)?;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(((a + b) % n) as u32);
                mul.push(((a * b) % n) as u32);
            }
        }
        FiniteRing::from_raw(
            format!("Z{n}"),
            n,
            add,
            mul,
            numeric_labels(n),
            Structure::Zmod { n },
        )
    }

    /// Componentwise direct product; `(i, j)` is stored at `i * |right| + j`.
    pub fn direct_product(
        &self,
        left: &FiniteRing,
        right: &FiniteRing,
    ) -> Result<FiniteRing, RingError> {
        let n = self.check_cap(left.n as u128 * right.n as u128)?;
        let (n1, n2) = (left.n, right.n);
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (a1, a2) = (Elem((x / n2) as u32), Elem((x % n2) as u32));
            for y in 0..n {
                let (b1, b2) = (Elem((y / n2) as u32), Elem((y % n2) as u32));
                add.push(left.add(a1, b1).0 * n2 as u32 + right.add(a2, b2).0);
                mul.push(left.mul(a1, b1).0 * n2 as u32 + right.mul(a2, b2).0);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", left.labels[x / n2], right.labels[x % n2]))
            .collect();
        let identical_factors = n1 == n2 && left.add == right.add && left.mul == right.mul;
        FiniteRing::from_raw(
            format!("{} x {}", left.name, right.name),
            n,
            add,
            mul,
            labels,
            Structure::Product {
                left: left.id,
                right: right.id,
                left_size: n1,
                right_size: n2,
                left_zero: left.zero(),
                right_zero: right.zero(),
                identical_factors,
            },
        )
    }

    /// The trivial extension `R ⊕ M` with `(r, m)(s, n) = (rs, rn + ms)`.
    pub fn trivial_extension(
        &self,
        base: &FiniteRing,
        module: &Bimodule,
    ) -> Result<FiniteRing, RingError> {
        if module.ring() != base.id {
            return Err(RingError::RingMismatch);
        }
        let n = self.check_cap(base.n as u128 * module.size() as u128)?;
        let ms = module.size();
        let split = |x: usize| (Elem((x / ms) as u32), Elem((x % ms) as u32));
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let (r1, m1) = split(x);
            for y in 0..n {
                let (r2, m2) = split(y);
                let sum_m = module.add(m1, m2);
                add.push(base.add(r1, r2).0 * ms as u32 + sum_m.0);
                let prod_m = module.add(module.left(r1, m2), module.right(m1, r2));
                mul.push(base.mul(r1, r2).0 * ms as u32 + prod_m.0);
            }
        }
        let labels = (0..n)
            .map(|x| {
                let (r, m) = split(x);
                format!("({},{})", base.label(r), module.label(m))
            })
            .collect();
        FiniteRing::from_raw(
            format!("T({}, {})", base.name, module.name()),
            n,
            add,
            mul,
            labels,
            Structure::TrivialExtension {
                base: base.id,
                base_size: base.n,
                module_size: ms,
                base_zero: base.zero(),
                module_zero: module.zero(),
            },
        )
    }

    /// A ring from explicit tables, rows indexed by the left operand.
    pub fn table(
        &self,
        name: &str,
        add: &[Vec<u32>],
        mul: &[Vec<u32>],
        labels: Option<Vec<String>>,
    ) -> Result<FiniteRing, RingError> {
        let n = self.check_cap(add.len() as u128)?;
        let flat = |t: &[Vec<u32>], which: &'static str| -> Result<Vec<u32>, RingError> {
            if t.len() != n {
                return Err(RingError::TableShape {
                    table: which,
                    expected: n,
                    found: t.len(),
                });
            }
            let mut out = Vec::with_capacity(n * n);
            for row in t {
                if row.len() != n {
                    return Err(RingError::TableShape {
                        table: which,
                        expected: n,
                        found: row.len(),
                    });
                }
                out.extend_from_slice(row);
            }
            Ok(out)
        };
        let add = flat(add, "add")?;
        let mul = flat(mul, "mul")?;
        FiniteRing::from_raw(
            name.to_string(),
            n,
            add,
            mul,
            labels.unwrap_or_else(|| numeric_labels(n)),
            Structure::Table,
        )
    }

    /// `GF(p^k)` from the lexicographically least monic irreducible
    /// polynomial of degree `k`, compared on `(c_0, c_1, …, c_{k-1})`.
    pub fn galois_field(&self, p: u32, k: u32) -> Result<FiniteRing, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(RingError::EmptyCarrier);
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        let n = self.check_cap(size)?;
        let field = galois::FieldTables::build(p, k, n);
        FiniteRing::from_raw(
            format!("GF({p}^{k})"),
            n,
            field.add,
            field.mul,
            field.labels,
            Structure::GaloisField {
                p,
                k,
                modulus: field.modulus,
            },
        )
    }

    /// `R / I` with the least carrier index of each coset as representative.
    pub fn quotient(&self, base: &FiniteRing, ideal: &Ideal) -> Result<QuotientRing, RingError> {
        QuotientRing::build(base, ideal)
    }

    /// Copies `ring` onto a permuted carrier: element `a` moves to `perm[a]`.
    pub fn relabel(
        &self,
        ring: &FiniteRing,
        perm: &[u32],
    ) -> Result<(FiniteRing, RingIsomorphism), RingError> {
        iso::relabel(ring, perm)
    }
}

/// `ℤ_n` with the default size cap.
pub fn zmod(n: usize) -> Result<FiniteRing, RingError> {
    RingBuilder::default().zmod(n)
}

pub fn direct_product(left: &FiniteRing, right: &FiniteRing) -> Result<FiniteRing, RingError> {
    RingBuilder::default().direct_product(left, right)
}

pub fn trivial_extension(base: &FiniteRing, module: &Bimodule) -> Result<FiniteRing, RingError> {
    RingBuilder::default().trivial_extension(base, module)
}

pub fn galois_field(p: u32, k: u32) -> Result<FiniteRing, RingError> {
    RingBuilder::default().galois_field(p, k)
}

pub fn table_ring(
    name: &str,
    add: &[Vec<u32>],
    mul: &[Vec<u32>],
    labels: Option<Vec<String>>,
) -> Result<FiniteRing, RingError> {
    RingBuilder::default().table(name, add, mul, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> Elem {
        Elem(i)
    }

    #[test]
    fn z4_has_two_squared_zero() {
        let r = zmod(4).unwrap();
        assert_eq!(r.mul(e(2), e(2)), r.zero());
        assert_eq!(r.one(), Some(e(1)));
    }

    #[test]
    fn zero_ring_has_zero_equal_one() {
        let r = zmod(1).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.one(), Some(r.zero()));
        assert!(r.is_zero_ring());
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = RingBuilder::with_cap(8).zmod(9).unwrap_err();
        assert!(matches!(
            err,
            RingError::SizeCapExceeded { size: 9, cap: 8 }
        ));
        assert!(RingBuilder::with_cap(8).zmod(0).is_err());
    }

    #[test]
    fn z2_squared_product_kills_orthogonal_idempotents() {
        let z2 = zmod(2).unwrap();
        let r = direct_product(&z2, &z2).unwrap();
        let a = r.lookup("(1,0)").unwrap();
        let b = r.lookup("(0,1)").unwrap();
        assert_eq!(r.mul(a, b), r.zero());
        assert_eq!(r.one(), r.lookup("(1,1)"));
    }

    #[test]
    fn product_with_zero_ring_keeps_tables() {
        let z4 = zmod(4).unwrap();
        let zero = zmod(1).unwrap();
        let p = direct_product(&z4, &zero).unwrap();
        assert_eq!(p, z4);
    }

    #[test]
    fn product_components_recover_factor_tables() {
        let z2 = zmod(2).unwrap();
        let z3 = zmod(3).unwrap();
        let p = direct_product(&z2, &z3).unwrap();
        for x in p.elements() {
            for y in p.elements() {
                let (x1, x2) = p.product_components(x).unwrap();
                let (y1, y2) = p.product_components(y).unwrap();
                let (s1, s2) = p.product_components(p.add(x, y)).unwrap();
                let (m1, m2) = p.product_components(p.mul(x, y)).unwrap();
                assert_eq!((s1, s2), (z2.add(x1, y1), z3.add(x2, y2)));
                assert_eq!((m1, m2), (z2.mul(x1, y1), z3.mul(x2, y2)));
            }
        }
    }

    #[test]
    fn trivial_extension_products() {
        let z4 = zmod(4).unwrap();
        let t = trivial_extension(&z4, &Bimodule::regular(&z4)).unwrap();
        let x = t.lookup("(2,0)").unwrap();
        let y = t.lookup("(2,1)").unwrap();
        assert_eq!(t.label(t.mul(x, y)), "(0,2)");
        for m in z4.elements() {
            for m2 in z4.elements() {
                let a = t.lookup(&format!("(0,{})", m.0)).unwrap();
                let b = t.lookup(&format!("(0,{})", m2.0)).unwrap();
                assert_eq!(t.mul(a, b), t.zero());
            }
        }
        assert_eq!(t.one(), t.lookup("(1,0)"));

        let z2 = zmod(2).unwrap();
        let t2 = trivial_extension(&z2, &Bimodule::regular(&z2)).unwrap();
        let u = t2.lookup("(1,1)").unwrap();
        assert_eq!(t2.label(t2.mul(u, u)), "(1,0)");
    }

    #[test]
    fn upper_row_matrix_ring_has_no_identity() {
        // (a,b)(c,d) = (ac, ad) over Z3
        let n = 9u32;
        let add: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| ((x / 3 + y / 3) % 3) * 3 + (x % 3 + y % 3) % 3)
                    .collect()
            })
            .collect();
        let mul: Vec<Vec<u32>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| ((x / 3) * (y / 3) % 3) * 3 + (x / 3) * (y % 3) % 3)
                    .collect()
            })
            .collect();
        let r = table_ring("upper row", &add, &mul, None).unwrap();
        assert!(!r.is_unital());
        assert!(!r.is_commutative());
    }

    #[test]
    fn non_associative_table_reports_triple() {
        // 0 is not absorbing here, so distributivity must fail.
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![1, 1]];
        let err = table_ring("bad", &add, &mul, None).unwrap_err();
        assert!(matches!(err, RingError::Axiom { .. }), "{err}");

        // Bilinear product on F2^2 with e1e1 = e2, e2e1 = e1 and all other
        // basis products zero: distributive but (e1e1)e1 != e1(e1e1).
        let idx = |c1: u32, c2: u32| 2 * c1 + c2;
        let add4: Vec<Vec<u32>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let mul4: Vec<Vec<u32>> = (0..4u32)
            .map(|a| {
                (0..4u32)
                    .map(|b| {
                        let (a1, a2, b1) = (a >> 1, a & 1, b >> 1);
                        idx(a2 & b1, a1 & b1)
                    })
                    .collect()
            })
            .collect();
        let err = table_ring("twisted", &add4, &mul4, None).unwrap_err();
        match err {
            RingError::Axiom { axiom, witness } => {
                assert_eq!(axiom, Axiom::MultiplicationAssociative);
                assert_eq!(witness.len(), 3);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn bad_labels_rejected() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let labels = Some(vec!["a".to_string(), "a".to_string()]);
        assert!(matches!(
            table_ring("dup", &add, &mul, labels),
            Err(RingError::BadLabel(_))
        ));
    }
}
