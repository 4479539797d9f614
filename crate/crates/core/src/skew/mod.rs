//! Arithmetic in `R[x;α]`, `R[x,x⁻¹;α]` and truncated `R[[x;α]]`,
//! `R[[x,x⁻¹;α]]`, all with the twist `x r = α(r) x`.
//!
//! Values are plain coefficient vectors tagged with the ring and map they
//! were built over. All arithmetic goes through a [`SkewRing`] context,
//! which rejects values that belong to a different pair.

mod text;

use thiserror::Error;

use crate::ring::{Elem, EndoId, Endomorphism, FiniteRing, RingError, RingId};

pub use text::ParseError;

/// Renders the coefficient vector whose entry `k` multiplies `x^(min_exp + k)`.
pub fn render_terms(ring: &FiniteRing, min_exp: i64, coeffs: &[Elem]) -> String {
    text::render(ring, min_exp, coeffs)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("operands belong to different rings or endomorphisms")]
    Mismatch,
    #[error("endomorphism belongs to a different ring")]
    EndomorphismMismatch,
    #[error("negative exponents need an automorphism; `{0}` is not invertible")]
    NotInvertible(String),
    #[error("truncation order {order} must exceed the lowest exponent {min_exp}")]
    EmptyWindow { min_exp: i64, order: i64 },
    #[error("series needs {expected} coefficients, got {found}")]
    SeriesLength { expected: usize, found: usize },
    #[error(transparent)]
    Element(#[from] RingError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A polynomial in `R[x;α]`; `coeffs[k]` is the coefficient of `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    ring: RingId,
    endo: EndoId,
    coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<Elem> {
        self.coeffs.get(k).copied()
    }
}

/// A Laurent polynomial; `coeffs[k]` is the coefficient of `x^(min_exp + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSkewPoly {
    ring: RingId,
    endo: EndoId,
    min_exp: i64,
    coeffs: Vec<Elem>,
}

impl LaurentSkewPoly {
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Option<Elem> {
        let k = e.checked_sub(self.min_exp)?;
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).copied())
    }
}

/// A series known exactly for `min_exp ≤ k < order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSkewSeries {
    ring: RingId,
    endo: EndoId,
    min_exp: i64,
    order: i64,
    coeffs: Vec<Elem>,
}

impl TruncatedSkewSeries {
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Exclusive upper bound of the known exponents.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Number of known coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Option<Elem> {
        let k = e.checked_sub(self.min_exp)?;
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k).copied())
    }
}

/// A ring with a fixed endomorphism, the context for all skew arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct SkewRing<'a> {
    ring: &'a FiniteRing,
    alpha: &'a Endomorphism,
}

impl<'a> SkewRing<'a> {
    pub fn new(ring: &'a FiniteRing, alpha: &'a Endomorphism) -> Result<Self, SkewError> {
        if alpha.ring() != ring.id() {
            return Err(SkewError::EndomorphismMismatch);
        }
        Ok(SkewRing { ring, alpha })
    }

    pub fn ring(&self) -> &'a FiniteRing {
        self.ring
    }

    pub fn alpha(&self) -> &'a Endomorphism {
        self.alpha
    }

    fn check_elems(&self, coeffs: &[Elem]) -> Result<(), SkewError> {
        for c in coeffs {
            self.ring.element(c.index() as u64)?;
        }
        Ok(())
    }

    fn require_invertible(&self) -> Result<(), SkewError> {
        if self.alpha.is_automorphism() {
            Ok(())
        } else {
            Err(SkewError::NotInvertible(self.alpha.name().to_string()))
        }
    }

    fn owns(&self, ring: RingId, endo: EndoId) -> Result<(), SkewError> {
        if ring == self.ring.id() && endo == self.alpha.id() {
            Ok(())
        } else {
            Err(SkewError::Mismatch)
        }
    }

    /// Whether `p` was built over this ring and map.
    pub fn contains(&self, p: &SkewPoly) -> bool {
        self.owns(p.ring, p.endo).is_ok()
    }

    fn trim_high(&self, mut coeffs: Vec<Elem>) -> Vec<Elem> {
        while coeffs.last().is_some_and(|&c| self.ring.is_zero(c)) {
            coeffs.pop();
        }
        coeffs
    }

    /// Coefficients of `x^lo … x^(hi-1)` in `(Σ a_u x^(amin+u)) (Σ b_v x^(bmin+v))`.
    fn convolve(
        &self,
        a: &[Elem],
        amin: i64,
        b: &[Elem],
        bmin: i64,
        lo: i64,
        hi: i64,
    ) -> Vec<Elem> {
        let r = self.ring;
        let len = (hi - lo).max(0) as usize;
        let mut out = vec![r.zero(); len];
        for (u, &au) in a.iter().enumerate() {
            if r.is_zero(au) {
                continue;
            }
            let i = amin + u as i64;
            let twist = self
                .alpha
                .pow_map(i)
                .expect("negative exponents only occur over automorphisms");
            for (v, &bv) in b.iter().enumerate() {
                let e = i + bmin + v as i64;
                if e < lo || e >= hi {
                    continue;
                }
                let term = r.mul(au, Elem(twist[bv.index()]));
                let slot = &mut out[(e - lo) as usize];
                *slot = r.add(*slot, term);
            }
        }
        out
    }

    // ---- R[x;α] ----

    pub fn zero_poly(&self) -> SkewPoly {
        SkewPoly {
            ring: self.ring.id(),
            endo: self.alpha.id(),
            coeffs: Vec::new(),
        }
    }

    /// Builds a polynomial from `c_0, c_1, …`, dropping trailing zeros.
    pub fn poly(&self, coeffs: Vec<Elem>) -> Result<SkewPoly, SkewError> {
        self.check_elems(&coeffs)?;
        Ok(SkewPoly {
            ring: self.ring.id(),
            endo: self.alpha.id(),
            coeffs: self.trim_high(coeffs),
        })
    }

    pub fn monomial(&self, r: Elem, k: usize) -> Result<SkewPoly, SkewError> {
        let mut c = vec![self.ring.zero(); k + 1];
        c[k] = r;
        self.poly(c)
    }

    pub fn add(&self, p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        let n = p.coeffs.len().max(q.coeffs.len());
        let z = self.ring.zero();
        let c = (0..n)
            .map(|k| {
                let a = p.coeffs.get(k).copied().unwrap_or(z);
                let b = q.coeffs.get(k).copied().unwrap_or(z);
                self.ring.add(a, b)
            })
            .collect();
        Ok(SkewPoly {
            coeffs: self.trim_high(c),
            ..p.clone()
        })
    }

    pub fn neg(&self, p: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        Ok(SkewPoly {
            coeffs: p.coeffs.iter().map(|&a| self.ring.neg(a)).collect(),
            ..p.clone()
        })
    }

    pub fn sub(&self, p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.add(p, &self.neg(q)?)
    }

    /// `pq`, with coefficient `Σ_{i+j=k} a_i α^i(b_j)` at `x^k`.
    pub fn mul(&self, p: &SkewPoly, q: &SkewPoly) -> Result<SkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        if p.is_zero() || q.is_zero() {
            return Ok(self.zero_poly());
        }
        let hi = (p.coeffs.len() + q.coeffs.len() - 1) as i64;
        let c = self.convolve(&p.coeffs, 0, &q.coeffs, 0, 0, hi);
        Ok(SkewPoly {
            coeffs: self.trim_high(c),
            ..p.clone()
        })
    }

    /// `p · (r x^k) · q`.
    pub fn sandwich(
        &self,
        p: &SkewPoly,
        r: Elem,
        k: usize,
        q: &SkewPoly,
    ) -> Result<SkewPoly, SkewError> {
        let h = self.monomial(r, k)?;
        self.mul(&self.mul(p, &h)?, q)
    }

    // ---- R[x,x⁻¹;α] ----

    pub fn zero_laurent(&self) -> LaurentSkewPoly {
        LaurentSkewPoly {
            ring: self.ring.id(),
            endo: self.alpha.id(),
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    fn normalize_laurent(&self, mut min_exp: i64, coeffs: Vec<Elem>) -> LaurentSkewPoly {
        let mut coeffs = self.trim_high(coeffs);
        let lead = coeffs.iter().take_while(|&&c| self.ring.is_zero(c)).count();
        coeffs.drain(..lead);
        min_exp += lead as i64;
        if coeffs.is_empty() {
            min_exp = 0;
        }
        LaurentSkewPoly {
            ring: self.ring.id(),
            endo: self.alpha.id(),
            min_exp,
            coeffs,
        }
    }

    /// Requires an automorphism, even when all exponents are nonnegative.
    pub fn laurent(&self, min_exp: i64, coeffs: Vec<Elem>) -> Result<LaurentSkewPoly, SkewError> {
        self.require_invertible()?;
        self.check_elems(&coeffs)?;
        Ok(self.normalize_laurent(min_exp, coeffs))
    }

    pub fn laurent_monomial(&self, r: Elem, k: i64) -> Result<LaurentSkewPoly, SkewError> {
        self.laurent(k, vec![r])
    }

    pub fn to_laurent(&self, p: &SkewPoly) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.laurent(0, p.coeffs.clone())
    }

    /// The polynomial `p` itself when it has no negative exponents.
    pub fn laurent_to_poly(&self, p: &LaurentSkewPoly) -> Result<Option<SkewPoly>, SkewError> {
        self.owns(p.ring, p.endo)?;
        if p.is_zero() {
            return Ok(Some(self.zero_poly()));
        }
        if p.min_exp < 0 {
            return Ok(None);
        }
        let mut c = vec![self.ring.zero(); p.min_exp as usize];
        c.extend_from_slice(&p.coeffs);
        self.poly(c).map(Some)
    }

    pub fn laurent_add(
        &self,
        p: &LaurentSkewPoly,
        q: &LaurentSkewPoly,
    ) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        if p.is_zero() {
            return Ok(q.clone());
        }
        if q.is_zero() {
            return Ok(p.clone());
        }
        let lo = p.min_exp.min(q.min_exp);
        let hi = p.max_exp().unwrap().max(q.max_exp().unwrap());
        let z = self.ring.zero();
        let c = (lo..=hi)
            .map(|e| {
                self.ring
                    .add(p.coeff(e).unwrap_or(z), q.coeff(e).unwrap_or(z))
            })
            .collect();
        Ok(self.normalize_laurent(lo, c))
    }

    pub fn laurent_neg(&self, p: &LaurentSkewPoly) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        Ok(LaurentSkewPoly {
            coeffs: p.coeffs.iter().map(|&a| self.ring.neg(a)).collect(),
            ..p.clone()
        })
    }

    /// Product with `(a x^i)(b x^j) = a α^i(b) x^(i+j)` for all integers `i, j`.
    pub fn laurent_mul(
        &self,
        p: &LaurentSkewPoly,
        q: &LaurentSkewPoly,
    ) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        if p.is_zero() || q.is_zero() {
            return Ok(self.zero_laurent());
        }
        let lo = p.min_exp + q.min_exp;
        let hi = p.max_exp().unwrap() + q.max_exp().unwrap() + 1;
        let c = self.convolve(&p.coeffs, p.min_exp, &q.coeffs, q.min_exp, lo, hi);
        Ok(self.normalize_laurent(lo, c))
    }

    /// `p · x^m`: exponents shift, coefficients are unchanged.
    pub fn shift_right(&self, p: &LaurentSkewPoly, m: i64) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        if p.is_zero() {
            return Ok(p.clone());
        }
        Ok(LaurentSkewPoly {
            min_exp: p.min_exp + m,
            ..p.clone()
        })
    }

    /// `x^m · p`: every coefficient moves through `α^m`. Computed
    /// coefficientwise, so no identity element is needed.
    pub fn shift_left(&self, m: i64, p: &LaurentSkewPoly) -> Result<LaurentSkewPoly, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.require_invertible()?;
        let map = self.alpha.pow_map(m).expect("automorphism");
        let c = p.coeffs.iter().map(|a| Elem(map[a.index()])).collect();
        Ok(self.normalize_laurent(p.min_exp + m, c))
    }

    pub fn laurent_sandwich(
        &self,
        p: &LaurentSkewPoly,
        r: Elem,
        k: i64,
        q: &LaurentSkewPoly,
    ) -> Result<LaurentSkewPoly, SkewError> {
        let h = self.laurent_monomial(r, k)?;
        self.laurent_mul(&self.laurent_mul(p, &h)?, q)
    }

    // ---- truncated series ----

    /// A series known on `min_exp ≤ k < order`; `coeffs` covers exactly that
    /// range. A negative `min_exp` needs an automorphism.
    pub fn series(
        &self,
        min_exp: i64,
        order: i64,
        coeffs: Vec<Elem>,
    ) -> Result<TruncatedSkewSeries, SkewError> {
        if order <= min_exp {
            return Err(SkewError::EmptyWindow { min_exp, order });
        }
        if min_exp < 0 {
            self.require_invertible()?;
        }
        let expected = (order - min_exp) as usize;
        if coeffs.len() != expected {
            return Err(SkewError::SeriesLength {
                expected,
                found: coeffs.len(),
            });
        }
        self.check_elems(&coeffs)?;
        Ok(TruncatedSkewSeries {
            ring: self.ring.id(),
            endo: self.alpha.id(),
            min_exp,
            order,
            coeffs,
        })
    }

    pub fn zero_series(&self, min_exp: i64, order: i64) -> Result<TruncatedSkewSeries, SkewError> {
        let len = (order - min_exp).max(0) as usize;
        self.series(min_exp, order, vec![self.ring.zero(); len])
    }

    /// The image of a polynomial known below `order`.
    pub fn truncate(&self, p: &SkewPoly, order: i64) -> Result<TruncatedSkewSeries, SkewError> {
        self.owns(p.ring, p.endo)?;
        let z = self.ring.zero();
        let c = (0..order.max(0) as usize)
            .map(|k| p.coeffs.get(k).copied().unwrap_or(z))
            .collect();
        self.series(0, order, c)
    }

    pub fn series_add(
        &self,
        p: &TruncatedSkewSeries,
        q: &TruncatedSkewSeries,
    ) -> Result<TruncatedSkewSeries, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        let lo = p.min_exp.min(q.min_exp);
        let order = p.order.min(q.order);
        let z = self.ring.zero();
        let c = (lo..order)
            .map(|e| {
                self.ring
                    .add(p.coeff(e).unwrap_or(z), q.coeff(e).unwrap_or(z))
            })
            .collect();
        self.series(lo, order, c)
    }

    pub fn series_neg(&self, p: &TruncatedSkewSeries) -> Result<TruncatedSkewSeries, SkewError> {
        self.owns(p.ring, p.endo)?;
        Ok(TruncatedSkewSeries {
            coeffs: p.coeffs.iter().map(|&a| self.ring.neg(a)).collect(),
            ..p.clone()
        })
    }

    /// Product known exactly on `m₁+m₂ ≤ k < min(N₁+m₂, N₂+m₁)`, the range
    /// where every contributing pair of coefficients is known. For plain
    /// series this is `k < min(N₁, N₂)`.
    pub fn truncated_mul(
        &self,
        p: &TruncatedSkewSeries,
        q: &TruncatedSkewSeries,
    ) -> Result<TruncatedSkewSeries, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.owns(q.ring, q.endo)?;
        let lo = p.min_exp + q.min_exp;
        let order = (p.order + q.min_exp).min(q.order + p.min_exp);
        let c = self.convolve(&p.coeffs, p.min_exp, &q.coeffs, q.min_exp, lo, order);
        self.series(lo, order, c)
    }

    /// `p · (r x^k)`, known on `[m+k, N+k)`.
    pub fn series_mul_monomial(
        &self,
        p: &TruncatedSkewSeries,
        r: Elem,
        k: i64,
    ) -> Result<TruncatedSkewSeries, SkewError> {
        self.owns(p.ring, p.endo)?;
        self.check_elems(&[r])?;
        let c = self.convolve(&p.coeffs, p.min_exp, &[r], k, p.min_exp + k, p.order + k);
        self.series(p.min_exp + k, p.order + k, c)
    }

    /// `p · (r x^k) · q` with the monomial carried at the precision of `p`.
    pub fn series_sandwich(
        &self,
        p: &TruncatedSkewSeries,
        r: Elem,
        k: i64,
        q: &TruncatedSkewSeries,
    ) -> Result<TruncatedSkewSeries, SkewError> {
        self.truncated_mul(&self.series_mul_monomial(p, r, k)?, q)
    }

    // ---- text ----

    pub fn render_poly(&self, p: &SkewPoly) -> String {
        text::render(self.ring, 0, &p.coeffs)
    }

    pub fn render_laurent(&self, p: &LaurentSkewPoly) -> String {
        text::render(self.ring, p.min_exp, &p.coeffs)
    }

    /// Known terms followed by `O(x^N)`.
    pub fn render_series(&self, p: &TruncatedSkewSeries) -> String {
        let body = text::render(self.ring, p.min_exp, &p.coeffs);
        if body == "0" {
            format!("O(x^{})", p.order)
        } else {
            format!("{body} + O(x^{})", p.order)
        }
    }

    pub fn parse_poly(&self, s: &str) -> Result<SkewPoly, SkewError> {
        let terms = text::parse(self.ring, s)?;
        let mut c: Vec<Elem> = Vec::new();
        for (e, a) in terms {
            let k = usize::try_from(e).map_err(|_| ParseError::NegativeExponent(e))?;
            if c.len() <= k {
                c.resize(k + 1, self.ring.zero());
            }
            c[k] = self.ring.add(c[k], a);
        }
        self.poly(c)
    }

    pub fn parse_laurent(&self, s: &str) -> Result<LaurentSkewPoly, SkewError> {
        self.require_invertible()?;
        let terms = text::parse(self.ring, s)?;
        let lo = terms.iter().map(|&(e, _)| e).min().unwrap_or(0);
        let hi = terms.iter().map(|&(e, _)| e).max().unwrap_or(-1);
        let mut c = vec![self.ring.zero(); (hi - lo + 1).max(0) as usize];
        for (e, a) in terms {
            let slot = &mut c[(e - lo) as usize];
            *slot = self.ring.add(*slot, a);
        }
        self.laurent(lo, c)
    }
}
