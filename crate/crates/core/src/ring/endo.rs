use std::collections::HashMap;

use super::{axiom, fresh_id, Axiom, Elem, FiniteRing, RingError, RingId, Structure};

const MAX_ORBIT: usize = 1 << 12;

/// Identity token of a constructed endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EndoId(u64);

/// A validated ring endomorphism together with its power table.
///
/// `powers[e]` is `α^e` for `0 ≤ e < preperiod + period`; every other power
/// is folded into that range, and negative powers are available when the map
/// is bijective (then `preperiod = 0`).
#[derive(Clone, Debug)]
pub struct Endomorphism {
    id: EndoId,
    ring: RingId,
    name: String,
    bijective: bool,
    preserves_one: Option<bool>,
    preperiod: usize,
    period: usize,
    powers: Vec<Vec<u32>>,
}

impl Endomorphism {
    pub fn from_images(ring: &FiniteRing, images: Vec<u32>, name: &str) -> Result<Self, RingError> {
        let n = ring.size();
        super::check_table(n, &images, n, "images")?;
        let f = |x: Elem| Elem(images[x.index()]);
        for a in ring.elements() {
            for b in ring.elements() {
                if f(ring.add(a, b)) != ring.add(f(a), f(b)) {
                    return Err(axiom(Axiom::MapAdditive, &[a.index(), b.index()]));
                }
            }
        }
        for a in ring.elements() {
            for b in ring.elements() {
                if f(ring.mul(a, b)) != ring.mul(f(a), f(b)) {
                    return Err(axiom(Axiom::MapMultiplicative, &[a.index(), b.index()]));
                }
            }
        }
        let mut hit = vec![false; n];
        for &y in &images {
            hit[y as usize] = true;
        }
        let bijective = hit.iter().all(|&h| h);
        let preserves_one = ring.one().map(|one| f(one) == one);
        let (preperiod, period, powers) = orbit(&images)?;
        Ok(Endomorphism {
            id: EndoId(fresh_id()),
            ring: ring.id(),
            name: name.to_string(),
            bijective,
            preserves_one,
            preperiod,
            period,
            powers,
        })
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Self::from_images(ring, (0..ring.size() as u32).collect(), "identity")
            .expect("identity is an endomorphism")
    }

    pub fn zero_map(ring: &FiniteRing) -> Self {
        Self::from_images(ring, vec![ring.zero().0; ring.size()], "zero")
            .expect("the zero map is an endomorphism")
    }

    /// `x ↦ -x`. Multiplicative only when `2ab = 0` for all `a, b`.
    pub fn negation(ring: &FiniteRing) -> Result<Self, RingError> {
        Self::from_images(ring, ring.neg_table().to_vec(), "negation")
    }

    /// `(a, b) ↦ (b, a)` on a product of two copies of one ring.
    pub fn swap(ring: &FiniteRing) -> Result<Self, RingError> {
        match *ring.structure() {
            Structure::Product {
                right_size,
                identical_factors: true,
                ..
            } => {
                let images = (0..ring.size())
                    .map(|x| ((x % right_size) * right_size + x / right_size) as u32)
                    .collect();
                Self::from_images(ring, images, "swap")
            }
            _ => Err(unavailable(
                "swap",
                "needs a product of two identical factors",
            )),
        }
    }

    /// `(a, m) ↦ (a, -m)` on a direct product or trivial extension.
    pub fn negate_second_component(ring: &FiniteRing) -> Result<Self, RingError> {
        let (second, first_zero) = match *ring.structure() {
            Structure::Product {
                right_size,
                left_zero,
                ..
            } => (right_size, left_zero),
            Structure::TrivialExtension {
                module_size,
                base_zero,
                ..
            } => (module_size, base_zero),
            _ => {
                return Err(unavailable(
                    "negate_second_component",
                    "needs a direct product or trivial extension",
                ))
            }
        };
        let images = (0..ring.size())
            .map(|x| {
                let (a, m) = (x / second, x % second);
                // -(0, m) = (0, -m); read off the second component.
                let lifted = Elem((first_zero.index() * second + m) as u32);
                let neg_m = ring.neg(lifted).index() % second;
                (a * second + neg_m) as u32
            })
            .collect();
        Self::from_images(ring, images, "negate_second_component")
    }

    /// `x ↦ x^c` where `c` is the (prime) characteristic of a unital ring.
    pub fn frobenius(ring: &FiniteRing) -> Result<Self, RingError> {
        let one = ring
            .one()
            .ok_or_else(|| unavailable("frobenius", "ring has no identity"))?;
        let mut c = 1u64;
        let mut acc = one;
        while !ring.is_zero(acc) {
            acc = ring.add(acc, one);
            c += 1;
        }
        if !super::is_prime(c) {
            return Err(unavailable(
                "frobenius",
                &format!("characteristic {c} is not prime"),
            ));
        }
        let images = ring
            .elements()
            .map(|x| {
                let mut y = x;
                for _ in 1..c {
                    y = ring.mul(y, x);
                }
                y.0
            })
            .collect();
        Self::from_images(ring, images, "frobenius")
    }

    /// `(x, y) ↦ (α₁(x), α₂(y))` on `left ⊕ right`.
    pub fn product(
        ring: &FiniteRing,
        left: &Endomorphism,
        right: &Endomorphism,
    ) -> Result<Self, RingError> {
        match *ring.structure() {
            Structure::Product {
                left: l,
                right: r,
                right_size,
                ..
            } if l == left.ring && r == right.ring => {
                let images = (0..ring.size())
                    .map(|x| {
                        let a = left.image(Elem((x / right_size) as u32));
                        let b = right.image(Elem((x % right_size) as u32));
                        (a.index() * right_size + b.index()) as u32
                    })
                    .collect();
                Self::from_images(ring, images, &format!("({}, {})", left.name, right.name))
            }
            _ => Err(RingError::RingMismatch),
        }
    }

    /// Looks up a map by its builtin name.
    pub fn builtin(ring: &FiniteRing, name: &str) -> Result<Self, RingError> {
        match name {
            "identity" => Ok(Self::identity(ring)),
            "zero" => Ok(Self::zero_map(ring)),
            "negation" => Self::negation(ring),
            "swap" => Self::swap(ring),
            "negate_second_component" => Self::negate_second_component(ring),
            "frobenius" => Self::frobenius(ring),
            other => Err(unavailable(other, "unknown builtin name")),
        }
    }

    pub fn id(&self) -> EndoId {
        self.id
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn images(&self) -> &[u32] {
        &self.powers[1.min(self.powers.len() - 1)]
    }

    #[inline]
    pub fn image(&self, x: Elem) -> Elem {
        Elem(self.images()[x.index()])
    }

    pub fn is_injective(&self) -> bool {
        self.bijective
    }

    pub fn is_surjective(&self) -> bool {
        self.bijective
    }

    pub fn is_automorphism(&self) -> bool {
        self.bijective
    }

    /// `Some(α(1) = 1)` on unital rings, `None` otherwise.
    pub fn preserves_one(&self) -> Option<bool> {
        self.preserves_one
    }

    pub fn is_identity(&self) -> bool {
        self.preperiod == 0 && self.period == 1
    }

    /// Least `(t, p)` with `α^(t+p) = α^t`.
    pub fn orbit(&self) -> (usize, usize) {
        (self.preperiod, self.period)
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Number of distinct powers `α^0, …, α^(t+p-1)`.
    pub fn orbit_len(&self) -> usize {
        self.preperiod + self.period
    }

    /// The table of `α^e`, folding `e` into the orbit. Negative exponents
    /// need an automorphism and return `None` otherwise.
    pub fn pow_map(&self, e: i64) -> Option<&[u32]> {
        let idx = if e < 0 {
            if !self.bijective {
                return None;
            }
            e.rem_euclid(self.period as i64) as usize
        } else {
            let e = e as usize;
            let t = self.preperiod;
            if e < t + self.period {
                e
            } else {
                t + (e - t) % self.period
            }
        };
        Some(&self.powers[idx])
    }

    /// `α^e(x)`; panics on a negative exponent of a non-invertible map.
    #[inline]
    pub fn apply_pow(&self, e: i64, x: Elem) -> Elem {
        let map = self
            .pow_map(e)
            .expect("negative power of a non-invertible endomorphism");
        Elem(map[x.index()])
    }

    /// The inverse map, for automorphisms.
    pub fn inverse(&self, ring: &FiniteRing) -> Option<Result<Self, RingError>> {
        let inv = self.pow_map(-1)?.to_vec();
        Some(Self::from_images(ring, inv, &format!("{}^-1", self.name)))
    }

    /// Pointwise equality of the underlying maps.
    pub fn same_map(&self, other: &Endomorphism) -> bool {
        self.images() == other.images()
    }
}

fn unavailable(name: &str, reason: &str) -> RingError {
    RingError::BuiltinUnavailable {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

type Orbit = (usize, usize, Vec<Vec<u32>>);

fn orbit(images: &[u32]) -> Result<Orbit, RingError> {
    let n = images.len();
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut powers: Vec<Vec<u32>> = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        if let Some(&t) = seen.get(&cur) {
            let period = powers.len() - t;
            return Ok((t, period, powers));
        }
        if powers.len() >= MAX_ORBIT {
            return Err(RingError::OrbitTooLong(MAX_ORBIT));
        }
        seen.insert(cur.clone(), powers.len());
        let next = cur.iter().map(|&x| images[x as usize]).collect();
        powers.push(std::mem::replace(&mut cur, next));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, galois_field, trivial_extension, zmod, Bimodule};

    #[test]
    fn identity_orbit() {
        let r = zmod(5).unwrap();
        let id = Endomorphism::identity(&r);
        assert_eq!(id.orbit(), (0, 1));
        assert!(id.is_automorphism());
        assert_eq!(id.preserves_one(), Some(true));
    }

    #[test]
    fn zero_map_on_z4_has_preperiod_one() {
        let r = zmod(4).unwrap();
        let z = Endomorphism::zero_map(&r);
        assert_eq!(z.orbit(), (1, 1));
        assert!(!z.is_injective());
        assert_eq!(z.apply_pow(0, Elem(3)), Elem(3));
        assert_eq!(z.apply_pow(7, Elem(3)), Elem(0));
        assert!(z.pow_map(-1).is_none());
    }

    #[test]
    fn negation_on_z4_is_not_multiplicative() {
        let r = zmod(4).unwrap();
        let err = Endomorphism::negation(&r).unwrap_err();
        assert_eq!(
            err,
            RingError::Axiom {
                axiom: Axiom::MapMultiplicative,
                witness: vec![1, 1]
            }
        );
    }

    #[test]
    fn negation_on_null_product_ring_is_valid() {
        let zero = zmod(1).unwrap();
        let m = Bimodule::null(&zero, 3).unwrap();
        let r = trivial_extension(&zero, &m).unwrap();
        let neg = Endomorphism::negation(&r).unwrap();
        assert_eq!(neg.orbit(), (0, 2));
    }

    #[test]
    fn swap_on_z2_squared() {
        let z2 = zmod(2).unwrap();
        let r = direct_product(&z2, &z2).unwrap();
        let s = Endomorphism::swap(&r).unwrap();
        assert_eq!(s.orbit(), (0, 2));
        let a = r.lookup("(1,0)").unwrap();
        assert_eq!(r.label(s.image(a)), "(0,1)");
        assert_eq!(s.apply_pow(-1, a), s.image(a));
    }

    #[test]
    fn swap_needs_identical_factors() {
        let r = direct_product(&zmod(2).unwrap(), &zmod(3).unwrap()).unwrap();
        assert!(Endomorphism::swap(&r).is_err());
    }

    #[test]
    fn negate_second_on_trivial_extension() {
        let z4 = zmod(4).unwrap();
        let t = trivial_extension(&z4, &Bimodule::regular(&z4)).unwrap();
        let a = Endomorphism::negate_second_component(&t).unwrap();
        assert_eq!(a.orbit(), (0, 2));
        let x = t.lookup("(2,1)").unwrap();
        assert_eq!(t.label(a.image(x)), "(2,3)");
    }

    #[test]
    fn product_map_period() {
        let gf4 = galois_field(2, 2).unwrap();
        let z2 = zmod(2).unwrap();
        let p = direct_product(&gf4, &z2).unwrap();
        let f = Endomorphism::frobenius(&gf4).unwrap();
        let id = Endomorphism::identity(&z2);
        let m = Endomorphism::product(&p, &f, &id).unwrap();
        assert_eq!(m.orbit(), (0, 2));
        // composing twice gives the identity map
        for x in p.elements() {
            assert_eq!(m.image(m.image(x)), x);
        }
        let both_id = Endomorphism::product(&p, &Endomorphism::identity(&gf4), &id).unwrap();
        assert!(both_id.same_map(&Endomorphism::identity(&p)));
    }

    #[test]
    fn frobenius_gf4_and_gf2() {
        let gf4 = galois_field(2, 2).unwrap();
        let f = Endomorphism::frobenius(&gf4).unwrap();
        assert_eq!(f.orbit(), (0, 2));
        let fixed: Vec<_> = gf4.elements().filter(|&x| f.image(x) == x).collect();
        assert_eq!(fixed, vec![gf4.zero(), gf4.one().unwrap()]);

        let gf2 = galois_field(2, 1).unwrap();
        assert!(Endomorphism::frobenius(&gf2).unwrap().is_identity());

        let gf9 = galois_field(3, 2).unwrap();
        let f9 = Endomorphism::frobenius(&gf9).unwrap();
        assert!(f9.is_injective() && f9.is_surjective());
    }

    #[test]
    fn orbit_is_minimal() {
        let gf8 = galois_field(2, 3).unwrap();
        let f = Endomorphism::frobenius(&gf8).unwrap();
        let (t, p) = f.orbit();
        assert_eq!((t, p), (0, 3));
        for x in gf8.elements() {
            assert_eq!(f.apply_pow((t + p) as i64, x), f.apply_pow(t as i64, x));
        }
    }
}
