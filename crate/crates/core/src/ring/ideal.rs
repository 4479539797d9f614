use super::{Elem, Endomorphism, FiniteRing, RingError, RingId, Structure};

/// A validated two-sided ideal, stored as a membership mask.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: RingId,
    members: Vec<bool>,
}

impl Ideal {
    /// Checks that `elements` is closed under addition, negation and
    /// multiplication by ring elements on both sides.
    pub fn new(ring: &FiniteRing, elements: &[Elem]) -> Result<Self, RingError> {
        let mut members = vec![false; ring.size()];
        for &x in elements {
            ring.element(x.0 as u64)?;
            members[x.index()] = true;
        }
        let ideal = Ideal {
            ring: ring.id(),
            members,
        };
        ideal.validate(ring)?;
        Ok(ideal)
    }

    /// The ideal generated by `gens`, by closing under the ideal operations.
    pub fn generated(ring: &FiniteRing, gens: &[Elem]) -> Result<Self, RingError> {
        let mut members = vec![false; ring.size()];
        members[ring.zero().index()] = true;
        let mut frontier: Vec<Elem> = Vec::new();
        for &g in gens {
            ring.element(g.0 as u64)?;
            if !members[g.index()] {
                members[g.index()] = true;
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            let mut new = Vec::new();
            for r in ring.elements() {
                new.push(ring.mul(r, x));
                new.push(ring.mul(x, r));
                if members[r.index()] {
                    new.push(ring.add(r, x));
                }
            }
            for y in new {
                if !members[y.index()] {
                    members[y.index()] = true;
                    frontier.push(y);
                }
            }
        }
        let ideal = Ideal {
            ring: ring.id(),
            members,
        };
        ideal.validate(ring)?;
        Ok(ideal)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::new(ring, &[ring.zero()]).expect("zero ideal")
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        let all: Vec<Elem> = ring.elements().collect();
        Self::new(ring, &all).expect("whole ring is an ideal")
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members[x.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u32))
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    fn validate(&self, ring: &FiniteRing) -> Result<(), RingError> {
        let bad = |reason, witness: &[Elem]| RingError::NotAnIdeal {
            reason,
            witness: witness.iter().map(|e| e.0).collect(),
        };
        if !self.contains(ring.zero()) {
            return Err(bad("missing zero", &[]));
        }
        let members: Vec<Elem> = self.elements().collect();
        for &a in &members {
            if !self.contains(ring.neg(a)) {
                return Err(bad("not closed under negation", &[a]));
            }
            for &b in &members {
                if !self.contains(ring.add(a, b)) {
                    return Err(bad("not closed under addition", &[a, b]));
                }
            }
            for r in ring.elements() {
                if !self.contains(ring.mul(r, a)) {
                    return Err(bad("not closed under left multiplication", &[r, a]));
                }
                if !self.contains(ring.mul(a, r)) {
                    return Err(bad("not closed under right multiplication", &[a, r]));
                }
            }
        }
        Ok(())
    }
}

/// `R / I` with its projection and coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: FiniteRing,
    base: RingId,
    projection: Vec<u32>,
    representatives: Vec<Elem>,
}

impl QuotientRing {
    pub(crate) fn build(base: &FiniteRing, ideal: &Ideal) -> Result<Self, RingError> {
        if ideal.ring() != base.id() {
            return Err(RingError::RingMismatch);
        }
        let n = base.size();
        let mut projection = vec![u32::MAX; n];
        let mut representatives = Vec::new();
        for x in base.elements() {
            if projection[x.index()] != u32::MAX {
                continue;
            }
            let class = representatives.len() as u32;
            for i in ideal.elements() {
                projection[base.add(x, i).index()] = class;
            }
            representatives.push(x);
        }
        let q = representatives.len();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for &a in &representatives {
            for &b in &representatives {
                add.push(projection[base.add(a, b).index()]);
                mul.push(projection[base.mul(a, b).index()]);
            }
        }
        let labels = representatives
            .iter()
            .map(|&r| format!("[{}]", base.label(r)))
            .collect();
        let ring = FiniteRing::from_raw(
            format!("{}/I", base.name()),
            q,
            add,
            mul,
            labels,
            Structure::Quotient { base: base.id() },
        )?;
        Ok(QuotientRing {
            ring,
            base: base.id(),
            projection,
            representatives,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn into_ring(self) -> FiniteRing {
        self.ring
    }

    pub fn base(&self) -> RingId {
        self.base
    }

    pub fn project(&self, x: Elem) -> Elem {
        Elem(self.projection[x.index()])
    }

    /// Least-index element of the coset.
    pub fn representative(&self, class: Elem) -> Elem {
        self.representatives[class.index()]
    }

    /// The map `x + I ↦ α(x) + I`, defined when `α(I) ⊆ I`.
    pub fn induced(
        &self,
        base: &FiniteRing,
        alpha: &Endomorphism,
    ) -> Result<Endomorphism, RingError> {
        if alpha.ring() != self.base || base.id() != self.base {
            return Err(RingError::RingMismatch);
        }
        let zero_class = self.project(base.zero());
        for x in base.elements() {
            if self.project(x) == zero_class && self.project(alpha.image(x)) != zero_class {
                return Err(RingError::IdealNotInvariant(x.0));
            }
        }
        let images = self
            .representatives
            .iter()
            .map(|&r| self.project(alpha.image(r)).0)
            .collect();
        Endomorphism::from_images(&self.ring, images, &format!("{} mod I", alpha.name()))
    }
}
