use super::{
    axiom, check_abelian_group, check_labels, check_table, Axiom, Elem, FiniteRing, RingError,
    RingId,
};

/// A finite `R`-`R` bimodule given by tables.
#[derive(Clone, Debug)]
pub struct Bimodule {
    ring: RingId,
    name: String,
    m: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    /// `left[r * m + x] = r·x`
    left: Vec<u32>,
    /// `right[x * n + r] = x·r`
    right: Vec<u32>,
    n: usize,
    labels: Vec<String>,
}

impl Bimodule {
    /// Validates explicit tables: `add` is `m × m`, `left` is `n × m`,
    /// `right` is `m × n` (all row-major).
    pub fn from_tables(
        ring: &FiniteRing,
        name: &str,
        add: Vec<u32>,
        left: Vec<u32>,
        right: Vec<u32>,
        labels: Vec<String>,
    ) -> Result<Self, RingError> {
        let m = labels.len();
        let n = ring.size();
        let group = check_abelian_group(m, &add, "module add")?;
        check_table(m, &left, n * m, "left action")?;
        check_table(m, &right, m * n, "right action")?;
        check_labels(m, &labels)?;
        let module = Bimodule {
            ring: ring.id(),
            name: name.to_string(),
            m,
            add,
            neg: group.neg,
            zero: group.zero,
            left,
            right,
            n,
            labels,
        };
        module.check_actions(ring)?;
        Ok(module)
    }

    /// `R` acting on itself by multiplication on both sides.
    pub fn regular(ring: &FiniteRing) -> Self {
        Self::regular_with(ring, true, true, "R")
    }

    /// `R` with left multiplication and the zero right action.
    pub fn left_regular(ring: &FiniteRing) -> Self {
        Self::regular_with(ring, true, false, "R_left")
    }

    /// `R` with right multiplication and the zero left action.
    pub fn right_regular(ring: &FiniteRing) -> Self {
        Self::regular_with(ring, false, true, "R_right")
    }

    fn regular_with(ring: &FiniteRing, left: bool, right: bool, tag: &str) -> Self {
        let n = ring.size();
        let zero = ring.zero().0;
        let left_t = if left {
            ring.mul_table().to_vec()
        } else {
            vec![zero; n * n]
        };
        let right_t = if right {
            ring.mul_table().to_vec()
        } else {
            vec![zero; n * n]
        };
        Bimodule {
            ring: ring.id(),
            name: format!("{}[{}]", tag, ring.name()),
            m: n,
            add: ring.add_table().to_vec(),
            neg: ring.neg_table().to_vec(),
            zero,
            left: left_t,
            right: right_t,
            n,
            labels: ring.labels().to_vec(),
        }
    }

    /// The cyclic group `ℤ_order` with both actions zero.
    pub fn null(ring: &FiniteRing, order: usize) -> Result<Self, RingError> {
        if order == 0 {
            return Err(RingError::EmptyCarrier);
        }
        let n = ring.size();
        let add = (0..order)
            .flat_map(|a| (0..order).map(move |b| ((a + b) % order) as u32))
            .collect();
        Bimodule::from_tables(
            ring,
            &format!("Z{order}"),
            add,
            vec![0; n * order],
            vec![0; order * n],
            (0..order).map(|i| i.to_string()).collect(),
        )
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> Elem {
        Elem(self.zero)
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x.index()]
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.add[x.index() * self.m + y.index()])
    }

    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.neg[x.index()])
    }

    pub fn left(&self, r: Elem, x: Elem) -> Elem {
        Elem(self.left[r.index() * self.m + x.index()])
    }

    pub fn right(&self, x: Elem, r: Elem) -> Elem {
        Elem(self.right[x.index() * self.n + r.index()])
    }

    fn check_actions(&self, ring: &FiniteRing) -> Result<(), RingError> {
        let elems: Vec<Elem> = ring.elements().collect();
        let mods: Vec<Elem> = (0..self.m as u32).map(Elem).collect();
        for &r in &elems {
            for &x in &mods {
                for &y in &mods {
                    if self.left(r, self.add(x, y)) != self.add(self.left(r, x), self.left(r, y)) {
                        return Err(axiom(
                            Axiom::LeftActionAdditive,
                            &[r.index(), x.index(), y.index()],
                        ));
                    }
                    if self.right(self.add(x, y), r) != self.add(self.right(x, r), self.right(y, r))
                    {
                        return Err(axiom(
                            Axiom::RightActionAdditive,
                            &[x.index(), y.index(), r.index()],
                        ));
                    }
                }
            }
        }
        for &r in &elems {
            for &s in &elems {
                for &x in &mods {
                    if self.left(ring.add(r, s), x) != self.add(self.left(r, x), self.left(s, x)) {
                        return Err(axiom(
                            Axiom::LeftActionAdditive,
                            &[r.index(), s.index(), x.index()],
                        ));
                    }
                    if self.right(x, ring.add(r, s)) != self.add(self.right(x, r), self.right(x, s))
                    {
                        return Err(axiom(
                            Axiom::RightActionAdditive,
                            &[x.index(), r.index(), s.index()],
                        ));
                    }
                    if self.left(ring.mul(r, s), x) != self.left(r, self.left(s, x)) {
                        return Err(axiom(
                            Axiom::LeftActionAssociative,
                            &[r.index(), s.index(), x.index()],
                        ));
                    }
                    if self.right(x, ring.mul(r, s)) != self.right(self.right(x, r), s) {
                        return Err(axiom(
                            Axiom::RightActionAssociative,
                            &[x.index(), r.index(), s.index()],
                        ));
                    }
                    if self.right(self.left(r, x), s) != self.left(r, self.right(x, s)) {
                        return Err(axiom(
                            Axiom::ActionsCompatible,
                            &[r.index(), x.index(), s.index()],
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}
