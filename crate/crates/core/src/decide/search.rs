//! The enumeration engine shared by every polynomial-level decider.
//!
//! Inputs are coefficient windows: `a_u` is the coefficient of
//! `x^(p_min + u)` and `b_v` of `x^(q_min + v)`. Candidates are visited in
//! blocks of increasing top index `(h_p, h_q)`; inside a block the top
//! coefficient runs over nonzero elements, lower ones over all elements, in
//! lexicographic order with position 0 most significant. The first pair
//! whose hypothesis holds and whose conclusion fails is returned, so the
//! witness does not depend on how the work was scheduled.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::ring::{Elem, Endomorphism, FiniteRing};

use super::PolyWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Hypothesis {
    /// `pq = 0` on the checked coefficients.
    Product,
    /// `p (r x^k) q = 0` on the checked coefficients for every `r` and
    /// every `k` in the sandwich exponent list.
    Sandwich,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Conclusion {
    /// `a_i b_j = 0`
    Plain,
    /// `a_i α^i(b_j) = 0`
    Skew,
    /// `a_i R b_j = 0`
    Quasi,
    /// `a_i R α^i(b_j) = 0`
    QuasiSkew,
    /// `a_i R α^t(b_j) = 0` for every power `t` in the orbit
    QuasiOrbit,
}

/// The map used for `x r = τ(r) x`: either `α` or the identity.
pub(crate) struct Twist<'a> {
    ident: Vec<u32>,
    alpha: Option<&'a Endomorphism>,
}

impl<'a> Twist<'a> {
    pub fn alpha(alpha: &'a Endomorphism) -> Self {
        Twist {
            ident: Vec::new(),
            alpha: Some(alpha),
        }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Twist {
            ident: (0..ring.size() as u32).collect(),
            alpha: None,
        }
    }

    #[inline]
    fn pow(&self, e: i64) -> &[u32] {
        match self.alpha {
            None => &self.ident,
            Some(a) => a
                .pow_map(e)
                .expect("negative powers are only requested for automorphisms"),
        }
    }

    fn orbit_len(&self) -> usize {
        self.alpha.map_or(1, |a| a.orbit_len())
    }
}

pub(crate) struct Search<'a> {
    pub ring: &'a FiniteRing,
    pub twist: Twist<'a>,
    pub p_min: i64,
    pub p_len: usize,
    pub q_min: i64,
    pub q_len: usize,
    /// Product coefficients with relative position `< known` are constrained.
    pub known: usize,
    /// Only pairs `(u, v)` with `u + v < pair_limit` are tested.
    pub pair_limit: usize,
    /// Sandwich exponents `k`.
    pub ks: Vec<i64>,
    pub hypothesis: Hypothesis,
    pub conclusion: Conclusion,
}

/// Tables for one fixed `p`: `tabs[c][u * n + b]` is the contribution of
/// `a_u` paired with `b` to component `c` of the hypothesis.
struct Prepared {
    tabs: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    pub fn run(&self) -> Option<PolyWitness> {
        let n = self.ring.size();
        if n < 2 {
            return None;
        }
        let nonzero: Vec<u32> = self
            .ring
            .nonzero_elements()
            .map(|e| e.index() as u32)
            .collect();
        for hp in 0..self.p_len {
            for hq in 0..self.q_len {
                let count = (n as u64).pow(hp as u32) * (n as u64 - 1);
                let found = (0..count).into_par_iter().find_map_first(|rank| {
                    let a = self.decode(rank, hp, &nonzero);
                    self.search_q(&a, hq)
                });
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn decode(&self, mut rank: u64, top: usize, nonzero: &[u32]) -> Vec<u32> {
        let n = self.ring.size() as u64;
        let zero = self.ring.zero().index() as u32;
        let mut a = vec![zero; self.p_len];
        a[top] = nonzero[(rank % (n - 1)) as usize];
        rank /= n - 1;
        for pos in (0..top).rev() {
            a[pos] = (rank % n) as u32;
            rank /= n;
        }
        a
    }

    fn prepare(&self, a: &[u32]) -> Prepared {
        let n = self.ring.size();
        let mul = self.ring.mul_table();
        let zero = self.ring.zero().index() as u32;
        let mut tabs = Vec::new();
        match self.hypothesis {
            Hypothesis::Product => {
                let mut t = vec![zero; self.p_len * n];
                for (u, &au) in a.iter().enumerate() {
                    let tw = self.twist.pow(self.p_min + u as i64);
                    for b in 0..n {
                        t[u * n + b] = mul[au as usize * n + tw[b] as usize];
                    }
                }
                tabs.push(t);
            }
            Hypothesis::Sandwich => {
                let mut rs: Vec<u32> = Vec::with_capacity(n);
                if let Some(one) = self.ring.one().filter(|&o| !self.ring.is_zero(o)) {
                    rs.push(one.index() as u32);
                }
                let first = rs.first().copied();
                rs.extend(
                    self.ring
                        .nonzero_elements()
                        .map(|e| e.index() as u32)
                        .filter(|&r| Some(r) != first),
                );
                let mut seen: HashSet<Vec<u32>> = HashSet::new();
                for &r in &rs {
                    let c: Vec<u32> = a
                        .iter()
                        .enumerate()
                        .map(|(u, &au)| {
                            let ar = self.twist.pow(self.p_min + u as i64)[r as usize];
                            mul[au as usize * n + ar as usize]
                        })
                        .collect();
                    if c.iter().all(|&x| x == zero) {
                        continue;
                    }
                    for &k in &self.ks {
                        let mut t = vec![zero; self.p_len * n];
                        for (u, &cu) in c.iter().enumerate() {
                            let tw = self.twist.pow(self.p_min + u as i64 + k);
                            for b in 0..n {
                                t[u * n + b] = mul[cu as usize * n + tw[b] as usize];
                            }
                        }
                        if seen.insert(t.clone()) {
                            tabs.push(t);
                        }
                    }
                }
            }
        }
        Prepared { tabs }
    }

    fn search_q(&self, a: &[u32], hq: usize) -> Option<PolyWitness> {
        let prep = self.prepare(a);
        let zero = self.ring.zero().index() as u32;
        let mut b = vec![zero; self.q_len];
        let mut order: Vec<usize> = (0..prep.tabs.len()).collect();
        self.dfs(a, &prep, &mut order, &mut b, 0, hq)
    }

    /// Whether relative product coefficient `e` vanishes in every component.
    /// Moves a component that fails to the front of `order`.
    fn coefficient_vanishes(
        &self,
        prep: &Prepared,
        order: &mut [usize],
        b: &[u32],
        e: usize,
    ) -> bool {
        if e >= self.known {
            return true;
        }
        let n = self.ring.size();
        let add = self.ring.add_table();
        let zero = self.ring.zero().index() as u32;
        let u_lo = (e + 1).saturating_sub(self.q_len);
        let u_hi = e.min(self.p_len - 1);
        for j in 0..order.len() {
            let t = &prep.tabs[order[j]];
            let mut s = zero;
            for u in u_lo..=u_hi {
                let x = t[u * n + b[e - u] as usize];
                s = add[s as usize * n + x as usize];
            }
            if s != zero {
                order[..=j].rotate_right(1);
                return false;
            }
        }
        true
    }

    fn dfs(
        &self,
        a: &[u32],
        prep: &Prepared,
        order: &mut Vec<usize>,
        b: &mut Vec<u32>,
        v: usize,
        hq: usize,
    ) -> Option<PolyWitness> {
        let n = self.ring.size() as u32;
        let zero = self.ring.zero().index() as u32;
        let values: Box<dyn Iterator<Item = u32>> = if v < hq {
            Box::new(0..n)
        } else if v == hq {
            Box::new((0..n).filter(move |&x| x != zero))
        } else {
            Box::new(std::iter::once(zero))
        };
        for x in values {
            b[v] = x;
            if !self.coefficient_vanishes(prep, order, b, v) {
                continue;
            }
            if v + 1 < self.q_len {
                if let Some(w) = self.dfs(a, prep, order, b, v + 1, hq) {
                    return Some(w);
                }
                continue;
            }
            let tail_ok = (self.q_len..self.p_len + self.q_len - 1)
                .all(|e| self.coefficient_vanishes(prep, order, b, e));
            if tail_ok {
                if let Some(w) = self.violation(a, b) {
                    return Some(w);
                }
            }
        }
        b[v] = zero;
        None
    }

    /// The least `(u, v)`, then `r`, then `t` at which the conclusion fails.
    fn violation(&self, a: &[u32], b: &[u32]) -> Option<PolyWitness> {
        let n = self.ring.size();
        let mul = self.ring.mul_table();
        let zero = self.ring.zero().index() as u32;
        let m = |x: u32, y: u32| mul[x as usize * n + y as usize];
        for (u, &au) in a.iter().enumerate() {
            if au == zero {
                continue;
            }
            let i = self.p_min + u as i64;
            for (v, &bv) in b.iter().enumerate() {
                if bv == zero || u + v >= self.pair_limit {
                    continue;
                }
                let hit = |middle: Option<u32>, power: Option<i64>, value: u32| {
                    (value != zero).then(|| PolyWitness {
                        p_min: self.p_min,
                        p: a.iter().map(|&x| Elem::new(x)).collect(),
                        q_min: self.q_min,
                        q: b.iter().map(|&x| Elem::new(x)).collect(),
                        pair: (i, self.q_min + v as i64),
                        middle: middle.map(Elem::new),
                        power,
                        value: Elem::new(value),
                    })
                };
                let found = match self.conclusion {
                    Conclusion::Plain => hit(None, None, m(au, bv)),
                    Conclusion::Skew => hit(None, None, m(au, self.twist.pow(i)[bv as usize])),
                    Conclusion::Quasi => {
                        (0..n as u32).find_map(|r| hit(Some(r), None, m(m(au, r), bv)))
                    }
                    Conclusion::QuasiSkew => {
                        let tb = self.twist.pow(i)[bv as usize];
                        (0..n as u32).find_map(|r| hit(Some(r), None, m(m(au, r), tb)))
                    }
                    Conclusion::QuasiOrbit => (0..n as u32).find_map(|r| {
                        let ar = m(au, r);
                        (0..self.twist.orbit_len() as i64).find_map(|t| {
                            hit(Some(r), Some(t), m(ar, self.twist.pow(t)[bv as usize]))
                        })
                    }),
                };
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}
