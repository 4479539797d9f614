use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    axiom, check_table, Axiom, Elem, Endomorphism, FiniteRing, RingError, RingId, Structure,
};

/// A validated ring isomorphism `σ: source → target`.
#[derive(Clone, Debug)]
pub struct RingIsomorphism {
    source: RingId,
    target: RingId,
    forward: Vec<u32>,
    backward: Vec<u32>,
}

impl RingIsomorphism {
    pub fn new(source: &FiniteRing, target: &FiniteRing, map: Vec<u32>) -> Result<Self, RingError> {
        let n = source.size();
        if target.size() != n {
            return Err(axiom(Axiom::MapBijective, &[]));
        }
        check_table(n, &map, n, "isomorphism")?;
        let mut backward = vec![u32::MAX; n];
        for (a, &b) in map.iter().enumerate() {
            if backward[b as usize] != u32::MAX {
                return Err(axiom(
                    Axiom::MapBijective,
                    &[backward[b as usize] as usize, a],
                ));
            }
            backward[b as usize] = a as u32;
        }
        let f = |x: Elem| Elem(map[x.index()]);
        for a in source.elements() {
            for b in source.elements() {
                if f(source.add(a, b)) != target.add(f(a), f(b)) {
                    return Err(axiom(Axiom::MapAdditive, &[a.index(), b.index()]));
                }
                if f(source.mul(a, b)) != target.mul(f(a), f(b)) {
                    return Err(axiom(Axiom::MapMultiplicative, &[a.index(), b.index()]));
                }
            }
        }
        Ok(RingIsomorphism {
            source: source.id(),
            target: target.id(),
            forward: map,
            backward,
        })
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        let map: Vec<u32> = (0..ring.size() as u32).collect();
        RingIsomorphism {
            source: ring.id(),
            target: ring.id(),
            backward: map.clone(),
            forward: map,
        }
    }

    pub fn source(&self) -> RingId {
        self.source
    }

    pub fn target(&self) -> RingId {
        self.target
    }

    pub fn inverse(&self) -> Self {
        RingIsomorphism {
            source: self.target,
            target: self.source,
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        Elem(self.forward[x.index()])
    }

    #[inline]
    pub fn apply_inverse(&self, y: Elem) -> Elem {
        Elem(self.backward[y.index()])
    }

    /// `σ ∘ α ∘ σ⁻¹` as an endomorphism of the target ring.
    pub fn transport(
        &self,
        target: &FiniteRing,
        alpha: &Endomorphism,
    ) -> Result<Endomorphism, RingError> {
        if alpha.ring() != self.source || target.id() != self.target {
            return Err(RingError::RingMismatch);
        }
        let images = target
            .elements()
            .map(|y| self.apply(alpha.image(self.apply_inverse(y))).0)
            .collect();
        Endomorphism::from_images(target, images, alpha.name())
    }
}

pub(crate) fn relabel(
    ring: &FiniteRing,
    perm: &[u32],
) -> Result<(FiniteRing, RingIsomorphism), RingError> {
    let n = ring.size();
    check_table(n, perm, n, "permutation")?;
    let mut inv = vec![u32::MAX; n];
    for (a, &b) in perm.iter().enumerate() {
        if inv[b as usize] != u32::MAX {
            return Err(axiom(Axiom::MapBijective, &[inv[b as usize] as usize, a]));
        }
        inv[b as usize] = a as u32;
    }
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for &x in &inv {
        let a = Elem(x);
        for &y in &inv {
            let b = Elem(y);
            add.push(perm[ring.add(a, b).index()]);
            mul.push(perm[ring.mul(a, b).index()]);
        }
    }
    let labels = (0..n)
        .map(|x| ring.label(Elem(inv[x])).to_string())
        .collect();
    let image = FiniteRing::from_raw(
        format!("{} (relabeled)", ring.name()),
        n,
        add,
        mul,
        labels,
        Structure::Table,
    )?;
    let iso = RingIsomorphism {
        source: ring.id(),
        target: image.id(),
        forward: perm.to_vec(),
        backward: inv,
    };
    Ok((image, iso))
}

/// A uniformly random relabeling of the carrier, reproducible from `seed`.
pub fn random_relabeling(ring: &FiniteRing, seed: u64) -> (FiniteRing, RingIsomorphism) {
    let mut perm: Vec<u32> = (0..ring.size() as u32).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    relabel(ring, &perm).expect("a permutation relabeling of a valid ring is valid")
}
