#![allow(dead_code)]

use skewring::corpus::{CorpusEntry, Manifest};
use skewring::ring::{
    direct_product, galois_field, trivial_extension, zmod, Bimodule, Elem, Endomorphism, FiniteRing,
};

/// Every endomorphism of a small ring, found by trying all self-maps.
pub fn all_endomorphisms(ring: &FiniteRing) -> Vec<Endomorphism> {
    let n = ring.size();
    let total = n.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut images = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            images.push((c % n) as u32);
            c /= n;
        }
        if images[0] != 0 {
            continue;
        }
        if let Ok(e) = Endomorphism::from_images(ring, images, &format!("map{code}")) {
            out.push(e);
        }
    }
    out
}

/// Rings of order at most 4, unital and not.
pub fn small_rings() -> Vec<FiniteRing> {
    let z2 = zmod(2).unwrap();
    let mut rings = vec![
        z2.clone(),
        zmod(3).unwrap(),
        zmod(4).unwrap(),
        direct_product(&z2, &z2).unwrap(),
        galois_field(2, 2).unwrap(),
        trivial_extension(&z2, &Bimodule::regular(&z2)).unwrap(),
        trivial_extension(&z2, &Bimodule::null(&z2, 2).unwrap()).unwrap(),
    ];
    for entry in corpus() {
        if entry.ring.size() <= 4 {
            rings.push(entry.ring);
        }
    }
    rings
}

/// Every small ring paired with each of its endomorphisms.
pub fn small_systems() -> Vec<(FiniteRing, Endomorphism)> {
    let mut out = Vec::new();
    for ring in small_rings() {
        for alpha in all_endomorphisms(&ring) {
            out.push((ring.clone(), alpha));
        }
    }
    out
}

pub fn corpus() -> Vec<CorpusEntry> {
    Manifest::default_manifest().build_all().unwrap()
}

pub fn entry(name: &str) -> CorpusEntry {
    Manifest::default_manifest()
        .entry(name)
        .unwrap()
        .build()
        .unwrap()
}

/// `α^k(x)` by applying the map `k` times.
pub fn iterate(alpha: &Endomorphism, k: usize, mut x: Elem) -> Elem {
    for _ in 0..k {
        x = alpha.image(x);
    }
    x
}

/// Drops trailing zeros.
pub fn trim(ring: &FiniteRing, mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|&e| ring.is_zero(e)) {
        v.pop();
    }
    v
}

/// Skew product from the rule `(a x^i)(b x^j) = a α^i(b) x^(i+j)`, summed
/// term by term.
pub fn naive_mul(ring: &FiniteRing, alpha: &Endomorphism, p: &[Elem], q: &[Elem]) -> Vec<Elem> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            let term = ring.mul(a, iterate(alpha, i, b));
            out[i + j] = ring.add(out[i + j], term);
        }
    }
    trim(ring, out)
}

pub fn naive_add(ring: &FiniteRing, p: &[Elem], q: &[Elem]) -> Vec<Elem> {
    let n = p.len().max(q.len());
    let get = |v: &[Elem], k: usize| v.get(k).copied().unwrap_or(ring.zero());
    trim(
        ring,
        (0..n).map(|k| ring.add(get(p, k), get(q, k))).collect(),
    )
}

/// All coefficient vectors of length `len`, least index first.
pub fn all_vectors(ring: &FiniteRing, len: usize) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = ring.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |&e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}
