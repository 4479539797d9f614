//! Table construction for `GF(p^k)`.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) struct FieldTables {
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub labels: Vec<String>,
    pub modulus: Vec<u32>,
}

/// Polynomials over `ℤ_p` as coefficient vectors, constant term first.
type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo a monic `m`.
fn rem_monic(mut a: Poly, m: &[u32], p: u32) -> Poly {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64) % p as u64;
                a[shift + i] = ((a[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
        }
        a.pop();
    }
    trim(a)
}

fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    rem_monic(out.into_iter().map(|c| c as u32).collect(), m, p)
}

fn digits(mut x: usize, p: u32, k: u32) -> Poly {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push((x % p as usize) as u32);
        x /= p as usize;
    }
    out
}

fn encode(a: &[u32], p: u32) -> u32 {
    a.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `rank`, with `c_0` the most significant digit so that ranks
/// enumerate `(c_0, …, c_{deg-1})` lexicographically.
fn monic_from_rank(rank: usize, p: u32, deg: u32) -> Poly {
    let mut low = digits(rank, p, deg);
    low.reverse();
    low.push(1);
    low
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = (f.len() - 1) as u32;
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d);
        for rank in 0..count {
            let g = monic_from_rank(rank, p, d);
            if rem_monic(f.to_vec(), &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn label(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let t = match (i, x) {
            (0, _) => x.to_string(),
            (1, 1) => "g".to_string(),
            (1, _) => format!("{x}g"),
            (_, 1) => format!("g^{i}"),
            _ => format!("{x}g^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl FieldTables {
    /// `n` must equal `p^k`; `p` must be prime.
    pub fn build(p: u32, k: u32, n: usize) -> FieldTables {
        let count = (p as usize).pow(k);
        let modulus = (0..count)
            .map(|rank| monic_from_rank(rank, p, k))
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree");

        let elems: Vec<Poly> = (0..n).map(|x| trim(digits(x, p, k))).collect();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            let dx = digits(x, p, k);
            for y in 0..n {
                let dy = digits(y, p, k);
                let s: Poly = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add.push(encode(&s, p));
                mul.push(encode(&mul_mod(&elems[x], &elems[y], &modulus, p), p));
            }
        }
        let labels = (0..n).map(|x| label(&digits(x, p, k))).collect();
        let mut low = modulus;
        low.pop();
        FieldTables {
            add,
            mul,
            labels,
            modulus: low,
        }
    }
}
