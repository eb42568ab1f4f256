//! Arithmetic and small dense linear algebra over a prime field `F_p`.

use serde::Serialize;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Smallest generator of the multiplicative group of `F_p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut k = 2;
    while k * k <= m {
        if m.is_multiple_of(k) {
            factors.push(k);
            while m.is_multiple_of(k) {
                m /= k;
            }
        }
        k += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, order / f, p) != 1))
        .expect("every prime field has a primitive root")
}

/// Rank of a `rows x cols` row-major matrix over `F_p`; `m` is clobbered.
pub fn rank_mod(m: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..cols {
                m.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = inv_mod(m[rank * cols + c], p);
        for k in c..cols {
            m[rank * cols + k] = m[rank * cols + k] * inv % p;
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let f = m[r * cols + c];
            if f == 0 {
                continue;
            }
            for k in c..cols {
                let sub = f * m[rank * cols + k] % p;
                m[r * cols + k] = (m[r * cols + k] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    pub n: usize,
    pub data: Vec<u64>,
}

impl SquareMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        SquareMatrix { n, data }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.n + c]
    }

    pub fn is_invertible(&self, p: u64) -> bool {
        let mut m = self.data.clone();
        rank_mod(&mut m, self.n, self.n, p) == self.n
    }

    /// Inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self, p: u64) -> Option<SquareMatrix> {
        let n = self.n;
        let w = 2 * n;
        let mut aug = vec![0; n * w];
        for r in 0..n {
            aug[r * w..r * w + n].copy_from_slice(&self.data[r * n..r * n + n]);
            aug[r * w + n + r] = 1;
        }
        rank_mod(&mut aug, n, w, p);
        // the left block reduces to the identity iff it was invertible
        if (0..n).any(|r| aug[r * w + r] != 1) {
            return None;
        }
        let mut data = vec![0; n * n];
        for r in 0..n {
            data[r * n..r * n + n].copy_from_slice(&aug[r * w + n..r * w + w]);
        }
        Some(SquareMatrix { n, data })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// Upper triangular invertible matrices at every vertex.
    Borel,
    /// Full general linear group at every vertex.
    Full,
}

/// `|GL_n(F_p)|` or `|B_n(F_p)|`, if it fits in a `u128`.
pub fn group_order(n: usize, p: u64, kind: GroupKind) -> Option<u128> {
    let p = p as u128;
    let n32 = u32::try_from(n).ok()?;
    match kind {
        GroupKind::Full => {
            let pn = p.checked_pow(n32)?;
            (0..n32).try_fold(1u128, |acc, k| acc.checked_mul(pn - p.pow(k)))
        }
        GroupKind::Borel => {
            let units = (p - 1).checked_pow(n32)?;
            let upper = p.checked_pow(n32 * n32.saturating_sub(1) / 2)?;
            units.checked_mul(upper)
        }
    }
}

/// Every element of `GL_n(F_p)` or `B_n(F_p)`, in lexicographic order of
/// row-major entries.
pub fn group_elements(n: usize, p: u64, kind: GroupKind) -> Vec<SquareMatrix> {
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| kind == GroupKind::Full || r <= c)
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0u64; free.len()];
    loop {
        let mut m = SquareMatrix {
            n,
            data: vec![0; n * n],
        };
        for (&(r, c), &x) in free.iter().zip(&digits) {
            m.data[r * n + c] = x;
        }
        let keep = match kind {
            GroupKind::Borel => (0..n).all(|i| m.get(i, i) != 0),
            GroupKind::Full => m.is_invertible(p),
        };
        if keep {
            out.push(m);
        }
        let mut k = digits.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// A generating set: elementary transvections (upper ones only for the
/// Borel) and diagonal scalings by a primitive root (one position for the
/// full group, every position for the Borel). Identity matrices are left out.
pub fn group_generators(n: usize, p: u64, kind: GroupKind) -> Vec<SquareMatrix> {
    let mut gens = Vec::new();
    let omega = primitive_root(p);
    if omega != 1 {
        let positions = match kind {
            GroupKind::Full => n.min(1),
            GroupKind::Borel => n,
        };
        for a in 0..positions {
            let mut m = SquareMatrix::identity(n);
            m.data[a * n + a] = omega;
            gens.push(m);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a == b || (kind == GroupKind::Borel && a > b) {
                continue;
            }
            let mut m = SquareMatrix::identity(n);
            m.data[a * n + b] = 1;
            gens.push(m);
        }
    }
    gens
}
