//! Arithmetic in the prime field F_p and small number-theoretic helpers.

/// Deterministic primality test by trial division; p is at most 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Residues modulo a prime `p`, stored as `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    /// `p` must be prime; callers validate it once at field construction.
    pub fn new(p: u32) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// `acc += c * v` coordinate-wise.
    pub fn axpy(self, acc: &mut [u32], c: u32, v: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, &y) in acc.iter_mut().zip(v) {
            *x = self.add(*x, self.mul(c, y));
        }
    }

    pub fn scale(self, c: u32, v: &mut [u32]) {
        for x in v.iter_mut() {
            *x = self.mul(c, *x);
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let s = a.iter().zip(b).fold(0u64, |s, (&x, &y)| {
            (s + x as u64 * y as u64) % self.p as u64
        });
        s as u32
    }
}

/// Decodes `index` as a little-endian base-`p` vector of length `len`.
pub fn digits(mut index: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((index % p as u64) as u32);
        index /= p as u64;
    }
    out
}

/// Inverse of [`digits`].
pub fn undigits(v: &[u32], p: u32) -> u64 {
    v.iter()
        .rev()
        .fold(0u64, |acc, &d| acc * p as u64 + d as u64)
}

/// `base^exp` as u128, saturating.
pub fn pow_sat(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
