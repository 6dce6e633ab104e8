//! Small finite fields `F_q`, `q = p^k ≤ 512`, with table-driven arithmetic.
//!
//! Elements are the integers `0..q`; the base-`p` digits of an element are
//! the coefficients of its polynomial representative, constant term first.

use crate::error::{Error, Result};

pub const DEFAULT_FIELD_CAP: u64 = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    generator: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteField {
    /// Builds `F_q` with the default cap.
    pub fn new(q: u64) -> Result<Self> {
        Self::with_cap(q, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(q: u64, cap: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > cap {
            return Err(Error::CapExceeded { q, cap });
        }
        let (p, k, q) = (p as u32, k, q as u32);
        let modulus = smallest_irreducible(p, k);
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            generator: 0,
            add: Vec::new(),
            mul: Vec::new(),
        };
        field.build_tables();
        field.generator = field.find_generator();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest element generating the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.pack_digits(
            &self
                .digits(a)
                .iter()
                .map(|&c| (self.p - c) % self.p)
                .collect::<Vec<_>>(),
        )
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let digits: Vec<Vec<u32>> = (0..self.q).map(|a| self.digits(a)).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % self.p)
                    .collect();
                self.add[a * q + b] = self.pack_digits(&sum);
                let prod = poly_rem(&poly_mul(&digits[a], &digits[b], self.p), &self.modulus, self.p);
                let mut padded = prod;
                padded.resize(self.k as usize, 0);
                self.mul[a * q + b] = self.pack_digits(&padded);
            }
        }
    }

    fn find_generator(&self) -> u32 {
        let n = (self.q - 1) as u64;
        let primes = prime_factors(n);
        let g = (1..self.q)
            .find(|&g| primes.iter().all(|&l| self.pow(g, n / l) != 1))
            .expect("a finite field has a primitive element");
        assert_eq!(self.pow(g, n), 1, "modulus is not irreducible");
        g
    }
}

/// `(p, k)` with `q = p^k`, `p` prime, `k ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .find(|d| q.is_multiple_of(*d) || d * d > q)
        .map(|d| if q.is_multiple_of(d) { d } else { q })?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over F_p as coefficient vectors, constant term first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder modulo a monic polynomial.
fn poly_rem(a: &[u32], monic: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let d = monic.len() - 1;
    while r.len() > d {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - d;
        for (i, &c) in monic.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

/// Monic polynomials of degree `d`, in lexicographic order of their
/// coefficient sequences read from the constant term up.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut m| {
        let mut coeffs = vec![0u32; d as usize + 1];
        for i in (0..d as usize).rev() {
            coeffs[i] = (m % p as u64) as u32;
            m /= p as u64;
        }
        coeffs[d as usize] = 1;
        coeffs
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = (f.len() - 1) as u32;
    (1..=k / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem(f, &g, p).is_empty()))
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
