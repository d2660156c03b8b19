//! Polynomial arithmetic over the prime field `F_p`, for `p < 2^32`.
//!
//! Only what distinct-degree factorization and multiple-root detection need.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{mod_u64, mul_mod, pow_mod};
use crate::poly::IntPoly;

/// Coefficients in `0..p`, lowest degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut out = PolyModP { p, coeffs };
        out.trim();
        out
    }

    pub fn reduce(f: &IntPoly, p: u64) -> Self {
        PolyModP::new(p, f.coeffs().iter().map(|c| mod_u64(c, p)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = self.inv(lc);
                PolyModP {
                    p: self.p,
                    coeffs: self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let p = self.p;
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        PolyModP::new(p, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolyModP::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        PolyModP::new(p, out)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = self.inv(*d.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (PolyModP::new(p, Vec::new()), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = r[k + dd];
            if top == 0 {
                continue;
            }
            let qk = mul_mod(top, inv, p);
            q[k] = qk;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mul_mod(qk, dc, p)) % p;
            }
        }
        (PolyModP::new(p, q), PolyModP::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        PolyModP::new(p, coeffs)
    }

    /// `base^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut acc = PolyModP::new(self.p, vec![1]).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Degrees of the irreducible factors of a square-free polynomial, ascending.
    pub fn distinct_degree_pattern(&self) -> Vec<u32> {
        let p = self.p;
        let mut f = self.monic();
        let x = PolyModP::new(p, vec![0, 1]);
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut i = 1usize;
        while f.degree().is_some_and(|d| d >= 2 * i) {
            h = h.pow_mod(p, &f);
            let g = f.gcd(&h.sub(&x));
            let dg = g.degree().unwrap_or(0);
            if dg > 0 {
                for _ in 0..dg / i {
                    degrees.push(i as u32);
                }
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        if let Some(d) = f.degree() {
            if d > 0 {
                degrees.push(d as u32);
            }
        }
        degrees.sort_unstable();
        degrees
    }
}
