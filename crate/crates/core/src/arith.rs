//! Integer helpers: exact square roots, small primes, and `u64` factorization.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};

/// Returns `Some(r)` with `r >= 0` and `r * r == n` when `n` is a perfect square.
pub fn is_square_int(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(BigInt::zero()),
        Sign::Plus => {
            let r = n.sqrt();
            if &r * &r == *n {
                Some(r)
            } else {
                None
            }
        }
    }
}

/// Square root for the fixed-width fast paths.
pub fn is_square_u128(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Smallest `r` with `r * r >= n`.
pub fn ceil_sqrt_u128(n: u128) -> u128 {
    let r = n.sqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Increasing primes starting at 2.
#[derive(Debug, Clone, Default)]
pub struct Primes {
    next: u64,
}

impl Primes {
    pub fn new() -> Self {
        Primes { next: 2 }
    }
}

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while !is_prime_u64(self.next) {
            self.next += 1;
        }
        let p = self.next;
        self.next += 1;
        Some(p)
    }
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factor_u64(1)` is empty.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut stack = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while m.is_multiple_of(p) && m > 1 {
            primes.push(p);
            m /= p;
        }
    }
    if m > 1 {
        stack.push(m);
    }
    while let Some(k) = stack.pop() {
        if k == 1 {
            continue;
        }
        if is_prime_u64(k) {
            primes.push(k);
            continue;
        }
        let d = pollard_rho(k);
        stack.push(d);
        stack.push(k / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// All positive divisors of `n > 0`, unsorted.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = alloc::vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs
}

/// `floor(num/den * x^(e/k))` computed exactly, for `x >= 0`.
pub fn floor_scaled_root(num: u64, den: u64, x: u64, e: u32, k: u32) -> BigInt {
    let radicand = num_traits::pow(BigInt::from(num), k as usize) * num_traits::pow(BigInt::from(x), e as usize);
    radicand.nth_root(k) / BigInt::from(den)
}

/// `n mod p` in `0..p`.
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// `|n|` as `u64` when it fits.
pub fn abs_u64(n: &BigInt) -> Option<u64> {
    let (_, digits) = n.abs().to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}
