//! Irreducibility over `Q`, Frobenius cycle types, and `A_n` certification.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{abs_u64, divisors_u64, is_prime_u64, is_square_int, mod_u64, Primes};
use crate::modp::PolyModP;
use crate::poly::{discriminant, IntPoly};
use crate::{Error, Result};

/// Degrees of the irreducible factors modulo an unramified prime, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<u32>);

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Even permutation iff `n - #parts` is even.
    pub fn is_even(&self) -> bool {
        (self.degree() as usize - self.0.len()).is_multiple_of(2)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotAnReason {
    NonSquareDisc,
    Reducible,
    OddCycleTypeObserved,
    ProperSubgroupCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaloisVerdict {
    CertifiedAn,
    CertifiedNotAn(NotAnReason),
    /// No rule fired within the prime budget.
    Unknown { primes_tried: usize },
}

impl GaloisVerdict {
    pub fn is_an(&self) -> bool {
        matches!(self, GaloisVerdict::CertifiedAn)
    }
}

/// Pattern of `f mod p`.
pub fn factor_pattern_mod_p(f: &IntPoly, p: u64) -> Result<CycleType> {
    if !is_prime_u64(p) || p >= 1 << 32 {
        return Err(Error::domain("modulus must be a prime below 2^32"));
    }
    let disc = discriminant(f)?;
    factor_pattern_unchecked(f, &disc, p)
}

fn factor_pattern_unchecked(f: &IntPoly, disc: &BigInt, p: u64) -> Result<CycleType> {
    if mod_u64(disc, p) == 0 || mod_u64(&f.lc(), p) == 0 {
        return Err(Error::RamifiedPrime(p));
    }
    Ok(CycleType::new(PolyModP::reduce(f, p).distinct_degree_pattern()))
}

/// The first `count` primes not dividing `disc * lc(f)`, with their patterns.
fn good_prime_patterns<'a>(f: &'a IntPoly, disc: &BigInt, count: usize) -> impl Iterator<Item = (u64, CycleType)> + 'a {
    let disc = disc.clone();
    Primes::new()
        .filter_map(move |p| factor_pattern_unchecked(f, &disc, p).ok().map(|c| (p, c)))
        .take(count)
}

const SIEVE_PRIMES: usize = 20;

/// Subset sums of `parts`, as a bitmask over `0..=n`.
fn subset_sums(parts: &[u32], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in parts {
        for s in (d as usize..=n).rev() {
            if reach[s - d as usize] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Exact irreducibility over `Q` of a polynomial with nonzero discriminant.
///
/// Factor-degree sieve over several good primes, then a bounded search for
/// monic factors of every surviving degree `d <= n/2`.
pub fn is_irreducible_q(f: &IntPoly) -> Result<bool> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::domain("irreducibility test needs degree >= 2")),
    };
    if !f.is_monic() {
        return Err(Error::domain("irreducibility test needs a monic polynomial"));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::domain("irreducibility test needs a nonzero discriminant"));
    }
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    let mut possible = vec![true; n + 1];
    for (_, pattern) in good_prime_patterns(f, &disc, SIEVE_PRIMES) {
        let sums = subset_sums(pattern.parts(), n);
        for (slot, s) in possible.iter_mut().zip(sums) {
            *slot &= s;
        }
        if possible[1..n].iter().all(|x| !x) {
            return Ok(true);
        }
    }
    for d in 1..=n / 2 {
        if (possible[d] || possible[n - d]) && has_monic_factor_of_degree(f, d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches monic factors of degree `d`. Coefficients of `t^k` obey the
/// Mignotte bound `C(d, k) * ||f||_2`; constant terms divide `f(0)`.
fn has_monic_factor_of_degree(f: &IntPoly, d: usize) -> bool {
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let mut binom = vec![BigInt::one(); d + 1];
    for k in 1..=d {
        binom[k] = &binom[k - 1] * BigInt::from(d + 1 - k) / BigInt::from(k);
    }
    let bound_at = |k: usize| -> i64 { (&binom[k] * &norm).try_into().unwrap_or(i64::MAX) };
    let f0 = f.coeff(0);
    let f1 = f.eval(&BigInt::one());
    let fm1 = f.eval(&-BigInt::one());

    let b0 = BigInt::from(bound_at(0));
    let constants: Vec<BigInt> = match abs_u64(&f0) {
        Some(c) => {
            let mut ds: Vec<BigInt> = divisors_u64(c)
                .into_iter()
                .map(BigInt::from)
                .filter(|x| *x <= b0)
                .collect();
            ds.sort();
            let neg: Vec<BigInt> = ds.iter().map(|x| -x).collect();
            ds.extend(neg);
            ds
        }
        None => {
            let b = bound_at(0);
            (-b..=b)
                .map(BigInt::from)
                .filter(|x| !x.is_zero() && f0.is_multiple_of(x))
                .collect()
        }
    };
    let bounds: Vec<i64> = (1..d).map(bound_at).collect();
    let mut middle: Vec<i64> = bounds.iter().map(|b| -b).collect();
    for c0 in &constants {
        // odometer over the coefficients of t^1 .. t^{d-1}
        middle.iter_mut().zip(&bounds).for_each(|(m, b)| *m = -b);
        loop {
            let mut coeffs = Vec::with_capacity(d + 1);
            coeffs.push(c0.clone());
            coeffs.extend(middle.iter().map(|&m| BigInt::from(m)));
            coeffs.push(BigInt::one());
            let g = IntPoly::from_coeffs(coeffs);
            if divides_at(&g, &BigInt::one(), &f1) && divides_at(&g, &-BigInt::one(), &fm1) && f.div_exact(&g).is_some() {
                return true;
            }
            let mut k = 0;
            loop {
                if k == middle.len() {
                    break;
                }
                if middle[k] < bounds[k] {
                    middle[k] += 1;
                    break;
                }
                middle[k] = -bounds[k];
                k += 1;
            }
            if k == middle.len() {
                break;
            }
        }
    }
    false
}

fn divides_at(g: &IntPoly, x: &BigInt, fx: &BigInt) -> bool {
    let gx = g.eval(x);
    if gx.is_zero() {
        fx.is_zero()
    } else {
        fx.is_multiple_of(&gx)
    }
}

/// `t^3 - p t^2 - 4 r t + (4 p r - q^2)` for `t^4 + p t^2 + q t + r`.
pub fn resolvent_cubic(f: &IntPoly) -> Result<IntPoly> {
    if f.degree() != Some(4) || !f.is_monic() {
        return Err(Error::domain("resolvent cubic needs a monic quartic"));
    }
    if !f.coeff(3).is_zero() {
        return Err(Error::domain("resolvent cubic needs a zero cubic term"));
    }
    Ok(general_resolvent(f))
}

/// `t^3 - c t^2 + (b d - 4 e) t - (b^2 e - 4 c e + d^2)` for `t^4 + b t^3 + c t^2 + d t + e`.
fn general_resolvent(f: &IntPoly) -> IntPoly {
    let (b, c, d, e) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let four = BigInt::from(4);
    IntPoly::from_coeffs(vec![
        -(&b * &b * &e - &four * &c * &e + &d * &d),
        &b * &d - &four * &e,
        -c,
        BigInt::one(),
    ])
}

/// A prime `l` such that some power of an element of this type is an `l`-cycle
/// usable in Jordan's theorem: `l <= n - 3`, and `l > n/2` unless `n` is prime.
fn jordan_cycle(ct: &CycleType, n: u32) -> Option<u32> {
    let n_prime = is_prime_u64(n as u64);
    ct.parts().iter().copied().find(|&l| {
        is_prime_u64(l as u64)
            && l + 3 <= n
            && (n_prime || 2 * l > n)
            && ct.parts().iter().filter(|&&x| x == l).count() == 1
            && ct.parts().iter().all(|&x| x == l || x % l != 0)
    })
}

/// Decides whether the Galois group of `f` is `A_n`, soundly.
///
/// Rules: nonzero square discriminant and irreducibility are required; then
/// `n = 3` is immediate, `n = 4` needs an irreducible resolvent cubic, `n = 5`
/// needs an observed `(1,1,3)`, and otherwise an observed cycle type whose
/// power is a Jordan prime cycle. Any odd cycle type refutes `A_n`.
pub fn certify_an(f: &IntPoly, prime_budget: usize) -> Result<GaloisVerdict> {
    let n = match f.degree() {
        Some(n) if n >= 3 => n,
        _ => return Err(Error::domain("certification needs degree >= 3")),
    };
    if !f.is_monic() {
        return Err(Error::domain("certification needs a monic polynomial"));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() || is_square_int(&disc).is_none() {
        return Ok(GaloisVerdict::CertifiedNotAn(NotAnReason::NonSquareDisc));
    }
    if !is_irreducible_q(f)? {
        return Ok(GaloisVerdict::CertifiedNotAn(NotAnReason::Reducible));
    }
    match n {
        3 => return Ok(GaloisVerdict::CertifiedAn),
        4 => {
            return Ok(if is_irreducible_q(&general_resolvent(f))? {
                GaloisVerdict::CertifiedAn
            } else {
                GaloisVerdict::CertifiedNotAn(NotAnReason::ProperSubgroupCertificate)
            })
        }
        _ => {}
    }
    let n32 = n as u32;
    let mut tried = 0;
    for (_, ct) in good_prime_patterns(f, &disc, prime_budget) {
        tried += 1;
        if !ct.is_even() {
            return Ok(GaloisVerdict::CertifiedNotAn(NotAnReason::OddCycleTypeObserved));
        }
        let fires = if n == 5 {
            ct.parts() == [1, 1, 3]
        } else {
            jordan_cycle(&ct, n32).is_some()
        };
        if fires {
            return Ok(GaloisVerdict::CertifiedAn);
        }
    }
    Ok(GaloisVerdict::Unknown { primes_tried: tried })
}

/// Patterns at the first `prime_count` primes not dividing `disc(f)`.
pub fn field_fingerprint(f: &IntPoly, prime_count: usize) -> Result<Vec<(u64, CycleType)>> {
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Err(Error::domain("fingerprint needs a nonzero discriminant"));
    }
    Ok(good_prime_patterns(f, &disc, prime_count).collect())
}

/// Patterns over the first `prime_count` primes, `None` where ramified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub disc: BigInt,
    pub patterns: Vec<Option<CycleType>>,
}

impl Fingerprint {
    pub fn of(f: &IntPoly, prime_count: usize) -> Result<Self> {
        let disc = discriminant(f)?;
        if disc.is_zero() {
            return Err(Error::domain("fingerprint needs a nonzero discriminant"));
        }
        Ok(Fingerprint::with_disc(f, disc, prime_count))
    }

    pub(crate) fn with_disc(f: &IntPoly, disc: BigInt, prime_count: usize) -> Self {
        let patterns = Primes::new()
            .take(prime_count)
            .map(|p| factor_pattern_unchecked(f, &disc, p).ok())
            .collect();
        Fingerprint { disc, patterns }
    }

    /// Equal patterns at every common good prime and equal square-free
    /// kernels of the discriminants.
    pub fn agrees_with(&self, other: &Fingerprint) -> bool {
        let patterns_agree = self
            .patterns
            .iter()
            .zip(&other.patterns)
            .all(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            });
        patterns_agree && same_squarefree_kernel(&self.disc, &other.disc)
    }
}

/// `kernel(a) == kernel(b)` iff `a * b` is a nonzero square.
fn same_squarefree_kernel(a: &BigInt, b: &BigInt) -> bool {
    if a == b {
        return !a.is_zero();
    }
    let prod = a * b;
    !prod.is_zero() && is_square_int(&prod).is_some()
}

/// Monte Carlo field-isomorphism test: equal Frobenius patterns at every
/// common good prime among the first `prime_count` primes, and equal
/// square-free discriminant kernels. Exact below degree 7 for enough primes;
/// arithmetically equivalent fields can collide from degree 7 on.
pub fn same_field_heuristic(f: &IntPoly, g: &IntPoly, prime_count: usize) -> Result<bool> {
    if f.degree() != g.degree() {
        return Err(Error::domain("same-field test needs equal degrees"));
    }
    let a = Fingerprint::of(f, prime_count)?;
    let b = Fingerprint::of(g, prime_count)?;
    Ok(a.agrees_with(&b))
}

/// `v_p(n)` for `n != 0`.
#[cfg(test)]
fn valuation(n: &BigInt, p: u64) -> u32 {
    let mut m = num_traits::Signed::abs(n);
    let pb = BigInt::from(p);
    let mut v = 0;
    while !m.is_zero() && mod_u64(&m, p) == 0 {
        m /= &pb;
        v += 1;
    }
    v
}
