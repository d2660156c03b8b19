//! Growth exponents, the Pila bound, and point counts on single fibers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::arith::is_square_int;
use crate::census::BoxConstant;
use crate::fiber::{classify_fiber, fiber_disc_poly, FiberBase};
use crate::fit::fit_shifted_exponent;
use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

pub type Exponent = Ratio<i64>;

/// Exponents of `X` attached to degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentSet {
    pub n: usize,
    /// `(n^2 - 2) / (4(n - 1))`
    pub theorem: Exponent,
    /// `(n + 2) / 4`
    pub schmidt: Exponent,
    /// `1/2`
    pub malle: Exponent,
    /// `n / (4(n - 1))`, the per-fiber count exponent
    pub pila_fiber: Exponent,
    /// `2n + 1`, power of `log X` in the main bound
    pub log_power: u32,
}

pub fn theorem_exponents(n: usize) -> Result<ExponentSet> {
    if n < 3 {
        return Err(Error::domain("exponents are defined for n >= 3"));
    }
    let m = n as i64;
    Ok(ExponentSet {
        n,
        theorem: Ratio::new(m * m - 2, 4 * (m - 1)),
        schmidt: Ratio::new(m + 2, 4),
        malle: Ratio::new(1, 2),
        pila_fiber: Ratio::new(m, 4 * (m - 1)),
        log_power: 2 * n as u32 + 1,
    })
}

/// Degree `d` and coordinate bound `B` of a plane curve point count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PilaBoundInput {
    pub d: u32,
    pub b: f64,
}

/// `(3d)^(4d+8) * B^(1/d) * (log B)^(2d+3)`, kept in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PilaBound {
    pub ln_value: f64,
    pub log10_value: f64,
}

impl PilaBound {
    /// The plain value; `inf` once it leaves the `f64` range.
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }

    /// `count <= bound`, compared in log space.
    pub fn admits(&self, count: u64) -> bool {
        count == 0 || (count as f64).ln() <= self.ln_value
    }
}

pub fn pila_bound_value(input: PilaBoundInput) -> Result<PilaBound> {
    if input.d < 1 || input.b.is_nan() || input.b <= 1.0 || !input.b.is_finite() {
        return Err(Error::domain("Pila bound needs d >= 1 and B > 1"));
    }
    let d = input.d as f64;
    let ln_b = input.b.ln();
    let ln_value = (4.0 * d + 8.0) * (3.0 * d).ln() + ln_b / d + (2.0 * d + 3.0) * ln_b.ln();
    Ok(PilaBound {
        ln_value,
        log10_value: ln_value / core::f64::consts::LN_10,
    })
}

/// Ranges of a fiber count: `|a_n| <= floor(c X^(n/(2(n-1))))`, `sqrt p <= floor(c X^(n/4))`.
fn fiber_ranges(n: usize, x: u64, c: BoxConstant) -> (BigInt, BigInt) {
    let k = 2 * (n as u32 - 1);
    (c.scaled_root(x, n as u32, k), c.scaled_root(x, n as u32, 4))
}

/// Integers `a_n` in range with `p(a_n)` a perfect square whose root is in range.
///
/// `p(a_n) = 0` is a singular point and only counts with `include_singular`.
pub fn count_fiber_points(base: &FiberBase, x: u64, c: BoxConstant, include_singular: bool) -> Result<u64> {
    if x < 1 {
        return Err(Error::domain("fiber count needs X >= 1"));
    }
    let p = fiber_disc_poly(base);
    let (range, d_bound) = fiber_ranges(base.n(), x, c);
    let range = range
        .to_i64()
        .ok_or_else(|| Error::Overflow("fiber range exceeds i64".into()))?;
    let d_bound_u = d_bound.to_u128();
    let mut count = 0;
    for y in -range..=range {
        let root = match p.eval_i128(y as i128) {
            Some(v) if v < 0 => continue,
            Some(v) => match crate::arith::is_square_u128(v as u128) {
                Some(r) => r,
                None => continue,
            },
            None => match is_square_int(&p.eval(&BigInt::from(y))) {
                Some(r) => match r.to_u128() {
                    Some(r) => r,
                    None => continue,
                },
                None => continue,
            },
        };
        if root == 0 && !include_singular {
            continue;
        }
        if d_bound_u.is_some_and(|b| root <= b) {
            count += 1;
        }
    }
    Ok(count)
}

/// Per-`X` counts on one fiber, their log-log slope, and the Pila check.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberScan {
    pub base: FiberBase,
    pub counts: Vec<(u64, u64)>,
    /// Slope of `log(count + 1)` against `log X`.
    pub slope: f64,
    /// Every count is at most the Pila bound with `d = n - 1`, `B = c X^(n/4)`.
    pub within_pila_bound: bool,
}

pub fn fiber_exponent_scan(base: &FiberBase, grid: &[u64], c: BoxConstant) -> Result<FiberScan> {
    if grid.len() < 3 {
        return Err(Error::domain("fiber scan needs at least three grid points"));
    }
    if !classify_fiber(base).geometrically_irreducible {
        return Err(Error::domain("fiber scan needs a geometrically irreducible fiber"));
    }
    let n = base.n();
    let mut counts = Vec::with_capacity(grid.len());
    let mut within = true;
    for &x in grid {
        let count = count_fiber_points(base, x, c, false)?;
        let b = c.to_f64() * (x as f64).powf(n as f64 / 4.0);
        let bound = pila_bound_value(PilaBoundInput {
            d: n as u32 - 1,
            b: b.max(1.0 + 1e-9),
        })?;
        within &= bound.admits(count);
        counts.push((x, count));
    }
    let pts: Vec<(f64, u64)> = counts.iter().map(|&(x, k)| (x as f64, k)).collect();
    let slope = fit_shifted_exponent(&pts)?;
    Ok(FiberScan {
        base: base.clone(),
        counts,
        slope,
        within_pila_bound: within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64) -> BoxConstant {
        BoxConstant::integer(k).unwrap()
    }

    #[test]
    fn exponent_values() {
        let e = theorem_exponents(6).unwrap();
        assert_eq!(e.theorem, Ratio::new(17, 10));
        assert_eq!(e.schmidt, Ratio::new(2, 1));
        let e = theorem_exponents(3).unwrap();
        assert_eq!(e.theorem, Ratio::new(7, 8));
        assert_eq!(e.log_power, 7);
        assert!(theorem_exponents(2).is_err());
        for n in 3..=100 {
            let e = theorem_exponents(n).unwrap();
            assert_eq!(e.schmidt - e.theorem, e.pila_fiber);
            assert!(e.theorem < e.schmidt);
        }
    }

    #[test]
    fn pila_values() {
        let v = pila_bound_value(PilaBoundInput { d: 1, b: core::f64::consts::E }).unwrap();
        assert!((v.value() / (531441.0 * core::f64::consts::E) - 1.0).abs() < 1e-12);
        let v = pila_bound_value(PilaBoundInput { d: 2, b: 100.0 }).unwrap();
        let expected = 16.0 * 6f64.ln() + 10f64.ln() + 7.0 * 100f64.ln().ln();
        assert!((v.ln_value - expected).abs() < 1e-12);
        assert!((v.log10_value - expected / core::f64::consts::LN_10).abs() < 1e-12);
        let w = pila_bound_value(PilaBoundInput { d: 2, b: 1000.0 }).unwrap();
        assert!(w.ln_value > v.ln_value);
        assert!(pila_bound_value(PilaBoundInput { d: 0, b: 10.0 }).is_err());
        assert!(pila_bound_value(PilaBoundInput { d: 2, b: 1.0 }).is_err());
        // (3d)^(4d+8) leaves the f64 range at d = 9 but stays comparable in log space
        let big = pila_bound_value(PilaBoundInput { d: 40, b: 1e6 }).unwrap();
        assert!(big.value().is_infinite() && big.log10_value.is_finite());
    }

    #[test]
    fn fiber_point_counts() {
        let base = FiberBase::from_i64s(3, &[-3]).unwrap();
        assert_eq!(count_fiber_points(&base, 100, c(1), false).unwrap(), 2);
        assert_eq!(count_fiber_points(&base, 100, c(1), true).unwrap(), 4);
        let flat = FiberBase::from_i64s(3, &[0]).unwrap();
        assert_eq!(count_fiber_points(&flat, 100, c(1), false).unwrap(), 0);
        assert_eq!(count_fiber_points(&flat, 100, c(1), true).unwrap(), 1);
    }

    #[test]
    fn fiber_scan() {
        let base = FiberBase::from_i64s(3, &[-3]).unwrap();
        let s = fiber_exponent_scan(&base, &[100, 1000, 10_000], c(1)).unwrap();
        assert!(s.within_pila_bound);
        assert_eq!(s.counts.len(), 3);
        assert!(s.slope.abs() < 1e-12, "constant counts give slope 0");
        let flat = FiberBase::from_i64s(3, &[0]).unwrap();
        assert!(fiber_exponent_scan(&flat, &[100, 1000, 10_000], c(1)).is_err());
        assert!(fiber_exponent_scan(&base, &[100, 1000], c(1)).is_err());
    }
}
