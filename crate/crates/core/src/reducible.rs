//! Geometrically reducible fibers and fibers over a fixed discriminant polynomial.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::fiber::{classify_fiber, fiber_disc_poly, fiber_leading_coefficient, FiberBase};
use crate::fit::least_squares_slope;
use crate::poly::IntPoly;
use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;


/// Reducible bases found in the box `|a_j| <= h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleScanReport {
    pub n: usize,
    pub h: u64,
    /// Each hit with its witness `p = c * g^2`.
    pub hits: Vec<(FiberBase, BigInt, IntPoly)>,
}

impl ReducibleScanReport {
    pub fn count(&self) -> usize {
        self.hits.len()
    }

    /// Hits inside the smaller box `|a_j| <= h`.
    pub fn count_within(&self, h: u64) -> usize {
        let hb = BigInt::from(h);
        self.hits.iter().filter(|(b, _, _)| b.height() <= hb).count()
    }
}

/// Every base of the cube `[-h, h]^(n-2)` in lexicographic order.
pub fn bases_in_box(n: usize, h: u64) -> Result<impl Iterator<Item = FiberBase>> {
    if n < 3 {
        return Err(Error::domain("fiber degree must be at least 3"));
    }
    let h = i64::try_from(h).map_err(|_| Error::Overflow("box half-side".into()))?;
    let dims = n - 2;
    let mut current = alloc::vec![-h; dims];
    let mut done = false;
    Ok(core::iter::from_fn(move || {
        if done {
            return None;
        }
        let base = FiberBase::from_i64s(n, &current).expect("dimension matches");
        let mut k = dims;
        loop {
            if k == 0 {
                done = true;
                break;
            }
            k -= 1;
            if current[k] < h {
                current[k] += 1;
                break;
            }
            current[k] = -h;
        }
        Some(base)
    }))
}

/// Exhaustive scan of `|a_j| <= h` for reducible fibers.
pub fn scan_reducible_fibers(n: usize, h: u64) -> Result<ReducibleScanReport> {
    let mut hits = Vec::new();
    for base in bases_in_box(n, h)? {
        let curve = classify_fiber(&base);
        if let Some((c, g)) = curve.square_witness {
            hits.push((base, c, g));
        }
    }
    Ok(ReducibleScanReport { n, h, hits })
}

/// Reducible-base counts over an `H` grid and their growth exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducibleGrowth {
    pub n: usize,
    pub counts: Vec<(u64, u64)>,
    /// Slope of `log(count + 1)` against `log(2H + 1)`.
    pub slope: f64,
}

pub fn reducible_growth_exponent(n: usize, grid: &[u64]) -> Result<ReducibleGrowth> {
    if n.is_multiple_of(2) {
        return Err(Error::domain("reducible fibers only occur for odd n"));
    }
    if grid.len() < 3 {
        return Err(Error::domain("growth fit needs at least three H values"));
    }
    let hmax = *grid.iter().max().expect("non-empty");
    let report = scan_reducible_fibers(n, hmax)?;
    let counts: Vec<(u64, u64)> = grid
        .iter()
        .map(|&h| (h, report.count_within(h) as u64))
        .collect();
    let pts: Vec<(f64, f64)> = counts
        .iter()
        .map(|&(h, k)| ((2.0 * h as f64 + 1.0).ln(), (k as f64 + 1.0).ln()))
        .collect();
    let slope = least_squares_slope(&pts)?;
    Ok(ReducibleGrowth { n, counts, slope })
}

/// Number of bases in `|a_j| <= H` whose fiber polynomial is exactly `target`, per `H`.
pub fn box_stabilization_counts(n: usize, target: &IntPoly, grid: &[u64]) -> Result<Vec<u64>> {
    if n < 3 {
        return Err(Error::domain("fiber degree must be at least 3"));
    }
    let Some(&hmax) = grid.iter().max() else {
        return Ok(Vec::new());
    };
    if target.degree() != Some(n - 1) || target.lc() != fiber_leading_coefficient(n) {
        return Ok(alloc::vec![0; grid.len()]);
    }
    // p(0) = Disc(q0) and the lead are fixed; compare the full polynomial only then
    let mut heights = Vec::new();
    for base in bases_in_box(n, hmax)? {
        if fiber_disc_poly(&base) == *target {
            heights.push(base.height().to_u64().unwrap_or(u64::MAX));
        }
    }
    Ok(grid
        .iter()
        .map(|&h| heights.iter().filter(|&&x| x <= h).count() as u64)
        .collect())
}
