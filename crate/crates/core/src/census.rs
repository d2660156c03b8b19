//! Enumeration of the trace-zero search box and `A_n` census counts.
//!
//! A degree-`n` field with small trace-zero generator gives a monic
//! polynomial `t^n + a_2 t^{n-2} + ... + a_n` with
//! `|a_j| <= c X^{j/(2(n-1))}` and `|D| <= c X^{n/4}` where `D^2` is its
//! discriminant. The census scans the box for the largest checkpoint once
//! and attributes each hit to the smallest checkpoint box containing it.
//!
//! Scans are split over `a_2` subranges; partial results merge
//! associatively, so a partitioned run matches a single-threaded one.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{ceil_sqrt_u128, floor_scaled_root, is_square_int, is_square_u128};
use crate::cubic::{cubic_field_disc, FieldDisc};
use crate::galois::{certify_an, Fingerprint, GaloisVerdict};
use crate::poly::{discriminant, IntPoly};
use crate::{Error, Result};
#[allow(unused_imports)]
use num_traits::Float;

/// Positive rational box constant `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxConstant {
    num: u64,
    den: u64,
}

impl BoxConstant {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::domain("box constant must be positive"));
        }
        let g = num_integer::gcd(num, den);
        Ok(BoxConstant {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(c: u64) -> Result<Self> {
        BoxConstant::new(c, 1)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `floor(c * x^(e/k))`.
    pub fn scaled_root(&self, x: u64, e: u32, k: u32) -> BigInt {
        floor_scaled_root(self.num, self.den, x, e, k)
    }
}

impl PartialOrd for BoxConstant {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BoxConstant {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for BoxConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for BoxConstant {
    type Err = Error;

    /// Accepts `4`, `3/2` or `2.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(alloc::format!("invalid box constant {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            return BoxConstant::new(n, d);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let den = 10u64.pow(frac.len() as u32);
            let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            return BoxConstant::new(int * den + frac, den);
        }
        BoxConstant::new(s.parse().map_err(|_| bad())?, 1)
    }
}

/// Bounds of the trace-zero box for one `(n, X, c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    pub n: usize,
    pub x: u64,
    pub c: BoxConstant,
    /// `B_j` for `j = 2..=n`, at index `j - 2`.
    pub bounds: Vec<u64>,
    /// `floor(c * X^(n/4))`.
    pub d_bound: u128,
}

impl SearchBox {
    pub fn new(n: usize, x: u64, c: BoxConstant) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("search box needs n >= 3"));
        }
        if x < 1 {
            return Err(Error::domain("search box needs X >= 1"));
        }
        let k = 2 * (n as u32 - 1);
        let bounds = (2..=n as u32)
            .map(|j| {
                c.scaled_root(x, j, k)
                    .to_u64()
                    .filter(|b| *b < (i64::MAX as u64) / 2)
                    .ok_or_else(|| Error::Overflow(alloc::format!("box side B_{j} too large")))
            })
            .collect::<Result<Vec<u64>>>()?;
        let d_bound = c
            .scaled_root(x, n as u32, 4)
            .to_u128()
            .ok_or_else(|| Error::Overflow("discriminant bound too large".into()))?;
        Ok(SearchBox {
            n,
            x,
            c,
            bounds,
            d_bound,
        })
    }

    /// `B_j`.
    pub fn bound(&self, j: usize) -> u64 {
        self.bounds[j - 2]
    }

    /// `prod (2 B_j + 1)`.
    pub fn tuple_count(&self) -> u128 {
        self.bounds.iter().map(|&b| 2 * b as u128 + 1).product()
    }

    /// Full `a_2` range.
    pub fn leading_range(&self) -> RangeInclusive<i64> {
        let b = self.bounds[0] as i64;
        -b..=b
    }

    /// Splits the `a_2` range into `k` disjoint, contiguous, covering pieces
    /// (fewer when the range is shorter than `k`).
    pub fn partition(&self, k: usize) -> Vec<RangeInclusive<i64>> {
        let range = self.leading_range();
        let len = (range.end() - range.start() + 1) as u64;
        let k = (k.max(1) as u64).min(len);
        let mut out = Vec::with_capacity(k as usize);
        let mut start = *range.start();
        for i in 0..k {
            let size = len / k + u64::from(i < len % k);
            let end = start + size as i64 - 1;
            out.push(start..=end);
            start = end + 1;
        }
        out
    }

    /// Lexicographic iterator over `(a_2, ..., a_n)`.
    pub fn tuples(&self) -> BoxTuples {
        self.tuples_in(self.leading_range())
    }

    /// Iterator over tuples whose `a_2` lies in `leading` (clipped to the box).
    pub fn tuples_in(&self, leading: RangeInclusive<i64>) -> BoxTuples {
        let b2 = self.bounds[0] as i64;
        let lo = (*leading.start()).max(-b2);
        let hi = (*leading.end()).min(b2);
        let mut current: Vec<i64> = self.bounds.iter().map(|&b| -(b as i64)).collect();
        current[0] = lo;
        BoxTuples {
            bounds: self.bounds.clone(),
            hi,
            current,
            done: lo > hi,
        }
    }

    /// Whether `(a_2..a_n)` with `|D| = d` lies in this box.
    pub fn contains(&self, tuple: &[i64], d: u128) -> bool {
        d <= self.d_bound && tuple.iter().zip(&self.bounds).all(|(a, b)| a.unsigned_abs() <= *b)
    }
}

#[derive(Debug, Clone)]
pub struct BoxTuples {
    bounds: Vec<u64>,
    hi: i64,
    current: Vec<i64>,
    done: bool,
}

impl Iterator for BoxTuples {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut k = self.current.len() - 1;
        loop {
            let limit = if k == 0 { self.hi } else { self.bounds[k] as i64 };
            if self.current[k] < limit {
                self.current[k] += 1;
                break;
            }
            if k == 0 {
                self.done = true;
                break;
            }
            self.current[k] = -(self.bounds[k] as i64);
            k -= 1;
        }
        Some(out)
    }
}

/// Geometric checkpoint grid `round(xmax / ratio^k) >= xmin`, ascending.
pub fn checkpoint_grid(xmin: u64, xmax: u64, ratio: f64) -> Result<Vec<u64>> {
    if xmin < 1 || xmax < xmin || ratio.is_nan() || ratio <= 1.0 {
        return Err(Error::domain("checkpoint grid needs 1 <= xmin <= xmax and ratio > 1"));
    }
    let mut grid = Vec::new();
    let mut k = 0i32;
    loop {
        let x = (xmax as f64 / ratio.powi(k)).round();
        if x < xmin as f64 {
            break;
        }
        grid.push(x as u64);
        k += 1;
    }
    grid.reverse();
    grid.dedup();
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusConfig {
    pub n: usize,
    /// Ascending discriminant bounds.
    pub checkpoints: Vec<u64>,
    pub c: BoxConstant,
    pub prime_budget: usize,
    pub fingerprint_primes: usize,
}

impl CensusConfig {
    pub fn new(n: usize, checkpoints: Vec<u64>, c: BoxConstant) -> Self {
        CensusConfig {
            n,
            checkpoints,
            c,
            prime_budget: 100,
            fingerprint_primes: 25,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::domain("census needs n >= 3"));
        }
        if self.checkpoints.is_empty() || self.checkpoints[0] < 1 {
            return Err(Error::domain("census needs at least one checkpoint X >= 1"));
        }
        if self.checkpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("checkpoints must be strictly increasing"));
        }
        if self.prime_budget == 0 || self.fingerprint_primes == 0 {
            return Err(Error::domain("prime budgets must be positive"));
        }
        Ok(())
    }
}

/// Counts at one checkpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointCounts {
    pub x: u64,
    /// Tuples with nonzero square discriminant and `|D| <= D_bound`.
    pub points_on_r: u64,
    pub an_polys: u64,
    /// Dedup classes of certified polynomials.
    pub classes: u64,
    /// `n = 3`: classes with field discriminant `<= X`. Otherwise equal to `classes`.
    pub fields: u64,
    pub unknown_verdicts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSummary {
    pub n: usize,
    pub c: BoxConstant,
    pub checkpoints: Vec<CheckpointCounts>,
    /// Tuples of the largest box with zero discriminant.
    pub disc_zero: u64,
    pub unresolved_field_disc: u64,
    /// `true` when `fields` counts classes rather than exact field discriminants (`n != 3`).
    pub fields_are_proxy: bool,
    /// Fingerprints cannot separate arithmetically equivalent fields (`n >= 7`).
    pub arithmetic_equivalence_risk: bool,
}

/// One dedup class of certified polynomials.
#[derive(Debug, Clone)]
pub struct FieldClass {
    pub representative: IntPoly,
    pub fingerprint: Fingerprint,
    pub field_disc: Option<FieldDisc>,
    pub first_checkpoint: usize,
    pub members: u64,
    alive: bool,
}

/// Counts and classes from one `a_2` subrange.
#[derive(Debug, Clone)]
pub struct PartialCensus {
    points: Vec<u64>,
    an: Vec<u64>,
    unknown: Vec<u64>,
    disc_zero: u64,
    classes: Vec<FieldClass>,
    buckets: BTreeMap<Option<FieldDisc>, Vec<usize>>,
}

impl PartialCensus {
    fn empty(checkpoints: usize) -> Self {
        PartialCensus {
            points: vec![0; checkpoints],
            an: vec![0; checkpoints],
            unknown: vec![0; checkpoints],
            disc_zero: 0,
            classes: Vec::new(),
            buckets: BTreeMap::new(),
        }
    }

    /// Union with every existing class the newcomer agrees with.
    fn insert_class(&mut self, class: FieldClass) {
        let bucket = self.buckets.entry(class.field_disc.clone()).or_default();
        let matching: Vec<usize> = bucket
            .iter()
            .copied()
            .filter(|&i| self.classes[i].alive && self.classes[i].fingerprint.agrees_with(&class.fingerprint))
            .collect();
        match matching.split_first() {
            None => {
                bucket.push(self.classes.len());
                self.classes.push(class);
            }
            Some((&root, rest)) => {
                let mut first = class.first_checkpoint;
                let mut members = class.members;
                for &i in rest {
                    let dead = &mut self.classes[i];
                    dead.alive = false;
                    first = first.min(dead.first_checkpoint);
                    members += dead.members;
                }
                let keep = &mut self.classes[root];
                keep.first_checkpoint = keep.first_checkpoint.min(first);
                keep.members += members;
            }
        }
    }

    /// Associative, commutative merge.
    pub fn merge(mut self, other: PartialCensus) -> PartialCensus {
        for (a, b) in self.points.iter_mut().zip(&other.points) {
            *a += b;
        }
        for (a, b) in self.an.iter_mut().zip(&other.an) {
            *a += b;
        }
        for (a, b) in self.unknown.iter_mut().zip(&other.unknown) {
            *a += b;
        }
        self.disc_zero += other.disc_zero;
        for class in other.classes.into_iter().filter(|c| c.alive) {
            self.insert_class(class);
        }
        self
    }

    /// Live dedup classes.
    pub fn classes(&self) -> impl Iterator<Item = &FieldClass> {
        self.classes.iter().filter(|c| c.alive)
    }
}

/// Scans partitions of the largest checkpoint box.
#[derive(Debug, Clone)]
pub struct CensusScanner {
    config: CensusConfig,
    boxes: Vec<SearchBox>,
}

impl CensusScanner {
    pub fn new(config: CensusConfig) -> Result<Self> {
        config.validate()?;
        let boxes = config
            .checkpoints
            .iter()
            .map(|&x| SearchBox::new(config.n, x, config.c))
            .collect::<Result<Vec<_>>>()?;
        Ok(CensusScanner { config, boxes })
    }

    pub fn config(&self) -> &CensusConfig {
        &self.config
    }

    /// The box of the largest checkpoint.
    pub fn outer_box(&self) -> &SearchBox {
        self.boxes.last().expect("validated non-empty")
    }

    pub fn partitions(&self, k: usize) -> Vec<RangeInclusive<i64>> {
        self.outer_box().partition(k)
    }

    fn first_checkpoint(&self, tuple: &[i64], d: u128) -> Option<usize> {
        self.boxes.iter().position(|b| b.contains(tuple, d))
    }

    /// Scans the tuples whose `a_2` lies in `leading`.
    pub fn scan(&self, leading: RangeInclusive<i64>) -> Result<PartialCensus> {
        let mut acc = PartialCensus::empty(self.boxes.len());
        if self.config.n == 3 {
            self.scan_cubic(leading, &mut acc)?;
        } else {
            for tuple in self.outer_box().tuples_in(leading) {
                let poly = trace_zero_poly(&tuple);
                let disc = discriminant(&poly)?;
                if disc.is_zero() {
                    acc.disc_zero += 1;
                    continue;
                }
                let Some(d) = is_square_int(&disc) else {
                    continue;
                };
                let Some(d) = d.to_u128() else {
                    continue;
                };
                if let Some(k) = self.first_checkpoint(&tuple, d) {
                    self.record(&mut acc, poly, disc, k)?;
                }
            }
        }
        Ok(acc)
    }

    /// `n = 3`: `disc = -4 a^3 - 27 b^2`, so only `a <= 0` and the band
    /// `4|a|^3 - D_max^2 <= 27 b^2 <= 4|a|^3` can contribute.
    fn scan_cubic(&self, leading: RangeInclusive<i64>, acc: &mut PartialCensus) -> Result<()> {
        let outer = self.outer_box();
        let b2 = outer.bound(2) as i64;
        let b3 = outer.bound(3) as u128;
        let dmax_sq = outer.d_bound * outer.d_bound;
        let lo = (*leading.start()).max(-b2);
        let hi = (*leading.end()).min(b2).min(0);
        for a in lo..=hi {
            let t = 4 * (a.unsigned_abs() as u128).pow(3);
            let b_hi = (t / 27).sqrt().min(b3);
            let b_lo = if t > dmax_sq {
                ceil_sqrt_u128((t - dmax_sq).div_ceil(27))
            } else {
                0
            };
            if b_lo > b_hi {
                continue;
            }
            for b_abs in b_lo..=b_hi {
                let disc = t - 27 * b_abs * b_abs;
                let signs: &[i64] = if b_abs == 0 { &[1] } else { &[1, -1] };
                if disc == 0 {
                    acc.disc_zero += signs.len() as u64;
                    continue;
                }
                let Some(d) = is_square_u128(disc) else {
                    continue;
                };
                for &s in signs {
                    let b = s * b_abs as i64;
                    let tuple = [a, b];
                    if let Some(k) = self.first_checkpoint(&tuple, d) {
                        let poly = trace_zero_poly(&tuple);
                        self.record(acc, poly, BigInt::from(disc), k)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn record(&self, acc: &mut PartialCensus, poly: IntPoly, disc: BigInt, k: usize) -> Result<()> {
        acc.points[k] += 1;
        match certify_an(&poly, self.config.prime_budget)? {
            GaloisVerdict::CertifiedAn => {
                acc.an[k] += 1;
                let field_disc = if self.config.n == 3 {
                    Some(cubic_field_disc(&poly)?)
                } else {
                    None
                };
                let fingerprint = Fingerprint::with_disc(&poly, disc, self.config.fingerprint_primes);
                acc.insert_class(FieldClass {
                    representative: poly,
                    fingerprint,
                    field_disc,
                    first_checkpoint: k,
                    members: 1,
                    alive: true,
                });
            }
            GaloisVerdict::Unknown { .. } => acc.unknown[k] += 1,
            GaloisVerdict::CertifiedNotAn(_) => {}
        }
        Ok(())
    }

    /// Cumulative per-checkpoint counts from the merged partial results.
    pub fn finalize(&self, acc: &PartialCensus) -> CensusSummary {
        let n = self.config.n;
        let mut checkpoints = Vec::with_capacity(self.boxes.len());
        let (mut points, mut an, mut unknown) = (0, 0, 0);
        for (k, &x) in self.config.checkpoints.iter().enumerate() {
            points += acc.points[k];
            an += acc.an[k];
            unknown += acc.unknown[k];
            let live = acc.classes().filter(|c| c.first_checkpoint <= k);
            let (mut classes, mut fields) = (0, 0);
            for class in live {
                classes += 1;
                let counted = match &class.field_disc {
                    None => true,
                    Some(FieldDisc::Known(d)) => d.abs() <= BigInt::from(x),
                    Some(FieldDisc::Unresolved) => false,
                };
                fields += u64::from(counted);
            }
            checkpoints.push(CheckpointCounts {
                x,
                points_on_r: points,
                an_polys: an,
                classes,
                fields,
                unknown_verdicts: unknown,
            });
        }
        let unresolved_field_disc = acc
            .classes()
            .filter(|c| c.field_disc == Some(FieldDisc::Unresolved))
            .count() as u64;
        CensusSummary {
            n,
            c: self.config.c,
            checkpoints,
            disc_zero: acc.disc_zero,
            unresolved_field_disc,
            fields_are_proxy: n != 3,
            arithmetic_equivalence_risk: n >= 7,
        }
    }
}

/// `t^n + a_2 t^{n-2} + ... + a_n` from `(a_2, ..., a_n)`.
pub fn trace_zero_poly(tuple: &[i64]) -> IntPoly {
    let mut tail = Vec::with_capacity(tuple.len() + 1);
    tail.push(BigInt::zero());
    tail.extend(tuple.iter().map(|&a| BigInt::from(a)));
    IntPoly::monic_from_tail(&tail)
}

/// Single-threaded census over the whole box.
pub fn run_census(config: &CensusConfig) -> Result<CensusSummary> {
    run_census_partitioned(config, 1)
}

/// Sequential scan of `k` partitions followed by a merge.
pub fn run_census_partitioned(config: &CensusConfig, k: usize) -> Result<CensusSummary> {
    let scanner = CensusScanner::new(config.clone())?;
    let mut merged: Option<PartialCensus> = None;
    for range in scanner.partitions(k) {
        let part = scanner.scan(range)?;
        merged = Some(match merged {
            None => part,
            Some(m) => m.merge(part),
        });
    }
    Ok(scanner.finalize(&merged.expect("at least one partition")))
}

/// Smallest index `i` such that every run from `i` on reports the same
/// `fields` sequence. `runs` must be ordered by increasing box constant.
pub fn stabilized_index(runs: &[CensusSummary]) -> Option<usize> {
    let last = runs.last()?;
    let fields = |s: &CensusSummary| s.checkpoints.iter().map(|c| c.fields).collect::<Vec<_>>();
    let target = fields(last);
    let mut idx = runs.len() - 1;
    while idx > 0 && fields(&runs[idx - 1]) == target {
        idx -= 1;
    }
    Some(idx)
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, c = {}", self.n, self.c)?;
        writeln!(f, "{:>12} {:>12} {:>10} {:>10} {:>10} {:>8}", "X", "points_on_R", "An_polys", "classes", "fields", "unknown")?;
        for c in &self.checkpoints {
            writeln!(
                f,
                "{:>12} {:>12} {:>10} {:>10} {:>10} {:>8}",
                c.x, c.points_on_r, c.an_polys, c.classes, c.fields, c.unknown_verdicts
            )?;
        }
        let mut notes = String::new();
        if self.fields_are_proxy {
            notes.push_str(" (fields = dedup classes, upper-bound proxy)");
        }
        write!(f, "disc-zero tuples: {}{}", self.disc_zero, notes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: u64) -> BoxConstant {
        BoxConstant::integer(k).unwrap()
    }

    #[test]
    fn box_bounds() {
        let b = SearchBox::new(3, 49, c(3)).unwrap();
        assert_eq!(b.bounds, [21, 55]);
        let b = SearchBox::new(3, 1, c(1)).unwrap();
        assert_eq!(b.bounds, [1, 1]);
        assert_eq!(b.tuple_count(), 9);
        assert_eq!(b.tuples().count(), 9);
        assert!(SearchBox::new(2, 10, c(1)).is_err());
        assert!(SearchBox::new(3, 0, c(1)).is_err());
    }

    #[test]
    fn tuples_are_lexicographic() {
        let b = SearchBox::new(4, 10, c(1)).unwrap();
        let all: Vec<Vec<i64>> = b.tuples().collect();
        assert_eq!(all.len() as u128, b.tuple_count());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partitions_cover_box() {
        let b = SearchBox::new(3, 100, c(2)).unwrap();
        for k in [1, 2, 3, 7, 100] {
            let parts = b.partition(k);
            let mut all: Vec<Vec<i64>> = Vec::new();
            for r in parts {
                all.extend(b.tuples_in(r));
            }
            assert_eq!(all, b.tuples().collect::<Vec<_>>());
        }
    }

    #[test]
    fn box_constant_parsing() {
        assert_eq!("4".parse::<BoxConstant>().unwrap(), c(4));
        assert_eq!("2.5".parse::<BoxConstant>().unwrap(), BoxConstant::new(5, 2).unwrap());
        assert_eq!("3/2".parse::<BoxConstant>().unwrap(), BoxConstant::new(3, 2).unwrap());
        assert!("0".parse::<BoxConstant>().is_err());
        assert!("x".parse::<BoxConstant>().is_err());
        assert!(c(2) < BoxConstant::new(5, 2).unwrap());
    }

    #[test]
    fn grid() {
        let g = checkpoint_grid(10, 100_000, 10f64.sqrt()).unwrap();
        assert_eq!(g, [10, 32, 100, 316, 1000, 3162, 10_000, 31_623, 100_000]);
        assert!(checkpoint_grid(10, 5, 2.0).is_err());
        assert!(checkpoint_grid(1, 5, 1.0).is_err());
    }

    #[test]
    fn small_cubic_census() {
        let cfg = CensusConfig::new(3, vec![1, 48, 100], c(4));
        let s = run_census(&cfg).unwrap();
        let fields: Vec<u64> = s.checkpoints.iter().map(|c| c.fields).collect();
        assert_eq!(fields, [0, 0, 2]);
        assert!(!s.fields_are_proxy);
        for cp in &s.checkpoints {
            assert!(cp.fields <= cp.classes && cp.classes <= cp.an_polys && cp.an_polys <= cp.points_on_r);
        }
    }

    #[test]
    fn cubic_fast_path_matches_generic_scan() {
        // brute force over the plain box with the generic discriminant
        let cfg = CensusConfig::new(3, vec![30, 100], c(2));
        let scanner = CensusScanner::new(cfg.clone()).unwrap();
        let mut points = [0u64; 2];
        let mut zero = 0;
        for t in scanner.outer_box().tuples() {
            let disc = discriminant(&trace_zero_poly(&t)).unwrap();
            if disc.is_zero() {
                zero += 1;
                continue;
            }
            if let Some(d) = is_square_int(&disc) {
                let d = d.to_u128().unwrap();
                if let Some(k) = scanner.first_checkpoint(&t, d) {
                    points[k] += 1;
                }
            }
        }
        let s = run_census(&cfg).unwrap();
        assert_eq!(s.disc_zero, zero);
        assert_eq!(s.checkpoints[0].points_on_r, points[0]);
        assert_eq!(s.checkpoints[1].points_on_r, points[0] + points[1]);
    }

    #[test]
    fn partitioned_runs_agree() {
        let cfg = CensusConfig::new(3, vec![100, 1000], c(3));
        let one = run_census(&cfg).unwrap();
        for k in [2, 3, 5] {
            assert_eq!(run_census_partitioned(&cfg, k).unwrap(), one);
        }
        let cfg4 = CensusConfig::new(4, vec![10, 30], c(1));
        let one = run_census(&cfg4).unwrap();
        assert_eq!(run_census_partitioned(&cfg4, 3).unwrap(), one);
    }

    #[test]
    fn stabilization_index() {
        let mk = |f: u64| CensusSummary {
            n: 3,
            c: c(1),
            checkpoints: vec![CheckpointCounts {
                x: 100,
                points_on_r: f,
                an_polys: f,
                classes: f,
                fields: f,
                unknown_verdicts: 0,
            }],
            disc_zero: 0,
            unresolved_field_disc: 0,
            fields_are_proxy: false,
            arithmetic_equivalence_risk: false,
        };
        assert_eq!(stabilized_index(&[mk(1), mk(2), mk(2)]), Some(1));
        assert_eq!(stabilized_index(&[mk(2), mk(2)]), Some(0));
        assert_eq!(stabilized_index(&[]), None);
    }

    #[test]
    fn config_validation() {
        assert!(CensusScanner::new(CensusConfig::new(3, vec![], c(1))).is_err());
        assert!(CensusScanner::new(CensusConfig::new(3, vec![10, 10], c(1))).is_err());
        assert!(CensusScanner::new(CensusConfig::new(2, vec![10], c(1))).is_err());
    }
}
