//! Fibers of the trace-zero discriminant fibration.
//!
//! A [`FiberBase`] fixes `a_2, ..., a_{n-1}`; the remaining coordinate `y` is
//! the constant term of `f(t) = t^n + a_2 t^{n-2} + ... + a_{n-1} t + y`. The
//! fiber is the plane curve `D^2 = p(y)` with `p(y) = Disc_t f`.
//!
//! Since `y` enters as the constant term (not its negative), the roots of
//! `p` are the *negated* critical values of `q_0(t) = f(t) - y`:
//!
//! ```text
//! p(y) = (-1)^(n(n-1)/2) * n^n * prod_i (y + c_i),   c_i = q_0(theta_i), q_0'(theta_i) = 0
//! ```
//!
//! This follows from `Res(f, f') = Res(f', f) = n^n prod f(theta_i)`; the
//! sign `(-1)^(n(n-1)/2)` is the discriminant's and depends on `n mod 4`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{constant_times_square, discriminant, squarefree_decomposition, IntPoly};
use crate::roots::{aberth, eval_complex, expand_from_roots, RootConfig};
use crate::{Error, Result};

/// The point `(a_2, ..., a_{n-1})` of the base of the fibration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberBase {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl FiberBase {
    pub fn new(n: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("fiber degree must be at least 3"));
        }
        if coeffs.len() != n - 2 {
            return Err(Error::domain("fiber base needs exactly n - 2 coefficients"));
        }
        Ok(FiberBase { n, coeffs })
    }

    pub fn from_i64s(n: usize, coeffs: &[i64]) -> Result<Self> {
        FiberBase::new(n, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(a_2, ..., a_{n-1})`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `max |a_j|`, or 0 for `n = 3` with `a_2 = 0`.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `t^n + a_2 t^{n-2} + ... + a_{n-1} t + y`.
    pub fn polynomial_with_constant(&self, y: &BigInt) -> IntPoly {
        let mut tail = Vec::with_capacity(self.n);
        tail.push(BigInt::zero());
        tail.extend(self.coeffs.iter().cloned());
        tail.push(y.clone());
        IntPoly::monic_from_tail(&tail)
    }

    /// `q_0(t)`: the fiber polynomial with zero constant term.
    pub fn q0(&self) -> IntPoly {
        self.polynomial_with_constant(&BigInt::zero())
    }
}

/// The plane curve `D^2 = p(y)` over one base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCurve {
    pub base: FiberBase,
    pub p: IntPoly,
    pub geometrically_irreducible: bool,
    /// `(c, g)` with `p = c * g^2`, when present.
    pub square_witness: Option<(BigInt, IntPoly)>,
}

/// Critical values of `q_0`, repeated by multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalValueSet {
    pub values: Vec<Complex64>,
    pub q0: IntPoly,
    pub config: RootConfig,
}

impl CriticalValueSet {
    /// Greedy minimal-distance pairing of `values` against `other`.
    ///
    /// Heuristic: returns true when every value pairs off with a distinct
    /// element of `other` closer than `threshold` (relative to magnitude).
    pub fn matches_multiset(&self, other: &[Complex64], threshold: f64) -> bool {
        if other.len() != self.values.len() {
            return false;
        }
        let mut used = alloc::vec![false; other.len()];
        for v in &self.values {
            let best = other
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, w)| (i, (v - w).norm() / v.norm().max(1.0)))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(core::cmp::Ordering::Equal));
            match best {
                Some((i, d)) if d <= threshold => used[i] = true,
                _ => return false,
            }
        }
        true
    }
}

/// `p(y) = Disc_t(t^n + a_2 t^{n-2} + ... + a_{n-1} t + y)`.
///
/// Evaluates the discriminant at `y = 0, ..., n - 1` and interpolates with
/// Newton forward differences; every division is exact.
///
/// # Panics
///
/// If an interpolation step is not exact, which would mean the discriminant
/// kernel is broken.
pub fn fiber_disc_poly(base: &FiberBase) -> IntPoly {
    let n = base.n;
    let values: Vec<BigInt> = (0..n)
        .map(|y| {
            discriminant(&base.polynomial_with_constant(&BigInt::from(y)))
                .expect("degree n >= 3")
        })
        .collect();
    // forward differences: diffs[k] = Delta^k p(0)
    let mut diffs = Vec::with_capacity(n);
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // p(y) = sum_k Delta^k p(0) / k! * y (y - 1) ... (y - k + 1)
    let mut result = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut factorial = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            factorial *= BigInt::from(k);
            falling = &falling * &IntPoly::from_coeffs(alloc::vec![BigInt::from(-(k as i64 - 1)), BigInt::one()]);
        }
        let (q, r) = d.div_rem(&factorial);
        assert!(r.is_zero(), "fiber interpolation produced a non-integer coefficient");
        result = &result + &falling.scale(&q);
    }
    result
}

/// Decides geometric irreducibility of `D^2 = p(y)`.
pub fn classify_fiber(base: &FiberBase) -> FiberCurve {
    let p = fiber_disc_poly(base);
    let square_witness = if p.is_zero() {
        None
    } else {
        constant_times_square(&p).expect("p is nonzero")
    };
    FiberCurve {
        base: base.clone(),
        geometrically_irreducible: !p.is_zero() && square_witness.is_none(),
        p,
        square_witness,
    }
}

/// `{ q_0(theta) : q_0'(theta) = 0 }` with multiplicity.
///
/// Multiplicities are read off an exact square-free decomposition of `q_0'`;
/// the simple roots of each factor are found numerically.
pub fn critical_values(base: &FiberBase, config: &RootConfig) -> Result<CriticalValueSet> {
    let q0 = base.q0();
    let dq = q0.derivative();
    let dec = squarefree_decomposition(&dq)?;
    let mut values = Vec::with_capacity(base.n - 1);
    for (factor, mult) in &dec.factors {
        let coeffs: Vec<Complex64> = factor
            .coeffs()
            .iter()
            .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        for theta in aberth(&coeffs, config)? {
            let v = eval_complex(&q0, theta);
            for _ in 0..*mult {
                values.push(v);
            }
        }
    }
    Ok(CriticalValueSet {
        values,
        q0,
        config: *config,
    })
}

/// `(-1)^(n(n-1)/2) * n^n`, the leading coefficient of every fiber polynomial.
pub fn fiber_leading_coefficient(n: usize) -> BigInt {
    let nn = num_traits::pow(BigInt::from(n), n);
    if (n * (n - 1) / 2) % 2 == 1 {
        -nn
    } else {
        nn
    }
}

/// Checks `p(y) = (-1)^(n(n-1)/2) n^n prod (y + c_i)` coefficientwise, with
/// error measured relative to the largest coefficient of `p`.
pub fn verify_cv_factorization(base: &FiberBase, tol: f64) -> Result<bool> {
    verify_cv_factorization_with(base, tol, &RootConfig::default())
}

pub fn verify_cv_factorization_with(base: &FiberBase, tol: f64, config: &RootConfig) -> Result<bool> {
    let cvs = critical_values(base, config)?;
    let p = fiber_disc_poly(base);
    let lead = fiber_leading_coefficient(base.n).to_f64().unwrap_or(f64::NAN);
    let negated: Vec<Complex64> = cvs.values.iter().map(|c| -c).collect();
    let expanded = expand_from_roots(lead, &negated);
    let exact: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if expanded.len() != exact.len() {
        return Ok(false);
    }
    let scale = exact.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    Ok(expanded
        .iter()
        .zip(&exact)
        .all(|(e, x)| (e.re - x).abs() <= tol * scale && e.im.abs() <= tol * scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(n: usize, c: &[i64]) -> FiberBase {
        FiberBase::from_i64s(n, c).unwrap()
    }

    #[test]
    fn base_validation() {
        assert!(FiberBase::from_i64s(2, &[]).is_err());
        assert!(FiberBase::from_i64s(4, &[1]).is_err());
        assert!(FiberBase::from_i64s(3, &[1]).is_ok());
    }

    #[test]
    fn fiber_polys() {
        assert_eq!(fiber_disc_poly(&base(3, &[-3])), IntPoly::from_i64s(&[108, 0, -27]));
        assert_eq!(fiber_disc_poly(&base(3, &[0])), IntPoly::from_i64s(&[0, 0, -27]));
        assert_eq!(fiber_disc_poly(&base(4, &[0, 0])), IntPoly::from_i64s(&[0, 0, 0, 256]));
        assert_eq!(
            fiber_disc_poly(&base(5, &[0, 0, 0])),
            IntPoly::from_i64s(&[0, 0, 0, 0, 3125])
        );
    }

    #[test]
    fn cubic_closed_form_oracle() {
        // disc(t^3 + a t + y) = -4a^3 - 27y^2
        for a in -6i64..=6 {
            let expected = IntPoly::from_i64s(&[-4 * a * a * a, 0, -27]);
            assert_eq!(fiber_disc_poly(&base(3, &[a])), expected);
        }
    }

    #[test]
    fn classification() {
        let c = classify_fiber(&base(3, &[-3]));
        assert!(c.geometrically_irreducible);
        let c = classify_fiber(&base(3, &[0]));
        assert!(!c.geometrically_irreducible);
        assert_eq!(c.square_witness, Some((BigInt::from(-27), IntPoly::x())));
        assert!(classify_fiber(&base(4, &[0, 0])).geometrically_irreducible);
    }

    #[test]
    fn critical_value_examples() {
        let cfg = RootConfig::default();
        let cv = critical_values(&base(3, &[-3]), &cfg).unwrap();
        assert!(cv.matches_multiset(&[Complex64::new(2.0, 0.0), Complex64::new(-2.0, 0.0)], 1e-9));
        let cv = critical_values(&base(3, &[0]), &cfg).unwrap();
        assert!(cv.matches_multiset(&[Complex64::zero(), Complex64::zero()], 1e-12));
        let cv = critical_values(&base(4, &[0, 0]), &cfg).unwrap();
        assert_eq!(cv.values.len(), 3);
        assert!(cv.values.iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn factorization_examples() {
        assert!(verify_cv_factorization(&base(3, &[-3]), 1e-9).unwrap());
        assert!(verify_cv_factorization(&base(3, &[0]), 1e-9).unwrap());
        assert!(verify_cv_factorization(&base(4, &[0, 0]), 1e-9).unwrap());
        // asymmetric critical values pin down the sign: q0 = t^4 + t
        assert!(verify_cv_factorization(&base(4, &[0, 1]), 1e-9).unwrap());
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(fiber_leading_coefficient(3), BigInt::from(-27));
        assert_eq!(fiber_leading_coefficient(4), BigInt::from(256));
        assert_eq!(fiber_leading_coefficient(5), BigInt::from(3125));
        assert_eq!(fiber_leading_coefficient(6), BigInt::from(-46656));
    }
}
