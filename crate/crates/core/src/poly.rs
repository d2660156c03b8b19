//! Dense univariate polynomials over `Z`.
//!
//! Coefficients are stored lowest degree first and kept normalized: the
//! leading coefficient is nonzero unless the polynomial is zero (empty vector).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::is_square_int;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// `content * prod(factor^multiplicity)`; factors primitive, square-free,
/// pairwise coprime and with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomp {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl SquareFreeDecomp {
    /// Multiplies the decomposition back out.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        IntPoly::from_i64s(&[0, 1])
    }

    /// Builds from coefficients, lowest degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monic `t^n + a_{n-1} t^{n-1} + ... + a_0` from `[a_{n-1}, ..., a_0]`, highest first.
    pub fn monic_from_tail(tail: &[BigInt]) -> Self {
        let mut coeffs: Vec<BigInt> = tail.iter().rev().cloned().collect();
        coeffs.push(BigInt::one());
        IntPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in `i128`; `None` on overflow.
    pub fn eval_i128(&self, x: i128) -> Option<i128> {
        let mut acc: i128 = 0;
        for c in self.coeffs.iter().rev() {
            let c: i128 = c.try_into().ok()?;
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Some(acc)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / (±content)` with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient; callers guarantee divisibility.
    fn div_scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `f(t + k)`.
    pub fn shift(&self, k: &BigInt) -> IntPoly {
        let lin = IntPoly::from_coeffs(vec![k.clone(), BigInt::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, c| &(&acc * &lin) + &IntPoly::constant(c.clone()))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo_rem by zero polynomial");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut steps = da - db + 1;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * bc;
            }
            steps -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        let mut rem = IntPoly::from_coeffs(r);
        if steps > 0 {
            rem = rem.scale(&num_traits::pow(lb, steps));
        }
        rem
    }

    /// `Some(q)` with `self = q * d` when the quotient has integer coefficients.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        let Some(da) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if da < dd {
            return None;
        }
        let ld = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - dd + 1];
        for k in (0..=da - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        r.iter().all(|c| c.is_zero()).then(|| IntPoly::from_coeffs(q))
    }

    /// Primitive gcd with positive leading coefficient (via primitive PRS).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Renders as `t^3 - 21*t - 7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{abs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// `lc(f)^deg(g) * prod g(r)` over the roots `r` of `f`.
///
/// Fraction-free subresultant PRS; the only divisions are exact.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::domain("resultant of two zero polynomials"));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(BigInt::zero());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = false;
    if a.degree() < b.degree() {
        core::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = !sign;
        }
    }
    let (da0, db0) = (a.degree().unwrap(), b.degree().unwrap());
    if db0 == 0 {
        let r = num_traits::pow(b.lc(), da0);
        return Ok(if sign { -r } else { r });
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar(&ca);
    b = b.div_scalar(&cb);
    let t = num_traits::pow(ca, db0) * num_traits::pow(cb, da0);

    let mut g_s = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let divisor = &g_s * num_traits::pow(h.clone(), delta);
        b = r.div_scalar(&divisor);
        g_s = a.lc();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g_s.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        if b.degree().unwrap() == 0 {
            break;
        }
    }
    let da = a.degree().unwrap();
    let hfinal = if da == 0 {
        h
    } else {
        num_traits::pow(b.lc(), da) / num_traits::pow(h, da - 1)
    };
    let res = t * hfinal;
    Ok(if sign { -res } else { res })
}

/// `(-1)^(n(n-1)/2) * Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::domain("discriminant needs degree >= 2")),
    };
    let r = resultant(f, &f.derivative())? / f.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// Yun's algorithm over `Q`, carried out on primitive integer polynomials.
pub fn squarefree_decomposition(p: &IntPoly) -> Result<SquareFreeDecomp> {
    if p.is_zero() {
        return Err(Error::domain("square-free decomposition of zero"));
    }
    let prim = p.primitive_part();
    let content = &p.lc() / &prim.lc();
    let mut factors = Vec::new();
    if prim.is_constant() {
        return Ok(SquareFreeDecomp { content, factors });
    }
    let dp = prim.derivative();
    let b = prim.gcd(&dp);
    let mut c = prim.div_exact(&b).expect("gcd divides f");
    let mut d = &dp.div_exact(&b).expect("gcd divides f'") - &c.derivative();
    let mut mult = 1u32;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            factors.push((a.clone(), mult));
        }
        c = c.div_exact(&a).expect("gcd divides c");
        d = &d.div_exact(&a).expect("gcd divides d") - &c.derivative();
        mult += 1;
    }
    Ok(SquareFreeDecomp { content, factors })
}

/// `Some((c, g))` with `p = c * g^2`, `g` primitive with positive leading
/// coefficient, exactly when every square-free multiplicity is even.
pub fn constant_times_square(p: &IntPoly) -> Result<Option<(BigInt, IntPoly)>> {
    let dec = squarefree_decomposition(p)?;
    if dec.factors.iter().any(|(_, m)| m % 2 == 1) {
        return Ok(None);
    }
    let g = dec
        .factors
        .iter()
        .fold(IntPoly::one(), |acc, (f, m)| &acc * &f.pow(m / 2));
    Ok(Some((dec.content, g)))
}

/// Convenience wrapper over [`is_square_int`].
pub fn is_square(n: &BigInt) -> Option<BigInt> {
    is_square_int(n)
}
