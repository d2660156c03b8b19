//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use an_census_core::{Int, IntPoly};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> Int {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return Int::one();
    }
    let mut rows = Vec::with_capacity(size);
    // highest coefficient first in each row
    let fh: Vec<Int> = f.coeffs().iter().rev().cloned().collect();
    let gh: Vec<Int> = g.coeffs().iter().rev().cloned().collect();
    for i in 0..n {
        let mut row = vec![Int::zero(); size];
        for (j, c) in fh.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Int::zero(); size];
        for (j, c) in gh.iter().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc` through the Sylvester oracle.
pub fn sylvester_discriminant(f: &IntPoly) -> Int {
    let n = f.degree().unwrap();
    let r = sylvester_resultant(f, &f.derivative()) / f.lc();
    if (n * (n - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Durand-Kerner iteration with Newton polishing; roots of a square-free polynomial.
pub fn durand_kerner(f: &IntPoly) -> Vec<Complex64> {
    let c: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|x| Complex64::new(x.to_f64().unwrap(), 0.0))
        .collect();
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lc).collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius.min(2.0)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::one();
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm() / z[i].norm().max(1.0));
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = deriv(*r);
            if dp.norm() > 0.0 {
                *r -= p / dp;
            }
        }
    }
    z
}

/// `lc^(2n-2) prod_{i<j} (r_i - r_j)^2` from numerically computed roots.
pub fn numeric_discriminant(f: &IntPoly) -> f64 {
    let roots = durand_kerner(f);
    let n = roots.len();
    let lc = f.lc().to_f64().unwrap();
    let mut prod = Complex64::new(lc.powi(2 * n as i32 - 2), 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let d = roots[i] - roots[j];
            prod *= d * d;
        }
    }
    prod.re
}

/// Reducibility of a monic square-free polynomial by rounding every subset
/// of its numeric roots to an integer polynomial and testing exact division.
pub fn brute_force_reducible(f: &IntPoly) -> bool {
    let roots = durand_kerner(f);
    let n = roots.len();
    for mask in 1u32..(1 << n) - 1 {
        let k = mask.count_ones() as usize;
        if k > n / 2 {
            continue;
        }
        let mut coeffs = vec![Complex64::one()];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut next = vec![Complex64::zero(); coeffs.len() + 1];
                for (j, c) in coeffs.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * r;
                }
                coeffs = next;
            }
        }
        if coeffs.iter().any(|c| c.im.abs() > 1e-6 * (1.0 + c.re.abs())) {
            continue;
        }
        let g = IntPoly::from_coeffs(coeffs.iter().map(|c| Int::from(c.re.round() as i64)).collect());
        if f.div_exact(&g).is_some() {
            return true;
        }
    }
    false
}

pub fn random_poly(rng: &mut impl Rng, degree: usize, bound: i64, monic: bool) -> IntPoly {
    loop {
        let mut c: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-bound..=bound)).collect();
        if monic {
            c[degree] = 1;
        }
        if c[degree] != 0 {
            return IntPoly::from_i64s(&c);
        }
    }
}

/// Euler's criterion for an odd prime `p` not dividing `a`.
pub fn is_qr(a: &Int, p: u64) -> bool {
    let r = a.mod_floor_u64(p);
    let mut acc = 1u128;
    let mut base = r as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    acc == 1
}

pub trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for Int {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = Int::from(p);
        let r = ((self % &m) + &m) % &m;
        r.abs().to_u64().unwrap()
    }
}
