//! Cubic fields: exact field discriminants and the conductor count of cyclic cubics.
//!
//! A monic cubic `t^3 + A t^2 + B t + C` corresponds to the binary cubic
//! form `x^3 + A x^2 y + B x y^2 + C y^3`, whose cubic ring is `Z[alpha]`.
//! At a prime `p`, the ring is non-maximal exactly when the form is `0 mod p`
//! or has a multiple root mod `p` which, moved to `[1:0]`, leaves
//! `p^2 | a` (Dedekind's criterion in form language). In that case
//! `(a/p^2, b/p, c, p d)` is the form of an overring of index `p`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{abs_u64, factor_u64, is_square_int, mod_u64};
use crate::galois::{certify_an, same_field_heuristic};
use crate::modp::PolyModP;
use crate::poly::IntPoly;
use crate::{Error, Result};

/// Field discriminant, or `Unresolved` when the polynomial discriminant
/// could not be factored in the `u64` fast path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDisc {
    Known(BigInt),
    Unresolved,
}

/// `a x^3 + b x^2 y + c x y^2 + d y^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCubicForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl BinaryCubicForm {
    pub fn from_monic(f: &IntPoly) -> Result<Self> {
        if f.degree() != Some(3) || !f.is_monic() {
            return Err(Error::domain("expected a monic cubic"));
        }
        Ok(BinaryCubicForm {
            a: BigInt::one(),
            b: f.coeff(2),
            c: f.coeff(1),
            d: f.coeff(0),
        })
    }

    pub fn disc(&self) -> BigInt {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        b * b * c * c - BigInt::from(4) * a * c * c * c - BigInt::from(4) * b * b * b * d
            - BigInt::from(27) * a * a * d * d
            + BigInt::from(18) * a * b * c * d
    }

    /// `F(r x + y, x)`: sends the root `[r:1]` to `[1:0]`.
    fn move_root_to_infinity(&self, r: &BigInt) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let r2 = r * r;
        let r3 = &r2 * r;
        BinaryCubicForm {
            a: a * &r3 + b * &r2 + c * r + d,
            b: BigInt::from(3) * a * &r2 + BigInt::from(2) * b * r + c,
            c: BigInt::from(3) * a * r + b,
            d: a.clone(),
        }
    }

    fn all_divisible(&self, p: &BigInt) -> bool {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .all(|x| x.is_multiple_of(p))
    }

    /// The form of an overring of index `p`, or `None` when maximal at `p`.
    pub fn enlarge_at(&self, p: u64) -> Option<Self> {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        if self.all_divisible(&pb) {
            // index p^2 overring; applied as two index-p steps in the disc bookkeeping
            return Some(BinaryCubicForm {
                a: &self.a / &pb,
                b: &self.b / &pb,
                c: &self.c / &pb,
                d: &self.d / &pb,
            });
        }
        let moved = if self.a.is_multiple_of(&pb) && self.b.is_multiple_of(&pb) {
            self.clone()
        } else {
            let r = multiple_affine_root(self, p)?;
            let g = self.move_root_to_infinity(&BigInt::from(r));
            debug_assert!(g.a.is_multiple_of(&pb) && g.b.is_multiple_of(&pb));
            g
        };
        if !moved.a.is_multiple_of(&p2) {
            return None;
        }
        Some(BinaryCubicForm {
            a: &moved.a / &p2,
            b: &moved.b / &pb,
            c: moved.c,
            d: moved.d * pb,
        })
    }
}

/// A root `r` of `F(x, 1) mod p` of multiplicity at least two.
fn multiple_affine_root(form: &BinaryCubicForm, p: u64) -> Option<u64> {
    let f = PolyModP::new(
        p,
        alloc::vec![
            mod_u64(&form.d, p),
            mod_u64(&form.c, p),
            mod_u64(&form.b, p),
            mod_u64(&form.a, p)
        ],
    );
    let g = f.gcd(&f.derivative());
    match g.degree()? {
        0 => None,
        1 => Some((p - g.coeffs[0]) % p),
        _ => {
            // g = (x - r)^2 or (x - r)^3; a root of g' (p != 2, 3) or brute force otherwise
            if p <= 3 {
                (0..p).find(|&x| g.eval(x) == 0)
            } else {
                let dg = g.derivative().gcd(&g);
                if dg.degree() == Some(1) {
                    Some((p - dg.coeffs[0]) % p)
                } else {
                    (0..p).find(|&x| g.eval(x) == 0)
                }
            }
        }
    }
}

/// Discriminant of the maximal order of the cubic field generated by `f`.
///
/// Dedekind's criterion decides each prime `p` with `p^2 | disc(f)`; where
/// `Z[alpha]` is not `p`-maximal, the form is enlarged until it is.
pub fn cubic_field_disc(f: &IntPoly) -> Result<FieldDisc> {
    let mut form = BinaryCubicForm::from_monic(f)?;
    let disc = form.disc();
    if disc.is_zero() {
        return Err(Error::domain("cubic with zero discriminant"));
    }
    // squares dividing disc: factor sqrt of the square part via the u64 path
    let primes: Vec<u64> = match is_square_int(&disc).and_then(|r| abs_u64(&r)) {
        Some(r) => factor_u64(r).into_iter().map(|(p, _)| p).collect(),
        None => match abs_u64(&disc) {
            Some(d) => factor_u64(d)
                .into_iter()
                .filter(|(_, e)| *e >= 2)
                .map(|(p, _)| p)
                .collect(),
            None => return Ok(FieldDisc::Unresolved),
        },
    };
    let mut field_disc = disc;
    for p in primes {
        let p2 = BigInt::from(p * p);
        while field_disc.is_multiple_of(&p2) {
            match form.enlarge_at(p) {
                Some(next) => {
                    let shrink = if form.all_divisible(&BigInt::from(p)) {
                        &p2 * &p2
                    } else {
                        p2.clone()
                    };
                    field_disc /= shrink;
                    form = next;
                }
                None => break,
            }
        }
    }
    debug_assert_eq!(form.disc(), field_disc);
    Ok(FieldDisc::Known(field_disc))
}

/// Is `Z[alpha]` maximal at `p`? (Dedekind's criterion.)
pub fn is_p_maximal(f: &IntPoly, p: u64) -> Result<bool> {
    Ok(BinaryCubicForm::from_monic(f)?.enlarge_at(p).is_none())
}

/// Field discriminant of a class of generators of one cyclic cubic field.
///
/// Each generator is checked to be certified `A_3` and the class pairwise
/// same-field (25 primes). Every generator must produce the same value.
pub fn field_disc_cubic(class: &[IntPoly]) -> Result<FieldDisc> {
    let Some(first) = class.first() else {
        return Err(Error::domain("empty generator class"));
    };
    for g in class {
        if g.degree() != Some(3) || !certify_an(g, 100)?.is_an() {
            return Err(Error::domain("generator is not a certified A3 cubic"));
        }
        if !same_field_heuristic(first, g, 25)? {
            return Err(Error::domain("generators of different fields in one class"));
        }
    }
    let mut known: Option<BigInt> = None;
    for g in class {
        match cubic_field_disc(g)? {
            FieldDisc::Known(d) => match &known {
                Some(k) if *k != d => {
                    return Err(Error::domain("generators disagree on the field discriminant"))
                }
                _ => known = Some(d),
            },
            FieldDisc::Unresolved => {}
        }
    }
    Ok(known.map_or(FieldDisc::Unresolved, FieldDisc::Known))
}

/// Number of cyclic cubic fields with `D_K = f^2 <= x`.
///
/// Conductors are products of distinct primes `= 1 mod 3`, optionally times
/// 9; a conductor with `w` prime factors (9 counting once) carries `2^(w-1)` fields.
pub fn cyclic_cubic_oracle(x: u64) -> u64 {
    let fmax = num_integer::Roots::sqrt(&x);
    let mut total = 0u64;
    for f in 2..=fmax {
        let mut omega = 0u32;
        let mut valid = true;
        for (p, e) in factor_u64(f) {
            let ok = if p == 3 { e == 2 } else { p % 3 == 1 && e == 1 };
            if !ok {
                valid = false;
                break;
            }
            omega += 1;
        }
        if valid {
            total += 1 << (omega - 1);
        }
    }
    total
}

/// Conductors `f <= sqrt(x)` of cyclic cubic fields, with their field counts.
pub fn cyclic_cubic_conductors(x: u64) -> Vec<(u64, u64)> {
    let fmax = num_integer::Roots::sqrt(&x);
    (2..=fmax)
        .filter_map(|f| {
            let fac = factor_u64(f);
            let valid = fac
                .iter()
                .all(|&(p, e)| if p == 3 { e == 2 } else { p % 3 == 1 && e == 1 });
            valid.then(|| (f, 1u64 << (fac.len() - 1)))
        })
        .collect()
}
