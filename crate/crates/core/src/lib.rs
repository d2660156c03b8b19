//! Exact-arithmetic kernels for counting number fields whose Galois closure
//! has alternating group `A_n`.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`poly`]: dense integer polynomials, subresultant resultants,
//!   discriminants, square-free decomposition and square detection.
//! * [`fiber`]: the fiber discriminant `p(y) = Disc_t(t^n + a_2 t^{n-2} + ... + a_{n-1} t + y)`,
//!   geometric irreducibility of `D^2 = p(y)` and critical values.
//! * [`galois`]: irreducibility over `Q`, Frobenius cycle types and `A_n` certification.
//! * [`census`]: the trace-zero search box, point and field counts, checkpoint summaries.
//! * [`cubic`]: cubic field discriminants and the conductor count of cyclic cubic fields.
//! * [`pila`]: exponent formulas, the Pila point-count bound and per-fiber point counts.
//! * [`reducible`]: scans for geometrically reducible fibers and finiteness of fibers over a fixed `p`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod census;
pub mod cubic;
mod error;
pub mod fiber;
pub mod fit;
pub mod galois;
pub mod modp;
pub mod pila;
pub mod poly;
pub mod reducible;
pub mod roots;

pub use error::{Error, Result};
pub use num_bigint::BigInt as Int;
pub use poly::IntPoly;
