//! Exact computation of the quadratic covariant `(F, F)_{2n}` of the generic
//! binary form of degree `2n + 1`, the content `S(n)` of its discriminant,
//! and the valuation and witness checks that pin down the squarefree part
//! of `S(n)`.

pub mod arith;
pub mod closedforms;
pub mod covariant;
pub mod error;
pub mod padic;
pub mod polyring;
pub mod verify;

pub use error::{Error, Result};
