//! Numerical laboratory for the generalized Mordell-Tornheim zeta function
//!     Theta(r,s,t,x) = sum_{n,m >= 1} n^{-r} m^{-s} (n + m x)^{-t},  x > 0,
//! its analytic continuation, the Kronecker-limit (Laurent) expansions at
//! its pole families, and a registry of the modular-relation identities it
//! ties together (Herglotz-Zagier, Vlasenko-Zagier, Guinand, Ramanujan).

pub mod continuation;
pub mod error;
pub mod herglotz;
pub mod limits;
pub mod partialfrac;
pub mod quad;
pub mod specfun;
pub mod theta;

pub use error::{Error, Result};
