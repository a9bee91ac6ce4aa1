//! Exact verification of the Yetter-Drinfeld module algebra structure of
//! `U(h_Lie)` over `O(Aut(h))` for finite-dimensional Leibniz algebras.

pub mod algebroid;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod io;
pub mod leibniz;
pub mod matrix;
pub mod notation;
pub mod numeric;
pub mod oaut;
pub mod pairing;
pub mod pbw;
pub mod poly;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod smash;
pub mod yd;

pub use error::{Error, Result};
pub use leibniz::{BasisChange, Chirality, LeibnizAlgebra};
pub use matrix::QMatrix;
pub use poly::{GenVar, Monomial, Poly, VarKind};
pub use quotient::{lie_quotient, LieQuotient};
pub use scalar::Scalar;
