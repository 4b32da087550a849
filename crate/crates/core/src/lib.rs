//! Exact-arithmetic checks for polarized log Hodge structures at a log point.
//!
//! All arithmetic is over Q or Q(i) with arbitrary-precision integers; no
//! verdict in this crate depends on a floating-point tolerance.
//!
//! Monodromy convention: with `γ_i` the local monodromies, the logarithms
//! satisfy `(2πi)^{-1} log γ_i = res_i(∇)` and `res_i(∇) = -N_i`, which
//! differs from the more common convention by a sign. The nilpotents `N_i`
//! stored in a [`orbit::PrePLHDatum`] follow this convention.

pub mod cone;
mod error;
pub mod exactalg;
pub mod filtration;
pub mod fixtures;
pub mod hodge;
pub mod io;
pub mod monoidlat;
pub mod orbit;
pub mod poly;
pub mod random;

pub use error::Error;
pub use exactalg::{Matrix, Scalar, Subspace, Vector};

/// Printed at the top of every report.
pub const SIGN_CONVENTION: [&str; 2] = ["(2πi)^{-1} log γ_i = res_i(∇)", "res_i(∇) = −N_i"];

/// Sign relating `res_i(∇)` to the stored nilpotent `N_i`.
pub const MONODROMY_SIGN: i8 = -1;
