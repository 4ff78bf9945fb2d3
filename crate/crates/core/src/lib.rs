//! Exact computation of Cartan's CR-sphericity invariant for real
//! hypersurfaces of ℂ² given by polynomial defining functions, with an exact
//! certificate that a distinguished curve on every ellipsoid is umbilical
//! and a numeric scanner for the umbilical locus.

pub mod error;
pub mod scalar;
pub mod symbolic;
pub mod poly4;
pub mod invariant;
pub mod graph;
pub mod ellipsoid;
pub mod radical;
pub mod certificate;
pub mod tables;
pub mod scan;
pub mod cli;

pub use error::*;
pub use poly4::{FloatPoly, Poly4, SurfacePoint, Var};
pub use scalar::{GaussianRational, Rational, Scalar};
pub use symbolic::{RatFn, SymPoly};
