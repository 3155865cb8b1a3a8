//! Lissajous-Chebyshev node sets, the Lissajous curves and Chebyshev varieties
//! that generate them, and unique polynomial interpolation and quadrature on
//! the nodes.
//!
//! Everything that defines a set (node indices, spectral indices, curve
//! samples) is computed in integer arithmetic. Floating point enters only for
//! node coordinates, function values and coefficients.

pub mod arith;
pub mod dct;
pub mod discrete;
mod error;
pub mod exec;
pub mod interp;
pub mod lissajous;
pub mod nodes;
pub mod spectral;
pub mod trig;
pub mod verify;

pub use arith::{crt_solve, lcm_vec, sharp_flat_decompose, validate_sharp_flat, ParamVec, SharpFlat};
pub use error::{Error, Result};
pub use exec::Execution;
pub use interp::{ChebCoeffs, Interpolant, Interpolator, Space};
pub use nodes::{NodeIndex, NodePoint, NodeSet, Weight};
pub use spectral::{ClassDecomposition, SpectralClass, SpectralIndex};
