//! Computational knot diagrams and the algebra around them.
//!
//! The crate is organised around a planar-diagram model of links
//! ([`diagram`]), local rewriting by Reidemeister moves ([`rewrite`]), and a
//! collection of invariants and correspondences computed on top of it:
//! quandle colorings ([`coloring`]), the signed Tait graph and its electrical
//! conductance ([`tait`]), knot-sets read off from undercrossings
//! ([`knotset`]), the quaternion group behind the belt trick
//! ([`quaternion`]) and the Goedel shift on a tiny formal language
//! ([`goedel`]).
//!
//! Numerical modules are generic over the scalar type through
//! [`Scalar`]; the aliases below fix the exact rational instantiations used
//! throughout the CLI and the test suites.

pub mod coloring;
pub mod diagram;
pub mod error;
pub mod goedel;
pub mod knotset;
pub mod quaternion;
pub mod rewrite;
pub mod scalar;
pub mod tait;

pub use diagram::{ArcLabel, Crossing, Diagram, Sign};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Arbitrary precision rational used for exact conductance arithmetic.
pub type Rational = num_rational::BigRational;

/// Exact extended conductance (a rational or infinity).
pub type Conductance = tait::ExtendedConductance<Rational>;

/// Signed network with exact rational conductances.
pub type Network = tait::SignedNetwork<Rational>;

/// Quaternion with exact rational components.
pub type Quat = quaternion::Quaternion<num_rational::Rational64>;

/// Rotation matrix with exact rational entries.
pub type RotationMatrix = quaternion::Matrix3<num_rational::Rational64>;
