//! Exact certification of totally aspherical parameters for the rational
//! Cherednik algebras of the complex reflection groups `G(ℓ,1,n)`.
//!
//! Parameters are handled in λ-coordinates on the cyclic quiver with `ℓ`
//! vertices. [`certify`] checks a sufficient condition built from the
//! integral affine root subsystem of λ, and [`find_aspherical_shift`] moves any
//! rational λ by an integer vector into the certified locus. For `ℓ = 1`
//! (the symmetric group) [`is_totally_aspherical_type_a`] is an exact test.
//!
//! All arithmetic is exact: rationals are arbitrary precision and values
//! outside `Q` are carried in the cyclotomic field `Q(ζ_ℓ)`.

pub mod asphericity;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod params;
pub mod rational;
pub mod roots;
pub mod shift;
pub mod sweep;

pub use asphericity::{
    certify, certify_with_window, is_totally_aspherical_type_a, parabolic_slices, Certificate, KappaReason,
    SliceDescriptor, TypeAVerdict, Verdict,
};
pub use cyclotomic::{Cyclotomic, FieldOp};
pub use error::{Error, ParseError, Result};
pub use params::{
    cherednik_to_lambda, h_coordinates, kappa_of_lambda, lambda_to_cherednik, lattice_shift, CherednikParam,
    Convention, HCoordinates, LambdaOutcome, LambdaParam,
};
pub use rational::Rational;
pub use roots::{simple_roots_of_subsystem, QuiverShape, RootVector, SubsystemKind, SubsystemReport};
pub use shift::{find_aspherical_shift, ShiftResult, ShiftStrategy};
pub use sweep::{sweep, SweepReport, SweepSpec};
