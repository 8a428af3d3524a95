//! Exact intersection theory on blown-up surfaces.
//!
//! Surfaces are modelled by their Neron-Severi lattice with the canonical
//! class and a polarization. On top of that the crate provides Riemann-Roch at
//! the Euler characteristic level, Zariski decomposition relative to a finite
//! set of candidate curves, the explicit lower bounds on self-intersections of
//! integral curves on blow-ups and families, and enumeration of the
//! `(-1)`-curves on del Pezzo surfaces.
//!
//! All arithmetic is over arbitrary-precision rationals; nothing here uses
//! floating point.
#![no_std]
extern crate alloc;

pub mod bounds;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod riemann_roch;
pub mod zariski;

pub use error::{Error, Result};
pub use lattice::{
    blow_up, intersect, make_hirzebruch, make_projective_plane, make_ruled, DivisorClass,
    IntersectionForm, SurfaceKind, SurfaceModel,
};

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}
