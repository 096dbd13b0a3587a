//! Exact representation theory of bound quiver algebras: Hom and Ext over
//! finite fields and the rationals, brick enumeration, and numerical
//! Frobenius-Perron dimension estimates.

pub mod algebra;
pub mod bricks;
pub mod error;
pub mod ext;
pub mod field;
pub mod formulas;
pub mod matrix;
pub mod quiver;
pub mod rep;
pub mod spectral;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use matrix::Matrix;
pub use quiver::{BoundQuiver, Path, Quiver, Relation};
pub use rep::Representation;

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type F11 = Fp<11>;
pub type F13 = Fp<13>;
pub type F101 = Fp<101>;
