//! Exact computer algebra for Real graded Clifford algebras ℂl_{p,q}, their
//! Pin^c groups and spinor modules, Koszul-signed tensor powers, Thom cocycle
//! families and finite graded central extensions.
//!
//! All arithmetic is exact over ℚ(ζ₈); every verification is an equality
//! test, never a tolerance.

pub mod clifford;
pub mod extension;
pub mod linalg;
pub mod operator;
pub mod pin;
pub mod report;
pub mod scalar;
pub mod thom;
pub mod wreath;
