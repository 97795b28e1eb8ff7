//! Exact algebra for unimodular rows, Euler class groups and Milnor–Witt K-theory.

pub mod euler;
pub mod gersten;
pub mod linalg;
pub mod mwk;
pub mod qform;
pub mod ring;
pub mod umrow;

pub type Rational = num_rational::BigRational;
