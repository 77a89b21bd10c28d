//! Exact computations for the directed Fukaya category and the graded
//! singularity category of Brieskorn–Pham polynomials `x₁^{p₁} + … + xₙ^{pₙ}`.
//!
//! The crate is `no_std` and only needs `alloc`. Arithmetic is exact
//! throughout (arbitrary-precision rationals and integers).

#![no_std]

extern crate alloc;

pub mod dgcat;
pub mod exactlin;
pub mod grading;
pub mod lattice;
pub mod singcat;
pub mod suspension;
pub mod twisted;
