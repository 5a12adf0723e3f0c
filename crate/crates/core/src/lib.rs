//! Exact symbolic computation for the q-deformed 7-sphere and the quantum
//! instanton fibration over the q-deformed 4-sphere.
//!
//! The crate implements, with exact Laurent-polynomial coefficients in q:
//!
//! - [`coeff`]: the scalar ring of Laurent polynomials in q over the
//!   rationals;
//! - [`suq2`]: the normal-form engine and coalgebra structure of A(SU_q(2));
//! - [`s7`]: the normal-form engine and star structure of A(S^7_q);
//! - [`cmod`]: the quotient coalgebra C with basis r[k,m,n] and the right
//!   action of all 32 ambient generator symbols;
//! - [`galois`]: the right module action on P (x) C, the coaction, the
//!   canonical map chi, the recursive translation map tau, the 4-sphere
//!   coinvariant generators and the entwining map psi;
//! - [`verify`]: the named verification suites S1..S8 that check every
//!   asserted identity degree by degree;
//! - [`expr`]: the expression DSL used by the command-line front end;
//! - [`cache`]: the persistent tau cache file format.
//!
//! All comparisons everywhere are exact equalities of canonical forms; there
//! is no floating-point mode.

pub mod cache;
pub mod cmod;
pub mod coeff;
pub mod expr;
pub mod galois;
pub mod lincomb;
pub mod rewrite;
pub mod s7;
pub mod suq2;
pub mod verify;

pub use coeff::LaurentCoeff;
pub use lincomb::LinComb;
