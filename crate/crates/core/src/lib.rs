//! Computations around `chi(Sq^{n-k}) ι_k` in the cohomology of mod-2
//! Eilenberg-MacLane spaces, and Ext over the subalgebras `A(1)` and `E(1)`.
//!
//! - [`milnor`]: Steenrod algebra arithmetic in the Milnor basis.
//! - [`f2la`]: dense GF(2) linear algebra.
//! - [`km`]: `H*(K(Z/2,k))` with its Steenrod action and image membership.
//! - [`theorems`]: closed forms for the smallest `k` and brute-force checks.
//! - [`resolve`]: graded modules, Margolis homology and minimal resolutions.
//! - [`fixtures`]: published tables used as test fixtures.

pub mod error;
pub mod f2la;
pub mod fixtures;
pub mod km;
pub mod milnor;
pub mod resolve;
pub mod theorems;

pub use error::{Error, ParseError, Result};
pub use f2la::{F2Matrix, F2Vector};
pub use km::{KMonomial, KPoly, Km, KmGenerator};
pub use milnor::{Ideal, MilnorSeq, SteenrodSum};
