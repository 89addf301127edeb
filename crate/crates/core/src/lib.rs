//! Exact symbolic workbench for κ-Minkowski star products.
//!
//! Everything is computed over the Gaussian rationals ℚ(i); the deformation
//! parameter θ is a formal grading, never a number. Polynomials in the
//! spacetime coordinates `x^0..x^d` or in the phase-space coordinates
//! `z^i, z̄^i` are multiplied with one of several star products:
//!
//! - Moyal and Wick-Voros on `ℂ^d`,
//! - the closed-form κ-Minkowski product `exp[θ ∂_{y^0} x^ν ∂_{w^ν}]`,
//! - an `su(2)`-type product on `ℝ^3`,
//! - products induced by the Jordanian twist and its r-symmetric variant.
//!
//! The [`realization`] module checks that the κ product is the reduction of
//! Wick-Voros along `x^0 = Σ z̄^i z^i, x^i = z̄^i`, [`twist`] rebuilds it from
//! a Jordanian twist, and [`cyclicity`] runs the integration-by-parts
//! analysis of trace measures `h(x)`.

pub mod cyclicity;
pub mod check;
pub mod diffop;
pub mod error;
pub mod multi;
pub mod poly;
pub mod random;
pub mod ratfn;
pub mod realization;
pub mod scalar;
pub mod series;
pub mod star;
pub mod twist;
pub mod vars;

pub use error::{Error, Result};
pub use multi::MultiIndex;
pub use poly::Poly;
pub use ratfn::RationalFn;
pub use scalar::Scalar;
pub use series::ThetaSeries;
pub use vars::{Space, Var, VarKind, VarTable};
