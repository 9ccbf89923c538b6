//! Exact computation of Macdonald polynomials `P_lambda(q, q^k)` for the root
//! system `A_{n-1}` with integer `k >= 1`, together with the difference
//! operators, recurrences and product formulas they satisfy.
//!
//! All arithmetic is exact: coefficients live in the field of rational
//! functions in fractional powers of `q` ([`exactalg::ExactScalar`]).

pub mod cli;
pub mod error;
pub mod exactalg;
pub mod identities;
pub mod macdonald;
pub mod operators;
pub mod par;
pub mod roota;
pub mod weightalg;

pub use error::{Error, Result};
pub use exactalg::{qint, ExactScalar, LaurentPoly, QExponent};
pub use macdonald::MacdonaldContext;
pub use roota::{RootData, Weight};
pub use weightalg::GroupAlgebraElement;
