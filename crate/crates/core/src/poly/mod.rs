//! Indexed variables, monomials, polynomials over the rationals, permutation
//! actions, term orders and the text format.

pub mod monomial;
pub mod order;
pub mod parse;
pub mod perm;
pub mod polynomial;
pub mod var;

pub use monomial::{mono_combine, Combine, Monomial};
pub use order::{TermOrder, VarSet};
pub use parse::{parse_monomial, parse_polynomial, parse_polynomial_list};
pub use perm::{IndexAction, Injection, Permutation};
pub use polynomial::{poly_arith, ArithOp, LeadingData, Polynomial};
pub use var::{Index, Var};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
