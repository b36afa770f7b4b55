//! Exact arithmetic foundation: rationals, sparse polynomials, the
//! integration-variable representation, power series and elimination.

pub mod linalg;
pub mod poly;
pub mod rational;
pub mod series;
pub mod tpoly;

pub use poly::{elementary_symmetric, monomials_of_degree, vandermonde, Monomial, MultiPoly};
pub use rational::{binomial, factorial, rat, ratio, BigRational};
pub use series::{series_expand, PowerSeries};
pub use tpoly::{linear_product, TPoly};
