//! Exact construction and verification of the m-quasiinvariants of the
//! symmetric group `S_n`.
//!
//! Everything is computed over ℚ with no floating point. The layers are:
//!
//! * [`exactalg`]: sparse multivariate polynomials, polynomials in an
//!   auxiliary integration variable, truncated power series and exact
//!   fraction-free linear algebra.
//! * [`symgroup`]: permutations, their action on polynomials and the group
//!   algebra ℚS_n.
//! * [`tableaux`]: partitions, standard tableaux, Young symmetrizers and the
//!   column Vandermonde polynomial `V_T`.
//! * [`quasi`]: the quasiinvariance predicate, the `γ_T R ∩ V_T^{2m+1} R`
//!   membership test and the brute-force graded dimension oracle.
//! * [`hookbasis`]: the basis `Q_T^{k,m}` of the `[n−1,1]` isotypic component.
//! * [`calogero`]: the operator `L_m`.
//! * [`structure`]: Hilbert series and the change-of-basis determinant checks.
//! * [`verify`] and [`cli`]: named property suites and the command line surface.

pub mod calogero;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod hookbasis;
pub mod json;
pub mod quasi;
pub mod structure;
pub mod symgroup;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};
pub use exactalg::{BigRational, Monomial, MultiPoly, PowerSeries, TPoly};
pub use hookbasis::HookSpec;
pub use symgroup::{GroupAlgebraElem, Perm};
pub use tableaux::{Partition, Tableau};
