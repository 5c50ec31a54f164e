//! Standard-form SDP problem data and the linear-algebra plumbing around it.
//!
//! A problem is `min <C, X> s.t. A(X) = b, X >= 0` with
//! `A(X) = (<A_1, X>, ..., <A_m, X>)` and adjoint `A*(y) = sum y_i A_i`.
//! The crate owns the cached SPD factorization of the Gram matrix `A A*`,
//! the orthogonal projector `P = A* (A A*)^-1 A` onto `span{A_i}`, KKT
//! residuals, congruence transforms of the data, and a reader for
//! single-block SDPA sparse files.

mod error;
mod problem;
mod sdpa;

pub use error::SdpError;
pub use problem::{Iterate, KktResiduals, SdpProblem};
pub use sdpa::{load_sdpa, parse_sdpa};
