//! Arithmetic and linear algebra over the paracomplex numbers
//! `x + εy`, `ε² = 1`.
//!
//! Every element is stored in idempotent coordinates `(z₊, z₋)` with respect
//! to `e± = (1 ± ε)/2`, so `z = z₊e₊ + z₋e₋`. Products, inverses and matrix
//! actions are then componentwise, and the whole algebra splits into two
//! independent real "sheets".

mod holomorphy;
mod kstructure;
mod linalg;
mod number;

pub use holomorphy::{default_fd_step, paraholomorphy_residual};
pub use kstructure::KStructure;
pub use linalg::{hermitian_inner, PcMatrix, PcVector};
pub use number::{from_idempotent, to_idempotent, AlgebraKind, Paracomplex, Sheet};
