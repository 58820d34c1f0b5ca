//! Exact linear algebra: matrices over `F_p` and over `Z`.

pub mod fp;
pub mod int;

pub use fp::{FpMatrix, Rref, SolveResult};
pub use int::{CokernelData, IntMatrix, Snf};
