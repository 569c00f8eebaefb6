//! Exact and numerical verification of truncated pentagonal-type partition sums.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`partition`] builds exact tables of p(n), overpartitions p̄(n) and pod(n),
//!   and enumerates partitions for brute-force oracles.
//! * [`qseries`] is a small dense formal power series algebra over big integers
//!   with q-Pochhammer symbols and Gaussian binomials, used to check the
//!   generating-function identities coefficient by coefficient.
//! * [`truncated`] evaluates M_k(n), M̄_k(n) and MP_k(n) from the tables and
//!   counts the partitions they are known to enumerate.
//! * [`asymptotics`] is the floating-point layer: main terms, I-Bessel
//!   functions, Wright's contour integral, checks of the near/away arc
//!   estimates and a numerical circle-method reconstruction of M_k(n).

pub mod asymptotics;
mod error;
pub mod partition;
pub mod qseries;
pub mod truncated;

pub use error::{Error, Result};
pub use partition::{Family, SeqTable};
pub use qseries::CoeffSeries;
pub use truncated::TruncatedFamily;
