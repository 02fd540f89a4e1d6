//! Error type shared by the exact and floating-point evaluators.

use core::fmt;

/// Why an evaluation could not produce a value.
///
/// Sweep drivers are expected to record pole-type errors
/// ([`Error::GammaPole`], [`Error::PoleInstance`]) as skipped grid points
/// rather than failures: rectangular parameter grids routinely straddle
/// isolated poles of the Gamma factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Argument outside the documented domain of `func`.
    Domain {
        func: &'static str,
        message: &'static str,
    },
    /// A Gamma factor hit a nonpositive integer in term `k` of a sum.
    GammaPole { func: &'static str, k: u32 },
    /// An exact identity instance lands on a Pochhammer zero in a
    /// denominator; the instance is undefined, not false.
    PoleInstance { func: &'static str },
    /// Series parameters outside the convergence region.
    Divergent { func: &'static str },
    /// A convergent series failed to meet its stopping rule within the
    /// iteration budget.
    NoConvergence { func: &'static str },
    /// Lattice grid too small to certify the claimed polynomial degree.
    GridTooSmall { need: u32, got: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { func, message } => write!(f, "{func}: {message}"),
            Error::GammaPole { func, k } => {
                write!(f, "{func}: gamma pole in term k={k}")
            }
            Error::PoleInstance { func } => {
                write!(f, "{func}: pole instance (Pochhammer zero in a denominator)")
            }
            Error::Divergent { func } => {
                write!(f, "{func}: series diverges for these parameters")
            }
            Error::NoConvergence { func } => {
                write!(f, "{func}: series did not converge within the iteration budget")
            }
            Error::GridTooSmall { need, got } => {
                write!(f, "grid too small: need at least {need} points per axis, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}
