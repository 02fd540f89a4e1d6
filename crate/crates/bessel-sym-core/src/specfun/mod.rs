//! Floating-point special functions backing the identity evaluators.
//!
//! Accuracy contracts (relative, against the high-precision oracles in the
//! test tree):
//!
//! | function      | target  | domain                                   |
//! |---------------|---------|------------------------------------------|
//! | `lngamma`     | 1e−13   | x ∈ [1e−3, 1e3], metric floored at 1     |
//! | `bessel_k`    | 1e−12   | \|ν\| ≤ 40, z ∈ [0.05, 50]               |
//! | `bessel_j`    | 1e−12   | \|n\| ≤ 40, x ∈ [0.05, 50] (abs near zeros) |
//! | `bessel_y`    | 1e−11   | \|n\| ≤ 40, x ∈ [0.1, 50] (abs near zeros)  |
//! | `gauss_2f1`   | 1e−11   | \|z\| ≤ 0.9, identity parameter families |
//! | `hyp_3f2`     | 1e−10   | \|z\| ≤ 0.9; z = ±1 within convergence   |
//! | `tricomi_u`   | 1e−8    | a ≤ 25, \|b\| ≤ 25, z ∈ [0.2, 20]        |
//! | `whittaker_w` | 1e−7    | the symmetric-sum family, m,n ≤ 4, z ∈ [0.5, 10] |

pub mod bessel_jy;
pub mod bessel_k;
pub mod gamma;
pub mod hyper;
pub mod quad;
pub mod scaled;
pub mod tricomi;
pub mod whittaker;

pub use bessel_jy::{bessel_j, bessel_j_family, bessel_y, bessel_y_family};
pub use bessel_k::{bessel_k, bessel_k_family};
pub use gamma::{gamma_scaled, gamma_sign, lngamma};
pub use hyper::{gauss_2f1, hyp_3f2};
pub use scaled::{ScaledReal, ScaledSum};
pub use tricomi::tricomi_u;
pub use whittaker::whittaker_w;

use crate::error::Error;

/// Accuracy caveats accumulated while producing a value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Flags {
    /// A series hit its term cap before the stopping rule fired.
    pub term_cap_hit: bool,
    /// A quadrature exhausted its subdivision budget.
    pub quad_budget_exhausted: bool,
}

impl Flags {
    pub fn merge(self, other: Flags) -> Flags {
        Flags {
            term_cap_hit: self.term_cap_hit || other.term_cap_hit,
            quad_budget_exhausted: self.quad_budget_exhausted || other.quad_budget_exhausted,
        }
    }

    pub fn any(self) -> bool {
        self.term_cap_hit || self.quad_budget_exhausted
    }
}

/// A value and the caveats that came with it.
#[derive(Debug, Clone, Copy)]
pub struct Flagged<T> {
    pub value: T,
    pub flags: Flags,
}

/// A validated positive evaluation argument (z for K and W, x for J and Y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint(f64);

impl EvalPoint {
    pub fn new(value: f64) -> Result<Self, Error> {
        if value > 0.0 && value.is_finite() {
            Ok(EvalPoint(value))
        } else {
            Err(Error::Domain {
                func: "EvalPoint",
                message: "evaluation argument must be positive and finite",
            })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}
