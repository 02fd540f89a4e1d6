//! Gauss ₂F₁ and generalized ₃F₂ by direct series summation with
//! compensated accumulation.
//!
//! The identity evaluators only ever need |z| ≤ 0.9 (where the ratio test
//! drives the series home quickly) and the conditionally convergent unit
//! argument of the ₃F₂ summation formulas. At z = 1 the terms decay only
//! algebraically, so the series is summed to a hard term cap and the result
//! carries an accuracy flag when the stopping rule never fired.

use libm::fabs;

use crate::error::Error;
use crate::specfun::{Flagged, Flags};

const TERM_EPS: f64 = 1e-17;
const TERM_CAP: u32 = 1_000_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

/// Gauss hypergeometric ₂F₁(a,b;c;z), |z| < 1.
///
/// Negative arguments route through the Pfaff transformation
/// F(a,b;c;z) = (1−z)^{−a} F(a, c−b; c; z/(z−1)): the mapped argument is
/// positive, which kills the alternating-series cancellation that otherwise
/// dominates the error at z < 0 (for the c = 1 identity families the mapped
/// series even terminates).
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64, Error> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain {
            func: "gauss_2f1",
            message: "lower parameter c is a nonpositive integer",
        });
    }
    if !(fabs(z) < 1.0) {
        return Err(Error::Domain {
            func: "gauss_2f1",
            message: "argument must satisfy |z| < 1",
        });
    }
    if z < 0.0 && !is_nonpositive_integer(a) && !is_nonpositive_integer(b) {
        let w = z / (z - 1.0);
        // prefer the variant whose new upper parameter terminates the series
        let (keep, swap) = if is_nonpositive_integer(c - b) || fabs(c - b) <= fabs(c - a) {
            (a, c - b)
        } else {
            (b, c - a)
        };
        return Ok(libm::pow(1.0 - z, -keep) * gauss_2f1_series(keep, swap, c, w)?);
    }
    gauss_2f1_series(a, b, c, z)
}

fn gauss_2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64, Error> {
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    for k in 0..TERM_CAP {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            return Ok(sum + comp); // terminating (polynomial) case
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if fabs(term) < TERM_EPS * fabs(sum) && k > 2 {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence { func: "gauss_2f1" })
}

/// Generalized ₃F₂(a1,a2,a3; b1,b2; z) for |z| < 1, and at z = ±1 where the
/// series converges (Σb − Σa > 0, resp. > −1, unless it terminates).
pub fn hyp_3f2(
    a1: f64,
    a2: f64,
    a3: f64,
    b1: f64,
    b2: f64,
    z: f64,
) -> Result<Flagged<f64>, Error> {
    if is_nonpositive_integer(b1) || is_nonpositive_integer(b2) {
        return Err(Error::Domain {
            func: "hyp_3f2",
            message: "a lower parameter is a nonpositive integer",
        });
    }
    let terminating = is_nonpositive_integer(a1) || is_nonpositive_integer(a2)
        || is_nonpositive_integer(a3);
    let excess = b1 + b2 - a1 - a2 - a3;
    if fabs(z) > 1.0 {
        return Err(Error::Domain {
            func: "hyp_3f2",
            message: "argument must satisfy |z| <= 1",
        });
    }
    if fabs(z) == 1.0 && !terminating {
        let converges = if z > 0.0 { excess > 0.0 } else { excess > -1.0 };
        if !converges {
            return Err(Error::Divergent { func: "hyp_3f2" });
        }
    }
    let mut sum = 1.0f64;
    let mut comp = 0.0f64;
    let mut term = 1.0f64;
    let mut flags = Flags::default();
    for k in 0..TERM_CAP {
        let kf = k as f64;
        term *= (a1 + kf) * (a2 + kf) * (a3 + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            break;
        }
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if fabs(term) < TERM_EPS * fabs(sum) && k > 2 {
            return Ok(Flagged { value: sum, flags });
        }
    }
    if !terminating {
        flags.term_cap_hit = true;
    }
    Ok(Flagged { value: sum, flags })
}
