//! The alternating weighted Gamma sum
//!
//! ```text
//! Σ_{k=0}^n (−1)^k (2−δ_{k0}) Γ((s+n)/2−k) Γ((s+n)/2+k) / ((n−k)!(n+k)!)
//!   = ((−1)^n/n!) Γ((s+n)/2) Γ((s−n)/2)
//! ```
//!
//! evaluated through log-Gamma with explicit sign tracking. Terms with a
//! Gamma argument at a nonpositive integer are poles of the whole instance
//! and surface as [`Error::GammaPole`] naming the offending k.

use libm::floor;

use crate::error::Error;
use crate::exact::factorial;
use crate::identities::{
    residual_from_sums, scaled_from_bigint, Identity, IdentityInstance, Residual,
};
use crate::specfun::gamma::gamma_scaled;
use crate::specfun::scaled::ScaledSum;
use crate::specfun::Flags;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == floor(x)
}

pub fn residual_eq11(s: f64, n: u32, tol_rel: f64) -> Result<Residual, Error> {
    if !s.is_finite() {
        return Err(Error::Domain {
            func: "residual_eq11",
            message: "s must be finite",
        });
    }
    let alpha = 0.5 * (s + n as f64);
    // every lhs pole in k includes the rhs pole instances (s−n)/2 ≤ 0
    for k in 0..=n {
        if is_nonpositive_integer(alpha - k as f64) || is_nonpositive_integer(alpha + k as f64) {
            return Err(Error::GammaPole {
                func: "residual_eq11",
                k,
            });
        }
    }
    if is_nonpositive_integer(0.5 * (s - n as f64)) {
        return Err(Error::GammaPole {
            func: "residual_eq11",
            k: n,
        });
    }
    let mut lhs = ScaledSum::new();
    for k in 0..=n {
        let g = gamma_scaled(alpha - k as f64)?.mul(&gamma_scaled(alpha + k as f64)?);
        let weight = if k == 0 { 1i32 } else { 2 };
        let weight = if k % 2 == 1 { -weight } else { weight };
        let den = factorial(n - k) * factorial(n + k);
        let term = g
            .mul_f64(weight as f64)
            .div(&scaled_from_bigint(&den));
        lhs.add(term);
    }
    let mut rhs = ScaledSum::new();
    let mut tail = gamma_scaled(alpha)?
        .mul(&gamma_scaled(0.5 * (s - n as f64))?)
        .div(&scaled_from_bigint(&factorial(n)));
    if n % 2 == 1 {
        tail = tail.neg();
    }
    rhs.add(tail);
    let params = IdentityInstance {
        n: Some(n),
        s: Some(s),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq11,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::fabs;

    #[test]
    fn hand_reducible_instances() {
        // n=0: both sides Γ(s/2)², a single weight-1 term
        let r = residual_eq11(5.0, 0, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(fabs(r.lhs - r.rhs) <= 1e-13 * r.lhs.abs());
        // n=1, s=5: lhs = Γ(3)² − 2Γ(2)Γ(4)/2 = 4 − 6 = −2 = −Γ(3)Γ(2)
        let r = residual_eq11(5.0, 1, 1e-12).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(fabs(r.lhs - -2.0) < 1e-12, "lhs = {}", r.lhs);
        assert!(fabs(r.rhs - -2.0) < 1e-12);
    }

    #[test]
    fn reference_values() {
        // mpmath (dps=40)
        let r = residual_eq11(3.7, 8, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(fabs(r.rhs - -0.0069259163393160507196) < 1e-16);
        let r = residual_eq11(2.5, 10, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(fabs(r.rhs - 0.000013645830668374167856) < 1e-18);
        // even s with odd offset stays off the poles
        let r = residual_eq11(6.0, 5, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(fabs(r.rhs - -0.77312631709436317978) < 1e-12);
    }

    #[test]
    fn poles_are_named() {
        // s=6, n=6: Γ((s−n)/2) = Γ(0); equivalently the k=6 term hits Γ(0)
        match residual_eq11(6.0, 6, 1e-9) {
            Err(Error::GammaPole { k, .. }) => assert_eq!(k, 6),
            other => panic!("expected GammaPole, got {other:?}"),
        }
        // s=2, n=4: alpha = 3, k=3 term has Γ(0)
        match residual_eq11(2.0, 4, 1e-9) {
            Err(Error::GammaPole { k, .. }) => assert_eq!(k, 3),
            other => panic!("expected GammaPole, got {other:?}"),
        }
        assert!(residual_eq11(f64::INFINITY, 2, 1e-9).is_err());
    }
}
