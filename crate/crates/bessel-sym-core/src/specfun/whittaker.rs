//! Whittaker's W function through Tricomi U:
//!
//! ```text
//! W_{κ,μ}(z) = e^{−z/2} z^{μ+1/2} U(μ−κ+1/2, 1+2μ, z)
//! ```
//!
//! carried as a scaled value because the z^{μ+1/2} prefactor leaves f64
//! long before the sums that consume it do. Kummer's transformation makes
//! W even in μ, so the computation always runs at μ ≥ 0 where the U
//! parameters are best behaved.

use libm::{fabs, log};

use crate::error::Error;
use crate::specfun::scaled::ScaledReal;
use crate::specfun::tricomi::tricomi_u;
use crate::specfun::Flagged;

/// W_{κ,μ}(z) for z > 0 and μ − κ + 1/2 > 0.
pub fn whittaker_w(kappa: f64, mu: f64, z: f64) -> Result<Flagged<ScaledReal>, Error> {
    if !(z > 0.0) {
        return Err(Error::Domain {
            func: "whittaker_w",
            message: "argument must be positive",
        });
    }
    if !(mu - kappa + 0.5 > 0.0) {
        return Err(Error::Domain {
            func: "whittaker_w",
            message: "requires mu - kappa + 1/2 > 0",
        });
    }
    let mu = fabs(mu); // W_{κ,μ} = W_{κ,−μ}
    let u = tricomi_u(mu - kappa + 0.5, 1.0 + 2.0 * mu, z)?;
    let scaled = ScaledReal::from_f64(u.value).mul_exp(-0.5 * z + (mu + 0.5) * log(z));
    Ok(Flagged {
        value: scaled,
        flags: u.flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(reference: f64, got: f64) -> f64 {
        fabs(got - reference) / fabs(reference)
    }

    #[test]
    fn exponential_closed_form() {
        // W_{0,1/2}(z) = e^{−z/2}
        for z in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let got = whittaker_w(0.0, 0.5, z).unwrap().value.value();
            let want = libm::exp(-0.5 * z);
            assert!(rel(want, got) < 1e-9, "z={z}: {got:e} vs {want:e}");
        }
    }

    #[test]
    fn matches_high_precision_reference() {
        // mpmath (dps=30): whitw
        let cases = [
            (-2.0, -1.0, 3.0, 0.0089244796479093271598),
            (-4.5, 2.0, 1.0, 0.0023768153100845056587),
            (0.0, 0.5, 3.0, 0.22313016014842982893),
        ];
        for (kappa, mu, z, reference) in cases {
            let got = whittaker_w(kappa, mu, z).unwrap().value.value();
            assert!(
                rel(reference, got) < 1e-8,
                "W({kappa},{mu},{z}): got {got:e} want {reference:e}"
            );
        }
    }

    #[test]
    fn even_in_mu_by_construction() {
        let plus = whittaker_w(-2.0, 1.0, 3.0).unwrap().value;
        let minus = whittaker_w(-2.0, -1.0, 3.0).unwrap().value;
        assert_eq!(plus, minus);
    }

    #[test]
    fn domain_errors() {
        assert!(whittaker_w(0.0, 0.5, 0.0).is_err());
        assert!(whittaker_w(0.0, 0.5, -1.0).is_err());
        // mu − kappa + 1/2 = −1.5 ≤ 0
        assert!(whittaker_w(2.0, 0.0, 1.0).is_err());
    }
}
