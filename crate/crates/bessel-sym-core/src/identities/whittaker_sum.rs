//! The Whittaker-kernel symmetric sum
//!
//! ```text
//! Σ_{k=0}^n C(m+k+1,m) z^{(k+m)/2} W_{−k−m−2, k−m−1}(z)   vs   m ↔ n
//! ```
//!
//! in its stated index convention. Fractional powers use the
//! positive real root (z > 0 throughout, no branch cuts).
//!
//! Note: high-precision evaluation of both sides (two independent W
//! implementations) shows this form is *not* symmetric off the m = n
//! diagonal; the evaluator reports that asymmetry honestly rather than
//! masking it.

use libm::log;

use crate::error::Error;
use crate::exact::binomial;
use crate::identities::{
    residual_from_sums, scaled_from_bigint, Identity, IdentityInstance, Residual,
};
use crate::specfun::scaled::ScaledSum;
use crate::specfun::whittaker::whittaker_w;
use crate::specfun::{EvalPoint, Flags};

fn whittaker_side(m: u32, n: u32, z: f64) -> Result<(ScaledSum, Flags), Error> {
    let ln_z = log(z);
    let mut acc = ScaledSum::new();
    let mut flags = Flags::default();
    for k in 0..=n {
        let weight = binomial(m + k + 1, m).expect("m <= m+k+1");
        let kappa = -(k as f64) - m as f64 - 2.0;
        let mu = k as f64 - m as f64 - 1.0;
        let w = whittaker_w(kappa, mu, z)?;
        flags = flags.merge(w.flags);
        let term = scaled_from_bigint(&weight)
            .mul(&w.value)
            .mul_exp(0.5 * (k + m) as f64 * ln_z);
        acc.add(term);
    }
    Ok((acc, flags))
}

pub fn residual_eq24(m: u32, n: u32, z: f64, tol_rel: f64) -> Result<Residual, Error> {
    let z = EvalPoint::new(z)?.get();
    let (lhs, fl) = whittaker_side(m, n, z)?;
    let (rhs, fr) = whittaker_side(n, m, z)?;
    let params = IdentityInstance {
        m: Some(m),
        n: Some(n),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq24,
        params,
        &lhs,
        &rhs,
        tol_rel,
        fl.merge(fr),
    ))
}
