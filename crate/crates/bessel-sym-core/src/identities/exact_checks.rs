//! Residual wrappers around the exact big-rational identities, so the sweep
//! driver can run them next to the floating ones. Their verdict is exact
//! equality: abs_err is identically zero or the instance fails.

use alloc::string::String;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::exact::{self, factorial, falling_ratio};
use crate::identities::{
    residual_from_exact, Identity, IdentityInstance, ParamValue, Residual,
};

/// Lattice certificate for the polynomial symmetry/degree claim, run on the
/// (n+2)×(n+2) grid. Reported as a zero/one violation measure.
pub fn residual_lemma1(n: u32) -> Result<Residual, Error> {
    let grid = n + 2;
    let ok = exact::verify_lemma1(n, grid, grid)?;
    let zero = BigRational::zero();
    let mut r = residual_from_exact(
        Identity::Lemma1,
        IdentityInstance {
            n: Some(n),
            ..Default::default()
        },
        &zero,
        &zero,
        "exact lattice certificate",
    );
    r.pass = ok;
    if !ok {
        r.abs_err = f64::NAN;
        r.rel_err = f64::NAN;
    }
    Ok(r)
}

pub fn residual_eq18(m: u32, n: u32, a: &BigRational) -> Result<Residual, Error> {
    // surfaces pole instances before any arithmetic
    exact::verify_eq18(m, n, a)?;
    let lhs = exact::eq18_side(m, n, a);
    let rhs = exact::eq18_side(n, m, a);
    Ok(residual_from_exact(
        Identity::Eq18,
        IdentityInstance {
            m: Some(m),
            n: Some(n),
            a: Some(ParamValue::Rational(a.clone())),
            ..Default::default()
        },
        &lhs,
        &rhs,
        "exact, gamma(1-a)-reduced",
    ))
}

pub fn residual_eq19(m: u32, n: u32) -> Result<Residual, Error> {
    let lhs = BigRational::from_integer(exact::eq19_side(m, n));
    let rhs = BigRational::from_integer(exact::eq19_side(n, m));
    Ok(residual_from_exact(
        Identity::Eq19,
        IdentityInstance {
            m: Some(m),
            n: Some(n),
            ..Default::default()
        },
        &lhs,
        &rhs,
        "exact",
    ))
}

pub fn residual_eq22(n: u32, p: u32) -> Result<Residual, Error> {
    let mut lhs = num_bigint::BigInt::zero();
    for k in 0..=n {
        lhs += falling_ratio(p + k, k);
    }
    let lhs = BigRational::from_integer(lhs);
    let rhs = BigRational::new(
        factorial(n + p + 1),
        num_bigint::BigInt::from(p + 1) * factorial(n),
    );
    let mut r = residual_from_exact(
        Identity::Eq22,
        IdentityInstance {
            m: Some(p),
            n: Some(n),
            ..Default::default()
        },
        &lhs,
        &rhs,
        "exact",
    );
    // keep the note explicit about the m-slot carrying the shift parameter
    r.notes = Some(String::from("exact; m column holds the shift parameter p"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exact_residuals_have_zero_abs_err() {
        let r = residual_eq19(1, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.abs_err, 0.0);
        assert_eq!(r.lhs, 9.0);
        let r = residual_eq22(2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, 6.0);
        let r = residual_lemma1(3).unwrap();
        assert!(r.pass);
        assert_eq!(r.abs_err, 0.0);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let r = residual_eq18(2, 3, &half).unwrap();
        assert!(r.pass);
        assert_eq!(r.abs_err, 0.0);
    }

    #[test]
    fn eq18_pole_instances_error_out() {
        let three = BigRational::from_integer(BigInt::from(3));
        assert!(matches!(
            residual_eq18(4, 2, &three),
            Err(Error::PoleInstance { .. })
        ));
    }
}
