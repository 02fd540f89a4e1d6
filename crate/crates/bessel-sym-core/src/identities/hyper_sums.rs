//! Hypergeometric finite sums: the analytic two-variable generating
//! function G(p,q,z) behind `lemma2` and the ₃F₂ families it seeds.

use alloc::format;

use libm::fabs;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::Error;
use crate::exact::{binomial, g_series_coeff};
use crate::identities::{
    residual_from_sums, Identity, IdentityInstance, ParamValue, Residual,
};
use crate::specfun::gamma::lngamma;
use crate::specfun::scaled::{ScaledReal, ScaledSum};
use crate::specfun::{gauss_2f1, hyp_3f2, Flags};

/// Series order at which the lemma-2 cross-check is truncated by default.
pub const LEMMA2_SERIES_NMAX: u32 = 80;

fn accumulate_lemma2_finite(p: u32, q: u32, z: f64) -> Result<ScaledSum, Error> {
    let mut acc = ScaledSum::new();
    for k in 0..=p {
        let weight = binomial(q + k + 1, q).expect("q <= q+k+1");
        let f = gauss_2f1(k as f64 + 1.0, q as f64 + 2.0, 1.0, z)?;
        acc.add_value(weight.to_f64().unwrap_or(f64::INFINITY) * f);
    }
    Ok(acc)
}

/// Finite form G(p,q,z) = Σ_{k=0}^p C(q+k+1,q) ₂F₁(k+1,q+2;1;z).
pub fn g_lemma2_finite(p: u32, q: u32, z: f64) -> Result<f64, Error> {
    Ok(accumulate_lemma2_finite(p, q, z)?.total().value())
}

/// Series form Σ_{n=0}^{nmax} F(n,p,q)/(n!)² zⁿ with exact coefficients.
///
/// Each term cₙzⁿ is formed in exact rational arithmetic (z is a rational
/// after all) and rounded once; only the accumulation floats. At z < 0 the
/// terms alternate against a large condition number, and per-term exactness
/// keeps the noise floor at Σ|terms|·ε/2 instead of n·ε times that.
pub fn g_lemma2_series(p: u32, q: u32, z: f64, nmax: u32) -> Result<f64, Error> {
    if !(fabs(z) < 1.0) {
        return Err(Error::Domain {
            func: "g_lemma2_series",
            message: "series converges for |z| < 1 only",
        });
    }
    let z_exact = BigRational::from_float(z).expect("finite z");
    let mut z_pow = BigRational::one();
    let mut acc = ScaledSum::new();
    for n in 0..=nmax {
        let term = g_series_coeff(n, p, q) * &z_pow;
        acc.add_value(term.to_f64().unwrap_or(f64::INFINITY));
        z_pow *= &z_exact;
    }
    Ok(acc.total().value())
}

/// Symmetry residual G(p,q,z) vs G(q,p,z); the finite-vs-series deviation
/// rides along in the notes as a diagnostic.
pub fn residual_lemma2(p: u32, q: u32, z: f64, tol_rel: f64) -> Result<Residual, Error> {
    if !(fabs(z) < 1.0) {
        return Err(Error::Domain {
            func: "residual_lemma2",
            message: "analytic for |z| < 1 only",
        });
    }
    let lhs = accumulate_lemma2_finite(p, q, z)?;
    let rhs = accumulate_lemma2_finite(q, p, z)?;
    let params = IdentityInstance {
        m: Some(p),
        n: Some(q),
        z: Some(z),
        ..Default::default()
    };
    let mut r = residual_from_sums(Identity::Lemma2, params, &lhs, &rhs, tol_rel, Flags::default());
    let series = g_lemma2_series(p, q, z, LEMMA2_SERIES_NMAX)?;
    let finite = lhs.total().value();
    let series_dev = fabs(finite - series) / fabs(finite).max(1.0);
    if let Some(notes) = &mut r.notes {
        notes.push_str(&format!("; series_rel_dev={series_dev:.3e}"));
    }
    Ok(r)
}

/// One side of the ₃F₂ symmetric sum: Σ_{k=0}^n C(m+k+1,m)·₃F₂(k+1,m+2,a;1,a+b;z).
fn hyper_side(m: u32, n: u32, a: f64, ab: f64, z: f64) -> Result<(ScaledSum, Flags), Error> {
    let mut acc = ScaledSum::new();
    let mut flags = Flags::default();
    for k in 0..=n {
        let weight = binomial(m + k + 1, m).expect("m <= m+k+1");
        let f = hyp_3f2(k as f64 + 1.0, m as f64 + 2.0, a, 1.0, ab, z)?;
        flags = flags.merge(f.flags);
        acc.add_value(weight.to_f64().unwrap_or(f64::INFINITY) * f.value);
    }
    Ok((acc, flags))
}

/// The general symmetric ₃F₂ sum with parameters (x, x+λ).
pub fn residual_eq16(
    m: u32,
    n: u32,
    x: f64,
    lambda: f64,
    z: f64,
    tol_rel: f64,
) -> Result<Residual, Error> {
    let (lhs, fl) = hyper_side(m, n, x, x + lambda, z)?;
    let (rhs, fr) = hyper_side(n, m, x, x + lambda, z)?;
    let params = IdentityInstance {
        m: Some(m),
        n: Some(n),
        x: Some(x),
        lambda: Some(lambda),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq16,
        params,
        &lhs,
        &rhs,
        tol_rel,
        fl.merge(fr),
    ))
}

/// The m = 0 collapse: Σ_{k=0}^n ₃F₂(k+1,2,x;1,x+λ;z) = (n+1)·₂F₁(n+2,x;x+λ;z).
pub fn residual_eq17(
    n: u32,
    x: f64,
    lambda: f64,
    z: f64,
    tol_rel: f64,
) -> Result<Residual, Error> {
    let mut lhs = ScaledSum::new();
    let mut flags = Flags::default();
    for k in 0..=n {
        let f = hyp_3f2(k as f64 + 1.0, 2.0, x, 1.0, x + lambda, z)?;
        flags = flags.merge(f.flags);
        lhs.add_value(f.value);
    }
    let mut rhs = ScaledSum::new();
    rhs.add_value((n as f64 + 1.0) * gauss_2f1(n as f64 + 2.0, x, x + lambda, z)?);
    let params = IdentityInstance {
        n: Some(n),
        x: Some(x),
        lambda: Some(lambda),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq17,
        params,
        &lhs,
        &rhs,
        tol_rel,
        flags,
    ))
}

/// The symmetric ₃F₂ sum with free parameters (a, a+b).
pub fn residual_eq20(
    m: u32,
    n: u32,
    a: f64,
    b: f64,
    z: f64,
    tol_rel: f64,
) -> Result<Residual, Error> {
    let (lhs, fl) = hyper_side(m, n, a, a + b, z)?;
    let (rhs, fr) = hyper_side(n, m, a, a + b, z)?;
    let params = IdentityInstance {
        m: Some(m),
        n: Some(n),
        a: Some(ParamValue::Real(a)),
        b: Some(b),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq20,
        params,
        &lhs,
        &rhs,
        tol_rel,
        fl.merge(fr),
    ))
}

/// Unit-argument closed form:
/// Σ_{k=0}^n ₃F₂(k+1,2,a;1,a+b;1) = (n+1)Γ(b−n−2)Γ(a+b)/(Γ(a+b−n−2)Γ(b)).
pub fn residual_eq21(n: u32, a: f64, b: f64, tol_rel: f64) -> Result<Residual, Error> {
    if !(b > n as f64 + 2.0) {
        // ensures Σb − Σa = b − k − 2 > 0 for every k ≤ n
        return Err(Error::Divergent { func: "residual_eq21" });
    }
    let mut lhs = ScaledSum::new();
    let mut flags = Flags::default();
    for k in 0..=n {
        let f = hyp_3f2(k as f64 + 1.0, 2.0, a, 1.0, a + b, 1.0)?;
        flags = flags.merge(f.flags);
        lhs.add_value(f.value);
    }
    let nf = n as f64;
    let ln_ratio = lngamma(b - nf - 2.0)? + lngamma(a + b)? - lngamma(a + b - nf - 2.0)?
        - lngamma(b)?;
    let mut rhs = ScaledSum::new();
    rhs.add(ScaledReal::from_f64(nf + 1.0).mul_exp(ln_ratio));
    let params = IdentityInstance {
        n: Some(n),
        a: Some(ParamValue::Real(a)),
        b: Some(b),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq21,
        params,
        &lhs,
        &rhs,
        tol_rel,
        flags,
    ))
}
