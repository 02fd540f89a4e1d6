//! The symmetric Bessel index sums and their residual evaluators.
//!
//! The central expression is
//!
//! ```text
//! S(m,n,z) = (n+1)! Σ_{k=0}^n (1/k!) C(m+k+1,m) K_{k−m−1}(z) (z/2)^{k+m}
//! ```
//!
//! whose value is invariant under m ↔ n, together with its J/Y analogues
//! (which carry a printed (−1)^m prefactor) and the collapsed m = 0 forms.
//! Summation runs in ascending k with compensated scaled accumulation: the
//! terms grow with k in the dominant regimes, so the largest term is added
//! last. The rational coefficients (n+1)!/k!·C(m+k+1,m) are taken exactly
//! from the big-integer layer before scaling.

use libm::log;

use crate::error::Error;
use crate::exact::{binomial, factorial, falling_ratio};
use crate::identities::{
    residual_from_sums, scaled_from_bigint, Identity, IdentityInstance, ParamValue, Residual,
};
use crate::specfun::scaled::{ScaledReal, ScaledSum};
use crate::specfun::{bessel_j_family, bessel_k_family, bessel_y_family, EvalPoint, Flags};

/// Largest |order| the sum S(m,n,·) requests from a Bessel family.
fn max_abs_order(m: u32, n: u32) -> u32 {
    // orders k−m−1 for k = 0..n span [−m−1, n−m−1]
    let low = m + 1;
    let high = (n as i64 - m as i64 - 1).unsigned_abs() as u32;
    low.max(high)
}

/// K_ν on negative orders via K_{−ν} = K_ν.
fn k_at(family: &[ScaledReal], order: i64) -> ScaledReal {
    family[order.unsigned_abs() as usize]
}

/// J_ν / Y_ν on negative orders via C_{−ν} = (−1)^ν C_ν.
fn cyl_at(family: &[f64], order: i64) -> f64 {
    let v = family[order.unsigned_abs() as usize];
    if order < 0 && order % 2 != 0 {
        -v
    } else {
        v
    }
}

/// Accumulate S(m,n,z) with the K kernel.
fn theorem1_sum(m: u32, n: u32, z: f64) -> Result<ScaledSum, Error> {
    let z = EvalPoint::new(z)?.get();
    let family = bessel_k_family(max_abs_order(m, n), z)?;
    let ln_half_z = log(0.5 * z);
    let mut acc = ScaledSum::new();
    for k in 0..=n {
        let coeff = falling_ratio(n + 1, k) * binomial(m + k + 1, m).expect("m <= m+k+1");
        let term = scaled_from_bigint(&coeff)
            .mul(&k_at(&family, k as i64 - m as i64 - 1))
            .mul_exp((k + m) as f64 * ln_half_z);
        acc.add(term);
    }
    Ok(acc)
}

/// The symmetric K-sum S(m,n,z), in scaled form.
pub fn sum_theorem1(m: u32, n: u32, z: f64) -> Result<ScaledReal, Error> {
    Ok(theorem1_sum(m, n, z)?.total())
}

/// S(m,n,z) against S(n,m,z).
pub fn residual_theorem1(m: u32, n: u32, z: f64, tol_rel: f64) -> Result<Residual, Error> {
    let lhs = theorem1_sum(m, n, z)?;
    let rhs = theorem1_sum(n, m, z)?;
    let params = IdentityInstance {
        m: Some(m),
        n: Some(n),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Theorem1,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}

/// Σ_{k=0}^n (1/k!) K_{k−1}(z) (z/2)^k  =  (1/n!) K_{n+1}(z) (z/2)^n.
pub fn residual_eq5(n: u32, z: f64, tol_rel: f64) -> Result<Residual, Error> {
    let z = EvalPoint::new(z)?.get();
    let family = bessel_k_family(n + 1, z)?;
    let ln_half_z = log(0.5 * z);
    let mut lhs = ScaledSum::new();
    for k in 0..=n {
        let term = k_at(&family, k as i64 - 1)
            .div(&scaled_from_bigint(&factorial(k)))
            .mul_exp(k as f64 * ln_half_z);
        lhs.add(term);
    }
    let mut rhs = ScaledSum::new();
    rhs.add(
        family[n as usize + 1]
            .div(&scaled_from_bigint(&factorial(n)))
            .mul_exp(n as f64 * ln_half_z),
    );
    let params = IdentityInstance {
        n: Some(n),
        z: Some(z),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq5,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}

#[derive(Clone, Copy)]
enum Kernel {
    J,
    Y,
}

/// (−1)^m (n+1)! Σ_{k=0}^n (1/k!) C(m+k+1,m) C_{k−m−1}(x) (x/2)^{k+m}
/// with C = J or Y; the printed (−1)^m stays on each side of the swap.
fn theorem2_sum(kernel: Kernel, m: u32, n: u32, x: f64) -> Result<ScaledSum, Error> {
    let x = EvalPoint::new(x)?.get();
    let order = max_abs_order(m, n);
    let family = match kernel {
        Kernel::J => bessel_j_family(order, x)?,
        Kernel::Y => bessel_y_family(order, x)?,
    };
    let ln_half_x = log(0.5 * x);
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let mut acc = ScaledSum::new();
    for k in 0..=n {
        let coeff = falling_ratio(n + 1, k) * binomial(m + k + 1, m).expect("m <= m+k+1") * sign;
        let term = scaled_from_bigint(&coeff)
            .mul(&ScaledReal::from_f64(cyl_at(&family, k as i64 - m as i64 - 1)))
            .mul_exp((k + m) as f64 * ln_half_x);
        acc.add(term);
    }
    Ok(acc)
}

fn residual_theorem2(
    identity: Identity,
    kernel: Kernel,
    m: u32,
    n: u32,
    x: f64,
    tol_rel: f64,
) -> Result<Residual, Error> {
    let lhs = theorem2_sum(kernel, m, n, x)?;
    let rhs = theorem2_sum(kernel, n, m, x)?;
    let params = IdentityInstance {
        m: Some(m),
        n: Some(n),
        x: Some(x),
        ..Default::default()
    };
    Ok(residual_from_sums(
        identity,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}

pub fn residual_theorem2_j(m: u32, n: u32, x: f64, tol_rel: f64) -> Result<Residual, Error> {
    residual_theorem2(Identity::Theorem2J, Kernel::J, m, n, x, tol_rel)
}

pub fn residual_theorem2_y(m: u32, n: u32, x: f64, tol_rel: f64) -> Result<Residual, Error> {
    residual_theorem2(Identity::Theorem2Y, Kernel::Y, m, n, x, tol_rel)
}

/// Σ_{k=0}^n (1/k!) C_{k−1}(x) (x/2)^k = −(1/n!) C_{n+1}(x) (x/2)^n with
/// C = a·J + b·Y.
pub fn residual_corollary(
    a: f64,
    b: f64,
    n: u32,
    x: f64,
    tol_rel: f64,
) -> Result<Residual, Error> {
    let x = EvalPoint::new(x)?.get();
    let order = n + 1;
    let j = bessel_j_family(order, x)?;
    let y = bessel_y_family(order, x)?;
    let cyl = |nu: i64| a * cyl_at(&j, nu) + b * cyl_at(&y, nu);
    let ln_half_x = log(0.5 * x);
    let mut lhs = ScaledSum::new();
    for k in 0..=n {
        let term = ScaledReal::from_f64(cyl(k as i64 - 1))
            .div(&scaled_from_bigint(&factorial(k)))
            .mul_exp(k as f64 * ln_half_x);
        lhs.add(term);
    }
    let mut rhs = ScaledSum::new();
    rhs.add(
        ScaledReal::from_f64(-cyl(n as i64 + 1))
            .div(&scaled_from_bigint(&factorial(n)))
            .mul_exp(n as f64 * ln_half_x),
    );
    let params = IdentityInstance {
        n: Some(n),
        x: Some(x),
        a: Some(ParamValue::Real(a)),
        b: Some(b),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Corollary,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}

/// K_n(x) = (x/2)^n Σ_{k=0}^n (−1)^{k+n} n! (2−δ_{k0}) K_{2k}(x)/((n−k)!(n+k)!).
pub fn residual_eq14(n: u32, x: f64, tol_rel: f64) -> Result<Residual, Error> {
    let x = EvalPoint::new(x)?.get();
    let family = bessel_k_family(2 * n, x)?;
    let ln_half_x = log(0.5 * x);
    let mut lhs = ScaledSum::new();
    lhs.add(family[n as usize]);
    let nf = factorial(n);
    let mut rhs = ScaledSum::new();
    for k in 0..=n {
        let weight = if k == 0 { 1u32 } else { 2 };
        let mut num = &nf * weight;
        if (k + n) % 2 == 1 {
            num = -num;
        }
        let den = factorial(n - k) * factorial(n + k);
        let term = scaled_from_bigint(&num)
            .div(&scaled_from_bigint(&den))
            .mul(&family[2 * k as usize])
            .mul_exp(n as f64 * ln_half_x);
        rhs.add(term);
    }
    let params = IdentityInstance {
        n: Some(n),
        x: Some(x),
        ..Default::default()
    };
    Ok(residual_from_sums(
        Identity::Eq14,
        params,
        &lhs,
        &rhs,
        tol_rel,
        Flags::default(),
    ))
}
