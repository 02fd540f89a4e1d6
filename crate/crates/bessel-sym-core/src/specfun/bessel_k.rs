//! Modified Bessel functions K_ν(z) for integer order, in scaled form.
//!
//! K_0 and K_1 come from the ascending series (with log term) for z ≤ 2 and
//! from the Temme/Thompson–Barnett continued fraction for z > 2; higher
//! orders follow by upward recurrence, which is the stable direction for K.
//! Everything is carried as [`ScaledReal`]: K_ν(z) spans thousands of orders
//! of magnitude over the supported (ν, z) range and the downstream sums
//! multiply it by (z/2)^{k+m}.

use alloc::vec::Vec;

use libm::{fabs, log};

use crate::error::Error;
use crate::specfun::scaled::ScaledReal;

/// Euler–Mascheroni constant.
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_EPS: f64 = 1e-18;
const MAX_SERIES_TERMS: u32 = 200;
const MAX_CF_ITER: u32 = 200;

/// K_0 and K_1 by the ascending series, z ≤ 2.
///
/// ```text
/// K_0 = −(ln(z/2)+γ)·I_0 + Σ_{k≥1} H_k t^k/(k!)²,           t = z²/4
/// K_1 = 1/z + ln(z/2)·I_1 − (z/4)·Σ_k (H_k+H_{k+1}−2γ+2γ)…  (A&S 9.6.11)
/// ```
fn k01_series(z: f64) -> (f64, f64) {
    let t = 0.25 * z * z;
    let lt = log(0.5 * z);

    // I_0 together with Σ_{k≥1} H_k t^k/(k!)²
    let mut i0 = 1.0;
    let mut k0_sum = 0.0;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= t / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        k0_sum += harmonic * term;
        if term < SERIES_EPS * i0 {
            break;
        }
    }
    let k0 = -(lt + EULER_GAMMA) * i0 + k0_sum;

    // I_1 together with Σ_{k≥0} [ψ(k+1)+ψ(k+2)] t^k/(k!(k+1)!),
    // ψ(k+1)+ψ(k+2) = −2γ + 2H_k + 1/(k+1)
    let mut i1_series = 1.0;
    let mut psi_sum = 0.0;
    let mut term1 = 1.0;
    let mut h = 0.0;
    for k in 0..=MAX_SERIES_TERMS {
        let kf = k as f64;
        if k > 0 {
            term1 *= t / (kf * (kf + 1.0));
            h += 1.0 / kf;
            i1_series += term1;
        }
        psi_sum += (-2.0 * EULER_GAMMA + 2.0 * h + 1.0 / (kf + 1.0)) * term1;
        if k > 3 && fabs(term1) < SERIES_EPS {
            break;
        }
    }
    let i1 = 0.5 * z * i1_series;
    let k1 = 1.0 / z + lt * i1 - 0.25 * z * psi_sum;
    (k0, k1)
}

/// K_0 and K_1 as (sign-free) log-magnitudes via the continued fraction of
/// Temme/Thompson–Barnett (Numerical Recipes `bessik`, μ = 0), z > 2.
fn k01_continued_fraction(z: f64) -> (f64, f64) {
    let a1 = 0.25; // 1/4 − μ² at μ = 0
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..=MAX_CF_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if fabs(dels / s) < 1e-16 {
            break;
        }
    }
    h *= a1;
    // K_0 = √(π/2z)·e^{−z}/s, kept in logs so huge z cannot underflow
    let ln_k0 = 0.5 * log(core::f64::consts::PI / (2.0 * z)) - z - log(s);
    // K_1 = K_0·(z + 1/2 − h)/z
    let ln_k1 = ln_k0 + log((z + 0.5 - h) / z);
    (ln_k0, ln_k1)
}

/// K_0(z)…K_{nu_max}(z) by upward recurrence K_{ν+1} = K_{ν−1} + (2ν/z)K_ν.
pub fn bessel_k_family(nu_max: u32, z: f64) -> Result<Vec<ScaledReal>, Error> {
    if !(z > 0.0) {
        return Err(Error::Domain {
            func: "bessel_k",
            message: "argument must be positive",
        });
    }
    let (k0, k1) = if z <= 2.0 {
        let (k0, k1) = k01_series(z);
        (ScaledReal::from_f64(k0), ScaledReal::from_f64(k1))
    } else {
        let (ln_k0, ln_k1) = k01_continued_fraction(z);
        (ScaledReal::new(1, ln_k0), ScaledReal::new(1, ln_k1))
    };
    let mut family = Vec::with_capacity(nu_max as usize + 1);
    family.push(k0);
    if nu_max >= 1 {
        family.push(k1);
    }
    for nu in 1..nu_max {
        let prev = family[nu as usize - 1];
        let cur = family[nu as usize];
        family.push(prev.add(&cur.mul_f64(2.0 * nu as f64 / z)));
    }
    Ok(family)
}

/// K_ν(z) for any integer ν, via K_{−ν} = K_ν.
pub fn bessel_k(nu: i32, z: f64) -> Result<ScaledReal, Error> {
    let order = nu.unsigned_abs();
    Ok(bessel_k_family(order, z)?[order as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(reference: f64, got: f64) -> f64 {
        fabs(got - reference) / fabs(reference)
    }

    #[test]
    fn matches_high_precision_reference() {
        // mpmath (dps=30): besselk(nu, z)
        let cases = [
            (0, 1.0, 0.42102443824070833334),
            (1, 2.0, 0.13986588181652242728),
            (0, 0.05, 3.1142340294719898387),
            (1, 0.05, 19.909674325882505397),
            (2, 0.05, 799.5012070647721615),
            (0, 2.0, 0.11389387274953343565),
            (25, 8.1, 102973255.07438313928),
            (21, 30.0, 2.3133671004412776031e-11),
            (40, 50.0, 1.2998697091950807354e-16),
        ];
        for (nu, z, reference) in cases {
            let got = bessel_k(nu, z).unwrap().value();
            assert!(
                rel(reference, got) < 1e-12,
                "K_{nu}({z}): got {got:e}, want {reference:e}, rel {:e}",
                rel(reference, got)
            );
        }
    }

    #[test]
    fn scaled_values_beyond_f64() {
        // mpmath: log(besselk(40, 0.05)) = 253.49377521900331951
        let k = bessel_k(40, 0.05).unwrap();
        assert_eq!(k.sign(), 1);
        assert!(fabs(k.ln_abs() - 253.49377521900331951) < 1e-10);
    }

    #[test]
    fn reflection_is_bitwise() {
        for z in [0.05, 0.4, 1.0, 7.3, 42.0] {
            let pos = bessel_k(3, z).unwrap();
            let neg = bessel_k(-3, z).unwrap();
            assert_eq!(pos, neg);
        }
    }

    #[test]
    fn classical_recursion_links_the_seam_branches() {
        // K_2 = K_0 + (2/z)K_1 across the series/continued-fraction seam
        for z in [0.05, 0.5, 1.0, 1.9, 1.999, 2.0, 2.001, 2.5, 10.0, 50.0] {
            let k0 = bessel_k(0, z).unwrap().value();
            let k1 = bessel_k(1, z).unwrap().value();
            let k2 = bessel_k(2, z).unwrap().value();
            let rhs = k0 + (2.0 / z) * k1;
            assert!(rel(k2, rhs) < 1e-13, "z={z}: k2={k2:e} rhs={rhs:e}");
        }
    }

    #[test]
    fn three_term_recurrence_scaled() {
        for z in [0.1, 1.0, 5.0, 30.0] {
            let fam = bessel_k_family(40, z).unwrap();
            for nu in 1..40usize {
                let lhs = fam[nu + 1];
                let rhs = fam[nu - 1].add(&fam[nu].mul_f64(2.0 * nu as f64 / z));
                assert!(
                    fabs(lhs.ln_abs() - rhs.ln_abs()) < 1e-11,
                    "nu={nu} z={z}"
                );
            }
        }
    }

    #[test]
    fn rejects_nonpositive_argument() {
        assert!(bessel_k(0, 0.0).is_err());
        assert!(bessel_k(2, -1.0).is_err());
        assert!(bessel_k(2, f64::NAN).is_err());
    }
}
