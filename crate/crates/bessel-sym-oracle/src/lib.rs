//! Slow arbitrary-precision reference implementations of the Bessel and
//! Gauss hypergeometric functions, implemented independently of the main
//! crate (ascending series throughout, 384-bit arithmetic) so the fast
//! evaluators can be checked against them on randomized points.
//!
//! This crate is test support: it is only ever a dev-dependency.

use astro_float::{BigFloat, Consts, Exponent, Radix, RoundingMode};

const PREC: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

/// Euler–Mascheroni constant to 100 digits.
const EULER_GAMMA_STR: &str =
    "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";

/// Reference evaluator with its constants cache.
pub struct Oracle {
    cc: Consts,
    pi: BigFloat,
    gamma: BigFloat,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pi = cc.pi(PREC, RM);
        let gamma = BigFloat::parse(EULER_GAMMA_STR, Radix::Dec, PREC, RM, &mut cc);
        Oracle { cc, pi, gamma }
    }

    fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    fn int(&self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, PREC)
    }

    fn to_f64(x: &BigFloat) -> f64 {
        format!("{x}").parse::<f64>().expect("finite BigFloat")
    }

    fn exp_of(x: &BigFloat) -> i32 {
        x.exponent().unwrap_or(Exponent::MIN) as i32
    }

    /// True once `term` can no longer move a sum whose largest contribution
    /// had binary exponent `max_exp`.
    fn negligible(term: &BigFloat, max_exp: i32) -> bool {
        term.is_zero() || Self::exp_of(term) < max_exp - (PREC as i32) - 32
    }

    /// ln(x/2) for x > 0.
    fn ln_half(&mut self, x: f64) -> BigFloat {
        let half_x = self.f(x).div(&self.int(2), PREC, RM);
        half_x.ln(PREC, RM, &mut self.cc)
    }

    /// (x/2)^n for integer n (n may be negative).
    fn half_pow(&mut self, x: f64, n: i64) -> BigFloat {
        self.f(0.5 * x).pow(&self.int(n), PREC, RM, &mut self.cc)
    }

    /// J_n(x) by the ascending series, any integer order.
    pub fn besselj(&mut self, n: i32, x: f64) -> f64 {
        let order = n.unsigned_abs();
        let value = self.besselj_abs_order(order, x);
        let value = if n < 0 && order % 2 == 1 {
            value.neg()
        } else {
            value
        };
        Self::to_f64(&value)
    }

    fn besselj_abs_order(&mut self, n: u32, x: f64) -> BigFloat {
        let t = self.f(0.25 * x * x);
        // term_0 = (x/2)^n / n!
        let mut term = self.half_pow(x, n as i64);
        for k in 1..=n as i64 {
            term = term.div(&self.int(k), PREC, RM);
        }
        let mut sum = term.clone();
        let mut max_exp = Self::exp_of(&term);
        for k in 1..100_000i64 {
            term = term
                .mul(&t, PREC, RM)
                .div(&self.int(k), PREC, RM)
                .div(&self.int(k + n as i64), PREC, RM)
                .neg();
            sum = sum.add(&term, PREC, RM);
            max_exp = max_exp.max(Self::exp_of(&term));
            if Self::negligible(&term, max_exp) {
                break;
            }
        }
        sum
    }

    /// I_n(x), ascending series (positive terms).
    fn besseli_abs_order(&mut self, n: u32, x: f64) -> BigFloat {
        let t = self.f(0.25 * x * x);
        let mut term = self.half_pow(x, n as i64);
        for k in 1..=n as i64 {
            term = term.div(&self.int(k), PREC, RM);
        }
        let mut sum = term.clone();
        for k in 1..100_000i64 {
            term = term
                .mul(&t, PREC, RM)
                .div(&self.int(k), PREC, RM)
                .div(&self.int(k + n as i64), PREC, RM);
            sum = sum.add(&term, PREC, RM);
            if Self::negligible(&term, Self::exp_of(&sum)) {
                break;
            }
        }
        sum
    }

    /// Y_n(x) via the standard log series, any integer order.
    pub fn bessely(&mut self, n: i32, x: f64) -> f64 {
        let order = n.unsigned_abs();
        let value = self.bessely_abs_order(order, x);
        let value = if n < 0 && order % 2 == 1 {
            value.neg()
        } else {
            value
        };
        Self::to_f64(&value)
    }

    /// Σ_{k=0}^{n−1} ((n−k−1)!/k!) s^k — the finite part shared by Y and K.
    fn finite_part(&mut self, n: u32, s: &BigFloat) -> BigFloat {
        let nf = n as i64;
        let mut fin = BigFloat::from_i64(0, PREC);
        if n == 0 {
            return fin;
        }
        // coeff starts at (n−1)!/0!
        let mut coeff = BigFloat::from_i64(1, PREC);
        for k in 2..nf {
            coeff = coeff.mul(&self.int(k), PREC, RM);
        }
        let mut sk = BigFloat::from_i64(1, PREC);
        for k in 0..nf {
            fin = fin.add(&coeff.mul(&sk, PREC, RM), PREC, RM);
            if k + 1 < nf {
                coeff = coeff
                    .div(&self.int(nf - k - 1), PREC, RM)
                    .div(&self.int(k + 1), PREC, RM);
                sk = sk.mul(s, PREC, RM);
            }
        }
        fin
    }

    /// Σ_k (ψ(k+1)+ψ(n+k+1)) s^k/(k!(n+k)!) with s = ±x²/4.
    fn psi_series(&mut self, n: u32, s: &BigFloat) -> BigFloat {
        let nf = n as i64;
        let mut hk = BigFloat::from_i64(0, PREC);
        let mut hnk = BigFloat::from_i64(0, PREC);
        for j in 1..=nf {
            hnk = hnk.add(&self.int(1).div(&self.int(j), PREC, RM), PREC, RM);
        }
        let two_gamma = self.gamma.mul(&self.int(2), PREC, RM);
        let mut base = BigFloat::from_i64(1, PREC); // s^k/(k!(n+k)!), k = 0 ⇒ 1/n!
        for k in 1..=nf {
            base = base.div(&self.int(k), PREC, RM);
        }
        let mut sum = BigFloat::from_i64(0, PREC);
        let mut max_exp = i32::MIN;
        for k in 0..100_000i64 {
            if k > 0 {
                base = base
                    .mul(s, PREC, RM)
                    .div(&self.int(k), PREC, RM)
                    .div(&self.int(k + nf), PREC, RM);
                hk = hk.add(&self.int(1).div(&self.int(k), PREC, RM), PREC, RM);
                hnk = hnk.add(&self.int(1).div(&self.int(k + nf), PREC, RM), PREC, RM);
            }
            let weight = hk.add(&hnk, PREC, RM).sub(&two_gamma, PREC, RM);
            let term = base.mul(&weight, PREC, RM);
            sum = sum.add(&term, PREC, RM);
            max_exp = max_exp.max(Self::exp_of(&term));
            if k > 2 && Self::negligible(&term, max_exp) {
                break;
            }
        }
        sum
    }

    fn bessely_abs_order(&mut self, n: u32, x: f64) -> BigFloat {
        let nf = n as i64;
        let t = self.f(0.25 * x * x);
        let j = self.besselj_abs_order(n, x);
        // (2/π)·ln(x/2)·J_n; the γ terms live inside the ψ series below
        let mut result = self
            .ln_half(x)
            .mul(&j, PREC, RM)
            .mul(&self.int(2), PREC, RM)
            .div(&self.pi, PREC, RM);
        if n > 0 {
            let fin = self.finite_part(n, &t);
            let xh = self.half_pow(x, -nf);
            result = result.sub(&fin.mul(&xh, PREC, RM).div(&self.pi, PREC, RM), PREC, RM);
        }
        let neg_t = t.neg();
        let psi = self.psi_series(n, &neg_t);
        let xh = self.half_pow(x, nf);
        result.sub(&psi.mul(&xh, PREC, RM).div(&self.pi, PREC, RM), PREC, RM)
    }

    /// K_n(z) via the ascending log series. 384 bits absorb the e^{2z}
    /// cancellation up to z = 50 with ≥ 45 digits to spare.
    pub fn besselk(&mut self, n: i32, z: f64) -> f64 {
        Self::to_f64(&self.besselk_abs_order(n.unsigned_abs(), z))
    }

    /// ln K_n(z), for magnitudes outside f64.
    pub fn besselk_ln(&mut self, n: i32, z: f64) -> f64 {
        let k = self.besselk_abs_order(n.unsigned_abs(), z);
        Self::to_f64(&k.ln(PREC, RM, &mut self.cc))
    }

    fn besselk_abs_order(&mut self, n: u32, z: f64) -> BigFloat {
        let nf = n as i64;
        let t = self.f(0.25 * z * z);
        let i_n = self.besseli_abs_order(n, z);
        // (−1)^{n+1} ln(z/2) I_n
        let mut result = self.ln_half(z).mul(&i_n, PREC, RM);
        if n % 2 == 0 {
            result = result.neg();
        }
        // (1/2)(z/2)^{−n} Σ_{k=0}^{n−1} ((n−k−1)!/k!)(−t)^k
        if n > 0 {
            let neg_t = t.neg();
            let fin = self.finite_part(n, &neg_t);
            let zh = self.half_pow(z, -nf);
            result = result.add(
                &fin.mul(&zh, PREC, RM).div(&self.int(2), PREC, RM),
                PREC,
                RM,
            );
        }
        // (−1)^n (1/2)(z/2)^n Σ_k (ψ(k+1)+ψ(n+k+1)) t^k/(k!(n+k)!)
        let psi = self.psi_series(n, &t.clone());
        let zh = self.half_pow(z, nf);
        let mut tail = psi.mul(&zh, PREC, RM).div(&self.int(2), PREC, RM);
        if n % 2 == 1 {
            tail = tail.neg();
        }
        result.add(&tail, PREC, RM)
    }

    /// Gauss ₂F₁ by direct series, |z| < 1.
    pub fn gauss_2f1(&mut self, a: f64, b: f64, c: f64, z: f64) -> f64 {
        let (af, bf, cf, zf) = (self.f(a), self.f(b), self.f(c), self.f(z));
        let mut term = BigFloat::from_i64(1, PREC);
        let mut sum = BigFloat::from_i64(1, PREC);
        let mut max_exp = 0i32;
        for k in 0..200_000i64 {
            let kf = self.int(k);
            let num = af.add(&kf, PREC, RM).mul(&bf.add(&kf, PREC, RM), PREC, RM);
            let den = cf.add(&kf, PREC, RM).mul(&self.int(k + 1), PREC, RM);
            term = term
                .mul(&num, PREC, RM)
                .div(&den, PREC, RM)
                .mul(&zf, PREC, RM);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term, PREC, RM);
            max_exp = max_exp.max(Self::exp_of(&term));
            if k > 2 && Self::negligible(&term, max_exp) {
                break;
            }
        }
        Self::to_f64(&sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Validated against 20-digit mpmath references.
    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!(
            ((got - want) / want).abs() < tol,
            "got {got:e}, want {want:e}"
        );
    }

    #[test]
    fn oracle_matches_mpmath_j() {
        let mut o = Oracle::new();
        assert_close(o.besselj(1, 2.0), 0.5767248077568733872, 1e-15);
        assert_close(o.besselj(40, 50.0), -0.13817628120116143097, 1e-15);
        assert_close(o.besselj(13, 0.05), 2.3928771808978081149e-31, 1e-15);
        assert_close(o.besselj(-3, 0.7), -0.0069296548267508395159, 1e-15);
        assert_close(o.besselj(7, 13.2), -0.23489277710874261627, 1e-15);
    }

    #[test]
    fn oracle_matches_mpmath_y() {
        let mut o = Oracle::new();
        assert_close(o.bessely(0, 1.0), 0.088256964215676957983, 1e-15);
        assert_close(o.bessely(12, 0.7), -3802143219614.5596229, 1e-15);
        assert_close(o.bessely(40, 50.0), -0.045308011195609007933, 1e-14);
        assert_close(o.bessely(2, 0.1), -127.64478324269015877, 1e-15);
        assert_close(o.bessely(1, 30.0), 0.084425570661747234891, 1e-14);
        assert_close(o.bessely(8, 15.0), -0.14053398292691227209, 1e-14);
    }

    #[test]
    fn oracle_matches_mpmath_k() {
        let mut o = Oracle::new();
        assert_close(o.besselk(0, 1.0), 0.42102443824070833334, 1e-15);
        assert_close(o.besselk(25, 8.1), 102973255.07438313928, 1e-15);
        assert_close(o.besselk(40, 50.0), 1.2998697091950807354e-16, 1e-14);
        assert_close(o.besselk_ln(40, 0.05), 253.49377521900331951, 1e-15);
        assert_close(o.besselk(-1, 2.0), 0.13986588181652242728, 1e-15);
    }

    #[test]
    fn oracle_matches_mpmath_2f1() {
        let mut o = Oracle::new();
        assert_close(o.gauss_2f1(2.0, 3.0, 1.0, 0.25), 4.7407407407407407407, 1e-15);
        assert_close(
            o.gauss_2f1(20.0, 22.0, 1.0, 0.9),
            4.6550608252031675444e51,
            1e-15,
        );
        assert_close(
            o.gauss_2f1(5.0, 1.5, 2.7, -0.8),
            0.22320195277364064742,
            1e-15,
        );
    }
}
