//! Exact verification of the combinatorial identities underlying the
//! symmetric Bessel sums.
//!
//! Everything here is big-integer/big-rational arithmetic in canonical form;
//! equality means equality, never "agrees within tolerance". The central
//! object is the double sum
//!
//! ```text
//! F(n,p,q) = (n+q+1)!/(q!(q+1)!) · Σ_{k=0}^p (q+k+1)!/(k+1)! · (n+k)!/k!
//! ```
//!
//! which is symmetric under p ↔ q, and whose normalisation
//! `P(p,q) = p!q!/(p+q+2)! · F(n,p,q)` is a symmetric polynomial of degree
//! n−1 in each variable. [`verify_lemma1`] certifies both facts on an
//! integer lattice by exact evaluation and order-n finite differences.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::race::OnceBox;

use crate::error::Error;

/// Factorials up to this index are computed once and cloned out of a table.
pub const FACTORIAL_MEMO_CAP: u32 = 64;

static FACTORIALS: OnceBox<Vec<BigInt>> = OnceBox::new();

fn factorial_table() -> &'static [BigInt] {
    FACTORIALS.get_or_init(|| {
        let mut table = Vec::with_capacity(FACTORIAL_MEMO_CAP as usize + 1);
        table.push(BigInt::one());
        for i in 1..=FACTORIAL_MEMO_CAP as u64 {
            let next = table.last().unwrap() * i;
            table.push(next);
        }
        alloc::boxed::Box::new(table)
    })
}

/// n! as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    let table = factorial_table();
    if let Some(v) = table.get(n as usize) {
        return v.clone();
    }
    let mut acc = table.last().unwrap().clone();
    for i in (FACTORIAL_MEMO_CAP as u64 + 1)..=(n as u64) {
        acc *= i;
    }
    acc
}

/// n!/k! = (k+1)(k+2)…n as an exact integer. Requires k ≤ n.
pub(crate) fn falling_ratio(n: u32, k: u32) -> BigInt {
    debug_assert!(k <= n);
    let mut acc = BigInt::one();
    for i in (k as u64 + 1)..=(n as u64) {
        acc *= i;
    }
    acc
}

/// Binomial coefficient C(n,k), exactly.
///
/// The finite sums only ever request 0 ≤ k ≤ n; anything else is a domain
/// error rather than a silent zero.
pub fn binomial(n: u32, k: u32) -> Result<BigInt, Error> {
    if k > n {
        return Err(Error::Domain {
            func: "binomial",
            message: "k exceeds n",
        });
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as u64 {
        num *= (n as u64) - i;
        den *= i + 1;
    }
    Ok(num / den)
}

/// Rising factorial (a)_k = a(a+1)…(a+k−1) over the rationals.
pub fn pochhammer(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    let one = BigRational::one();
    for _ in 0..k {
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// The double sum F(n,p,q); an exact positive rational, integer-valued on
/// the integer lattice.
pub fn f_eval(n: u32, p: u32, q: u32) -> BigRational {
    // prefactor (n+q+1)!/(q!(q+1)!)
    let pref = BigRational::new(factorial(n + q + 1), factorial(q) * factorial(q + 1));
    // Σ_k (q+k+1)!/(k+1)! · (n+k)!/k!  -- every summand is an integer
    let mut sum = BigInt::zero();
    for k in 0..=p {
        sum += falling_ratio(q + k + 1, k + 1) * falling_ratio(n + k, k);
    }
    pref * BigRational::from_integer(sum)
}

/// Coefficient of zⁿ in G(p,q,z): F(n,p,q)/(n!)².
pub fn g_series_coeff(n: u32, p: u32, q: u32) -> BigRational {
    let nf = factorial(n);
    f_eval(n, p, q) / BigRational::from_integer(&nf * &nf)
}

/// Exact samples of P(p,q) = p!q!/(p+q+2)! · F(n,p,q) on the lattice
/// [0,pmax] × [0,qmax].
pub struct PolySample {
    n: u32,
    pmax: u32,
    qmax: u32,
    values: Vec<BigRational>,
}

impl PolySample {
    pub fn compute(n: u32, pmax: u32, qmax: u32) -> Self {
        let mut values = Vec::with_capacity((pmax as usize + 1) * (qmax as usize + 1));
        for p in 0..=pmax {
            for q in 0..=qmax {
                let scale = BigRational::new(factorial(p) * factorial(q), factorial(p + q + 2));
                values.push(scale * f_eval(n, p, q));
            }
        }
        PolySample {
            n,
            pmax,
            qmax,
            values,
        }
    }

    pub fn value(&self, p: u32, q: u32) -> &BigRational {
        &self.values[(p as usize) * (self.qmax as usize + 1) + q as usize]
    }

    /// P(p,q) = P(q,p) at every lattice point whose mirror is also sampled.
    pub fn is_symmetric(&self) -> bool {
        for p in 0..=self.pmax {
            for q in 0..=self.qmax {
                if q <= self.pmax && p <= self.qmax && self.value(p, q) != self.value(q, p) {
                    return false;
                }
            }
        }
        true
    }

    /// Order-n forward differences of P in p vanish on the grid, i.e. the
    /// degree in p is at most n−1. Symmetry then carries the bound to q.
    pub fn degree_bound_holds(&self) -> bool {
        let n = self.n;
        if self.pmax < n {
            return true; // nothing to difference; caller enforces grid size
        }
        // binomial weights (−1)^{n−j} C(n,j)
        let weights: Vec<BigInt> = (0..=n)
            .map(|j| {
                let c = binomial(n, j).expect("j <= n");
                if (n - j) % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        for q in 0..=self.qmax {
            for p0 in 0..=(self.pmax - n) {
                let mut acc = BigRational::zero();
                for j in 0..=n {
                    acc += BigRational::from_integer(weights[j as usize].clone())
                        * self.value(p0 + j, q);
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Certify that P(p,q) = p!q!/(p+q+2)! · F(n,p,q) is symmetric and of
/// degree at most n−1 on the lattice [0,pmax] × [0,qmax].
pub fn verify_lemma1(n: u32, pmax: u32, qmax: u32) -> Result<bool, Error> {
    if n == 0 {
        return Err(Error::Domain {
            func: "verify_lemma1",
            message: "n must be a positive integer",
        });
    }
    let need = n + 1;
    let got = pmax.min(qmax);
    if got < need {
        return Err(Error::GridTooSmall { need, got });
    }
    let sample = PolySample::compute(n, pmax, qmax);
    Ok(sample.is_symmetric() && sample.degree_bound_holds())
}

/// Σ_{k=0}^n C(m+k+1,m) = Σ_{k=0}^m C(n+k+1,n), exactly.
pub fn verify_eq19(m: u32, n: u32) -> bool {
    eq19_side(m, n) == eq19_side(n, m)
}

/// One side of the binomial sum: Σ_{k=0}^n C(m+k+1,m).
pub fn eq19_side(m: u32, n: u32) -> BigInt {
    let mut sum = BigInt::zero();
    for k in 0..=n {
        sum += binomial(m + k + 1, m).expect("m <= m+k+1");
    }
    sum
}

/// Σ_{k=0}^n (p+k)!/k! = (n+p+1)!/((p+1)·n!), exactly.
pub fn verify_eq22(n: u32, p: u32) -> bool {
    let mut lhs = BigInt::zero();
    for k in 0..=n {
        lhs += falling_ratio(p + k, k);
    }
    let rhs = BigRational::new(factorial(n + p + 1), BigInt::from(p + 1) * factorial(n));
    BigRational::from_integer(lhs) == rhs
}

/// One side of the Gamma-ratio sum of the rational-parameter identity, in
/// its Γ(1−a)-reduced Pochhammer form:
///
/// ```text
/// n!(n+1)!/(1−a)_{n+1} · Σ_{k=0}^n (m+k+1)! (1−a)_k / (k!(k+1)!)
/// ```
pub(crate) fn eq18_side(m: u32, n: u32, a: &BigRational) -> BigRational {
    let one_minus_a = BigRational::one() - a;
    let mut sum = BigRational::zero();
    let mut poch = BigRational::one(); // (1−a)_k, updated incrementally
    for k in 0..=n {
        let coeff = BigRational::new(factorial(m + k + 1), factorial(k) * factorial(k + 1));
        sum += coeff * &poch;
        poch *= &one_minus_a + BigRational::from_integer(BigInt::from(k));
    }
    let front = BigRational::new(
        factorial(n) * factorial(n + 1),
        BigInt::one(),
    ) / pochhammer(&one_minus_a, n + 1);
    front * sum
}

/// Verify the rational-parameter Gamma-ratio identity exactly after
/// dividing out the common factor Γ(1−a).
///
/// Positive integer a makes Γ(1−a) — and for a ≤ max(m,n)+1 the reduced
/// denominators — singular; those instances are reported as
/// [`Error::PoleInstance`] and should be skipped, not failed.
pub fn verify_eq18(m: u32, n: u32, a: &BigRational) -> Result<bool, Error> {
    if a.is_integer() && a.is_positive() {
        return Err(Error::PoleInstance { func: "verify_eq18" });
    }
    Ok(eq18_side(m, n, a) == eq18_side(n, m, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    /// Independent iterative-product oracle for n!.
    fn factorial_oracle(n: u32) -> BigInt {
        let mut acc = BigInt::one();
        for i in 1..=n as u64 {
            acc *= i;
        }
        acc
    }

    /// Pascal-triangle oracle for C(n,k).
    fn pascal_oracle(n: usize, k: usize) -> BigInt {
        let mut row: Vec<BigInt> = alloc::vec![BigInt::one()];
        for _ in 0..n {
            let mut next = alloc::vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
        row[k].clone()
    }

    #[test]
    fn factorial_base_cases() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), "2432902008176640000".parse().unwrap());
        assert_eq!(factorial(20), factorial_oracle(20));
        // above the memo cap
        assert_eq!(factorial(70), factorial_oracle(70));
    }

    #[test]
    fn binomial_matches_pascal() {
        assert_eq!(binomial(7, 0).unwrap(), BigInt::one());
        assert_eq!(binomial(4, 2).unwrap(), BigInt::from(6));
        assert_eq!(binomial(25, 12).unwrap(), BigInt::from(5200300u64));
        for n in 0..=25u32 {
            for k in 0..=n {
                assert_eq!(binomial(n, k).unwrap(), pascal_oracle(n as usize, k as usize));
            }
        }
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn f_eval_closed_forms() {
        // F(1,p,q) = (p+q+2)!/(p!q!)
        for p in 0..=8 {
            for q in 0..=8 {
                let expected =
                    BigRational::new(factorial(p + q + 2), factorial(p) * factorial(q));
                assert_eq!(f_eval(1, p, q), expected, "F(1,{p},{q})");
            }
        }
        // F(2,p,q) = (p+q+2)!/(p!q!) · [6+2(p+q)+pq]
        for p in 0..=8 {
            for q in 0..=8 {
                let poly = BigInt::from(6 + 2 * (p + q) + p * q);
                let expected = BigRational::new(
                    factorial(p + q + 2) * poly,
                    factorial(p) * factorial(q),
                );
                assert_eq!(f_eval(2, p, q), expected, "F(2,{p},{q})");
            }
        }
        assert_eq!(f_eval(1, 0, 0), BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn f_eval_symmetric_and_integral() {
        for n in 0..=10 {
            for p in 0..=10 {
                for q in p..=10 {
                    let v = f_eval(n, p, q);
                    assert_eq!(v, f_eval(n, q, p), "symmetry F({n},{p},{q})");
                    assert!(v.is_integer(), "integrality F({n},{p},{q}) = {v}");
                    assert!(v.is_positive());
                }
            }
        }
    }

    #[test]
    fn lemma1_certificates() {
        assert!(verify_lemma1(1, 3, 3).unwrap());
        assert!(verify_lemma1(2, 4, 4).unwrap());
        assert!(verify_lemma1(5, 8, 8).unwrap());
        assert!(matches!(
            verify_lemma1(5, 4, 4),
            Err(Error::GridTooSmall { need: 6, got: 4 })
        ));
        assert!(verify_lemma1(0, 3, 3).is_err());
    }

    #[test]
    fn eq19_small_cases() {
        // m = n is the trivially symmetric instance
        for m in 0..=6 {
            assert!(verify_eq19(m, m));
        }
        // LHS Σ C(k+1,0) = n+1, RHS C(n+1,n) = n+1
        assert_eq!(eq19_side(0, 5), BigInt::from(6));
        assert_eq!(eq19_side(5, 0), BigInt::from(6));
        // brute force 2+3+4 = 3+6
        assert_eq!(eq19_side(1, 2), BigInt::from(9));
        assert_eq!(eq19_side(2, 1), BigInt::from(9));
        assert!(verify_eq19(1, 2));
    }

    #[test]
    fn eq22_small_cases() {
        assert!(verify_eq22(3, 0)); // 1+1+1+1 = 4!/0!... all-ones LHS
        assert!(verify_eq22(2, 1)); // 1+2+3 = 24/(2·2)
        assert!(verify_eq22(4, 3)); // both sides 8!/(4·4!) = 420
        let mut lhs = BigInt::zero();
        for k in 0..=4u32 {
            lhs += falling_ratio(3 + k, k);
        }
        assert_eq!(lhs, BigInt::from(420));
    }

    #[test]
    fn eq18_cases() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let neg34 = BigRational::new(BigInt::from(-3), BigInt::from(4));
        assert!(verify_eq18(0, 1, &half).unwrap());
        assert!(verify_eq18(2, 3, &neg34).unwrap());
        for m in 0..=5 {
            assert!(verify_eq18(m, m, &half).unwrap());
        }
        // positive integer a is a pole of Γ(1−a): skipped, not failed
        let two = BigRational::from_integer(BigInt::from(2));
        assert!(matches!(
            verify_eq18(3, 1, &two),
            Err(Error::PoleInstance { .. })
        ));
    }

    #[test]
    fn g_series_coeff_cases() {
        // constant term is F(0,p,q)
        assert_eq!(g_series_coeff(0, 3, 5), f_eval(0, 3, 5));
        // n=1, p=q=0: f_eval(1,0,0)/1 = 2
        assert_eq!(
            g_series_coeff(1, 0, 0),
            BigRational::from_integer(BigInt::from(2))
        );
        for n in 0..=8 {
            for p in 0..=8 {
                for q in p..=8 {
                    assert_eq!(g_series_coeff(n, p, q), g_series_coeff(n, q, p));
                }
            }
        }
    }

    #[test]
    fn pochhammer_cases() {
        let a = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(pochhammer(&a, 0), BigRational::one());
        // (1/2)_3 = 1/2 · 3/2 · 5/2 = 15/8
        assert_eq!(
            pochhammer(&a, 3),
            BigRational::new(BigInt::from(15), BigInt::from(8))
        );
    }

    #[test]
    fn f_eval_value_fits_f64_on_desk_grid() {
        let v = f_eval(10, 10, 10);
        assert!(v.to_f64().unwrap().is_finite());
    }

    proptest! {
        #[test]
        fn binomial_reflects(n in 0u32..40, k in 0u32..40) {
            prop_assume!(k <= n);
            prop_assert_eq!(binomial(n, k).unwrap(), binomial(n, n - k).unwrap());
        }

        #[test]
        fn factorial_recurrence(n in 1u32..80) {
            prop_assert_eq!(factorial(n), factorial(n - 1) * (n as u64));
        }

        #[test]
        fn eq19_eq22_random(m in 0u32..14, n in 0u32..14) {
            prop_assert!(verify_eq19(m, n));
            prop_assert!(verify_eq22(n, m));
        }
    }
}
