//! One runnable evaluator per finite-sum identity.
//!
//! Every evaluator produces a [`Residual`]: both sides of the identity, the
//! absolute and relative error, a condition number Σ|summands|/max(|lhs|,|rhs|)
//! quantifying cancellation, and a verdict `rel_err ≤ tol·max(1, cond)`.
//! Exact (big-rational) identities report an absolute error of exactly zero
//! or fail. Pole instances surface as errors so sweep drivers can skip them.
//!
//! Both sides of a symmetric identity go through the *same* summation code
//! with the roles of (m, n) swapped, so the m = n diagonal is bitwise
//! identical and its residual is exactly zero by construction.

mod bessel_sums;
mod exact_checks;
mod gamma_sums;
mod hyper_sums;
mod whittaker_sum;

pub use bessel_sums::{
    residual_corollary, residual_eq14, residual_eq5, residual_theorem1, residual_theorem2_j,
    residual_theorem2_y, sum_theorem1,
};
pub use exact_checks::{residual_eq18, residual_eq19, residual_eq22, residual_lemma1};
pub use gamma_sums::residual_eq11;
pub use hyper_sums::{
    g_lemma2_finite, g_lemma2_series, residual_eq16, residual_eq17, residual_eq20, residual_eq21,
    residual_lemma2,
};
pub use whittaker_sum::residual_eq24;

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::specfun::scaled::{ScaledReal, ScaledSum};
use crate::specfun::Flags;

/// Default condition-scaled relative tolerance for floating identities.
pub const DEFAULT_TOL_REL: f64 = 1e-9;
/// Default tolerance for the quadrature-backed Whittaker sum.
pub const DEFAULT_TOL_REL_EQ24: f64 = 1e-6;

/// Floor protecting relative errors against division by zero.
const TINY_FLOOR: f64 = 1e-300;

/// A scalar parameter that is a float for the analytic identities but an
/// exact rational for the Gamma-ratio identity.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Rational(BigRational),
}

impl ParamValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            ParamValue::Real(v) => *v,
            ParamValue::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ParamValue::Rational(r) => Some(r),
            ParamValue::Real(_) => None,
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ParamValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Real(v) => serializer.serialize_f64(*v),
            ParamValue::Rational(r) => {
                serializer.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
            }
        }
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for ParamValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Real(v) => Ok(ParamValue::Real(v)),
            Repr::Text(t) => {
                let (num, den) = t
                    .split_once('/')
                    .ok_or_else(|| serde::de::Error::custom("expected p/q rational"))?;
                let num: BigInt = num
                    .parse()
                    .map_err(|_| serde::de::Error::custom("bad rational numerator"))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| serde::de::Error::custom("bad rational denominator"))?;
                if den.is_zero() {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(ParamValue::Rational(BigRational::new(num, den)))
            }
        }
    }
}

/// The full parameter tuple of one identity instance; only the fields the
/// identity actually uses are set.
#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityInstance {
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub m: Option<u32>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub n: Option<u32>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub z: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub x: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub s: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub a: Option<ParamValue>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub b: Option<f64>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub lambda: Option<f64>,
}

/// Verdict record for one identity instance.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Residual {
    pub identity: Identity,
    pub params: IdentityInstance,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub cond: f64,
    pub pass: bool,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub notes: Option<String>,
}

/// Identity enumeration; names match the CLI identity list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Theorem1,
    Eq5,
    Theorem2J,
    Theorem2Y,
    Corollary,
    Eq11,
    Eq14,
    Lemma2,
    Eq16,
    Eq17,
    Eq20,
    Eq21,
    Eq24,
    Lemma1,
    Eq18,
    Eq19,
    Eq22,
}

/// Parameter kinds an identity draws from a sweep grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    M,
    N,
    Z,
    X,
    S,
    A,
    B,
    Lambda,
}

impl ParamKind {
    pub fn name(self) -> &'static str {
        match self {
            ParamKind::M => "m",
            ParamKind::N => "n",
            ParamKind::Z => "z",
            ParamKind::X => "x",
            ParamKind::S => "s",
            ParamKind::A => "a",
            ParamKind::B => "b",
            ParamKind::Lambda => "lambda",
        }
    }
}

impl Identity {
    pub const ALL: [Identity; 17] = [
        Identity::Theorem1,
        Identity::Eq5,
        Identity::Theorem2J,
        Identity::Theorem2Y,
        Identity::Corollary,
        Identity::Eq11,
        Identity::Eq14,
        Identity::Lemma2,
        Identity::Eq16,
        Identity::Eq17,
        Identity::Eq20,
        Identity::Eq21,
        Identity::Eq24,
        Identity::Lemma1,
        Identity::Eq18,
        Identity::Eq19,
        Identity::Eq22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem1 => "theorem1",
            Identity::Eq5 => "eq5",
            Identity::Theorem2J => "theorem2_j",
            Identity::Theorem2Y => "theorem2_y",
            Identity::Corollary => "corollary",
            Identity::Eq11 => "eq11",
            Identity::Eq14 => "eq14",
            Identity::Lemma2 => "lemma2",
            Identity::Eq16 => "eq16",
            Identity::Eq17 => "eq17",
            Identity::Eq20 => "eq20",
            Identity::Eq21 => "eq21",
            Identity::Eq24 => "eq24",
            Identity::Lemma1 => "lemma1",
            Identity::Eq18 => "eq18",
            Identity::Eq19 => "eq19",
            Identity::Eq22 => "eq22",
        }
    }

    pub fn parse(name: &str) -> Option<Identity> {
        Identity::ALL.iter().copied().find(|i| i.name() == name)
    }

    /// Exact identities are verified in big-rational arithmetic with zero
    /// tolerance.
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            Identity::Lemma1 | Identity::Eq18 | Identity::Eq19 | Identity::Eq22
        )
    }

    /// Per-identity default for the condition-scaled relative tolerance.
    pub fn default_tol(self) -> f64 {
        if self == Identity::Eq24 {
            DEFAULT_TOL_REL_EQ24
        } else {
            DEFAULT_TOL_REL
        }
    }

    /// Grid parameters the identity consumes. For `lemma2` the (p,q)
    /// lattice indices ride in the (m,n) slots; for `eq22` the shift
    /// parameter p rides in the m slot.
    pub fn required_params(self) -> &'static [ParamKind] {
        use ParamKind::*;
        match self {
            Identity::Theorem1 => &[M, N, Z],
            Identity::Eq5 => &[N, Z],
            Identity::Theorem2J | Identity::Theorem2Y => &[M, N, X],
            Identity::Corollary => &[N, X, A, B],
            Identity::Eq11 => &[N, S],
            Identity::Eq14 => &[N, X],
            Identity::Lemma2 => &[M, N, Z],
            Identity::Eq16 => &[M, N, X, Lambda, Z],
            Identity::Eq17 => &[N, X, Lambda, Z],
            Identity::Eq20 => &[M, N, A, B, Z],
            Identity::Eq21 => &[N, A, B],
            Identity::Eq24 => &[M, N, Z],
            Identity::Lemma1 => &[N],
            Identity::Eq18 => &[M, N, A],
            Identity::Eq19 => &[M, N],
            Identity::Eq22 => &[M, N],
        }
    }

    /// Evaluate one instance at the given condition-scaled tolerance.
    pub fn evaluate(self, inst: &IdentityInstance, tol_rel: f64) -> Result<Residual, Error> {
        fn need<T: Copy>(v: Option<T>, what: &'static str) -> Result<T, Error> {
            v.ok_or(Error::Domain {
                func: "Identity::evaluate",
                message: what,
            })
        }
        fn need_a(inst: &IdentityInstance) -> Result<&ParamValue, Error> {
            inst.a.as_ref().ok_or(Error::Domain {
                func: "Identity::evaluate",
                message: "missing a",
            })
        }
        let m = inst.m;
        let n = inst.n;
        match self {
            Identity::Theorem1 => residual_theorem1(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Eq5 => {
                residual_eq5(need(n, "missing n")?, need(inst.z, "missing z")?, tol_rel)
            }
            Identity::Theorem2J => residual_theorem2_j(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need(inst.x, "missing x")?,
                tol_rel,
            ),
            Identity::Theorem2Y => residual_theorem2_y(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need(inst.x, "missing x")?,
                tol_rel,
            ),
            Identity::Corollary => residual_corollary(
                need_a(inst)?.as_f64(),
                need(inst.b, "missing b")?,
                need(n, "missing n")?,
                need(inst.x, "missing x")?,
                tol_rel,
            ),
            Identity::Eq11 => {
                residual_eq11(need(inst.s, "missing s")?, need(n, "missing n")?, tol_rel)
            }
            Identity::Eq14 => {
                residual_eq14(need(n, "missing n")?, need(inst.x, "missing x")?, tol_rel)
            }
            Identity::Lemma2 => residual_lemma2(
                need(m, "missing m (lattice p)")?,
                need(n, "missing n (lattice q)")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Eq16 => residual_eq16(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need(inst.x, "missing x")?,
                need(inst.lambda, "missing lambda")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Eq17 => residual_eq17(
                need(n, "missing n")?,
                need(inst.x, "missing x")?,
                need(inst.lambda, "missing lambda")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Eq20 => residual_eq20(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need_a(inst)?.as_f64(),
                need(inst.b, "missing b")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Eq21 => residual_eq21(
                need(n, "missing n")?,
                need_a(inst)?.as_f64(),
                need(inst.b, "missing b")?,
                tol_rel,
            ),
            Identity::Eq24 => residual_eq24(
                need(m, "missing m")?,
                need(n, "missing n")?,
                need(inst.z, "missing z")?,
                tol_rel,
            ),
            Identity::Lemma1 => residual_lemma1(need(n, "missing n")?),
            Identity::Eq18 => {
                let a = need_a(inst)?.as_rational().ok_or(Error::Domain {
                    func: "Identity::evaluate",
                    message: "eq18 requires an exact rational a",
                })?;
                residual_eq18(need(m, "missing m")?, need(n, "missing n")?, a)
            }
            Identity::Eq19 => residual_eq19(need(m, "missing m")?, need(n, "missing n")?),
            Identity::Eq22 => {
                residual_eq22(need(n, "missing n")?, need(m, "missing m (holds eq22's p)")?)
            }
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Identity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Identity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        Identity::parse(&name)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown identity `{name}`")))
    }
}

/// Assemble a residual from the two accumulated sides.
///
/// All error quantities are computed in scaled (log) space first, so the
/// verdict survives sides far outside the f64 range.
pub(crate) fn residual_from_sums(
    identity: Identity,
    params: IdentityInstance,
    lhs: &ScaledSum,
    rhs: &ScaledSum,
    tol_rel: f64,
    flags: Flags,
) -> Residual {
    let l = lhs.total();
    let r = rhs.total();
    let diff = l.sub(&r);
    let denom_ln = l.ln_abs().max(r.ln_abs()).max(libm::log(TINY_FLOOR));
    let rel_err = if diff.is_zero() {
        0.0
    } else {
        libm::exp(diff.ln_abs() - denom_ln)
    };
    let abs_sum = lhs.abs_total().add(&rhs.abs_total());
    let cond = if abs_sum.is_zero() {
        1.0
    } else {
        libm::exp(abs_sum.ln_abs() - denom_ln)
    };
    let pass = rel_err <= tol_rel * cond.max(1.0);
    let max_term = if lhs.max_term().cmp_abs(&rhs.max_term()) == core::cmp::Ordering::Less {
        rhs.max_term()
    } else {
        lhs.max_term()
    };
    let mut notes = format!(
        "terms={} max_term_ln={:.3}",
        lhs.term_count() + rhs.term_count(),
        max_term.ln_abs()
    );
    if flags.term_cap_hit {
        notes.push_str("; series term cap hit");
    }
    if flags.quad_budget_exhausted {
        notes.push_str("; quadrature budget exhausted");
    }
    Residual {
        identity,
        params,
        lhs: l.value(),
        rhs: r.value(),
        abs_err: libm::fabs(diff.value()),
        rel_err,
        cond,
        pass,
        notes: Some(notes),
    }
}

/// Assemble a residual for an exact (big-rational) check.
pub(crate) fn residual_from_exact(
    identity: Identity,
    params: IdentityInstance,
    lhs: &BigRational,
    rhs: &BigRational,
    note: &str,
) -> Residual {
    let equal = lhs == rhs;
    let diff = (lhs - rhs).abs();
    let abs_err = if equal {
        0.0
    } else {
        diff.to_f64().unwrap_or(f64::NAN)
    };
    let scale = if lhs.abs() > rhs.abs() {
        lhs.abs()
    } else {
        rhs.abs()
    };
    let scale = scale.to_f64().unwrap_or(f64::INFINITY).max(TINY_FLOOR);
    Residual {
        identity,
        params,
        lhs: lhs.to_f64().unwrap_or(f64::NAN),
        rhs: rhs.to_f64().unwrap_or(f64::NAN),
        abs_err,
        rel_err: if equal { 0.0 } else { abs_err / scale },
        cond: 1.0,
        pass: equal,
        notes: Some(String::from(note)),
    }
}

/// Exact integer → scaled float, valid far beyond the f64 range.
pub(crate) fn scaled_from_bigint(v: &BigInt) -> ScaledReal {
    if v.is_zero() {
        return ScaledReal::ZERO;
    }
    let bits = v.bits();
    if bits <= 900 {
        ScaledReal::from_f64(v.to_f64().unwrap_or(0.0))
    } else {
        let shift = bits - 53;
        let top = (v >> shift).to_f64().unwrap_or(0.0);
        let sign = if top > 0.0 { 1 } else { -1 };
        ScaledReal::new(
            sign,
            libm::log(libm::fabs(top)) + shift as f64 * core::f64::consts::LN_2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::parse(id.name()), Some(id));
        }
        assert_eq!(Identity::parse("nope"), None);
    }

    #[test]
    fn scaled_from_bigint_handles_huge_values() {
        use crate::exact::factorial;
        let f = factorial(300);
        let s = scaled_from_bigint(&f);
        assert_eq!(s.sign(), 1);
        // ln(300!) = lnΓ(301)
        let expected = crate::specfun::lngamma(301.0).unwrap();
        assert!((s.ln_abs() - expected).abs() < 1e-9, "{}", s.ln_abs());
        let neg = scaled_from_bigint(&(-f));
        assert_eq!(neg.sign(), -1);
    }

    #[test]
    fn exact_residual_reports_zero_or_fail() {
        let one = BigRational::one();
        let two = &one + &one;
        let r = residual_from_exact(
            Identity::Eq19,
            IdentityInstance::default(),
            &one,
            &one,
            "exact",
        );
        assert!(r.pass);
        assert_eq!(r.abs_err, 0.0);
        let r = residual_from_exact(
            Identity::Eq19,
            IdentityInstance::default(),
            &one,
            &two,
            "exact",
        );
        assert!(!r.pass);
        assert!(r.abs_err > 0.0);
    }
}
