//! Sign + log-magnitude scalars.
//!
//! The summands K_{k−m−1}(z)(z/2)^{k+m} of the symmetric Bessel sums
//! overflow or underflow f64 long before the sums themselves become
//! meaningless, so every Bessel-sum evaluator works on [`ScaledReal`]:
//! a value is sign·exp(logmag). Multiplication adds log-magnitudes;
//! addition factors out the larger log-magnitude and adds mantissas.
//! [`ScaledSum`] is the compensated (Kahan) accumulator over that
//! representation, which also tracks Σ|terms| for condition estimates.

use core::cmp::Ordering;

use libm::{exp, fabs, log};

/// A real number stored as sign ∈ {−1,0,+1} and ln|value|.
///
/// The zero value has sign 0 and logmag −∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    sign: i8,
    logmag: f64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };

    pub const ONE: ScaledReal = ScaledReal {
        sign: 1,
        logmag: 0.0,
    };

    pub fn new(sign: i8, logmag: f64) -> Self {
        debug_assert!(sign == -1 || sign == 0 || sign == 1);
        if sign == 0 {
            ScaledReal::ZERO
        } else {
            ScaledReal { sign, logmag }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            ScaledReal::ZERO
        } else if x > 0.0 {
            ScaledReal {
                sign: 1,
                logmag: log(x),
            }
        } else {
            ScaledReal {
                sign: -1,
                logmag: log(-x),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// ln|value|; −∞ for the zero value.
    pub fn ln_abs(&self) -> f64 {
        self.logmag
    }

    /// Convert back to f64. Overflows to ±∞ and underflows to ±0 exactly
    /// as exp() does.
    pub fn value(&self) -> f64 {
        self.sign as f64 * exp(self.logmag)
    }

    pub fn abs(&self) -> ScaledReal {
        ScaledReal {
            sign: if self.sign == 0 { 0 } else { 1 },
            logmag: self.logmag,
        }
    }

    pub fn neg(&self) -> ScaledReal {
        ScaledReal {
            sign: -self.sign,
            logmag: self.logmag,
        }
    }

    pub fn mul(&self, other: &ScaledReal) -> ScaledReal {
        let sign = self.sign * other.sign;
        if sign == 0 {
            ScaledReal::ZERO
        } else {
            ScaledReal {
                sign,
                logmag: self.logmag + other.logmag,
            }
        }
    }

    /// Multiply by e^t, i.e. shift the log-magnitude.
    pub fn mul_exp(&self, t: f64) -> ScaledReal {
        if self.sign == 0 {
            ScaledReal::ZERO
        } else {
            ScaledReal {
                sign: self.sign,
                logmag: self.logmag + t,
            }
        }
    }

    pub fn mul_f64(&self, x: f64) -> ScaledReal {
        self.mul(&ScaledReal::from_f64(x))
    }

    pub fn div(&self, other: &ScaledReal) -> ScaledReal {
        debug_assert!(other.sign != 0, "division by scaled zero");
        ScaledReal {
            sign: self.sign * other.sign,
            logmag: self.logmag - other.logmag,
        }
    }

    /// Addition by factoring out the larger log-magnitude.
    pub fn add(&self, other: &ScaledReal) -> ScaledReal {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let scale = self.logmag.max(other.logmag);
        let mantissa =
            self.sign as f64 * exp(self.logmag - scale) + other.sign as f64 * exp(other.logmag - scale);
        if mantissa == 0.0 {
            ScaledReal::ZERO
        } else {
            ScaledReal {
                sign: if mantissa > 0.0 { 1 } else { -1 },
                logmag: scale + log(fabs(mantissa)),
            }
        }
    }

    pub fn sub(&self, other: &ScaledReal) -> ScaledReal {
        self.add(&other.neg())
    }

    /// Compare |self| with |other|.
    pub fn cmp_abs(&self, other: &ScaledReal) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self
                .logmag
                .partial_cmp(&other.logmag)
                .unwrap_or(Ordering::Equal),
        }
    }

    /// |self/other| as a plain f64, with 0/0 = 0. Robust far outside the
    /// f64 range of the values themselves.
    pub fn ratio_abs(&self, other: &ScaledReal) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        if other.sign == 0 {
            return f64::INFINITY;
        }
        exp(self.logmag - other.logmag)
    }
}

/// Compensated accumulator over scaled terms.
///
/// The running sum is kept as mantissa·e^scale with the mantissa pair
/// (hi, compensation) updated by Kahan's rule; the scale is rebased when a
/// term dwarfs it. Σ|terms| is accumulated alongside (positive terms, so a
/// plain scaled add is exact enough) together with the largest term and the
/// term count, which feed the condition-number diagnostics.
#[derive(Debug, Clone)]
pub struct ScaledSum {
    scale: f64,
    hi: f64,
    comp: f64,
    abs_sum: ScaledReal,
    max_term: ScaledReal,
    terms: u32,
}

impl ScaledSum {
    pub fn new() -> Self {
        ScaledSum {
            scale: f64::NEG_INFINITY,
            hi: 0.0,
            comp: 0.0,
            abs_sum: ScaledReal::ZERO,
            max_term: ScaledReal::ZERO,
            terms: 0,
        }
    }

    fn rebase(&mut self, new_scale: f64) {
        if self.hi == 0.0 && self.comp == 0.0 {
            self.scale = new_scale;
            return;
        }
        let shift = exp(self.scale - new_scale);
        self.hi *= shift;
        self.comp *= shift;
        self.scale = new_scale;
    }

    pub fn add(&mut self, term: ScaledReal) {
        self.terms += 1;
        if term.sign == 0 {
            return;
        }
        let t_abs = term.abs();
        if self.max_term.cmp_abs(&t_abs) == Ordering::Less {
            self.max_term = t_abs;
        }
        self.abs_sum = self.abs_sum.add(&t_abs);
        if self.scale == f64::NEG_INFINITY {
            self.scale = term.logmag;
        } else if term.logmag > self.scale + 300.0 {
            // keep exp(term.logmag - scale) representable
            self.rebase(term.logmag);
        }
        let y = term.sign as f64 * exp(term.logmag - self.scale) - self.comp;
        let t = self.hi + y;
        self.comp = (t - self.hi) - y;
        self.hi = t;
    }

    /// Add a term that is already an ordinary f64.
    ///
    /// Skips the value → logmag → mantissa round-trip of [`ScaledSum::add`],
    /// which costs a few ulp per term; for sums whose terms are natively
    /// f64 (hypergeometric families), the term enters exactly. The scale
    /// stays at 0 (factor exactly 1) unless a rebase was forced by earlier
    /// scaled terms, in which case the constant factor is uniform across
    /// terms and cancels in the final log.
    pub fn add_value(&mut self, value: f64) {
        self.terms += 1;
        if value == 0.0 {
            return;
        }
        let t_abs = ScaledReal::from_f64(value).abs();
        if self.max_term.cmp_abs(&t_abs) == Ordering::Less {
            self.max_term = t_abs;
        }
        self.abs_sum = self.abs_sum.add(&t_abs);
        if self.scale == f64::NEG_INFINITY {
            self.scale = 0.0;
        }
        let mantissa = if self.scale == 0.0 {
            value
        } else {
            value * exp(-self.scale)
        };
        let y = mantissa - self.comp;
        let t = self.hi + y;
        self.comp = (t - self.hi) - y;
        self.hi = t;
        if fabs(self.hi) > 1e280 {
            let bump = log(fabs(self.hi));
            self.rebase(self.scale + bump);
        }
    }

    /// The accumulated sum as a scaled value.
    pub fn total(&self) -> ScaledReal {
        if self.hi == 0.0 {
            return ScaledReal::ZERO;
        }
        ScaledReal {
            sign: if self.hi > 0.0 { 1 } else { -1 },
            logmag: self.scale + log(fabs(self.hi)),
        }
    }

    /// Σ|terms|, in scaled form.
    pub fn abs_total(&self) -> ScaledReal {
        self.abs_sum
    }

    pub fn max_term(&self) -> ScaledReal {
        self.max_term
    }

    pub fn term_count(&self) -> u32 {
        self.terms
    }
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self::new()
    }
}
