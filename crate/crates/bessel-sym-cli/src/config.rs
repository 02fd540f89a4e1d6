//! Sweep configuration: flag values, the flat key=value config file, and
//! the grid syntaxes.
//!
//! Integer ranges are `a..b[..step]` (inclusive). Real grids are either a
//! comma list — entries may be decimals, integers or exact rationals `p/q`
//! — or a linspace triple `lo:hi:count`. Every grid entry keeps an exact
//! rational alongside its f64 so the exact-arithmetic identities consume
//! the value the user actually wrote.
//!
//! Precedence for every setting: config file over command-line flags; the
//! `BESSEL_SYM_TOL` environment variable is the lowest-precedence tolerance
//! fallback before the per-identity defaults.

use std::fmt;
use std::path::PathBuf;

use bessel_sym_core::identities::Identity;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(message.into()))
}

/// Inclusive integer range with positive step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(serde::Serialize, serde::Deserialize)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
    pub step: u32,
}

impl IntRange {
    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        (self.lo..=self.hi).step_by(self.step as usize)
    }

    /// Parse `a..b[..step]`, or a single integer as a one-point range.
    pub fn parse(text: &str) -> Result<IntRange, ConfigError> {
        let text = text.trim();
        if !text.contains("..") {
            let v: u32 = text
                .parse()
                .map_err(|_| ConfigError(format!("bad integer `{text}`")))?;
            return Ok(IntRange {
                lo: v,
                hi: v,
                step: 1,
            });
        }
        let parts: Vec<&str> = text.split("..").collect();
        if parts.len() != 2 && parts.len() != 3 {
            return err(format!("bad range `{text}`; expected a..b[..step]"));
        }
        let lo: u32 = parts[0]
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad range start in `{text}`")))?;
        let hi: u32 = parts[1]
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad range end in `{text}`")))?;
        let step: u32 = if parts.len() == 3 {
            parts[2]
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("bad range step in `{text}`")))?
        } else {
            1
        };
        if step == 0 {
            return err(format!("range step must be positive in `{text}`"));
        }
        if lo > hi {
            return err(format!("empty range `{text}`"));
        }
        Ok(IntRange { lo, hi, step })
    }
}

/// One grid entry: the f64 used by floating identities and the exact
/// rational consumed by the exact ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub value: f64,
    pub exact: BigRational,
}

impl Scalar {
    fn from_f64(value: f64) -> Result<Scalar, ConfigError> {
        match BigRational::from_f64(value) {
            Some(exact) => Ok(Scalar { value, exact }),
            None => err(format!("non-finite grid value {value}")),
        }
    }

    /// Parse one token: `p/q` rational or decimal/scientific literal, kept
    /// exact in either case.
    pub fn parse(token: &str) -> Result<Scalar, ConfigError> {
        let token = token.trim();
        if token.is_empty() {
            return err("empty grid entry");
        }
        if let Some((num, den)) = token.split_once('/') {
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("bad rational `{token}`")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| ConfigError(format!("bad rational `{token}`")))?;
            if den.is_zero() {
                return err(format!("zero denominator in `{token}`"));
            }
            let exact = BigRational::new(num, den);
            let value = exact.to_f64().ok_or_else(|| {
                ConfigError(format!("rational `{token}` overflows f64"))
            })?;
            return Ok(Scalar { value, exact });
        }
        let value: f64 = token
            .parse()
            .map_err(|_| ConfigError(format!("bad real `{token}`")))?;
        if !value.is_finite() {
            return err(format!("non-finite grid value `{token}`"));
        }
        // keep the decimal literal exact rather than its f64 rounding
        match decimal_to_rational(token) {
            Some(exact) => Ok(Scalar { value, exact }),
            None => Scalar::from_f64(value),
        }
    }
}

/// `-12.345e-2`-style literal → exact rational.
fn decimal_to_rational(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits_joined = format!("{int_part}{frac_part}");
    let num: BigInt = digits_joined.parse().ok()?;
    let num = if sign < 0 { -num } else { num };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut rational = BigRational::from_integer(num);
    if scale >= 0 {
        rational *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        rational /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Some(rational)
}

/// Parse a real grid: comma list or `lo:hi:count` linspace.
pub fn parse_grid(text: &str) -> Result<Vec<Scalar>, ConfigError> {
    let text = text.trim();
    if text.is_empty() {
        return err("empty grid");
    }
    let colon_parts: Vec<&str> = text.split(':').collect();
    if colon_parts.len() == 3 && !text.contains(',') {
        let lo: f64 = colon_parts[0]
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad linspace start in `{text}`")))?;
        let hi: f64 = colon_parts[1]
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad linspace end in `{text}`")))?;
        let count: u32 = colon_parts[2]
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("bad linspace count in `{text}`")))?;
        if count == 0 {
            return err(format!("linspace count must be positive in `{text}`"));
        }
        let mut out = Vec::with_capacity(count as usize);
        for i in 0..count {
            let v = if count == 1 {
                lo
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            };
            out.push(Scalar::from_f64(v)?);
        }
        return Ok(out);
    }
    text.split(',').map(Scalar::parse).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Result<OutputFormat, ConfigError> {
        match text.trim() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

/// Fully merged sweep configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub identities: Vec<Identity>,
    pub m: Option<IntRange>,
    pub n: Option<IntRange>,
    pub z: Option<Vec<Scalar>>,
    pub x: Option<Vec<Scalar>>,
    pub s: Option<Vec<Scalar>>,
    pub a: Option<Vec<Scalar>>,
    pub b: Option<Vec<Scalar>>,
    pub lambda: Option<Vec<Scalar>>,
    /// Global tolerance override; falls back to per-identity defaults.
    pub tol: Option<f64>,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub jobs: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            identities: Vec::new(),
            m: None,
            n: None,
            z: None,
            x: None,
            s: None,
            a: None,
            b: None,
            lambda: None,
            tol: None,
            format: OutputFormat::Json,
            out: None,
            jobs: 1,
        }
    }
}

impl SweepConfig {
    pub fn tol_for(&self, identity: Identity) -> f64 {
        self.tol.unwrap_or_else(|| identity.default_tol())
    }

    /// Parse identity list `name[,name...]`.
    pub fn parse_identities(text: &str) -> Result<Vec<Identity>, ConfigError> {
        let mut out = Vec::new();
        for name in text.split(',') {
            let name = name.trim();
            if name.is_empty() {
                continue;
            }
            match Identity::parse(name) {
                Some(id) => {
                    if !out.contains(&id) {
                        out.push(id);
                    }
                }
                None => {
                    return err(format!(
                        "unknown identity `{name}`; known: {}",
                        Identity::ALL.map(|i| i.name()).join(", ")
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Apply one config-file key.
    fn apply_entry(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "identity" | "identities" => {
                self.identities = Self::parse_identities(value)?;
            }
            "m" => self.m = Some(IntRange::parse(value)?),
            "n" => self.n = Some(IntRange::parse(value)?),
            "z" => self.z = Some(parse_grid(value)?),
            "x" => self.x = Some(parse_grid(value)?),
            "s" => self.s = Some(parse_grid(value)?),
            "a" => self.a = Some(parse_grid(value)?),
            "b" => self.b = Some(parse_grid(value)?),
            "lambda" => self.lambda = Some(parse_grid(value)?),
            "tol" => {
                let tol: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| ConfigError(format!("bad tol `{value}`")))?;
                self.tol = Some(tol);
            }
            "format" => self.format = OutputFormat::parse(value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "jobs" => {
                self.jobs = value
                    .trim()
                    .parse()
                    .map_err(|_| ConfigError(format!("bad jobs `{value}`")))?;
            }
            other => return err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }

    /// Overlay a flat `key = value` config document; its settings override
    /// whatever is already present.
    pub fn apply_file(&mut self, contents: &str) -> Result<(), ConfigError> {
        for (lineno, raw) in contents.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("config line {}: expected key = value", lineno + 1))
            })?;
            self.apply_entry(key.trim(), value.trim())
                .map_err(|e| ConfigError(format!("config line {}: {}", lineno + 1, e.0)))?;
        }
        Ok(())
    }

    /// Structural validation before any evaluation happens.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.identities.is_empty() {
            return err("no identities requested (use --identity)");
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0) {
                return err(format!("tolerance must be positive, got {tol}"));
            }
        }
        if self.jobs == 0 {
            return err("jobs must be at least 1");
        }
        for id in &self.identities {
            for kind in id.required_params() {
                use bessel_sym_core::identities::ParamKind;
                let present = match kind {
                    ParamKind::M => self.m.is_some(),
                    ParamKind::N => self.n.is_some(),
                    ParamKind::Z => self.z.as_ref().is_some_and(|g| !g.is_empty()),
                    ParamKind::X => self.x.as_ref().is_some_and(|g| !g.is_empty()),
                    ParamKind::S => self.s.as_ref().is_some_and(|g| !g.is_empty()),
                    ParamKind::A => self.a.as_ref().is_some_and(|g| !g.is_empty()),
                    ParamKind::B => self.b.as_ref().is_some_and(|g| !g.is_empty()),
                    ParamKind::Lambda => self.lambda.as_ref().is_some_and(|g| !g.is_empty()),
                };
                if !present {
                    return err(format!(
                        "identity `{}` needs a nonempty {} grid/range",
                        id.name(),
                        kind.name()
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_range_syntax() {
        assert_eq!(
            IntRange::parse("0..3").unwrap().values().collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            IntRange::parse("2..10..4").unwrap().values().collect::<Vec<_>>(),
            vec![2, 6, 10]
        );
        assert_eq!(
            IntRange::parse("7").unwrap().values().collect::<Vec<_>>(),
            vec![7]
        );
        assert!(IntRange::parse("5..2").is_err());
        assert!(IntRange::parse("0..3..0").is_err());
        assert!(IntRange::parse("a..b").is_err());
    }

    #[test]
    fn scalar_forms_stay_exact() {
        let s = Scalar::parse("7/3").unwrap();
        assert_eq!(s.exact, BigRational::new(BigInt::from(7), BigInt::from(3)));
        assert!((s.value - 7.0 / 3.0).abs() < 1e-15);

        let s = Scalar::parse("-0.75").unwrap();
        assert_eq!(s.exact, BigRational::new(BigInt::from(-3), BigInt::from(4)));

        let s = Scalar::parse("1.5e-2").unwrap();
        assert_eq!(
            s.exact,
            BigRational::new(BigInt::from(3), BigInt::from(200))
        );

        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("abc").is_err());
        assert!(Scalar::parse("inf").is_err());
    }

    #[test]
    fn grid_forms() {
        let g = parse_grid("0.5,1,7/3").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[2].value, 7.0 / 3.0);

        let g = parse_grid("0:10:5").unwrap();
        assert_eq!(
            g.iter().map(|s| s.value).collect::<Vec<_>>(),
            vec![0.0, 2.5, 5.0, 7.5, 10.0]
        );
        let g = parse_grid("3:9:1").unwrap();
        assert_eq!(g[0].value, 3.0);

        assert!(parse_grid("").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }

    #[test]
    fn config_file_overrides_flags() {
        let mut cfg = SweepConfig {
            identities: SweepConfig::parse_identities("eq5").unwrap(),
            tol: Some(1e-6),
            ..Default::default()
        };
        cfg.apply_file(
            "# comment\n\nidentity = theorem1,eq19\nm = 0..3\nn = 0..3\nz = 1.0\ntol = 1e-9\nformat = csv\njobs = 4\n",
        )
        .unwrap();
        assert_eq!(
            cfg.identities,
            vec![Identity::Theorem1, Identity::Eq19]
        );
        assert_eq!(cfg.tol, Some(1e-9));
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert_eq!(cfg.jobs, 4);
        assert!(cfg.validate().is_ok());

        assert!(cfg.apply_file("what is this").is_err());
        assert!(cfg.apply_file("bogus = 1").is_err());
    }

    #[test]
    fn validation_requires_grids() {
        let mut cfg = SweepConfig {
            identities: SweepConfig::parse_identities("theorem1").unwrap(),
            ..Default::default()
        };
        cfg.m = Some(IntRange::parse("0..3").unwrap());
        cfg.n = Some(IntRange::parse("0..3").unwrap());
        // z missing
        let e = cfg.validate().unwrap_err();
        assert!(e.0.contains("theorem1"), "{e}");
        assert!(e.0.contains('z'), "{e}");
        cfg.z = Some(parse_grid("1.0").unwrap());
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn unknown_identity_is_rejected() {
        assert!(SweepConfig::parse_identities("theorem1,nope").is_err());
        // duplicates collapse
        let ids = SweepConfig::parse_identities("eq5,eq5,theorem1").unwrap();
        assert_eq!(ids, vec![Identity::Eq5, Identity::Theorem1]);
    }

    #[test]
    fn tolerance_uses_identity_default_when_unset() {
        let cfg = SweepConfig::default();
        assert_eq!(cfg.tol_for(Identity::Theorem1), 1e-9);
        assert_eq!(cfg.tol_for(Identity::Eq24), 1e-6);
        let cfg = SweepConfig {
            tol: Some(1e-3),
            ..Default::default()
        };
        assert_eq!(cfg.tol_for(Identity::Eq24), 1e-3);
    }
}
