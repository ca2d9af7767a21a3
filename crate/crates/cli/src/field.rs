//! Field names on the command line and in ring headers.

use std::fmt;
use std::str::FromStr;

use cmcubics_core::PrimeField;

use crate::error::CliError;

/// `Q`, `GF(p)`, `Q(t)` or `GF(p)(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct FieldSpec {
    /// `None` for the rationals.
    pub prime: Option<u64>,
    /// Coefficients in `k(t)`.
    pub parametric: bool,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { prime: None, parametric: false };

    pub fn prime(p: u64) -> Self {
        FieldSpec { prime: Some(p), parametric: false }
    }

    pub fn base(&self) -> FieldSpec {
        FieldSpec { parametric: false, ..*self }
    }

    pub fn with_parameter(&self) -> FieldSpec {
        FieldSpec { parametric: true, ..*self }
    }

    /// `--field` applied to a document field: the base is replaced and a
    /// parameter is kept.
    pub fn override_with(&self, flag: FieldSpec) -> FieldSpec {
        FieldSpec { prime: flag.prime, parametric: self.parametric || flag.parametric }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime {
            None => f.write_str("Q")?,
            Some(p) => write!(f, "GF({p})")?,
        }
        if self.parametric {
            f.write_str("(t)")?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = CliError;

    /// Accepts `Q`, `Qt`, `Q(t)`, `GF(7)`, `GF<7>`, `GF7`, `GF(7)(t)`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::BadField(s.to_string());
        let s = s.trim();
        let (base, parametric) = match s.strip_suffix("(t)") {
            Some(b) => (b, true),
            None if s == "Qt" => ("Q", true),
            None => (s, false),
        };
        let prime = if base == "Q" {
            None
        } else {
            let digits =
                base.strip_prefix("GF").ok_or_else(bad)?.trim_start_matches(['(', '<']).trim_end_matches([')', '>']);
            let p: u64 = digits.parse().map_err(|_| bad())?;
            PrimeField::new(p)?;
            Some(p)
        };
        Ok(FieldSpec { prime, parametric })
    }
}

/// Runs `$body` with `$f` bound to the field value described by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {{
        let spec: $crate::FieldSpec = $spec;
        match (spec.prime, spec.parametric) {
            (None, false) => {
                let $f = cmcubics_core::Rationals;
                $body
            }
            (Some(p), false) => {
                let $f = cmcubics_core::PrimeField::new(p)?;
                $body
            }
            (None, true) => {
                let $f = cmcubics_core::RationalFunctions::new(cmcubics_core::Rationals);
                $body
            }
            (Some(p), true) => {
                let $f = cmcubics_core::RationalFunctions::new(cmcubics_core::PrimeField::new(p)?);
                $body
            }
        }
    }};
}

/// Like [`with_field!`] for commands that need roots in the field (`Q`, `GF(p)`).
#[macro_export]
macro_rules! with_exact_field {
    ($spec:expr, $what:expr, |$f:ident| $body:expr) => {{
        let spec: $crate::FieldSpec = $spec;
        match (spec.prime, spec.parametric) {
            (_, true) => Err($crate::CliError::NeedsBaseField { command: $what.to_string(), field: spec.to_string() }),
            (None, false) => {
                let $f = cmcubics_core::Rationals;
                $body
            }
            (Some(p), false) => {
                let $f = cmcubics_core::PrimeField::new(p)?;
                $body
            }
        }
    }};
}

/// Binds `$b` to the base field of a parametric spec.
#[macro_export]
macro_rules! with_parametric_field {
    ($spec:expr, $what:expr, |$b:ident| $body:expr) => {{
        let spec: $crate::FieldSpec = $spec;
        match (spec.prime, spec.parametric) {
            (_, false) => Err($crate::CliError::NeedsParameter { command: $what.to_string(), field: spec.to_string() }),
            (None, true) => {
                let $b = cmcubics_core::Rationals;
                $body
            }
            (Some(p), true) => {
                let $b = cmcubics_core::PrimeField::new(p)?;
                $body
            }
        }
    }};
}
