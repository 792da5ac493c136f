//! Shared validation error for parameter records.

/// A named parameter failed a domain requirement.
///
/// The `field` string matches the config-file key so that validation
/// failures point at the offending entry.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field} must be {requirement}, got {value}")]
pub struct ParamError {
    pub field: &'static str,
    pub requirement: &'static str,
    pub value: f64,
}

impl ParamError {
    pub fn new(field: &'static str, requirement: &'static str, value: f64) -> Self {
        Self {
            field,
            requirement,
            value,
        }
    }

    /// Requires `value > 0` (rejects NaN as well).
    pub fn require_positive(field: &'static str, value: f64) -> Result<(), Self> {
        if value > 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(Self::new(field, "strictly positive and finite", value))
        }
    }

    /// Requires `value >= 0` and finite.
    pub fn require_non_negative(field: &'static str, value: f64) -> Result<(), Self> {
        if value >= 0.0 && value.is_finite() {
            Ok(())
        } else {
            Err(Self::new(field, "non-negative and finite", value))
        }
    }

    /// Requires `value` to be finite.
    pub fn require_finite(field: &'static str, value: f64) -> Result<(), Self> {
        if value.is_finite() {
            Ok(())
        } else {
            Err(Self::new(field, "finite", value))
        }
    }
}
