use std::fmt;

use serde::{Serialize, Serializer};

/// Significant digits kept when a float is written to a report.
pub const REPORT_DIGITS: usize = 12;

/// Float that serialises rounded to [`REPORT_DIGITS`] significant digits, so
/// reports are byte-stable across runs and worker counts. Non-finite values
/// serialise as `null`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Real(pub f64);

impl Real {
    pub fn rounded(self) -> f64 {
        round_sig(self.0)
    }
}

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", REPORT_DIGITS - 1, x)
        .parse()
        .expect("scientific notation parses")
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real(x)
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.rounded())
        } else {
            s.serialize_none()
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rounded())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-7.737588319870465), -7.73758831987);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(-0.0), 0.0);
        assert_eq!(serde_json::to_string(&Real(f64::NAN)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&Real(2.0)).unwrap(), "2.0");
        assert_eq!(serde_json::to_string(&Real(1e-13 + 1.0)).unwrap(), "1.0");
    }
}
