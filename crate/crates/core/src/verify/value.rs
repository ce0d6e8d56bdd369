use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, to_f64, Rational};

/// A verdict side: an exact rational or a floating-point estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Numeric(f64),
}

impl Value {
    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Numeric(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Numeric(_) => None,
        }
    }

    /// `self - other`, exact only when both sides are.
    pub fn minus(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a - b),
            _ => Value::Numeric(self.as_f64() - other.as_f64()),
        }
    }

    pub fn compare(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_zero(),
            Value::Numeric(x) => *x == 0.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Value::Exact(r) => r.is_negative(),
            Value::Numeric(x) => *x < 0.0,
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Exact(r)
    }
}

/// Decimal rendering with 12 significant digits; always contains `.` or `e`, so it never
/// reads back as a rational.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-6..=15).contains(&exp) {
        let mantissa = mantissa.trim_end_matches('0');
        let mantissa = if mantissa.ends_with('.') { format!("{mantissa}0") } else { mantissa.to_string() };
        return format!("{mantissa}e{exp}");
    }
    let rounded: f64 = sci.parse().expect("round trip");
    let decimals = (11 - exp).max(0) as usize;
    let text = format!("{rounded:.decimals$}");
    if !text.contains('.') {
        return format!("{text}.0");
    }
    let trimmed = text.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_string()
    }
}

pub fn parse_value(text: &str) -> Option<Value> {
    let t = text.trim();
    if t.contains(['.', 'e', 'E', 'n', 'N', 'i']) {
        t.parse::<f64>().ok().map(Value::Numeric)
    } else {
        rational::parse(t).map(Value::Exact)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Numeric(x) => f.write_str(&format_float(*x)),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_value(&text).ok_or_else(|| serde::de::Error::custom(format!("not a value: {text}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(2.0), "2.0");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(2.9987123456789), "2.99871234568");
        assert_eq!(format_float(-0.05), "-0.05");
        assert_eq!(format_float(1.5e-9), "1.5e-9");
        assert_eq!(format_float(123456.0), "123456.0");
        assert_eq!(format_float(9.9999999999999), "10.0");
    }

    #[test]
    fn values_round_trip() {
        for v in [Value::Exact(frac(2, 3)), Value::Exact(frac(-4, 1)), Value::Numeric(0.1 + 0.2), Value::Numeric(-3e-12)] {
            let text = v.to_string();
            let back = parse_value(&text).unwrap();
            assert_eq!(back.to_string(), text);
            assert_eq!(back.is_exact(), v.is_exact());
        }
        assert_eq!(Value::Exact(frac(2, 3)).to_string(), "2/3");
        assert_eq!(Value::Exact(frac(4, 2)).to_string(), "2");
    }
}
