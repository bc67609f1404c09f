use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Numeric type a model can be evaluated in.
///
/// Rationals compare exactly; floating-point types compare with a relative
/// tolerance, so only the rational instantiation supports exact verification.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn approx_eq(&self, other: &Self) -> bool;

    fn to_f64(&self) -> f64;

    /// Parses `"p/q"`, an integer, or a decimal like `"0.25"`.
    fn parse_value(text: &str) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_value(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let negative = int.starts_with('-');
            let whole = if int.is_empty() || int == "-" { BigInt::from(0) } else { BigInt::from_str(int).ok()? };
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let mut digits = BigInt::from_str(frac).ok()?;
            if negative {
                digits = -digits;
            }
            return Some(BigRational::new(whole * &scale + digits, scale));
        }
        let (num, den) = text.split_once('/').unwrap_or((text, "1"));
        let den = BigInt::from_str(den.trim()).ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        Some(BigRational::new(BigInt::from_str(num.trim()).ok()?, den))
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn approx_eq(&self, other: &Self) -> bool {
                (self - other).abs() <= $tol * self.abs().max(other.abs()).max(1.0)
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn parse_value(text: &str) -> Option<Self> {
                let text = text.trim();
                match text.split_once('/') {
                    Some((n, d)) => {
                        let d: $t = d.trim().parse().ok()?;
                        (d != 0.0).then_some(n.trim().parse::<$t>().ok()? / d)
                    }
                    None => text.parse().ok(),
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-5);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        let r = |s: &str| <BigRational as Scalar>::parse_value(s);
        assert_eq!(r("3/4"), Some(BigRational::from_ratio(3, 4)));
        assert_eq!(r("6/8"), Some(BigRational::from_ratio(3, 4)));
        assert_eq!(r("0.25"), Some(BigRational::from_ratio(1, 4)));
        assert_eq!(r("-1.5"), Some(BigRational::from_ratio(-3, 2)));
        assert_eq!(r("1"), Some(BigRational::from_ratio(1, 1)));
        assert_eq!(r("1/0"), None);
        assert_eq!(r("x"), None);
    }

    #[test]
    fn float_tolerance() {
        assert!(0.1f64.approx_eq(&(0.3 - 0.2)));
        assert!(!0.1f64.approx_eq(&0.1001));
        assert_eq!(<f32 as Scalar>::parse_value("1/4"), Some(0.25));
    }
}
