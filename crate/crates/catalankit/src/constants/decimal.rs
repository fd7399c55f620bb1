//! Fixed-point decimal arithmetic over `BigInt`.
//!
//! A `Decimal` is `mantissa * 10^(-scale)`. The scale is fixed per value and
//! all rounding is round-to-nearest, ties away from zero. This is a small
//! tool for computing reference constants to tens of digits with auditable
//! error bounds, not a general numeric tower: operations that mix scales
//! align exactly (upscaling is exact) and only explicit rescaling rounds.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub(crate) fn pow10(n: u32) -> BigInt {
    BigInt::from(10u8).pow(n)
}

/// Nearest integer to `n / d`, ties away from zero. Requires `d > 0`.
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let two_n = n * 2;
    if n.is_negative() {
        (two_n - d) / (d * 2)
    } else {
        (two_n + d) / (d * 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

impl Decimal {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        Self { mantissa, scale }
    }

    pub fn zero(scale: u32) -> Self {
        Self::new(BigInt::zero(), scale)
    }

    pub fn from_int(n: i64, scale: u32) -> Self {
        Self::new(BigInt::from(n) * pow10(scale), scale)
    }

    /// `num / den` rounded to `scale` fractional digits. Requires `den != 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        Self::new(div_round(&(num * pow10(scale)), &den), scale)
    }

    /// Parses a plain decimal string such as `-3.14159` or `42`.
    /// The scale is the number of digits after the point.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("empty decimal literal: {s:?}"));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(format!("invalid decimal literal: {s:?}"));
        }
        let scale = frac_part.len() as u32;
        let digits: String = [int_part, frac_part].concat();
        let mut mantissa: BigInt = digits.parse().map_err(|e| format!("{e}"))?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Self::new(mantissa, scale))
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Changes scale; widening is exact, narrowing rounds to nearest.
    pub fn rescale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                Self::new(&self.mantissa * pow10(scale - self.scale), scale)
            }
            Ordering::Less => Self::new(
                div_round(&self.mantissa, &pow10(self.scale - scale)),
                scale,
            ),
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(other.scale);
        let a = &self.mantissa * pow10(scale - self.scale);
        let b = &other.mantissa * pow10(scale - other.scale);
        (a, b, scale)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, scale) = self.aligned(other);
        Self::new(a + b, scale)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, scale) = self.aligned(other);
        Self::new(a - b, scale)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.mantissa, self.scale)
    }

    pub fn abs(&self) -> Self {
        Self::new(self.mantissa.abs(), self.scale)
    }

    /// Exact product with an integer.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::new(&self.mantissa * k, self.scale)
    }

    /// Rounded product; the result keeps the coarser of the two scales'
    /// precision at the finer of the two scales.
    pub fn mul(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let wide = Self::new(&self.mantissa * &other.mantissa, self.scale + other.scale);
        wide.rescale(scale)
    }

    /// Rounded quotient by a positive integer.
    pub fn div_int(&self, k: &BigInt) -> Self {
        Self::new(div_round(&self.mantissa, k), self.scale)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// True when `|self| <= 10^(-k)`.
    pub fn abs_le_pow10(&self, k: u32) -> bool {
        assert!(k <= self.scale, "comparison finer than scale");
        self.mantissa.abs() <= pow10(self.scale - k)
    }

    /// Nearest `f64`; exact decimal-to-binary conversion is delegated to the
    /// standard library parser, which rounds correctly.
    pub fn to_f64(&self) -> f64 {
        self.to_string().parse::<f64>().expect("decimal renders as valid float")
    }

    /// Renders the leading `sig` significant digits, rounded to nearest.
    /// Supports values whose leading digit is at or after the units place.
    pub fn sig_digits(&self, sig: u32) -> String {
        assert!(sig >= 1);
        assert!(!self.is_zero(), "no significant digits in zero");
        let digits = self.mantissa.abs().to_string().len() as i64;
        let exponent = digits - self.scale as i64;
        let target = sig as i64 - exponent;
        assert!(target >= 0, "value too large for requested digit count");
        self.rescale(target as u32).to_string()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let abs = self.mantissa.abs();
        let p = pow10(self.scale);
        let int = &abs / &p;
        let frac = &abs % &p;
        let sign = if self.mantissa.is_negative() { "-" } else { "" };
        if self.scale == 0 {
            write!(f, "{sign}{int}")
        } else {
            write!(
                f,
                "{sign}{int}.{frac:0>width$}",
                width = self.scale as usize
            )
        }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

/// Integer square root based `sqrt`, rounded to nearest at the same scale.
/// Only the in-test high-precision oracles need it.
#[cfg(test)]
pub(crate) fn sqrt(x: &Decimal) -> Decimal {
    assert!(!x.mantissa().is_negative());
    // sqrt(m * 10^-s) = sqrt(m * 10^s) * 10^-s
    let wide = (x.mantissa() * pow10(x.scale())).to_biguint().expect("non-negative");
    let root = wide.sqrt();
    // `sqrt` floors; bump when the next integer is closer.
    let next = &root + 1u32;
    let lo = &wide - &root * &root;
    let hi = &next * &next - &wide;
    let best = if hi <= lo { next } else { root };
    Decimal::new(BigInt::from(best), x.scale())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_render_roundtrip_is_lossless() {
        for s in [
            "0.915965594177219015054603514932",
            "3.14159265358979323846",
            "1.202056903159594285",
            "-0.500",
            "42",
            "0.000",
        ] {
            assert_eq!(Decimal::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn product_rounds_at_the_finer_scale() {
        let a = Decimal::parse("1.25").unwrap();
        let b = Decimal::parse("0.4000").unwrap();
        let p = a.mul(&b);
        assert_eq!(p.scale(), 4);
        assert_eq!(p.to_string(), "0.5000");
        // rounding case: 0.15 * 0.15 = 0.0225 -> 0.023 at scale 3
        let c = Decimal::parse("0.150").unwrap();
        assert_eq!(c.mul(&c).to_string(), "0.023");
    }

    #[test]
    fn ratio_rounds_to_nearest() {
        let d = Decimal::from_ratio(&BigInt::from(8), &BigInt::from(9), 20);
        assert_eq!(d.to_string(), "0.88888888888888888889");
        let d = Decimal::from_ratio(&BigInt::from(1), &BigInt::from(3), 6);
        assert_eq!(d.to_string(), "0.333333");
        let d = Decimal::from_ratio(&BigInt::from(-1), &BigInt::from(8), 2);
        assert_eq!(d.to_string(), "-0.13");
    }

    #[test]
    fn arithmetic_aligns_scales_exactly() {
        let a = Decimal::parse("1.25").unwrap();
        let b = Decimal::parse("0.125").unwrap();
        assert_eq!(a.add(&b).to_string(), "1.375");
        assert_eq!(a.sub(&b).to_string(), "1.125");
        assert_eq!(a.mul_int(&BigInt::from(3)).to_string(), "3.75");
    }

    #[test]
    fn sig_digits_rounds_at_cut() {
        let g = Decimal::parse("0.9159655941772190150546").unwrap();
        assert_eq!(g.sig_digits(18), "0.915965594177219015");
        assert_eq!(g.sig_digits(6), "0.915966");
        let pi = Decimal::parse("3.14159265358979323846").unwrap();
        assert_eq!(pi.sig_digits(6), "3.14159");
        assert_eq!(pi.sig_digits(7), "3.141593");
    }

    #[test]
    fn to_f64_is_correctly_rounded() {
        assert_eq!(Decimal::parse("0.5").unwrap().to_f64(), 0.5);
        assert_eq!(
            Decimal::parse("3.14159265358979323846").unwrap().to_f64(),
            std::f64::consts::PI
        );
    }

    #[test]
    fn sqrt_rounds_to_nearest_at_scale() {
        let two = Decimal::from_int(2, 40);
        let r = sqrt(&two);
        assert_eq!(r.to_string(), "1.4142135623730950488016887242096980785697");
    }

    #[test]
    fn abs_le_pow10_compares_magnitudes() {
        let x = Decimal::parse("0.00000099").unwrap();
        assert!(x.abs_le_pow10(6));
        assert!(!x.abs_le_pow10(7));
    }
}
