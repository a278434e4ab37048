//! Exact scalars: rationals for all public data, Gaussian rationals for
//! the eigenframes the weight screen needs.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Scalar = BigRational;

/// Elements of ℚ(i).
pub type Gauss = Complex<BigRational>;

pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(q: Scalar) -> Self;

    /// `Some(q)` when the value lies in ℚ.
    fn to_rational(&self) -> Option<Scalar>;

    /// An exact square root inside the field, if one exists.
    fn sqrt_exact(&self) -> Option<Self>;

    fn render(&self) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn sqrt_rational(q: &Scalar) -> Option<Scalar> {
    let n = sqrt_int(q.numer())?;
    let d = sqrt_int(q.denom())?;
    Some(BigRational::new(n, d))
}

impl Field for BigRational {
    fn from_rational(q: Scalar) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Scalar> {
        Some(self.clone())
    }

    fn sqrt_exact(&self) -> Option<Self> {
        sqrt_rational(self)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Field for Gauss {
    fn from_rational(q: Scalar) -> Self {
        Complex::new(q, Scalar::zero())
    }

    fn to_rational(&self) -> Option<Scalar> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn sqrt_exact(&self) -> Option<Self> {
        let (p, q) = (&self.re, &self.im);
        if q.is_zero() {
            if p.is_negative() {
                return sqrt_rational(&-p).map(|b| Complex::new(Scalar::zero(), b));
            }
            return sqrt_rational(p).map(|a| Complex::new(a, Scalar::zero()));
        }
        // (a + bi)² = p + qi with a² = (p + |z|)/2, b = q/(2a)
        let modulus = sqrt_rational(&(p * p + q * q))?;
        let a = sqrt_rational(&((p + &modulus) / int(2)))?;
        let b = q / (&a * int(2));
        Some(Complex::new(a, b))
    }

    fn render(&self) -> String {
        let (re, im) = (&self.re, &self.im);
        if im.is_zero() {
            return re.to_string();
        }
        let imag = if im.is_one() {
            "i".to_string()
        } else if *im == -Scalar::one() {
            "-i".to_string()
        } else {
            format!("{im}i")
        };
        if re.is_zero() {
            imag
        } else if im.is_negative() {
            format!("{re}{imag}")
        } else {
            format!("{re}+{imag}")
        }
    }
}

/// Parses an optionally signed integer or `p/q`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let bad = || Error::Parse {
        line: 0,
        message: format!("invalid coefficient `{s}`"),
    };
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        let t = t.strip_prefix('+').unwrap_or(t);
        if t.is_empty()
            || !t
                .trim_start_matches('-')
                .chars()
                .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Embeds a rational vector into any field.
pub fn lift<F: Field>(v: &[Scalar]) -> Vec<F> {
    v.iter().cloned().map(F::from_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> Gauss {
        Complex::new(int(a), int(b))
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(ratio(9, 4).sqrt_exact(), Some(ratio(3, 2)));
        assert_eq!(int(2).sqrt_exact(), None);
        assert_eq!(int(-4).sqrt_exact(), None);
    }

    #[test]
    fn gaussian_square_roots() {
        assert_eq!(g(-1, 0).sqrt_exact(), Some(g(0, 1)));
        let z = g(3, 4);
        let r = z.sqrt_exact().unwrap();
        assert_eq!(r.clone() * r, z);
        assert_eq!(g(0, 2).sqrt_exact(), Some(g(1, 1)));
        assert_eq!(g(0, 1).sqrt_exact(), None);
    }

    #[test]
    fn parses_coefficients() {
        assert_eq!(parse_scalar("-3").unwrap(), int(-3));
        assert_eq!(parse_scalar("+2/6").unwrap(), ratio(1, 3));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/-2").is_err());
    }

    #[test]
    fn renders_gaussians() {
        assert_eq!(g(0, 1).render(), "i");
        assert_eq!(g(2, -1).render(), "2-i");
        assert_eq!(Complex::new(ratio(1, 2), int(3)).render(), "1/2+3i");
    }
}
