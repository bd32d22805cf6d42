use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Coefficient field for polynomials: either the rationals or the Gaussian rationals.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + 'static
{
    /// Tag used in the JSON `field` slot.
    const TAG: &'static str;

    fn from_rational(r: Rational) -> Self;
    fn to_rational(&self) -> Option<Rational>;
    fn conj(&self) -> Self;
    fn coeff_to_json(&self) -> Value;
    fn coeff_from_json(v: &Value) -> Result<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(rat(v))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::one() / self)
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

impl Field for Rational {
    const TAG: &'static str = "Q";

    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn coeff_to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn coeff_from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(rat(n.as_i64().unwrap())),
            _ => Err(Error::Parse(format!("expected rational string, got {v}"))),
        }
    }
}

/// Element `re + i·im` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})i", self.im)
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(Rational::one(), Rational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        GaussianRational::new(self.re + &o.re, self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        GaussianRational::new(self.re - &o.re, self.im - &o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn div(self, o: &Self) -> Self {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in Q(i)");
        let p = self * &o.conj();
        GaussianRational::new(p.re / &n, p.im / &n)
    }
}

impl<'a> AddAssign<&'a GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &Self) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl<'a> SubAssign<&'a GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &Self) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl<'a> MulAssign<&'a GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &Self) {
        *self = self.clone() * o;
    }
}

impl Field for GaussianRational {
    const TAG: &'static str = "Qi";

    fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Rational::zero())
    }
    fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }
    fn coeff_to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(self.re.to_string()),
            Value::String(self.im.to_string()),
        ])
    }
    fn coeff_from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(a) if a.len() == 2 => Ok(GaussianRational::new(
                Rational::coeff_from_json(&a[0])?,
                Rational::coeff_from_json(&a[1])?,
            )),
            // a bare rational is accepted as a real Gaussian coefficient
            Value::String(_) => Ok(GaussianRational::from_rational(Rational::coeff_from_json(v)?)),
            _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let a = GaussianRational::new(rat(1), rat(2));
        let b = GaussianRational::new(frac(1, 2), rat(-3));
        let p = a.clone() * &b;
        assert_eq!(p, GaussianRational::new(frac(13, 2), rat(-2)));
        assert_eq!(p / &b, a);
        assert_eq!(GaussianRational::i() * &GaussianRational::i(), -GaussianRational::one());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn rational_json() {
        let r = frac(-6, 4);
        assert_eq!(r.coeff_to_json(), Value::String("-3/2".into()));
        assert_eq!(Rational::coeff_from_json(&r.coeff_to_json()).unwrap(), r);
        let g = GaussianRational::new(rat(0), frac(1, 3));
        assert_eq!(GaussianRational::coeff_from_json(&g.coeff_to_json()).unwrap(), g);
    }
}
