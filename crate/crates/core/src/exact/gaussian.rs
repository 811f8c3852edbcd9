//! Elements of the Gaussian rationals ℚ(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::ParseScalarError;

/// `re + im·i` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub const ZERO: GaussianRational = GaussianRational {
        re: Rational::ZERO,
        im: Rational::ZERO,
    };
    pub const ONE: GaussianRational = GaussianRational {
        re: Rational::ONE,
        im: Rational::ZERO,
    };
    pub const I: GaussianRational = GaussianRational {
        re: Rational::ZERO,
        im: Rational::ONE,
    };

    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::ZERO,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_int(n))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(Rational::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.im.is_zero() {
            return Self::real(self.re.recip());
        }
        let n = self.norm().recip();
        GaussianRational {
            re: &self.re * &n,
            im: -(&self.im * &n),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if self.im.is_zero() {
            return Self::real(self.re.pow(e));
        }
        let mut acc = GR::ONE;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

impl<'a> Add<&'a GR> for &'a GR {
    type Output = GR;
    fn add(self, rhs: &GR) -> GR {
        GR {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GR> for &'a GR {
    type Output = GR;
    fn sub(self, rhs: &GR) -> GR {
        GR {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GR> for &'a GR {
    type Output = GR;
    fn mul(self, rhs: &GR) -> GR {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GR::real(&self.re * &rhs.re),
            (true, false) => GR {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GR {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GR {
                re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
                im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
            },
        }
    }
}

impl<'a> Div<&'a GR> for &'a GR {
    type Output = GR;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GR) -> GR {
        self * &rhs.inv()
    }
}

impl Neg for &GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GR {
    type Output = GR;
    fn neg(self) -> GR {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<GR> for GR {
            type Output = GR;
            fn $f(self, rhs: GR) -> GR { (&self).$f(&rhs) }
        }
        impl<'a> $tr<&'a GR> for GR {
            type Output = GR;
            fn $f(self, rhs: &GR) -> GR { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GR> for GR {
    fn add_assign(&mut self, rhs: &GR) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GR> for GR {
    fn sub_assign(&mut self, rhs: &GR) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GR> for GR {
    fn mul_assign(&mut self, rhs: &GR) {
        *self = &*self * rhs;
    }
}

/// Textual form `a/b`, `c/d*i` or `a/b+c/d*i`; zero parts are omitted and
/// integral parts are printed without a denominator.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_imag(s: &str, whole: &str) -> Result<Rational, ParseScalarError> {
    let coeff = s.strip_suffix('i').ok_or_else(|| ParseScalarError(whole.into()))?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff).trim();
    match coeff {
        "" | "+" => Ok(Rational::ONE),
        "-" => Ok(-Rational::ONE),
        c => c.parse().map_err(|_| ParseScalarError(whole.into())),
    }
}

impl FromStr for GaussianRational {
    type Err = ParseScalarError;

    /// Parses the display form; also accepts `i`, `-i`, `2+i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(ParseScalarError(s.into()));
        }
        if !t.ends_with('i') {
            return Ok(GR::real(t.parse()?));
        }
        // Split at the last sign that is not in leading position.
        let split = t
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re: Rational = t[..k].parse()?;
                let im = parse_imag(&t[k..], s)?;
                Ok(GR::new(re, im))
            }
            None => Ok(GR::new(Rational::ZERO, parse_imag(&t, s)?)),
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GR::new(Rational::new(1, 2), Rational::from_int(3));
        let b = GR::new(Rational::from_int(-2), Rational::new(1, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&GR::I * &GR::I, GR::from_int(-1));
        assert_eq!(GR::I.pow(4), GR::ONE);
        assert_eq!(GR::I.inv(), -GR::I);
    }

    #[test]
    fn textual_form() {
        let cases = [
            (GR::ZERO, "0"),
            (GR::frac(3, 4), "3/4"),
            (GR::I, "1*i"),
            (-GR::I, "-1*i"),
            (GR::new(Rational::new(1, 2), Rational::new(-3, 7)), "1/2-3/7*i"),
            (GR::new(Rational::from_int(-2), Rational::new(5, 3)), "-2+5/3*i"),
        ];
        for (v, s) in cases {
            assert_eq!(v.to_string(), s);
            assert_eq!(s.parse::<GR>().unwrap(), v);
        }
        assert_eq!("i".parse::<GR>().unwrap(), GR::I);
        assert_eq!("-i".parse::<GR>().unwrap(), -GR::I);
        assert_eq!("2+i".parse::<GR>().unwrap(), GR::new(Rational::from_int(2), Rational::ONE));
        assert_eq!("-1/2".parse::<GR>().unwrap(), GR::frac(-1, 2));
        assert!("1+".parse::<GR>().is_err());
        assert!("abc".parse::<GR>().is_err());
    }
}
