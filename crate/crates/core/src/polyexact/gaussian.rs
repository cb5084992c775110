use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::coeff::rational_to_string;
use super::{Coeff, Rational};

/// Element `re + im·√−1` of ℚ(√−1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    /// √−1.
    pub fn i() -> Self {
        GaussianRational::new(
            <Rational as Coeff>::zero(),
            Rational::from_integer(1.into()),
        )
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part when the imaginary part vanishes.
    pub fn to_real(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_to_string(&self.re)),
            (true, false) => write!(f, "{}*I", rational_to_string(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "({} {} {}*I)",
                    rational_to_string(&self.re),
                    sign,
                    rational_to_string(&self.im.abs())
                )
            }
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        Coeff::add(self, rhs)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        Coeff::sub(self, rhs)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        Coeff::mul(self, rhs)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Coeff::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_vanishes_only_at_zero() {
        assert!(GaussianRational::from_ints(0, 0).norm().is_zero());
        assert!(!GaussianRational::from_ints(0, 1).norm().is_zero());
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_ints(-1, 0));
    }

    #[test]
    fn display() {
        assert_eq!(GaussianRational::from_ints(3, 0).to_string(), "3");
        assert_eq!(GaussianRational::from_ints(0, -8).to_string(), "-8*I");
        assert_eq!(GaussianRational::from_ints(1, -2).to_string(), "(1 - 2*I)");
    }
}
