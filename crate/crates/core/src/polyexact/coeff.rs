use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::{dense, GaussianRational, Mat, MultiPoly, PolyError, Rational};

/// Exact field elements usable as polynomial and matrix coefficients.
///
/// Implemented for [`Rational`] and [`GaussianRational`]. All operations are
/// exact; there is no floating-point path through this trait.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// Exact square root inside the field, if one exists.
    fn sqrt_exact(&self) -> Option<Self>;
    /// Exactly one of `c` and `-c` is canonical for every nonzero `c`.
    fn is_canonical_sign(&self) -> bool;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, PolyError>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Coeff::add(self, other);
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Determinant of a square matrix of linear forms through an integer
    /// kernel, when the field admits one.
    fn det_linear_forms(_forms: &[Vec<Vec<Self>>], _arity: usize) -> Option<MultiPoly<Self>> {
        None
    }

    /// `p(A·v)` through an integer kernel, when the field admits one.
    fn substitute_dense(_p: &MultiPoly<Self>, _a: &Mat<Self>) -> Option<MultiPoly<Self>> {
        None
    }
}

/// Parse a canonical rational string such as `"3"`, `"-2/7"`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let r: Rational = s
        .parse()
        .map_err(|_| PolyError::Parse(format!("not a rational: {s:?}")))?;
    Ok(r)
}

/// Canonical `"p/q"` form (`"3"` when the denominator is 1).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn is_canonical_sign(&self) -> bool {
        self.is_positive()
    }
    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }
    fn from_json(v: &Value) -> Result<Self, PolyError> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => {
                Ok(Rational::from_integer(n.as_i64().unwrap().into()))
            }
            other => Err(PolyError::Parse(format!(
                "expected rational string, got {other}"
            ))),
        }
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn det_linear_forms(forms: &[Vec<Vec<Self>>], arity: usize) -> Option<MultiPoly<Self>> {
        Some(dense::det_linear_forms(forms, arity))
    }
    fn substitute_dense(p: &MultiPoly<Self>, a: &Mat<Self>) -> Option<MultiPoly<Self>> {
        Some(dense::substitute(p, &a.to_rows()))
    }
}

impl Coeff for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        GaussianRational::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re + &other.re, &self.im + &other.im)
    }
    fn sub(&self, other: &Self) -> Self {
        GaussianRational::new(&self.re - &other.re, &self.im - &other.im)
    }
    fn mul(&self, other: &Self) -> Self {
        GaussianRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
    fn neg(&self) -> Self {
        GaussianRational::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }
    fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }
    fn from_rational(r: Rational) -> Self {
        GaussianRational::new(r, Zero::zero())
    }
    fn sqrt_exact(&self) -> Option<Self> {
        // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|)/2, y = b / 2x
        let (a, b) = (&self.re, &self.im);
        if Zero::is_zero(b) {
            if let Some(x) = rational_sqrt(a) {
                return Some(GaussianRational::new(x, Zero::zero()));
            }
            return rational_sqrt(&-a).map(|y| GaussianRational::new(Zero::zero(), y));
        }
        let modulus = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        let x = rational_sqrt(&((a + &modulus) / &two))?;
        if Zero::is_zero(&x) {
            return None;
        }
        let y = b / (&two * &x);
        Some(GaussianRational::new(x, y))
    }
    fn is_canonical_sign(&self) -> bool {
        self.re.is_positive() || (Zero::is_zero(&self.re) && self.im.is_positive())
    }
    fn to_json(&self) -> Value {
        serde_json::json!({
            "re": rational_to_string(&self.re),
            "im": rational_to_string(&self.im),
        })
    }
    fn from_json(v: &Value) -> Result<Self, PolyError> {
        match v {
            Value::Object(map) => {
                let re = map
                    .get("re")
                    .map(Rational::from_json)
                    .transpose()?
                    .unwrap_or_else(Zero::zero);
                let im = map
                    .get("im")
                    .map(Rational::from_json)
                    .transpose()?
                    .unwrap_or_else(Zero::zero);
                Ok(GaussianRational::new(re, im))
            }
            other => Rational::from_json(other).map(GaussianRational::from_rational),
        }
    }
    fn det_linear_forms(forms: &[Vec<Vec<Self>>], arity: usize) -> Option<MultiPoly<Self>> {
        let real = forms
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| f.iter().map(GaussianRational::to_real).collect())
                    .collect()
            })
            .collect::<Option<Vec<Vec<Vec<Rational>>>>>()?;
        Some(dense::det_linear_forms(&real, arity).to_gaussian())
    }
    fn substitute_dense(p: &MultiPoly<Self>, a: &Mat<Self>) -> Option<MultiPoly<Self>> {
        let (p, a) = (p.to_rational()?, a.to_rational()?);
        Some(dense::substitute(&p, &a.to_rows()).to_gaussian())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(rational_to_string(&q(3, 1)), "3");
        assert_eq!(rational_to_string(&q(-4, 14)), "-2/7");
        assert_eq!(parse_rational("-2/7").unwrap(), q(-2, 7));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_roots() {
        assert_eq!(q(9, 4).sqrt_exact(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt_exact(), None);
        assert_eq!(q(-4, 1).sqrt_exact(), None);
    }

    #[test]
    fn gaussian_roots() {
        // (1 + 2i)^2 = -3 + 4i
        let z = GaussianRational::new(q(-3, 1), q(4, 1));
        let r = z.sqrt_exact().unwrap();
        assert_eq!(r.mul(&r), z);
        let minus_four = GaussianRational::from_rational(q(-4, 1));
        assert_eq!(
            minus_four.sqrt_exact().unwrap(),
            GaussianRational::new(q(0, 1), q(2, 1))
        );
        assert!(GaussianRational::new(q(0, 1), q(1, 1))
            .sqrt_exact()
            .is_none());
    }

    #[test]
    fn gaussian_inverse_and_conj() {
        let z = GaussianRational::new(q(1, 2), q(-3, 1));
        assert_eq!(z.mul(&z.inv().unwrap()), GaussianRational::one());
        assert_eq!(z.conj().conj(), z);
        assert!(GaussianRational::zero().inv().is_none());
    }
}
