use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use super::{Coeff, GaussianRational, Mat, PolyError, Rational};

/// Largest supported number of variables.
pub const MAX_ARITY: usize = 16;

/// Exponent vector ordered graded-lexicographically with `v1 > v2 > …`.
///
/// The derived ordering compares total degree first and then the exponent
/// array lexicographically, which is exactly grlex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u16,
    exps: [u8; MAX_ARITY],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            deg: 0,
            exps: [0; MAX_ARITY],
        }
    }

    pub fn from_exps(exps: &[u8]) -> Self {
        assert!(exps.len() <= MAX_ARITY, "at most {MAX_ARITY} variables");
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, i: usize) -> u8 {
        self.exps[i]
    }

    pub fn exps(&self, arity: usize) -> &[u8] {
        &self.exps[..arity]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_sub(*b)?;
        }
        m.deg -= other.deg;
        Some(m)
    }

    /// Square root of a monomial with all exponents even.
    pub fn halve(&self) -> Option<Monomial> {
        if self.exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let mut m = *self;
        m.exps.iter_mut().for_each(|e| *e /= 2);
        m.deg /= 2;
        Some(m)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "v{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.deg == 0 {
            return write!(f, "1");
        }
        self.write(f)
    }
}

/// Sparse polynomial in `arity` variables with exact coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Coeff = Rational> {
    arity: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity <= MAX_ARITY, "at most {MAX_ARITY} variables");
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        Self::term(arity, Monomial::one(), c)
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    /// The variable `v_{i+1}` (zero-based index).
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(
            i < arity,
            "variable index {i} out of range for arity {arity}"
        );
        Self::term(arity, Monomial::var(i), C::one())
    }

    pub fn term(arity: usize, m: Monomial, c: C) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i]·v_{i+1}`.
    pub fn linear(coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs.len(),
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(i), c.clone())),
        )
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of the monomial with the given exponent vector.
    pub fn coeff_of(&self, exps: &[u8]) -> C {
        self.coeff(&Monomial::from_exps(exps))
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has total degree `d` (the zero polynomial counts).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                existing.add_assign(c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul(s))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.mul(s)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.arity);
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod = c1.mul(c2);
                acc.entry(m1.mul(m2))
                    .and_modify(|c| c.add_assign(&prod))
                    .or_insert(prod);
            }
        }
        MultiPoly {
            arity: self.arity,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong length");
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&x.pow(e as u32));
                }
            }
            total.add_assign(&t);
        }
        total
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.arity, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(Coeff::conj)
    }

    /// `self -= other · (s · m)` in place.
    fn sub_term_multiple(&mut self, other: &Self, m: &Monomial, s: &C) {
        let neg = s.neg();
        for (k, c) in &other.terms {
            self.add_term(k.mul(m), &c.mul(&neg));
        }
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Grlex leading-term division: if some remainder's leading monomial is
    /// not a multiple of the divisor's, no exact quotient exists.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_arity(divisor);
        let (lm, lc) = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inv().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.arity);
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lm).ok_or(PolyError::NotDivisible)?;
            let qc = c.mul(&lc_inv);
            rem.sub_term_multiple(divisor, &qm, &qc);
            quot.add_term(qm, &qc);
        }
        Ok(quot)
    }

    /// Square root with canonical leading coefficient.
    ///
    /// The leading term of the root is the square root of the leading term of
    /// `self`; each further term is read off the leading term of the current
    /// remainder divided by twice that leading term. The remainder's leading
    /// monomial strictly decreases, so this terminates.
    pub fn sqrt(&self) -> Result<Self, PolyError> {
        let (lm, lc) = self.leading().ok_or(PolyError::NotAPerfectSquare)?;
        let root_m = lm.halve().ok_or(PolyError::NotAPerfectSquare)?;
        let mut root_c = lc.sqrt_exact().ok_or(PolyError::NotAPerfectSquare)?;
        if !root_c.is_canonical_sign() {
            root_c = root_c.neg();
        }
        let two_lead_inv = root_c
            .add(&root_c)
            .inv()
            .ok_or(PolyError::NotAPerfectSquare)?;
        let mut root = Self::term(self.arity, root_m, root_c);
        let mut rem = self.sub(&root.mul(&root));
        while let Some((m, c)) = rem.leading() {
            let tm = m.checked_div(&root_m).ok_or(PolyError::NotAPerfectSquare)?;
            if tm >= root_m {
                return Err(PolyError::NotAPerfectSquare);
            }
            let tc = c.mul(&two_lead_inv);
            // (root + t)^2 = root^2 + (2·root + t)·t
            let mut two_root_plus_t = root.scale(&C::from_i64(2));
            two_root_plus_t.add_term(tm, &tc);
            rem.sub_term_multiple(&two_root_plus_t, &tm, &tc);
            root.add_term(tm, &tc);
        }
        Ok(root)
    }

    /// `v ↦ self(A·v)` expanded exactly.
    pub fn linear_substitute(&self, a: &Mat<C>) -> Result<Self, PolyError> {
        self.check_substitution(a)?;
        match C::substitute_dense(self, a) {
            Some(p) => Ok(p),
            None => self.linear_substitute_sparse(a),
        }
    }

    fn check_substitution(&self, a: &Mat<C>) -> Result<(), PolyError> {
        let n = self.arity;
        if a.rows() != n || a.cols() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                got: a.rows().max(a.cols()),
            });
        }
        Ok(())
    }

    /// Term-by-term expansion of `self(A·v)`; the reference path for
    /// [`MultiPoly::linear_substitute`].
    pub fn linear_substitute_sparse(&self, a: &Mat<C>) -> Result<Self, PolyError> {
        self.check_substitution(a)?;
        let n = self.arity;
        let images: Vec<Self> = (0..n).map(|i| Self::linear(a.row(i))).collect();
        let mut powers: Vec<Vec<Self>> = images
            .iter()
            .map(|l| vec![Self::one(n), l.clone()])
            .collect();
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut t = Self::constant(n, c.clone());
            for i in 0..n {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// JSON form `{"arity": n, "terms": [{"exp": [...], "c": ...}]}`, terms
    /// listed from the grlex-leading one down.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!({"exp": m.exps(self.arity), "c": c.to_json()}))
            .collect();
        json!({"arity": self.arity, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let bad = |what: &str| PolyError::Parse(format!("polynomial JSON: {what}"));
        let arity = v
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing arity"))? as usize;
        if arity > MAX_ARITY {
            return Err(bad("arity too large"));
        }
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        let mut p = Self::zero(arity);
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without exp"))?;
            if exp.len() != arity {
                return Err(PolyError::DimensionMismatch {
                    expected: arity,
                    got: exp.len(),
                });
            }
            let exps = exp
                .iter()
                .map(|e| e.as_u64().filter(|&e| e < 256).map(|e| e as u8))
                .collect::<Option<Vec<u8>>>()
                .ok_or_else(|| bad("bad exponent"))?;
            let c = C::from_json(t.get("c").ok_or_else(|| bad("term without c"))?)?;
            p.add_term(Monomial::from_exps(&exps), &c);
        }
        Ok(p)
    }
}

impl MultiPoly<Rational> {
    /// Parse text such as `"-2*v1*v4 + v7^2 - 1/2*v8"` in `arity` variables.
    ///
    /// Each term is an optional rational coefficient followed by `*`-joined
    /// factors `vK` or `vK^E`; repeated factors multiply. A whole expression
    /// may also be written `c*(…)`.
    pub fn parse(arity: usize, text: &str) -> Result<Self, PolyError> {
        let bad = |why: &str| PolyError::Parse(format!("polynomial {text:?}: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some((scale, inner)) = compact.split_once("*(") {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| bad("unbalanced parenthesis"))?;
            return Ok(Self::parse(arity, inner)?.scale(&super::parse_rational(scale)?));
        }
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        let mut out = Self::zero(arity);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coeff = Rational::one();
            let mut exps = [0u8; MAX_ARITY];
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('v') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u8>().map_err(|_| bad("bad exponent"))?),
                        None => (var, 1),
                    };
                    let k: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if k == 0 || k > arity {
                        return Err(bad("variable index out of range"));
                    }
                    exps[k - 1] = exps[k - 1]
                        .checked_add(e)
                        .ok_or_else(|| bad("exponent overflow"))?;
                } else {
                    coeff = coeff.mul(&super::parse_rational(factor)?);
                }
            }
            if negative {
                coeff = coeff.neg();
            }
            out.add_term(Monomial::from_exps(&exps[..arity]), &coeff);
        }
        Ok(out)
    }

    /// Positive content: gcd of the numerators over lcm of the denominators,
    /// so that `self / content` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::from(0);
        let mut den = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if self.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// `self / content`, a primitive integer polynomial.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        self.scale(&c.inv().expect("content is nonzero"))
    }

    pub fn to_gaussian(&self) -> MultiPoly<GaussianRational> {
        self.map_coeffs(|c| GaussianRational::from(c.clone()))
    }
}

impl MultiPoly<GaussianRational> {
    /// The same polynomial over ℚ, if every coefficient is real.
    pub fn to_rational(&self) -> Option<MultiPoly<Rational>> {
        let mut p = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            p.add_term(*m, &c.to_real()?);
        }
        Some(p)
    }
}

/// Free-function form of [`MultiPoly::exact_divide`].
pub fn exact_divide<C: Coeff>(
    p: &MultiPoly<C>,
    q: &MultiPoly<C>,
) -> Result<MultiPoly<C>, PolyError> {
    p.exact_divide(q)
}

/// Free-function form of [`MultiPoly::sqrt`].
pub fn poly_sqrt<C: Coeff>(p: &MultiPoly<C>) -> Result<MultiPoly<C>, PolyError> {
    p.sqrt()
}

/// Free-function form of [`MultiPoly::linear_substitute`].
pub fn linear_substitute<C: Coeff>(
    p: &MultiPoly<C>,
    a: &Mat<C>,
) -> Result<MultiPoly<C>, PolyError> {
    p.linear_substitute(a)
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{body}")?;
            } else {
                if body != "1" {
                    write!(f, "{body}*")?;
                }
                m.write(f)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.arity, self)
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::{q, qi};

    fn v(i: usize) -> MultiPoly {
        MultiPoly::var(8, i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exps(&[1, 1, 1]);
        let b = Monomial::from_exps(&[1, 0, 0, 1, 0, 0, 1]);
        let c = Monomial::from_exps(&[2]);
        assert!(a > b);
        assert!(a > c);
        assert!(Monomial::var(0) > Monomial::var(1));
        assert!(Monomial::from_exps(&[0, 2]) > Monomial::var(0));
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&v(0) * &v(0)) - &(&v(1) * &v(1));
        let d = &v(0) - &v(1);
        assert_eq!(p.exact_divide(&d).unwrap(), &v(0) + &v(1));
    }

    #[test]
    fn coprime_monomials_do_not_divide() {
        assert_eq!(v(0).exact_divide(&v(1)), Err(PolyError::NotDivisible));
        assert_eq!(
            v(0).exact_divide(&MultiPoly::zero(8)),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn binomial_square_root() {
        let s = &v(0) + &v(1);
        assert_eq!((&s * &s).sqrt().unwrap(), s);
        let neg = s.neg();
        assert_eq!((&neg * &neg).sqrt().unwrap(), s);
    }

    #[test]
    fn square_free_monomial_has_no_root() {
        assert_eq!((&v(0) * &v(1)).sqrt(), Err(PolyError::NotAPerfectSquare));
        // v1^2 + v2^2 has a square leading term but is not a square
        let p = &(&v(0) * &v(0)) + &(&v(1) * &v(1));
        assert_eq!(p.sqrt(), Err(PolyError::NotAPerfectSquare));
        let two = MultiPoly::constant(8, qi(2));
        assert_eq!(
            (&two * &(&v(0) * &v(0))).sqrt(),
            Err(PolyError::NotAPerfectSquare)
        );
    }

    #[test]
    fn gaussian_square_root_normalization() {
        let i = GaussianRational::i();
        let x = MultiPoly::<GaussianRational>::var(2, 0);
        let y = MultiPoly::<GaussianRational>::var(2, 1);
        // (i·x + y)^2 = -x^2 + 2i·xy + y^2 ; canonical root has leading coeff i
        let s = &x.scale(&i) + &y;
        let r = (&s * &s).sqrt().unwrap();
        assert_eq!(r, s);
    }

    #[test]
    fn identity_substitution() {
        let p = &(&v(0) * &v(3)).scale(&qi(-2)) + &(&v(6) * &v(6));
        assert_eq!(p.linear_substitute(&Mat::identity(8)).unwrap(), p);
        assert!(p.linear_substitute(&Mat::identity(3)).is_err());
    }

    #[test]
    fn substitution_is_a_pullback() {
        // p = v1*v2, A = [[1,1],[0,2]] -> (v1+v2)(2 v2)
        let x = MultiPoly::<Rational>::var(2, 0);
        let y = MultiPoly::<Rational>::var(2, 1);
        let p = &x * &y;
        let a = Mat::from_rows(vec![vec![qi(1), qi(1)], vec![qi(0), qi(2)]]);
        let expected = &(&x + &y) * &y.scale(&qi(2));
        assert_eq!(p.linear_substitute(&a).unwrap(), expected);
    }

    #[test]
    fn display_and_eval() {
        let p = &(&v(0) * &v(3)).scale(&qi(-2)) + &MultiPoly::constant(8, q(1, 2));
        assert_eq!(p.to_string(), "-2*v1*v4 + 1/2");
        let pt: Vec<Rational> = (1..=8).map(qi).collect();
        assert_eq!(p.eval(&pt), q(-15, 2));
    }

    #[test]
    fn parse_text() {
        let p = MultiPoly::parse(8, "2*v7^2 - 2*v1*v4 + 1/2*v8*v8 - 3").unwrap();
        assert_eq!(p.coeff_of(&[0, 0, 0, 0, 0, 0, 2, 0]), qi(2));
        assert_eq!(p.coeff_of(&[1, 0, 0, 1, 0, 0, 0, 0]), qi(-2));
        assert_eq!(p.coeff_of(&[0, 0, 0, 0, 0, 0, 0, 2]), q(1, 2));
        assert_eq!(p.coeff(&Monomial::one()), qi(-3));
        assert_eq!(MultiPoly::parse(8, &p.to_string()).unwrap(), p);
        assert!(MultiPoly::parse(8, "v9").is_err());
        assert!(MultiPoly::parse(8, "v1 +").is_err());
        assert!(MultiPoly::parse(8, "x1").is_err());
        let scaled = MultiPoly::parse(8, "2*(-v1*v4 + v7^2)").unwrap();
        assert_eq!(scaled, MultiPoly::parse(8, "-2*v1*v4 + 2*v7^2").unwrap());
        assert!(MultiPoly::parse(8, "2*(v1").is_err());
    }

    #[test]
    fn content_and_primitive_part() {
        let p = MultiPoly::parse(8, "-4/3*v1 + 2*v2").unwrap();
        assert_eq!(p.content(), q(2, 3));
        assert_eq!(
            p.primitive_part(),
            MultiPoly::parse(8, "-2*v1 + 3*v2").unwrap()
        );
    }

    #[test]
    fn json_shape() {
        let p = &(&v(0) * &v(3)).scale(&q(-2, 7)) + &v(7);
        let j = p.to_json();
        assert_eq!(j["arity"], 8);
        assert_eq!(j["terms"][0]["c"], "-2/7");
        assert_eq!(j["terms"][0]["exp"], json!([1, 0, 0, 1, 0, 0, 0, 0]));
        assert_eq!(MultiPoly::<Rational>::from_json(&j).unwrap(), p);
        let bad = json!({"arity": 2, "terms": [{"exp": [1], "c": "1"}]});
        assert!(MultiPoly::<Rational>::from_json(&bad).is_err());
    }
}
