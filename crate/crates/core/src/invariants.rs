//! The relative invariants attached to a trivector x: the quadratic form
//! Q_x and cubic form F_x read off from the factorization of
//! P_x = det S_x, the dual trivector Φ_x, a semistability test, and the
//! transport law of the degree-16 invariant Δ.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::golden;
use crate::polyexact::univariate::UniPoly;
use crate::polyexact::{Coeff, GaussianRational, Mat, Monomial, MultiPoly, PolyError, Rational};
use crate::trivector::{
    act, p_poly, s_matrix, w, wedge3_apply, GroupElement, Trivector, TrivectorError, DIM,
};

/// The constant `c` in `P_x = c · Q_x · F_x²`.
pub const PAIR_CONSTANT: i64 = 1458;

/// Seed for the random lines used when no transport is supplied.
const LINE_SEED: u64 = 0x5155_4144;

/// Number of Gram unknowns `(i, j)` with `i ≤ j`.
const GRAM_UNKNOWNS: usize = DIM * (DIM + 1) / 2;

/// Random lines tried before giving up on recovering Q.
const MAX_LINES: usize = 400;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("P_x vanishes identically")]
    DegenerateOrbit,
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("quadratic form is degenerate (Gram determinant 0)")]
    DegenerateForm,
    #[error("transport does not carry w to the given trivector")]
    TransportMismatch,
    #[error("expected a homogeneous form of degree {expected} in {arity} variables")]
    WrongShape { expected: u32, arity: usize },
    #[error(transparent)]
    Trivector(#[from] TrivectorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn half<C: Coeff>() -> C {
    C::from_rational(crate::polyexact::q(1, 2))
}

/// Multiplier `t^a · (det g)^b` of a covariance law.
fn weight<C: Coeff>(el: &GroupElement<C>, t_exp: u32, det_exp: u32) -> C {
    el.t().pow(t_exp).mul(&el.det_g().pow(det_exp))
}

/// Quadratic form `Q(v) = vᵀ M v` stored through its symmetric Gram matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadraticForm<C: Coeff = Rational> {
    gram: Mat<C>,
}

impl<C: Coeff> QuadraticForm<C> {
    pub fn from_gram(gram: Mat<C>) -> Result<Self, InvariantError> {
        if !gram.is_square() || !gram.is_symmetric() {
            return Err(InvariantError::WrongShape {
                expected: 2,
                arity: gram.rows(),
            });
        }
        Ok(QuadraticForm { gram })
    }

    /// Gram matrix of a homogeneous quadratic polynomial (zero allowed).
    pub fn from_poly(p: &MultiPoly<C>) -> Result<Self, InvariantError> {
        let n = p.arity();
        if !p.is_zero() && !p.is_homogeneous(2) {
            return Err(InvariantError::WrongShape {
                expected: 2,
                arity: n,
            });
        }
        let half = half::<C>();
        let gram = Mat::from_fn(n, n, |i, j| {
            let m = Monomial::var(i).mul(&Monomial::var(j));
            let c = p.coeff(&m);
            if i == j {
                c
            } else {
                c.mul(&half)
            }
        });
        Ok(QuadraticForm { gram })
    }

    pub fn gram(&self) -> &Mat<C> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn to_poly(&self) -> MultiPoly<C> {
        let n = self.dim();
        let two = C::from_i64(2);
        let mut p = MultiPoly::zero(n);
        for i in 0..n {
            for j in i..n {
                let c = self.gram.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let c = if i == j { c.clone() } else { c.mul(&two) };
                p.add_term(Monomial::var(i).mul(&Monomial::var(j)), &c);
            }
        }
        p
    }

    pub fn eval(&self, v: &[C]) -> C {
        self.polarize(v, v)
    }

    /// The symmetric bilinear form `vᵀ M v′`.
    pub fn polarize(&self, v: &[C], v2: &[C]) -> C {
        let mv = self.gram.mul_vec(v2);
        v.iter()
            .zip(&mv)
            .fold(C::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    pub fn det(&self) -> C {
        self.gram.det()
    }

    pub fn scale(&self, s: &C) -> Self {
        QuadraticForm {
            gram: self.gram.scale(s),
        }
    }

    /// `v ↦ t¹⁰ (det g)⁴ Q(g⁻¹ v)`, the quadratic invariant of `(t, g)·x`.
    pub fn transport(&self, el: &GroupElement<C>) -> Self {
        let gi = el.g().inverse().expect("group elements are invertible");
        let gram = gi
            .transpose()
            .mul(&self.gram)
            .mul(&gi)
            .scale(&weight(el, 10, 4));
        QuadraticForm { gram }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QuadraticForm<D> {
        QuadraticForm {
            gram: self.gram.map(f),
        }
    }

    /// JSON form `{"gram": [[...]]}`.
    pub fn to_json(&self) -> Value {
        json!({ "gram": self.gram.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, InvariantError> {
        let g = v
            .get("gram")
            .ok_or_else(|| PolyError::Parse("quadratic form JSON: missing gram".into()))?;
        Self::from_gram(Mat::from_json(g)?)
    }
}

impl<C: Coeff> fmt::Display for QuadraticForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Homogeneous cubic polynomial (or zero).
#[derive(Clone, PartialEq, Debug)]
pub struct CubicForm<C: Coeff = Rational> {
    poly: MultiPoly<C>,
}

impl<C: Coeff> CubicForm<C> {
    pub fn new(poly: MultiPoly<C>) -> Result<Self, InvariantError> {
        if !poly.is_zero() && !poly.is_homogeneous(3) {
            return Err(InvariantError::WrongShape {
                expected: 3,
                arity: poly.arity(),
            });
        }
        Ok(CubicForm { poly })
    }

    pub fn poly(&self) -> &MultiPoly<C> {
        &self.poly
    }

    pub fn eval(&self, v: &[C]) -> C {
        self.poly.eval(v)
    }

    pub fn neg(&self) -> Self {
        CubicForm {
            poly: self.poly.neg(),
        }
    }

    /// `v ↦ t⁷ (det g)³ F(g⁻¹ v)`, the cubic invariant of `(t, g)·x`.
    pub fn transport(&self, el: &GroupElement<C>) -> Self {
        let gi = el.g().inverse().expect("group elements are invertible");
        let poly = self
            .poly
            .linear_substitute(&gi)
            .expect("8x8 substitution")
            .scale(&weight(el, 7, 3));
        CubicForm { poly }
    }

    pub fn to_json(&self) -> Value {
        self.poly.to_json()
    }

    pub fn from_json(v: &Value) -> Result<Self, InvariantError> {
        Self::new(MultiPoly::from_json(v)?)
    }
}

impl<C: Coeff> fmt::Display for CubicForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Q_x and F_x together with the polynomial they were extracted from.
#[derive(Clone, PartialEq, Debug)]
pub struct InvariantPair {
    pub q: QuadraticForm,
    pub f: CubicForm,
    /// True when F's global sign comes from a transport of w rather than a
    /// normalization convention.
    pub sign_exact: bool,
    pub source: MultiPoly,
}

impl InvariantPair {
    /// `c · Q · F²`, which equals `source` for every pair this module returns.
    pub fn product(&self) -> MultiPoly {
        let f = self.f.poly();
        self.q
            .to_poly()
            .mul(&f.mul(f))
            .scale(&Rational::from_i64(PAIR_CONSTANT))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q.to_json(),
            "f": self.f.to_json(),
            "sign_exact": self.sign_exact,
        })
    }
}

/// Element of ∧³W* in the basis `f_ijk`, stored like a trivector.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct DualTrivector {
    inner: Trivector,
}

impl DualTrivector {
    pub fn new(inner: Trivector) -> Self {
        DualTrivector { inner }
    }

    pub fn as_trivector(&self) -> &Trivector {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &Rational)> {
        self.inner.terms()
    }

    /// `Φ(e_a, e_b, e_c)` for 1-based indices in any order.
    pub fn eval_basis(&self, a: usize, b: usize, c: usize) -> Rational {
        self.inner.coeff(a, b, c)
    }

    /// `Φ(u, v, x)` for arbitrary coordinate vectors.
    pub fn eval(&self, u: &[Rational], v: &[Rational], x: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (&[i, j, k], c) in self.terms() {
            let (i, j, k) = (i as usize - 1, j as usize - 1, k as usize - 1);
            let minor = Mat::from_rows(vec![
                vec![u[i].clone(), v[i].clone(), x[i].clone()],
                vec![u[j].clone(), v[j].clone(), x[j].clone()],
                vec![u[k].clone(), v[k].clone(), x[k].clone()],
            ])
            .det();
            total += c * minor;
        }
        total
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DualTrivector {
            inner: self.inner.scale(s),
        }
    }

    /// Action of `g` on ∧³W*, i.e. `∧³(g⁻ᵀ)`.
    pub fn push_forward(&self, g: &Mat) -> Result<Self, InvariantError> {
        let dual = g.inverse()?.transpose();
        Ok(DualTrivector {
            inner: wedge3_apply(&dual, &self.inner),
        })
    }

    /// JSON form `{"terms": [{"fijk": [i,j,k], "c": ...}]}`.
    pub fn to_json(&self) -> Value {
        self.inner.to_json_keyed("fijk")
    }

    pub fn from_json(v: &Value) -> Result<Self, InvariantError> {
        Ok(DualTrivector {
            inner: Trivector::from_json_keyed(v, "fijk")?,
        })
    }
}

impl fmt::Display for DualTrivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.to_string().replace('e', "f"))
    }
}

fn to_gaussian_trivector(x: &Trivector) -> Trivector<GaussianRational> {
    x.map(|c| GaussianRational::from(c.clone()))
}

fn real_poly(p: &MultiPoly<GaussianRational>, what: &str) -> Result<MultiPoly, InvariantError> {
    p.to_rational().ok_or_else(|| {
        InvariantError::FactorizationFailed(format!("transported {what} is not real"))
    })
}

/// Q_x and F_x for `x`.
///
/// With a transport `(t, g)` satisfying `x = (t, g)·w`, both forms are the
/// transported forms of w and F's sign is exact. Without one, they are read
/// off from `P_x` alone, with F scaled to a primitive integer polynomial with
/// positive leading coefficient. Either way `P_x = c · Q · F²` is checked
/// exactly before returning.
pub fn factor_invariants(
    x: &Trivector,
    transport: Option<&GroupElement<GaussianRational>>,
) -> Result<InvariantPair, InvariantError> {
    let source = p_poly(x);
    if source.is_zero() {
        return Err(InvariantError::DegenerateOrbit);
    }
    let (q, f, sign_exact) = match transport {
        Some(el) => {
            if act(el, &to_gaussian_trivector(&w())) != to_gaussian_trivector(x) {
                return Err(InvariantError::TransportMismatch);
            }
            let q_w = QuadraticForm::from_poly(&golden::q_w())?
                .map(|c| GaussianRational::from(c.clone()));
            let f_w = CubicForm::new(golden::f_w().to_gaussian())?;
            let q = QuadraticForm::from_poly(&real_poly(
                &q_w.transport(el).to_poly(),
                "quadratic form",
            )?)?;
            let f = CubicForm::new(real_poly(f_w.transport(el).poly(), "cubic form")?)?;
            (q, f, true)
        }
        None => {
            let (q, f) = factor_from_p(x, &source)?;
            (q, f, false)
        }
    };
    let pair = InvariantPair {
        q,
        f,
        sign_exact,
        source,
    };
    if pair.product() != pair.source {
        return Err(InvariantError::FactorizationFailed(
            "c·Q·F² differs from P_x".into(),
        ));
    }
    Ok(pair)
}

fn failed(msg: &str) -> InvariantError {
    InvariantError::FactorizationFailed(msg.into())
}

/// Quadratic factor of `P(a + s·b)` normalized to value 1 at `s = 0`, when
/// the restriction has the expected square-free shape `q(s) · f(s)²` with
/// `deg q = 2`.
fn line_quadratic(s_a: &Mat, s_b: &Mat) -> Option<UniPoly> {
    let nodes: Vec<Rational> = (0..=DIM as i64).map(Rational::from_i64).collect();
    let values: Vec<Rational> = nodes.iter().map(|s| s_a.add(&s_b.scale(s)).det()).collect();
    let p = UniPoly::interpolate(&nodes, &values).ok()?;
    let repeated = p.gcd(&p.derivative());
    let quad = p.exact_div(&repeated.mul(&repeated)).ok()?;
    if quad.degree() != Some(2) || repeated.degree() != Some(3) {
        return None;
    }
    let at_zero = quad.coeff(0);
    Some(quad.scale(&at_zero.inv()?))
}

/// Incremental row echelon form used to collect independent equations.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>, Rational)>,
}

impl Echelon {
    /// Reduce `(row, rhs)` against the stored rows; keep it if independent.
    fn insert(&mut self, mut row: Vec<Rational>, mut rhs: Rational) -> bool {
        for (pivot, r, b) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let factor = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(r) {
                *x -= &factor * y;
            }
            rhs -= &factor * b;
        }
        let Some(pivot) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[pivot].inv().expect("nonzero pivot");
        for x in row.iter_mut() {
            *x *= &inv;
        }
        rhs *= &inv;
        // keep earlier rows reduced in the new pivot column
        for (_, r, b) in self.rows.iter_mut() {
            if r[pivot].is_zero() {
                continue;
            }
            let factor = r[pivot].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                *x -= &factor * y;
            }
            *b -= &factor * &rhs;
        }
        self.rows.push((pivot, row, rhs));
        true
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (pivot, _, b) in &self.rows {
            out[*pivot] = b.clone();
        }
        out
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..DIM)
        .map(|_| Rational::from_i64(rng.gen_range(-3..=3)))
        .collect()
}

/// Recover `(Q, F)` from `P_x` alone.
///
/// On a line `a + s·b` the square-free decomposition of the restriction
/// isolates `Q(a + s·b)`, whose `s²` coefficient relative to `Q(a)` is
/// `Q(b) / Q(a)`. Enough independent directions determine `Q / Q(a)`, and
/// the rest follows by exact division and a square root.
fn factor_from_p(
    x: &Trivector,
    p: &MultiPoly,
) -> Result<(QuadraticForm, CubicForm), InvariantError> {
    let s = s_matrix(x);
    let mut rng = ChaCha8Rng::seed_from_u64(LINE_SEED);
    let mut base = None;
    for _ in 0..MAX_LINES {
        let a = random_point(&mut rng);
        if !p.eval(&a).is_zero() {
            base = Some(a);
            break;
        }
    }
    let a = base.ok_or_else(|| failed("no point with P ≠ 0 found"))?;
    let s_a = s.eval(&a);

    let pairs: Vec<(usize, usize)> = (0..DIM)
        .flat_map(|i| (i..DIM).map(move |j| (i, j)))
        .collect();
    let mut system = Echelon { rows: Vec::new() };
    for _ in 0..MAX_LINES {
        if system.rows.len() == GRAM_UNKNOWNS {
            break;
        }
        let b = random_point(&mut rng);
        let Some(quad) = line_quadratic(&s_a, &s.eval(&b)) else {
            continue;
        };
        let row = pairs.iter().map(|&(i, j)| &b[i] * &b[j]).collect();
        system.insert(row, quad.coeff(2));
    }
    if system.rows.len() < GRAM_UNKNOWNS {
        return Err(failed(
            "the quadratic factor is not visible on enough lines",
        ));
    }
    let coeffs = system.solution(GRAM_UNKNOWNS);
    let q_scaled = MultiPoly::from_terms(
        DIM,
        pairs
            .iter()
            .zip(coeffs)
            .map(|(&(i, j), c)| (Monomial::var(i).mul(&Monomial::var(j)), c)),
    );
    let rest = p
        .exact_divide(&q_scaled)
        .map_err(|_| failed("P is not divisible by the recovered quadratic"))?;
    let mut square = rest.primitive_part();
    if square
        .leading()
        .is_some_and(|(_, c)| !c.is_canonical_sign())
    {
        square = square.neg();
    }
    let f = square
        .sqrt()
        .map_err(|_| failed("cofactor of the quadratic is not a square"))?;
    let denom = f.mul(&f).scale(&Rational::from_i64(PAIR_CONSTANT));
    let q = p
        .exact_divide(&denom)
        .map_err(|_| failed("P is not divisible by c·F²"))?;
    Ok((QuadraticForm::from_poly(&q)?, CubicForm::new(f)?))
}

/// `Φ_x = ∧³(M) x` where `M` is the Gram matrix of `q`, viewed as a map
/// W → W*.
pub fn phi_from_gram(q: &QuadraticForm, x: &Trivector) -> Result<DualTrivector, InvariantError> {
    if q.det().is_zero() {
        return Err(InvariantError::DegenerateForm);
    }
    Ok(DualTrivector::new(wedge3_apply(q.gram(), x)))
}

/// Φ_x built from the quadratic invariant of `factor_invariants(x, transport)`.
pub fn phi(
    x: &Trivector,
    transport: Option<&GroupElement<GaussianRational>>,
) -> Result<DualTrivector, InvariantError> {
    let pair = factor_invariants(x, transport)?;
    phi_from_gram(&pair.q, x)
}

/// Whether `x` lies in the open orbit: P_x factors and Q_x is nondegenerate.
pub fn is_semistable(x: &Trivector) -> bool {
    match factor_invariants(x, None) {
        Ok(pair) => !pair.q.det().is_zero(),
        Err(_) => false,
    }
}

/// `Δ((t, g)·w) = t¹⁶ (det g)⁶`.
pub fn delta_transport<C: Coeff>(t: &C, g: &Mat<C>) -> C {
    t.pow(16).mul(&g.det().pow(6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::{q, qi};
    use crate::trivector::w_prime;

    fn unit(i: usize) -> Vec<Rational> {
        (0..DIM).map(|k| qi(i64::from(k == i))).collect()
    }

    #[test]
    fn gram_round_trip_and_polarization() {
        let q_w = QuadraticForm::from_poly(&golden::q_w()).unwrap();
        assert_eq!(q_w.to_poly(), golden::q_w());
        assert_eq!(q_w.polarize(&unit(6), &unit(6)), qi(2));
        assert_eq!(q_w.polarize(&unit(0), &unit(3)), qi(-1));
        assert_eq!(q_w.polarize(&unit(2), &vec![qi(0); DIM]), qi(0));
        assert_eq!(q_w.det(), qi(-3));
        let j = q_w.to_json();
        assert_eq!(QuadraticForm::from_json(&j).unwrap(), q_w);
    }

    #[test]
    fn factor_w_without_transport() {
        let pair = factor_invariants(&w(), None).unwrap();
        assert!(!pair.sign_exact);
        assert_eq!(pair.q.to_poly(), golden::q_w());
        assert_eq!(pair.f.poly(), &golden::f_w().neg());
        assert!(pair.f.poly().leading().unwrap().1 > &qi(0));
    }

    #[test]
    fn factor_w_with_identity_transport() {
        let pair = factor_invariants(&w(), Some(&GroupElement::identity())).unwrap();
        assert!(pair.sign_exact);
        assert_eq!(pair.q.to_poly(), golden::q_w());
        assert_eq!(pair.f.poly(), &golden::f_w());
    }

    #[test]
    fn transport_must_match() {
        let el = GroupElement::new(GaussianRational::from(qi(2)), Mat::identity(DIM)).unwrap();
        assert_eq!(
            factor_invariants(&w(), Some(&el)),
            Err(InvariantError::TransportMismatch)
        );
    }

    #[test]
    fn w_prime_factors_with_degenerate_quadratic() {
        let pair = factor_invariants(&w_prime(), None).unwrap();
        assert_eq!(pair.q.to_poly(), golden::q_w_prime().neg());
        assert!(pair.q.det().is_zero());
        assert!(!is_semistable(&w_prime()));
    }

    #[test]
    fn zero_is_degenerate() {
        assert_eq!(
            factor_invariants(&Trivector::zero(), None),
            Err(InvariantError::DegenerateOrbit)
        );
        assert!(!is_semistable(&Trivector::zero()));
        assert!(is_semistable(&w()));
    }

    #[test]
    fn phi_of_w() {
        let phi_w = phi(&w(), None).unwrap();
        assert_eq!(phi_w, golden::phi_w());
        assert_eq!(phi_w.eval_basis(1, 2, 3), qi(-1));
        assert_eq!(phi_w.eval_basis(2, 1, 3), qi(1));
        assert_eq!(phi_w.eval(&unit(0), &unit(1), &unit(2)), qi(-1));
        let j = phi_w.to_json();
        assert!(j.to_string().contains("fijk"));
        assert_eq!(DualTrivector::from_json(&j).unwrap(), phi_w);
    }

    #[test]
    fn degenerate_gram_is_rejected() {
        let zero = QuadraticForm::from_gram(Mat::zeros(DIM, DIM)).unwrap();
        assert_eq!(
            phi_from_gram(&zero, &w()),
            Err(InvariantError::DegenerateForm)
        );
    }

    #[test]
    fn delta_examples() {
        let id: Mat = Mat::identity(DIM);
        assert_eq!(delta_transport(&qi(1), &id), qi(1));
        assert_eq!(delta_transport(&qi(2), &id), qi(1 << 16));
        let mut d = vec![qi(1); DIM];
        d[0] = qi(2);
        assert_eq!(delta_transport(&qi(1), &Mat::diag(&d)), qi(64));
        assert_eq!(delta_transport(&q(1, 2), &id), q(1, 1 << 16));
    }

    #[test]
    fn cubic_shape_is_checked() {
        assert!(CubicForm::new(golden::q_w()).is_err());
        assert!(QuadraticForm::from_poly(&golden::f_w()).is_err());
    }
}
