//! Trivectors in ∧³W for an 8-dimensional W, the action of GL(1)×GL(8),
//! the map D₃ : ∧³W → ∧²W ⊗ W, and the symmetric matrix of linear forms
//! built from x ∧ D₃(x) ∧ D₃(x).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::polyexact::{Coeff, Mat, MultiPoly, PolyError, PolyMatrix, Rational};

/// Dimension of the underlying space W.
pub const DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrivectorError {
    #[error("basis index {0} is outside 1..=8")]
    IndexOutOfRange(usize),
    #[error("group element is not invertible (t = 0 or det g = 0)")]
    NotInvertible,
    #[error("group element matrix must be 8x8, got {0}x{1}")]
    BadShape(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Sign of the permutation sorting `idx`, or `None` when an index repeats.
pub fn permutation_sign(idx: &mut [u8]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] != w[1]).then_some(sign)
}

fn check_index(i: usize) -> Result<u8, TrivectorError> {
    if (1..=DIM).contains(&i) {
        Ok(i as u8)
    } else {
        Err(TrivectorError::IndexOutOfRange(i))
    }
}

/// Rewrite `c·e_i ∧ e_j ∧ e_k` over a sorted triple.
///
/// Returns `Ok(None)` when an index repeats, since the wedge then vanishes.
pub fn wedge_canonicalize<C: Coeff>(
    i: usize,
    j: usize,
    k: usize,
    c: C,
) -> Result<Option<([u8; 3], C)>, TrivectorError> {
    let mut idx = [check_index(i)?, check_index(j)?, check_index(k)?];
    Ok(permutation_sign(&mut idx).map(|s| (idx, if s < 0 { c.neg() } else { c })))
}

/// Sparse element of ∧³W keyed by sorted 1-based index triples.
#[derive(Clone, PartialEq)]
pub struct Trivector<C: Coeff = Rational> {
    terms: BTreeMap<[u8; 3], C>,
}

impl<C: Coeff> Default for Trivector<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Trivector<C> {
    pub fn zero() -> Self {
        Trivector {
            terms: BTreeMap::new(),
        }
    }

    /// The basis trivector `e_i ∧ e_j ∧ e_k` (indices in any order).
    pub fn basis(i: usize, j: usize, k: usize) -> Result<Self, TrivectorError> {
        let mut t = Self::zero();
        t.add_wedge(i, j, k, &C::one())?;
        Ok(t)
    }

    /// Sum of `c·e_i ∧ e_j ∧ e_k` over the given terms.
    pub fn from_terms(
        terms: impl IntoIterator<Item = ([usize; 3], C)>,
    ) -> Result<Self, TrivectorError> {
        let mut t = Self::zero();
        for ([i, j, k], c) in terms {
            t.add_wedge(i, j, k, &c)?;
        }
        Ok(t)
    }

    pub fn add_wedge(&mut self, i: usize, j: usize, k: usize, c: &C) -> Result<(), TrivectorError> {
        if let Some((key, c)) = wedge_canonicalize(i, j, k, c.clone())? {
            self.add_sorted(key, &c);
        }
        Ok(())
    }

    fn add_sorted(&mut self, key: [u8; 3], c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                existing.add_assign(c);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by sorted 1-based triples.
    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &C)> {
        self.terms.iter()
    }

    /// Coefficient of `e_i ∧ e_j ∧ e_k`, accounting for the ordering sign.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> C {
        match wedge_canonicalize(i, j, k, C::one()) {
            Ok(Some((key, s))) => self.terms.get(&key).map_or_else(C::zero, |c| c.mul(&s)),
            _ => C::zero(),
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_sorted(*k, &c.mul(s));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_sorted(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Trivector<D> {
        let mut out = Trivector::zero();
        for (k, c) in &self.terms {
            out.add_sorted(*k, &f(c));
        }
        out
    }

    /// JSON form `{"terms": [{"ijk": [i,j,k], "c": ...}]}`.
    pub fn to_json(&self) -> Value {
        self.to_json_keyed("ijk")
    }

    pub fn from_json(v: &Value) -> Result<Self, TrivectorError> {
        Self::from_json_keyed(v, "ijk")
    }

    pub(crate) fn to_json_keyed(&self, key: &str) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| json!({ key: k, "c": c.to_json() }))
            .collect();
        json!({ "terms": terms })
    }

    pub(crate) fn from_json_keyed(v: &Value, key: &str) -> Result<Self, TrivectorError> {
        let parse =
            |msg: &str| TrivectorError::Poly(PolyError::Parse(format!("trivector JSON: {msg}")));
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| parse("missing terms"))?;
        let mut out = Self::zero();
        for t in terms {
            let idx = t
                .get(key)
                .and_then(Value::as_array)
                .filter(|a| a.len() == 3)
                .ok_or_else(|| parse("each term needs a 3-element index array"))?;
            let idx = idx
                .iter()
                .map(|x| x.as_u64().map(|x| x as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| parse("indices must be integers"))?;
            let c = C::from_json(t.get("c").ok_or_else(|| parse("term without c"))?)?;
            out.add_wedge(idx[0], idx[1], idx[2], &c)?;
        }
        Ok(out)
    }
}

impl Trivector<Rational> {
    /// Build from integer coefficients over 1-based triples.
    pub fn from_int_terms(terms: &[([usize; 3], i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, Rational::from_i64(c))))
            .expect("indices in range")
    }
}

impl<C: Coeff> fmt::Display for Trivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ([i, j, k], c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (n == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if body != "1" {
                write!(f, "{body}*")?;
            }
            write!(f, "e{i}{j}{k}")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Trivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trivector({self})")
    }
}

/// The orbit representative `e123 + e456 + e7∧(e14 − e25) + e8∧(e14 − e36)`.
pub fn w() -> Trivector {
    Trivector::from_int_terms(&[
        ([1, 2, 3], 1),
        ([4, 5, 6], 1),
        ([7, 1, 4], 1),
        ([7, 2, 5], -1),
        ([8, 1, 4], 1),
        ([8, 3, 6], -1),
    ])
}

/// The degenerate point `e123 + e156 + e246 + e7∧(e14 − e25) + e8∧(e14 − e36)`.
pub fn w_prime() -> Trivector {
    Trivector::from_int_terms(&[
        ([1, 2, 3], 1),
        ([1, 5, 6], 1),
        ([2, 4, 6], 1),
        ([7, 1, 4], 1),
        ([7, 2, 5], -1),
        ([8, 1, 4], 1),
        ([8, 3, 6], -1),
    ])
}

/// Block matrix swapping the first two coordinate triples and negating the
/// last two coordinates; it fixes [`w`].
pub fn tau_matrix() -> Mat {
    Mat::from_fn(DIM, DIM, |i, j| {
        let v = match (i, j) {
            (0..=2, _) if j == i + 3 => 1,
            (3..=5, _) if i == j + 3 => 1,
            (6 | 7, _) if i == j => -1,
            _ => 0,
        };
        Rational::from_i64(v)
    })
}

/// Element `(t, g)` of GL(1) × GL(8).
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement<C: Coeff = Rational> {
    t: C,
    g: Mat<C>,
}

impl<C: Coeff> GroupElement<C> {
    pub fn new(t: C, g: Mat<C>) -> Result<Self, TrivectorError> {
        if g.rows() != DIM || g.cols() != DIM {
            return Err(TrivectorError::BadShape(g.rows(), g.cols()));
        }
        if t.is_zero() || g.det().is_zero() {
            return Err(TrivectorError::NotInvertible);
        }
        Ok(GroupElement { t, g })
    }

    pub fn identity() -> Self {
        GroupElement {
            t: C::one(),
            g: Mat::identity(DIM),
        }
    }

    pub fn t(&self) -> &C {
        &self.t
    }

    pub fn g(&self) -> &Mat<C> {
        &self.g
    }

    pub fn det_g(&self) -> C {
        self.g.det()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            t: self.t.mul(&other.t),
            g: self.g.mul(&other.g),
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            t: self.t.inv().expect("t is nonzero"),
            g: self.g.inverse().expect("g is invertible"),
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GroupElement<D> {
        GroupElement {
            t: f(&self.t),
            g: self.g.map(f),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"t": self.t.to_json(), "g": self.g.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self, TrivectorError> {
        let t = match v.get("t") {
            Some(t) => C::from_json(t)?,
            None => C::one(),
        };
        let g = v.get("g").ok_or_else(|| {
            TrivectorError::Poly(PolyError::Parse("group element JSON: missing g".into()))
        })?;
        Self::new(t, Mat::from_json(g)?)
    }
}

/// `(t, g)·x = t · Σ c · g e_i ∧ g e_j ∧ g e_k`.
pub fn act<C: Coeff>(el: &GroupElement<C>, x: &Trivector<C>) -> Trivector<C> {
    wedge3_apply(&el.g, x).scale(&el.t)
}

/// `∧³m` applied to `x` for any 8×8 matrix `m` (not necessarily invertible).
pub fn wedge3_apply<C: Coeff>(g: &Mat<C>, x: &Trivector<C>) -> Trivector<C> {
    assert_eq!(
        (g.rows(), g.cols()),
        (DIM, DIM),
        "wedge3_apply needs an 8x8 matrix"
    );
    let mut out = Trivector::zero();
    for (&[i, j, k], c) in x.terms() {
        let (i, j, k) = (i as usize - 1, j as usize - 1, k as usize - 1);
        for a in 0..DIM {
            let ga = g.get(a, i);
            if ga.is_zero() {
                continue;
            }
            let ca = c.mul(ga);
            for b in 0..DIM {
                let gb = g.get(b, j);
                if gb.is_zero() || b == a {
                    continue;
                }
                let cb = ca.mul(gb);
                for d in 0..DIM {
                    let gd = g.get(d, k);
                    if gd.is_zero() || d == a || d == b {
                        continue;
                    }
                    out.add_wedge(a + 1, b + 1, d + 1, &cb.mul(gd))
                        .expect("indices in range");
                }
            }
        }
    }
    out
}

/// Sparse element of ∧²W ⊗ W keyed by (sorted pair, index), all 1-based.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorD3<C: Coeff = Rational> {
    terms: BTreeMap<([u8; 2], u8), C>,
}

impl<C: Coeff> TensorD3<C> {
    pub fn zero() -> Self {
        TensorD3 {
            terms: BTreeMap::new(),
        }
    }

    /// Add `c · e_i ∧ e_j ⊗ e_k`.
    pub fn add_term(&mut self, i: u8, j: u8, k: u8, c: &C) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j {
            ([i, j], c.clone())
        } else {
            ([j, i], c.neg())
        };
        match self.terms.get_mut(&(key, k)) {
            Some(existing) => {
                existing.add_assign(&c);
                if existing.is_zero() {
                    self.terms.remove(&(key, k));
                }
            }
            None => {
                self.terms.insert((key, k), c);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&([u8; 2], u8), &C)> {
        self.terms.iter()
    }

    /// Coefficient of `e_i ∧ e_j ⊗ e_k` for a sorted pair `i < j`.
    pub fn coeff(&self, pair: [u8; 2], k: u8) -> C {
        self.terms.get(&(pair, k)).cloned().unwrap_or_else(C::zero)
    }
}

/// `D₃(e_a ∧ e_b ∧ e_c) = e_b∧e_c ⊗ e_a − e_a∧e_c ⊗ e_b + e_a∧e_b ⊗ e_c`,
/// extended linearly.
pub fn d3<C: Coeff>(x: &Trivector<C>) -> TensorD3<C> {
    let mut out = TensorD3::zero();
    for (&[a, b, c], coef) in x.terms() {
        out.add_term(b, c, a, coef);
        out.add_term(a, c, b, &coef.neg());
        out.add_term(a, b, c, coef);
    }
    out
}

/// Sign attached to the 7-form omitting `e_k` (1-based) when it is read as
/// a multiple of the dual basis vector `f_k`.
pub fn seven_form_sign(k: usize) -> i64 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

/// 8×8 symmetric matrix whose entries are covectors (linear forms in v).
#[derive(Clone, PartialEq)]
pub struct SMatrix<C: Coeff = Rational> {
    entries: Vec<Vec<C>>,
}

impl<C: Coeff> SMatrix<C> {
    pub fn zero() -> Self {
        SMatrix {
            entries: vec![vec![C::zero(); DIM]; DIM * DIM],
        }
    }

    /// Build from 64 covectors listed row by row.
    pub fn from_entries(entries: Vec<Vec<C>>) -> Self {
        assert_eq!(entries.len(), DIM * DIM, "an S-matrix has 64 entries");
        assert!(
            entries.iter().all(|cv| cv.len() == DIM),
            "covectors have 8 coordinates"
        );
        SMatrix { entries }
    }

    /// Build from 0-based `(row, col) -> covector`.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Vec<C>) -> Self {
        let mut entries = Vec::with_capacity(DIM * DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                let cv = f(i, j);
                assert_eq!(cv.len(), DIM, "covectors have 8 coordinates");
                entries.push(cv);
            }
        }
        SMatrix { entries }
    }

    /// Covector in entry `(i, j)`, 0-based, as coefficients of `f₁ … f₈`.
    pub fn entry(&self, i: usize, j: usize) -> &[C] {
        &self.entries[i * DIM + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Coeff::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..DIM).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Constant matrix obtained by pairing every entry with `v`.
    pub fn eval(&self, v: &[C]) -> Mat<C> {
        Mat::from_fn(DIM, DIM, |i, j| {
            let mut acc = C::zero();
            for (a, b) in self.entry(i, j).iter().zip(v) {
                acc.add_assign(&a.mul(b));
            }
            acc
        })
    }

    /// The same matrix with entries viewed as linear polynomials in `v₁ … v₈`.
    pub fn to_poly_matrix(&self) -> PolyMatrix<C> {
        PolyMatrix::from_fn(DIM, DIM, |i, j| MultiPoly::linear(self.entry(i, j)))
    }

    /// The covector matrix `v ↦ t³·det(g)·g·S(g⁻¹v)·gᵀ`.
    pub fn transform(&self, el: &GroupElement<C>) -> Self {
        let g = el.g();
        let ginv = g.inverse().expect("g is invertible");
        let scale = el.t().pow(3).mul(&el.det_g());
        // entries pulled back along g⁻¹: covector c ↦ c·g⁻¹
        let pulled: Vec<Vec<C>> = self
            .entries
            .iter()
            .map(|cv| (0..DIM).map(|l| dot_col(cv, &ginv, l)).collect())
            .collect();
        Self::from_fn(|i, j| {
            let mut acc = vec![C::zero(); DIM];
            for a in 0..DIM {
                let gia = g.get(i, a);
                if gia.is_zero() {
                    continue;
                }
                for b in 0..DIM {
                    let gjb = g.get(j, b);
                    if gjb.is_zero() {
                        continue;
                    }
                    let w = gia.mul(gjb);
                    for (slot, c) in acc.iter_mut().zip(&pulled[a * DIM + b]) {
                        if !c.is_zero() {
                            slot.add_assign(&w.mul(c));
                        }
                    }
                }
            }
            acc.iter().map(|c| c.mul(&scale)).collect()
        })
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SMatrix<D> {
        SMatrix {
            entries: self
                .entries
                .iter()
                .map(|cv| cv.iter().map(&f).collect())
                .collect(),
        }
    }

    /// Rows of covector strings such as `"3f7 - 3f8"`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..DIM)
                .map(|i| {
                    Value::Array(
                        (0..DIM)
                            .map(|j| Value::String(covector_to_string(self.entry(i, j))))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

fn dot_col<C: Coeff>(cv: &[C], m: &Mat<C>, col: usize) -> C {
    let mut acc = C::zero();
    for (k, c) in cv.iter().enumerate() {
        if !c.is_zero() {
            acc.add_assign(&c.mul(m.get(k, col)));
        }
    }
    acc
}

impl<C: Coeff> fmt::Debug for SMatrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SMatrix [")?;
        for i in 0..DIM {
            let row: Vec<String> = (0..DIM)
                .map(|j| covector_to_string(self.entry(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Render a covector in index order, e.g. `"-2f7 + 2f8"` (`"0"` when zero).
pub fn covector_to_string<C: Coeff>(cv: &[C]) -> String {
    let mut out = String::new();
    for (k, c) in cv.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if body != "1" {
            out.push_str(&body);
        }
        out.push_str(&format!("f{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parse covector strings such as `"3f7 - 3f8"`, `"-f1"`, `"2f8-2f7"`, `"0"`.
pub fn parse_covector(s: &str) -> Result<Vec<Rational>, PolyError> {
    let bad = || PolyError::Parse(format!("not a covector: {s:?}"));
    let mut out = vec![Rational::zero(); DIM];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "0" {
        return Ok(out);
    }
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let f_pos = body.find('f').ok_or_else(bad)?;
        let coeff = if f_pos == 0 {
            Rational::one()
        } else {
            crate::polyexact::parse_rational(&body[..f_pos])?
        };
        let after = &body[f_pos + 1..];
        let end = after.find(['+', '-']).unwrap_or(after.len());
        let k: usize = after[..end].parse().map_err(|_| bad())?;
        if !(1..=DIM).contains(&k) {
            return Err(bad());
        }
        out[k - 1] += coeff * Rational::from_i64(sign);
        rest = &after[end..];
    }
    Ok(out)
}

/// Entry `(a, b)` collects, for every x-term `T` and every pair of D₃-terms
/// `(P ⊗ e_a)`, `(R ⊗ e_b)` with `T ∪ P ∪ R` seven distinct indices, the
/// coefficient of `e_T ∧ e_P ∧ e_R` read as `±f_k` for the omitted index k.
pub fn s_matrix<C: Coeff>(x: &Trivector<C>) -> SMatrix<C> {
    let d = d3(x);
    let d_terms: Vec<(([u8; 2], u8), C)> = d.terms().map(|(k, c)| (*k, c.clone())).collect();
    let mut s = SMatrix::<C>::zero();
    for (t, c1) in x.terms() {
        for &((p, a), ref c2) in &d_terms {
            if p.iter().any(|i| t.contains(i)) {
                continue;
            }
            let c12 = c1.mul(c2);
            for &((r, b), ref c3) in &d_terms {
                if r.iter().any(|i| t.contains(i) || p.contains(i)) {
                    continue;
                }
                let mut idx = [t[0], t[1], t[2], p[0], p[1], r[0], r[1]];
                let sign = permutation_sign(&mut idx).expect("indices are distinct");
                let missing = (1..=DIM as u8)
                    .find(|k| !idx.contains(k))
                    .expect("one index omitted") as usize;
                let total = sign as i64 * seven_form_sign(missing);
                let mut contrib = c12.mul(c3);
                if total < 0 {
                    contrib = contrib.neg();
                }
                let slot = &mut s.entries[(a as usize - 1) * DIM + (b as usize - 1)][missing - 1];
                slot.add_assign(&contrib);
            }
        }
    }
    s
}

/// `det S_x(v)` as a polynomial in `v₁ … v₈`.
pub fn p_poly<C: Coeff>(x: &Trivector<C>) -> MultiPoly<C> {
    s_matrix(x).to_poly_matrix().det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::qi;

    #[test]
    fn canonicalize_examples() {
        assert_eq!(
            wedge_canonicalize(2, 1, 3, qi(5)).unwrap(),
            Some(([1, 2, 3], qi(-5)))
        );
        assert_eq!(wedge_canonicalize(1, 1, 2, qi(5)).unwrap(), None);
        assert_eq!(
            wedge_canonicalize(4, 5, 6, qi(1)).unwrap(),
            Some(([4, 5, 6], qi(1)))
        );
        assert_eq!(
            wedge_canonicalize(0, 1, 2, qi(1)),
            Err(TrivectorError::IndexOutOfRange(0))
        );
        assert_eq!(
            wedge_canonicalize(1, 2, 9, qi(1)),
            Err(TrivectorError::IndexOutOfRange(9))
        );
    }

    #[test]
    fn builtin_shapes() {
        assert_eq!(w().len(), 6);
        assert_eq!(w_prime().len(), 7);
        assert_eq!(w().coeff(2, 5, 7), qi(-1));
        assert_eq!(w().coeff(7, 2, 5), qi(-1));
        assert_eq!(w().coeff(1, 4, 7), qi(1));
        assert_eq!(w().to_string(), "e123 + e147 + e148 - e257 - e368 + e456");
    }

    #[test]
    fn scalar_and_diagonal_actions() {
        let t = GroupElement::new(qi(3), Mat::identity(DIM)).unwrap();
        assert_eq!(act(&t, &w()), w().scale(&qi(3)));
        let mut d = vec![qi(1); DIM];
        d[0] = qi(2);
        let g = GroupElement::new(qi(1), Mat::diag(&d)).unwrap();
        let e123 = Trivector::<Rational>::basis(1, 2, 3).unwrap();
        assert_eq!(act(&g, &e123), e123.scale(&qi(2)));
    }

    #[test]
    fn tau_fixes_w() {
        let tau = GroupElement::new(qi(1), tau_matrix()).unwrap();
        assert_eq!(act(&tau, &w()), w());
        assert_ne!(tau_matrix(), Mat::identity(DIM));
    }

    #[test]
    fn singular_group_elements_rejected() {
        assert_eq!(
            GroupElement::new(qi(0), Mat::identity(DIM)),
            Err(TrivectorError::NotInvertible)
        );
        assert_eq!(
            GroupElement::new(qi(1), Mat::zeros(DIM, DIM)),
            Err(TrivectorError::NotInvertible)
        );
        assert_eq!(
            GroupElement::new(qi(1), Mat::identity(3)),
            Err(TrivectorError::BadShape(3, 3))
        );
    }

    #[test]
    fn d3_basis_and_w() {
        let t = d3(&Trivector::<Rational>::basis(1, 2, 3).unwrap());
        assert_eq!(t.len(), 3);
        assert_eq!(t.coeff([2, 3], 1), qi(1));
        assert_eq!(t.coeff([1, 3], 2), qi(-1));
        assert_eq!(t.coeff([1, 2], 3), qi(1));
        assert!(d3(&Trivector::<Rational>::zero()).is_empty());
        let dw = d3(&w());
        assert_eq!(dw.len(), 18);
        // the e147 term contributes e47⊗e1 − e17⊗e4 + e14⊗e7
        assert_eq!(dw.coeff([4, 7], 1), qi(1));
        assert_eq!(dw.coeff([1, 7], 4), qi(-1));
        assert_eq!(dw.coeff([1, 4], 7), qi(1));
        // the −e368 term contributes −e68⊗e3 + e38⊗e6 − e36⊗e8
        assert_eq!(dw.coeff([6, 8], 3), qi(-1));
        assert_eq!(dw.coeff([3, 8], 6), qi(1));
        assert_eq!(dw.coeff([3, 6], 8), qi(-1));
    }

    #[test]
    fn s_matrix_spot_entries() {
        let s = s_matrix(&w());
        assert!(s.is_symmetric());
        assert_eq!(covector_to_string(s.entry(0, 1)), "3f6");
        assert_eq!(covector_to_string(s.entry(6, 6)), "-2f7");
        assert_eq!(covector_to_string(s.entry(0, 6)), "-f1");
        assert_eq!(covector_to_string(s.entry(0, 3)), "3f7 - 3f8");
        let sp = s_matrix(&w_prime());
        assert_eq!(covector_to_string(sp.entry(0, 0)), "6f7 - 6f8");
        assert!(s_matrix(&Trivector::<Rational>::zero()).is_zero());
    }

    #[test]
    fn s_matrix_matches_golden() {
        assert_eq!(s_matrix(&w()), crate::golden::s_w());
        assert_eq!(s_matrix(&w_prime()), crate::golden::s_w_prime());
    }

    #[test]
    fn covector_parsing() {
        assert_eq!(parse_covector("2f8 - 2f7").unwrap()[6], qi(-2));
        assert_eq!(parse_covector("-f1").unwrap()[0], qi(-1));
        assert_eq!(parse_covector("3f7-3f8").unwrap()[7], qi(-3));
        assert!(parse_covector("0").unwrap().iter().all(Coeff::is_zero));
        assert!(parse_covector("3g7").is_err());
        assert!(parse_covector("f9").is_err());
        let cv = parse_covector("6f7 - 6f8").unwrap();
        assert_eq!(covector_to_string(&cv), "6f7 - 6f8");
    }

    #[test]
    fn json_round_trip() {
        let j = w().to_json();
        assert_eq!(j["terms"][0]["ijk"], json!([1, 2, 3]));
        assert_eq!(Trivector::<Rational>::from_json(&j).unwrap(), w());
        let el = GroupElement::new(qi(2), tau_matrix()).unwrap();
        assert_eq!(
            GroupElement::<Rational>::from_json(&el.to_json()).unwrap(),
            el
        );
    }
}
