use std::fmt;

use serde_json::Value;

use super::{Coeff, GaussianRational, Monomial, MultiPoly, PolyError, Rational};

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq)]
pub struct Mat<C: Coeff = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Mat<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn diag(entries: &[C]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, c) in entries.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Build from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: C) {
        self.data[i * self.cols + j] = c;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(Coeff::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&C::one().neg()))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = C::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_assign(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> C {
        let mut acc = C::zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign(self.get(i, i));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Coeff::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> C {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = C::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return C::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = det.neg();
            }
            let pivot = a.get(col, col).clone();
            det = det.mul(&pivot);
            let pinv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = a.get(r, col).mul(&pinv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c).sub(&factor.mul(a.get(col, c)));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, PolyError> {
        if !self.is_square() {
            return Err(PolyError::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(PolyError::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a.get(col, col).inv().ok_or(PolyError::Singular)?;
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let va = a.get(r, c).sub(&factor.mul(a.get(col, c)));
                    a.set(r, c, va);
                    let vi = inv.get(r, c).sub(&factor.mul(inv.get(col, c)));
                    inv.set(r, c, vi);
                }
            }
        }
        Ok(inv)
    }

    /// Solve `self · x = b` for square invertible `self`.
    pub fn solve(&self, b: &[C]) -> Result<Vec<C>, PolyError> {
        Ok(self.inverse()?.mul_vec(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: &C) {
        for j in 0..self.cols {
            let v = self.get(r, j).mul(s);
            self.set(r, j, v);
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(Coeff::to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let rows = v
            .as_array()
            .ok_or_else(|| PolyError::Parse("matrix JSON must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| PolyError::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(C::from_json)
                    .collect::<Result<Vec<C>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        if let Some(bad) = parsed.iter().find(|r| r.len() != cols) {
            return Err(PolyError::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Self::from_rows(parsed))
    }
}

impl Mat<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn to_gaussian(&self) -> Mat<GaussianRational> {
        self.map(|c| GaussianRational::from(c.clone()))
    }
}

impl Mat<GaussianRational> {
    pub fn to_rational(&self) -> Option<Mat<Rational>> {
        let data = self
            .data
            .iter()
            .map(GaussianRational::to_real)
            .collect::<Option<Vec<_>>>()?;
        Some(Mat {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

impl<C: Coeff> fmt::Debug for Mat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Square matrix of polynomials sharing one arity.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix<C: Coeff = Rational> {
    n: usize,
    arity: usize,
    entries: Vec<MultiPoly<C>>,
}

impl<C: Coeff> PolyMatrix<C> {
    pub fn zeros(n: usize, arity: usize) -> Self {
        PolyMatrix {
            n,
            arity,
            entries: vec![MultiPoly::zero(arity); n * n],
        }
    }

    pub fn from_fn(
        n: usize,
        arity: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly<C>,
    ) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(i, j);
                assert_eq!(p.arity(), arity, "entry arity mismatch");
                entries.push(p);
            }
        }
        PolyMatrix { n, arity, entries }
    }

    /// Constant polynomial matrix from an exact matrix.
    pub fn from_constant(m: &Mat<C>, arity: usize) -> Self {
        assert!(m.is_square(), "polynomial matrices are square");
        Self::from_fn(m.rows(), arity, |i, j| {
            MultiPoly::constant(arity, m.get(i, j).clone())
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<C> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly<C>) {
        assert_eq!(p.arity(), self.arity, "entry arity mismatch");
        self.entries[i * self.n + j] = p;
    }

    pub fn eval(&self, point: &[C]) -> Mat<C> {
        Mat::from_fn(self.n, self.n, |i, j| self.get(i, j).eval(point))
    }

    /// Exact determinant.
    ///
    /// Matrices of linear forms (the shape of every S-matrix) go through a
    /// dense integer kernel when the coefficient field supports it; all
    /// other inputs use [`PolyMatrix::det_sparse`].
    pub fn det(&self) -> MultiPoly<C> {
        if self.entries.iter().all(|p| p.is_homogeneous(1)) {
            let forms: Vec<Vec<Vec<C>>> = (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| {
                            (0..self.arity)
                                .map(|k| self.get(i, j).coeff(&Monomial::var(k)))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            if let Some(p) = C::det_linear_forms(&forms, self.arity) {
                return p;
            }
        }
        self.det_sparse()
    }

    /// Exact determinant by dynamic programming over column subsets.
    ///
    /// `minor[S]` holds the determinant of the first `|S|` rows restricted to
    /// the columns in `S`. Each layer expands along its last row, so only
    /// `2^n` minors are ever formed.
    pub fn det_sparse(&self) -> MultiPoly<C> {
        let n = self.n;
        assert!(
            n < usize::BITS as usize,
            "matrix too large for subset expansion"
        );
        if n == 0 {
            return MultiPoly::one(self.arity);
        }
        let mut minor: Vec<Option<MultiPoly<C>>> = vec![None; 1 << n];
        minor[0] = Some(MultiPoly::one(self.arity));
        for row in 0..n {
            let mut next: Vec<Option<MultiPoly<C>>> = vec![None; 1 << n];
            for (set, m) in minor.iter().enumerate() {
                let Some(m) = m else { continue };
                if m.is_zero() {
                    continue;
                }
                for col in 0..n {
                    if set & (1 << col) != 0 {
                        continue;
                    }
                    let a = self.get(row, col);
                    if a.is_zero() {
                        continue;
                    }
                    // sign of moving column `col` past the larger columns already in `set`
                    let larger = (set >> (col + 1)).count_ones();
                    let mut term = a.mul(m);
                    if larger % 2 == 1 {
                        term = term.neg();
                    }
                    let slot = &mut next[set | (1 << col)];
                    *slot = Some(match slot.take() {
                        Some(acc) => acc.add(&term),
                        None => term,
                    });
                }
            }
            minor = next;
        }
        minor[(1 << n) - 1]
            .take()
            .unwrap_or_else(|| MultiPoly::zero(self.arity))
    }
}

/// Free-function form of [`PolyMatrix::det`].
pub fn poly_det<C: Coeff>(m: &PolyMatrix<C>) -> MultiPoly<C> {
    m.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::qi;

    #[test]
    fn identity_and_diagonal_determinants() {
        let id = PolyMatrix::<Rational>::from_constant(&Mat::identity(8), 8);
        assert_eq!(id.det(), MultiPoly::one(8));
        let diag = PolyMatrix::<Rational>::from_fn(8, 8, |i, j| {
            if i == j {
                MultiPoly::var(8, i)
            } else {
                MultiPoly::zero(8)
            }
        });
        let expected = (0..8).fold(MultiPoly::one(8), |acc, i| acc.mul(&MultiPoly::var(8, i)));
        assert_eq!(diag.det(), expected);
        assert!(PolyMatrix::<Rational>::zeros(8, 8).det().is_zero());
    }

    #[test]
    fn two_by_two_polynomial_determinant() {
        let x = MultiPoly::<Rational>::var(2, 0);
        let y = MultiPoly::<Rational>::var(2, 1);
        let m = PolyMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => x.clone(),
            (0, 1) => y.clone(),
            (1, 0) => y.clone(),
            _ => x.clone(),
        });
        assert_eq!(m.det(), x.mul(&x).sub(&y.mul(&y)));
    }

    #[test]
    fn subset_det_matches_elimination() {
        let a = Mat::from_ints(&[
            &[2, -1, 0, 3],
            &[1, 1, -2, 0],
            &[0, 4, 1, -1],
            &[-3, 0, 2, 2],
        ]);
        let p = PolyMatrix::from_constant(&a, 1).det();
        assert_eq!(p, MultiPoly::constant(1, a.det()));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Mat::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(2));
        let singular = Mat::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(PolyError::Singular));
        assert_eq!(singular.det(), qi(0));
    }

    #[test]
    fn gaussian_determinant() {
        let i = GaussianRational::i();
        let m = Mat::from_rows(vec![
            vec![GaussianRational::one(), i.clone()],
            vec![i.clone(), GaussianRational::one()],
        ]);
        assert_eq!(m.det(), GaussianRational::from_ints(2, 0));
    }

    #[test]
    fn json_round_trip() {
        let a = Mat::from_rows(vec![
            vec![qi(1), crate::polyexact::q(1, 2)],
            vec![qi(-3), qi(0)],
        ]);
        assert_eq!(Mat::<Rational>::from_json(&a.to_json()).unwrap(), a);
    }
}
