//! Floating-point experiments on the values of the pairs (tr X², det X) at
//! primitive integer points, for X in 𝔰𝔩(3, ℝ) or in 𝔰𝔲(2, 1) with its
//! integral structure, after a linear change of variables g.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::liealg::real_form;
use crate::polyexact::{GaussianRational, Rational};
use crate::trivector::DIM;

/// Largest box radius enumerated exhaustively.
pub const MAX_EXHAUSTIVE_RADIUS: u32 = 3;

/// Vectors per parallel work unit in exhaustive scans.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("form index must be 0 or 1, got {0}")]
    BadFormIndex(u8),
    #[error("matrix must be 8x8 with finite entries")]
    BadMatrix,
    #[error("matrix is singular")]
    Singular,
    #[error("box radius must be at least 1")]
    EmptyBox,
    #[error("exhaustive enumeration is limited to radius {MAX_EXHAUSTIVE_RADIUS}, got {0}; use sampling")]
    BoxTooLarge(u32),
    #[error("window [{0}, {1}] is empty or not finite")]
    BadWindow(f64, f64),
    #[error("target value must be nonzero")]
    ZeroTarget,
    #[error("the cubic form vanishes on every basis vector")]
    NoAnchorVector,
    #[error("basis is not unimodular")]
    NotUnimodular,
    #[error("constructed map misses the target: |{got} - {want}| exceeds tolerance")]
    MissedTarget { got: f64, want: f64 },
    #[error("invalid input: {0}")]
    Input(String),
}

/// An 8×8 real matrix acting on coordinate vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct RealLinearMap {
    m: [[f64; DIM]; DIM],
}

impl RealLinearMap {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self, LabError> {
        if rows.len() != DIM
            || rows
                .iter()
                .any(|r| r.len() != DIM || r.iter().any(|x| !x.is_finite()))
        {
            return Err(LabError::BadMatrix);
        }
        let mut m = [[0.0; DIM]; DIM];
        for (i, r) in rows.iter().enumerate() {
            m[i].copy_from_slice(r);
        }
        let out = RealLinearMap { m };
        if out.det() == 0.0 {
            return Err(LabError::Singular);
        }
        Ok(out)
    }

    pub fn identity() -> Self {
        let mut m = [[0.0; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        RealLinearMap { m }
    }

    pub fn diag(d: &[f64; DIM]) -> Result<Self, LabError> {
        let rows: Vec<Vec<f64>> = (0..DIM)
            .map(|i| (0..DIM).map(|j| if i == j { d[i] } else { 0.0 }).collect())
            .collect();
        Self::new(&rows)
    }

    /// `I + ε·U` with `U` uniform in `[−1, 1]` from a seeded stream; its
    /// entries are generic reals as far as the lab is concerned.
    pub fn seeded_near_identity(seed: u64, eps: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Self::identity();
        for row in out.m.iter_mut() {
            for x in row.iter_mut() {
                *x += eps * rng.gen_range(-1.0..=1.0);
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.m.iter().map(|r| r.to_vec()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }

    pub fn apply(&self, v: &[f64; DIM]) -> [f64; DIM] {
        let mut out = [0.0; DIM];
        for (o, row) in out.iter_mut().zip(&self.m) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[0.0; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..DIM).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        RealLinearMap { m }
    }

    /// LU factorization with partial pivoting: `(lu, perm, sign)`, or
    /// `None` when a pivot vanishes.
    fn lu(&self) -> Option<([[f64; DIM]; DIM], [usize; DIM], f64)> {
        let mut a = self.m;
        let mut perm = [0usize; DIM];
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        let mut sign = 1.0;
        for col in 0..DIM {
            let piv = (col..DIM).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
            if a[piv][col] == 0.0 {
                return None;
            }
            if piv != col {
                a.swap(piv, col);
                perm.swap(piv, col);
                sign = -sign;
            }
            for r in col + 1..DIM {
                let f = a[r][col] / a[col][col];
                a[r][col] = f;
                for c in col + 1..DIM {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.lu() {
            Some((a, _, sign)) => (0..DIM).map(|i| a[i][i]).product::<f64>() * sign,
            None => 0.0,
        }
    }

    pub fn inverse(&self) -> Result<Self, LabError> {
        let (a, perm, _) = self.lu().ok_or(LabError::Singular)?;
        let mut inv = [[0.0; DIM]; DIM];
        for col in 0..DIM {
            // solve L U x = P e_col
            let mut y = [0.0; DIM];
            for i in 0..DIM {
                let b = if perm[i] == col { 1.0 } else { 0.0 };
                y[i] = b - (0..i).map(|k| a[i][k] * y[k]).sum::<f64>();
            }
            for i in (0..DIM).rev() {
                y[i] = (y[i] - (i + 1..DIM).map(|k| a[i][k] * y[k]).sum::<f64>()) / a[i][i];
            }
            for i in 0..DIM {
                inv[i][col] = y[i];
            }
        }
        Ok(RealLinearMap { m: inv })
    }

    fn norm1(&self) -> f64 {
        (0..DIM)
            .map(|j| (0..DIM).map(|i| self.m[i][j].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖g‖₁ · ‖g⁻¹‖₁`, infinite for a singular matrix.
    pub fn condition_estimate(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm1() * inv.norm1(),
            Err(_) => f64::INFINITY,
        }
    }

    /// JSON form `{"g": [[...]]}`; a bare 8×8 array is also accepted.
    pub fn to_json(&self) -> Value {
        json!({ "g": self.rows() })
    }

    pub fn from_json(v: &Value) -> Result<Self, LabError> {
        let rows = v.get("g").unwrap_or(v);
        let rows: Vec<Vec<f64>> =
            serde_json::from_value(rows.clone()).map_err(|e| LabError::Input(e.to_string()))?;
        Self::new(&rows)
    }
}

fn check_index(i: u8) -> Result<(), LabError> {
    if i <= 1 {
        Ok(())
    } else {
        Err(LabError::BadFormIndex(i))
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("small rationals convert")
}

/// `h⁻¹` for the indefinite unitary real form, as a complex matrix.
fn unitary_pullback() -> &'static [[Complex64; DIM]; DIM] {
    static CELL: OnceLock<[[Complex64; DIM]; DIM]> = OnceLock::new();
    CELL.get_or_init(|| {
        let h = real_form(1).expect("real form data is consistent").h;
        let inv = h.inverse().expect("h is invertible");
        let mut out = [[Complex64::new(0.0, 0.0); DIM]; DIM];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let c: &GaussianRational = inv.get(i, j);
                *x = Complex64::new(to_f64(&c.re), to_f64(&c.im));
            }
        }
        out
    })
}

fn matrix_of<T: Copy + std::ops::Neg<Output = T> + std::ops::Sub<Output = T>>(
    v: &[T; DIM],
) -> [[T; 3]; 3] {
    [
        [v[7], v[0], v[5]],
        [-v[3], -v[6], v[1]],
        [-v[2], -v[4], v[6] - v[7]],
    ]
}

fn trace_sq_det<T>(x: &[[T; 3]; 3]) -> (T, T)
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let mut tr = x[0][0] * x[0][0];
    tr = tr + x[1][1] * x[1][1] + x[2][2] * x[2][2];
    tr = tr
        + (x[0][1] * x[1][0] + x[0][2] * x[2][0] + x[1][2] * x[2][1])
        + (x[0][1] * x[1][0] + x[0][2] * x[2][0] + x[1][2] * x[2][1]);
    let det = x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1])
        - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
        + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
    (tr, det)
}

/// `(tr X², det X)` for the point `y` already moved by g. Form 0 reads `y`
/// as an element of 𝔰𝔩(3, ℝ); form 1 pulls it back to 𝔰𝔲(2, 1) and reports
/// `√−1 · det X`, which is real there.
pub fn form_values_at(i: u8, y: &[f64; DIM]) -> Result<(f64, f64), LabError> {
    check_index(i)?;
    if i == 0 {
        return Ok(trace_sq_det(&matrix_of(y)));
    }
    let hinv = unitary_pullback();
    let mut z = [Complex64::new(0.0, 0.0); DIM];
    for (zi, row) in z.iter_mut().zip(hinv) {
        *zi = row.iter().zip(y).map(|(a, b)| a * b).sum();
    }
    let (tr, det) = trace_sq_det(&matrix_of(&z));
    Ok((tr.re, (Complex64::i() * det).re))
}

/// `form_values_at(i, g·v)` for an integer vector.
pub fn form_values(i: u8, g: &RealLinearMap, v: &[i64; DIM]) -> Result<(f64, f64), LabError> {
    let vf = v.map(|c| c as f64);
    form_values_at(i, &g.apply(&vf))
}

fn gcd_is_one(v: &[i64; DIM]) -> bool {
    v.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1
}

/// Decode an index in `0..(2N+1)⁸` into a box vector.
fn decode(mut idx: u64, n: u32) -> [i64; DIM] {
    let side = u64::from(2 * n + 1);
    let mut v = [0i64; DIM];
    for x in v.iter_mut().rev() {
        *x = (idx % side) as i64 - i64::from(n);
        idx /= side;
    }
    v
}

/// How primitive vectors are drawn from the box `max |v_k| ≤ N`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScanMode {
    Exhaustive,
    Sample { count: usize, seed: u64 },
}

/// Every primitive vector of the box once (exhaustive, `N ≤ 3`), or a
/// seeded sample of primitive vectors.
pub fn primitive_vectors(n: u32, mode: ScanMode) -> Result<Vec<[i64; DIM]>, LabError> {
    if n == 0 {
        return Err(LabError::EmptyBox);
    }
    match mode {
        ScanMode::Exhaustive => {
            if n > MAX_EXHAUSTIVE_RADIUS {
                return Err(LabError::BoxTooLarge(n));
            }
            let total = u64::from(2 * n + 1).pow(DIM as u32);
            Ok((0..total)
                .map(|i| decode(i, n))
                .filter(gcd_is_one)
                .collect())
        }
        ScanMode::Sample { count, seed } => Ok(sample_vectors(n, count, seed)),
    }
}

fn sample_vectors(n: u32, count: usize, seed: u64) -> Vec<[i64; DIM]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = i64::from(n);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = [0i64; DIM];
        for x in v.iter_mut() {
            *x = rng.gen_range(-r..=r);
        }
        if gcd_is_one(&v) {
            out.push(v);
        }
    }
    out
}

/// Count of primitive vectors in the box by Möbius inversion over the
/// common divisor: `Σ_d μ(d)·((2⌊N/d⌋ + 1)⁸ − 1)`.
pub fn primitive_count_formula(n: u32) -> u64 {
    fn mobius(mut d: u32) -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= d {
            if d % p == 0 {
                d /= p;
                if d % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if d > 1 {
            sign = -sign;
        }
        sign
    }
    let total: i64 = (1..=n)
        .map(|d| mobius(d) * ((2 * i64::from(n / d) + 1).pow(DIM as u32) - 1))
        .sum();
    total as u64
}

/// Parameters of a scan.
#[derive(Clone, PartialEq, Debug)]
pub struct ScanConfig {
    pub i: u8,
    pub g: RealLinearMap,
    pub n: u32,
    pub window: (f64, f64),
    pub mode: ScanMode,
    /// Maximum number of window values kept in the report.
    pub value_cap: usize,
    pub bins: usize,
}

impl ScanConfig {
    pub fn new(i: u8, g: RealLinearMap, n: u32, window: (f64, f64), mode: ScanMode) -> Self {
        ScanConfig {
            i,
            g,
            n,
            window,
            mode,
            value_cap: 10_000,
            bins: 20,
        }
    }

    fn validate(&self) -> Result<(), LabError> {
        check_index(self.i)?;
        let (a, b) = self.window;
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(LabError::BadWindow(a, b));
        }
        if self.n == 0 {
            return Err(LabError::EmptyBox);
        }
        if self.mode == ScanMode::Exhaustive && self.n > MAX_EXHAUSTIVE_RADIUS {
            return Err(LabError::BoxTooLarge(self.n));
        }
        Ok(())
    }
}

/// Equal-width histogram of the window values.
#[derive(Clone, PartialEq, Debug)]
pub struct Histogram {
    /// Bin edges, one more than the number of bins.
    pub bins: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Aggregated results of a scan.
#[derive(Clone, PartialEq, Debug)]
pub struct ScanReport {
    pub count: u64,
    /// Sorted F-values inside the window, at most `value_cap` of them.
    pub values: Vec<f64>,
    /// Window values dropped by the cap.
    pub spill: u64,
    /// Largest gap between consecutive distinct window values; `None`
    /// when fewer than two distinct values fall in the window.
    pub max_gap: Option<f64>,
    pub hist: Histogram,
    pub min_abs_f_nonzero: Option<f64>,
    pub min_abs_q: Option<f64>,
}

impl ScanReport {
    pub fn gap_undefined(&self) -> bool {
        self.max_gap.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "count": self.count,
            "values": self.values,
            "spill": self.spill,
            "max_gap": self.max_gap,
            "gap_undefined": self.gap_undefined(),
            "hist": {"bins": self.hist.bins, "counts": self.hist.counts},
            "min_abs_f_nonzero": self.min_abs_f_nonzero,
            "min_abs_q": self.min_abs_q,
        })
    }
}

/// Per-chunk partial results; merging is order independent.
#[derive(Default)]
struct Partial {
    count: u64,
    window: Vec<f64>,
    min_abs_f_nonzero: Option<f64>,
    min_abs_q: Option<f64>,
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Partial {
    fn push(&mut self, q: f64, f: f64, window: (f64, f64)) {
        self.count += 1;
        if f >= window.0 && f <= window.1 {
            self.window.push(f);
        }
        if f != 0.0 {
            self.min_abs_f_nonzero = min_opt(self.min_abs_f_nonzero, Some(f.abs()));
        }
        self.min_abs_q = min_opt(self.min_abs_q, Some(q.abs()));
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.count += other.count;
        self.window.extend(other.window);
        self.min_abs_f_nonzero = min_opt(self.min_abs_f_nonzero, other.min_abs_f_nonzero);
        self.min_abs_q = min_opt(self.min_abs_q, other.min_abs_q);
        self
    }
}

/// Thread count from `PVS_THREADS`, falling back to the machine default.
pub fn configured_threads() -> Option<usize> {
    std::env::var("PVS_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match configured_threads() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool builds")
            .install(f),
        None => f(),
    }
}

/// Evaluate the form pair over the configured primitive vectors.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport, LabError> {
    cfg.validate()?;
    let eval = |acc: &mut Partial, v: &[i64; DIM]| {
        let (q, f) = form_values(cfg.i, &cfg.g, v).expect("index validated");
        acc.push(q, f, cfg.window);
    };
    let partial = with_pool(|| match cfg.mode {
        ScanMode::Exhaustive => {
            let total = u64::from(2 * cfg.n + 1).pow(DIM as u32);
            let chunks = total.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut acc = Partial::default();
                    for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                        let v = decode(idx, cfg.n);
                        if gcd_is_one(&v) {
                            eval(&mut acc, &v);
                        }
                    }
                    acc
                })
                .reduce(Partial::default, Partial::merge)
        }
        ScanMode::Sample { count, seed } => sample_vectors(cfg.n, count, seed)
            .par_chunks(CHUNK as usize)
            .map(|chunk| {
                let mut acc = Partial::default();
                for v in chunk {
                    eval(&mut acc, v);
                }
                acc
            })
            .reduce(Partial::default, Partial::merge),
    });
    Ok(finish(partial, cfg))
}

fn finish(p: Partial, cfg: &ScanConfig) -> ScanReport {
    let mut values = p.window;
    values.sort_by(f64::total_cmp);
    let max_gap = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&d| d > 0.0)
        .fold(None, |acc: Option<f64>, d| {
            Some(acc.map_or(d, |a| a.max(d)))
        });
    let (a, b) = cfg.window;
    let bins = cfg.bins.max(1);
    let width = (b - a) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|k| a + width * k as f64).collect();
    let mut counts = vec![0u64; bins];
    for &v in &values {
        let k = (((v - a) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let spill = values.len().saturating_sub(cfg.value_cap) as u64;
    values.truncate(cfg.value_cap);
    ScanReport {
        count: p.count,
        values,
        spill,
        max_gap,
        hist: Histogram {
            bins: edges,
            counts,
        },
        min_abs_f_nonzero: p.min_abs_f_nonzero,
        min_abs_q: p.min_abs_q,
    }
}

/// Eight integer vectors spanning the standard lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeBasis {
    vectors: Vec<[i64; DIM]>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<[i64; DIM]>) -> Result<Self, LabError> {
        if vectors.len() != DIM {
            return Err(LabError::NotUnimodular);
        }
        let m = crate::polyexact::Mat::from_fn(DIM, DIM, |i, j| {
            Rational::from_integer(vectors[j][i].into())
        });
        let det = m.det();
        if det != Rational::from_integer(1.into()) && det != Rational::from_integer((-1).into()) {
            return Err(LabError::NotUnimodular);
        }
        Ok(LatticeBasis { vectors })
    }

    pub fn standard() -> Self {
        let vectors = (0..DIM)
            .map(|i| std::array::from_fn(|j| i64::from(i == j)))
            .collect();
        LatticeBasis { vectors }
    }

    /// A basis whose first vector `e_a + e_b` has `F ≠ 0` for the unitary
    /// form; the remaining vectors are the standard ones other than `e_a`.
    pub fn anchored() -> Self {
        for a in 0..DIM {
            for b in a + 1..DIM {
                let mut u = [0i64; DIM];
                u[a] = 1;
                u[b] = 1;
                let (_, f) = form_values(1, &RealLinearMap::identity(), &u).expect("valid index");
                if f.abs() > 1e-12 {
                    let mut vectors = vec![u];
                    vectors.extend(
                        (0..DIM)
                            .filter(|&k| k != a)
                            .map(|k| std::array::from_fn(|j| i64::from(j == k))),
                    );
                    return LatticeBasis { vectors };
                }
            }
        }
        unreachable!("the cubic form is not identically zero")
    }

    pub fn vectors(&self) -> &[[i64; DIM]] {
        &self.vectors
    }
}

/// Output of [`construct_h`].
#[derive(Clone, PartialEq, Debug)]
pub struct ConstructedMap {
    pub h: RealLinearMap,
    pub u1: [i64; DIM],
    /// Scale applied to `u1`.
    pub t: f64,
    /// Value `F(h·u1)`, equal to `λ⁻⁷ r` within tolerance.
    pub achieved: f64,
}

impl ConstructedMap {
    pub fn to_json(&self) -> Value {
        json!({"h": self.h.rows(), "u1": self.u1, "t": self.t, "achieved": self.achieved})
    }
}

/// A determinant-one map h with `F(h·u₁) = λ⁻⁷ r` for the unitary cubic
/// form F: u₁ is scaled by `t = (λ⁻⁷ r / F(u₁))^{1/3}` and the other basis
/// vectors by `t^{−1/7}`.
pub fn construct_h(r: f64, basis: &LatticeBasis, lambda: f64) -> Result<ConstructedMap, LabError> {
    if r == 0.0 || !r.is_finite() {
        return Err(LabError::ZeroTarget);
    }
    let f_of = |v: &[f64; DIM]| form_values_at(1, v).expect("valid index").1;
    let as_f64 = |v: &[i64; DIM]| v.map(|c| c as f64);
    let anchor = basis
        .vectors()
        .iter()
        .position(|u| f_of(&as_f64(u)).abs() > 1e-12)
        .ok_or(LabError::NoAnchorVector)?;
    let mut order: Vec<[i64; DIM]> = vec![basis.vectors()[anchor]];
    order.extend(
        basis
            .vectors()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != anchor)
            .map(|(_, v)| *v),
    );
    let u1 = order[0];
    let s = f_of(&as_f64(&u1));
    let target = r / lambda.powi(7);
    let t = (target / s).cbrt();
    let rest = t.signum() * t.abs().powf(-1.0 / 7.0);
    // h = B · diag(t, rest, …) · B⁻¹ with the basis vectors as columns of B
    let b_rows: Vec<Vec<f64>> = (0..DIM)
        .map(|i| order.iter().map(|v| v[i] as f64).collect())
        .collect();
    let b = RealLinearMap::new(&b_rows)?;
    let mut scale = [rest; DIM];
    scale[0] = t;
    let h = b.mul(&RealLinearMap::diag(&scale)?).mul(&b.inverse()?);
    let achieved = f_of(&h.apply(&as_f64(&u1)));
    if (achieved - target).abs() > 1e-9 * target.abs().max(1.0) {
        return Err(LabError::MissedTarget {
            got: achieved,
            want: target,
        });
    }
    Ok(ConstructedMap { h, u1, t, achieved })
}

/// Outcome of the bounded search for a rational model of `v ↦ Q_i(g v)`.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalityReport {
    pub gram: Vec<Vec<f64>>,
    /// Position of the entry all others are divided by.
    pub reference: (usize, usize),
    pub denominator_bound: u64,
    /// Common denominator of all ratios when every ratio has a rational
    /// approximation within the bound.
    pub common_denominator: Option<u64>,
}

impl RationalityReport {
    pub fn rational_detected(&self) -> bool {
        self.common_denominator.is_some()
    }

    pub fn verdict(&self) -> String {
        match self.common_denominator {
            Some(d) => format!("rational multiple detected (common denominator {d})"),
            None => format!("no rational model within bound {}", self.denominator_bound),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "method": "bounded continued fractions (heuristic)",
            "gram": self.gram,
            "reference": [self.reference.0 + 1, self.reference.1 + 1],
            "denominator_bound": self.denominator_bound,
            "rational_detected": self.rational_detected(),
            "common_denominator": self.common_denominator,
            "verdict": self.verdict(),
        })
    }
}

/// Best rational approximation `p/q` of `x` with `q ≤ bound` that matches
/// `x` to relative accuracy `tol`, from the continued-fraction convergents.
pub fn rational_approx(x: f64, bound: u64, tol: f64) -> Option<(i64, u64)> {
    let scale = x.abs().max(1.0);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > i128::from(bound) {
            return None;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= tol * scale {
            return Some((p2 as i64, q2 as u64));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a as f64;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

/// Gram matrix of `v ↦ Q_i(g v)` and a bounded test of whether it is a
/// real multiple of a rational matrix.
pub fn rationality_report(
    i: u8,
    g: &RealLinearMap,
    bound: u64,
    tol: f64,
) -> Result<RationalityReport, LabError> {
    check_index(i)?;
    let q_at = |v: [f64; DIM]| form_values_at(i, &g.apply(&v)).expect("valid index").0;
    let unit = |k: usize| std::array::from_fn::<f64, DIM, _>(|j| f64::from(u8::from(j == k)));
    let diag: Vec<f64> = (0..DIM).map(|k| q_at(unit(k))).collect();
    let gram: Vec<Vec<f64>> = (0..DIM)
        .map(|a| {
            (0..DIM)
                .map(|b| {
                    if a == b {
                        diag[a]
                    } else {
                        let mut v = unit(a);
                        v[b] = 1.0;
                        (q_at(v) - diag[a] - diag[b]) / 2.0
                    }
                })
                .collect()
        })
        .collect();
    let largest = gram.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    // the smallest entry that is clearly nonzero, so an integral Gram
    // matrix reports denominator 1
    let reference = (0..DIM)
        .flat_map(|a| (0..DIM).map(move |b| (a, b)))
        .filter(|&(a, b)| gram[a][b].abs() > tol * largest)
        .min_by(|x, y| gram[x.0][x.1].abs().total_cmp(&gram[y.0][y.1].abs()))
        .unwrap_or((0, 0));
    let pivot = gram[reference.0][reference.1];
    let mut common: Option<u64> = if pivot == 0.0 { None } else { Some(1) };
    for row in &gram {
        for &x in row {
            let Some(d) = common else { break };
            let ratio = x / pivot;
            if x.abs() <= tol * largest {
                continue;
            }
            common = rational_approx(ratio, bound, tol)
                .map(|(_, q)| d.lcm(&q))
                .filter(|&l| l <= bound);
        }
    }
    Ok(RationalityReport {
        gram,
        reference,
        denominator_bound: bound,
        common_denominator: common,
    })
}
