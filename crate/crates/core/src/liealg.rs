//! 𝔰𝔩(3) in the coordinates v₁…v₈: the adjoint matrix, the trace forms B
//! and C, brackets transported along `h`, the two compact-type real forms
//! with their transport matrices, and exact inertia of quadratic forms.

use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::QuadraticForm;
use crate::polyexact::{Coeff, GaussianRational, Mat, MultiPoly, PolyError, PolyMatrix, Rational};
use crate::trivector::{act, w, GroupElement, Trivector, DIM};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("matrix has nonzero trace")]
    NotTraceless,
    #[error("expected a 3x3 matrix, got {0}x{1}")]
    BadShape(usize, usize),
    #[error("expected 8 coordinates, got {0}")]
    BadLength(usize),
    #[error("transport matrix is singular")]
    SingularTransport,
    #[error("real form index must be 1 or 2, got {0}")]
    BadRealFormIndex(u8),
    #[error("real form data violates {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_len<C>(v: &[C]) -> Result<(), LieError> {
    if v.len() == DIM {
        Ok(())
    } else {
        Err(LieError::BadLength(v.len()))
    }
}

/// The 3×3 matrix `Σ v_k e_k`.
pub fn coords_to_matrix<C: Coeff>(v: &[C]) -> Mat<C> {
    assert_eq!(v.len(), DIM, "coordinate vectors have 8 entries");
    Mat::from_rows(vec![
        vec![v[7].clone(), v[0].clone(), v[5].clone()],
        vec![v[3].neg(), v[6].neg(), v[1].clone()],
        vec![v[2].neg(), v[4].neg(), v[6].sub(&v[7])],
    ])
}

/// Inverse of [`coords_to_matrix`] on traceless matrices.
pub fn matrix_to_coords<C: Coeff>(m: &Mat<C>) -> Result<Vec<C>, LieError> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(LieError::BadShape(m.rows(), m.cols()));
    }
    if !m.trace().is_zero() {
        return Err(LieError::NotTraceless);
    }
    Ok(vec![
        m.get(0, 1).clone(),
        m.get(1, 2).clone(),
        m.get(2, 0).neg(),
        m.get(1, 0).neg(),
        m.get(2, 1).neg(),
        m.get(0, 2).clone(),
        m.get(1, 1).neg(),
        m.get(0, 0).clone(),
    ])
}

/// Traceless 3×3 matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Sl3Element<C: Coeff = Rational> {
    m: Mat<C>,
}

impl<C: Coeff> Sl3Element<C> {
    pub fn new(m: Mat<C>) -> Result<Self, LieError> {
        matrix_to_coords(&m)?;
        Ok(Sl3Element { m })
    }

    pub fn from_coords(v: &[C]) -> Result<Self, LieError> {
        check_len(v)?;
        Ok(Sl3Element {
            m: coords_to_matrix(v),
        })
    }

    pub fn matrix(&self) -> &Mat<C> {
        &self.m
    }

    pub fn coords(&self) -> Vec<C> {
        matrix_to_coords(&self.m).expect("stored matrices are traceless")
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Sl3Element {
            m: commutator(&self.m, &other.m),
        }
    }

    /// JSON form `{"m": [[...]]}`.
    pub fn to_json(&self) -> Value {
        json!({ "m": self.m.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self, LieError> {
        let m = v
            .get("m")
            .ok_or_else(|| PolyError::Parse("sl3 JSON: missing m".into()))?;
        Self::new(Mat::from_json(m)?)
    }
}

fn commutator<C: Coeff>(a: &Mat<C>, b: &Mat<C>) -> Mat<C> {
    a.mul(b).sub(&b.mul(a))
}

fn unit<C: Coeff>(k: usize) -> Vec<C> {
    (0..DIM)
        .map(|i| if i == k { C::one() } else { C::zero() })
        .collect()
}

/// Matrix of `ad X` in the basis e₁…e₈: column j holds the coordinates of
/// `[X, e_j]`.
pub fn ad_matrix<C: Coeff>(v: &[C]) -> Mat<C> {
    let x = coords_to_matrix(v);
    let columns: Vec<Vec<C>> = (0..DIM)
        .map(|j| {
            matrix_to_coords(&commutator(&x, &coords_to_matrix(&unit::<C>(j))))
                .expect("brackets are traceless")
        })
        .collect();
    Mat::from_fn(DIM, DIM, |i, j| columns[j][i].clone())
}

/// `ad X` as a matrix of linear forms in v₁…v₈.
pub fn ad_matrix_symbolic() -> PolyMatrix {
    let per_basis: Vec<Mat> = (0..DIM).map(|k| ad_matrix(&unit::<Rational>(k))).collect();
    PolyMatrix::from_fn(DIM, DIM, |i, j| {
        let coeffs: Vec<Rational> = per_basis.iter().map(|a| a.get(i, j).clone()).collect();
        MultiPoly::linear(&coeffs)
    })
}

/// Linear forms in v₁…v₈ for the nine table parameters
/// `(α₁, α₂, α₃, β₁, β₂, β₃, γ₁, γ₂, γ₃)` of the adjoint matrix.
pub fn table_parameters() -> Vec<MultiPoly> {
    let v = |k: usize| MultiPoly::<Rational>::var(DIM, k - 1);
    let two = Rational::from_i64(2);
    vec![
        v(7).add(&v(8)),
        v(7).scale(&two).neg().add(&v(8)),
        v(7).sub(&v(8).scale(&two)),
        v(1).neg(),
        v(2).neg(),
        v(3),
        v(4),
        v(5),
        v(6).neg(),
    ]
}

/// Rewrite a table whose entries are linear in the nine parameters as
/// linear forms in v₁…v₈.
pub fn table_in_coordinates(table: &[Vec<MultiPoly>]) -> Vec<Vec<MultiPoly>> {
    let params = table_parameters();
    table
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| {
                    let mut out = MultiPoly::zero(DIM);
                    for (k, param) in params.iter().enumerate() {
                        let c = cell.coeff_of(&unit_exps(params.len(), k));
                        if !c.is_zero() {
                            out = out.add(&param.scale(&c));
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn unit_exps(n: usize, k: usize) -> Vec<u8> {
    (0..n).map(|i| u8::from(i == k)).collect()
}

/// `B(v, v′) = tr(ad v · ad v′)`.
pub fn killing_b<C: Coeff>(v: &[C], v2: &[C]) -> C {
    ad_matrix(v).mul(&ad_matrix(v2)).trace()
}

/// Gram matrix of B in the basis e₁…e₈.
pub fn killing_gram() -> Mat {
    Mat::from_fn(DIM, DIM, |i, j| killing_b(&unit::<Rational>(i), &unit(j)))
}

/// `C(v, v′, v″) = tr(XYZ − ZYX)` on the adjoint matrices.
pub fn trilinear_c<C: Coeff>(v: &[C], v2: &[C], v3: &[C]) -> C {
    let (x, y, z) = (ad_matrix(v), ad_matrix(v2), ad_matrix(v3));
    x.mul(&y).mul(&z).sub(&z.mul(&y).mul(&x)).trace()
}

/// `[v, v′]` in coordinates.
pub fn bracket<C: Coeff>(v: &[C], v2: &[C]) -> Vec<C> {
    ad_matrix(v).mul_vec(v2)
}

fn check_transport<C: Coeff>(h: &Mat<C>) -> Result<(C, Mat<C>), LieError> {
    if h.rows() != DIM || h.cols() != DIM {
        return Err(LieError::BadShape(h.rows(), h.cols()));
    }
    let det = h.det();
    if det.is_zero() {
        return Err(LieError::SingularTransport);
    }
    let inv = h.inverse().map_err(|_| LieError::SingularTransport)?;
    Ok((det, inv))
}

/// `l_x(v) = (det h)² · h · ad(h⁻¹ v) · h⁻¹` for `x = h·w`.
pub fn transport_l<C: Coeff>(h: &Mat<C>, v: &[C]) -> Result<Mat<C>, LieError> {
    check_len(v)?;
    let (det, inv) = check_transport(h)?;
    Ok(h.mul(&ad_matrix(&inv.mul_vec(v)))
        .mul(&inv)
        .scale(&det.mul(&det)))
}

/// Coordinates `u` with `ad u = m`, or an error when `m` is not in the
/// image of ad. Solved through the nondegenerate form B.
pub fn ad_inverse<C: Coeff>(m: &Mat<C>) -> Result<Vec<C>, LieError> {
    let gram = Mat::from_fn(DIM, DIM, |i, j| killing_b(&unit::<C>(i), &unit(j)));
    let rhs: Vec<C> = (0..DIM)
        .map(|i| ad_matrix(&unit::<C>(i)).mul(m).trace())
        .collect();
    let u = gram.solve(&rhs)?;
    if &ad_matrix(&u) != m {
        return Err(LieError::InvariantViolated(
            "the matrix is not in the image of ad",
        ));
    }
    Ok(u)
}

/// `[v, v′]_x = l_x⁻¹([l_x v, l_x v′])`.
pub fn transport_bracket<C: Coeff>(h: &Mat<C>, v: &[C], v2: &[C]) -> Result<Vec<C>, LieError> {
    let lv = transport_l(h, v)?;
    let lv2 = transport_l(h, v2)?;
    let (det, inv) = check_transport(h)?;
    // l_x(u) = m  ⇔  ad(h⁻¹ u) = (det h)⁻² h⁻¹ m h
    let target = inv
        .mul(&commutator(&lv, &lv2))
        .mul(h)
        .scale(&det.mul(&det).inv().expect("nonzero"));
    Ok(h.mul_vec(&ad_inverse(&target)?))
}

/// `m_{x,h}(v) = (det h)⁻² h v`.
pub fn m_xh<C: Coeff>(h: &Mat<C>, v: &[C]) -> Result<Vec<C>, LieError> {
    check_len(v)?;
    let (det, _) = check_transport(h)?;
    let s = det.mul(&det).inv().expect("nonzero");
    Ok(h.mul_vec(v).into_iter().map(|c| c.mul(&s)).collect())
}

/// The Hermitian forms `H₁ = diag(1, 1, −1)` and `H₂ = I₃`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HermitianForm {
    Indefinite,
    Definite,
}

impl HermitianForm {
    pub fn for_index(i: u8) -> Result<Self, LieError> {
        match i {
            1 => Ok(HermitianForm::Indefinite),
            2 => Ok(HermitianForm::Definite),
            _ => Err(LieError::BadRealFormIndex(i)),
        }
    }

    pub fn matrix(self) -> Mat<GaussianRational> {
        let last = match self {
            HermitianForm::Indefinite => -1,
            HermitianForm::Definite => 1,
        };
        Mat::diag(&[
            GaussianRational::from_ints(1, 0),
            GaussianRational::from_ints(1, 0),
            GaussianRational::from_ints(last, 0),
        ])
    }
}

/// `p_H(X) = −H X* H⁻¹`, whose fixed points form 𝔰𝔲(H).
pub fn p_h(h: HermitianForm, x: &Mat<GaussianRational>) -> Mat<GaussianRational> {
    let hm = h.matrix();
    let inv = hm.inverse().expect("H is invertible");
    hm.mul(&x.adjoint()).mul(&inv).map(Coeff::neg)
}

/// Membership in 𝔰𝔲(H) as the fixed-point condition `p_H(X) = X`.
pub fn su_check(h: HermitianForm, x: &Mat<GaussianRational>) -> bool {
    x.trace().is_zero() && &p_h(h, x) == x
}

/// Membership in 𝔰𝔲(H) as `H X* + X H = 0`.
pub fn su_check_skew(h: HermitianForm, x: &Mat<GaussianRational>) -> bool {
    let hm = h.matrix();
    x.trace().is_zero() && hm.mul(&x.adjoint()).add(&x.mul(&hm)).is_zero()
}

/// Transport data for the real form 𝔰𝔲(H_i).
#[derive(Clone, PartialEq, Debug)]
pub struct RealFormTransport {
    pub i: u8,
    pub d: Mat,
    pub q: Mat,
    pub h: Mat<GaussianRational>,
    pub w_i: Trivector,
}

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

/// Build `D_i`, `q_{D_i}`, `h_{D_i}` and `w_i = (1, h_{D_i})·w`, checking
/// `q² = I`, `q = h⁻¹ conj(h)`, `det h = −8√−1` and rationality of `w_i`.
pub fn real_form(i: u8) -> Result<RealFormTransport, LieError> {
    let d_diag: [i64; 3] = match i {
        1 => [1, -1, -1],
        2 => [1, 1, 1],
        _ => return Err(LieError::BadRealFormIndex(i)),
    };
    let d = Mat::diag(&d_diag.map(Rational::from_i64));
    let mut q = Mat::zeros(DIM, DIM);
    let mut h = Mat::zeros(DIM, DIM);
    for k in 0..3 {
        let dk = d_diag[k];
        q.set(k, k + 3, Rational::from_i64(dk));
        q.set(k + 3, k, Rational::from_i64(dk));
        h.set(k, k, gi(1, 0));
        h.set(k, k + 3, gi(dk, 0));
        h.set(k + 3, k, gi(0, 1));
        h.set(k + 3, k + 3, gi(0, -dk));
    }
    for k in 6..DIM {
        q.set(k, k, Rational::from_i64(-1));
        h.set(k, k, gi(0, 1));
    }
    if q.mul(&q) != Mat::identity(DIM) {
        return Err(LieError::InvariantViolated("q² = I"));
    }
    let h_inv = h.inverse().map_err(|_| LieError::SingularTransport)?;
    if h_inv.mul(&h.conj()) != q.to_gaussian() {
        return Err(LieError::InvariantViolated("q = h⁻¹ conj(h)"));
    }
    if h.det() != gi(0, -8) {
        return Err(LieError::InvariantViolated("det h = −8√−1"));
    }
    let w_g = w().map(|c| GaussianRational::from(c.clone()));
    let el = GroupElement::new(GaussianRational::one(), h.clone())
        .map_err(|_| LieError::SingularTransport)?;
    let image = act(&el, &w_g);
    let mut w_i = Trivector::zero();
    for (&[a, b, c], coeff) in image.terms() {
        let re = coeff
            .to_real()
            .ok_or(LieError::InvariantViolated("w_i has rational coordinates"))?;
        w_i.add_wedge(a as usize, b as usize, c as usize, &re)
            .expect("indices in range");
    }
    Ok(RealFormTransport { i, d, q, h, w_i })
}

impl RealFormTransport {
    /// The group element `(1, h_{D_i})` carrying w to `w_i`.
    pub fn transport(&self) -> GroupElement<GaussianRational> {
        GroupElement::new(GaussianRational::one(), self.h.clone()).expect("h is invertible")
    }

    pub fn hermitian(&self) -> HermitianForm {
        HermitianForm::for_index(self.i).expect("index validated on construction")
    }

    /// The element `h⁻¹ v` of 𝔰𝔲(H_i) as a 3×3 matrix.
    pub fn to_su(&self, v: &[Rational]) -> Result<Mat<GaussianRational>, LieError> {
        check_len(v)?;
        let h_inv = self.h.inverse().map_err(|_| LieError::SingularTransport)?;
        let vg: Vec<GaussianRational> = v
            .iter()
            .map(|c| GaussianRational::from(c.clone()))
            .collect();
        Ok(coords_to_matrix(&h_inv.mul_vec(&vg)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "d": self.d.to_json(),
            "q": self.q.to_json(),
            "h": self.h.to_json(),
            "w_i": self.w_i.to_json(),
        })
    }
}

/// `h_{D_i}⁻¹ v` as a matrix in 𝔰𝔲(H_i).
pub fn to_su(i: u8, v: &[Rational]) -> Result<Mat<GaussianRational>, LieError> {
    real_form(i)?.to_su(v)
}

/// Inertia `(positive, negative)` of a rational quadratic form, by
/// symmetric elimination with 1×1 pivots where the diagonal allows and
/// 2×2 pivots on a zero diagonal.
pub fn signature(q: &QuadraticForm) -> (usize, usize) {
    let mut a = q.gram().to_rows();
    let (mut pos, mut neg) = (0, 0);
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&k| !a[k][k].is_zero()) {
            if a[p][p] > Rational::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            a = schur_complement(&a, &[p]);
            continue;
        }
        let Some((r, c)) = (0..n)
            .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
            .find(|&(r, c)| !a[r][c].is_zero())
        else {
            break;
        };
        // a 2×2 block [[0, b], [b, 0]] has one positive and one negative direction
        pos += 1;
        neg += 1;
        a = schur_complement(&a, &[r, c]);
    }
    (pos, neg)
}

/// `A_rest − B P⁻¹ Bᵀ` for the principal block `P` on `pivots`.
fn schur_complement(a: &[Vec<Rational>], pivots: &[usize]) -> Vec<Vec<Rational>> {
    let rest: Vec<usize> = (0..a.len()).filter(|k| !pivots.contains(k)).collect();
    let p = Mat::from_fn(pivots.len(), pivots.len(), |i, j| {
        a[pivots[i]][pivots[j]].clone()
    });
    let p_inv = p.inverse().expect("pivot block is invertible");
    let b = Mat::from_fn(rest.len(), pivots.len(), |i, j| {
        a[rest[i]][pivots[j]].clone()
    });
    let correction = b.mul(&p_inv).mul(&b.transpose());
    (0..rest.len())
        .map(|i| {
            (0..rest.len())
                .map(|j| &a[rest[i]][rest[j]] - correction.get(i, j))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::invariants::factor_invariants;
    use crate::polyexact::qi;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn e(k: usize) -> Vec<Rational> {
        unit(k - 1)
    }

    fn random_vec(rng: &mut ChaCha8Rng) -> Vec<Rational> {
        (0..DIM).map(|_| qi(rng.gen_range(-5..=5))).collect()
    }

    fn random_gaussian(rng: &mut ChaCha8Rng) -> Vec<GaussianRational> {
        (0..DIM)
            .map(|_| gi(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
            .collect()
    }

    #[test]
    fn basis_dictionary() {
        let e1 = coords_to_matrix(&e(1));
        assert_eq!(e1, Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]));
        assert_eq!(
            coords_to_matrix(&e(8)),
            Mat::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, -1]])
        );
        assert_eq!(
            coords_to_matrix(&e(3)),
            Mat::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[-1, 0, 0]])
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let v = random_vec(&mut rng);
            assert_eq!(matrix_to_coords(&coords_to_matrix(&v)).unwrap(), v);
        }
        assert_eq!(
            matrix_to_coords(&Mat::<Rational>::identity(3)),
            Err(LieError::NotTraceless)
        );
    }

    #[test]
    fn ad_examples() {
        let diag = [1, -2, 1, -1, 2, -1, 0, 0].map(qi);
        assert_eq!(ad_matrix(&e(7)), Mat::diag(&diag));
        assert_eq!(ad_matrix(&e(8)).column(0), e(1));
        assert!(ad_matrix(&vec![qi(0); DIM]).is_zero());
    }

    #[test]
    fn ad_matches_table() {
        let table = table_in_coordinates(&golden::ad_table());
        let sym = ad_matrix_symbolic();
        for (i, row) in table.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(cell, sym.get(i, j), "entry ({}, {})", i + 1, j + 1);
            }
        }
    }

    #[test]
    fn killing_is_six_q() {
        let q_w = QuadraticForm::from_poly(&golden::q_w()).unwrap();
        assert_eq!(killing_gram(), q_w.gram().scale(&qi(6)));
        assert_eq!(killing_b(&e(7), &e(7)), qi(12));
        assert_eq!(killing_b(&e(1), &e(1)), qi(0));
    }

    #[test]
    fn cubic_trace_form() {
        assert_eq!(trilinear_c(&e(1), &e(2), &e(3)), qi(-6));
        let phi_w = golden::phi_w();
        for a in 1..=DIM {
            for b in a + 1..=DIM {
                for c in b + 1..=DIM {
                    assert_eq!(
                        trilinear_c(&e(a), &e(b), &e(c)),
                        phi_w.eval_basis(a, b, c) * qi(6)
                    );
                }
            }
        }
        assert_eq!(trilinear_c(&e(4), &e(4), &e(2)), qi(0));
    }

    #[test]
    fn brackets_and_representation_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let (v, v2) = (random_vec(&mut rng), random_vec(&mut rng));
            let br = bracket(&v, &v2);
            assert_eq!(ad_matrix(&br), commutator(&ad_matrix(&v), &ad_matrix(&v2)));
            let id: Mat = Mat::identity(DIM);
            assert_eq!(transport_bracket(&id, &v, &v2).unwrap(), br);
        }
    }

    #[test]
    fn transport_diagram_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = Mat::from_fn(DIM, DIM, |i, j| {
            qi(i64::from(i == j) * 2 + rng.gen_range(-1..=1))
        });
        assert!(!h.det().is_zero());
        let id: Mat = Mat::identity(DIM);
        let v = random_vec(&mut rng);
        assert_eq!(transport_l(&id, &v).unwrap(), ad_matrix(&v));
        let mv = m_xh(&h, &v).unwrap();
        let h_inv = h.inverse().unwrap();
        assert_eq!(
            transport_l(&h, &mv).unwrap(),
            h.mul(&ad_matrix(&v)).mul(&h_inv)
        );
        assert_eq!(
            transport_l(&Mat::zeros(DIM, DIM), &v),
            Err(LieError::SingularTransport)
        );
    }

    #[test]
    fn real_forms() {
        for i in [1, 2] {
            let rf = real_form(i).unwrap();
            assert_eq!(rf.w_i, golden::w_real(i));
            assert_eq!(rf.h.det(), gi(0, -8));
        }
        assert_eq!(real_form(3), Err(LieError::BadRealFormIndex(3)));
    }

    #[test]
    fn su_membership() {
        let h1 = HermitianForm::Indefinite;
        let x = Mat::diag(&[gi(0, 1), gi(0, 1), gi(0, -2)]);
        assert!(su_check(h1, &x) && su_check_skew(h1, &x));
        let e12 = coords_to_matrix(&e(1)).to_gaussian();
        assert!(!su_check(h1, &e12) && !su_check_skew(h1, &e12));
        let herm = Mat::diag(&[gi(1, 0), gi(-1, 0), gi(0, 0)]);
        assert!(!su_check(HermitianForm::Definite, &herm));
        assert_eq!(p_h(HermitianForm::Definite, &herm), herm.map(Coeff::neg));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in [1, 2] {
            let rf = real_form(i).unwrap();
            for _ in 0..10 {
                let x = rf.to_su(&random_vec(&mut rng)).unwrap();
                assert!(su_check(rf.hermitian(), &x));
                assert!(su_check_skew(rf.hermitian(), &x));
            }
        }
    }

    #[test]
    fn conjugation_intertwines_adjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for i in [1, 2] {
            let rf = real_form(i).unwrap();
            let q = rf.q.to_gaussian();
            for _ in 0..10 {
                let v = random_gaussian(&mut rng);
                let conj_v: Vec<GaussianRational> = v.iter().map(Coeff::conj).collect();
                let lhs = q.mul(&ad_matrix(&conj_v)).mul(&q.inverse().unwrap());
                let p = p_h(rf.hermitian(), &coords_to_matrix(&v));
                assert_eq!(lhs, ad_matrix(&matrix_to_coords(&p).unwrap()));
            }
        }
    }

    #[test]
    fn signatures() {
        let sig = |p: MultiPoly| signature(&QuadraticForm::from_poly(&p).unwrap());
        assert_eq!(sig(golden::q_w()), (5, 3));
        assert_eq!(sig(golden::q_w_real_cross_term(1)), (4, 4));
        assert_eq!(sig(golden::q_w_real_cross_term(2)), (0, 8));
        assert_eq!(sig(golden::q_w_prime()), (1, 2));
        for i in [1, 2] {
            let rf = real_form(i).unwrap();
            let pair = factor_invariants(&rf.w_i, Some(&rf.transport())).unwrap();
            assert_eq!(pair.q.to_poly(), golden::q_w_real_cross_term(i));
            assert_ne!(pair.q.to_poly(), golden::q_w_real_as_printed(i));
        }
    }

    #[test]
    fn trace_square_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for i in [1, 2] {
            let q_i = QuadraticForm::from_poly(&golden::q_w_real_cross_term(i)).unwrap();
            let rf = real_form(i).unwrap();
            for _ in 0..5 {
                let v = random_vec(&mut rng);
                let x = rf.to_su(&v).unwrap();
                let tr = x.mul(&x).trace().to_real().unwrap();
                assert_eq!(q_i.eval(&v), tr * qi(4096));
            }
        }
    }
}
