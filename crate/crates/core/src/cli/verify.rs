//! Named verification suites comparing computed objects with the shipped
//! reference data and with exact covariance identities.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::golden;
use crate::invariants::{factor_invariants, phi, CubicForm, QuadraticForm, PAIR_CONSTANT};
use crate::liealg::{
    ad_matrix, ad_matrix_symbolic, coords_to_matrix, killing_gram, matrix_to_coords, p_h,
    real_form, signature, table_in_coordinates, trilinear_c,
};
use crate::oppenheim::{
    construct_h, form_values, rationality_report, scan, LatticeBasis, RealLinearMap, ScanConfig,
    ScanMode,
};
use crate::polyexact::{
    rational_to_string, Coeff, GaussianRational, Mat, MultiPoly, PolyMatrix, Rational,
};
use crate::reptheory::{
    alt3_decompose, decomp_dim, irr_character, irreps_of_dim, parse_type, root_system, table45,
    tensor_decompose, weights_to_json, weyl_dim, DecompList, RootSystem,
};
use crate::trivector::{
    act, covector_to_string, p_poly, s_matrix, tau_matrix, w, w_prime, GroupElement, SMatrix,
    Trivector, DIM,
};

use super::CliError;

/// Seed for the random group elements of the covariance checks.
pub const COVARIANCE_SEED: u64 = 0x5eed_0011;
/// Number of random group elements in the covariance checks.
pub const COVARIANCE_SAMPLES: usize = 20;
/// Seed for random points in the exact identity checks.
pub const POINT_SEED: u64 = 0x5eed_0314;
/// Seed of the near-identity map used for the gap trend.
pub const GAP_SEED: u64 = 1;
/// Size of the near-identity perturbation used for the gap trend.
pub const GAP_EPS: f64 = 0.05;
/// Relative tolerance of the floating-point cross-checks.
pub const CROSS_CHECK_TOL: f64 = 1e-12;
/// Relative tolerance of the constructed map.
pub const CONSTRUCT_TOL: f64 = 1e-9;

/// Result class of one check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    /// The check ran and the computed value differs from the expected one.
    Mismatch,
    /// The check could not run to completion.
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Mismatch => "mismatch",
            Status::Fail => "fail",
        }
    }
}

/// Outcome of a single named check. Mismatches and failures always carry a
/// JSON diff; passes may carry a note with reported, non-asserted data.
#[derive(Clone, PartialEq, Debug)]
pub struct VerificationOutcome {
    pub name: String,
    pub status: Status,
    pub diff: Option<Value>,
    pub note: Option<Value>,
}

impl VerificationOutcome {
    pub fn pass(name: impl Into<String>) -> Self {
        VerificationOutcome {
            name: name.into(),
            status: Status::Pass,
            diff: None,
            note: None,
        }
    }

    pub fn mismatch(name: impl Into<String>, diff: Value) -> Self {
        VerificationOutcome {
            name: name.into(),
            status: Status::Mismatch,
            diff: Some(diff),
            note: None,
        }
    }

    pub fn fail(name: impl Into<String>, error: impl Into<String>) -> Self {
        let diff = json!({ "error": error.into() });
        VerificationOutcome {
            name: name.into(),
            status: Status::Fail,
            diff: Some(diff),
            note: None,
        }
    }

    /// Pass when `diff` is `None`, mismatch otherwise.
    pub fn from_diff(name: impl Into<String>, diff: Option<Value>) -> Self {
        match diff {
            None => Self::pass(name),
            Some(d) => Self::mismatch(name, d),
        }
    }

    pub fn with_note(mut self, note: Value) -> Self {
        self.note = Some(note);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "name": self.name, "status": self.status.as_str() });
        if let Some(d) = &self.diff {
            v["diff"] = d.clone();
        }
        if let Some(n) = &self.note {
            v["note"] = n.clone();
        }
        v
    }
}

/// The suites accepted by `verify`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Smatrix,
    Factorization,
    Phi,
    Liealg,
    Realforms,
    Reptheory,
    Oppenheim,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "smatrix",
        "factorization",
        "phi",
        "liealg",
        "realforms",
        "reptheory",
        "oppenheim",
        "all",
    ];
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "smatrix" => Suite::Smatrix,
            "factorization" => Suite::Factorization,
            "phi" => Suite::Phi,
            "liealg" => Suite::Liealg,
            "realforms" => Suite::Realforms,
            "reptheory" => Suite::Reptheory,
            "oppenheim" => Suite::Oppenheim,
            "all" => Suite::All,
            other => return Err(CliError::UnknownSuite(other.to_string())),
        })
    }
}

/// Run the named suite. Checks run in a fixed order and a failing check
/// never stops the ones after it.
pub fn verify(suite: &str) -> Result<Vec<VerificationOutcome>, CliError> {
    Ok(run_suite(suite.parse()?))
}

pub fn run_suite(suite: Suite) -> Vec<VerificationOutcome> {
    match suite {
        Suite::Smatrix => smatrix_checks(),
        Suite::Factorization => {
            let mut out = factorization_checks();
            out.extend(covariance_checks());
            out
        }
        Suite::Phi => phi_checks(),
        Suite::Liealg => liealg_checks(),
        Suite::Realforms => realform_checks(),
        Suite::Reptheory => reptheory_checks(),
        Suite::Oppenheim => oppenheim_checks(),
        Suite::All => [
            Suite::Smatrix,
            Suite::Factorization,
            Suite::Phi,
            Suite::Liealg,
            Suite::Realforms,
            Suite::Reptheory,
            Suite::Oppenheim,
        ]
        .into_iter()
        .flat_map(run_suite)
        .collect(),
    }
}

/// JSON report for a list of outcomes.
pub fn report_json(suite: &str, outcomes: &[VerificationOutcome]) -> Value {
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    json!({
        "suite": suite,
        "passed": passed,
        "not_passed": outcomes.len() - passed,
        "outcomes": outcomes.iter().map(VerificationOutcome::to_json).collect::<Vec<_>>(),
    })
}

/// Run `f` as one check, turning errors and panics into failures.
fn check(
    name: &str,
    f: impl FnOnce() -> Result<VerificationOutcome, String>,
) -> VerificationOutcome {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(e)) => VerificationOutcome::fail(name, e),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            VerificationOutcome::fail(name, format!("panicked: {msg}"))
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn qi(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn unit<C: Coeff>(k: usize) -> Vec<C> {
    (0..DIM)
        .map(|i| if i == k { C::one() } else { C::zero() })
        .collect()
}

/// Term-level difference of two polynomials, or `None` when equal.
pub fn poly_diff<C: Coeff>(computed: &MultiPoly<C>, expected: &MultiPoly<C>) -> Option<Value> {
    if computed == expected {
        return None;
    }
    let delta = computed.sub(expected);
    let sample: Vec<Value> = delta
        .terms()
        .take(12)
        .map(|(m, _)| {
            json!({
                "monomial": MultiPoly::term(computed.arity(), m.clone(), C::one()).to_string(),
                "computed": computed.coeff(m).to_string(),
                "expected": expected.coeff(m).to_string(),
            })
        })
        .collect();
    let ratio = scalar_ratio(computed, expected).map(|r| r.to_string());
    Some(
        json!({ "terms_differing": delta.num_terms(), "first_terms": sample, "scalar_ratio": ratio }),
    )
}

/// `k` with `computed = k · expected`, when such a scalar exists.
fn scalar_ratio<C: Coeff>(computed: &MultiPoly<C>, expected: &MultiPoly<C>) -> Option<C> {
    let (m, e) = expected.leading()?;
    let k = computed.coeff(m).mul(&e.inv()?);
    (expected.scale(&k) == *computed).then_some(k)
}

/// Entry-level difference of two matrices, or `None` when equal.
pub fn matrix_diff<C: Coeff>(computed: &Mat<C>, expected: &Mat<C>) -> Option<Value> {
    if computed == expected {
        return None;
    }
    if (computed.rows(), computed.cols()) != (expected.rows(), expected.cols()) {
        return Some(
            json!({ "shape": [[computed.rows(), computed.cols()], [expected.rows(), expected.cols()]] }),
        );
    }
    let entries: Vec<Value> = (0..computed.rows())
        .flat_map(|i| (0..computed.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| computed.get(i, j) != expected.get(i, j))
        .map(|(i, j)| {
            json!({
                "row": i + 1,
                "col": j + 1,
                "computed": computed.get(i, j).to_json(),
                "expected": expected.get(i, j).to_json(),
            })
        })
        .collect();
    Some(json!({ "entries": entries }))
}

fn s_matrix_diff(computed: &SMatrix, expected: &SMatrix) -> Vec<Value> {
    (0..DIM)
        .flat_map(|i| (0..DIM).map(move |j| (i, j)))
        .filter(|&(i, j)| computed.entry(i, j) != expected.entry(i, j))
        .map(|(i, j)| {
            json!({
                "row": i + 1,
                "col": j + 1,
                "computed": covector_to_string(computed.entry(i, j)),
                "expected": covector_to_string(expected.entry(i, j)),
            })
        })
        .collect()
}

fn trivector_diff(computed: &Trivector, expected: &Trivector) -> Option<Value> {
    if computed == expected {
        return None;
    }
    let delta = computed.sub(expected);
    let terms: Vec<Value> = delta
        .terms()
        .map(|(ijk, _)| {
            let (i, j, k) = (ijk[0] as usize, ijk[1] as usize, ijk[2] as usize);
            json!({
                "ijk": ijk,
                "computed": rational_to_string(&computed.coeff(i, j, k)),
                "expected": rational_to_string(&expected.coeff(i, j, k)),
            })
        })
        .collect();
    Some(json!({ "terms": terms }))
}

fn value_diff(computed: impl std::fmt::Display, expected: impl std::fmt::Display) -> Value {
    json!({ "computed": computed.to_string(), "expected": expected.to_string() })
}

/// Seeded `(t, g)` with `t, g_ij ∈ {−2, …, 2}`, `t ≠ 0`, `det g ≠ 0`.
pub fn random_group_elements(seed: u64, count: usize) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let t = loop {
            let t: i64 = rng.gen_range(-2..=2);
            if t != 0 {
                break t;
            }
        };
        let g = Mat::from_fn(DIM, DIM, |_, _| qi(rng.gen_range(-2..=2)));
        if let Ok(el) = GroupElement::new(qi(t), g) {
            out.push(el);
        }
    }
    out
}

fn to_gaussian_element(el: &GroupElement) -> GroupElement<GaussianRational> {
    el.map(|c| GaussianRational::from(c.clone()))
}

/// Whether some movement of S_x along random group elements reproduces
/// the covariance law exactly.
fn s_equivariance_certificate(x: &Trivector, samples: usize) -> Result<(), Value> {
    let s = s_matrix(x);
    for (k, el) in random_group_elements(COVARIANCE_SEED, samples)
        .iter()
        .enumerate()
    {
        let moved = s_matrix(&act(el, x));
        let predicted = s.transform(el);
        if moved != predicted {
            return Err(json!({ "sample": k, "entries": s_matrix_diff(&moved, &predicted) }));
        }
    }
    Ok(())
}

/// Computed S-matrices against the tabulated ones, with an equivariance
/// certificate used to classify any disagreement.
pub fn smatrix_checks() -> Vec<VerificationOutcome> {
    let cases: [(&str, Trivector, SMatrix); 2] = [
        ("smatrix.w", w(), golden::s_w()),
        ("smatrix.wprime", w_prime(), golden::s_w_prime()),
    ];
    let mut out = Vec::new();
    for (name, x, reference) in cases {
        out.push(check(name, || {
            let computed = s_matrix(&x);
            let entries = s_matrix_diff(&computed, &reference);
            let note = json!({ "entries_compared": DIM * DIM });
            if entries.is_empty() {
                return Ok(VerificationOutcome::pass(name).with_note(note));
            }
            let classification = match s_equivariance_certificate(&x, 5) {
                Ok(()) => "golden suspected misprint",
                Err(_) => "computation differs from golden",
            };
            Ok(VerificationOutcome::mismatch(
                name,
                json!({ "entries": entries, "classification": classification }),
            ))
        }));
    }
    for (name, x) in [
        ("smatrix.equivariance.w", w()),
        ("smatrix.equivariance.wprime", w_prime()),
    ] {
        out.push(check(name, || {
            Ok(VerificationOutcome::from_diff(
                name,
                s_equivariance_certificate(&x, 5).err(),
            ))
        }));
    }
    out
}

fn expected_p(q: &MultiPoly, f: &MultiPoly) -> MultiPoly {
    q.mul(&f.mul(f)).scale(&qi(-PAIR_CONSTANT))
}

/// The factorization identities and the extracted forms of w and w′.
pub fn factorization_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    for (name, x, q, f) in [
        (
            "factorization.identity.w",
            w(),
            golden::q_w(),
            golden::f_w(),
        ),
        (
            "factorization.identity.wprime",
            w_prime(),
            golden::q_w_prime(),
            golden::f_w_prime(),
        ),
    ] {
        out.push(check(name, || {
            Ok(VerificationOutcome::from_diff(
                name,
                poly_diff(&p_poly(&x), &expected_p(&q, &f)),
            ))
        }));
    }
    let name = "factorization.extract.w";
    out.push(check(name, || {
        let pair = factor_invariants(&w(), None).map_err(err)?;
        let mut diff = poly_diff(&pair.q.to_poly(), &golden::q_w());
        if diff.is_none()
            && *pair.f.poly() != golden::f_w()
            && *pair.f.poly() != golden::f_w().neg()
        {
            diff = poly_diff(pair.f.poly(), &golden::f_w());
        }
        Ok(VerificationOutcome::from_diff(name, diff)
            .with_note(json!({ "f_sign_exact": pair.sign_exact })))
    }));
    let name = "factorization.extract.w.transported";
    out.push(check(name, || {
        let pair = factor_invariants(&w(), Some(&GroupElement::identity())).map_err(err)?;
        let diff = poly_diff(&pair.q.to_poly(), &golden::q_w())
            .or_else(|| poly_diff(pair.f.poly(), &golden::f_w()));
        Ok(VerificationOutcome::from_diff(name, diff))
    }));
    let name = "factorization.extract.wprime";
    out.push(check(name, || {
        // the same positive constant as for w forces Q to flip sign here
        let pair = factor_invariants(&w_prime(), None).map_err(err)?;
        let f_ok = *pair.f.poly() == golden::f_w_prime() || *pair.f.poly() == golden::f_w_prime().neg();
        let diff = poly_diff(&pair.q.to_poly(), &golden::q_w_prime().neg())
            .or_else(|| (!f_ok).then(|| poly_diff(pair.f.poly(), &golden::f_w_prime()).expect("differs")));
        let sig = signature(&pair.q);
        Ok(VerificationOutcome::from_diff(name, diff)
            .with_note(json!({ "q_equals": "-Q_wprime", "signature": [sig.0, sig.1], "q_degenerate": pair.q.det().is_zero() })))
    }));
    out
}

/// Covariance of S, P, Q, F and Φ under seeded random group elements.
pub fn covariance_checks() -> Vec<VerificationOutcome> {
    let q_w = QuadraticForm::from_poly(&golden::q_w()).expect("quadratic");
    let f_w = CubicForm::new(golden::f_w()).expect("cubic");
    let p_w = p_poly(&w());
    let phi_w = golden::phi_w();
    let mut out = Vec::new();
    for (k, el) in random_group_elements(COVARIANCE_SEED, COVARIANCE_SAMPLES)
        .iter()
        .enumerate()
    {
        let x = act(el, &w());
        let t = el.t().clone();
        let det = el.det_g();

        let name = format!("covariance.s.{k}");
        out.push(check(&name, || {
            let entries = s_matrix_diff(&s_matrix(&x), &s_matrix(&w()).transform(el));
            Ok(VerificationOutcome::from_diff(
                &name,
                (!entries.is_empty()).then(|| json!({ "entries": entries })),
            ))
        }));

        let name = format!("covariance.p.{k}");
        let p_x = p_poly(&x);
        out.push(check(&name, || {
            let ginv = el.g().inverse().map_err(err)?;
            let predicted = p_w
                .linear_substitute(&ginv)
                .map_err(err)?
                .scale(&t.pow(24).mul(&det.pow(10)));
            Ok(VerificationOutcome::from_diff(
                &name,
                poly_diff(&p_x, &predicted),
            ))
        }));

        let name = format!("covariance.qf.{k}");
        out.push(check(&name, || {
            let pair = factor_invariants(&x, Some(&to_gaussian_element(el))).map_err(err)?;
            let diff = poly_diff(&pair.q.to_poly(), &q_w.transport(el).to_poly())
                .or_else(|| poly_diff(pair.f.poly(), f_w.transport(el).poly()))
                .or_else(|| poly_diff(&pair.product(), &p_x));
            Ok(VerificationOutcome::from_diff(&name, diff))
        }));

        let name = format!("covariance.qf_untransported.{k}");
        out.push(check(&name, || {
            // without a transport the pair is fixed only up to (μ²Q, F/μ)
            let pair = factor_invariants(&x, None).map_err(err)?;
            let q_t = q_w.transport(el).to_poly();
            let f_t = f_w.transport(el);
            let lambda = scalar_ratio(&pair.q.to_poly(), &q_t);
            let mu = scalar_ratio(f_t.poly(), pair.f.poly());
            let ok = matches!((&lambda, &mu), (Some(l), Some(m)) if *l == m.mul(m));
            let diff = (!ok).then(|| {
                json!({
                    "q_ratio": lambda.as_ref().map(rational_to_string),
                    "f_ratio": mu.as_ref().map(rational_to_string),
                })
            });
            Ok(VerificationOutcome::from_diff(&name, diff)
                .with_note(json!({ "f_scale": mu.as_ref().map(rational_to_string) })))
        }));

        let name = format!("covariance.phi.{k}");
        out.push(check(&name, || {
            let computed = phi(&x, Some(&to_gaussian_element(el))).map_err(err)?;
            let predicted = phi_w
                .push_forward(el.g())
                .map_err(err)?
                .scale(&t.pow(31).mul(&det.pow(12)));
            Ok(VerificationOutcome::from_diff(
                &name,
                trivector_diff(computed.as_trivector(), predicted.as_trivector()),
            ))
        }));
    }
    out
}

/// Φ_w against the tabulated dual trivector.
pub fn phi_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    let name = "phi.w";
    out.push(check(name, || {
        let computed = phi(&w(), Some(&GroupElement::identity())).map_err(err)?;
        Ok(VerificationOutcome::from_diff(
            name,
            trivector_diff(computed.as_trivector(), golden::phi_w().as_trivector()),
        ))
    }));
    let name = "phi.w.untransported";
    out.push(check(name, || {
        let computed = phi(&w(), None).map_err(err)?;
        Ok(VerificationOutcome::from_diff(
            name,
            trivector_diff(computed.as_trivector(), golden::phi_w().as_trivector()),
        ))
    }));
    let name = "phi.w.e1e2e3";
    out.push(check(name, || {
        let value = phi(&w(), None).map_err(err)?.eval_basis(1, 2, 3);
        Ok(VerificationOutcome::from_diff(
            name,
            (value != qi(-1)).then(|| value_diff(&value, -1)),
        ))
    }));
    let name = "phi.stabilizer";
    out.push(check(name, || {
        let tau = GroupElement::new(qi(1), tau_matrix()).map_err(err)?;
        let moved = act(&tau, &w());
        let diff = trivector_diff(
            phi(&moved, None).map_err(err)?.as_trivector(),
            golden::phi_w().as_trivector(),
        );
        Ok(VerificationOutcome::from_diff(name, diff))
    }));
    out
}

fn commutator_coords(a: usize, b: usize) -> Vec<Rational> {
    let (x, y) = (
        coords_to_matrix(&unit::<Rational>(a)),
        coords_to_matrix(&unit::<Rational>(b)),
    );
    matrix_to_coords(&x.mul(&y).sub(&y.mul(&x))).expect("commutators are traceless")
}

/// `det` of the 3×3 matrix of a coordinate vector, as a cubic polynomial.
fn symbolic_det() -> MultiPoly {
    let m = PolyMatrix::from_fn(3, DIM, |i, j| {
        let coeffs: Vec<Rational> = (0..DIM)
            .map(|k| coords_to_matrix(&unit::<Rational>(k)).get(i, j).clone())
            .collect();
        MultiPoly::linear(&coeffs)
    });
    m.det()
}

/// The adjoint matrix, the Killing and trace forms, and conjugation.
pub fn liealg_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    let name = "liealg.ad_vs_bracket";
    out.push(check(name, || {
        let bad: Vec<Value> = (0..DIM)
            .flat_map(|a| (0..DIM).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                ad_matrix(&unit::<Rational>(a)).mul_vec(&unit(b)) != commutator_coords(a, b)
            })
            .map(|(a, b)| json!([a + 1, b + 1]))
            .collect();
        Ok(VerificationOutcome::from_diff(
            name,
            (!bad.is_empty()).then(|| json!({ "pairs": bad })),
        ))
    }));
    let name = "liealg.ad_vs_table";
    out.push(check(name, || {
        let table = table_in_coordinates(&golden::ad_table());
        let sym = ad_matrix_symbolic();
        let bad: Vec<Value> = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .filter(|&(i, j)| &table[i][j] != sym.get(i, j))
            .map(|(i, j)| {
                json!({ "row": i + 1, "col": j + 1, "computed": sym.get(i, j).to_string(), "expected": table[i][j].to_string() })
            })
            .collect();
        Ok(VerificationOutcome::from_diff(name, (!bad.is_empty()).then(|| json!({ "entries": bad }))))
    }));
    let name = "liealg.killing_is_six_q";
    out.push(check(name, || {
        let q_w = QuadraticForm::from_poly(&golden::q_w()).map_err(err)?;
        Ok(VerificationOutcome::from_diff(
            name,
            matrix_diff(&killing_gram(), &q_w.gram().scale(&qi(6))),
        ))
    }));
    let name = "liealg.c3_value";
    out.push(check(name, || {
        let c = trilinear_c(&unit::<Rational>(0), &unit(1), &unit(2));
        Ok(VerificationOutcome::from_diff(
            name,
            (c != qi(-6)).then(|| value_diff(&c, -6)),
        ))
    }));
    let name = "liealg.c_is_six_phi";
    out.push(check(name, || {
        let phi_w = golden::phi_w();
        let mut bad = Vec::new();
        let mut compared = 0;
        for a in 0..DIM {
            for b in a + 1..DIM {
                for c in b + 1..DIM {
                    compared += 1;
                    let lhs = trilinear_c(&unit::<Rational>(a), &unit(b), &unit(c));
                    let rhs = phi_w.eval_basis(a + 1, b + 1, c + 1) * qi(6);
                    if lhs != rhs {
                        bad.push(json!({ "ijk": [a + 1, b + 1, c + 1], "computed": lhs.to_string(), "expected": rhs.to_string() }));
                    }
                }
            }
        }
        Ok(VerificationOutcome::from_diff(name, (!bad.is_empty()).then(|| json!({ "triples": bad })))
            .with_note(json!({ "triples_compared": compared })))
    }));
    let name = "liealg.trace_form";
    out.push(check(name, || {
        let q_w = QuadraticForm::from_poly(&golden::q_w()).map_err(err)?;
        let traces = Mat::from_fn(DIM, DIM, |a, b| {
            coords_to_matrix(&unit::<Rational>(a))
                .mul(&coords_to_matrix(&unit(b)))
                .trace()
        });
        Ok(VerificationOutcome::from_diff(
            name,
            matrix_diff(q_w.gram(), &traces),
        ))
    }));
    let name = "liealg.cubic_is_det";
    out.push(check(name, || {
        Ok(VerificationOutcome::from_diff(
            name,
            poly_diff(&golden::f_w(), &symbolic_det()),
        ))
    }));
    for i in [1u8, 2] {
        let name = format!("liealg.conjugation.{i}");
        out.push(check(&name, || {
            let rf = real_form(i).map_err(err)?;
            let q = rf.q.to_gaussian();
            let q_inv = q.inverse().map_err(err)?;
            let mut rng = ChaCha8Rng::seed_from_u64(POINT_SEED + u64::from(i));
            for sample in 0..10 {
                let v: Vec<GaussianRational> = (0..DIM)
                    .map(|_| {
                        GaussianRational::new(rand_rational(&mut rng), rand_rational(&mut rng))
                    })
                    .collect();
                let conj_v: Vec<GaussianRational> = v.iter().map(Coeff::conj).collect();
                let lhs = q.mul(&ad_matrix(&conj_v)).mul(&q_inv);
                let p = p_h(rf.hermitian(), &coords_to_matrix(&v));
                let rhs = ad_matrix(&matrix_to_coords(&p).map_err(err)?);
                if let Some(d) = matrix_diff(&lhs, &rhs) {
                    return Ok(VerificationOutcome::mismatch(
                        &name,
                        json!({ "sample": sample, "diff": d }),
                    ));
                }
            }
            Ok(VerificationOutcome::pass(&name))
        }));
    }
    out
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())
}

/// Transport data, transported forms and signatures of the real forms.
pub fn realform_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    let q_w = QuadraticForm::from_poly(&golden::q_w()).expect("quadratic");
    let name = "realforms.signature.w";
    out.push(check(name, || {
        let sig = signature(&q_w);
        Ok(VerificationOutcome::from_diff(
            name,
            (sig != (5, 3)).then(|| json!({ "computed": [sig.0, sig.1], "expected": [5, 3] })),
        ))
    }));
    for i in [1u8, 2] {
        let rf = match real_form(i) {
            Ok(rf) => rf,
            Err(e) => {
                out.push(VerificationOutcome::fail(
                    format!("realforms.{i}.construction"),
                    e.to_string(),
                ));
                continue;
            }
        };
        let name = format!("realforms.{i}.q_involution");
        out.push(check(&name, || {
            Ok(VerificationOutcome::from_diff(
                &name,
                matrix_diff(&rf.q.mul(&rf.q), &Mat::identity(DIM)),
            ))
        }));
        let name = format!("realforms.{i}.q_from_h");
        out.push(check(&name, || {
            let lhs = rf.h.inverse().map_err(err)?.mul(&rf.h.conj());
            Ok(VerificationOutcome::from_diff(
                &name,
                matrix_diff(&lhs, &rf.q.to_gaussian()),
            ))
        }));
        let name = format!("realforms.{i}.det_h");
        out.push(check(&name, || {
            let d = rf.h.det();
            let want = GaussianRational::from_ints(0, -8);
            Ok(VerificationOutcome::from_diff(
                &name,
                (d != want).then(|| value_diff(&d, &want)),
            ))
        }));
        let name = format!("realforms.{i}.representative");
        out.push(check(&name, || {
            Ok(VerificationOutcome::from_diff(
                &name,
                trivector_diff(&rf.w_i, &golden::w_real(i)),
            ))
        }));

        let pair = factor_invariants(&rf.w_i, Some(&rf.transport()));
        let name = format!("realforms.{i}.quadratic_form");
        out.push(check(&name, || {
            let pair = pair.clone().map_err(err)?;
            let computed = pair.q.to_poly();
            let printed = poly_diff(&computed, &golden::q_w_real_as_printed(i));
            Ok(VerificationOutcome::from_diff(&name, poly_diff(&computed, &golden::q_w_real_cross_term(i)))
                .with_note(json!({ "literal_display_differs": printed.is_some(), "literal_display_diff": printed })))
        }));
        let name = format!("realforms.{i}.signature");
        out.push(check(&name, || {
            let pair = pair.clone().map_err(err)?;
            let sig = signature(&pair.q);
            let want = if i == 1 { (4, 4) } else { (0, 8) };
            Ok(VerificationOutcome::from_diff(
                &name,
                (sig != want)
                    .then(|| json!({ "computed": [sig.0, sig.1], "expected": [want.0, want.1] })),
            ))
        }));
        let name = format!("realforms.{i}.scaling");
        out.push(check(&name, || {
            let pair = pair.clone().map_err(err)?;
            let h_inv = rf.h.inverse().map_err(err)?;
            let q_wg = q_w.map(|c| GaussianRational::from(c.clone()));
            let f_wg = golden::f_w().to_gaussian();
            let q_i = pair.q.map(|c| GaussianRational::from(c.clone()));
            let f_i = pair.f.poly().to_gaussian();
            let mut rng = ChaCha8Rng::seed_from_u64(POINT_SEED + 10 + u64::from(i));
            for sample in 0..10 {
                let v: Vec<Rational> = (0..DIM).map(|_| rand_rational(&mut rng)).collect();
                let vg: Vec<GaussianRational> = v.iter().map(|c| GaussianRational::from(c.clone())).collect();
                let pulled = h_inv.mul_vec(&vg);
                let q_lhs = q_i.eval(&vg);
                let q_rhs = q_wg.eval(&pulled).mul(&GaussianRational::from(qi(4096)));
                let f_lhs = f_i.eval(&vg);
                let f_rhs = f_wg.eval(&pulled).mul(&GaussianRational::from_ints(0, 512));
                let x = rf.to_su(&v).map_err(err)?;
                let tr = x.mul(&x).trace().mul(&GaussianRational::from(qi(4096)));
                for (what, l, r) in [("q", &q_lhs, &q_rhs), ("f", &f_lhs, &f_rhs), ("trace", &q_lhs, &tr)] {
                    if l != r {
                        return Ok(VerificationOutcome::mismatch(
                            &name,
                            json!({ "sample": sample, "identity": what, "computed": l.to_string(), "expected": r.to_string() }),
                        ));
                    }
                }
            }
            Ok(VerificationOutcome::pass(&name))
        }));
    }
    out
}

fn rs(name: &str) -> Result<RootSystem, String> {
    let (kind, rank) = parse_type(name).map_err(err)?;
    root_system(kind, rank).map_err(err)
}

fn decomp(pairs: &[(&[i64], u64)]) -> DecompList {
    pairs.iter().map(|(w, m)| (w.to_vec(), *m)).collect()
}

/// Decompositions, Weyl dimensions, table rows and the dimension-8 screen.
pub fn reptheory_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    let name = "reptheory.adjoint_squared";
    out.push(check(name, || {
        let a2 = rs("A2")?;
        let d = tensor_decompose(&a2, &[1, 1], &[1, 1]).map_err(err)?;
        let want = decomp(&[
            (&[0, 0], 1),
            (&[1, 1], 2),
            (&[3, 0], 1),
            (&[0, 3], 1),
            (&[2, 2], 1),
        ]);
        let dims: Vec<Value> = d
            .keys()
            .map(|w| {
                json!([
                    w,
                    weyl_dim(&a2, w).map(|x| x.to_string()).unwrap_or_default()
                ])
            })
            .collect();
        let diff = (d != want).then(
            || json!({ "computed": weights_to_json(&d), "expected": weights_to_json(&want) }),
        );
        Ok(VerificationOutcome::from_diff(name, diff).with_note(json!({ "summand_dims": dims })))
    }));
    let name = "reptheory.adjoint_squared_dims";
    out.push(check(name, || {
        let a2 = rs("A2")?;
        let dims: Vec<u64> = [[0, 0], [1, 1], [3, 0], [0, 3], [2, 2]]
            .iter()
            .map(|w| irr_character(&a2, w).map(|c| c.dim()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let want = vec![1, 8, 10, 10, 27];
        Ok(VerificationOutcome::from_diff(
            name,
            (dims != want).then(|| json!({ "computed": dims, "expected": want })),
        ))
    }));
    let name = "reptheory.alt3_adjoint";
    out.push(check(name, || {
        let a2 = rs("A2")?;
        let d = alt3_decompose(&a2, &[1, 1]).map_err(err)?;
        let trivial = d.get(&vec![0, 0]).copied().unwrap_or(0);
        let total = decomp_dim(&a2, &d);
        let ok = trivial == 1 && total == 56.into();
        let diff = (!ok).then(|| json!({ "trivial": trivial, "total_dim": total.to_string() }));
        Ok(VerificationOutcome::from_diff(name, diff)
            .with_note(json!({ "decomposition": weights_to_json(&d) })))
    }));
    let name = "reptheory.a3_dimensions";
    out.push(check(name, || {
        let a3 = rs("A3")?;
        let cases: [(&[i64], u64); 9] = [
            (&[2, 0, 0], 10),
            (&[0, 0, 2], 10),
            (&[1, 0, 1], 15),
            (&[1, 1, 0], 20),
            (&[0, 1, 1], 20),
            (&[0, 2, 0], 20),
            (&[1, 0, 0], 4),
            (&[0, 0, 1], 4),
            (&[0, 1, 0], 6),
        ];
        let bad: Vec<Value> = cases
            .iter()
            .filter_map(|(w, d)| {
                let got = weyl_dim(&a3, w)
                    .map(|x| x.to_string())
                    .unwrap_or_else(|e| e.to_string());
                (got != d.to_string())
                    .then(|| json!({ "weight": w, "computed": got, "expected": d }))
            })
            .collect();
        Ok(VerificationOutcome::from_diff(
            name,
            (!bad.is_empty()).then(|| json!({ "weights": bad })),
        ))
    }));
    let name = "reptheory.table";
    out.push(check(name, || {
        let rows = table45(1..=8);
        let exceptional = [("G2", 14, "7"), ("F4", 52, "26"), ("E6", 78, "27"), ("E7", 133, "56"), ("E8", 248, "3875")];
        let mut bad = Vec::new();
        for row in &rows {
            let (kind, n) = parse_type(&row.name).map_err(err)?;
            let want = match crate::reptheory::classical_formula(kind, n) {
                Some((alg, rep)) => (alg, rep.to_string()),
                None => {
                    let (_, alg, rep) = exceptional.iter().find(|(nm, _, _)| *nm == row.name).ok_or("unexpected row")?;
                    (*alg, rep.to_string())
                }
            };
            if (row.algebra_dim, row.rep_dim.to_string()) != want || row.adjoint_dim != row.algebra_dim.into() {
                bad.push(json!({ "row": row.name, "computed": [row.algebra_dim, row.rep_dim.to_string()], "expected": [want.0, want.1] }));
            }
        }
        Ok(VerificationOutcome::from_diff(name, (!bad.is_empty()).then(|| json!({ "rows": bad })))
            .with_note(json!({ "rows_compared": rows.len(), "e8_adjoint": "248", "minimality_asserted": false })))
    }));
    let name = "reptheory.dimension_eight";
    out.push(check(name, || {
        let a3 = irreps_of_dim(&rs("A3")?, 8);
        let a2 = irreps_of_dim(&rs("A2")?, 8);
        let ok = a3.is_empty() && a2 == vec![vec![1, 1]];
        Ok(VerificationOutcome::from_diff(
            name,
            (!ok).then(|| json!({ "a3": a3, "a2": a2 })),
        ))
    }));
    out
}

fn close(computed: f64, expected: f64, tol: f64) -> bool {
    (computed - expected).abs() <= tol * expected.abs().max(1.0)
}

fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Floating-point lab checks: construction, integrality, agreement with
/// the exact layer and the gap trend.
pub fn oppenheim_checks() -> Vec<VerificationOutcome> {
    let mut out = Vec::new();
    let basis = LatticeBasis::anchored();
    for r in [1.0, -1.0, 5.0, -5.0, 100.0] {
        let name = format!("oppenheim.construct.{r}");
        out.push(check(&name, || {
            let c = construct_h(r, &basis, 1.0).map_err(err)?;
            let diff = (!close(c.achieved, r, CONSTRUCT_TOL))
                .then(|| json!({ "computed": c.achieved, "expected": r }));
            Ok(VerificationOutcome::from_diff(&name, diff)
                .with_note(json!({ "t": c.t, "det_h": c.h.det() })))
        }));
    }
    let name = "oppenheim.integer_values";
    out.push(check(name, || {
        let cfg = ScanConfig::new(
            0,
            RealLinearMap::identity(),
            2,
            (-10.5, 10.5),
            ScanMode::Exhaustive,
        );
        let rep = scan(&cfg).map_err(err)?;
        let bad: Vec<f64> = rep
            .values
            .iter()
            .copied()
            .filter(|v| v.fract() != 0.0)
            .take(10)
            .collect();
        Ok(VerificationOutcome::from_diff(
            name,
            (!bad.is_empty()).then(|| json!({ "non_integers": bad })),
        )
        .with_note(json!({ "count": rep.count, "max_gap": rep.max_gap })))
    }));
    for i in [0u8, 1] {
        let name = format!("oppenheim.exact_layer.{i}");
        out.push(check(&name, || {
            let (q_exact, f_exact, q_scale, f_scale) = if i == 0 {
                (golden::q_w(), golden::f_w(), 1.0, 1.0)
            } else {
                let rf = real_form(1).map_err(err)?;
                let pair = factor_invariants(&rf.w_i, Some(&rf.transport())).map_err(err)?;
                (pair.q.to_poly(), pair.f.poly().clone(), 4096.0, 512.0)
            };
            let mut rng = ChaCha8Rng::seed_from_u64(POINT_SEED + 20 + u64::from(i));
            let id = RealLinearMap::identity();
            for sample in 0..1000 {
                let v: [i64; DIM] = loop {
                    let v = std::array::from_fn(|_| rng.gen_range(-5..=5));
                    if v.iter().any(|&c| c != 0) {
                        break v;
                    }
                };
                let exact: Vec<Rational> = v.iter().map(|&c| qi(c)).collect();
                let (q, f) = form_values(i, &id, &v).map_err(err)?;
                let q_want = to_f64(&q_exact.eval(&exact)) / q_scale;
                let f_want = to_f64(&f_exact.eval(&exact)) / f_scale;
                if !close(q, q_want, CROSS_CHECK_TOL) || !close(f, f_want, CROSS_CHECK_TOL) {
                    return Ok(VerificationOutcome::mismatch(
                        &name,
                        json!({ "sample": sample, "v": v, "computed": [q, f], "expected": [q_want, f_want] }),
                    ));
                }
            }
            Ok(VerificationOutcome::pass(&name).with_note(json!({ "vectors": 1000 })))
        }));
    }
    let name = "oppenheim.gap_trend";
    out.push(check(name, || {
        let g = RealLinearMap::seeded_near_identity(GAP_SEED, GAP_EPS);
        let gaps: Vec<Option<f64>> = (1..=3)
            .map(|n| {
                scan(&ScanConfig::new(
                    0,
                    g.clone(),
                    n,
                    (-10.0, 10.0),
                    ScanMode::Exhaustive,
                ))
                .map(|r| r.max_gap)
            })
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let ok = match gaps[..] {
            [Some(a), Some(b), Some(c)] => b <= a && c <= b && c < a,
            _ => false,
        };
        let rational = rationality_report(0, &g, 1_000_000, 1e-13).map_err(err)?;
        Ok(
            VerificationOutcome::from_diff(name, (!ok).then(|| json!({ "max_gaps": gaps })))
                .with_note(json!({ "max_gaps": gaps, "rationality": rational.verdict() })),
        )
    }));
    let name = "oppenheim.rationality";
    out.push(check(name, || {
        let id =
            rationality_report(0, &RealLinearMap::identity(), 1_000_000, 1e-13).map_err(err)?;
        let mut d = [1.0; DIM];
        d[0] = 2f64.powf(0.25);
        let irr = rationality_report(0, &RealLinearMap::diag(&d).map_err(err)?, 1_000_000, 1e-13)
            .map_err(err)?;
        let ok = id.common_denominator == Some(1) && !irr.rational_detected();
        Ok(VerificationOutcome::from_diff(
            name,
            (!ok).then(|| json!({ "identity": id.verdict(), "quartic_root": irr.verdict() })),
        ))
    }));
    out
}
