use proptest::prelude::*;

use num_traits::ToPrimitive;

use pvs::invariants::{is_semistable, QuadraticForm};
use pvs::liealg::{ad_matrix, bracket, coords_to_matrix, killing_b, matrix_to_coords, to_su};
use pvs::oppenheim::{
    form_values, primitive_count_formula, primitive_vectors, rational_approx, scan, RealLinearMap,
    ScanConfig, ScanMode,
};
use pvs::polyexact::{Coeff, GaussianRational, Mat, Monomial, MultiPoly, Rational};
use pvs::reptheory::{
    decomp_dim, irr_character, root_system, tensor_decompose, weyl_dim, RootType,
};
use pvs::trivector::{act, s_matrix, w, GroupElement, Trivector, DIM};

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn coords() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), DIM)
}

/// Polynomials in three variables of degree at most 3.
fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u8..=1, 0u8..=1, 0u8..=1), -4i64..=4), 1..5).prop_map(|terms| {
        MultiPoly::from_terms(
            3,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::from_exps(&[a, b, c]), Rational::from_i64(k))),
        )
    })
}

fn trivector() -> impl Strategy<Value = Trivector> {
    prop::collection::vec(((1usize..=8, 1usize..=8, 1usize..=8), -3i64..=3), 0..6).prop_map(
        |terms| {
            let mut x = Trivector::zero();
            for ((i, j, k), c) in terms {
                if i != j && j != k && i != k {
                    x.add_wedge(i, j, k, &Rational::from_i64(c)).unwrap();
                }
            }
            x
        },
    )
}

fn group_element() -> impl Strategy<Value = GroupElement> {
    (
        prop::sample::select(vec![-2i64, -1, 1, 2]),
        prop::collection::vec(-1i64..=1, DIM * DIM),
    )
        .prop_map(|(t, entries)| {
            // unit lower-triangular times a diagonal shift keeps g invertible
            let g = Mat::from_fn(DIM, DIM, |i, j| {
                Rational::from_i64(match i.cmp(&j) {
                    std::cmp::Ordering::Greater => entries[i * DIM + j],
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Less => 0,
                })
            });
            GroupElement::new(Rational::from_i64(t), g).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_divides_back(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        let prod = p.mul(&q);
        prop_assert_eq!(prod.exact_divide(&q).unwrap(), p.clone());
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn square_root_of_square(p in poly()) {
        prop_assume!(!p.is_zero());
        let root = p.mul(&p).sqrt().unwrap();
        prop_assert!(root == p || root == p.neg());
    }

    #[test]
    fn swapping_indices_flips_sign(i in 1usize..=8, j in 1usize..=8, k in 1usize..=8) {
        prop_assume!(i != j && j != k && i != k);
        let x = Trivector::<Rational>::basis(i, j, k).unwrap();
        let y = Trivector::<Rational>::basis(j, i, k).unwrap();
        prop_assert_eq!(x.add(&y), Trivector::zero());
    }

    #[test]
    fn action_composes(a in group_element(), b in group_element(), x in trivector()) {
        prop_assert_eq!(act(&a, &act(&b, &x)), act(&a.compose(&b), &x));
    }

    #[test]
    fn s_matrix_is_equivariant(el in group_element(), x in trivector()) {
        prop_assert_eq!(s_matrix(&act(&el, &x)), s_matrix(&x).transform(&el));
    }

    #[test]
    fn s_matrix_is_symmetric(x in trivector()) {
        prop_assert!(s_matrix(&x).is_symmetric());
    }

    #[test]
    fn coordinates_round_trip(v in coords()) {
        prop_assert_eq!(matrix_to_coords(&coords_to_matrix(&v)).unwrap(), v);
    }

    #[test]
    fn bracket_is_antisymmetric_and_ad_is_a_representation(v in coords(), u in coords()) {
        let vu = bracket(&v, &u);
        let uv: Vec<Rational> = bracket(&u, &v).iter().map(Coeff::neg).collect();
        prop_assert_eq!(&vu, &uv);
        let (a, b) = (ad_matrix(&v), ad_matrix(&u));
        prop_assert_eq!(ad_matrix(&vu), a.mul(&b).sub(&b.mul(&a)));
    }

    #[test]
    fn killing_form_is_invariant(x in coords(), y in coords(), z in coords()) {
        // B([x, y], z) = B(x, [y, z])
        prop_assert_eq!(killing_b(&bracket(&x, &y), &z), killing_b(&x, &bracket(&y, &z)));
    }

    #[test]
    fn quadratic_form_polarization(v in coords(), u in coords()) {
        let q = QuadraticForm::from_poly(&pvs::golden::q_w()).unwrap();
        let sum: Vec<Rational> = v.iter().zip(&u).map(|(a, b)| a + b).collect();
        let two = Rational::from_i64(2);
        prop_assert_eq!(q.eval(&sum) - q.eval(&v) - q.eval(&u), q.polarize(&v, &u) * two);
    }

    #[test]
    fn character_dimension_matches_weyl(a in 0i64..=3, b in 0i64..=3) {
        for kind in [RootType::A, RootType::B, RootType::G] {
            let rs = root_system(kind, 2).unwrap();
            let chi = irr_character(&rs, &[a, b]).unwrap();
            prop_assert_eq!(num_bigint::BigInt::from(chi.dim()), weyl_dim(&rs, &[a, b]).unwrap());
        }
    }

    #[test]
    fn tensor_dimensions_multiply(a in 0i64..=2, b in 0i64..=2, c in 0i64..=2, d in 0i64..=2) {
        let rs = root_system(RootType::A, 2).unwrap();
        let dec = tensor_decompose(&rs, &[a, b], &[c, d]).unwrap();
        prop_assert_eq!(decomp_dim(&rs, &dec), weyl_dim(&rs, &[a, b]).unwrap() * weyl_dim(&rs, &[c, d]).unwrap());
    }

    #[test]
    fn continued_fractions_recover_small_fractions(p in -500i64..=500, q in 1u64..=900) {
        let (n, d) = rational_approx(p as f64 / q as f64, 1000, 1e-13).unwrap();
        prop_assert_eq!(n as i128 * q as i128, p as i128 * d as i128);
    }

    #[test]
    fn sampled_vectors_are_primitive_and_reproducible(seed in 0u64..1000, n in 1u32..=50) {
        let a = primitive_vectors(n, ScanMode::Sample { count: 40, seed }).unwrap();
        prop_assert_eq!(&a, &primitive_vectors(n, ScanMode::Sample { count: 40, seed }).unwrap());
        for v in &a {
            prop_assert_eq!(v.iter().fold(0i64, |g, &c| num_integer::gcd(g, c)), 1);
            prop_assert!(v.iter().all(|c| c.unsigned_abs() <= u64::from(n)));
        }
    }

    #[test]
    fn unitary_trace_and_cubic_are_real(v in prop::collection::vec(-9i64..=9, DIM)) {
        let exact: Vec<Rational> = v.iter().map(|&c| Rational::from_i64(c)).collect();
        let x = to_su(1, &exact).unwrap();
        let tr = x.mul(&x).trace();
        let cubic = x.det().mul(&GaussianRational::i());
        prop_assert!(tr.is_real() && cubic.is_real());
        let v: [i64; DIM] = v.try_into().unwrap();
        let (q, f) = form_values(1, &RealLinearMap::identity(), &v).unwrap();
        let tol = |a: f64| 1e-12 * a.abs().max(1.0);
        let (tr, cubic) = (tr.to_real().unwrap(), cubic.to_real().unwrap());
        prop_assert!((q - tr.to_f64().unwrap()).abs() <= tol(q));
        prop_assert!((f - cubic.to_f64().unwrap()).abs() <= tol(f));
    }
}

#[test]
fn exhaustive_counts_match_mobius() {
    for n in 1..=2 {
        assert_eq!(
            primitive_vectors(n, ScanMode::Exhaustive).unwrap().len() as u64,
            primitive_count_formula(n)
        );
    }
}

#[test]
fn sampled_scan_is_reproducible() {
    let g = RealLinearMap::seeded_near_identity(5, 0.1);
    let cfg = ScanConfig::new(
        1,
        g,
        8,
        (-50.0, 50.0),
        ScanMode::Sample {
            count: 200_000,
            seed: 3,
        },
    );
    let a = scan(&cfg).unwrap();
    let b = scan(&cfg).unwrap();
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
}

proptest! {
    // each case runs a full exact factorization
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn orbit_points_stay_semistable(el in group_element()) {
        prop_assert!(is_semistable(&act(&el, &w())));
    }
}
