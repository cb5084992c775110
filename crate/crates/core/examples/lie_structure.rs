// sl(3) in the fixed basis: adjoint matrices, the Killing form, the cubic
// trace form, and the signatures of the three real forms.

use pvs::golden;
use pvs::invariants::{factor_invariants, QuadraticForm};
use pvs::liealg::{ad_matrix, killing_gram, real_form, signature, trilinear_c};
use pvs::polyexact::Rational;
use pvs::trivector::DIM;

fn unit(k: usize) -> Vec<Rational> {
    (0..DIM)
        .map(|i| Rational::from_integer(i64::from(i == k).into()))
        .collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("ad(e7) = {}", ad_matrix(&unit(6)).to_json());
    let q_w = QuadraticForm::from_poly(&golden::q_w())?;
    assert_eq!(
        killing_gram(),
        q_w.gram().scale(&Rational::from_integer(6.into()))
    );
    println!("Killing form = 6 * Q_w");
    println!(
        "C(e1, e2, e3) = {}",
        trilinear_c(&unit(0), &unit(1), &unit(2))
    );

    println!("split form: signature {:?}", signature(&q_w));
    for i in [1, 2] {
        let rf = real_form(i)?;
        let pair = factor_invariants(&rf.w_i, Some(&rf.transport()))?;
        println!(
            "real form {i}: w_{i} = {}, signature {:?}",
            rf.w_i,
            signature(&pair.q)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
