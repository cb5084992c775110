// Quadratic and cubic invariants of w read off from det S_w, and the dual
// trivector built from them.

use pvs::invariants::{factor_invariants, phi, PAIR_CONSTANT};
use pvs::liealg::signature;
use pvs::trivector::{p_poly, w, GroupElement};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = w();
    let p = p_poly(&x);
    println!("det S_w has {} terms", p.num_terms());

    let pair = factor_invariants(&x, Some(&GroupElement::identity()))?;
    println!("Q = {}", pair.q);
    println!("F = {}", pair.f);
    println!(
        "det S_w = {PAIR_CONSTANT} * Q * F^2: {}",
        pair.product() == p
    );
    let (pos, neg) = signature(&pair.q);
    println!("signature of Q: ({pos}, {neg})");
    assert_eq!((pos, neg), (5, 3));

    let dual = phi(&x, Some(&GroupElement::identity()))?;
    println!("Phi_w = {dual}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
