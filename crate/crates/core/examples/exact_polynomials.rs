// Exact sparse polynomials: a determinant of linear forms, exact division
// and an exact square root.

use pvs::polyexact::{poly_det, MultiPoly, PolyMatrix, Rational};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = MultiPoly::<Rational>::parse(3, "v1 + v2")?;
    let y = MultiPoly::<Rational>::parse(3, "v1 - 2*v3")?;

    // det [[x, y], [y, x]] = (x - y)(x + y)
    let m = PolyMatrix::from_fn(2, 3, |i, j| if i == j { x.clone() } else { y.clone() });
    let det = poly_det(&m);
    println!("det = {det}");
    assert_eq!(det, x.sub(&y).mul(&x.add(&y)));

    let quotient = det.exact_divide(&x.add(&y))?;
    println!("det / (x + y) = {quotient}");
    assert_eq!(quotient, x.sub(&y));

    let square = x.mul(&x).mul(&y).mul(&y);
    let root = square.sqrt()?;
    println!("sqrt((x y)^2) = {root}");
    assert!(root == x.mul(&y) || root == x.mul(&y).neg());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
