// The matrix of linear forms attached to the orbit representative w, and
// its behaviour under a group element fixing w.

use pvs::golden;
use pvs::polyexact::Rational;
use pvs::trivector::{act, covector_to_string, s_matrix, tau_matrix, w, GroupElement, DIM};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = w();
    println!("w = {x}");
    let s = s_matrix(&x);
    for i in 0..DIM {
        let row: Vec<String> = (0..DIM)
            .map(|j| covector_to_string(s.entry(i, j)))
            .collect();
        println!("  [{}]", row.join(", "));
    }
    assert_eq!(s, golden::s_w());

    let tau = GroupElement::new(Rational::from_integer(1.into()), tau_matrix())?;
    assert_eq!(act(&tau, &x), x);
    assert_eq!(s.transform(&tau), s);
    println!("tau fixes w and its S-matrix");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
