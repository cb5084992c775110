// Run one verification suite through the library and print its outcomes.

use pvs::cli::verify;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let outcomes = verify("liealg")?;
    for o in &outcomes {
        println!("{:<32} {}", o.name, o.status.as_str());
    }
    assert!(outcomes.iter().all(|o| o.passed()));
    assert!(verify("no-such-suite").is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
