#[allow(dead_code)]
mod exact_polynomials {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/exact_polynomials.rs"
    ));
}

#[test]
fn exact_polynomials_runs() {
    exact_polynomials::run_example().expect("exact_polynomials example should run");
}

#[allow(dead_code)]
mod trivector_smatrix {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/trivector_smatrix.rs"
    ));
}

#[test]
fn trivector_smatrix_runs() {
    trivector_smatrix::run_example().expect("trivector_smatrix example should run");
}

#[allow(dead_code)]
mod invariant_factorization {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/invariant_factorization.rs"
    ));
}

#[test]
fn invariant_factorization_runs() {
    invariant_factorization::run_example().expect("invariant_factorization example should run");
}

#[allow(dead_code)]
mod lie_structure {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/lie_structure.rs"
    ));
}

#[test]
fn lie_structure_runs() {
    lie_structure::run_example().expect("lie_structure example should run");
}

#[allow(dead_code)]
mod representation_data {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/representation_data.rs"
    ));
}

#[test]
fn representation_data_runs() {
    representation_data::run_example().expect("representation_data example should run");
}

#[allow(dead_code)]
mod lattice_lab {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/lattice_lab.rs"
    ));
}

#[test]
fn lattice_lab_runs() {
    lattice_lab::run_example().expect("lattice_lab example should run");
}

#[allow(dead_code)]
mod verification_suite {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/verification_suite.rs"
    ));
}

#[test]
fn verification_suite_runs() {
    verification_suite::run_example().expect("verification_suite example should run");
}
