// Tensor square and alternating cube of the adjoint representation of A2,
// Weyl dimensions, and the dimension table of simple Lie algebras.

use pvs::reptheory::{
    alt3_decompose, decomp_dim, irreps_of_dim, root_system, table45, tensor_decompose,
    weight_to_string, weyl_dim, RootType,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a2 = root_system(RootType::A, 2)?;
    let square = tensor_decompose(&a2, &[1, 1], &[1, 1])?;
    for (w, m) in &square {
        println!(
            "adjoint ⊗ adjoint ⊃ {m} x {} (dim {})",
            weight_to_string(w),
            weyl_dim(&a2, w)?
        );
    }
    let cube = alt3_decompose(&a2, &[1, 1])?;
    println!(
        "alternating cube: trivial multiplicity {}, total dimension {}",
        cube[&vec![0, 0]],
        decomp_dim(&a2, &cube)
    );

    let a3 = root_system(RootType::A, 3)?;
    println!("A3 (1,0,1) has dimension {}", weyl_dim(&a3, &[1, 0, 1])?);
    println!(
        "8-dimensional irreducibles: A2 {:?}, A3 {:?}",
        irreps_of_dim(&a2, 8),
        irreps_of_dim(&a3, 8)
    );

    for row in table45(2..=3) {
        println!(
            "{:>3}: dim {:>3}, rep {} of dim {}",
            row.name,
            row.algebra_dim,
            weight_to_string(&row.rep_weight),
            row.rep_dim
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
