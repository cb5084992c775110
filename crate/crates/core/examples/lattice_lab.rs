// Values of det X at primitive integer points after an irrational change
// of variables, and a determinant-one map hitting a prescribed value.

use pvs::oppenheim::{
    construct_h, rationality_report, scan, LatticeBasis, RealLinearMap, ScanConfig, ScanMode,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = RealLinearMap::seeded_near_identity(1, 0.05);
    println!("{}", rationality_report(0, &g, 1_000_000, 1e-13)?.verdict());
    for n in 1..=2 {
        let report = scan(&ScanConfig::new(
            0,
            g.clone(),
            n,
            (-10.0, 10.0),
            ScanMode::Exhaustive,
        ))?;
        println!(
            "box {n}: {} points, largest gap in [-10, 10] = {:?}",
            report.count, report.max_gap
        );
    }
    let sampled = scan(&ScanConfig::new(
        1,
        g,
        6,
        (-1.0, 1.0),
        ScanMode::Sample {
            count: 5000,
            seed: 7,
        },
    ))?;
    println!(
        "sampled unitary form: {} values in [-1, 1]",
        sampled.values.len() as u64 + sampled.spill
    );

    let built = construct_h(-5.0, &LatticeBasis::anchored(), 1.0)?;
    println!(
        "F(h u1) = {} for u1 = {:?}, det h = {:.12}",
        built.achieved,
        built.u1,
        built.h.det()
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
