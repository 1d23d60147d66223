//! Recovering two generating equations and the hidden level permutations of a
//! 125-run 5^(5-2) design.

use oa_regularity::fixtures;
use oa_regularity::regularity::{regularity_check, verify_equations};

fn main() -> oa_regularity::Result<()> {
    let d = fixtures::two_generator_design();
    println!("design: {} runs, {} factors, {} levels", d.runs(), d.factors(), d.levels());
    println!("hidden relabelings: X1 {}, X5 {}", fixtures::TWO_GENERATOR_PERMS[0], fixtures::TWO_GENERATOR_PERMS[1]);

    let report = regularity_check(&d)?;
    println!("{report}");
    for fit in &report.fits {
        println!(
            "fit: X{} on rows X{}, cols X{}, layers {:?}, constants {:?}",
            fit.roles.dependent + 1,
            fit.roles.rows + 1,
            fit.roles.cols + 1,
            fit.roles.layers.iter().map(|l| l + 1).collect::<Vec<_>>(),
            fit.layer_constants,
        );
    }
    println!("verified: {}", verify_equations(&d, &report.permutations, &report.equations));
    Ok(())
}
