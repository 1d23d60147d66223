//! Regularity of 25-run 5^3 orthogonal arrays through the rank-one test on
//! their Latin squares.

use oa_regularity::fixtures;
use oa_regularity::permutation::coset_representatives;
use oa_regularity::regularity::{latin_square, reduce_and_read, regularity_check};
use oa_regularity::Design;

fn show(name: &str, d: &Design) -> oa_regularity::Result<()> {
    println!("== {name}");
    let square = latin_square(d, 0, 1, 2)?.expect("X3 is a Latin square in X1, X2");
    print!("{square}");
    match square.first_failing_minor() {
        Some(minor) => println!("first failing minor: {minor:?}, value {}", minor.value(5)),
        None => println!("rank one as given"),
    }
    let rank_one = coset_representatives(5).filter(|p| square.permute_symbols(p).is_rank_one()).count();
    println!("coset representatives giving rank one: {rank_one} of 6");
    let report = regularity_check(d)?;
    println!("{report}");
    if let Some(fit) = report.fits.first() {
        let relabeled = square.permute_symbols(&fit.dependent_perm);
        let reduced = reduce_and_read(&relabeled)?;
        println!("row order {}, column order {}, constant w{}", reduced.row_order, reduced.col_order, reduced.constant);
    }
    println!();
    Ok(())
}

fn main() -> oa_regularity::Result<()> {
    show("cyclic", &fixtures::cyclic_array())?;
    show("permuted", &fixtures::permuted_array())?;
    show("non-regular", &fixtures::non_regular_array())?;
    Ok(())
}
