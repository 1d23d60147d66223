//! Level permutations as polynomials in the complex coding.

use oa_regularity::permutation::{
    all_permutations, check_perm_constraints, coset_factorization, is_monomial, poly_coefficients,
};
use oa_regularity::LevelPerm;

fn main() -> oa_regularity::Result<()> {
    let switch: LevelPerm = "1,0,2,3,4".parse()?;
    let u = poly_coefficients(&switch);
    println!("switching levels 0 and 1 of a 5-level factor:");
    for h in 0..5 {
        println!("  u{h} = {}", u.coefficient(h));
    }
    println!("  reconstructs to {:?}", u.reconstruct());
    println!("  constraints: {:?}", check_perm_constraints(&u)?);

    let p: LevelPerm = "4,3,0,2,1".parse()?;
    let (h, k, rep) = coset_factorization(&p);
    println!("{p} = (x -> {h}x + {k}) after {rep}");

    for s in [2, 3, 5, 7] {
        let total = all_permutations(s).count();
        let monomial = all_permutations(s).filter(|p| is_monomial(p).is_some()).count();
        println!("s = {s}: {monomial} of {total} permutations are monomial");
    }
    Ok(())
}
