//! Indicator coefficients, aberrations and GWLP of a regular 5^(3-1) fraction
//! and of a scrambled copy.

use oa_regularity::indicator::{gwlp, IndicatorTable};
use oa_regularity::permutation::apply_level_perms;
use oa_regularity::{CycRational, DefiningEquation, Design, LevelPerm};

fn main() -> oa_regularity::Result<()> {
    let eq = DefiningEquation::new(5, &[1, 1, 4], 0)?;
    let d = Design::regular_fraction(5, 3, &[eq])?;
    println!("{} runs, strength {}", d.runs(), d.max_strength_combinatorial());

    let table = IndicatorTable::full(&d)?;
    println!("non-zero coefficients:");
    for (alpha, entry) in table.nonzero() {
        println!("  b{alpha:?} = {}", CycRational::new(entry.numerator.clone(), table.denominator() as i128)?);
    }
    for x in [[0u8, 0, 0], [1, 2, 3], [1, 2, 4]] {
        println!("F{x:?} = {:.3}", table.evaluate(&x)?.re);
    }
    println!("GWLP: {}", gwlp(&d)?);

    // level permutations change the coefficients but never the GWLP
    let perms: Vec<LevelPerm> = ["1,0,2,3,4", "0,2,1,4,3", "4,3,2,1,0"].iter().map(|p| p.parse()).collect::<Result<_, _>>()?;
    let e = apply_level_perms(&d, &perms)?;
    let scrambled = IndicatorTable::full(&e)?;
    println!("scrambled copy: {} non-zero coefficients, GWLP {}", scrambled.nonzero().count(), gwlp(&e)?);
    Ok(())
}
