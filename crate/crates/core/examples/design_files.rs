//! Building, writing and reading design files.

use oa_regularity::{DefiningEquation, Design};

fn main() -> oa_regularity::Result<()> {
    let eqs = [DefiningEquation::parse("1,1,1,0=0", 3)?, DefiningEquation::parse("1,2,0,1=2", 3)?];
    let d = Design::regular_fraction(3, 4, &eqs)?;
    let text = d.serialize();
    print!("{text}");
    let back: Design = text.parse()?;
    println!("round trip preserves the points: {}", back.same_points(&d));

    for bad in ["3 2 4\n0 0\n", "2 2 3\n0 0\n0 0\n", "1 2 3\n0 5\n"] {
        println!("{:?} -> {}", bad, Design::parse(bad).unwrap_err());
    }
    Ok(())
}
