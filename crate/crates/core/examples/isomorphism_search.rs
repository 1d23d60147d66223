//! Combinatorial isomorphism between 25-run 5^3 orthogonal arrays.

use std::time::Instant;

use oa_regularity::fixtures;
use oa_regularity::isomorphism::{gwlp_prefilter, is_isomorphic, IsoBudget, IsoOutcome};

fn main() -> oa_regularity::Result<()> {
    let a = fixtures::cyclic_array();
    let b = fixtures::permuted_array();
    let c = fixtures::non_regular_array();
    // all three share the GWLP, so the prefilter cannot separate them
    println!("GWLP equal: a/b {}, a/c {}", gwlp_prefilter(&a, &b)?, gwlp_prefilter(&a, &c)?);

    for (name, x, y) in [("permuted vs cyclic", &b, &a), ("non-regular vs cyclic", &c, &a)] {
        let start = Instant::now();
        let outcome = is_isomorphic(x, y, IsoBudget::seconds(60.0))?;
        print!("{name}: ");
        match outcome {
            IsoOutcome::Isomorphic(w) => {
                println!("isomorphic, column map {:?}", w.column_map);
                for (j, p) in w.level_perms.iter().enumerate() {
                    println!("  X{}: {p}", j + 1);
                }
            }
            IsoOutcome::NotIsomorphic => println!("not isomorphic"),
            IsoOutcome::Exhausted => println!("budget exhausted"),
        }
        println!("  ({:.2?})", start.elapsed());
    }
    Ok(())
}
