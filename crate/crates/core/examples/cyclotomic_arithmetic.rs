//! Exact arithmetic in Z[w] for w a primitive 5th root of unity.

use oa_regularity::{CycInt, CycRational};

fn main() -> oa_regularity::Result<()> {
    let s = 5;
    let w = |k| CycInt::root(k, s);

    // 1 + w + w^2 + w^3 + w^4 = 0, so representations are not unique
    let sum = (0..s).try_fold(CycInt::zero(s)?, |acc, k| Ok::<_, oa_regularity::Error>(&acc + &w(k)?))?;
    println!("1 + w + ... + w^4 = {sum}  (zero: {})", sum.is_zero());

    let a = &CycInt::from_int(2, s)? - &w(2)?;
    let b = &w(1)? + &w(3)?.scale(2);
    println!("a = {a}");
    println!("b = {b}");
    println!("a + b = {}", &a + &b);
    println!("a * b = {}", &a * &b);
    println!("conj(a) = {}", a.conj());
    println!("a * conj(a) = {}  ~ {:.6}", &a * &a.conj(), (&a * &a.conj()).to_complex().re);

    // w^3 - w^3 vanishes exactly; a float check would need a tolerance
    let minor = &(&w(1)? * &w(2)?) - &(&w(0)? * &w(3)?);
    println!("w1*w2 - w0*w3 = {minor}  (zero: {})", minor.is_zero());

    let coefficient = CycRational::new(CycInt::from_int(25, s)?, 125)?;
    println!("25/125 = {coefficient} ~ {}", coefficient.to_complex());
    Ok(())
}
