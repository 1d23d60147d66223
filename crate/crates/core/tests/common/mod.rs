//! Seeded generators and floating point oracles shared by the test targets.
#![allow(dead_code)]

use num_complex::Complex64;
use oa_regularity::{DefiningEquation, Design, LevelPerm};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(s: usize, rng: &mut impl Rng) -> LevelPerm {
    let mut image: Vec<usize> = (0..s).collect();
    image.shuffle(rng);
    LevelPerm::new(image).unwrap()
}

pub fn random_perms(s: usize, m: usize, rng: &mut impl Rng) -> Vec<LevelPerm> {
    (0..m).map(|_| random_perm(s, rng)).collect()
}

/// A random non-empty subset of the full factorial with `1..=max_runs` points.
pub fn random_subset(s: usize, m: usize, max_runs: usize, rng: &mut impl Rng) -> Design {
    let full = Design::full_factorial(s, m).unwrap();
    let mut rows: Vec<Vec<usize>> = full.rows().map(|r| r.iter().map(|&x| x as usize).collect()).collect();
    rows.shuffle(rng);
    rows.truncate(rng.gen_range(1..=max_runs.min(rows.len())));
    Design::new(s, m, rows).unwrap()
}

/// `r` random independent equations on `m` factors, each of weight at least 3
/// so that the fraction keeps strength 2.
pub fn random_equations(s: usize, m: usize, r: usize, rng: &mut impl Rng) -> Vec<DefiningEquation> {
    loop {
        let eqs: Vec<DefiningEquation> = (0..r)
            .map(|_| loop {
                let a: Vec<i64> = (0..m).map(|_| rng.gen_range(0..s as i64)).collect();
                if let Ok(e) = DefiningEquation::new(s, &a, rng.gen_range(0..s as i64)) {
                    break e;
                }
            })
            .collect();
        if let Ok(d) = Design::regular_fraction(s, m, &eqs) {
            if d.check_strength_combinatorial(2) {
                return eqs;
            }
        }
    }
}

/// Applies `perms` so that factor `j` of the result reads `perms[j]⁻¹` of the
/// regular coordinates.
pub fn scramble(d: &Design, perms: &[LevelPerm]) -> Design {
    oa_regularity::permutation::apply_level_perms(d, perms).unwrap()
}

pub fn permute_columns(d: &Design, order: &[usize]) -> Design {
    let rows = d.rows().map(|r| order.iter().map(|&c| r[c] as usize).collect()).collect();
    Design::new(d.levels(), d.factors(), rows).unwrap()
}

pub fn omega(k: usize, s: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / s as f64)
}

/// Every `2×2` minor of `ω^{L}` vanishes, in floating point.
pub fn float_rank_one(cells: &[u8], s: usize, tol: f64) -> bool {
    let at = |a: usize, b: usize| omega(cells[a * s + b] as usize, s);
    (0..s).all(|a| {
        (a + 1..s).all(|a2| {
            (0..s).all(|b| (b + 1..s).all(|b2| (at(a, b) * at(a2, b2) - at(a, b2) * at(a2, b)).norm() < tol))
        })
    })
}

/// Table with `L[a][b] = f(a) + g(b)` for random maps `f`, `g`.
pub fn additive_table(s: usize, rng: &mut impl Rng) -> Vec<u8> {
    let f: Vec<usize> = (0..s).map(|_| rng.gen_range(0..s)).collect();
    let g: Vec<usize> = (0..s).map(|_| rng.gen_range(0..s)).collect();
    (0..s * s).map(|i| ((f[i / s] + g[i % s]) % s) as u8).collect()
}

pub fn random_table(s: usize, rng: &mut impl Rng) -> Vec<u8> {
    (0..s * s).map(|_| rng.gen_range(0..s) as u8).collect()
}

/// Complex GWLP straight from the definition: `A_t = Σ_{|α|=t} |s^{-m}·Σ_x ω^{-α·x}|² · (s^m/n)²`.
pub fn gwlp_oracle(d: &Design) -> Vec<f64> {
    let (s, m, n) = (d.levels(), d.factors(), d.runs() as f64);
    let mut out = vec![0.0; m];
    let full = Design::full_factorial(s, m).unwrap();
    for alpha in full.rows() {
        let t = alpha.iter().filter(|&&a| a != 0).count();
        if t == 0 {
            continue;
        }
        let sum: Complex64 = d
            .rows()
            .map(|x| {
                let dot: usize = alpha.iter().zip(x).map(|(&a, &b)| a as usize * b as usize).sum();
                omega((s * s * m - dot) % s, s)
            })
            .sum();
        out[t - 1] += sum.norm_sqr() / (n * n);
    }
    out
}
