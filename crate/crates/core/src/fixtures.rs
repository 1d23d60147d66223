//! Small reference designs used throughout the tests and examples.
//!
//! All designs are `5^3` fractions with 25 runs unless noted otherwise; a
//! square `L` stands for the fraction `{(a, b, L[a][b])}`.

use crate::design::{DefiningEquation, Design};
use crate::permutation::{apply_level_perm, LevelPerm};

fn from_square(rows: &[&[usize]]) -> Design {
    let s = rows.len();
    let points = rows
        .iter()
        .enumerate()
        .flat_map(|(a, row)| row.iter().enumerate().map(move |(b, &c)| vec![a, b, c]))
        .collect();
    Design::new(s, 3, points).expect("fixture is a valid design")
}

/// `X_3 = X_1 + X_2`, the regular fraction `X_1 X_2 X_3^4 = ω_0`.
pub fn cyclic_array() -> Design {
    let rows: Vec<Vec<usize>> = (0..5).map(|a| (0..5).map(|b| (a + b) % 5).collect()).collect();
    from_square(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>())
}

/// Permutations applied to `X_1`, `X_2`, `X_3` of [`cyclic_array`] to obtain
/// [`permuted_array`]. The one on `X_3` is the inverse of
/// [`PERMUTED_ARRAY_RANK_ONE`].
pub const PERMUTED_ARRAY_CONSTRUCTION: [&str; 3] = ["3,2,4,1,0", "2,0,1,4,3", "2,4,3,1,0"];

/// Relabeling of `X_3` in [`permuted_array`] that makes its square rank one.
pub const PERMUTED_ARRAY_RANK_ONE: &str = "4,3,0,2,1";

/// The cyclic array with its levels scrambled; regular only after a
/// non-monomial relabeling of `X_3`.
pub fn permuted_array() -> Design {
    from_square(&[
        &[2, 4, 0, 1, 3],
        &[0, 2, 1, 3, 4],
        &[3, 1, 4, 2, 0],
        &[4, 3, 2, 0, 1],
        &[1, 0, 3, 4, 2],
    ])
}

/// Square of [`permuted_array`] after [`PERMUTED_ARRAY_RANK_ONE`] on `X_3`.
pub const PERMUTED_ARRAY_RANK_ONE_SQUARE: [[usize; 5]; 5] = [
    [0, 1, 4, 3, 2],
    [4, 0, 3, 2, 1],
    [2, 3, 1, 0, 4],
    [1, 2, 0, 4, 3],
    [3, 4, 2, 1, 0],
];

/// A strength-2 array not isomorphic to any regular fraction.
pub fn non_regular_array() -> Design {
    from_square(&[
        &[0, 1, 2, 3, 4],
        &[1, 0, 3, 4, 2],
        &[2, 3, 4, 0, 1],
        &[3, 4, 1, 2, 0],
        &[4, 2, 0, 1, 3],
    ])
}

/// A `7^3` strength-2 array (49 runs) whose square stays singular under
/// every relabeling of `X_3`.
pub fn non_regular_array_7() -> Design {
    from_square(&[
        &[0, 1, 2, 3, 4, 5, 6],
        &[1, 0, 4, 5, 2, 6, 3],
        &[4, 2, 3, 6, 5, 0, 1],
        &[6, 3, 5, 0, 1, 4, 2],
        &[5, 4, 1, 2, 6, 3, 0],
        &[3, 5, 6, 1, 0, 2, 4],
        &[2, 6, 0, 4, 3, 1, 5],
    ])
}

/// `X_1 X_2 X_3 = ω_0` with the levels 0 and 1 of `X_2` switched and `X_3`
/// replaced by its fourth power; regular but not monomially so.
pub fn switched_regular_fraction() -> Design {
    let points = [
        [0, 0, 1], [0, 1, 0], [0, 2, 2], [0, 3, 3], [0, 4, 4],
        [1, 0, 2], [1, 1, 1], [1, 2, 3], [1, 3, 4], [1, 4, 0],
        [2, 0, 3], [2, 1, 2], [2, 2, 4], [2, 3, 0], [2, 4, 1],
        [3, 0, 4], [3, 1, 3], [3, 2, 0], [3, 3, 1], [3, 4, 2],
        [4, 0, 0], [4, 1, 4], [4, 2, 1], [4, 3, 2], [4, 4, 3],
    ];
    Design::new(5, 3, points.iter().map(|p| p.to_vec()).collect()).expect("fixture is a valid design")
}

/// Generators of [`two_generator_design`] before relabeling.
pub fn two_generator_equations() -> Vec<DefiningEquation> {
    vec![
        DefiningEquation::new(5, &[2, 1, 1, 0, 0], 1).expect("valid equation"),
        DefiningEquation::new(5, &[1, 1, 0, 1, 1], 1).expect("valid equation"),
    ]
}

/// Relabelings `p` of `X_1` and `q` of `X_5` in [`two_generator_design`].
pub const TWO_GENERATOR_PERMS: [&str; 2] = ["0,1,4,3,2", "2,0,1,3,4"];

/// The 125-run `5^{5-2}` design `{2p(x_1) + x_2 + x_3 = 1, p(x_1) + x_2 + x_4 + q(x_5) = 1}`.
pub fn two_generator_design() -> Design {
    let base = Design::regular_fraction(5, 5, &two_generator_equations()).expect("independent equations");
    let p: LevelPerm = TWO_GENERATOR_PERMS[0].parse().expect("valid permutation");
    let q: LevelPerm = TWO_GENERATOR_PERMS[1].parse().expect("valid permutation");
    let d = apply_level_perm(&base, 0, &p.inverse()).expect("factor in range");
    apply_level_perm(&d, 4, &q.inverse()).expect("factor in range")
}

/// `X_3(X_1, X_2)` of [`two_generator_design`].
pub const TWO_GENERATOR_SQUARE: [[usize; 5]; 5] = [
    [1, 0, 4, 3, 2],
    [4, 3, 2, 1, 0],
    [3, 2, 1, 0, 4],
    [0, 4, 3, 2, 1],
    [2, 1, 0, 4, 3],
];
