//! Latin squares `X_k(X_i, X_j)` and the additive rank-one test.
//!
//! Entries are exponents of roots of unity, so the `2×2` minor
//! `ω_p ω_q − ω_r ω_t` vanishes exactly when `p + q ≡ r + t (mod s)`.

use std::fmt;

use itertools::Itertools;

use crate::cyclotomic::{check_levels, CycInt};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::permutation::LevelPerm;

/// An `s × s` table whose rows and columns are permutations of the levels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    s: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let s = rows.len();
        check_levels(s)?;
        let mut cells = Vec::with_capacity(s * s);
        for row in &rows {
            if row.len() != s {
                return Err(Error::InvalidDesign(format!("square row has {} entries, expected {s}", row.len())));
            }
            for &x in row {
                if x >= s {
                    return Err(Error::LevelOutOfRange { level: x, levels: s });
                }
                cells.push(x as u8);
            }
        }
        Self::from_cells(s, cells).ok_or_else(|| Error::InvalidDesign("table is not a Latin square".into()))
    }

    pub(crate) fn from_cells(s: usize, cells: Vec<u8>) -> Option<Self> {
        is_latin(&cells, s).then_some(LatinSquare { s, cells })
    }

    pub fn levels(&self) -> usize {
        self.s
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.s + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.cells[a * self.s..(a + 1) * self.s]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.s).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    /// Relabels every symbol through `π`, i.e. the square of `π(X_k)`.
    pub fn permute_symbols(&self, p: &LevelPerm) -> LatinSquare {
        assert_eq!(p.levels(), self.s, "permutation on a different level set");
        LatinSquare { s: self.s, cells: self.cells.iter().map(|&x| p.image()[x as usize]).collect() }
    }

    pub fn is_rank_one(&self) -> bool {
        additive_rank_one(&self.cells, self.s)
    }

    pub fn first_failing_minor(&self) -> Option<Minor> {
        first_failing_minor(&self.cells, self.s)
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.cells.chunks(self.s) {
            writeln!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinSquare{:?}", self.to_rows())
    }
}

fn is_latin(cells: &[u8], s: usize) -> bool {
    if cells.len() != s * s {
        return false;
    }
    let mut seen = vec![0u32; s];
    let mut stamp = 0;
    let mut lines = (0..s)
        .map(|a| (0..s).map(|b| cells[a * s + b]).collect::<Vec<_>>())
        .chain((0..s).map(|b| (0..s).map(|a| cells[a * s + b]).collect()));
    lines.all(|line| {
        stamp += 1;
        line.into_iter().all(|x| {
            let x = x as usize;
            x < s && std::mem::replace(&mut seen[x], stamp) != stamp
        })
    })
}

/// Additive rank-one criterion on any flat `s × s` table of levels.
///
/// Equivalent to checking every pair of rows and columns: a table with
/// `L[a][b] − L[a][0] − L[0][b] + L[0][0] ≡ 0` everywhere has all its
/// `2×2` minors vanishing, and conversely.
pub fn additive_rank_one(cells: &[u8], s: usize) -> bool {
    debug_assert_eq!(cells.len(), s * s);
    let at = |a: usize, b: usize| cells[a * s + b] as usize;
    (1..s).all(|a| (1..s).all(|b| (at(a, b) + at(0, 0)) % s == (at(a, 0) + at(0, b)) % s))
}

/// A `2×2` minor: rows `(a, a')`, columns `(b, b')`, with the exponent sums
/// of its diagonal `L[a][b] + L[a'][b']` and anti-diagonal `L[a][b'] + L[a'][b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub diagonal: usize,
    pub anti_diagonal: usize,
}

impl Minor {
    /// `ω_diagonal − ω_anti_diagonal` in `Z[ω_s]`.
    pub fn value(&self, s: usize) -> CycInt {
        &CycInt::root(self.diagonal, s).expect("valid s") - &CycInt::root(self.anti_diagonal, s).expect("valid s")
    }
}

/// The first non-vanishing minor in lexicographic order of
/// `(a, a', b, b')`, or `None` when the table has rank one.
pub fn first_failing_minor(cells: &[u8], s: usize) -> Option<Minor> {
    let at = |a: usize, b: usize| cells[a * s + b] as usize;
    for (a, a2) in (0..s).tuple_combinations() {
        for (b, b2) in (0..s).tuple_combinations() {
            let diagonal = (at(a, b) + at(a2, b2)) % s;
            let anti_diagonal = (at(a, b2) + at(a2, b)) % s;
            if diagonal != anti_diagonal {
                return Some(Minor { rows: (a, a2), cols: (b, b2), diagonal, anti_diagonal });
            }
        }
    }
    None
}

pub fn rank_one_check(square: &LatinSquare) -> bool {
    square.is_rank_one()
}

/// Reduced-form readout of a rank-one Latin square.
///
/// `row_order[r]` is the original row placed at position `r` once rows are
/// sorted so that the square reads `L'[r][c] = r + c + constant`; the same for
/// columns. Equivalently `L[a][b] = σ_i(a) + σ_j(b) + constant` with
/// `σ_i = row_order⁻¹` and `σ_j = col_order⁻¹`, both fixing level 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub row_order: LevelPerm,
    pub col_order: LevelPerm,
    /// Upper-left entry of the original square.
    pub constant: usize,
}

impl ReducedForm {
    /// `σ_i`: new label of each row level.
    pub fn row_relabel(&self) -> LevelPerm {
        self.row_order.inverse()
    }

    /// `σ_j`: new label of each column level.
    pub fn col_relabel(&self) -> LevelPerm {
        self.col_order.inverse()
    }
}

/// Reads the reduced form of a flat table, or `None` if it is not a
/// rank-one Latin square.
pub(crate) fn reduce_cells(cells: &[u8], s: usize) -> Option<ReducedForm> {
    if !additive_rank_one(cells, s) {
        return None;
    }
    let at = |a: usize, b: usize| cells[a * s + b];
    let b0 = (0..s).find(|&b| at(0, b) == 0)?;
    let a0 = (0..s).find(|&a| at(a, 0) == 0)?;
    let row_relabel = LevelPerm::new((0..s).map(|a| at(a, b0) as usize).collect()).ok()?;
    let col_relabel = LevelPerm::new((0..s).map(|b| at(a0, b) as usize).collect()).ok()?;
    Some(ReducedForm {
        row_order: row_relabel.inverse(),
        col_order: col_relabel.inverse(),
        constant: at(0, 0) as usize,
    })
}

pub fn reduce_and_read(square: &LatinSquare) -> Result<ReducedForm> {
    reduce_cells(&square.cells, square.s).ok_or_else(|| {
        let m = square.first_failing_minor().expect("a Latin square that is not rank one has a failing minor");
        Error::NotRankOne(format!(
            "rows {:?}, columns {:?}: w{} - w{} is non-zero",
            m.rows, m.cols, m.diagonal, m.anti_diagonal
        ))
    })
}

/// The square `C[a][b]` = level of `X_k` at `X_i = a`, `X_j = b` (0-based
/// factors). `Ok(None)` when `X_k` is not a function of `(X_i, X_j)` or the
/// table is not Latin.
pub fn latin_square(d: &Design, i: usize, j: usize, k: usize) -> Result<Option<LatinSquare>> {
    for f in [i, j, k] {
        d.check_factor(f)?;
    }
    if i == j || j == k || i == k {
        return Err(Error::InvalidDesign(format!("factors {i}, {j}, {k} must be distinct")));
    }
    if !d.projects_factorially(&[i, j])? {
        return Err(Error::NonUniformProjection(vec![i, j]));
    }
    let s = d.levels();
    let mut cells = vec![u8::MAX; s * s];
    for row in d.rows() {
        let slot = &mut cells[row[i] as usize * s + row[j] as usize];
        if *slot == u8::MAX {
            *slot = row[k];
        } else if *slot != row[k] {
            return Ok(None);
        }
    }
    Ok(LatinSquare::from_cells(s, cells))
}
