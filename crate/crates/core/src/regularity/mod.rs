//! Deciding whether a strength-2 orthogonal array becomes a regular fraction
//! after permuting factor levels, and recovering the permutations and the
//! defining equations.

mod latin;
mod search;

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::design::{DefiningEquation, Design};
use crate::error::{Error, Result};
use crate::linalg::{classify_row, RowStatus};
use crate::permutation::{apply_level_perms, LevelPerm};

pub use latin::{
    additive_rank_one, first_failing_minor, latin_square, rank_one_check, reduce_and_read, LatinSquare, Minor,
    ReducedForm,
};
pub use search::{find_equation_multilayer, find_triple_equation, fit_equation, EquationFit, Roles};

/// Outcome of [`regularity_check`].
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub strength: usize,
    /// One relabeling per factor, identity where no equation touched it.
    pub permutations: Vec<LevelPerm>,
    /// Defining equations in the relabeled coordinates.
    pub equations: Vec<DefiningEquation>,
    /// Role assignments tried across all tuples.
    pub tuples_examined: usize,
    /// Number of independent equations a regular fraction of this size needs,
    /// or `None` when `s^m / n` is not a power of `s`.
    #[serde(skip)]
    pub required_equations: Option<usize>,
    #[serde(skip)]
    pub fits: Vec<EquationFit>,
}

impl fmt::Display for RegularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "regular: {}", if self.regular { "yes" } else { "no" })?;
        writeln!(f, "strength: {}", self.strength)?;
        if self.regular {
            for (j, p) in self.permutations.iter().enumerate() {
                if !p.is_identity() {
                    let image = p.image().iter().map(|k| format!("w{k}")).join(",");
                    writeln!(f, "X{}: ({image})", j + 1)?;
                }
            }
            for eq in &self.equations {
                writeln!(f, "equation: {eq}")?;
            }
        }
        write!(f, "tuples examined: {}", self.tuples_examined)
    }
}

/// `log_s(s^m / n)` when it is a non-negative integer.
fn equations_needed(d: &Design) -> Option<usize> {
    let full = d.full_size();
    let n = d.runs() as u128;
    if !full.is_multiple_of(n) {
        return None;
    }
    let (mut ratio, s) = (full / n, d.levels() as u128);
    let mut r = 0;
    while ratio > 1 {
        if ratio % s != 0 {
            return None;
        }
        ratio /= s;
        r += 1;
    }
    Some(r)
}

/// Whether relabeling `d` with `perms` gives exactly the fraction defined by
/// `eqs` (the full factorial when `eqs` is empty).
pub fn verify_equations(d: &Design, perms: &[LevelPerm], eqs: &[DefiningEquation]) -> bool {
    let Ok(relabeled) = apply_level_perms(d, perms) else {
        return false;
    };
    let target = if eqs.is_empty() {
        Design::full_factorial(d.levels(), d.factors())
    } else {
        Design::regular_fraction(d.levels(), d.factors(), eqs)
    };
    target.is_ok_and(|t| t.same_points(&relabeled))
}

/// Searches tuples of 3, 4, ... factors in lexicographic order for independent
/// generating equations until `log_s(s^m / n)` of them are found.
///
/// Tuples containing the support of an accepted equation are skipped. Within
/// a tuple the last factor is tried as the dependent one first. A factor's
/// relabeling is fixed by the first equation that uses it.
pub fn regularity_check(d: &Design) -> Result<RegularityReport> {
    if !d.check_strength_combinatorial(2) {
        return Err(Error::NotOrthogonalArray);
    }
    let (s, m) = (d.levels(), d.factors());
    let mut report = RegularityReport {
        regular: false,
        strength: d.max_strength_combinatorial(),
        permutations: vec![LevelPerm::identity(s); m],
        equations: Vec::new(),
        tuples_examined: 0,
        required_equations: equations_needed(d),
        fits: Vec::new(),
    };
    let Some(r) = report.required_equations else {
        return Ok(report);
    };

    let mut fixed: Vec<Option<LevelPerm>> = vec![None; m];
    let mut accepted: Vec<Vec<usize>> = Vec::new();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    'sizes: for q in 3..=m {
        if report.equations.len() == r {
            break;
        }
        for tuple in (0..m).combinations(q) {
            if supports.iter().any(|sup| sup.iter().all(|f| tuple.contains(f))) {
                continue;
            }
            let dependents = std::iter::once(q - 1).chain(0..q - 1);
            for pos in dependents {
                let mut others = tuple.clone();
                let dependent = others.remove(pos);
                let roles = Roles { rows: others[0], cols: others[1], dependent, layers: others[2..].to_vec() };
                report.tuples_examined += 1;
                let Some(fit) = fit_equation(d, &roles, &fixed)? else {
                    continue;
                };
                let row = fit.equation.augmented_row();
                if classify_row(&accepted, &row, s) != RowStatus::Independent {
                    continue;
                }
                accepted.push(row);
                for (f, p) in &fit.relabelings {
                    fixed[*f] = Some(p.clone());
                }
                supports.push(tuple.clone());
                report.equations.push(fit.equation.clone());
                report.fits.push(fit);
                if report.equations.len() == r {
                    break 'sizes;
                }
                break;
            }
        }
    }

    report.permutations = fixed.into_iter().map(|p| p.unwrap_or_else(|| LevelPerm::identity(s))).collect();
    report.regular = report.equations.len() == r && verify_equations(d, &report.permutations, &report.equations);
    Ok(report)
}
