//! Combinatorial isomorphism of designs by exhaustive search.
//!
//! Two designs are isomorphic when some reordering of the factors followed by
//! a level permutation of each factor maps one point set onto the other.
//! Column maps are enumerated outermost and pruned with the count profiles
//! of column subsets of size at most four; for a fixed column map the level permutations are chosen
//! one factor at a time, and a level `v` may only go to `w` when the rows
//! carrying `v` and those carrying `w` have the same multiset of already
//! relabeled prefixes.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::design::{Design, DEFAULT_POINT_BOUND};
use crate::error::{Error, Result};
use crate::indicator::gwlp;
use crate::permutation::LevelPerm;

/// `B[.., j] = level_perms[j](A[.., column_map[j]])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub column_map: Vec<usize>,
    pub level_perms: Vec<LevelPerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(IsoWitness),
    NotIsomorphic,
    /// The budget ran out before the search space was covered.
    Exhausted,
}

/// Limits on the search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct IsoBudget {
    pub max_duration: Option<Duration>,
    pub max_nodes: Option<u64>,
}

impl IsoBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn seconds(secs: f64) -> Self {
        IsoBudget { max_duration: Some(Duration::from_secs_f64(secs)), max_nodes: None }
    }
}

fn check_shapes(a: &Design, b: &Design) -> Result<()> {
    if (a.runs(), a.factors(), a.levels()) != (b.runs(), b.factors(), b.levels()) {
        return Err(Error::ShapeMismatch(format!(
            "(n, m, s) = ({}, {}, {}) vs ({}, {}, {})",
            a.runs(),
            a.factors(),
            a.levels(),
            b.runs(),
            b.factors(),
            b.levels()
        )));
    }
    Ok(())
}

/// Necessary condition: equal GWLPs within `1e-6`. `false` proves the designs
/// are not isomorphic.
pub fn gwlp_prefilter(a: &Design, b: &Design) -> Result<bool> {
    check_shapes(a, b)?;
    Ok(gwlp(a)?.approx_eq(&gwlp(b)?, 1e-6))
}

/// Applies a witness to `a`.
pub fn apply_witness(a: &Design, w: &IsoWitness) -> Result<Design> {
    let m = a.factors();
    if w.column_map.len() != m || w.level_perms.len() != m {
        return Err(Error::FactorCount { expected: m, found: w.column_map.len() });
    }
    for &c in &w.column_map {
        a.check_factor(c)?;
    }
    let data = a
        .rows()
        .flat_map(|row| w.column_map.iter().zip(&w.level_perms).map(|(&c, p)| p.image()[row[c] as usize]))
        .collect();
    Ok(Design::from_raw(a.levels(), m, data))
}

pub fn verify_witness(a: &Design, b: &Design, w: &IsoWitness) -> bool {
    apply_witness(a, w).is_ok_and(|t| t.same_points(b))
}

fn column(d: &Design, j: usize) -> Vec<u8> {
    d.column(j).collect()
}

/// Sorted multiplicities of the distinct tuples in the given columns; invariant
/// under level permutations of those columns.
fn profile(cols: &[&[u8]], s: usize) -> Vec<usize> {
    let n = cols.first().map_or(0, |c| c.len());
    let mut keys: Vec<usize> = (0..n).map(|r| cols.iter().fold(0, |acc, c| acc * s + c[r] as usize)).collect();
    keys.sort_unstable();
    let mut counts: Vec<usize> = keys.chunk_by(|a, b| a == b).map(<[usize]>::len).collect();
    counts.sort_unstable();
    counts
}

/// Largest column subset compared while pruning column maps.
const PROFILE_WIDTH: usize = 4;

/// Column maps compatible with the count profiles of every set of at most
/// [`PROFILE_WIDTH`] columns.
fn column_maps(a: &Design, b: &Design) -> Vec<Vec<usize>> {
    let (s, m) = (a.levels(), a.factors());
    let ca: Vec<Vec<u8>> = (0..m).map(|j| column(a, j)).collect();
    let cb: Vec<Vec<u8>> = (0..m).map(|j| column(b, j)).collect();

    let compatible = |map: &[usize], c: usize| {
        let j = map.len();
        (0..PROFILE_WIDTH.min(j + 1)).all(|k| {
            (0..j).combinations(k).all(|earlier| {
                let mut cols_a: Vec<&[u8]> = earlier.iter().map(|&e| ca[map[e]].as_slice()).collect();
                let mut cols_b: Vec<&[u8]> = earlier.iter().map(|&e| cb[e].as_slice()).collect();
                cols_a.push(&ca[c]);
                cols_b.push(&cb[j]);
                profile(&cols_a, s) == profile(&cols_b, s)
            })
        })
    };

    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((map, next)) = stack.pop() {
        if map.len() == m {
            out.push(map);
            continue;
        }
        if next < m {
            stack.push((map.clone(), next + 1));
            if !map.contains(&next) && compatible(&map, next) {
                let mut longer = map;
                longer.push(next);
                stack.push((longer, 0));
            }
        }
    }
    out.sort();
    out
}

enum Step {
    Found,
    NotFound,
    Abort,
}

struct LevelSearch<'a> {
    s: usize,
    a_cols: Vec<Vec<u8>>,
    b_cols: Vec<Vec<u8>>,
    nodes: &'a AtomicU64,
    budget: IsoBudget,
    deadline: Option<Instant>,
    halt: &'a AtomicBool,
    exhausted: &'a AtomicBool,
}

impl LevelSearch<'_> {
    fn over_budget(&self) -> bool {
        if self.halt.load(Ordering::Relaxed) {
            return true;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out = self.budget.max_nodes.is_some_and(|max| n > max)
            || self.deadline.is_some_and(|d| Instant::now() >= d);
        if out {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        out
    }

    /// For each level, the sorted prefix classes of the rows carrying it.
    fn signatures(classes: &[u32], col: &[u8], s: usize) -> Vec<Vec<u32>> {
        let mut per_value: Vec<Vec<u32>> = vec![Vec::new(); s];
        for (&c, &x) in classes.iter().zip(col) {
            per_value[x as usize].push(c);
        }
        for v in per_value.iter_mut() {
            v.sort_unstable();
        }
        per_value
    }

    fn search(&self, j: usize, class_a: &[u32], class_b: &[u32], perms: &mut Vec<LevelPerm>) -> Step {
        if j == self.a_cols.len() {
            return Step::Found;
        }
        let s = self.s;
        let sig_a = Self::signatures(class_a, &self.a_cols[j], s);
        let sig_b = Self::signatures(class_b, &self.b_cols[j], s);
        let allowed: Vec<Vec<u8>> =
            sig_a.iter().map(|sa| (0..s as u8).filter(|&w| &sig_b[w as usize] == sa).collect()).collect();
        if allowed.iter().any(Vec::is_empty) {
            return Step::NotFound;
        }
        let mut image = vec![0u8; s];
        let mut used = vec![false; s];
        self.assign(0, j, &allowed, &mut image, &mut used, class_a, class_b, perms)
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        v: usize,
        j: usize,
        allowed: &[Vec<u8>],
        image: &mut [u8],
        used: &mut [bool],
        class_a: &[u32],
        class_b: &[u32],
        perms: &mut Vec<LevelPerm>,
    ) -> Step {
        if v == self.s {
            if self.over_budget() {
                return Step::Abort;
            }
            // classes are below n, so (class, level) interns into a flat table
            let s = self.s;
            let mut intern = vec![u32::MAX; class_a.len() * s];
            let mut fresh = 0;
            let mut next = |c: u32, x: u8| {
                let slot = &mut intern[c as usize * s + x as usize];
                if *slot == u32::MAX {
                    *slot = fresh;
                    fresh += 1;
                }
                *slot
            };
            let new_a: Vec<u32> =
                class_a.iter().zip(&self.a_cols[j]).map(|(&c, &x)| next(c, image[x as usize])).collect();
            let new_b: Vec<u32> = class_b.iter().zip(&self.b_cols[j]).map(|(&c, &y)| next(c, y)).collect();
            perms.push(LevelPerm::from_raw(image.to_vec()));
            let step = self.search(j + 1, &new_a, &new_b, perms);
            if !matches!(step, Step::Found) {
                perms.pop();
            }
            return step;
        }
        for &w in &allowed[v] {
            if used[w as usize] {
                continue;
            }
            used[w as usize] = true;
            image[v] = w;
            match self.assign(v + 1, j, allowed, image, used, class_a, class_b, perms) {
                Step::NotFound => {}
                other => return other,
            }
            used[w as usize] = false;
        }
        Step::NotFound
    }
}

/// Decides whether `b` is a factor and level relabeling of `a`.
///
/// Every positive answer carries a witness that has been checked by direct
/// set comparison. `Exhausted` is returned only when the budget stopped the
/// search before either a witness or a complete negative was reached.
pub fn is_isomorphic(a: &Design, b: &Design, budget: IsoBudget) -> Result<IsoOutcome> {
    check_shapes(a, b)?;
    if a.full_size() <= DEFAULT_POINT_BOUND && !gwlp_prefilter(a, b)? {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let deadline = budget.max_duration.map(|d| Instant::now() + d);
    let nodes = AtomicU64::new(0);
    let halt = AtomicBool::new(false);
    let exhausted = AtomicBool::new(false);
    let n = a.runs();
    let found = column_maps(a, b).into_par_iter().find_map_first(|map| {
        let search = LevelSearch {
            s: a.levels(),
            a_cols: map.iter().map(|&c| column(a, c)).collect(),
            b_cols: (0..b.factors()).map(|j| column(b, j)).collect(),
            nodes: &nodes,
            budget,
            deadline,
            halt: &halt,
            exhausted: &exhausted,
        };
        let mut perms = Vec::new();
        match search.search(0, &vec![0; n], &vec![0; n], &mut perms) {
            Step::Found => Some(IsoWitness { column_map: map, level_perms: perms }),
            Step::Abort => {
                halt.store(true, Ordering::Relaxed);
                None
            }
            Step::NotFound => None,
        }
    });
    match found {
        Some(w) => {
            assert!(verify_witness(a, b, &w), "isomorphism witness failed verification");
            Ok(IsoOutcome::Isomorphic(w))
        }
        None if exhausted.load(Ordering::Relaxed) => Ok(IsoOutcome::Exhausted),
        None => Ok(IsoOutcome::NotIsomorphic),
    }
}
