//! Fitting one generating equation to a tuple of factors.
//!
//! The dependent factor `X_k` is tabulated as a function of the row factor,
//! the column factor and any layer factors. For each candidate relabeling of
//! `X_k` every layer must be a rank-one Latin square, all layers must share
//! the same row and column relabelings, and the upper-left constants must
//! split into one bijection per layer factor.

use crate::cyclotomic::inv_mod;
use crate::design::{DefiningEquation, Design};
use crate::error::{Error, Result};
use crate::permutation::{coset_factorization, coset_representatives, LevelPerm};

use super::latin::{reduce_cells, ReducedForm};

/// Which factor plays which part in a fit (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roles {
    pub rows: usize,
    pub cols: usize,
    pub dependent: usize,
    pub layers: Vec<usize>,
}

impl Roles {
    pub fn triple(rows: usize, cols: usize, dependent: usize) -> Self {
        Roles { rows, cols, dependent, layers: Vec::new() }
    }

    /// `factors = [rows, cols, dependent, layers...]`.
    pub fn from_ordered(factors: &[usize]) -> Result<Self> {
        if factors.len() < 3 {
            return Err(Error::InvalidDesign("an equation needs at least three factors".into()));
        }
        Ok(Roles { rows: factors[0], cols: factors[1], dependent: factors[2], layers: factors[3..].to_vec() })
    }

    pub fn inputs(&self) -> Vec<usize> {
        let mut v = vec![self.rows, self.cols];
        v.extend(&self.layers);
        v
    }

    pub fn support(&self) -> Vec<usize> {
        let mut v = self.inputs();
        v.push(self.dependent);
        v.sort_unstable();
        v
    }
}

/// A generating equation found on a tuple of factors.
#[derive(Clone, Debug)]
pub struct EquationFit {
    pub roles: Roles,
    /// Relabeling of every factor in the support, each fixing levels 0 and 1.
    pub relabelings: Vec<(usize, LevelPerm)>,
    /// The relabeling of the dependent factor that made the layers rank one.
    pub dependent_perm: LevelPerm,
    /// Readout of the layer where every layer factor sits at level 0.
    pub readout: ReducedForm,
    /// Upper-left constant of each layer, layers in lexicographic order.
    pub layer_constants: Vec<usize>,
    /// In relabeled coordinates, with exponent `s-1` on the dependent factor.
    pub equation: DefiningEquation,
}

/// Splits `σ` (fixing 0) as `h·ρ` with `ρ(1) = 1`; rejects it when a fixed
/// relabeling is given and `ρ` differs from it.
fn normalize(sigma: &LevelPerm, fixed: Option<&LevelPerm>) -> Option<(usize, LevelPerm)> {
    let s = sigma.levels();
    let h = sigma.apply(1);
    let h_inv = inv_mod(h, s);
    let rho = LevelPerm::from_raw(sigma.image().iter().map(|&y| (y as usize * h_inv % s) as u8).collect());
    match fixed {
        Some(f) if f != &rho => None,
        _ => Some((h, rho)),
    }
}

fn check_roles(d: &Design, roles: &Roles, fixed: &[Option<LevelPerm>]) -> Result<()> {
    let support = roles.support();
    for &f in &support {
        d.check_factor(f)?;
    }
    if support.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidDesign(format!("factors {support:?} must be distinct")));
    }
    if fixed.len() != d.factors() {
        return Err(Error::FactorCount { expected: d.factors(), found: fixed.len() });
    }
    if let Some(p) = fixed.iter().flatten().find(|p| p.levels() != d.levels()) {
        return Err(Error::ShapeMismatch(format!("fixed permutation {p} has the wrong number of levels")));
    }
    Ok(())
}

/// Tabulates the dependent factor; `None` if it is not a function of the
/// inputs or the inputs do not project onto a replicated full factorial.
fn tabulate(d: &Design, roles: &Roles) -> Result<Option<Vec<u8>>> {
    if !d.projects_factorially(&roles.inputs())? {
        return Ok(None);
    }
    let s = d.levels();
    let cells = s.pow(roles.layers.len() as u32) * s * s;
    let mut table = vec![u8::MAX; cells];
    for row in d.rows() {
        let e = roles.layers.iter().fold(0, |acc, &l| acc * s + row[l] as usize);
        let slot = &mut table[(e * s + row[roles.rows] as usize) * s + row[roles.cols] as usize];
        let v = row[roles.dependent];
        if *slot == u8::MAX {
            *slot = v;
        } else if *slot != v {
            return Ok(None);
        }
    }
    Ok(Some(table))
}

/// Tries one relabeling `tau` of the dependent factor.
fn try_relabeling(
    s: usize,
    m: usize,
    roles: &Roles,
    table: &[u8],
    tau: &LevelPerm,
    fixed: &[Option<LevelPerm>],
) -> Option<EquationFit> {
    let p = roles.layers.len();
    let layer_count = s.pow(p as u32);
    let mut square = vec![0u8; s * s];
    let mut shared: Option<ReducedForm> = None;
    let mut kappa = Vec::with_capacity(layer_count);
    for layer in table.chunks_exact(s * s) {
        for (dst, &x) in square.iter_mut().zip(layer) {
            *dst = tau.image()[x as usize];
        }
        let reduced = reduce_cells(&square, s)?;
        match &shared {
            None => shared = Some(reduced.clone()),
            Some(first) if first.row_order != reduced.row_order || first.col_order != reduced.col_order => {
                return None
            }
            Some(_) => {}
        }
        kappa.push(reduced.constant);
    }
    let readout = shared?;

    // κ(e) must equal κ(0) + Σ_l g_l(e_l) with every g_l a bijection
    let weights: Vec<usize> = (0..p).map(|l| s.pow((p - 1 - l) as u32)).collect();
    let mut layer_perms = Vec::with_capacity(p);
    for &w in &weights {
        let g: Vec<usize> = (0..s).map(|v| (kappa[v * w] + s - kappa[0]) % s).collect();
        layer_perms.push(LevelPerm::new(g).ok()?);
    }
    for (e, &k) in kappa.iter().enumerate() {
        let expected = weights
            .iter()
            .zip(&layer_perms)
            .fold(kappa[0], |acc, (&w, g)| acc + g.apply(e / w % s));
        if k != expected % s {
            return None;
        }
    }

    let mut exponents = vec![0i64; m];
    let mut relabelings = Vec::with_capacity(p + 3);
    let sigmas = [(roles.rows, readout.row_relabel()), (roles.cols, readout.col_relabel())];
    for (factor, sigma) in sigmas.into_iter().chain(roles.layers.iter().copied().zip(layer_perms)) {
        let (h, rho) = normalize(&sigma, fixed[factor].as_ref())?;
        exponents[factor] = h as i64;
        relabelings.push((factor, rho));
    }
    exponents[roles.dependent] = s as i64 - 1;
    relabelings.push((roles.dependent, tau.clone()));
    relabelings.sort_by_key(|(f, _)| *f);
    let equation = DefiningEquation::new(s, &exponents, -(kappa[0] as i64)).ok()?;
    Some(EquationFit {
        roles: roles.clone(),
        relabelings,
        dependent_perm: tau.clone(),
        readout,
        layer_constants: kappa,
        equation,
    })
}

/// Fits a generating equation with the given roles.
///
/// `fixed[f]` constrains factor `f` to a relabeling chosen earlier; it is
/// compared up to a monomial map. Free dependent factors range over the
/// coset representatives.
pub fn fit_equation(d: &Design, roles: &Roles, fixed: &[Option<LevelPerm>]) -> Result<Option<EquationFit>> {
    check_roles(d, roles, fixed)?;
    let Some(table) = tabulate(d, roles)? else {
        return Ok(None);
    };
    let (s, m) = (d.levels(), d.factors());
    let fixed: Vec<Option<LevelPerm>> =
        fixed.iter().map(|p| p.as_ref().map(|p| coset_factorization(p).2)).collect();
    let candidates: Vec<LevelPerm> = match &fixed[roles.dependent] {
        Some(p) => vec![p.clone()],
        None => coset_representatives(s).collect(),
    };
    Ok(candidates.iter().find_map(|tau| try_relabeling(s, m, roles, &table, tau, &fixed)))
}

/// Equation on three factors with `X_k` depending on `(X_i, X_j)`.
pub fn find_triple_equation(d: &Design, i: usize, j: usize, k: usize) -> Result<Option<EquationFit>> {
    fit_equation(d, &Roles::triple(i, j, k), &vec![None; d.factors()])
}

/// Layered search on `factors = [rows, cols, dependent, layers...]`,
/// honouring relabelings already fixed by earlier equations.
pub fn find_equation_multilayer(
    d: &Design,
    factors: &[usize],
    fixed: &[Option<LevelPerm>],
) -> Result<Option<EquationFit>> {
    fit_equation(d, &Roles::from_ordered(factors)?, fixed)
}
