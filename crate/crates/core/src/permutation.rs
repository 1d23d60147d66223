//! Level permutations and their polynomial representation.
//!
//! A permutation `π` of the level set acts on exponents: `π(ω_k) = ω_{image[k]}`.
//! Every such map is a polynomial `Y = Σ u_h X^h` in the complex-coded factor,
//! with `u_h = (1/s) Σ_k ω_{[-hk]} π(ω_k)` obtained by inverting the Vandermonde
//! matrix of the roots.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::cyclotomic::{check_levels, inv_mod, CycInt, CycRational};
use crate::design::Design;
use crate::error::{Error, Result};

/// A bijection of `{0, ..., s-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LevelPerm {
    image: Vec<u8>,
}

impl LevelPerm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let s = image.len();
        check_levels(s).map_err(|_| {
            Error::InvalidPermutation(format!("{s} levels is not a supported prime"))
        })?;
        let mut seen = vec![false; s];
        for &x in &image {
            if x >= s || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{} is not a bijection of 0..{s}",
                    image.iter().join(",")
                )));
            }
        }
        Ok(LevelPerm { image: image.into_iter().map(|x| x as u8).collect() })
    }

    pub(crate) fn from_raw(image: Vec<u8>) -> Self {
        LevelPerm { image }
    }

    pub fn identity(s: usize) -> Self {
        LevelPerm { image: (0..s as u8).collect() }
    }

    /// Parses a comma-separated image list and checks it has `s` entries.
    pub fn parse(text: &str, s: usize) -> Result<Self> {
        let p: LevelPerm = text.parse()?;
        if p.levels() != s {
            return Err(Error::InvalidPermutation(format!(
                "expected {s} entries, got {}",
                p.levels()
            )));
        }
        Ok(p)
    }

    pub fn levels(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.image[k] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(k, &x)| k == x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.image.len()];
        for (k, &x) in self.image.iter().enumerate() {
            inv[x as usize] = k as u8;
        }
        LevelPerm { image: inv }
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &LevelPerm) -> Self {
        assert_eq!(self.levels(), other.levels(), "permutations on different level sets");
        LevelPerm { image: other.image.iter().map(|&x| self.image[x as usize]).collect() }
    }

    /// Returns `(h, k)` when `π(e) = [h·e + k]` for every level.
    pub fn as_monomial(&self) -> Option<(usize, usize)> {
        is_monomial(self)
    }
}

impl fmt::Display for LevelPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.image.iter().join(","))
    }
}

impl fmt::Debug for LevelPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for LevelPerm {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let image = text
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPermutation(format!("cannot parse {text:?}")))?;
        LevelPerm::new(image)
    }
}

/// The affine map `e ↦ [h·e + k]`, i.e. `X ↦ ω_k X^h`.
pub fn monomial_perm(h: usize, k: usize, s: usize) -> Result<LevelPerm> {
    check_levels(s)?;
    if h.is_multiple_of(s) {
        return Err(Error::InvalidPermutation("monomial power must be non-zero modulo s".into()));
    }
    Ok(LevelPerm { image: (0..s).map(|e| ((h * e + k) % s) as u8).collect() })
}

pub fn is_monomial(p: &LevelPerm) -> Option<(usize, usize)> {
    let s = p.levels();
    let k = p.apply(0);
    let h = (p.apply(1) + s - k) % s;
    (0..s).all(|e| p.apply(e) == (h * e + k) % s).then_some((h, k))
}

/// All `s!` permutations, in lexicographic order of images.
pub fn all_permutations(s: usize) -> impl Iterator<Item = LevelPerm> {
    (0..s as u8).permutations(s).map(LevelPerm::from_raw)
}

/// The `(s-2)!` permutations fixing levels 0 and 1, in lexicographic order.
///
/// The affine group is sharply 2-transitive on `Z_s`, so each permutation
/// factors uniquely as a monomial map after one of these.
pub fn coset_representatives(s: usize) -> impl Iterator<Item = LevelPerm> {
    (2..s as u8).permutations(s.saturating_sub(2)).map(|tail| {
        let mut image = vec![0u8, 1];
        image.extend(tail);
        LevelPerm::from_raw(image)
    })
}

/// Splits `π` as `monomial ∘ representative`; returns `(h, k, representative)`.
pub fn coset_factorization(p: &LevelPerm) -> (usize, usize, LevelPerm) {
    let s = p.levels();
    let k = p.apply(0);
    let h = (p.apply(1) + s - k) % s;
    let h_inv = inv_mod(h, s);
    let rep = p.image.iter().map(|&y| ((y as usize + s - k) * h_inv % s) as u8).collect();
    (h, k, LevelPerm::from_raw(rep))
}

/// Applies `π` to column `j` (0-based).
pub fn apply_level_perm(d: &Design, j: usize, p: &LevelPerm) -> Result<Design> {
    d.check_factor(j)?;
    if p.levels() != d.levels() {
        return Err(Error::ShapeMismatch(format!(
            "permutation on {} levels applied to a design with {} levels",
            p.levels(),
            d.levels()
        )));
    }
    let m = d.factors();
    let data = d
        .rows()
        .flat_map(|row| row.iter().enumerate().map(|(c, &x)| if c == j { p.image[x as usize] } else { x }))
        .collect::<Vec<_>>();
    debug_assert_eq!(data.len(), d.runs() * m);
    Ok(Design::from_raw(d.levels(), m, data))
}

/// Applies one permutation per factor.
pub fn apply_level_perms(d: &Design, perms: &[LevelPerm]) -> Result<Design> {
    if perms.len() != d.factors() {
        return Err(Error::FactorCount { expected: d.factors(), found: perms.len() });
    }
    if let Some(p) = perms.iter().find(|p| p.levels() != d.levels()) {
        return Err(Error::ShapeMismatch(format!("permutation {p} has the wrong number of levels")));
    }
    let data = d
        .rows()
        .flat_map(|row| row.iter().zip(perms).map(|(&x, p)| p.image[x as usize]))
        .collect();
    Ok(Design::from_raw(d.levels(), d.factors(), data))
}

/// Coefficients `u_h = numerators[h] / s` of `Y = Σ u_h X^h`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermPolynomial {
    s: usize,
    numerators: Vec<CycInt>,
}

impl PermPolynomial {
    pub fn from_numerators(numerators: Vec<CycInt>) -> Result<Self> {
        let s = numerators.len();
        check_levels(s)?;
        if numerators.iter().any(|u| u.levels() != s) {
            return Err(Error::ModulusMismatch(s, numerators.iter().map(|u| u.levels()).find(|&t| t != s).unwrap_or(s)));
        }
        Ok(PermPolynomial { s, numerators })
    }

    pub fn levels(&self) -> usize {
        self.s
    }

    /// `s·u_h` for every `h`.
    pub fn numerators(&self) -> &[CycInt] {
        &self.numerators
    }

    /// `u_h` as reduced fractions.
    pub fn coefficient(&self, h: usize) -> CycRational {
        CycRational::new(self.numerators[h].clone(), self.s as i128).expect("positive denominator")
    }

    /// `s · Y(ω_k)`.
    pub fn evaluate_scaled(&self, k: usize) -> CycInt {
        let s = self.s;
        self.numerators
            .iter()
            .enumerate()
            .fold(CycInt::zero(s).expect("valid s"), |acc, (h, u)| &acc + &u.mul_root(h * k % s))
    }

    /// The permutation this polynomial induces, if it induces one.
    pub fn reconstruct(&self) -> Option<LevelPerm> {
        let s = self.s as i128;
        let image = (0..self.s)
            .map(|k| {
                let v = self.evaluate_scaled(k);
                let j = v.coeffs().iter().position(|&c| c != 0)?;
                (v == CycInt::root(j, self.s).ok()?.scale(s)).then_some(j)
            })
            .collect::<Option<Vec<_>>>()?;
        LevelPerm::new(image).ok()
    }

    /// Number of non-zero `u_h`.
    pub fn nonzero_terms(&self) -> usize {
        self.numerators.iter().filter(|u| !u.is_zero()).count()
    }
}

impl fmt::Display for PermPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.numerators.iter().map(|u| if u.is_zero() { "0".to_string() } else { format!("({u})/{}", self.s) });
        write!(f, "({})", parts.format(", "))
    }
}

/// Exact Vandermonde inversion: `s·u_h = Σ_k ω_{[π(k) - h·k]}`.
pub fn poly_coefficients(p: &LevelPerm) -> PermPolynomial {
    let s = p.levels();
    let numerators = (0..s)
        .map(|h| {
            let mut coeffs = vec![0i128; s];
            for k in 0..s {
                coeffs[(p.apply(k) + s * s - h * k % s) % s] += 1;
            }
            CycInt::from_coeffs(s, coeffs).expect("valid s")
        })
        .collect();
    PermPolynomial { s, numerators }
}

/// Largest `s` for which the exact convolution check stays inside `i128`.
pub const MAX_CONSTRAINT_LEVELS: usize = 13;

/// Outcome of each necessary condition on `u` for being a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    /// `u_0 = 0`.
    pub constant_term_zero: bool,
    /// `(q, holds)` for the degree-zero coefficient of `Y^q`, `q = 2..s-1`.
    pub power_constant_terms: Vec<(usize, bool)>,
    /// `k` such that `Σ u_h = ω_k`, when the sum is a root of unity.
    pub sum_root: Option<usize>,
}

impl ConstraintReport {
    pub fn all_hold(&self) -> bool {
        self.constant_term_zero && self.power_constant_terms.iter().all(|&(_, ok)| ok) && self.sum_root.is_some()
    }
}

/// Checks the conditions every permutation polynomial must satisfy.
///
/// The constant term of `Y^q` is computed by iterated exact convolution over
/// `Z_s`-graded terms; `Σu` being an `s`-th root of unity is tested as
/// `Σ numerators = s·ω_k`.
pub fn check_perm_constraints(u: &PermPolynomial) -> Result<ConstraintReport> {
    let s = u.s;
    if s > MAX_CONSTRAINT_LEVELS {
        return Err(Error::BoundExceeded {
            what: "exact permutation constraint check",
            size: s as u128,
            bound: MAX_CONSTRAINT_LEVELS as u128,
        });
    }
    let zero = CycInt::zero(s)?;
    let mut power_constant_terms = Vec::new();
    // power[g] = scaled coefficient of X^g in Y^q
    let mut power: Vec<CycInt> = u.numerators.clone();
    for q in 2..s {
        let mut next = vec![zero.clone(); s];
        for (g, a) in power.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (h, b) in u.numerators.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let slot = &mut next[(g + h) % s];
                *slot = &*slot + &(a * b);
            }
        }
        power = next;
        power_constant_terms.push((q, power[0].is_zero()));
    }
    let sum = u.numerators.iter().fold(zero, |acc, x| &acc + x);
    let sum_root = (0..s).find(|&k| sum == CycInt::root(k, s).expect("valid").scale(s as i128));
    Ok(ConstraintReport { constant_term_zero: u.numerators[0].is_zero(), power_constant_terms, sum_root })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str) -> LevelPerm {
        text.parse().unwrap()
    }

    fn cyc(coeffs: &[i128]) -> CycInt {
        CycInt::from_coeffs(coeffs.len(), coeffs.to_vec()).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let p = perm("4,3,0,2,1");
        assert_eq!(p.to_string(), "4,3,0,2,1");
        assert!("1,1,0".parse::<LevelPerm>().is_err());
        assert!("0,1,2,3".parse::<LevelPerm>().is_err());
        assert!(LevelPerm::parse("0,1,2", 5).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let p = perm("4,3,0,2,1");
        assert!(p.compose(&p.inverse()).is_identity());
        let q = perm("1,2,3,4,0");
        // q first, then p
        assert_eq!(p.compose(&q).apply(0), p.apply(1));
    }

    #[test]
    fn monomials() {
        assert!(monomial_perm(1, 0, 5).unwrap().is_identity());
        assert_eq!(monomial_perm(1, 2, 5).unwrap().image(), &[2, 3, 4, 0, 1]);
        assert!(monomial_perm(0, 1, 5).is_err());
        let group: std::collections::HashSet<_> = (1..5)
            .flat_map(|h| (0..5).map(move |k| monomial_perm(h, k, 5).unwrap()))
            .collect();
        assert_eq!(group.len(), 20);
        assert_eq!(is_monomial(&LevelPerm::identity(5)), Some((1, 0)));
        assert_eq!(is_monomial(&perm("4,3,0,2,1")), None);
        assert!(all_permutations(3).all(|p| is_monomial(&p).is_some()));
    }

    #[test]
    fn monomial_composition_law() {
        let s = 7;
        for (h, k, h2, k2) in [(2, 3, 5, 1), (6, 0, 3, 4), (1, 1, 1, 6)] {
            let a = monomial_perm(h, k, s).unwrap();
            let b = monomial_perm(h2, k2, s).unwrap();
            assert_eq!(a.compose(&b), monomial_perm(h * h2 % s, (h * k2 + k) % s, s).unwrap());
        }
    }

    #[test]
    fn identity_polynomial() {
        let u = poly_coefficients(&LevelPerm::identity(5));
        for (h, n) in u.numerators().iter().enumerate() {
            let expected = if h == 1 { CycInt::from_int(5, 5).unwrap() } else { CycInt::zero(5).unwrap() };
            assert_eq!(n, &expected);
        }
        assert_eq!(u.nonzero_terms(), 1);
    }

    #[test]
    fn switch_polynomial_coefficients() {
        let u = poly_coefficients(&perm("1,0,2,3,4"));
        // 5u_1 = 2 - w2 - w3, 5u_2 = 2w1 + w2 + 2w3
        assert_eq!(u.numerators()[1], cyc(&[2, 0, -1, -1, 0]));
        assert_eq!(u.numerators()[2], cyc(&[0, 2, 1, 2, 0]));
        assert_eq!(u.numerators()[3], cyc(&[-1, 1, 1, -1, 0]));
        assert_eq!(u.numerators()[4], cyc(&[-1, 2, -1, 0, 0]));
        assert!(u.numerators()[0].is_zero());
        assert_eq!(u.reconstruct().unwrap(), perm("1,0,2,3,4"));
    }

    #[test]
    fn reconstruction_round_trip() {
        for s in [2, 3, 5] {
            for p in all_permutations(s) {
                assert_eq!(poly_coefficients(&p).reconstruct().as_ref(), Some(&p));
            }
        }
        let p = perm("2,0,1,3,4");
        let u = poly_coefficients(&p);
        assert!(u.numerators()[0].is_zero());
        assert_eq!(u.reconstruct().unwrap(), p);
    }

    #[test]
    fn constraints_hold_for_permutations() {
        for s in [2, 3, 5] {
            for p in all_permutations(s) {
                let report = check_perm_constraints(&poly_coefficients(&p)).unwrap();
                assert!(report.all_hold(), "{p}: {report:?}");
                assert_eq!(report.sum_root, Some(p.apply(0)));
            }
        }
    }

    #[test]
    fn constraints_reject_non_permutations() {
        // s = 3: u_1 u_2 != 0
        let s3 = |a: &[i128], b: &[i128]| {
            PermPolynomial::from_numerators(vec![CycInt::zero(3).unwrap(), cyc(a), cyc(b)]).unwrap()
        };
        let bad = s3(&[3, 0, 0], &[3, 0, 0]);
        let report = check_perm_constraints(&bad).unwrap();
        assert!(!report.all_hold());
        assert_eq!(report.power_constant_terms, vec![(2, false)]);
        // the squaring map on s = 5 is not a bijection
        let sq: Vec<CycInt> = (0..5)
            .map(|h| {
                let mut c = vec![0i128; 5];
                for k in 0..5 {
                    c[(k * k + 25 - h * k % 5) % 5] += 1;
                }
                cyc(&c)
            })
            .collect();
        let report = check_perm_constraints(&PermPolynomial::from_numerators(sq).unwrap()).unwrap();
        assert!(!report.all_hold());
        assert!(check_perm_constraints(&poly_coefficients(&LevelPerm::identity(5))).unwrap().all_hold());
    }

    #[test]
    fn coset_representative_counts() {
        assert_eq!(coset_representatives(5).count(), 6);
        assert_eq!(coset_representatives(3).count(), 1);
        assert_eq!(coset_representatives(7).count(), 120);
        assert_eq!(coset_representatives(2).count(), 1);
        assert!(coset_representatives(7).all(|p| p.apply(0) == 0 && p.apply(1) == 1));
    }

    #[test]
    fn unique_coset_factorization() {
        let reps: Vec<LevelPerm> = coset_representatives(5).collect();
        for p in all_permutations(5) {
            let (h, k, rep) = coset_factorization(&p);
            assert_eq!(monomial_perm(h, k, 5).unwrap().compose(&rep), p);
            let matches = reps
                .iter()
                .filter(|r| (1..5).any(|h| (0..5).any(|k| monomial_perm(h, k, 5).unwrap().compose(r) == p)))
                .count();
            assert_eq!(matches, 1);
        }
        let (_, _, rep) = coset_factorization(&perm("4,3,0,2,1"));
        assert_eq!(rep, perm("0,1,4,2,3"));
    }

    #[test]
    fn apply_perm_round_trip() {
        let d = Design::full_factorial(5, 2).unwrap();
        let p = perm("4,3,0,2,1");
        let e = apply_level_perm(&d, 1, &p).unwrap();
        assert!(e.same_points(&d));
        assert_ne!(e, d);
        assert_eq!(apply_level_perm(&e, 1, &p.inverse()).unwrap(), d);
        assert_eq!(apply_level_perm(&d, 0, &LevelPerm::identity(5)).unwrap(), d);
        assert!(apply_level_perm(&d, 2, &p).is_err());
    }
}
