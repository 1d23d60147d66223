//! Indicator-function coefficients, strength, aberrations and GWLP.
//!
//! With complex coding the indicator of a fraction `F` is
//! `Σ_α b_α X^α` where `b_α = (1/s^m) Σ_{x∈F} ω_{[-α·x]}`. Tables store the
//! exact numerators `N_α = s^m · b_α`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::CycInt;
use crate::design::{Design, DEFAULT_POINT_BOUND};
use crate::error::{Error, Result};

/// `n_{α,h} = #{x ∈ F : α·x ≡ h}` for `h = 0..s`.
pub fn level_counts(d: &Design, alpha: &[u8]) -> Vec<usize> {
    assert_eq!(alpha.len(), d.factors(), "exponent length must equal the factor count");
    let s = d.levels();
    let mut counts = vec![0; s];
    for row in d.rows() {
        let dot: usize = alpha.iter().zip(row).map(|(&a, &x)| a as usize * x as usize).sum();
        counts[dot % s] += 1;
    }
    counts
}

fn numerator_from_counts(counts: &[usize]) -> CycInt {
    let s = counts.len();
    let mut coeffs = vec![0i128; s];
    for (h, &c) in counts.iter().enumerate() {
        coeffs[(s - h) % s] += c as i128;
    }
    CycInt::from_coeffs(s, coeffs).expect("design levels are prime")
}

/// `N_α = Σ_{x∈F} ω_{[-α·x]}`, so that `b_α = N_α / s^m`.
pub fn coefficient_numerator(d: &Design, alpha: &[u8]) -> CycInt {
    numerator_from_counts(&level_counts(d, alpha))
}

/// Number of non-zero exponents.
pub fn order(alpha: &[u8]) -> usize {
    alpha.iter().filter(|&&a| a != 0).count()
}

/// All exponent tuples in lexicographic order.
pub fn exponent_tuples(s: usize, m: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..m).map(move |_| 0..s as u8).multi_cartesian_product()
}

/// Non-zero exponent tuples with exactly `t` non-zero entries.
pub fn tuples_of_order(s: usize, m: usize, t: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..m).combinations(t).flat_map(move |support| {
        (0..t).map(|_| 1..s as u8).multi_cartesian_product().map(move |values| {
            let mut alpha = vec![0u8; m];
            for (&j, v) in support.iter().zip(values) {
                alpha[j] = v;
            }
            alpha
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorEntry {
    pub counts: Vec<usize>,
    pub numerator: CycInt,
}

/// Exact coefficients `N_α`, either for every `α` or up to some order.
#[derive(Clone, Debug)]
pub struct IndicatorTable {
    s: usize,
    m: usize,
    runs: usize,
    max_order: usize,
    entries: BTreeMap<Vec<u8>, IndicatorEntry>,
}

impl IndicatorTable {
    /// Every `α ∈ Z_s^m`; requires `s^m` within the default bound.
    pub fn full(d: &Design) -> Result<Self> {
        let size = d.full_size();
        if size > DEFAULT_POINT_BOUND {
            return Err(Error::BoundExceeded { what: "full indicator table", size, bound: DEFAULT_POINT_BOUND });
        }
        let alphas: Vec<Vec<u8>> = exponent_tuples(d.levels(), d.factors()).collect();
        Ok(Self::build(d, alphas, d.factors()))
    }

    /// Every `α` with at most `max_order` non-zero entries.
    pub fn up_to_order(d: &Design, max_order: usize) -> Self {
        let max_order = max_order.min(d.factors());
        let alphas: Vec<Vec<u8>> = std::iter::once(vec![0u8; d.factors()])
            .chain((1..=max_order).flat_map(|t| tuples_of_order(d.levels(), d.factors(), t)))
            .collect();
        Self::build(d, alphas, max_order)
    }

    fn build(d: &Design, alphas: Vec<Vec<u8>>, max_order: usize) -> Self {
        let entries = alphas
            .into_par_iter()
            .map(|alpha| {
                let counts = level_counts(d, &alpha);
                let numerator = numerator_from_counts(&counts);
                (alpha, IndicatorEntry { counts, numerator })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        IndicatorTable { s: d.levels(), m: d.factors(), runs: d.runs(), max_order, entries }
    }

    pub fn levels(&self) -> usize {
        self.s
    }

    pub fn factors(&self) -> usize {
        self.m
    }

    /// `N_0`, the number of runs.
    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn is_complete(&self) -> bool {
        self.max_order == self.m
    }

    /// `s^m`, the common denominator of every `b_α`.
    pub fn denominator(&self) -> u128 {
        (self.s as u128).pow(self.m as u32)
    }

    pub fn get(&self, alpha: &[u8]) -> Option<&IndicatorEntry> {
        self.entries.get(alpha)
    }

    pub fn numerator(&self, alpha: &[u8]) -> Option<&CycInt> {
        self.get(alpha).map(|e| &e.numerator)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &IndicatorEntry)> {
        self.entries.iter()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Vec<u8>, &IndicatorEntry)> {
        self.entries.iter().filter(|(_, e)| !e.numerator.is_zero())
    }

    /// `b_α` as a floating point complex number.
    pub fn coefficient(&self, alpha: &[u8]) -> Option<Complex64> {
        let denom = self.denominator() as f64;
        self.numerator(alpha).map(|n| n.to_complex() / denom)
    }

    /// `{"s", "m", "denominator", "entries": [{"alpha", "numerator", "denominator"}]}`
    /// for the non-zero coefficients.
    pub fn to_json(&self) -> Value {
        let denominator = json_u128(self.denominator());
        let entries: Vec<Value> = self
            .nonzero()
            .map(|(alpha, e)| {
                json!({
                    "alpha": alpha,
                    "numerator": e.numerator.coeffs().iter().map(|&c| c as i64).collect::<Vec<_>>(),
                    "denominator": denominator,
                })
            })
            .collect();
        json!({ "s": self.s, "m": self.m, "denominator": denominator, "entries": entries })
    }

    /// `Σ_α b_α X^α(ζ)`; needs the full table.
    pub fn evaluate(&self, point: &[u8]) -> Result<Complex64> {
        if !self.is_complete() {
            return Err(Error::InvalidDesign("indicator evaluation needs the full coefficient table".into()));
        }
        if point.len() != self.m {
            return Err(Error::FactorCount { expected: self.m, found: point.len() });
        }
        let s = self.s;
        let total: CycInt = self.entries.iter().fold(CycInt::zero(s)?, |acc, (alpha, e)| {
            let dot: usize = alpha.iter().zip(point).map(|(&a, &x)| a as usize * x as usize).sum();
            &acc + &e.numerator.mul_root(dot % s)
        });
        Ok(total.to_complex() / self.denominator() as f64)
    }
}

fn json_u128(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

/// Free-function form of [`IndicatorTable::evaluate`].
pub fn evaluate_indicator(table: &IndicatorTable, point: &[u8]) -> Result<Complex64> {
    table.evaluate(point)
}

/// Largest `t` with `N_α = 0` for every non-zero `α` of order at most `t`.
pub fn strength_from_coefficients(d: &Design) -> usize {
    let (s, m) = (d.levels(), d.factors());
    for t in 1..=m {
        let all_zero = tuples_of_order(s, m, t)
            .par_bridge()
            .all(|alpha| coefficient_numerator(d, &alpha).is_zero());
        if !all_zero {
            return t - 1;
        }
    }
    m
}

/// `a_α = (1/n²) Σ_k cos(2πk/s) Σ_i n_i n_{[i-k]}` from the level counts.
pub fn aberration_from_counts(counts: &[usize]) -> f64 {
    let s = counts.len();
    let n: usize = counts.iter().sum();
    let mut total = 0.0;
    for k in 0..s {
        let corr: usize = (0..s).map(|i| counts[i] * counts[(i + s - k) % s]).sum();
        total += (std::f64::consts::TAU * k as f64 / s as f64).cos() * corr as f64;
    }
    total / (n as f64 * n as f64)
}

pub fn aberration(d: &Design, alpha: &[u8]) -> f64 {
    aberration_from_counts(&level_counts(d, alpha))
}

/// `|N_α|² / N_0²` via the exact product `N_α · conj(N_α)`.
pub fn aberration_exact(numerator: &CycInt, runs: usize) -> f64 {
    let norm = numerator * &numerator.conj();
    norm.to_complex().re / (runs as f64 * runs as f64)
}

/// Generalized word length pattern `(A_1, ..., A_m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Gwlp(pub Vec<f64>);

impl Gwlp {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn approx_eq(&self, other: &Gwlp, tol: f64) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl std::fmt::Display for Gwlp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts = self.0.iter().map(|a| {
            let r = a.round();
            if (a - r).abs() < 1e-9 { format!("{}", r as i64) } else { format!("{a:.6}") }
        });
        write!(f, "({})", parts.format(", "))
    }
}

pub fn gwlp(d: &Design) -> Result<Gwlp> {
    let size = d.full_size();
    if size > DEFAULT_POINT_BOUND {
        return Err(Error::BoundExceeded { what: "GWLP", size, bound: DEFAULT_POINT_BOUND });
    }
    let (s, m) = (d.levels(), d.factors());
    let values = (1..=m)
        .map(|t| {
            let alphas: Vec<Vec<u8>> = tuples_of_order(s, m, t).collect();
            let terms: Vec<f64> = alphas.par_iter().map(|alpha| aberration(d, alpha)).collect();
            terms.into_iter().sum::<f64>()
        })
        .collect::<Vec<_>>();
    Ok(Gwlp(values.into_iter().map(|a| if a.abs() < 1e-12 { 0.0 } else { a }).collect()))
}
