//! Exact arithmetic in the ring of integers extended by a primitive `s`-th
//! root of unity, `s` prime.
//!
//! A value is stored as an integer vector `(c_0, ..., c_{s-1})` standing for
//! `Σ c_h ω_h` with `ω_h = exp(2πi h / s)`. For prime `s` the only integer
//! relation between the roots is `Σ ω_h = 0`, so two vectors describe the same
//! number iff they differ by a constant vector. Values are kept in canonical
//! form (`min c_h = 0`), which makes equality structural and the zero-test a
//! comparison against the all-zero vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of levels accepted anywhere in the crate.
pub const MAX_LEVELS: usize = 97;

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates a number of levels: prime and at most [`MAX_LEVELS`].
pub fn check_levels(s: usize) -> Result<usize> {
    if is_prime(s) && s <= MAX_LEVELS {
        Ok(s)
    } else {
        Err(Error::NotPrime(s))
    }
}

/// Multiplicative inverse of `a` modulo the prime `s`.
pub fn inv_mod(a: usize, s: usize) -> usize {
    let a = a % s;
    assert!(a != 0, "zero has no inverse modulo {s}");
    // Fermat: a^(s-2)
    let mut result = 1usize;
    let mut base = a;
    let mut e = s - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % s;
        }
        base = base * base % s;
        e >>= 1;
    }
    result
}

fn overflow() -> ! {
    panic!("cyclotomic coefficient overflow: value exceeds the i128 range")
}

fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).unwrap_or_else(|| overflow())
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).unwrap_or_else(|| overflow())
}

/// An element of `Z[ω_s]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    s: usize,
    coeffs: Vec<i128>,
}

impl CycInt {
    /// Builds a value from raw coefficients, reducing to canonical form.
    pub fn from_coeffs(s: usize, coeffs: Vec<i128>) -> Result<Self> {
        check_levels(s)?;
        if coeffs.len() != s {
            return Err(Error::InvalidDesign(format!(
                "cyclotomic value needs {s} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::canonical(s, coeffs))
    }

    fn canonical(s: usize, mut coeffs: Vec<i128>) -> Self {
        let min = *coeffs.iter().min().expect("s >= 2");
        if min != 0 {
            for c in coeffs.iter_mut() {
                *c = c.checked_sub(min).unwrap_or_else(|| overflow());
            }
        }
        CycInt { s, coeffs }
    }

    pub fn zero(s: usize) -> Result<Self> {
        check_levels(s)?;
        Ok(CycInt { s, coeffs: vec![0; s] })
    }

    pub fn one(s: usize) -> Result<Self> {
        Self::root(0, s)
    }

    /// `ω_k`.
    pub fn root(k: usize, s: usize) -> Result<Self> {
        check_levels(s)?;
        if k >= s {
            return Err(Error::LevelOutOfRange { level: k, levels: s });
        }
        let mut coeffs = vec![0; s];
        coeffs[k] = 1;
        Ok(CycInt { s, coeffs })
    }

    /// The rational integer `n`, i.e. `n·ω_0`.
    pub fn from_int(n: i128, s: usize) -> Result<Self> {
        check_levels(s)?;
        let mut coeffs = vec![0; s];
        coeffs[0] = n;
        Ok(Self::canonical(s, coeffs))
    }

    pub fn levels(&self) -> usize {
        self.s
    }

    /// Canonical coefficients (minimum entry is 0).
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Zero-test on a raw, not necessarily canonical, coefficient vector.
    pub fn raw_is_zero(coeffs: &[i128]) -> bool {
        coeffs.windows(2).all(|w| w[0] == w[1])
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.s == other.s {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.s, other.s))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| checked_add(a, b))
            .collect();
        Ok(Self::canonical(self.s, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let s = self.s;
        let mut out = vec![0i128; s];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % s;
                out[k] = checked_add(out[k], checked_mul(a, b));
            }
        }
        Ok(Self::canonical(s, out))
    }

    fn neg_ref(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_neg().unwrap_or_else(|| overflow()))
            .collect();
        Self::canonical(self.s, coeffs)
    }

    /// Complex conjugate: moves the coefficient of `ω_h` to `ω_{[s-h]}`.
    pub fn conj(&self) -> Self {
        let s = self.s;
        let mut coeffs = vec![0; s];
        for (h, &c) in self.coeffs.iter().enumerate() {
            coeffs[(s - h) % s] = c;
        }
        CycInt { s, coeffs }
    }

    /// Multiplication by `ω_k`, a cyclic rotation of the coefficients.
    pub fn mul_root(&self, k: usize) -> Self {
        let s = self.s;
        let mut coeffs = vec![0; s];
        for (h, &c) in self.coeffs.iter().enumerate() {
            coeffs[(h + k) % s] = c;
        }
        CycInt { s, coeffs }
    }

    pub fn scale(&self, factor: i128) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| checked_mul(c, factor)).collect();
        Self::canonical(self.s, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycInt::root(0, self.s).expect("valid s");
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Returns `n` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i128> {
        let tail = self.coeffs[1];
        if self.coeffs[1..].iter().all(|&c| c == tail) {
            Some(self.coeffs[0] - tail)
        } else {
            None
        }
    }

    /// Returns `k` when the value is exactly `ω_k`.
    pub fn as_root(&self) -> Option<usize> {
        let mut found = None;
        for (h, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 if found.is_none() => found = Some(h),
                _ => return None,
            }
        }
        found
    }

    pub fn to_complex(&self) -> Complex64 {
        let s = self.s as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(h, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * h as f64 / s))
            .sum()
    }

    /// Greatest common divisor of the canonical coefficients (0 for zero).
    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0, |g, &c| gcd(g, c))
    }
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt<{}>({})", self.s, self)
    }
}

/// Prints `Σ c_h w_h` using the representative with the fewest units,
/// e.g. `2w1 + w3` or `2w0 - w2 - w3`.
impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        // adding a multiple of 1 + w + ... + w^{s-1} does not change the value
        let shift = self
            .coeffs
            .iter()
            .copied()
            .chain([0])
            .min_by_key(|&c| (self.coeffs.iter().map(|&x| (x - c).abs()).sum::<i128>(), c != 0))
            .unwrap_or(0);
        let mut first = true;
        for (h, c) in self.coeffs.iter().map(|&x| x - shift).enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            match c.abs() {
                1 => write!(f, "w{h}")?,
                a => write!(f, "{a}w{h}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycInt> for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait for CycInt {
            type Output = CycInt;
            fn $method(self, rhs: CycInt) -> CycInt {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.neg_ref()
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.neg_ref()
    }
}

/// A value of `Z[ω_s]` divided by a positive integer, kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRational {
    numerator: CycInt,
    denominator: i128,
}

impl CycRational {
    pub fn new(numerator: CycInt, denominator: i128) -> Result<Self> {
        if denominator <= 0 {
            return Err(Error::InvalidDesign(format!(
                "denominator must be positive, got {denominator}"
            )));
        }
        let g = gcd(numerator.content(), denominator);
        let g = if g == 0 { denominator } else { g };
        let coeffs = numerator.coeffs.iter().map(|&c| c / g).collect();
        Ok(CycRational {
            numerator: CycInt { s: numerator.s, coeffs },
            denominator: denominator / g,
        })
    }

    pub fn numerator(&self) -> &CycInt {
        &self.numerator
    }

    pub fn denominator(&self) -> i128 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.numerator.to_complex() / self.denominator as f64
    }
}

impl fmt::Debug for CycRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRational<{}>({})", self.numerator.s, self)
    }
}

impl fmt::Display for CycRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 || self.numerator.is_zero() {
            write!(f, "{}", self.numerator)
        } else if let Some(k) = self.numerator.as_integer() {
            write!(f, "{k}/{}", self.denominator)
        } else {
            write!(f, "({})/{}", self.numerator, self.denominator)
        }
    }
}
