//! Fractions of an `s^m` full factorial design, stored in integer coding
//! (level `k` stands for the root of unity `ω_k`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::cyclotomic::check_levels;
use crate::error::{Error, ParseErrorKind, Result};
use crate::linalg::{classify_row, solve_all, RowStatus};

/// Default bound on the number of points a full factorial may have.
pub const DEFAULT_POINT_BOUND: u128 = 1_000_000;

/// A fraction without replicates: `n` distinct rows of `m` levels in `0..s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Design {
    s: usize,
    m: usize,
    data: Vec<u8>,
}

impl Design {
    pub fn new(s: usize, m: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        check_levels(s)?;
        if m == 0 {
            return Err(Error::InvalidDesign("a design needs at least one factor".into()));
        }
        if rows.is_empty() {
            return Err(Error::InvalidDesign("a design needs at least one row".into()));
        }
        let mut data = Vec::with_capacity(rows.len() * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidDesign(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= s {
                    return Err(Error::LevelOutOfRange { level: x, levels: s });
                }
                data.push(x as u8);
            }
        }
        let design = Design { s, m, data };
        if let Some((a, b)) = design.find_duplicate() {
            return Err(Error::InvalidDesign(format!("rows {a} and {b} are identical")));
        }
        Ok(design)
    }

    /// Builds a design from already validated parts.
    pub(crate) fn from_raw(s: usize, m: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len() % m, 0);
        Design { s, m, data }
    }

    fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<&[u8], usize> = HashMap::with_capacity(self.runs());
        for (i, row) in self.rows().enumerate() {
            if let Some(&j) = seen.get(row) {
                return Some((j, i));
            }
            seen.insert(row, i);
        }
        None
    }

    /// Number of levels `s`.
    pub fn levels(&self) -> usize {
        self.s
    }

    /// Number of factors `m`.
    pub fn factors(&self) -> usize {
        self.m
    }

    /// Number of runs `n`.
    pub fn runs(&self) -> usize {
        self.data.len() / self.m
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.data.chunks_exact(self.m)
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = u8> + '_ {
        self.rows().map(move |r| r[j])
    }

    /// `s^m`, the size of the full factorial this design lives in.
    pub fn full_size(&self) -> u128 {
        (self.s as u128).saturating_pow(self.m as u32)
    }

    /// Same points with rows in lexicographic order.
    pub fn sorted(&self) -> Design {
        let mut rows: Vec<&[u8]> = self.rows().collect();
        rows.sort_unstable();
        Design::from_raw(self.s, self.m, rows.concat())
    }

    /// Set equality of the point sets, ignoring run order.
    pub fn same_points(&self, other: &Design) -> bool {
        self.s == other.s && self.m == other.m && self.runs() == other.runs() && {
            self.sorted().data == other.sorted().data
        }
    }

    pub(crate) fn check_factor(&self, j: usize) -> Result<()> {
        if j < self.m {
            Ok(())
        } else {
            Err(Error::FactorOutOfRange { index: j, factors: self.m })
        }
    }

    /// All `s^m` points in lexicographic order.
    pub fn full_factorial(s: usize, m: usize) -> Result<Design> {
        Self::full_factorial_bounded(s, m, DEFAULT_POINT_BOUND)
    }

    pub fn full_factorial_bounded(s: usize, m: usize, bound: u128) -> Result<Design> {
        check_levels(s)?;
        if m == 0 {
            return Err(Error::InvalidDesign("a design needs at least one factor".into()));
        }
        let size = (s as u128).saturating_pow(m as u32);
        if size > bound {
            return Err(Error::BoundExceeded { what: "full factorial", size, bound });
        }
        let data = (0..m)
            .map(|_| 0..s as u8)
            .multi_cartesian_product()
            .flatten()
            .collect();
        Ok(Design::from_raw(s, m, data))
    }

    /// The fraction `{x : α·x ≡ k (mod s)}` for every equation, sorted.
    pub fn regular_fraction(s: usize, m: usize, equations: &[DefiningEquation]) -> Result<Design> {
        check_levels(s)?;
        if equations.is_empty() {
            return Err(Error::InvalidEquation("at least one equation is required".into()));
        }
        let mut accepted: Vec<Vec<usize>> = Vec::new();
        for (index, eq) in equations.iter().enumerate() {
            if eq.levels() != s || eq.factors() != m {
                return Err(Error::InvalidEquation(format!(
                    "equation {eq} does not belong to a {s}^{m} design"
                )));
            }
            let row = eq.augmented_row();
            match classify_row(&accepted, &row, s) {
                RowStatus::Independent => accepted.push(row),
                RowStatus::Dependent => {
                    return Err(Error::DependentEquation { index, equation: eq.to_string() })
                }
                RowStatus::Inconsistent => {
                    return Err(Error::InconsistentEquation { index, equation: eq.to_string() })
                }
            }
        }
        let size = (s as u128).saturating_pow((m - accepted.len()) as u32);
        if size > DEFAULT_POINT_BOUND {
            return Err(Error::BoundExceeded { what: "regular fraction", size, bound: DEFAULT_POINT_BOUND });
        }
        let points = solve_all(&accepted, m, s);
        let data = points.into_iter().flatten().map(|x| x as u8).collect();
        Ok(Design::from_raw(s, m, data))
    }

    /// Multiset of the rows restricted to `factors` (0-based, in the given order).
    pub fn project(&self, factors: &[usize]) -> Result<BTreeMap<Vec<u8>, usize>> {
        if factors.is_empty() {
            return Err(Error::InvalidDesign("projection needs at least one factor".into()));
        }
        for &j in factors {
            self.check_factor(j)?;
        }
        let mut counts = BTreeMap::new();
        for row in self.rows() {
            let key: Vec<u8> = factors.iter().map(|&j| row[j]).collect();
            *counts.entry(key).or_insert(0) += 1;
        }
        Ok(counts)
    }

    /// Whether the projection onto `factors` is a full factorial with every
    /// point replicated equally often.
    pub fn projects_factorially(&self, factors: &[usize]) -> Result<bool> {
        let counts = self.project(factors)?;
        let cells = (self.s as u128).pow(factors.len() as u32);
        if counts.len() as u128 != cells {
            return Ok(false);
        }
        let mut values = counts.values();
        let first = values.next().copied();
        Ok(values.all(|&c| Some(c) == first))
    }

    /// Orthogonal-array test of strength `t` by direct counting.
    pub fn check_strength_combinatorial(&self, t: usize) -> bool {
        if t == 0 {
            return true;
        }
        if t > self.m {
            return false;
        }
        (0..self.m)
            .combinations(t)
            .all(|subset| self.projects_factorially(&subset).unwrap_or(false))
    }

    /// Largest `t` passing [`Design::check_strength_combinatorial`].
    pub fn max_strength_combinatorial(&self) -> usize {
        (1..=self.m)
            .take_while(|&t| self.check_strength_combinatorial(t))
            .last()
            .unwrap_or(0)
    }

    /// Parses the text file format: `#` comment lines, a header `n m s`,
    /// then `n` rows of `m` space-separated levels.
    pub fn parse(text: &str) -> Result<Design> {
        let parse_err = |line: usize, column: usize, kind: ParseErrorKind| Error::Parse { line, column, kind };
        let mut lines = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
            .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, 1, ParseErrorKind::MissingHeader))?;
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 3 || fields.iter().any(|f| f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit())) {
            return Err(parse_err(hline, 1, ParseErrorKind::MalformedHeader(header.to_string())));
        }
        let mut nums = [0u64; 3];
        let mut col = 1;
        for (slot, field) in nums.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| parse_err(hline, col, ParseErrorKind::InvalidInteger(field.to_string())))?;
            col += field.len() + 1;
        }
        let [n, m, s] = nums;
        let s_col = fields[0].len() + fields[1].len() + 3;
        if s > usize::MAX as u64 || check_levels(s as usize).is_err() {
            return Err(parse_err(hline, s_col, ParseErrorKind::NonPrimeLevels(s)));
        }
        if m == 0 {
            return Err(parse_err(hline, fields[0].len() + 2, ParseErrorKind::MalformedHeader(header.to_string())));
        }
        if n == 0 {
            return Err(parse_err(hline, 1, ParseErrorKind::EmptyDesign));
        }
        let (n, m, s) = (n as usize, m as usize, s as usize);

        let mut data = Vec::with_capacity(n.saturating_mul(m).min(1 << 24));
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut found = 0;
        let mut last_line = hline;
        for (lineno, line) in lines {
            last_line = lineno;
            found += 1;
            if found > n {
                continue;
            }
            let mut row = Vec::with_capacity(m);
            let mut column = 1;
            for tok in line.split(' ') {
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(parse_err(lineno, column, ParseErrorKind::InvalidInteger(tok.to_string())));
                }
                let value: u64 = tok
                    .parse()
                    .map_err(|_| parse_err(lineno, column, ParseErrorKind::InvalidInteger(tok.to_string())))?;
                if value >= s as u64 {
                    return Err(parse_err(lineno, column, ParseErrorKind::LevelOutOfRange { value, levels: s }));
                }
                row.push(value as u8);
                column += tok.len() + 1;
            }
            if row.len() != m {
                return Err(parse_err(lineno, 1, ParseErrorKind::RowLength { expected: m, found: row.len() }));
            }
            if let Some(&first_line) = seen.get(&row) {
                return Err(parse_err(lineno, 1, ParseErrorKind::DuplicateRow { first_line }));
            }
            data.extend_from_slice(&row);
            seen.insert(row, lineno);
        }
        if found != n {
            return Err(parse_err(last_line, 1, ParseErrorKind::RowCount { expected: n, found }));
        }
        Ok(Design::from_raw(s, m, data))
    }

    /// Reads raw bytes, which must be UTF-8.
    pub fn parse_bytes(bytes: &[u8]) -> Result<Design> {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
            line: 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
            column: 1,
            kind: ParseErrorKind::InvalidInteger("invalid UTF-8".into()),
        })?;
        Self::parse(text)
    }

    /// File-format text: header then rows in lexicographic order.
    pub fn serialize(&self) -> String {
        let sorted = self.sorted();
        let mut out = format!("{} {} {}\n", self.runs(), self.m, self.s);
        for row in sorted.rows() {
            out.push_str(&row.iter().join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Design(n={}, m={}, s={})", self.runs(), self.m, self.s)
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Design::parse(s)
    }
}

/// `X^α = ω_k`, stored as the exponent vector `α` and the constant `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DefiningEquation {
    #[serde(skip)]
    s: usize,
    exponents: Vec<u8>,
    constant: u8,
}

impl DefiningEquation {
    /// Reduces entries modulo `s`; the exponent vector must not vanish.
    pub fn new(s: usize, exponents: &[i64], constant: i64) -> Result<Self> {
        check_levels(s)?;
        let si = s as i64;
        let exponents: Vec<u8> = exponents.iter().map(|&a| a.rem_euclid(si) as u8).collect();
        if exponents.iter().all(|&a| a == 0) {
            return Err(Error::InvalidEquation("exponent vector is zero modulo s".into()));
        }
        Ok(DefiningEquation { s, exponents, constant: constant.rem_euclid(si) as u8 })
    }

    /// Parses `a1,...,am=k`.
    pub fn parse(text: &str, s: usize) -> Result<Self> {
        let bad = || Error::InvalidEquation(format!("expected \"a1,...,am=k\", got {text:?}"));
        let (lhs, rhs) = text.split_once('=').ok_or_else(bad)?;
        let exponents = lhs
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let constant = rhs.trim().parse::<i64>().map_err(|_| bad())?;
        Self::new(s, &exponents, constant)
    }

    pub fn levels(&self) -> usize {
        self.s
    }

    pub fn factors(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn constant(&self) -> u8 {
        self.constant
    }

    /// Factors with a non-zero exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, _)| j)
            .collect()
    }

    /// Whether the point satisfies `α·x ≡ k (mod s)`.
    pub fn holds(&self, point: &[u8]) -> bool {
        let dot: usize = self
            .exponents
            .iter()
            .zip(point)
            .map(|(&a, &x)| a as usize * x as usize)
            .sum();
        dot % self.s == self.constant as usize
    }

    pub(crate) fn augmented_row(&self) -> Vec<usize> {
        self.exponents
            .iter()
            .map(|&a| a as usize)
            .chain(std::iter::once(self.constant as usize))
            .collect()
    }

    /// The same equation multiplied through by `c` (a unit modulo `s`).
    pub fn scaled(&self, c: usize) -> DefiningEquation {
        let s = self.s;
        DefiningEquation {
            s,
            exponents: self.exponents.iter().map(|&a| (a as usize * c % s) as u8).collect(),
            constant: (self.constant as usize * c % s) as u8,
        }
    }
}

impl fmt::Display for DefiningEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.exponents.iter().join(","), self.constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_rows() -> Vec<Vec<usize>> {
        (0..5)
            .flat_map(|a| (0..5).map(move |b| vec![a, b, (a + b) % 5]))
            .collect()
    }

    fn fraction_b() -> Design {
        Design::new(5, 3, cyclic_rows()).unwrap()
    }

    #[test]
    fn parse_valid_file() {
        let text = fraction_b().serialize();
        let d = Design::parse(&text).unwrap();
        assert_eq!((d.runs(), d.factors(), d.levels()), (25, 3, 5));
        assert!(d.rows().all(|r| (r[0] as usize + r[1] as usize + 4 * r[2] as usize).is_multiple_of(5)));
    }

    #[test]
    fn parse_ignores_comments_and_keeps_order() {
        let d = Design::parse("# comment\n2 2 2\n1 1\n0 0\n").unwrap();
        assert_eq!(d.row(0), &[1, 1]);
        assert_eq!(d.row(1), &[0, 0]);
    }

    #[test]
    fn parse_errors_are_distinct() {
        let kind = |text: &str| match Design::parse(text) {
            Err(Error::Parse { kind, .. }) => kind,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert!(matches!(kind("1 1 5\n5\n"), ParseErrorKind::LevelOutOfRange { value: 5, levels: 5 }));
        assert!(matches!(kind("1 1 4\n0\n"), ParseErrorKind::NonPrimeLevels(4)));
        assert!(matches!(kind("2 1 5\n0\n0\n"), ParseErrorKind::DuplicateRow { first_line: 2 }));
        assert!(matches!(kind("1 2 5\n0\n"), ParseErrorKind::RowLength { expected: 2, found: 1 }));
        assert!(matches!(kind("1  2 5\n0 0\n"), ParseErrorKind::MalformedHeader(_)));
        assert!(matches!(kind("3 1 5\n0\n1\n"), ParseErrorKind::RowCount { expected: 3, found: 2 }));
        assert!(matches!(kind("# only\n"), ParseErrorKind::MissingHeader));
        assert!(matches!(kind("1 1 5\nx\n"), ParseErrorKind::InvalidInteger(_)));
    }

    #[test]
    fn parse_error_reports_position() {
        match Design::parse("2 2 5\n0 0\n1 7\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn serializer_sorts_and_has_no_trailing_whitespace() {
        let d = Design::new(2, 2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(d.serialize(), "2 2 2\n0 1\n1 1\n");
    }

    #[test]
    fn full_factorials() {
        let d = Design::full_factorial(5, 1).unwrap();
        assert_eq!(d.rows().map(|r| r[0]).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        assert_eq!(Design::full_factorial(5, 3).unwrap().runs(), 125);
        let d = Design::full_factorial(2, 2).unwrap();
        assert_eq!(d.rows().map(|r| r.to_vec()).collect::<Vec<_>>(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(matches!(Design::full_factorial(5, 9), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn regular_fractions_from_equations() {
        let eq = DefiningEquation::new(5, &[1, 1, 4], 0).unwrap();
        let d = Design::regular_fraction(5, 3, &[eq]).unwrap();
        assert!(d.same_points(&fraction_b()));

        let eqs = [
            DefiningEquation::new(5, &[2, 1, 1, 0, 0], 1).unwrap(),
            DefiningEquation::new(5, &[1, 1, 0, 1, 1], 1).unwrap(),
        ];
        assert_eq!(Design::regular_fraction(5, 5, &eqs).unwrap().runs(), 125);

        let eq = DefiningEquation::new(2, &[1, 1], 0).unwrap();
        let d = Design::regular_fraction(2, 2, &[eq]).unwrap();
        assert_eq!(d.serialize(), "2 2 2\n0 0\n1 1\n");
    }

    #[test]
    fn dependent_or_inconsistent_equations_rejected() {
        let a = DefiningEquation::new(5, &[1, 1, 4], 0).unwrap();
        let b = DefiningEquation::new(5, &[2, 2, 3], 0).unwrap();
        let c = DefiningEquation::new(5, &[2, 2, 3], 1).unwrap();
        assert!(matches!(
            Design::regular_fraction(5, 3, &[a.clone(), b]),
            Err(Error::DependentEquation { index: 1, .. })
        ));
        assert!(matches!(
            Design::regular_fraction(5, 3, &[a, c]),
            Err(Error::InconsistentEquation { index: 1, .. })
        ));
        assert!(DefiningEquation::new(5, &[5, 0, 10], 1).is_err());
    }

    #[test]
    fn projections() {
        let d = fraction_b();
        let p = d.project(&[0, 1]).unwrap();
        assert_eq!(p.len(), 25);
        assert!(p.values().all(|&c| c == 1));
        let p = d.project(&[0]).unwrap();
        assert_eq!(p.len(), 5);
        assert!(p.values().all(|&c| c == 5));
        let full = Design::full_factorial(5, 3).unwrap();
        assert!(full.project(&[0, 1]).unwrap().values().all(|&c| c == 5));
        assert!(d.project(&[3]).is_err());
    }

    #[test]
    fn combinatorial_strength() {
        let d = fraction_b();
        assert!(d.check_strength_combinatorial(2));
        assert!(!d.check_strength_combinatorial(3));
        assert_eq!(d.max_strength_combinatorial(), 2);
        let full = Design::full_factorial(5, 3).unwrap();
        assert!(full.check_strength_combinatorial(3));
    }

    #[test]
    fn equation_parsing() {
        let eq = DefiningEquation::parse("2,1,1,0,0=1", 5).unwrap();
        assert_eq!(eq.exponents(), &[2, 1, 1, 0, 0]);
        assert_eq!(eq.constant(), 1);
        assert_eq!(eq.support(), vec![0, 1, 2]);
        assert_eq!(eq.to_string(), "2,1,1,0,0 = 1");
        assert!(DefiningEquation::parse("1,1", 5).is_err());
    }
}
