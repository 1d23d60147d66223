//! Gaussian elimination over the prime field `Z_s`.

use crate::cyclotomic::inv_mod;

/// Reduced row echelon form of `rows` (entries already in `0..s`).
/// Returns the reduced rows (zero rows dropped) and their pivot columns.
pub fn rref(rows: &[Vec<usize>], s: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut m: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|&x| x % s).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        let Some(p) = (lead..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(lead, p);
        let inv = inv_mod(m[lead][col], s);
        for x in m[lead].iter_mut() {
            *x = *x * inv % s;
        }
        let pivot_row = m[lead].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != lead && row[col] != 0 {
                let factor = row[col];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + s * s - factor * p % s) % s;
                }
            }
        }
        pivots.push(col);
        lead += 1;
        if lead == m.len() {
            break;
        }
    }
    m.truncate(lead);
    (m, pivots)
}

pub fn rank(rows: &[Vec<usize>], s: usize) -> usize {
    rref(rows, s).1.len()
}

/// Whether two sets of vectors span the same subspace of `Z_s^n`.
pub fn same_row_space(a: &[Vec<usize>], b: &[Vec<usize>], s: usize) -> bool {
    let (ra, _) = rref(a, s);
    let (rb, _) = rref(b, s);
    ra == rb
}

/// Outcome of adding an augmented row `[α | k]` to an independent system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Independent,
    Dependent,
    Inconsistent,
}

/// Classifies the augmented row `candidate` against the already accepted
/// augmented rows of an independent system.
pub fn classify_row(accepted: &[Vec<usize>], candidate: &[usize], s: usize) -> RowStatus {
    let n = candidate.len() - 1;
    let lhs: Vec<Vec<usize>> = accepted.iter().map(|r| r[..n].to_vec()).collect();
    let mut with_lhs = lhs.clone();
    with_lhs.push(candidate[..n].to_vec());
    if rank(&with_lhs, s) > lhs.len() {
        return RowStatus::Independent;
    }
    let mut aug = accepted.to_vec();
    aug.push(candidate.to_vec());
    if rank(&aug, s) > accepted.len() {
        RowStatus::Inconsistent
    } else {
        RowStatus::Dependent
    }
}

/// All solutions of the independent, consistent system `[A | k]`
/// with `A` of shape `r × n`, returned in lexicographic order.
pub fn solve_all(augmented: &[Vec<usize>], n: usize, s: usize) -> Vec<Vec<usize>> {
    let (reduced, pivots) = rref(augmented, s);
    debug_assert!(pivots.iter().all(|&p| p < n), "system must be consistent");
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let total = s.pow(free.len() as u32);
    let mut out = Vec::with_capacity(total);
    let mut assignment = vec![0usize; free.len()];
    for _ in 0..total {
        let mut x = vec![0usize; n];
        for (&c, &v) in free.iter().zip(&assignment) {
            x[c] = v;
        }
        for (row, &p) in reduced.iter().zip(&pivots) {
            // x_p = k - Σ_{free} a_c x_c
            let mut v = row[n];
            for &c in &free {
                v = (v + s * s - row[c] * x[c] % s) % s;
            }
            x[p] = v;
        }
        out.push(x);
        for slot in assignment.iter_mut().rev() {
            *slot += 1;
            if *slot < s {
                break;
            }
            *slot = 0;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_z5() {
        let rows = vec![vec![2, 1, 1, 0, 0], vec![1, 1, 0, 1, 1], vec![3, 2, 1, 1, 1]];
        assert_eq!(rank(&rows, 5), 2);
    }

    #[test]
    fn row_space_comparison() {
        let a = vec![vec![1, 1, 4]];
        let b = vec![vec![4, 4, 1]];
        assert!(same_row_space(&a, &b, 5));
        assert!(!same_row_space(&a, &[vec![1, 2, 4]], 5));
    }

    #[test]
    fn classify_rows() {
        let acc = vec![vec![1, 1, 4, 0]];
        assert_eq!(classify_row(&acc, &[2, 2, 3, 0], 5), RowStatus::Dependent);
        assert_eq!(classify_row(&acc, &[2, 2, 3, 1], 5), RowStatus::Inconsistent);
        assert_eq!(classify_row(&acc, &[1, 0, 0, 1], 5), RowStatus::Independent);
    }

    #[test]
    fn solutions_of_single_equation() {
        let sols = solve_all(&[vec![1, 1, 0]], 2, 2);
        assert_eq!(sols, vec![vec![0, 0], vec![1, 1]]);
        let sols = solve_all(&[vec![1, 1, 4, 0]], 3, 5);
        assert_eq!(sols.len(), 25);
        assert!(sols.iter().all(|x| (x[0] + x[1] + 4 * x[2]) % 5 == 0));
    }
}
