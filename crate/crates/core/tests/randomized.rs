mod common;

use oa_regularity::fixtures;
use oa_regularity::isomorphism::{is_isomorphic, IsoBudget, IsoOutcome};
use oa_regularity::permutation::{apply_level_perm, monomial_perm};
use oa_regularity::regularity::{regularity_check, verify_equations};
use oa_regularity::Design;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{random_equations, random_perms, rng, scramble};

fn assert_recovers(s: usize, m: usize, r: usize, trials: usize, seed: u64) {
    let mut rng = rng(seed);
    for trial in 0..trials {
        let eqs = random_equations(s, m, r, &mut rng);
        let base = Design::regular_fraction(s, m, &eqs).unwrap();
        let d = scramble(&base, &random_perms(s, m, &mut rng));
        let report = regularity_check(&d).unwrap();
        assert!(report.regular, "{s}^({m}-{r}) trial {trial}, equations {eqs:?}:\n{report}");
        assert_eq!(report.equations.len(), r);
        assert!(verify_equations(&d, &report.permutations, &report.equations));
    }
}

#[test]
fn permuted_regular_5_3() {
    assert_recovers(5, 3, 1, 40, 1);
}

#[test]
fn permuted_regular_5_4_1() {
    assert_recovers(5, 4, 1, 20, 2);
}

#[test]
fn permuted_regular_5_5_2() {
    assert_recovers(5, 5, 2, 20, 3);
}

#[test]
fn permuted_regular_3_4_2() {
    assert_recovers(3, 4, 2, 30, 4);
}

#[test]
fn permuted_regular_7_4_1() {
    assert_recovers(7, 4, 1, 5, 5);
}

/// A uniformly shuffled Latin square of order `s` by randomized backtracking.
fn random_latin_square(s: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    fn fill(cells: &mut Vec<usize>, s: usize, rng: &mut impl Rng) -> bool {
        let i = cells.len();
        if i == s * s {
            return true;
        }
        let (a, b) = (i / s, i % s);
        let mut symbols: Vec<usize> = (0..s).collect();
        symbols.shuffle(rng);
        for x in symbols {
            let clash = (0..b).any(|c| cells[a * s + c] == x) || (0..a).any(|r| cells[r * s + b] == x);
            if !clash {
                cells.push(x);
                if fill(cells, s, rng) {
                    return true;
                }
                cells.pop();
            }
        }
        false
    }
    let mut cells = Vec::with_capacity(s * s);
    assert!(fill(&mut cells, s, rng));
    cells.chunks(s).map(<[usize]>::to_vec).collect()
}

#[test]
fn verdicts_match_isomorphism_to_the_cyclic_array() {
    let mut rng = rng(21);
    let cyclic = fixtures::cyclic_array();
    let mut regular = 0;
    for _ in 0..30 {
        let square = random_latin_square(5, &mut rng);
        let rows = square.iter().enumerate().flat_map(|(a, row)| row.iter().enumerate().map(move |(b, &c)| vec![a, b, c]));
        let d = Design::new(5, 3, rows.collect()).unwrap();
        let verdict = regularity_check(&d).unwrap().regular;
        let iso = is_isomorphic(&d, &cyclic, IsoBudget::unlimited()).unwrap();
        assert_ne!(iso, IsoOutcome::Exhausted);
        assert_eq!(verdict, matches!(iso, IsoOutcome::Isomorphic(_)));
        regular += verdict as usize;
    }
    assert!(regular > 0 && regular < 30, "{regular} of 30 regular");
}

#[test]
fn monomial_relabelings_keep_the_verdict() {
    let mut rng = rng(31);
    for d in [fixtures::permuted_array(), fixtures::non_regular_array(), fixtures::two_generator_design()] {
        let before = regularity_check(&d).unwrap().regular;
        for _ in 0..5 {
            let j = rng.gen_range(0..d.factors());
            let m = monomial_perm(rng.gen_range(1..5), rng.gen_range(0..5), 5).unwrap();
            let e = apply_level_perm(&d, j, &m).unwrap();
            assert_eq!(regularity_check(&e).unwrap().regular, before);
        }
    }
}

#[test]
fn isomorphism_is_symmetric_and_respects_regularity() {
    let trio = [fixtures::cyclic_array(), fixtures::permuted_array(), fixtures::non_regular_array()];
    for a in &trio {
        for b in &trio {
            let ab = is_isomorphic(a, b, IsoBudget::unlimited()).unwrap();
            let ba = is_isomorphic(b, a, IsoBudget::unlimited()).unwrap();
            assert_eq!(matches!(ab, IsoOutcome::Isomorphic(_)), matches!(ba, IsoOutcome::Isomorphic(_)));
            if matches!(ab, IsoOutcome::Isomorphic(_)) && regularity_check(a).unwrap().regular {
                assert!(regularity_check(b).unwrap().regular);
            }
        }
    }
}

#[test]
fn random_relabelings_are_isomorphic() {
    let mut rng = rng(41);
    for base in [fixtures::permuted_array(), fixtures::non_regular_array()] {
        for _ in 0..5 {
            let mut order = vec![0, 1, 2];
            order.shuffle(&mut rng);
            let d = common::permute_columns(&scramble(&base, &random_perms(5, 3, &mut rng)), &order);
            assert!(matches!(is_isomorphic(&base, &d, IsoBudget::unlimited()).unwrap(), IsoOutcome::Isomorphic(_)));
        }
    }
}

#[test]
fn gwlp_matches_definition() {
    let mut rng = rng(51);
    for _ in 0..20 {
        let s = [2, 3, 5][rng.gen_range(0..3)];
        let d = common::random_subset(s, 3, s.pow(3), &mut rng);
        let exact = oa_regularity::indicator::gwlp(&d).unwrap();
        let oracle = common::gwlp_oracle(&d);
        assert!(exact.values().iter().zip(&oracle).all(|(a, b)| (a - b).abs() < 1e-9), "{exact} vs {oracle:?}");
    }
}
