use num_complex::Complex64;
use oa_regularity::permutation::{check_perm_constraints, coset_factorization, monomial_perm, poly_coefficients};
use oa_regularity::{CycInt, Design, LevelPerm};
use proptest::prelude::*;

const PRIMES: [usize; 5] = [2, 3, 5, 7, 11];

fn cyc(s: usize) -> impl Strategy<Value = CycInt> {
    prop::collection::vec(-20i128..=20, s).prop_map(move |c| CycInt::from_coeffs(s, c).unwrap())
}

fn triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|s| (cyc(s), cyc(s), cyc(s)))
}

fn perm(s: usize) -> impl Strategy<Value = LevelPerm> {
    Just((0..s).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| LevelPerm::new(v).unwrap())
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-6
}

fn design() -> impl Strategy<Value = Design> {
    (prop::sample::select(vec![2usize, 3, 5]), 1usize..=3).prop_flat_map(|(s, m)| {
        let total = s.pow(m as u32);
        prop::collection::btree_set(0..total, 1..=total).prop_map(move |points| {
            let rows = points.iter().map(|&p| (0..m).rev().map(|j| p / s.pow(j as u32) % s).collect()).collect();
            Design::new(s, m, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn arithmetic_matches_complex((a, b, _) in triple()) {
        prop_assert!(close((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
        prop_assert!(close((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(close(a.conj().to_complex(), a.to_complex().conj()));
    }

    #[test]
    fn exact_zero_agrees_with_complex_zero((a, _, _) in triple()) {
        prop_assert_eq!(a.is_zero(), a.to_complex().norm() < 1e-9);
    }

    #[test]
    fn conjugation_is_an_involution_and_norm_is_real((a, b, _) in triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a * &a.conj()).to_complex().im.abs() < 1e-9);
    }

    #[test]
    fn parse_inverts_serialize(d in design()) {
        let text = d.serialize();
        let back = Design::parse(&text).unwrap();
        prop_assert!(back.same_points(&d));
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn permutation_polynomial_round_trip(p in prop::sample::select(vec![2usize, 3, 5, 7]).prop_flat_map(perm)) {
        let u = poly_coefficients(&p);
        prop_assert_eq!(u.reconstruct(), Some(p.clone()));
        prop_assert!(check_perm_constraints(&u).unwrap().all_hold());
        for k in 0..p.levels() {
            prop_assert_eq!(u.evaluate_scaled(k), CycInt::root(p.apply(k), p.levels()).unwrap().scale(p.levels() as i128));
        }
    }

    #[test]
    fn coset_factorization_recomposes(p in prop::sample::select(vec![3usize, 5, 7]).prop_flat_map(perm)) {
        let (h, k, rep) = coset_factorization(&p);
        prop_assert_eq!((rep.apply(0), rep.apply(1)), (0, 1));
        prop_assert_eq!(monomial_perm(h, k, p.levels()).unwrap().compose(&rep), p);
    }

    #[test]
    fn permutation_group_laws(p in perm(5), q in perm(5)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
    }
}
