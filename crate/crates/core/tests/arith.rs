mod common;

use ffcovar::arith::{
    delta_m, e_natural, lambda_j_mobius, lambda_j_recursive, lambda_mean, lambda_tilde, mobius, vm_average_closed,
};
use ffcovar::fq::{MonicTable, Poly};
use ffcovar::Rational;
use proptest::prelude::*;

use common::{field, monics};

#[test]
fn lambda_matches_trial_division_exhaustively() {
    for (q, max_deg) in [(2u32, 6usize), (3, 4), (5, 3)] {
        let f = field(q);
        for n in 0..=max_deg {
            for p in monics(f, n) {
                assert_eq!(mobius(&p).unwrap(), common::mobius(&p), "μ({p})");
                for j in 0..=4 {
                    let want = common::lambda_j(j, &p);
                    assert_eq!(lambda_j_mobius(j, &p).unwrap(), want, "Λ_{j}({p})");
                    assert_eq!(lambda_j_recursive(j, &p).unwrap(), want, "Λ_{j}({p}) by recursion");
                }
                assert_eq!(lambda_j_mobius(1, &p).unwrap(), common::von_mangoldt(&p), "Λ({p})");
                for m in 1..=n + 1 {
                    assert_eq!(delta_m(m, &p).unwrap(), common::delta_m(m, &p), "δ_{m}({p})");
                }
            }
        }
    }
}

#[test]
fn lambda_zero_is_indicator_of_constants() {
    let f = field(3);
    assert_eq!(lambda_j_mobius(0, &Poly::one(f)).unwrap(), 1);
    assert_eq!(lambda_j_mobius(0, &Poly::constant(f, 2)).unwrap(), 1);
    for p in monics(f, 2) {
        assert_eq!(lambda_j_mobius(0, &p).unwrap(), 0);
    }
}

#[test]
fn units_do_not_change_lambda() {
    let f = field(5);
    for p in monics(f, 3) {
        for c in 2..5 {
            let scaled = p.scale(c);
            for j in 0..=3 {
                assert_eq!(lambda_j_mobius(j, &scaled).unwrap(), lambda_j_mobius(j, &p).unwrap());
            }
        }
    }
}

#[test]
fn zero_polynomial_is_rejected() {
    let z = Poly::zero(field(3));
    assert!(lambda_j_mobius(1, &z).is_err());
    assert!(lambda_j_recursive(1, &z).is_err());
    assert!(mobius(&z).is_err());
    assert!(delta_m(0, &Poly::one(field(3))).is_err());
}

#[test]
fn degree_sums_match_closed_form() {
    for q in [2u32, 3, 5] {
        let f = field(q);
        for n in 1..=4 {
            for j in 0..=4 {
                let sum: i128 = monics(f, n).map(|p| lambda_j_mobius(j, &p).unwrap() as i128).sum();
                assert_eq!(sum, vm_average_closed(q, j, n));
                let centered: i64 = monics(f, n).map(|p| lambda_tilde(j, &p).unwrap()).sum();
                assert_eq!(centered, 0);
            }
        }
    }
    assert_eq!(lambda_mean(2, 3), 5);
    assert_eq!(lambda_mean(0, 0), 1);
}

#[test]
fn natural_mean_matches_direct_average() {
    for q in [2u32, 3, 5] {
        let f = field(q);
        let table = MonicTable::build(f, 4, 1 << 20).unwrap();
        for n in 1..=4 {
            for j in 0..=3 {
                let members: Vec<Poly> = monics(f, n).filter(|p| p.coeff(0) != 0).collect();
                let sum: i128 = members.iter().map(|p| common::lambda_j(j, p) as i128).sum();
                assert_eq!(e_natural(&table, j, n).unwrap(), Rational::new(sum, members.len() as i128));
            }
        }
    }
}

fn small_monic() -> impl Strategy<Value = Poly> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 0usize..=6, any::<u64>())
        .prop_map(|(q, n, r)| Poly::from_monic_index(field(q), n, r % (q as u64).pow(n as u32)))
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lambda_bounds_and_support(f in small_monic(), j in 0u32..=5) {
        let v = lambda_j_mobius(j, &f).unwrap();
        let n = f.degree().unwrap();
        prop_assert!(v >= 0);
        let bound = if n == 0 { 1 } else { (n as i64).pow(j) };
        prop_assert!(v <= bound);
        if common::omega(&f) > j as usize {
            prop_assert_eq!(v, 0);
        }
        prop_assert_eq!(v, lambda_j_recursive(j, &f).unwrap());
    }

    #[test]
    fn divisor_sum_is_degree_power(f in small_monic(), j in 0u32..=4) {
        let sum: i64 = common::monic_divisors(&f).iter().map(|d| lambda_j_mobius(j, d).unwrap()).sum();
        prop_assert_eq!(sum, (f.degree().unwrap() as i64).pow(j));
    }

    #[test]
    fn coprime_convolution(q in prop::sample::select(vec![2u32, 3, 5]), a in 0usize..=4, b in 0usize..=4,
                           ra in any::<u64>(), rb in any::<u64>(), j in 0u32..=4) {
        let fld = field(q);
        let f = Poly::from_monic_index(fld, a, ra % (q as u64).pow(a as u32));
        let g = Poly::from_monic_index(fld, b, rb % (q as u64).pow(b as u32));
        prop_assume!(f.gcd(&g).is_one());
        let lhs = lambda_j_mobius(j, &(&f * &g)).unwrap();
        let rhs: i64 = (0..=j)
            .map(|l| binomial(j, l) * lambda_j_mobius(l, &f).unwrap() * lambda_j_mobius(j - l, &g).unwrap())
            .sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_is_full_mobius_sum_past_the_degree(f in small_monic()) {
        let n = f.degree().unwrap();
        let want = i64::from(n == 0);
        prop_assert_eq!(delta_m(n + 1, &f).unwrap(), want);
        prop_assert_eq!(delta_m(1, &f).unwrap(), 1);
    }
}
