mod common;

use ffcovar::fq::{factor_seeded, is_irreducible, FieldParams, MonicTable, Poly};
use proptest::prelude::*;

const PRIMES: [u32; 5] = [2, 3, 5, 7, 13];

fn poly_in(q: u32, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u64..q as u64, 0..=max_len).prop_map(move |c| Poly::new(FieldParams::new(q).unwrap(), c))
}

fn poly_triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| (poly_in(q, 8), poly_in(q, 8), poly_in(q, 8)))
}

fn nonzero_pair() -> impl Strategy<Value = (Poly, Poly)> {
    prop::sample::select(PRIMES.to_vec())
        .prop_flat_map(|q| (poly_in(q, 12), poly_in(q, 6)))
        .prop_filter("divisor must be nonzero", |(_, g)| !g.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms((a, b, c) in poly_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!((&a * &b).degree(), Some(da + db));
        }
    }

    #[test]
    fn division_with_remainder((f, g) in nonzero_pair()) {
        let (quo, rem) = f.divmod(&g).unwrap();
        prop_assert_eq!(&(&quo * &g) + &rem, f.clone());
        prop_assert!(rem.is_zero() || rem.degree() < g.degree());
    }

    #[test]
    fn gcd_divides_both((f, g) in nonzero_pair()) {
        let d = f.gcd(&g);
        prop_assert!(d.is_monic());
        prop_assert!(d.divides(&f) && d.divides(&g));
        let (a, b) = (f.exact_div(&d).unwrap(), g.exact_div(&d).unwrap());
        prop_assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn text_round_trip(p in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| poly_in(q, 10))) {
        let s = p.to_string();
        let back: Poly = s.parse().unwrap();
        prop_assert_eq!(back.to_string(), s);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn factorization_reconstructs(f in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|q| poly_in(q, 14)), seed in any::<u64>()) {
        prop_assume!(!f.is_zero());
        let fac = factor_seeded(&f, seed).unwrap();
        prop_assert_eq!(fac.reconstruct(), f.clone());
        for (p, e) in &fac.factors {
            prop_assert!(p.is_monic() && *e >= 1);
            prop_assert!(is_irreducible(p));
        }
        let mut sorted = fac.factors.clone();
        sorted.sort();
        sorted.dedup_by(|a, b| a.0 == b.0);
        prop_assert_eq!(sorted.len(), fac.factors.len());
    }

    #[test]
    fn monic_index_round_trip(q in prop::sample::select(PRIMES.to_vec()), deg in 0usize..6, raw in any::<u64>()) {
        let field = FieldParams::new(q).unwrap();
        let index = raw % (q as u64).pow(deg as u32);
        let p = Poly::from_monic_index(field, deg, index);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(deg));
        prop_assert_eq!(p.monic_index(), Some(index));
    }
}

#[test]
fn irreducibility_matches_trial_division() {
    for (q, max_deg) in [(2u32, 7usize), (3, 5), (5, 3)] {
        let f = common::field(q);
        let table = MonicTable::build(f, max_deg, 1 << 20).unwrap();
        for n in 1..=max_deg {
            let mut count = 0usize;
            for (local, p) in common::monics(f, n).enumerate() {
                let want = common::is_irreducible(&p);
                assert_eq!(is_irreducible(&p), want, "{p}");
                assert_eq!(table.is_irreducible(n, local), want, "{p}");
                count += want as usize;
            }
            assert_eq!(table.irreducibles(n).count(), count);
            // necklace count: n · #irreducibles = Σ_{d | n} μ(n/d) q^d
            let necklace: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| classical_mobius(n / d) * (q as i64).pow(d as u32))
                .sum();
            assert_eq!((n * count) as i64, necklace);
        }
    }
}

fn classical_mobius(mut n: usize) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

#[test]
fn table_shapes_match_factorization() {
    let f = common::field(3);
    let table = MonicTable::build(f, 6, 1 << 20).unwrap();
    for n in 0..=6 {
        assert_eq!(table.count(n), 3usize.pow(n as u32));
        for (local, p) in common::monics(f, n).enumerate() {
            let fac = factor_seeded(&p, 1).unwrap();
            let mut factors = fac.factors.clone();
            factors.sort();
            let mut from_table = table.factors_of(n, local);
            from_table.sort();
            assert_eq!(from_table, factors, "{p}");
            assert_eq!(table.shape_of(&p).unwrap(), table.shape(n, local));
            assert_eq!(table.shape(n, local).degree(), n);
        }
    }
}

#[test]
fn parse_rejects_noncanonical_text() {
    for bad in ["", "@5", "1,2", "1,5@5", "01@5", "1,0@5", "1@4", "1@", "1,,2@5", " 1@5", "-1@5", "0,0@5"] {
        assert!(bad.parse::<Poly>().is_err(), "{bad:?}");
    }
    assert_eq!("0@5".parse::<Poly>().unwrap(), Poly::zero(common::field(5)));
    assert!(MonicTable::build(common::field(5), 9, 1000).is_err());
}
