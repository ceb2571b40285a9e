use grcodes::ambient::AmbientRing;
use grcodes::code::PolycyclicCode;
use grcodes::distance::{
    eta_ps_distance, negacyclic_2ps_distance, partition_index, product_weight_identity_check, two_eta_ps_distance,
    weight_of_binomial_power, weight_retaining_check, x2_plus_1_irreducible, PartitionCase,
};
use grcodes::oracle::{brute_min_weight, EnumerationBudget};
use grcodes::{Error, GaloisRing, Poly};
use proptest::prelude::*;

const PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Every case whose defining range contains `i`, read off the ranges directly.
fn literal_cases(i: u64, p: u64, s: u32) -> Vec<PartitionCase> {
    let big = p.pow(s);
    let low = p.pow(s - 1);
    let mut out = Vec::new();
    if i == 0 {
        out.push(PartitionCase::Zero);
    }
    if (1..=low).contains(&i) {
        out.push(PartitionCase::LowRange);
    }
    for beta in 1..=p.saturating_sub(2) {
        if (beta * low + 1..=(beta + 1) * low).contains(&i) {
            out.push(PartitionCase::Beta { beta });
        }
    }
    for k in 1..s {
        for tau in 1..p {
            let lo = big - p.pow(s - k) + (tau - 1) * p.pow(s - k - 1) + 1;
            let hi = big - p.pow(s - k) + tau * p.pow(s - k - 1);
            if (lo..=hi).contains(&i) {
                out.push(PartitionCase::TauK { tau, k });
            }
        }
    }
    if i == big {
        out.push(PartitionCase::Full);
    }
    out
}

#[test]
fn partition_is_exhaustive_and_literal() {
    for p in PRIMES {
        for s in 1..=4 {
            for i in 0..=p.pow(s) {
                let cases = literal_cases(i, p, s);
                assert_eq!(cases.len(), 1, "p={p} s={s} i={i}: {cases:?}");
                assert_eq!(partition_index(i, p, s).unwrap(), cases[0]);
            }
            assert!(matches!(partition_index(p.pow(s) + 1, p, s), Err(Error::OutOfRange(_))));
        }
    }
}

#[test]
fn weight_formula_by_incremental_expansion() {
    // (x + γ)^N for all N < p^5, one multiplication by (x + γ) per step
    for p in [2u64, 3, 5] {
        for g in 1..p {
            let mut cur: Vec<u64> = vec![1];
            for n in 0..p.pow(5) {
                let w = cur.iter().filter(|&&c| c != 0).count() as u64;
                assert_eq!(weight_of_binomial_power(n, p), w, "p={p} γ={g} N={n}");
                let mut next = vec![0u64; cur.len() + 1];
                for (k, &c) in cur.iter().enumerate() {
                    next[k + 1] = (next[k + 1] + c) % p;
                    next[k] = (next[k] + c * g) % p;
                }
                cur = next;
            }
        }
    }
}

#[test]
fn lower_bounds_hold_by_exhaustion() {
    for p in [2u64, 3, 5] {
        for s in 1..=3u32 {
            let big = p.pow(s);
            let low = p.pow(s - 1);
            for beta in 1..=p.saturating_sub(2) {
                for m in 0..(big - beta * low).saturating_sub(1) {
                    assert!(weight_of_binomial_power(m + beta * low + 1, p) >= beta + 2);
                }
            }
            for k in 1..s {
                for tau in 1..p {
                    let start = big - p.pow(s - k) + (tau - 1) * p.pow(s - k - 1) + 1;
                    for n in start..big {
                        assert!(weight_of_binomial_power(n, p) >= (tau + 1) * p.pow(k), "p={p} s={s} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn distances_are_monotone() {
    for p in PRIMES {
        for s in 1..=3 {
            let d: Vec<u64> = (0..p.pow(s))
                .map(|i| eta_ps_distance(p, 1, s, 1, i).unwrap().distance.unwrap())
                .collect();
            assert!(d.windows(2).all(|w| w[0] <= w[1]), "p={p} s={s}: {d:?}");
            assert_eq!(eta_ps_distance(p, 1, s, 1, p.pow(s)).unwrap().distance, None);
        }
    }
}

#[test]
fn two_factor_table_is_symmetric() {
    for p in [3u64, 5, 7] {
        for s in 1..=2 {
            let big = p.pow(s);
            for i in 0..=big {
                for j in 0..=big {
                    let a = two_eta_ps_distance(p, 1, s, 1, i, j).unwrap();
                    let b = two_eta_ps_distance(p, 1, s, 1, j, i).unwrap();
                    assert_eq!(a.distance, b.distance);
                    assert_eq!(a.case, b.case);
                }
            }
        }
    }
    assert!(matches!(two_eta_ps_distance(2, 1, 1, 1, 0, 0), Err(Error::EvenPrime)));
}

#[test]
fn x2_plus_1_criterion_matches_root_search() {
    for p in [3u64, 5, 7, 11] {
        for m in 1..=3 {
            let field = GaloisRing::field(p, m).unwrap();
            if field.order() > 2000 {
                continue;
            }
            let has_root = field.elements().any(|r| {
                let v = field.add(&field.mul(&r, &r), &field.one());
                field.is_zero(&v)
            });
            assert_eq!(x2_plus_1_irreducible(p, m), !has_root, "p={p} m={m}");
        }
    }
}

#[test]
fn negacyclic_distances_match_brute_force() {
    let budget = EnumerationBudget::default();
    let f3 = GaloisRing::field(3, 1).unwrap();
    let base = Poly::from_ints(&f3, &[1, 0, 1]);
    for (s, from) in [(1u32, 0u64), (2, 3)] {
        let amb = AmbientRing::negacyclic(&f3, 2 * 3usize.pow(s)).unwrap();
        for i in from..=3u64.pow(s) {
            let code = PolycyclicCode::new(&amb, &[base.pow(i)]);
            let claimed = negacyclic_2ps_distance(3, 1, s, i).unwrap().distance;
            let brute = brute_min_weight(&code, &budget).unwrap().map(|d| d as u64);
            assert_eq!(claimed, brute, "s={s} i={i}");
        }
    }
    assert!(matches!(negacyclic_2ps_distance(5, 1, 1, 1), Err(Error::ReducibleModulus { .. })));
}

proptest! {
    #[test]
    fn weight_retaining_inequality(p in prop::sample::select(vec![2u64, 3, 5]),
                                   coeffs in prop::collection::vec(0u64..5, 1..32),
                                   eta in 1usize..3, g in 1u64..5, n in 0u64..64) {
        let field = GaloisRing::field(p, 1).unwrap();
        let g = field.from_int((1 + g % (p - 1).max(1)) as i64 % p as i64);
        prop_assume!(!field.is_zero(&g));
        let poly = Poly::from_coeffs(&field, coeffs.iter().map(|&c| field.from_int(c as i64)).collect());
        prop_assume!(!poly.is_zero());
        prop_assert!(weight_retaining_check(&poly, eta, &g, n));
    }

    #[test]
    fn product_identity(p in prop::sample::select(vec![2u64, 3, 5]), s in 1u32..4, eta in 1usize..3,
                        g1 in 1u64..5, g2 in 1u64..5, i in 1u64..125) {
        let field = GaloisRing::field(p, 1).unwrap();
        let i = 1 + i % (p.pow(s) - 1).max(1);
        prop_assume!(i < p.pow(s));
        let (a, b) = (field.from_int((g1 % p) as i64), field.from_int((g2 % p) as i64));
        prop_assume!(!field.is_zero(&a) && !field.is_zero(&b));
        prop_assert!(product_weight_identity_check(&field, eta, &a, &b, i, s));
    }
}
