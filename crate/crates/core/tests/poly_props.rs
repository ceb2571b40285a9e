use grcodes::ambient::AmbientRing;
use grcodes::factor::{crt_idempotents, field_factorize, primary_factorize};
use grcodes::{h_adic_decompose, GaloisRing, Poly};
use proptest::prelude::*;

fn rings() -> Vec<GaloisRing> {
    vec![
        GaloisRing::integers(2, 2).unwrap(),
        GaloisRing::integers(2, 3).unwrap(),
        GaloisRing::integers(3, 2).unwrap(),
        GaloisRing::new(2, 2, 2, None).unwrap(),
    ]
}

fn poly_from(r: &GaloisRing, idx: &[u128]) -> Poly {
    Poly::from_coeffs(r, idx.iter().map(|i| r.from_index(i % r.order())).collect())
}

fn monic_from(r: &GaloisRing, idx: &[u128]) -> Poly {
    let mut c: Vec<_> = idx.iter().map(|i| r.from_index(i % r.order())).collect();
    c.push(r.one());
    Poly::from_coeffs(r, c)
}

/// All monic polynomials of degree `d`.
fn monics(field: &GaloisRing, d: usize) -> Vec<Poly> {
    let q = field.order();
    (0..q.pow(d as u32))
        .map(|mut idx| {
            let mut c: Vec<_> = (0..d)
                .map(|_| {
                    let e = field.from_index(idx % q);
                    idx /= q;
                    e
                })
                .collect();
            c.push(field.one());
            Poly::from_coeffs(field, c)
        })
        .collect()
}

fn irreducible_by_trial_division(f: &Poly) -> bool {
    let d = f.deg().unwrap();
    (1..=d / 2).all(|k| monics(f.ring(), k).iter().all(|g| !f.rem(g).is_zero()))
}

proptest! {
    #[test]
    fn division_round_trip(ri in 0usize..4, a in prop::collection::vec(any::<u128>(), 0..10),
                           d in prop::collection::vec(any::<u128>(), 1..6), lead in any::<u128>()) {
        let r = &rings()[ri];
        let f = poly_from(r, &a);
        let mut dv = poly_from(r, &d);
        // force a unit somewhere so the divisor is regular
        dv = &dv + &Poly::constant(r, r.teichmuller(&r.from_index(1 + lead % (r.residue_order() - 1))));
        if !dv.is_regular() {
            return Ok(());
        }
        let (q, rem) = f.divide(&dv).unwrap();
        prop_assert_eq!(&(&q * &dv) + &rem, f);
        prop_assert!(rem.deg().is_none_or(|e| e < dv.deg().unwrap()));
    }

    #[test]
    fn h_adic_form_recomposes(ri in 0usize..4, a in prop::collection::vec(any::<u128>(), 0..10), hi in 0usize..3) {
        let r = &rings()[ri];
        let g = poly_from(r, &a);
        let hs = [Poly::from_ints(r, &[1, 1]), Poly::from_ints(r, &[1, 1, 1]), Poly::from_ints(r, &[-1, 1])];
        let h = &hs[hi];
        let form = h_adic_decompose(&g, h);
        prop_assert_eq!(form.recompose(), g);
        for w in form.terms.windows(2) {
            prop_assert!(w[0].j < w[1].j);
            prop_assert!(w[0].i > w[1].i);
        }
        // α ∉ ⟨p, h⟩: its residue is not divisible by h̄
        let hb = h.project();
        for t in &form.terms {
            prop_assert!(!t.alpha.project().rem(&hb).is_zero());
        }
    }

    #[test]
    fn primary_factorization_is_exact(ri in 0usize..4, a in prop::collection::vec(any::<u128>(), 1..8)) {
        let r = &rings()[ri];
        let f = monic_from(r, &a);
        let fact = primary_factorize(&f).unwrap();
        prop_assert_eq!(fact.product(r), f.clone());
        for pf in &fact.factors {
            let hb = pf.base.project();
            prop_assert_eq!(field_factorize(&hb).len(), 1);
            prop_assert_eq!(pf.factor.project(), hb.pow(pf.t as u64));
        }
        let e = crt_idempotents(&fact, &f).unwrap();
        let sum = e.iter().fold(Poly::zero(r), |acc, x| &acc + x);
        prop_assert_eq!(sum.rem(&f), Poly::one(r));
        for (i, ei) in e.iter().enumerate() {
            prop_assert_eq!(ei.mulmod(ei, &f), ei.rem(&f));
            for ej in &e[i + 1..] {
                prop_assert!(ei.mulmod(ej, &f).is_zero());
            }
        }
    }

    #[test]
    fn field_factorization_matches_trial_division(p in prop::sample::select(vec![2u64, 3]),
                                                  a in prop::collection::vec(any::<u128>(), 1..9)) {
        let field = GaloisRing::field(p, 1).unwrap();
        let f = monic_from(&field, &a);
        let parts = field_factorize(&f);
        let product = parts.iter().fold(Poly::one(&field), |acc, (g, e)| &acc * &g.pow(*e as u64));
        prop_assert_eq!(product, f);
        for (i, (g, _)) in parts.iter().enumerate() {
            prop_assert!(g.is_monic());
            prop_assert!(irreducible_by_trial_division(g));
            prop_assert!(parts[i + 1..].iter().all(|(h, _)| h != g));
        }
    }
}

#[test]
fn ambient_components_match_factorization() {
    let z9 = GaloisRing::integers(3, 2).unwrap();
    let amb = AmbientRing::cyclic(&z9, 6).unwrap();
    assert_eq!(amb.components().len(), 2);
    let f = amb.modulus().clone();
    assert_eq!(amb.factorization().product(&z9), f);
    for c in amb.components() {
        assert_eq!(c.t(), 3);
        assert_eq!(c.factor().deg(), Some(3));
    }
}
