use grcodes::ambient::AmbientRing;
use grcodes::code::PolycyclicCode;
use grcodes::oracle::{all_ideals, brute_min_weight, brute_torsion_degrees, ideals_equal, EnumerationBudget};
use grcodes::p2::{classify_p2, classify_p2_with_base, cyclic_ps_distance_p2, cyclic_ps_fparams, torsion_p2, FParams2, P2CanonicalForm};
use grcodes::verify::enumerate_p2_forms;
use grcodes::{Error, GaloisRing, Poly};
use rayon::prelude::*;

fn check_invariants(form: &P2CanonicalForm, t: usize, hdeg: usize) {
    use P2CanonicalForm::*;
    let (k, l, n, delta) = match form {
        Zero | Whole => return,
        PH { n } => (None, None, Some(*n), None),
        H { k } => (Some(*k), None, None, None),
        HAndPH { k, n } => (Some(*k), None, Some(*n), None),
        HTail { k, l, delta } => (Some(*k), Some(*l), None, Some(delta)),
        HTailAndPH { k, l, delta, n } => (Some(*k), Some(*l), Some(*n), Some(delta)),
    };
    for e in [k, l, n].into_iter().flatten() {
        assert!(e < t, "{form:?}");
    }
    if let (Some(l), Some(n)) = (l, n) {
        assert!(l < n);
    }
    if let (Some(n), Some(k)) = (n, k) {
        assert!(n < k);
    }
    if let (Some(l), Some(k)) = (l, k) {
        assert!(l < k);
    }
    if let Some(delta) = delta {
        assert!(!delta[0].is_zero());
        assert!(!delta.last().unwrap().is_zero());
        for d in delta {
            assert!(d.deg().is_none_or(|e| e < hdeg));
            assert!(d.ring().is_field());
        }
    }
}

#[test]
fn every_ideal_classifies_consistently() {
    let budget = EnumerationBudget::default();
    for (p, s) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1)] {
        let ring = GaloisRing::integers(p, 2).unwrap();
        let amb = AmbientRing::cyclic(&ring, p.pow(s) as usize).unwrap();
        let h = Poly::from_ints(&ring, &[-1, 1]);
        let fp = cyclic_ps_fparams(p, 1, s).unwrap();
        for code in all_ideals(&amb, &budget).unwrap() {
            let form = classify_p2_with_base(&code, &h).unwrap();
            check_invariants(&form, fp.t, 1);
            assert!(ideals_equal(&code, &PolycyclicCode::new(&amb, &form.generators(&h))));
            let brute = brute_torsion_degrees(&code, &budget).unwrap().degrees()[0].clone();
            let (t0, t1) = torsion_p2(&form, &fp);
            assert_eq!(brute, vec![t0, t1], "{}", form.to_json());
            // the ambient's own base gives an equally valid form
            let own = classify_p2(&code).unwrap();
            let base = amb.components()[0].base().clone();
            assert!(ideals_equal(&code, &PolycyclicCode::new(&amb, &own.generators(&base))));
        }
    }
}

#[test]
fn extension_ring_classification() {
    // GR(4, 2): residue digits of the tails live in F_4
    let budget = EnumerationBudget::default();
    let ring = GaloisRing::new(2, 2, 2, None).unwrap();
    let amb = AmbientRing::cyclic(&ring, 2).unwrap();
    let h = Poly::from_ints(&ring, &[-1, 1]);
    let fp = FParams2::of(amb.modulus(), &h).unwrap();
    for code in all_ideals(&amb, &budget).unwrap() {
        let form = classify_p2_with_base(&code, &h).unwrap();
        check_invariants(&form, 2, 1);
        assert!(ideals_equal(&code, &PolycyclicCode::new(&amb, &form.generators(&h))));
        let brute = brute_torsion_degrees(&code, &budget).unwrap().degrees()[0].clone();
        let (t0, t1) = torsion_p2(&form, &fp);
        assert_eq!(brute, vec![t0, t1]);
    }
}

#[test]
fn fparams_recompose_exactly() {
    for p in [2u64, 3, 5] {
        for s in 1..=3u32 {
            for m in [1usize, 2] {
                let fp = cyclic_ps_fparams(p, m, s).unwrap();
                let ring = fp.base.ring().clone();
                let n = p.pow(s) as usize;
                let target = &Poly::monomial(&ring, ring.one(), n) - &Poly::one(&ring);
                assert_eq!(fp.recompose(), target, "p={p} s={s} m={m}");
                assert_eq!(FParams2::of(&target, &fp.base).unwrap(), fp);
                assert!(!fp.gamma[0].is_zero());
            }
        }
    }
}

#[test]
fn z_branch_example() {
    // t = 4, v = 2: ⟨h³ + 2h⟩ has t - k + ℓ = 2 = v; γ = η = (1) so z = t
    let f2 = GaloisRing::field(2, 1).unwrap();
    let fp = cyclic_ps_fparams(2, 1, 2).unwrap();
    let tail = P2CanonicalForm::HTail { k: 3, l: 1, delta: vec![Poly::one(&f2)] };
    assert_eq!(torsion_p2(&tail, &fp), (3, 3));
    let tail = P2CanonicalForm::HTail {
        k: 3,
        l: 1,
        delta: vec![Poly::one(&f2), Poly::one(&f2)],
    };
    assert_eq!(torsion_p2(&tail, &fp).1, 3);
}

#[test]
fn wrong_characteristic_is_rejected() {
    let z8 = GaloisRing::integers(2, 3).unwrap();
    let amb = AmbientRing::cyclic(&z8, 2).unwrap();
    assert!(matches!(classify_p2(&PolycyclicCode::whole(&amb)), Err(Error::WrongCharacteristic(3))));
    let z4 = GaloisRing::integers(2, 2).unwrap();
    let amb = AmbientRing::cyclic(&z4, 3).unwrap();
    assert!(matches!(classify_p2(&PolycyclicCode::whole(&amb)), Err(Error::NotPrimaryComponent)));
}

#[test]
fn z9_length_9_distances() {
    // forms whose codes are small enough to enumerate
    let budget = EnumerationBudget::new(20_000_000);
    let ring = GaloisRing::integers(3, 2).unwrap();
    let amb = AmbientRing::cyclic(&ring, 9).unwrap();
    let h = Poly::from_ints(&ring, &[-1, 1]);
    let forms = enumerate_p2_forms(&ring.residue_field(), 9);
    let checked: usize = forms
        .par_iter()
        .filter(|f| f.k().is_none_or(|k| k >= 4))
        .map(|form| {
            let code = PolycyclicCode::new(&amb, &form.generators(&h));
            match brute_min_weight(&code, &budget) {
                Ok(d) => {
                    let claimed = cyclic_ps_distance_p2(3, 1, 2, form).unwrap().distance;
                    assert_eq!(claimed, d.map(|d| d as u64), "{}", form.to_json());
                    1
                }
                Err(Error::BudgetExceeded { .. }) => 0,
                Err(e) => panic!("{e}"),
            }
        })
        .sum();
    assert!(checked >= 50, "only {checked} forms checked");
}
