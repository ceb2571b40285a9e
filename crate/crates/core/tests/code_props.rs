use grcodes::ambient::AmbientRing;
use grcodes::code::{basis_to_torsion, standard_form_violations, PolycyclicCode};
use grcodes::oracle::{all_ideals, brute_is_chain, brute_min_weight, brute_torsion_degrees, ideals_equal, EnumerationBudget};
use grcodes::verify::random_generators;
use grcodes::{GaloisRing, Poly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ambients() -> Vec<AmbientRing> {
    let z4 = GaloisRing::integers(2, 2).unwrap();
    let z8 = GaloisRing::integers(2, 3).unwrap();
    let z9 = GaloisRing::integers(3, 2).unwrap();
    vec![
        AmbientRing::cyclic(&z4, 4).unwrap(),
        AmbientRing::cyclic(&z4, 6).unwrap(),
        AmbientRing::negacyclic(&z4, 4).unwrap(),
        AmbientRing::cyclic(&z8, 4).unwrap(),
        AmbientRing::cyclic(&z9, 3).unwrap(),
        AmbientRing::cyclic(&z9, 6).unwrap(),
        AmbientRing::new(&z4, Poly::from_ints(&z4, &[1, 1, 0, 1])).unwrap(),
    ]
}

fn random_code(ai: usize, seed: u64) -> PolycyclicCode {
    let amb = &ambients()[ai];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PolycyclicCode::new(amb, &random_generators(amb, &mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn torsion_is_nested(ai in 0usize..7, seed in any::<u64>()) {
        let code = random_code(ai, seed);
        for c in &code.torsional_degrees().components {
            prop_assert!(c.degrees.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(c.degrees.iter().all(|&d| d <= c.t));
        }
    }

    #[test]
    fn standard_form_is_valid(ai in 0usize..7, seed in any::<u64>()) {
        let code = random_code(ai, seed);
        let amb = code.ambient();
        let basis = code.standard_form_basis();
        prop_assert!(ideals_equal(&code, &PolycyclicCode::new(amb, &basis.generators())));
        let brute = brute_torsion_degrees(&code, &EnumerationBudget::default()).unwrap().degrees();
        let a = amb.ring().a();
        for (c, local) in basis.components.iter().enumerate() {
            prop_assert!(local.elements.len() <= (a as usize).min(local.t));
            prop_assert_eq!(standard_form_violations(&amb.local_ambient(c), local), Vec::<String>::new());
            prop_assert_eq!(&basis_to_torsion(local, a), &brute[c]);
        }
    }

    #[test]
    fn unique_set_is_a_fixed_point(ai in 0usize..7, seed in any::<u64>()) {
        let code = random_code(ai, seed);
        for local in code.component_split() {
            let u = local.unique_generating_set().unwrap();
            let gens: Vec<Poly> = u.iter().enumerate().map(|(i, f)| f.mul_p_pow(i as u32)).collect();
            let again = PolycyclicCode::new(local.ambient(), &gens);
            prop_assert!(ideals_equal(local, &again));
            prop_assert_eq!(again.unique_generating_set().unwrap(), u);
        }
    }

    #[test]
    fn distance_via_last_generator(ai in 0usize..7, seed in any::<u64>()) {
        let code = random_code(ai, seed);
        let budget = EnumerationBudget::default();
        let d = brute_min_weight(&code, &budget).unwrap();
        match code.distance_via_basis() {
            Ok(g) => {
                let amb = code.ambient();
                let residue = PolycyclicCode::new(&amb.residue_ambient(), &[g]);
                prop_assert_eq!(brute_min_weight(&residue, &budget).unwrap(), d);
                let last = code.standard_form_basis().merged.last().unwrap().g.clone();
                let socle_layer = PolycyclicCode::new(amb, &[last.mul_p_pow(amb.ring().a() - 1)]);
                prop_assert_eq!(brute_min_weight(&socle_layer, &budget).unwrap(), d);
            }
            Err(_) => prop_assert!(code.is_zero()),
        }
    }
}

#[test]
fn chain_predicate_matches_enumeration() {
    let budget = EnumerationBudget::default();
    let f2 = GaloisRing::field(2, 1).unwrap();
    let f3 = GaloisRing::field(3, 1).unwrap();
    let z4 = GaloisRing::integers(2, 2).unwrap();
    let z9 = GaloisRing::integers(3, 2).unwrap();
    let mut cases = Vec::new();
    for n in 1..=4 {
        cases.push(AmbientRing::cyclic(&z4, n).unwrap());
        cases.push(AmbientRing::negacyclic(&z4, n).unwrap());
    }
    for n in [2, 3, 4, 6, 8] {
        cases.push(AmbientRing::cyclic(&f2, n).unwrap());
    }
    for n in [2, 3, 4, 5] {
        cases.push(AmbientRing::cyclic(&f3, n).unwrap());
    }
    cases.push(AmbientRing::cyclic(&z9, 2).unwrap());
    cases.push(AmbientRing::new(&z4, Poly::from_ints(&z4, &[2, 0, 1])).unwrap());
    for amb in cases {
        assert_eq!(amb.is_chain_ring(), brute_is_chain(&amb, &budget).unwrap(), "{amb:?}");
    }
}

#[test]
fn socle_is_minimal_in_local_ambients() {
    let budget = EnumerationBudget::default();
    let z4 = GaloisRing::integers(2, 2).unwrap();
    let z8 = GaloisRing::integers(2, 3).unwrap();
    let f2 = GaloisRing::field(2, 1).unwrap();
    for amb in [
        AmbientRing::cyclic(&z4, 2).unwrap(),
        AmbientRing::cyclic(&z4, 4).unwrap(),
        AmbientRing::cyclic(&z8, 2).unwrap(),
        AmbientRing::cyclic(&f2, 4).unwrap(),
    ] {
        let s = amb.structure_report();
        for j in &s.jacobson {
            assert!(amb.mul(j, &s.socle).is_zero(), "{amb:?}");
        }
        for c in all_ideals(&amb, &budget).unwrap() {
            if !c.is_zero() {
                assert!(c.contains(&s.socle), "{amb:?}");
            }
        }
    }
}
