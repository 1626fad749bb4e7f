use freesub::sample;
use freesub::{Alphabet, Extension, FiniteGroup, Transversal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(["a", "b", "c"][..k].iter().copied()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewrite_is_a_homomorphism(seed in any::<u64>(), k in 1usize..=3, n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = sample::transitive_rep(&mut rng, &alphabet(k), n);
        let t = Transversal::new(&rep).unwrap();
        prop_assert_eq!(t.basis().len(), 1 + n * (k - 1));
        for _ in 0..20 {
            let h1 = sample::subgroup_element(&mut rng, &t, 24);
            let h2 = sample::subgroup_element(&mut rng, &t, 24);
            let lhs = t.rewrite(&h1.mul(&h2)).unwrap();
            prop_assert_eq!(lhs, t.rewrite(&h1).unwrap().mul(&t.rewrite(&h2).unwrap()));
            prop_assert_eq!(t.basis().evaluate(&t.rewrite(&h1).unwrap()).unwrap(), h1);
        }
    }

    #[test]
    fn psi_is_determined_by_its_values(seed in any::<u64>(), k in 1usize..=2, n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = sample::transitive_rep(&mut rng, &alphabet(k), n);
        let t = Transversal::new(&rep).unwrap();
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let values: Vec<_> = (0..t.basis().len()).map(|_| sample::element(&mut rng, &s4)).collect();
        let ext = Extension::new(t.clone(), s4.clone(), values.clone()).unwrap();
        let again = ext.reassign(values).unwrap();
        for _ in 0..20 {
            let h = sample::subgroup_element(&mut rng, &t, 24);
            let v = ext.psi(&h).unwrap();
            prop_assert_eq!(v, again.psi(&h).unwrap());
            prop_assert_eq!(v, ext.psi_by_rewrite(&h).unwrap());
        }
    }

    #[test]
    fn tau_top_component_is_rho(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = sample::transitive_rep(&mut rng, &alphabet(2), n);
        let t = Transversal::new(&rep).unwrap();
        let ext = Extension::trivial(t.clone(), FiniteGroup::symmetric(2).unwrap()).unwrap();
        for _ in 0..20 {
            let w = sample::word(&mut rng, 2, 20);
            prop_assert!(ext.top_is_rho(&w).unwrap());
        }
    }
}
