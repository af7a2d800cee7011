mod common;

use std::sync::Arc;

use common::poly;
use poincare_core::cohomology::{
    coboundary_of, h1_witness, is_cocycle, reduce_mod_commutant, Cochain, CohomologyError,
};
use poincare_core::oracles::random_instance;
use poincare_core::poincare::JointKernelBasis;
use poincare_core::williamson::{ModelSystem, WilliamsonType};
use poincare_core::Poly;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn system(t: &str) -> Arc<ModelSystem> {
    Arc::new(ModelSystem::standard(t.parse::<WilliamsonType>().unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn d_squared_vanishes(a in poly(3, 5, 4), b in poly(3, 5, 4), c in poly(3, 5, 4)) {
        let sys = system("(1,0,1)@3");
        let vals = [a, b, c];
        for degree in 0..=2 {
            let mut k = 0;
            let cochain = Cochain::from_fn(sys.clone(), degree, |_| { k += 1; vals[k % 3].clone() }).unwrap();
            prop_assert!(cochain.differential().differential().is_zero());
        }
    }

    #[test]
    fn coboundaries_are_cocycles(h in poly(2, 5, 6)) {
        for t in ["(2,0,0)@2", "(1,1,0)@2", "(0,2,0)@2", "(0,0,1)@2"] {
            let b = coboundary_of(&h, system(t)).unwrap();
            prop_assert!(is_cocycle(&b).unwrap().passed());
            let w = h1_witness(&b).unwrap();
            prop_assert!(w.f.iter().all(Poly::is_zero));
        }
    }
}

#[test]
fn witnesses_for_forward_cocycles() {
    for t in ["(1,0,0)@1", "(0,1,1)@3", "(3,0,0)@3", "(1,2,0)@3"] {
        let sys = system(t);
        for seed in 0..30 {
            let inst = random_instance(&sys, 5, seed);
            let alpha = Cochain::one_form(sys.clone(), inst.data.g.clone()).unwrap();
            let w = h1_witness(&alpha).unwrap();
            assert_eq!(w.reassemble(sys.clone()).unwrap(), alpha);
            assert_eq!(w.h, -&inst.truth.potential);
        }
    }
}

#[test]
fn witness_class_ignores_commutant_changes() {
    let sys = system("(1,1,0)@2");
    let basis = JointKernelBasis::new(&sys);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..30 {
        let inst = random_instance(&sys, 5, seed);
        let alpha = Cochain::one_form(sys.clone(), inst.data.g.clone()).unwrap();
        let shifted: Vec<Poly> = inst.data.g.iter().map(|g| g + &basis.random_element(&mut rng, 5, 3)).collect();
        let beta = Cochain::one_form(sys.clone(), shifted).unwrap();
        assert_eq!(reduce_mod_commutant(&alpha), reduce_mod_commutant(&beta));
        assert_eq!(h1_witness(&alpha).unwrap().h, h1_witness(&beta).unwrap().h);
    }
}

#[test]
fn rejects_partial_rank_and_non_cocycles() {
    let partial = system("(1,0,0)@2");
    assert!(matches!(
        Cochain::zero(partial, 1),
        Err(CohomologyError::NotFullRank { .. })
    ));
    let sys = system("(0,2,0)@2");
    let alpha = Cochain::one_form(sys, vec![Poly::x(2, 2), Poly::zero(2)]).unwrap();
    assert!(matches!(h1_witness(&alpha), Err(CohomologyError::NotCocycle { failing: 1 })));
}
