use classtrans::bridges;
use classtrans::bsgs;
use classtrans::gens::{self, GeneratorSet};
use classtrans::oracle;
use classtrans::perm::evaluate;
use classtrans::residue::Parameters;
use classtrans::Permutation;
use proptest::prelude::*;

fn shuffled(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_generator_set() -> impl Strategy<Value = GeneratorSet> {
    (2usize..=6).prop_flat_map(|degree| {
        prop::collection::vec(shuffled(degree), 1..=3)
            .prop_map(move |perms| GeneratorSet::from_permutations(degree, perms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_chain(set in small_generator_set()) {
        let group = oracle::enumerate(&set, oracle::DEFAULT_CAP).unwrap();
        let chain = bsgs::build_chain(&set);
        prop_assert_eq!(group.order().unwrap(), chain.order());
        for k in 1..=set.degree().min(4) {
            prop_assert_eq!(
                oracle::transitivity_exhaustive(&group, k).unwrap(),
                bsgs::is_k_transitive(&set, k).unwrap()
            );
        }
        for g in group.elements().take(50) {
            prop_assert!(chain.contains(g).unwrap());
            prop_assert_eq!(&evaluate(&chain.decompose(g).unwrap(), &set).unwrap(), g);
        }
    }

    #[test]
    fn s12_decomposition(g in shuffled(12)) {
        let set = gens::ct_family_generators(4, 12).unwrap();
        let chain = bsgs::build_chain(&set);
        let word = chain.decompose(&g).unwrap();
        prop_assert_eq!(evaluate(&word, &set).unwrap(), g);
    }

    #[test]
    fn connect_n4(alpha in 0u64..60, beta in 0u64..60) {
        let params = Parameters::new(4).unwrap();
        let set = gens::combined_generators(&params).unwrap();
        let word = bridges::connect(&params, alpha, beta).unwrap();
        prop_assert!(word.len() <= 9);
        prop_assert_eq!(word.apply_to_point(&set, alpha as usize).unwrap() as u64, beta);
        prop_assert_eq!(word.inverse().apply_to_point(&set, beta as usize).unwrap() as u64, alpha);
    }

    #[test]
    fn connect_n8(alpha in 0u64..2520, beta in 0u64..2520) {
        let params = Parameters::new(8).unwrap();
        let word = bridges::connect(&params, alpha, beta).unwrap();
        // two boundaries between three blocks of 840
        prop_assert!(word.len() <= 5);
        let set = gens::combined_generators(&params).unwrap();
        prop_assert_eq!(word.apply_to_point(&set, alpha as usize).unwrap() as u64, beta);
    }
}
