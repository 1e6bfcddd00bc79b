use std::collections::{BTreeMap, HashMap};

use friendly_core::automata::{
    equivalent, isomorphic, minimize, preimage_dfa, print_dfa, Dfa, MinimizeAlgo,
};
use friendly_core::friendly::{word_oracle, EPredicate};
use friendly_core::gen::{all_words, random_dfa_tuple, random_predicate};
use friendly_core::modifiers::{build_standard, build_standard_labeled, BuildMode};
use friendly_core::upseq::CharTuple;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LETTERS: [&str; 3] = ["a", "b", "c"];

/// Seeded inputs: a predicate of arity `k` and `k` DFAs on `letters` letters.
fn case(seed: u64, k: usize, letters: usize, max_n: usize) -> (EPredicate, Vec<Dfa>) {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pred = random_predicate(&mut rng, k, 4);
    let sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_n)).collect();
    (
        pred,
        random_dfa_tuple(&mut rng, &sizes, &LETTERS[..letters]),
    )
}

fn tokens(d: &Dfa, w: &[usize]) -> Vec<String> {
    w.iter().map(|&a| d.alphabet()[a].clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn construction_agrees_with_word_oracle(seed in any::<u64>(), k in 1usize..=2, letters in 1usize..=3) {
        let (pred, dfas) = case(seed, k, letters, 3);
        let built = build_standard(&pred, &dfas, BuildMode::accessible()).unwrap();
        for w in all_words(letters, 5) {
            let expect = word_oracle(&pred, &dfas, &tokens(&dfas[0], &w)).unwrap();
            prop_assert_eq!(built.accepts_indices(&w), expect, "{} on {:?}", pred.name(), w);
        }
    }

    #[test]
    fn preimage_commutes_with_construction(seed in any::<u64>(), k in 1usize..=2, image in proptest::collection::vec(0usize..2, 1..=4)) {
        let (pred, dfas) = case(seed, k, 2, 3);
        let sigma: Vec<String> = (0..image.len()).map(|i| format!("x{i}")).collect();
        let map: BTreeMap<String, String> = sigma
            .iter()
            .zip(&image)
            .map(|(s, &b)| (s.clone(), LETTERS[b].to_string()))
            .collect();
        let pulled: Vec<Dfa> = dfas.iter().map(|d| preimage_dfa(d, &sigma, &map).unwrap()).collect();
        let lhs = build_standard(&pred, &pulled, BuildMode::accessible()).unwrap();
        let rhs = preimage_dfa(&build_standard(&pred, &dfas, BuildMode::accessible()).unwrap(), &sigma, &map).unwrap();
        prop_assert!(equivalent(&lhs, &rhs).unwrap());
    }

    #[test]
    fn equal_characteristic_tuples_have_equal_finality(seed in any::<u64>(), k in 1usize..=2) {
        let (pred, dfas) = case(seed, k, 2, 3);
        let built = build_standard_labeled(&pred, &dfas, BuildMode::full()).unwrap();
        let inits: Vec<usize> = dfas.iter().map(Dfa::initial).collect();
        let finals: Vec<Vec<bool>> = dfas.iter().map(|d| (0..d.n_states()).map(|q| d.is_final(q)).collect()).collect();
        let finals: Vec<&[bool]> = finals.iter().map(Vec::as_slice).collect();
        let mut seen: HashMap<CharTuple, bool> = HashMap::new();
        for (q, phi) in built.states.iter().enumerate() {
            let chi = CharTuple::of(phi, &inits, &finals).unwrap();
            let f = built.dfa.is_final(q);
            prop_assert_eq!(*seen.entry(chi).or_insert(f), f);
        }
    }

    #[test]
    fn minimization_laws_on_constructions(seed in any::<u64>(), k in 1usize..=2) {
        let (pred, dfas) = case(seed, k, 2, 3);
        let built = build_standard(&pred, &dfas, BuildMode::accessible()).unwrap();
        let h = minimize(&built, MinimizeAlgo::Hopcroft);
        prop_assert_eq!(print_dfa(&h), print_dfa(&minimize(&built, MinimizeAlgo::Moore)));
        prop_assert!(isomorphic(&minimize(&h, MinimizeAlgo::Hopcroft), &h));
        prop_assert!(h.n_states() <= built.n_states());
        prop_assert!(equivalent(&built, &h).unwrap());
    }
}

#[test]
fn letter_tokens_survive_the_construction() {
    let (pred, dfas) = case(1, 2, 3, 3);
    let built = build_standard(&pred, &dfas, BuildMode::full()).unwrap();
    assert_eq!(built.alphabet(), dfas[0].alphabet());
}

#[test]
fn argument_alphabets_may_be_permuted() {
    let (pred, mut dfas) = case(2, 2, 3, 3);
    let base = build_standard(&pred, &dfas, BuildMode::accessible()).unwrap();
    dfas[1] = dfas[1].with_alphabet_order(&["c", "a", "b"]).unwrap();
    let permuted = build_standard(&pred, &dfas, BuildMode::accessible()).unwrap();
    assert_eq!(base, permuted);
}
