//! Seeded random inputs for tests and experiments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automata::Dfa;
use crate::friendly::{EPredicate, OpExpr};
use crate::upseq::{CharTuple, UPSeq};

/// A uniformly random complete DFA on states `0..n` with initial state 0.
pub fn random_dfa<R: Rng + ?Sized, S: AsRef<str>>(rng: &mut R, n: usize, alphabet: &[S]) -> Dfa {
    let n = n.max(1);
    let trans = alphabet
        .iter()
        .map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(
        alphabet.iter().map(|s| s.as_ref().to_string()).collect(),
        n,
        0,
        finals,
        trans,
    )
    .expect("generated DFA is valid")
}

/// One random DFA per size, over a shared alphabet.
pub fn random_dfa_tuple<R: Rng + ?Sized, S: AsRef<str>>(
    rng: &mut R,
    sizes: &[usize],
    alphabet: &[S],
) -> Vec<Dfa> {
    sizes
        .iter()
        .map(|&n| random_dfa(rng, n, alphabet))
        .collect()
}

/// All words over letters `0..k` of length at most `max_len`, shortest first.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn random_upseq<R: Rng + ?Sized>(rng: &mut R, max_prefix: usize, max_period: usize) -> UPSeq {
    let prefix = (0..rng.gen_range(0..=max_prefix))
        .map(|_| rng.gen_bool(0.5))
        .collect();
    let period = (0..rng.gen_range(1..=max_period.max(1)))
        .map(|_| rng.gen_bool(0.5))
        .collect();
    UPSeq::canonicalize(prefix, period).expect("non-empty period")
}

pub fn random_char_tuple<R: Rng + ?Sized>(
    rng: &mut R,
    arity: usize,
    max_prefix: usize,
    max_period: usize,
) -> CharTuple {
    CharTuple::new(
        (0..arity)
            .map(|_| random_upseq(rng, max_prefix, max_period))
            .collect(),
    )
    .expect("arity >= 1")
}

/// A random expression over `L1..L{arity}` of depth at most `depth`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, arity: usize, depth: usize) -> OpExpr {
    if depth <= 1 || rng.gen_bool(0.25) {
        return OpExpr::Arg(rng.gen_range(1..=arity.max(1)));
    }
    let d = depth - 1;
    let sub = |rng: &mut R| Box::new(random_expr(rng, arity, d));
    match rng.gen_range(0..6) {
        0 => OpExpr::Not(sub(rng)),
        1 => OpExpr::And(sub(rng), sub(rng)),
        2 => OpExpr::Or(sub(rng), sub(rng)),
        3 => OpExpr::Xor(sub(rng), sub(rng)),
        4 => OpExpr::Root(rng.gen_range(0..=3), sub(rng)),
        _ => OpExpr::RootStar(sub(rng)),
    }
}

/// A random predicate of the given arity: usually an expression, sometimes
/// a wheel set or a small explicit set.
pub fn random_predicate<R: Rng + ?Sized>(rng: &mut R, arity: usize, depth: usize) -> EPredicate {
    let arity = arity.max(1);
    match rng.gen_range(0..10) {
        0 => EPredicate::wheel(arity).expect("arity >= 1"),
        1 => random_explicit(rng, arity, 4),
        _ => EPredicate::compiled_with_arity(random_expr(rng, arity, depth), arity)
            .expect("arity fits"),
    }
}

/// An explicit set drawn from short sequences, always containing the
/// all-zero tuple or `0(1)` in the first component so it is rarely empty on
/// small automata.
pub fn random_explicit<R: Rng + ?Sized>(rng: &mut R, arity: usize, members: usize) -> EPredicate {
    let pool = [
        UPSeq::constant(false),
        UPSeq::constant(true),
        UPSeq::zero_then_ones(),
        UPSeq::canonicalize(vec![true], vec![false]).expect("valid"),
        UPSeq::canonicalize(vec![], vec![false, true]).expect("valid"),
        UPSeq::canonicalize(vec![], vec![true, false]).expect("valid"),
    ];
    let mut set: Vec<CharTuple> = (0..members)
        .map(|_| {
            CharTuple::new(
                (0..arity)
                    .map(|_| pool.choose(rng).expect("non-empty").clone())
                    .collect(),
            )
            .expect("arity >= 1")
        })
        .collect();
    let mut first = vec![UPSeq::constant(false); arity];
    if rng.gen_bool(0.5) {
        first[0] = UPSeq::zero_then_ones();
    }
    set.push(CharTuple::new(first).expect("arity >= 1"));
    EPredicate::explicit(arity, set).expect("arities agree")
}
