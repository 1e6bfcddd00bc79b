//! Monster witnesses: `k` automata on a common alphabet of transformation
//! tuples, where coordinate `j` reads the `j`-th component of each letter.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::friendly::letter_actions;
use crate::transforms::{all_tuples, tn_generators, tuple_space_size, TransTuple};

/// Default cap on the number of letters of a full-alphabet monster.
pub const DEFAULT_LETTER_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlphabetKind {
    /// Every tuple of `∏ T_{n_j}`.
    Full,
    /// Generators of each `T_{n_j}` placed in one coordinate.
    Generators,
}

impl FromStr for AlphabetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(AlphabetKind::Full),
            "generators" | "gen" => Ok(AlphabetKind::Generators),
            other => Err(Error::InvalidArgument(format!(
                "unknown alphabet kind '{other}', expected full or generators"
            ))),
        }
    }
}

impl fmt::Display for AlphabetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphabetKind::Full => "full",
            AlphabetKind::Generators => "generators",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonsterSpec {
    pub sizes: Vec<usize>,
    pub kind: AlphabetKind,
}

impl MonsterSpec {
    pub fn new(sizes: Vec<usize>, kind: AlphabetKind) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "monster sizes must be a non-empty list of positive integers, got {sizes:?}"
            )));
        }
        Ok(MonsterSpec { sizes, kind })
    }
}

/// The letters of a monster, in alphabet order.
pub fn monster_letters(spec: &MonsterSpec, cap: usize) -> Result<Vec<TransTuple>> {
    match spec.kind {
        AlphabetKind::Full => {
            let total = tuple_space_size(&spec.sizes);
            if total > cap as u128 {
                return Err(Error::CapExceeded { needed: total, cap });
            }
            Ok(all_tuples(&spec.sizes).collect())
        }
        AlphabetKind::Generators => {
            let mut seen = HashSet::new();
            let mut letters = Vec::new();
            for (j, &n) in spec.sizes.iter().enumerate() {
                for g in tn_generators(n) {
                    let mut comps = TransTuple::identity(&spec.sizes).components().to_vec();
                    comps[j] = g;
                    let t = TransTuple::new(comps).expect("arity >= 1");
                    if seen.insert(t.clone()) {
                        letters.push(t);
                    }
                }
            }
            Ok(letters)
        }
    }
}

/// The monster automata `M_1, …, M_k`: states `0..n_j`, initial 0, single
/// final state `n_j − 1`, and letter `φ̄` acting as `φ_j`.
pub fn monster(spec: &MonsterSpec, cap: usize) -> Result<Vec<Dfa>> {
    let letters = monster_letters(spec, cap)?;
    let alphabet: Vec<String> = letters.iter().map(TransTuple::token).collect();
    Ok(spec
        .sizes
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            let trans = letters
                .iter()
                .map(|t| t.component(j).images().to_vec())
                .collect();
            let mut finals = vec![false; n];
            finals[n - 1] = true;
            Dfa::from_parts(alphabet.clone(), 0, finals, trans)
        })
        .collect())
}

/// Size of the closure of the identity tuple under the letter actions of `dfas`.
pub fn reachable_tuples(dfas: &[Dfa]) -> Result<usize> {
    let actions = letter_actions(dfas)?;
    let sizes: Vec<usize> = dfas.iter().map(Dfa::n_states).collect();
    let start = TransTuple::identity(&sizes);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for a in &actions {
            let next = a.compose_unchecked(&t);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len())
}
