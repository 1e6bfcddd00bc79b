//! Complete deterministic finite automata over string-token alphabets.
//!
//! States are the integers `0..n`. Every letter owns one total transition
//! row, so a [`Dfa`] is always complete. The order of the alphabet is part of
//! the value: it fixes breadth-first numbering, which in turn gives the
//! canonical form used by [`minimize`] and [`equivalent`].

mod dot;
mod format;
mod minimize;

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};

pub use dot::{to_dot, to_dot_with_labels};
pub use format::{parse_dfa, print_dfa};
pub use minimize::{minimize, nerode_classes, quotient, MinimizeAlgo};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<String>,
    initial: usize,
    finals: Vec<bool>,
    // trans[letter][state]
    trans: Vec<Vec<usize>>,
}

impl Dfa {
    /// Builds a DFA, checking every structural invariant.
    ///
    /// `trans` holds one row per letter, in alphabet order.
    pub fn new<I>(
        alphabet: Vec<String>,
        n_states: usize,
        initial: usize,
        finals: I,
        trans: Vec<Vec<usize>>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if n_states == 0 {
            return Err(Error::InvalidDfa("a DFA needs at least one state".into()));
        }
        if alphabet.is_empty() {
            return Err(Error::InvalidDfa("alphabet is empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for tok in &alphabet {
            validate_token(tok)?;
            if !seen.insert(tok.as_str()) {
                return Err(Error::InvalidDfa(format!("duplicate letter '{tok}'")));
            }
        }
        if initial >= n_states {
            return Err(Error::InvalidDfa(format!(
                "initial state {initial} out of range 0..{n_states}"
            )));
        }
        let mut final_flags = vec![false; n_states];
        for q in finals {
            if q >= n_states {
                return Err(Error::InvalidDfa(format!(
                    "final state {q} out of range 0..{n_states}"
                )));
            }
            final_flags[q] = true;
        }
        if trans.len() != alphabet.len() {
            return Err(Error::InvalidDfa(format!(
                "{} transition rows for {} letters",
                trans.len(),
                alphabet.len()
            )));
        }
        for (tok, row) in alphabet.iter().zip(&trans) {
            if row.len() != n_states {
                return Err(Error::InvalidDfa(format!(
                    "row for '{tok}' has {} entries, expected {n_states}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&q| q >= n_states) {
                return Err(Error::InvalidDfa(format!(
                    "row for '{tok}': image {bad} out of range"
                )));
            }
        }
        Ok(Dfa {
            alphabet,
            initial,
            finals: final_flags,
            trans,
        })
    }

    /// Unchecked constructor for internal builders that maintain the invariants.
    pub(crate) fn from_parts(
        alphabet: Vec<String>,
        initial: usize,
        finals: Vec<bool>,
        trans: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert!(initial < finals.len());
        debug_assert!(trans.len() == alphabet.len());
        debug_assert!(trans.iter().all(|r| r.len() == finals.len()));
        Dfa {
            alphabet,
            initial,
            finals,
            trans,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
    }

    pub(crate) fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    /// Transition row of the letter at `letter` (alphabet position).
    pub fn row(&self, letter: usize) -> &[usize] {
        &self.trans[letter]
    }

    pub fn letter_index(&self, token: &str) -> Option<usize> {
        self.alphabet.iter().position(|t| t == token)
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.trans[letter][q]
    }

    /// Runs the automaton on a word given as letter tokens.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        let mut q = self.initial;
        for tok in word {
            let tok = tok.as_ref();
            let a = self
                .letter_index(tok)
                .ok_or_else(|| Error::UnknownLetter(tok.to_string()))?;
            q = self.trans[a][q];
        }
        Ok(self.finals[q])
    }

    /// Same as [`Dfa::accepts`] with the word given as alphabet positions.
    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let q = word.iter().fold(self.initial, |q, &a| self.trans[a][q]);
        self.finals[q]
    }

    /// Flips finality of every state.
    pub fn complement(&self) -> Dfa {
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            finals: self.finals.iter().map(|f| !f).collect(),
            trans: self.trans.clone(),
        }
    }

    /// Reorders letters (and their rows) to follow `order`, which must be a
    /// permutation of the current alphabet.
    pub fn with_alphabet_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Dfa> {
        if order.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} letters vs {}",
                order.len(),
                self.alphabet.len()
            )));
        }
        let mut trans = Vec::with_capacity(order.len());
        let mut alphabet = Vec::with_capacity(order.len());
        for tok in order {
            let tok = tok.as_ref();
            let a = self
                .letter_index(tok)
                .ok_or_else(|| Error::AlphabetMismatch(format!("letter '{tok}' missing")))?;
            if alphabet.iter().any(|t: &String| t == tok) {
                return Err(Error::AlphabetMismatch(format!("letter '{tok}' repeated")));
            }
            alphabet.push(tok.to_string());
            trans.push(self.trans[a].clone());
        }
        Ok(Dfa {
            alphabet,
            initial: self.initial,
            finals: self.finals.clone(),
            trans,
        })
    }

    /// BFS order of the states reachable from the initial state.
    pub(crate) fn bfs_order(&self) -> Vec<usize> {
        let n = self.n_states();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for row in &self.trans {
                let r = row[q];
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        order
    }

    /// Keeps only the states selected by `order`, renumbered by their
    /// position in it. Every kept state must only lead to kept states.
    pub(crate) fn restrict(&self, order: &[usize]) -> Dfa {
        let mut new_id = vec![usize::MAX; self.n_states()];
        for (i, &q) in order.iter().enumerate() {
            new_id[q] = i;
        }
        let trans = self
            .trans
            .iter()
            .map(|row| order.iter().map(|&q| new_id[row[q]]).collect())
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: new_id[self.initial],
            finals: order.iter().map(|&q| self.finals[q]).collect(),
            trans,
        }
    }
}

pub(crate) fn validate_token(tok: &str) -> Result<()> {
    if tok.is_empty()
        || tok
            .chars()
            .any(|c| c.is_whitespace() || c == ':' || c == '#')
    {
        return Err(Error::InvalidDfa(format!("invalid letter token '{tok}'")));
    }
    Ok(())
}

/// The accessible part, renumbered breadth-first with letters scanned in
/// alphabet order. Two DFAs are isomorphic (on their accessible parts) iff
/// their accessible parts are equal.
pub fn accessible_part(d: &Dfa) -> Dfa {
    d.restrict(&d.bfs_order())
}

/// Structural isomorphism of two fully accessible DFAs.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> bool {
    a.n_states() == b.n_states()
        && a.bfs_order().len() == a.n_states()
        && accessible_part(a) == accessible_part(b)
}

/// Language equivalence, decided by comparing canonical minimal automata.
///
/// Both alphabets must contain the same letters; their order may differ.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    let d2 = d2.with_alphabet_order(d1.alphabet())?;
    Ok(minimize(d1, MinimizeAlgo::Hopcroft) == minimize(&d2, MinimizeAlgo::Hopcroft))
}

/// Inverse image under a letter-to-letter morphism `sigma -> d.alphabet()`.
///
/// The result is over `sigma` (in the given order) and satisfies
/// `δ'(q, a) = δ(q, φ(a))`.
pub fn preimage_dfa<S: AsRef<str>>(
    d: &Dfa,
    sigma: &[S],
    letter_map: &BTreeMap<String, String>,
) -> Result<Dfa> {
    let mut trans = Vec::with_capacity(sigma.len());
    for tok in sigma {
        let tok = tok.as_ref();
        let image = letter_map
            .get(tok)
            .ok_or_else(|| Error::UnmappedLetter(tok.to_string()))?;
        let b = d
            .letter_index(image)
            .ok_or_else(|| Error::UnknownLetter(image.clone()))?;
        trans.push(d.trans[b].clone());
    }
    Dfa::new(
        sigma.iter().map(|s| s.as_ref().to_string()).collect(),
        d.n_states(),
        d.initial,
        d.finals(),
        trans,
    )
}

/// For each DFA, the position in its alphabet of every letter of the first
/// DFA's alphabet. Fails unless all alphabets hold the same letters.
pub(crate) fn common_alphabet(dfas: &[Dfa]) -> Result<Vec<Vec<usize>>> {
    let first = dfas
        .first()
        .ok_or_else(|| Error::InvalidArgument("no automata given".into()))?;
    let mut out = Vec::with_capacity(dfas.len());
    for d in dfas {
        if d.alphabet.len() != first.alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} letters vs {}",
                d.alphabet.len(),
                first.alphabet.len()
            )));
        }
        let index: HashMap<&str, usize> = d
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_str(), i))
            .collect();
        let mut map = Vec::with_capacity(first.alphabet.len());
        for tok in &first.alphabet {
            map.push(
                *index
                    .get(tok.as_str())
                    .ok_or_else(|| Error::AlphabetMismatch(format!("letter '{tok}' missing")))?,
            );
        }
        out.push(map);
    }
    Ok(out)
}
