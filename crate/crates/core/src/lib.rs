//! Friendly regular-language operations on DFAs.
//!
//! An operation is friendly when membership of a word `w` in its result
//! depends only on the characteristic sequences of the transition
//! functions `δ_j^w` of the input automata. Such operations are given here
//! as predicates on characteristic tuples ([`friendly::EPredicate`]) and
//! realized on automata by the standard construction
//! ([`modifiers::build_standard`]), whose states are tuples of transition
//! functions.
//!
//! ```
//! use friendly_core::automata::{minimize, parse_dfa, MinimizeAlgo};
//! use friendly_core::friendly::EPredicate;
//! use friendly_core::modifiers::{build_standard, BuildMode};
//!
//! let a = parse_dfa("dfa v1\nalphabet a b\nstates 2\ninitial 0\nfinal 1\ntrans a: 1 0\ntrans b: 1 1\n").unwrap();
//! let sqrt = EPredicate::parse_expr("root[2](L1)").unwrap();
//! let out = build_standard(&sqrt, &[a], BuildMode::accessible()).unwrap();
//! assert!(out.accepts(&["b"]).unwrap());
//! assert_eq!(minimize(&out, MinimizeAlgo::Hopcroft).n_states(), 3);
//! ```

pub mod automata;
pub mod error;
pub mod experiments;
pub mod friendly;
pub mod gen;
pub mod modifiers;
pub mod monsters;
pub mod transforms;
pub mod upseq;

pub use error::{Error, Result};
