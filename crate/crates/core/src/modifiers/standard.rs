use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{check_arity, BuildKind, BuildMode, Configured, Modifier, ModifierRef, StateConfig};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::friendly::{letter_actions, EPredicate};
use crate::transforms::{all_tuples, tuple_space_size, TransFn, TransTuple};
use crate::upseq::CharTuple;

/// Result of [`build_standard_labeled`]: the automaton and, per state, the
/// tuple of transition functions it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBuild {
    pub dfa: Dfa,
    pub states: Vec<TransTuple>,
}

/// Builds the standard construction `mod(E)` on `dfas`.
pub fn build_standard(pred: &EPredicate, dfas: &[Dfa], mode: BuildMode) -> Result<Dfa> {
    build_standard_labeled(pred, dfas, mode).map(|b| b.dfa)
}

pub fn build_standard_labeled(
    pred: &EPredicate,
    dfas: &[Dfa],
    mode: BuildMode,
) -> Result<StandardBuild> {
    if dfas.len() != pred.arity() {
        return Err(Error::ArityMismatch {
            expected: pred.arity(),
            found: dfas.len(),
        });
    }
    let actions = letter_actions(dfas)?;
    let configs: Vec<StateConfig> = dfas.iter().map(StateConfig::of).collect();
    let sizes: Vec<usize> = configs.iter().map(StateConfig::n).collect();
    let mut oracle = FinalOracle::new(pred, &configs);

    let (states, trans) = match mode.kind {
        BuildKind::Full => {
            let total = tuple_space_size(&sizes);
            if total > mode.max_states as u128 {
                return Err(Error::CapExceeded {
                    needed: total,
                    cap: mode.max_states,
                });
            }
            let states: Vec<TransTuple> = all_tuples(&sizes).collect();
            let trans = actions
                .iter()
                .map(|act| {
                    states
                        .iter()
                        .map(|s| act.compose_unchecked(s).mixed_radix_index())
                        .collect()
                })
                .collect();
            (states, trans)
        }
        BuildKind::Accessible => {
            let start = TransTuple::identity(&sizes);
            let mut index: HashMap<TransTuple, usize> = HashMap::from([(start.clone(), 0)]);
            let mut states = vec![start];
            let mut trans: Vec<Vec<usize>> = vec![Vec::new(); actions.len()];
            let mut queue = VecDeque::from([0usize]);
            while let Some(q) = queue.pop_front() {
                for (a, act) in actions.iter().enumerate() {
                    let next = act.compose_unchecked(&states[q]);
                    let r = match index.get(&next) {
                        Some(&r) => r,
                        None => {
                            let r = states.len();
                            if r >= mode.max_states {
                                return Err(Error::CapExceeded {
                                    needed: r as u128 + 1,
                                    cap: mode.max_states,
                                });
                            }
                            index.insert(next.clone(), r);
                            states.push(next);
                            queue.push_back(r);
                            r
                        }
                    };
                    trans[a].push(r);
                }
            }
            (states, trans)
        }
    };

    let finals = states
        .iter()
        .map(|s| oracle.is_final(s))
        .collect::<Result<Vec<bool>>>()?;
    let initial = match mode.kind {
        BuildKind::Full => TransTuple::identity(&sizes).mixed_radix_index(),
        BuildKind::Accessible => 0,
    };
    Ok(StandardBuild {
        dfa: Dfa::from_parts(dfas[0].alphabet().to_vec(), initial, finals, trans),
        states,
    })
}

/// Decides `χ(φ̄) ∈ E`, memoized on characteristic tuples.
struct FinalOracle<'a> {
    pred: &'a EPredicate,
    inits: Vec<usize>,
    finals: Vec<&'a [bool]>,
    memo: HashMap<CharTuple, bool>,
}

impl<'a> FinalOracle<'a> {
    fn new(pred: &'a EPredicate, configs: &'a [StateConfig]) -> Self {
        FinalOracle {
            pred,
            inits: configs.iter().map(StateConfig::initial).collect(),
            finals: configs.iter().map(StateConfig::finals).collect(),
            memo: HashMap::new(),
        }
    }

    fn is_final(&mut self, phi: &TransTuple) -> Result<bool> {
        let chi = CharTuple::of(phi, &self.inits, &self.finals)?;
        if let Some(&b) = self.memo.get(&chi) {
            return Ok(b);
        }
        let b = self.pred.contains(&chi)?;
        self.memo.insert(chi, b);
        Ok(b)
    }
}

#[derive(Debug)]
struct StandardModifier(EPredicate);

/// The standard modifier `mod(E)`.
pub fn mod_of(pred: EPredicate) -> ModifierRef {
    Arc::new(StandardModifier(pred))
}

impl Modifier for StandardModifier {
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn name(&self) -> String {
        format!("mod({})", self.0.name())
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let space = TupleSpace::new(configs, max_states)?;
        let mut oracle = FinalOracle::new(&self.0, configs);
        let finals = all_tuples(&space.sizes)
            .map(|phi| oracle.is_final(&phi))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Box::new(space.with_finals(finals)))
    }
}

#[derive(Debug)]
struct Standardized(ModifierRef);

pub(super) fn standardized(m: ModifierRef) -> ModifierRef {
    Arc::new(Standardized(m))
}

impl Modifier for Standardized {
    fn arity(&self) -> usize {
        self.0.arity()
    }

    fn name(&self) -> String {
        format!("~{}", self.0.name())
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let space = TupleSpace::new(configs, max_states)?;
        let inner = self.0.configure(configs, max_states)?;
        // φ̄ is final iff 𝔡(φ̄) sends the inner initial state to a final one
        let start = inner.initial();
        let finals = all_tuples(&space.sizes)
            .map(|phi| inner.is_final(inner.step(&phi, start)))
            .collect();
        Ok(Box::new(space.with_finals(finals)))
    }
}

/// State set `∏ T_{n_j}` in mixed-radix order.
struct TupleSpace {
    sizes: Vec<usize>,
}

impl TupleSpace {
    fn new(configs: &[StateConfig], max_states: usize) -> Result<Self> {
        let sizes: Vec<usize> = configs.iter().map(StateConfig::n).collect();
        let total = tuple_space_size(&sizes);
        if total > max_states as u128 {
            return Err(Error::CapExceeded {
                needed: total,
                cap: max_states,
            });
        }
        Ok(TupleSpace { sizes })
    }

    fn with_finals(self, finals: Vec<bool>) -> TupleConf {
        TupleConf {
            initial: TransTuple::identity(&self.sizes).mixed_radix_index(),
            sizes: self.sizes,
            finals,
        }
    }
}

struct TupleConf {
    sizes: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Configured for TupleConf {
    fn num_states(&self) -> usize {
        self.finals.len()
    }

    fn initial(&self) -> usize {
        self.initial
    }

    fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    fn transition(&self, action: &TransTuple) -> TransFn {
        TransFn::from_vec_unchecked(
            all_tuples(&self.sizes)
                .map(|phi| action.compose_unchecked(&phi).mixed_radix_index())
                .collect(),
        )
    }

    fn step(&self, action: &TransTuple, q: usize) -> usize {
        action
            .compose_unchecked(&TransTuple::from_mixed_radix_index(&self.sizes, q))
            .mixed_radix_index()
    }

    fn label(&self, q: usize) -> String {
        TransTuple::from_mixed_radix_index(&self.sizes, q).token()
    }
}
