//! Modifiers: constructions on `k` DFAs determined by their state
//! configurations and per-letter transition tuples.
//!
//! A [`Modifier`] is realized extensionally. Given the configurations
//! `(Q_j, i_j, F_j)` of its inputs it produces a [`Configured`] value that
//! knows the output state set, initial state, final states, and how a
//! tuple of input transition functions acts on the output states.

mod builtin;
mod standard;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::friendly::letter_actions;
use crate::transforms::{TransFn, TransTuple};

pub use builtin::{compl_mod, sqrt_mod, xor_mod};
pub use standard::{build_standard, build_standard_labeled, mod_of, StandardBuild};

/// Default cap on the number of output states of any construction.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

const FRIENDLY_SAMPLES: usize = 48;
const FRIENDLY_SEED: u64 = 0x00f1_e4d1;

/// The state configuration `(Q, i, F)` of one automaton, with `Q = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateConfig {
    n: usize,
    initial: usize,
    finals: Vec<bool>,
}

impl StateConfig {
    pub fn new(n: usize, initial: usize, finals: Vec<bool>) -> Result<Self> {
        if n == 0 || initial >= n || finals.len() != n {
            return Err(Error::InvalidArgument(format!(
                "bad state configuration: n={n}, initial={initial}, {} final flags",
                finals.len()
            )));
        }
        Ok(StateConfig { n, initial, finals })
    }

    pub fn of(d: &Dfa) -> Self {
        StateConfig {
            n: d.n_states(),
            initial: d.initial(),
            finals: (0..d.n_states()).map(|q| d.is_final(q)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }
}

/// A `k`-modifier `(𝔔, 𝔦, 𝔣, 𝔡)`.
pub trait Modifier: fmt::Debug + Send + Sync {
    fn arity(&self) -> usize;

    fn name(&self) -> String;

    /// Instantiates `𝔔, 𝔦, 𝔣` on concrete input configurations and prepares
    /// `𝔡`. Fails if the output would have more than `max_states` states.
    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>>;
}

/// A modifier instantiated on fixed input configurations.
pub trait Configured {
    fn num_states(&self) -> usize;

    fn initial(&self) -> usize;

    fn is_final(&self, q: usize) -> bool;

    /// Output transition function induced by the input transition tuple.
    fn transition(&self, action: &TransTuple) -> TransFn;

    /// `transition(action)(q)`; implementors override when a single image
    /// is cheaper than the whole map.
    fn step(&self, action: &TransTuple, q: usize) -> usize {
        self.transition(action).apply(q)
    }

    fn label(&self, q: usize) -> String {
        q.to_string()
    }

    /// Output state configuration, used when this output feeds another modifier.
    fn output_config(&self) -> StateConfig {
        let n = self.num_states();
        StateConfig {
            n,
            initial: self.initial(),
            finals: (0..n).map(|q| self.is_final(q)).collect(),
        }
    }
}

pub type ModifierRef = Arc<dyn Modifier>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuildKind {
    /// Only states reachable from the initial state, numbered breadth-first.
    Accessible,
    /// The whole state set of the construction.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildMode {
    pub kind: BuildKind,
    pub max_states: usize,
}

impl BuildMode {
    pub fn accessible() -> Self {
        BuildMode {
            kind: BuildKind::Accessible,
            max_states: DEFAULT_MAX_STATES,
        }
    }

    pub fn full() -> Self {
        BuildMode {
            kind: BuildKind::Full,
            max_states: DEFAULT_MAX_STATES,
        }
    }

    pub fn with_cap(self, max_states: usize) -> Self {
        BuildMode {
            max_states: max_states.max(1),
            ..self
        }
    }
}

impl Default for BuildMode {
    fn default() -> Self {
        BuildMode::accessible()
    }
}

/// An output automaton together with a label per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub dfa: Dfa,
    pub labels: Vec<String>,
}

pub fn apply_modifier(m: &dyn Modifier, dfas: &[Dfa], mode: BuildMode) -> Result<Dfa> {
    apply_modifier_labeled(m, dfas, mode).map(|b| b.dfa)
}

pub fn apply_modifier_labeled(m: &dyn Modifier, dfas: &[Dfa], mode: BuildMode) -> Result<Built> {
    if dfas.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            found: dfas.len(),
        });
    }
    let actions = letter_actions(dfas)?;
    let configs: Vec<StateConfig> = dfas.iter().map(StateConfig::of).collect();
    let conf = m.configure(&configs, mode.max_states)?;
    let n = conf.num_states();
    if n > mode.max_states {
        return Err(Error::CapExceeded {
            needed: n as u128,
            cap: mode.max_states,
        });
    }
    let trans: Vec<Vec<usize>> = actions
        .iter()
        .map(|act| conf.transition(act).images().to_vec())
        .collect();
    let finals = (0..n).map(|q| conf.is_final(q)).collect();
    let full = Dfa::from_parts(dfas[0].alphabet().to_vec(), conf.initial(), finals, trans);
    let order: Vec<usize> = match mode.kind {
        BuildKind::Full => (0..n).collect(),
        BuildKind::Accessible => full.bfs_order(),
    };
    Ok(Built {
        labels: order.iter().map(|&q| conf.label(q)).collect(),
        dfa: match mode.kind {
            BuildKind::Full => full,
            BuildKind::Accessible => full.restrict(&order),
        },
    })
}

#[derive(Debug)]
struct Composed {
    outer: ModifierRef,
    position: usize,
    inner: ModifierRef,
}

/// `m1 ∘_p m2`: the output of `m2` on arguments `p..p+k2-1` becomes the
/// `p`-th input of `m1` (1-based `p`).
pub fn compose_mod(m1: ModifierRef, position: usize, m2: ModifierRef) -> Result<ModifierRef> {
    if position == 0 || position > m1.arity() {
        return Err(Error::PositionOutOfRange {
            position,
            arity: m1.arity(),
        });
    }
    Ok(Arc::new(Composed {
        outer: m1,
        position,
        inner: m2,
    }))
}

impl Modifier for Composed {
    fn arity(&self) -> usize {
        self.outer.arity() + self.inner.arity() - 1
    }

    fn name(&self) -> String {
        format!(
            "{}∘{}{}",
            self.outer.name(),
            self.position,
            self.inner.name()
        )
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let lo = self.position - 1;
        let hi = lo + self.inner.arity();
        let inner = self.inner.configure(&configs[lo..hi], max_states)?;
        let mut outer_configs = configs[..lo].to_vec();
        outer_configs.push(inner.output_config());
        outer_configs.extend_from_slice(&configs[hi..]);
        let outer = self.outer.configure(&outer_configs, max_states)?;
        Ok(Box::new(ComposedConfigured {
            outer,
            inner,
            lo,
            hi,
        }))
    }
}

struct ComposedConfigured {
    outer: Box<dyn Configured>,
    inner: Box<dyn Configured>,
    lo: usize,
    hi: usize,
}

impl ComposedConfigured {
    fn outer_action(&self, action: &TransTuple) -> TransTuple {
        let comps = action.components();
        let inner_action =
            TransTuple::new(comps[self.lo..self.hi].to_vec()).expect("inner arity >= 1");
        let mut outer = comps[..self.lo].to_vec();
        outer.push(self.inner.transition(&inner_action));
        outer.extend_from_slice(&comps[self.hi..]);
        TransTuple::new(outer).expect("outer arity >= 1")
    }
}

impl Configured for ComposedConfigured {
    fn num_states(&self) -> usize {
        self.outer.num_states()
    }

    fn initial(&self) -> usize {
        self.outer.initial()
    }

    fn is_final(&self, q: usize) -> bool {
        self.outer.is_final(q)
    }

    fn transition(&self, action: &TransTuple) -> TransFn {
        self.outer.transition(&self.outer_action(action))
    }

    fn step(&self, action: &TransTuple, q: usize) -> usize {
        self.outer.step(&self.outer_action(action), q)
    }

    fn label(&self, q: usize) -> String {
        self.outer.label(q)
    }
}

pub(crate) fn check_arity(m: &dyn Modifier, configs: &[StateConfig]) -> Result<()> {
    if configs.len() != m.arity() {
        return Err(Error::ArityMismatch {
            expected: m.arity(),
            found: configs.len(),
        });
    }
    Ok(())
}

/// Looks for a violation of `𝔡(f ∘ g) = 𝔡(f) ∘ 𝔡(g)` on seeded random
/// configurations (sizes 1..=3) and transition tuples.
pub fn check_friendly(m: &dyn Modifier, samples: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let configs: Vec<StateConfig> = (0..m.arity())
            .map(|_| {
                let n = rng.gen_range(1..=3);
                let initial = rng.gen_range(0..n);
                let finals = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                StateConfig { n, initial, finals }
            })
            .collect();
        let conf = m.configure(&configs, DEFAULT_MAX_STATES)?;
        let random_tuple = |rng: &mut ChaCha8Rng| {
            let comps = configs
                .iter()
                .map(|c| {
                    TransFn::from_vec_unchecked((0..c.n).map(|_| rng.gen_range(0..c.n)).collect())
                })
                .collect();
            TransTuple::new(comps).expect("arity >= 1")
        };
        let f = random_tuple(&mut rng);
        let g = random_tuple(&mut rng);
        let lhs = conf.transition(&f.compose_unchecked(&g));
        let rhs = conf.transition(&f).compose_unchecked(&conf.transition(&g));
        if lhs != rhs {
            return Err(Error::NotFriendly(format!(
                "{}: d(f∘g) ≠ d(f)∘d(g) for f={f}, g={g}",
                m.name()
            )));
        }
    }
    Ok(())
}

/// The standard modifier `~m` describing the same operation as the friendly
/// modifier `m`. Friendliness is checked on sampled pairs first.
pub fn standardize(m: ModifierRef) -> Result<ModifierRef> {
    check_friendly(m.as_ref(), FRIENDLY_SAMPLES, FRIENDLY_SEED)?;
    Ok(standard::standardized(m))
}
