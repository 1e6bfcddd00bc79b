use std::sync::Arc;

use super::{check_arity, Configured, Modifier, ModifierRef, StateConfig};
use crate::error::{Error, Result};
use crate::transforms::{TransFn, TransTuple};

/// Square root: `w` is accepted iff `ww` is.
pub fn sqrt_mod() -> ModifierRef {
    Arc::new(Sqrt)
}

/// Symmetric difference of two languages.
pub fn xor_mod() -> ModifierRef {
    Arc::new(Xor)
}

/// Complement.
pub fn compl_mod() -> ModifierRef {
    Arc::new(Compl)
}

#[derive(Debug)]
struct Sqrt;

struct SqrtConf {
    n: usize,
    initial: usize,
    finals: Vec<bool>,
}

impl Modifier for Sqrt {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        "Sqrt".into()
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let c = &configs[0];
        let n = c.n();
        let count = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if count > max_states as u128 {
            return Err(Error::CapExceeded {
                needed: count,
                cap: max_states,
            });
        }
        let i = c.initial();
        // φ is final iff φ(φ(i)) ∈ F
        let finals = TransFn::all(n)
            .map(|phi| c.is_final(phi.apply(phi.apply(i))))
            .collect();
        Ok(Box::new(SqrtConf {
            n,
            initial: TransFn::identity(n).index(),
            finals,
        }))
    }
}

impl SqrtConf {
    fn decode(&self, q: usize) -> TransFn {
        TransFn::from_index(self.n, q)
    }
}

impl Configured for SqrtConf {
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
            (0..self.num_states())
                .map(|q| self.step(action, q))
                .collect(),
        )
    }

    fn step(&self, action: &TransTuple, q: usize) -> usize {
        action
            .component(0)
            .compose_unchecked(&self.decode(q))
            .index()
    }

    fn label(&self, q: usize) -> String {
        self.decode(q).to_string()
    }
}

#[derive(Debug)]
struct Xor;

struct XorConf {
    n2: usize,
    initial: usize,
    finals: Vec<bool>,
}

impl Modifier for Xor {
    fn arity(&self) -> usize {
        2
    }

    fn name(&self) -> String {
        "Xor".into()
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let (c1, c2) = (&configs[0], &configs[1]);
        let count = c1.n() as u128 * c2.n() as u128;
        if count > max_states as u128 {
            return Err(Error::CapExceeded {
                needed: count,
                cap: max_states,
            });
        }
        let n2 = c2.n();
        let finals = (0..c1.n())
            .flat_map(|q1| (0..n2).map(move |q2| (q1, q2)))
            .map(|(q1, q2)| c1.is_final(q1) != c2.is_final(q2))
            .collect();
        Ok(Box::new(XorConf {
            n2,
            initial: c1.initial() * n2 + c2.initial(),
            finals,
        }))
    }
}

impl Configured for XorConf {
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
            (0..self.num_states())
                .map(|q| self.step(action, q))
                .collect(),
        )
    }

    fn step(&self, action: &TransTuple, q: usize) -> usize {
        let (q1, q2) = (q / self.n2, q % self.n2);
        action.component(0).apply(q1) * self.n2 + action.component(1).apply(q2)
    }

    fn label(&self, q: usize) -> String {
        format!("({},{})", q / self.n2, q % self.n2)
    }
}

#[derive(Debug)]
struct Compl;

struct ComplConf(StateConfig);

impl Modifier for Compl {
    fn arity(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        "Compl".into()
    }

    fn configure(&self, configs: &[StateConfig], max_states: usize) -> Result<Box<dyn Configured>> {
        check_arity(self, configs)?;
        let c = &configs[0];
        if c.n() > max_states {
            return Err(Error::CapExceeded {
                needed: c.n() as u128,
                cap: max_states,
            });
        }
        Ok(Box::new(ComplConf(c.clone())))
    }
}

impl Configured for ComplConf {
    fn num_states(&self) -> usize {
        self.0.n()
    }

    fn initial(&self) -> usize {
        self.0.initial()
    }

    fn is_final(&self, q: usize) -> bool {
        !self.0.is_final(q)
    }

    fn transition(&self, action: &TransTuple) -> TransFn {
        action.component(0).clone()
    }

    fn step(&self, action: &TransTuple, q: usize) -> usize {
        action.component(0).apply(q)
    }
}
