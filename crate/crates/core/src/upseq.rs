//! Eventually periodic bit sequences in canonical `prefix(period)` form.
//!
//! The canonical representative has the shortest period and, given that
//! period, the shortest prefix. Equality of sequences is therefore
//! structural equality of representatives.

use std::fmt;
use std::str::FromStr;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::transforms::{TransFn, TransTuple};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPSeq {
    prefix: Vec<bool>,
    period: Vec<bool>,
}

impl UPSeq {
    /// Canonical representative of `prefix · period^ω`.
    pub fn canonicalize(prefix: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let mut prefix = prefix;
        let mut period = shortest_root(period);
        // p·x·(y…x)^ω = p·(x·y…)^ω: rotate the last period bit into the prefix
        while let (Some(&last_p), Some(&last_r)) = (prefix.last(), period.last()) {
            if last_p != last_r {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(UPSeq { prefix, period })
    }

    /// The constant sequence.
    pub fn constant(bit: bool) -> Self {
        UPSeq {
            prefix: Vec::new(),
            period: vec![bit],
        }
    }

    /// `0 1 1 1 …`
    pub fn zero_then_ones() -> Self {
        UPSeq {
            prefix: vec![false],
            period: vec![true],
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn at(&self, p: usize) -> bool {
        if p < self.prefix.len() {
            self.prefix[p]
        } else {
            self.period[(p - self.prefix.len()) % self.period.len()]
        }
    }

    /// The sequence `p ↦ self[m·p]`.
    pub fn scale(&self, m: usize) -> UPSeq {
        if m == 0 {
            return UPSeq::constant(self.at(0));
        }
        let tail = self.prefix.len().div_ceil(m);
        let len = self.period.len() / gcd(m % self.period.len(), self.period.len());
        let prefix = (0..tail).map(|p| self.at(m * p)).collect();
        let period = (tail..tail + len).map(|p| self.at(m * p)).collect();
        UPSeq::canonicalize(prefix, period).expect("period is nonempty")
    }

    /// Bits `p ↦ [f^p(i) ∈ finals]` of the orbit of `i` under `f`.
    pub fn char_seq(f: &TransFn, i: usize, finals: &[bool]) -> UPSeq {
        let rho = f.rho_shape(i);
        let bits: Vec<bool> = rho.orbit.iter().map(|&q| finals[q]).collect();
        let period = bits[rho.tail..].to_vec();
        let mut prefix = bits;
        prefix.truncate(rho.tail);
        UPSeq::canonicalize(prefix, period).expect("orbit cycle is nonempty")
    }

    /// Unary automaton over `{a}` accepting `a^p` iff `self[p] = 1`.
    pub fn to_unary_dfa(&self) -> Dfa {
        let t = self.prefix.len();
        let n = t + self.period.len();
        let row: Vec<usize> = (0..n).map(|q| if q + 1 < n { q + 1 } else { t }).collect();
        let finals = self.prefix.iter().chain(&self.period).copied().collect();
        Dfa::from_parts(vec!["a".to_string()], 0, finals, vec![row])
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn shortest_root(word: Vec<bool>) -> Vec<bool> {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| word[i] == word[i - d]) {
            return word[..d].to_vec();
        }
    }
    word
}

fn write_bits(out: &mut fmt::Formatter<'_>, bits: &[bool]) -> fmt::Result {
    for &b in bits {
        out.write_str(if b { "1" } else { "0" })?;
    }
    Ok(())
}

impl fmt::Display for UPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(f, &self.prefix)?;
        f.write_str("(")?;
        write_bits(f, &self.period)?;
        f.write_str(")")
    }
}

fn parse_bits(s: &str) -> Option<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect()
}

impl FromStr for UPSeq {
    type Err = Error;

    /// Parses `BITS? '(' BITS ')'` and canonicalizes.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::MalformedToken(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let prefix = parse_bits(&s[..open]).ok_or_else(bad)?;
        let period = parse_bits(body).ok_or_else(bad)?;
        if period.is_empty() {
            return Err(bad());
        }
        UPSeq::canonicalize(prefix, period)
    }
}

/// One eventually periodic sequence per language argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharTuple {
    components: Vec<UPSeq>,
}

impl CharTuple {
    pub fn new(components: Vec<UPSeq>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "a characteristic tuple needs k >= 1".into(),
            ));
        }
        Ok(CharTuple { components })
    }

    pub fn components(&self) -> &[UPSeq] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn scale(&self, m: usize) -> CharTuple {
        CharTuple {
            components: self.components.iter().map(|u| u.scale(m)).collect(),
        }
    }

    /// Characteristic sequence of `fs` from initial states `inits` w.r.t.
    /// final sets `finals`, componentwise.
    pub fn of(fs: &TransTuple, inits: &[usize], finals: &[&[bool]]) -> Result<CharTuple> {
        let k = fs.arity();
        if inits.len() != k || finals.len() != k {
            return Err(Error::ArityMismatch {
                expected: k,
                found: inits.len().min(finals.len()),
            });
        }
        let mut components = Vec::with_capacity(k);
        for ((f, &i), fin) in fs.components().iter().zip(inits).zip(finals) {
            if fin.len() != f.n() {
                return Err(Error::SizeMismatch {
                    expected: f.n(),
                    found: fin.len(),
                });
            }
            if i >= f.n() {
                return Err(Error::InvalidArgument(format!(
                    "state {i} out of range 0..{}",
                    f.n()
                )));
            }
            components.push(UPSeq::char_seq(f, i, fin));
        }
        Ok(CharTuple { components })
    }
}

impl fmt::Display for CharTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, u) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

impl FromStr for CharTuple {
    type Err = Error;

    /// Comma-separated sequence literals, e.g. `(01),(10)`.
    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<UPSeq>>>()?;
        CharTuple::new(components)
    }
}
