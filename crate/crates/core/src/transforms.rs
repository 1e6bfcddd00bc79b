//! Self-maps of `{0..n}` and tuples of them.
//!
//! A [`TransFn`] is the action of a word on the states of one automaton; a
//! [`TransTuple`] collects those actions over `k` automata and is both a
//! state of a standard modifier's output and a letter of a monster.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransFn {
    images: Vec<usize>,
}

impl TransFn {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a transformation needs a nonempty domain".into(),
            ));
        }
        if let Some(&bad) = images.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidArgument(format!(
                "image {bad} out of range 0..{n}"
            )));
        }
        Ok(TransFn { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&x| x < images.len()));
        TransFn { images }
    }

    pub fn identity(n: usize) -> Self {
        TransFn {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        assert!(c < n);
        TransFn { images: vec![c; n] }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_constant(&self) -> bool {
        self.images.iter().all(|&x| x == self.images[0])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ g`, i.e. `x ↦ self(g(x))`.
    pub fn compose(&self, g: &TransFn) -> Result<TransFn> {
        if self.n() != g.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: g.n(),
            });
        }
        Ok(self.compose_unchecked(g))
    }

    pub(crate) fn compose_unchecked(&self, g: &TransFn) -> TransFn {
        TransFn {
            images: g.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Tail and cycle of the orbit `start, f(start), f²(start), …`.
    pub fn rho_shape(&self, start: usize) -> RhoShape {
        let mut first_seen = vec![usize::MAX; self.n()];
        let mut orbit = Vec::new();
        let mut x = start;
        while first_seen[x] == usize::MAX {
            first_seen[x] = orbit.len();
            orbit.push(x);
            x = self.images[x];
        }
        let tail = first_seen[x];
        RhoShape {
            tail,
            cycle: orbit.len() - tail,
            orbit,
        }
    }

    /// All `n^n` maps in lexicographic order of their image lists.
    pub fn all(n: usize) -> impl Iterator<Item = TransFn> {
        let total = (n as u64).pow(n as u32);
        (0..total).map(move |mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut().rev() {
                *slot = (code % n as u64) as usize;
                code /= n as u64;
            }
            TransFn { images }
        })
    }

    /// Position in the order of [`TransFn::all`].
    pub fn index(&self) -> usize {
        let n = self.n();
        self.images.iter().fold(0, |idx, &x| idx * n + x)
    }

    pub fn from_index(n: usize, mut idx: usize) -> TransFn {
        let mut images = vec![0; n];
        for slot in images.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        TransFn { images }
    }

    fn write_token(&self, out: &mut String) {
        out.push('[');
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&x.to_string());
        }
        out.push(']');
    }
}

impl fmt::Display for TransFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_token(&mut s);
        f.write_str(&s)
    }
}

/// Orbit of a point under a self-map: `orbit[tail..]` is the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoShape {
    pub tail: usize,
    pub cycle: usize,
    pub orbit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransTuple {
    components: Vec<TransFn>,
}

impl TransTuple {
    pub fn new(components: Vec<TransFn>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument(
                "a transformation tuple needs k >= 1".into(),
            ));
        }
        Ok(TransTuple { components })
    }

    pub fn identity(sizes: &[usize]) -> Self {
        TransTuple {
            components: sizes.iter().map(|&n| TransFn::identity(n)).collect(),
        }
    }

    pub fn components(&self) -> &[TransFn] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &TransFn {
        &self.components[j]
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(TransFn::n).collect()
    }

    /// Componentwise `self ∘ g`.
    pub fn compose(&self, g: &TransTuple) -> Result<TransTuple> {
        if self.arity() != g.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: g.arity(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&g.components)
            .map(|(f, g)| f.compose(g))
            .collect::<Result<_>>()?;
        Ok(TransTuple { components })
    }

    pub(crate) fn compose_unchecked(&self, g: &TransTuple) -> TransTuple {
        TransTuple {
            components: self
                .components
                .iter()
                .zip(&g.components)
                .map(|(f, g)| f.compose_unchecked(g))
                .collect(),
        }
    }

    /// Letter token: the concatenation of `[i0,i1,...]` per component.
    pub fn token(&self) -> String {
        let mut s = String::new();
        for c in &self.components {
            c.write_token(&mut s);
        }
        s
    }

    pub fn from_token(token: &str) -> Result<Self> {
        let bad = || Error::MalformedToken(token.to_string());
        let mut components = Vec::new();
        let mut rest = token;
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(bad)?;
            let end = body.find(']').ok_or_else(bad)?;
            let images = body[..end]
                .split(',')
                .map(|x| {
                    if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(bad());
                    }
                    x.parse::<usize>().map_err(|_| bad())
                })
                .collect::<Result<Vec<_>>>()?;
            components.push(TransFn::new(images).map_err(|_| bad())?);
            rest = &body[end + 1..];
        }
        TransTuple::new(components).map_err(|_| bad())
    }

    /// Position of this tuple in the mixed-radix enumeration of
    /// [`all_tuples`]: image digits read left to right, first most significant.
    pub fn mixed_radix_index(&self) -> usize {
        let mut idx = 0usize;
        for c in &self.components {
            for &x in c.images() {
                idx = idx * c.n() + x;
            }
        }
        idx
    }

    pub fn from_mixed_radix_index(sizes: &[usize], mut idx: usize) -> TransTuple {
        let mut components: Vec<TransFn> = sizes
            .iter()
            .map(|&n| TransFn { images: vec![0; n] })
            .collect();
        for c in components.iter_mut().rev() {
            let n = c.images.len();
            for slot in c.images.iter_mut().rev() {
                *slot = idx % n;
                idx /= n;
            }
        }
        TransTuple { components }
    }
}

impl fmt::Display for TransTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

impl FromStr for TransTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TransTuple::from_token(s)
    }
}

/// `∏ n_j^{n_j}` without overflow.
pub fn tuple_space_size(sizes: &[usize]) -> u128 {
    sizes.iter().fold(1u128, |acc, &n| {
        acc.saturating_mul((n as u128).saturating_pow(n as u32))
    })
}

/// Every tuple of `∏ T_{n_j}`, in mixed-radix order.
pub fn all_tuples(sizes: &[usize]) -> impl Iterator<Item = TransTuple> + '_ {
    let total = tuple_space_size(sizes) as usize;
    (0..total).map(move |i| TransTuple::from_mixed_radix_index(sizes, i))
}

/// Generators of the full transformation monoid on `n` points.
///
/// `n = 1`: the identity. `n = 2`: the swap and the constant 0. Otherwise the
/// cycle `x ↦ x+1 mod n`, the transposition `(0 1)` and the map sending
/// `n-1` to `0` while fixing everything else.
pub fn tn_generators(n: usize) -> Vec<TransFn> {
    match n {
        0 => Vec::new(),
        1 => vec![TransFn::identity(1)],
        2 => vec![
            TransFn { images: vec![1, 0] },
            TransFn { images: vec![0, 0] },
        ],
        _ => {
            let cycle = (0..n).map(|x| (x + 1) % n).collect();
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let mut drop: Vec<usize> = (0..n).collect();
            drop[n - 1] = 0;
            vec![
                TransFn { images: cycle },
                TransFn { images: swap },
                TransFn { images: drop },
            ]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{HashSet, VecDeque};

    fn f(images: &[usize]) -> TransFn {
        TransFn::new(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let swap = f(&[1, 0]);
        let id = TransFn::identity(2);
        assert_eq!(id.compose(&swap).unwrap(), swap);
        assert_eq!(swap.compose(&id).unwrap(), swap);
        assert_eq!(swap.compose(&swap).unwrap(), id);
        assert_eq!(f(&[1, 1]).compose(&swap).unwrap(), f(&[1, 1]));
        assert_eq!(swap.compose(&f(&[1, 1])).unwrap(), f(&[0, 0]));
        assert_eq!(
            swap.compose(&TransFn::identity(3)),
            Err(Error::SizeMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn tuple_compose_examples() {
        let swap = f(&[1, 0]);
        let one = f(&[1, 1]);
        let t = TransTuple::new(vec![swap.clone(), swap.clone()]).unwrap();
        assert_eq!(t.compose(&t).unwrap(), TransTuple::identity(&[2, 2]));
        let lhs = TransTuple::new(vec![swap.clone(), one.clone()]).unwrap();
        let rhs = TransTuple::new(vec![one.clone(), swap.clone()]).unwrap();
        // swap∘[1,1] = [0,0]; [1,1]∘swap = [1,1]
        assert_eq!(
            lhs.compose(&rhs).unwrap(),
            TransTuple::new(vec![f(&[0, 0]), f(&[1, 1])]).unwrap()
        );
        let id = TransTuple::identity(&[2, 2]);
        assert_eq!(id.compose(&lhs).unwrap(), lhs);
        assert!(lhs.compose(&TransTuple::identity(&[2])).is_err());
    }

    #[test]
    fn rho_shape_examples() {
        let r = f(&[1, 0]).rho_shape(0);
        assert_eq!((r.tail, r.cycle), (0, 2));
        let r = f(&[1, 1]).rho_shape(0);
        assert_eq!((r.tail, r.cycle, r.orbit), (1, 1, vec![0, 1]));
        for q in 0..4 {
            let r = TransFn::identity(4).rho_shape(q);
            assert_eq!((r.tail, r.cycle), (0, 1));
        }
    }

    fn closure(gens: &[TransFn], n: usize) -> usize {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(TransFn::identity(n));
        queue.push_back(TransFn::identity(n));
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x).unwrap();
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn generators_span_full_monoid() {
        assert_eq!(tn_generators(1), vec![f(&[0])]);
        assert_eq!(tn_generators(2), vec![f(&[1, 0]), f(&[0, 0])]);
        assert_eq!(tn_generators(3).len(), 3);
        for n in 1..=4 {
            assert_eq!(closure(&tn_generators(n), n), n.pow(n as u32));
        }
    }

    #[test]
    fn token_examples() {
        let t = TransTuple::new(vec![f(&[1, 0])]).unwrap();
        assert_eq!(t.token(), "[1,0]");
        let t = TransTuple::new(vec![f(&[1, 0]), TransFn::identity(3)]).unwrap();
        assert_eq!(t.token(), "[1,0][0,1,2]");
        assert_eq!(TransTuple::from_token("[1,0][0,1,2]").unwrap(), t);
        for bad in [
            "", "[", "[]", "[1,]", "[2,0]", "[0]x", "[-1]", "[0][", "[+0]",
        ] {
            assert!(TransTuple::from_token(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn mixed_radix_enumeration() {
        let sizes = [2, 3];
        let all: Vec<_> = all_tuples(&sizes).collect();
        assert_eq!(all.len(), 4 * 27);
        for (i, t) in all.iter().enumerate() {
            assert_eq!(t.mixed_radix_index(), i);
        }
        assert_eq!(all[0].token(), "[0,0][0,0,0]");
        assert_eq!(
            TransFn::all(2).collect::<Vec<_>>(),
            vec![f(&[0, 0]), f(&[0, 1]), f(&[1, 0]), f(&[1, 1])]
        );
    }

    fn arb_fn(n: usize) -> impl Strategy<Value = TransFn> {
        proptest::collection::vec(0..n, n).prop_map(|v| TransFn::new(v).unwrap())
    }

    fn arb_tuple() -> impl Strategy<Value = TransTuple> {
        proptest::collection::vec(1usize..12, 1..4).prop_flat_map(|sizes| {
            sizes
                .into_iter()
                .map(arb_fn)
                .collect::<Vec<_>>()
                .prop_map(|cs| TransTuple::new(cs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn compose_is_associative((a, b, c) in (1usize..7).prop_flat_map(|n| (arb_fn(n), arb_fn(n), arb_fn(n)))) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let id = TransFn::identity(a.n());
            prop_assert_eq!(id.compose(&a).unwrap(), a.clone());
            prop_assert_eq!(a.compose(&id).unwrap(), a);
        }

        #[test]
        fn rho_shape_is_minimal((g, start) in (1usize..9).prop_flat_map(|n| (arb_fn(n), 0..n))) {
            let r = g.rho_shape(start);
            let n = g.n();
            prop_assert!(r.tail + r.cycle <= n);
            prop_assert_eq!(r.orbit.len(), r.tail + r.cycle);
            let pow = |p: usize| (0..p).fold(start, |x, _| g.apply(x));
            prop_assert_eq!(pow(r.tail + r.cycle), pow(r.tail));
            // brute-force search over (a+b, a) in lexicographic order
            let mut best = None;
            'outer: for total in 1..=n {
                for a in 0..total {
                    if pow(a + (total - a)) == pow(a) {
                        best = Some((a, total - a));
                        break 'outer;
                    }
                }
            }
            prop_assert_eq!(best, Some((r.tail, r.cycle)));
        }

        #[test]
        fn token_round_trip(t in arb_tuple()) {
            prop_assert_eq!(TransTuple::from_token(&t.token()).unwrap(), t);
        }
    }
}
