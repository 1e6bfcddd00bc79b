//! Friendly operations as decidable predicates on characteristic tuples.
//!
//! A word `w` lies in the result of a friendly operation on `L1..Lk` iff the
//! characteristic tuple of `(δ_1^w, …, δ_k^w)` satisfies the operation's
//! predicate. Predicates come from three sources: boolean expressions over
//! roots ([`OpExpr`]), explicit finite sets of tuples, and the named wheel
//! sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::automata::{common_alphabet, Dfa};
use crate::error::{Error, Result};
use crate::transforms::TransTuple;
use crate::upseq::{lcm, CharTuple, UPSeq};

/// Default ceiling on the number of exponents scanned by `Root`.
pub const DEFAULT_ROOT_SCAN_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpExpr {
    /// The `j`-th language argument, 1-based.
    Arg(usize),
    Not(Box<OpExpr>),
    And(Box<OpExpr>, Box<OpExpr>),
    Or(Box<OpExpr>, Box<OpExpr>),
    Xor(Box<OpExpr>, Box<OpExpr>),
    /// `{ w | w^m ∈ e }`
    Root(usize, Box<OpExpr>),
    /// Union of `Root(m, e)` over `m ≥ 1`.
    RootStar(Box<OpExpr>),
    /// The wheel operation on arguments `1..=k`.
    Wheel(usize),
}

impl OpExpr {
    pub fn parse(text: &str) -> Result<OpExpr> {
        Parser::new(text).parse_all()
    }

    /// Largest argument index used.
    pub fn arity(&self) -> usize {
        match self {
            OpExpr::Arg(j) => *j,
            OpExpr::Wheel(k) => *k,
            OpExpr::Not(e) | OpExpr::Root(_, e) | OpExpr::RootStar(e) => e.arity(),
            OpExpr::And(a, b) | OpExpr::Or(a, b) | OpExpr::Xor(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            OpExpr::Arg(_) | OpExpr::Wheel(_) => 1,
            OpExpr::Not(e) | OpExpr::Root(_, e) | OpExpr::RootStar(e) => 1 + e.depth(),
            OpExpr::And(a, b) | OpExpr::Or(a, b) | OpExpr::Xor(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Evaluates the expression on the characteristic tuple of a word.
    pub fn eval(&self, chi: &CharTuple, scan_limit: u128) -> Result<bool> {
        Ok(match self {
            // w ∈ L_j iff w^1 ∈ L_j
            OpExpr::Arg(j) => chi.components()[j - 1].at(1),
            OpExpr::Not(e) => !e.eval(chi, scan_limit)?,
            OpExpr::And(a, b) => a.eval(chi, scan_limit)? && b.eval(chi, scan_limit)?,
            OpExpr::Or(a, b) => a.eval(chi, scan_limit)? || b.eval(chi, scan_limit)?,
            OpExpr::Xor(a, b) => a.eval(chi, scan_limit)? != b.eval(chi, scan_limit)?,
            OpExpr::Root(m, e) => e.eval(&chi.scale(*m), scan_limit)?,
            OpExpr::RootStar(e) => {
                // p ↦ scale(chi, p) is periodic with period C from p = A on
                let tail = chi
                    .components()
                    .iter()
                    .map(|u| u.prefix().len())
                    .max()
                    .unwrap_or(0);
                let period = chi
                    .components()
                    .iter()
                    .fold(1usize, |acc, u| lcm(acc, u.period().len()));
                let bound = tail as u128 + period as u128;
                if bound > scan_limit {
                    return Err(Error::BoundOverflow {
                        needed: bound,
                        limit: scan_limit,
                    });
                }
                for p in 1..=bound as usize {
                    if e.eval(&chi.scale(p), scan_limit)? {
                        return Ok(true);
                    }
                }
                false
            }
            OpExpr::Wheel(k) => in_wheel(&chi.components()[..*k]),
        })
    }
}

fn in_wheel(components: &[UPSeq]) -> bool {
    let zero = UPSeq::constant(false);
    let zero_one = UPSeq::zero_then_ones();
    let all_in = components.iter().all(|u| *u == zero || *u == zero_one);
    let all_zero = components.iter().all(|u| *u == zero);
    all_in && (components.len() == 1 || !all_zero)
}

impl fmt::Display for OpExpr {
    /// Fully parenthesized except for atoms; reparses to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Arg(j) => write!(f, "L{j}"),
            OpExpr::Wheel(k) => write!(f, "wheel{k}"),
            OpExpr::Not(e) => match **e {
                OpExpr::Arg(_)
                | OpExpr::Wheel(_)
                | OpExpr::Root(..)
                | OpExpr::RootStar(_)
                | OpExpr::Not(_) => {
                    write!(f, "!{e}")
                }
                _ => write!(f, "!({e})"),
            },
            OpExpr::And(a, b) => write!(f, "({a} & {b})"),
            OpExpr::Or(a, b) => write!(f, "({a} | {b})"),
            OpExpr::Xor(a, b) => write!(f, "({a} ^ {b})"),
            OpExpr::Root(m, e) => write!(f, "root[{m}]({})", Unwrapped(e)),
            OpExpr::RootStar(e) => write!(f, "Root({})", Unwrapped(e)),
        }
    }
}

/// Displays a binary node without its outer parentheses.
struct Unwrapped<'a>(&'a OpExpr);

impl fmt::Display for Unwrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        match self.0 {
            OpExpr::And(..) | OpExpr::Or(..) | OpExpr::Xor(..) => f.write_str(&s[1..s.len() - 1]),
            _ => f.write_str(&s),
        }
    }
}

// Grammar, loosest first:
//   or  := xor ('|' xor)*     xor := and ('^' and)*     and := not ('&' not)*
//   not := '!' not | atom
//   atom := 'L' INT | 'root' '[' INT ']' '(' expr ')' | 'Root' '(' expr ')'
//         | 'wheel' INT | '(' expr ')'
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.src[self.pos..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        let value = self.src[self.pos..self.pos + digits].parse();
        match value {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => self.err("integer too large"),
        }
    }

    fn parse_all(mut self) -> Result<OpExpr> {
        let e = self.or()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(e)
    }

    fn or(&mut self) -> Result<OpExpr> {
        let mut e = self.xor()?;
        while self.eat('|') {
            e = OpExpr::Or(Box::new(e), Box::new(self.xor()?));
        }
        Ok(e)
    }

    fn xor(&mut self) -> Result<OpExpr> {
        let mut e = self.and()?;
        while self.eat('^') {
            e = OpExpr::Xor(Box::new(e), Box::new(self.and()?));
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<OpExpr> {
        let mut e = self.not()?;
        while self.eat('&') {
            e = OpExpr::And(Box::new(e), Box::new(self.not()?));
        }
        Ok(e)
    }

    fn not(&mut self) -> Result<OpExpr> {
        if self.eat('!') {
            Ok(OpExpr::Not(Box::new(self.not()?)))
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<OpExpr> {
        if self.eat('(') {
            let e = self.or()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.keyword("root") {
            self.expect('[')?;
            let m = self.int()?;
            self.expect(']')?;
            self.expect('(')?;
            let e = self.or()?;
            self.expect(')')?;
            return Ok(OpExpr::Root(m, Box::new(e)));
        }
        if self.keyword("Root") {
            self.expect('(')?;
            let e = self.or()?;
            self.expect(')')?;
            return Ok(OpExpr::RootStar(Box::new(e)));
        }
        if self.keyword("wheel") {
            let at = self.pos;
            let k = self.int()?;
            if k == 0 {
                self.pos = at;
                return self.err("wheel arity must be at least 1");
            }
            return Ok(OpExpr::Wheel(k));
        }
        if self.keyword("L") {
            let at = self.pos;
            let j = self.int()?;
            if j == 0 {
                self.pos = at;
                return self.err("argument indices start at 1");
            }
            return Ok(OpExpr::Arg(j));
        }
        match self.peek() {
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// A decidable set of characteristic tuples of fixed arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EPredicate {
    Explicit {
        arity: usize,
        members: BTreeSet<CharTuple>,
    },
    Compiled {
        arity: usize,
        expr: OpExpr,
    },
    /// `{0, 0¹}` for `k = 1`; `{0, 0¹}^k` minus the all-zero tuple otherwise.
    Wheel(usize),
}

impl EPredicate {
    /// Predicate of an expression, with arity its largest argument index.
    pub fn compiled(expr: OpExpr) -> Self {
        EPredicate::Compiled {
            arity: expr.arity(),
            expr,
        }
    }

    /// Predicate of an expression viewed as a `k`-ary operation that may
    /// ignore some trailing arguments.
    pub fn compiled_with_arity(expr: OpExpr, arity: usize) -> Result<Self> {
        if arity < expr.arity() || arity == 0 {
            return Err(Error::ArityMismatch {
                expected: expr.arity(),
                found: arity,
            });
        }
        Ok(EPredicate::Compiled { arity, expr })
    }

    pub fn parse_expr(text: &str) -> Result<Self> {
        Ok(EPredicate::compiled(OpExpr::parse(text)?))
    }

    pub fn explicit<I: IntoIterator<Item = CharTuple>>(arity: usize, members: I) -> Result<Self> {
        if arity == 0 {
            return Err(Error::InvalidArgument("arity must be at least 1".into()));
        }
        let members: BTreeSet<CharTuple> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|t| t.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: bad.arity(),
            });
        }
        Ok(EPredicate::Explicit { arity, members })
    }

    pub fn wheel(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "wheel arity must be at least 1".into(),
            ));
        }
        Ok(EPredicate::Wheel(k))
    }

    /// Parses an `eset v1` document.
    ///
    /// ```text
    /// eset v1 k=1
    /// (0)
    /// 0(1)
    /// ```
    pub fn explicit_from_file(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "malformed header: empty document"))?;
        let arity = header
            .strip_prefix("eset v1")
            .map(str::trim)
            .and_then(|rest| rest.strip_prefix("k="))
            .and_then(|k| k.trim().parse::<usize>().ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| {
                Error::parse(
                    hline,
                    format!("malformed header '{header}', expected 'eset v1 k=<k>'"),
                )
            })?;
        let mut members = BTreeSet::new();
        for (line, content) in lines {
            let tuple: CharTuple = content
                .parse()
                .map_err(|_| Error::parse(line, format!("malformed tuple literal '{content}'")))?;
            if tuple.arity() != arity {
                return Err(Error::parse(
                    line,
                    format!(
                        "tuple has {} components, header says k={arity}",
                        tuple.arity()
                    ),
                ));
            }
            members.insert(tuple);
        }
        Ok(EPredicate::Explicit { arity, members })
    }

    pub fn arity(&self) -> usize {
        match self {
            EPredicate::Explicit { arity, .. } | EPredicate::Compiled { arity, .. } => *arity,
            EPredicate::Wheel(k) => *k,
        }
    }

    /// Membership of `chi` in the set.
    pub fn contains(&self, chi: &CharTuple) -> Result<bool> {
        self.contains_with_limit(chi, DEFAULT_ROOT_SCAN_LIMIT)
    }

    pub fn contains_with_limit(&self, chi: &CharTuple, scan_limit: u128) -> Result<bool> {
        if chi.arity() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: chi.arity(),
            });
        }
        match self {
            EPredicate::Explicit { members, .. } => Ok(members.contains(chi)),
            EPredicate::Compiled { expr, .. } => expr.eval(chi, scan_limit),
            EPredicate::Wheel(_) => Ok(in_wheel(chi.components())),
        }
    }

    /// Short human-readable name, used in reports.
    pub fn name(&self) -> String {
        match self {
            EPredicate::Explicit { members, .. } => {
                let items: Vec<String> = members.iter().map(|t| format!("<{t}>")).collect();
                format!("eset{{{}}}", items.join(";"))
            }
            EPredicate::Compiled { expr, .. } => Unwrapped(expr).to_string(),
            EPredicate::Wheel(k) => format!("wheel{k}"),
        }
    }

    /// Renders an explicit predicate as an `eset v1` document.
    pub fn to_eset_file(&self) -> Option<String> {
        match self {
            EPredicate::Explicit { arity, members } => {
                let mut out = format!("eset v1 k={arity}\n");
                for t in members {
                    out.push_str(&t.to_string());
                    out.push('\n');
                }
                Some(out)
            }
            _ => None,
        }
    }
}

/// Per-letter action tuples `(δ_1^a, …, δ_k^a)` in the first DFA's letter order.
pub(crate) fn letter_actions(dfas: &[Dfa]) -> Result<Vec<TransTuple>> {
    let maps = common_alphabet(dfas)?;
    let letters = dfas[0].alphabet().len();
    Ok((0..letters)
        .map(|a| {
            let comps = dfas
                .iter()
                .zip(&maps)
                .map(|(d, map)| {
                    crate::transforms::TransFn::from_vec_unchecked(d.row(map[a]).to_vec())
                })
                .collect();
            TransTuple::new(comps).expect("at least one automaton")
        })
        .collect())
}

/// Direct membership test for `w ∈ op(E)(L(d_1), …, L(d_k))`.
///
/// Folds the word into `(δ_1^w, …, δ_k^w)` and tests its characteristic
/// tuple against the predicate. Shares no code with the automaton
/// construction in `modifiers`.
pub fn word_oracle<S: AsRef<str>>(pred: &EPredicate, dfas: &[Dfa], word: &[S]) -> Result<bool> {
    if dfas.len() != pred.arity() {
        return Err(Error::ArityMismatch {
            expected: pred.arity(),
            found: dfas.len(),
        });
    }
    let actions = letter_actions(dfas)?;
    let sizes: Vec<usize> = dfas.iter().map(Dfa::n_states).collect();
    let mut acc = TransTuple::identity(&sizes);
    for tok in word {
        let tok = tok.as_ref();
        let a = dfas[0]
            .letter_index(tok)
            .ok_or_else(|| Error::UnknownLetter(tok.to_string()))?;
        // δ^{wa} = δ^a ∘ δ^w
        acc = actions[a].compose(&acc)?;
    }
    let inits: Vec<usize> = dfas.iter().map(Dfa::initial).collect();
    let finals: Vec<&[bool]> = dfas.iter().map(Dfa::final_flags).collect();
    pred.contains(&CharTuple::of(&acc, &inits, &finals)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::fig1;
    use crate::transforms::TransFn;
    use proptest::prelude::*;

    fn parse(s: &str) -> OpExpr {
        OpExpr::parse(s).unwrap()
    }

    fn arg(j: usize) -> Box<OpExpr> {
        Box::new(OpExpr::Arg(j))
    }

    fn chi(s: &str) -> CharTuple {
        s.parse().unwrap()
    }

    #[test]
    fn parses_with_precedence() {
        let e = parse("(root[2](L1) | L2) & !L3");
        assert_eq!(
            e,
            OpExpr::And(
                Box::new(OpExpr::Or(Box::new(OpExpr::Root(2, arg(1))), arg(2))),
                Box::new(OpExpr::Not(arg(3)))
            )
        );
        assert_eq!(e.arity(), 3);
        assert_eq!(parse("L1"), OpExpr::Arg(1));
        assert_eq!(parse("Root(L1)"), OpExpr::RootStar(arg(1)));
        // ! > & > ^ > |
        assert_eq!(
            parse("L1 | L2 ^ L3 & !L4"),
            OpExpr::Or(
                arg(1),
                Box::new(OpExpr::Xor(
                    arg(2),
                    Box::new(OpExpr::And(arg(3), Box::new(OpExpr::Not(arg(4)))))
                ))
            )
        );
        assert_eq!(parse("wheel2 & L3").arity(), 3);
    }

    #[test]
    fn parse_errors_carry_position() {
        match OpExpr::parse("L0") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("{other:?}"),
        }
        match OpExpr::parse("L1 & ") {
            Err(Error::Syntax { pos, msg }) => {
                assert_eq!(pos, 5);
                assert!(msg.contains("end of input"));
            }
            other => panic!("{other:?}"),
        }
        for bad in [
            "",
            "L",
            "root[](L1)",
            "root[2]L1",
            "(L1",
            "L1 L2",
            "Root L1",
            "wheel0",
            "X1",
        ] {
            assert!(OpExpr::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_reparses() {
        for s in [
            "(root[2](L1) | L2) & !L3",
            "!(L1 ^ L2)",
            "Root(!L1 & root[0](L2))",
            "wheel1 | !!L1",
        ] {
            let e = parse(s);
            assert_eq!(parse(&e.to_string()), e, "{s} -> {e}");
        }
        assert_eq!(
            EPredicate::parse_expr("root[2](L1)").unwrap().name(),
            "root[2](L1)"
        );
    }

    #[test]
    fn explicit_membership() {
        let p = EPredicate::explicit(2, [chi("(01),(10)")]).unwrap();
        let swap = TransFn::new(vec![1, 0]).unwrap();
        let t = TransTuple::new(vec![swap.clone(), swap]).unwrap();
        let c = CharTuple::of(&t, &[0, 0], &[&[false, true], &[true, false]]).unwrap();
        assert!(p.contains(&c).unwrap());
        assert!(!p.contains(&chi("(10),(01)")).unwrap());
        assert!(matches!(
            p.contains(&chi("(0)")),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn root_star_examples() {
        let p = EPredicate::parse_expr("Root(L1)").unwrap();
        assert!(!p.contains(&chi("(0)")).unwrap());
        assert!(p.contains(&chi("0(1)")).unwrap());
        // only index 0 set: no positive exponent hits it
        assert!(!p.contains(&chi("1(0)")).unwrap());
        // set at index 6 only within a long prefix
        assert!(p.contains(&chi("0000001(0)")).unwrap());
        assert!(matches!(
            p.contains_with_limit(&chi("0000001(0)"), 3),
            Err(Error::BoundOverflow {
                needed: 8,
                limit: 3
            })
        ));
    }

    #[test]
    fn wheel_examples() {
        let w1 = EPredicate::wheel(1).unwrap();
        assert!(w1.contains(&chi("(0)")).unwrap());
        assert!(w1.contains(&chi("0(1)")).unwrap());
        assert!(!w1.contains(&chi("(01)")).unwrap());
        let w2 = EPredicate::wheel(2).unwrap();
        assert!(!w2.contains(&chi("(0),(0)")).unwrap());
        assert!(w2.contains(&chi("(0),0(1)")).unwrap());
        assert!(w2.contains(&chi("0(1),0(1)")).unwrap());
        assert!(!w2.contains(&chi("(1),0(1)")).unwrap());
        assert!(EPredicate::wheel(0).is_err());
    }

    #[test]
    fn eset_files() {
        let p = EPredicate::explicit_from_file("eset v1 k=1\n(0)\n0(1)\n# dup\n0(11)\n").unwrap();
        match &p {
            EPredicate::Explicit { members, .. } => assert_eq!(members.len(), 2),
            _ => unreachable!(),
        }
        let w1 = EPredicate::wheel(1).unwrap();
        for s in ["(0)", "0(1)", "(01)", "(1)", "1(0)", "00(1)"] {
            assert_eq!(
                p.contains(&chi(s)).unwrap(),
                w1.contains(&chi(s)).unwrap(),
                "{s}"
            );
        }
        let empty = EPredicate::explicit_from_file("eset v1 k=2\n").unwrap();
        assert!(!empty.contains(&chi("(0),(0)")).unwrap());
        assert_eq!(
            EPredicate::explicit_from_file(&p.to_eset_file().unwrap()).unwrap(),
            p
        );

        for bad in [
            "",
            "eset v2 k=1\n",
            "eset v1\n",
            "eset v1 k=0\n",
            "eset v1 k=1\n(0),(0)\n",
            "eset v1 k=1\n(2)\n",
        ] {
            assert!(EPredicate::explicit_from_file(bad).is_err(), "{bad:?}");
        }
        match EPredicate::explicit_from_file("eset v1 k=1\n(0)\nxx\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oracle_examples() {
        let a = fig1();
        let sqrt = EPredicate::parse_expr("root[2](L1)").unwrap();
        assert!(word_oracle(&sqrt, std::slice::from_ref(&a), &["b"]).unwrap());
        assert!(!word_oracle(&sqrt, std::slice::from_ref(&a), &["a"]).unwrap());
        let id = EPredicate::parse_expr("L1").unwrap();
        for w in [
            vec![],
            vec!["a"],
            vec!["a", "b"],
            vec!["b", "a"],
            vec!["a", "a", "a"],
        ] {
            assert_eq!(
                word_oracle(&id, std::slice::from_ref(&a), &w).unwrap(),
                a.accepts(&w).unwrap()
            );
        }
        assert!(matches!(
            word_oracle(&sqrt, std::slice::from_ref(&a), &["z"]),
            Err(Error::UnknownLetter(_))
        ));
        assert!(matches!(
            word_oracle(&sqrt, &[a.clone(), a], &["a"]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn oracle_agrees_with_sqrt_figure() {
        let a = fig1();
        // square-root automaton of fig1, states [01],[10],[00],[11]
        let fig2 = Dfa::new(
            vec!["a".into(), "b".into()],
            4,
            0,
            [3],
            vec![vec![1, 0, 3, 2], vec![3, 3, 3, 3]],
        )
        .unwrap();
        let sqrt = EPredicate::parse_expr("root[2](L1)").unwrap();
        let mut words: Vec<Vec<&str>> = vec![vec![]];
        let mut layer = words.clone();
        for _ in 0..6 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    ["a", "b"].map(|x| {
                        let mut w = w.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
            words.extend(layer.iter().cloned());
        }
        for w in words {
            assert_eq!(
                word_oracle(&sqrt, std::slice::from_ref(&a), &w).unwrap(),
                fig2.accepts(&w).unwrap(),
                "{w:?}"
            );
        }
    }

    fn arb_seq() -> impl Strategy<Value = UPSeq> {
        (
            proptest::collection::vec(any::<bool>(), 0..5),
            proptest::collection::vec(any::<bool>(), 1..6),
        )
            .prop_map(|(p, r)| UPSeq::canonicalize(p, r).unwrap())
    }

    fn arb_expr(arity: usize) -> impl Strategy<Value = OpExpr> {
        let leaf = (1..=arity).prop_map(OpExpr::Arg);
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|e| OpExpr::Not(Box::new(e))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OpExpr::And(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OpExpr::Or(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| OpExpr::Xor(Box::new(a), Box::new(b))),
                (0usize..4, inner.clone()).prop_map(|(m, e)| OpExpr::Root(m, Box::new(e))),
                inner.prop_map(|e| OpExpr::RootStar(Box::new(e))),
            ]
        })
    }

    /// Root(e) evaluated by scanning exponents up to an explicit bound.
    fn eval_wide(e: &OpExpr, chi: &CharTuple, factor: usize) -> bool {
        match e {
            OpExpr::Arg(j) => chi.components()[j - 1].at(1),
            OpExpr::Not(x) => !eval_wide(x, chi, factor),
            OpExpr::And(a, b) => eval_wide(a, chi, factor) && eval_wide(b, chi, factor),
            OpExpr::Or(a, b) => eval_wide(a, chi, factor) || eval_wide(b, chi, factor),
            OpExpr::Xor(a, b) => eval_wide(a, chi, factor) != eval_wide(b, chi, factor),
            OpExpr::Root(m, x) => eval_wide(x, &chi.scale(*m), factor),
            OpExpr::RootStar(x) => {
                let a = chi
                    .components()
                    .iter()
                    .map(|u| u.prefix().len())
                    .max()
                    .unwrap();
                let c = chi
                    .components()
                    .iter()
                    .fold(1, |acc, u| lcm(acc, u.period().len()));
                (1..=factor * (a + c)).any(|p| eval_wide(x, &chi.scale(p), factor))
            }
            OpExpr::Wheel(k) => in_wheel(&chi.components()[..*k]),
        }
    }

    proptest! {
        #[test]
        fn root_star_bound_is_sound(e in arb_expr(2), u in arb_seq(), v in arb_seq()) {
            let chi = CharTuple::new(vec![u, v]).unwrap();
            let got = e.eval(&chi, DEFAULT_ROOT_SCAN_LIMIT).unwrap();
            prop_assert_eq!(got, eval_wide(&e, &chi, 4));
        }

        #[test]
        fn wheel1_matches_its_boolean_characterization(u in arb_seq()) {
            let chi = CharTuple::new(vec![u]).unwrap();
            let expr = EPredicate::parse_expr("(!root[0](L1) & !Root(L1)) | (!root[0](L1) & !Root(!L1))").unwrap();
            prop_assert_eq!(
                EPredicate::wheel(1).unwrap().contains(&chi).unwrap(),
                expr.contains(&chi).unwrap()
            );
        }

        #[test]
        fn explicit_singletons_separate_distinct_tuples(u in arb_seq(), v in arb_seq(), u2 in arb_seq(), v2 in arb_seq()) {
            let t = CharTuple::new(vec![u, v]).unwrap();
            let t2 = CharTuple::new(vec![u2, v2]).unwrap();
            prop_assume!(t != t2);
            let dfas: Vec<Dfa> = t.components().iter().map(UPSeq::to_unary_dfa).collect();
            let p = EPredicate::explicit(2, [t.clone()]).unwrap();
            let p2 = EPredicate::explicit(2, [t2]).unwrap();
            prop_assert!(word_oracle(&p, &dfas, &["a"]).unwrap());
            prop_assert!(!word_oracle(&p2, &dfas, &["a"]).unwrap());
        }
    }
}
