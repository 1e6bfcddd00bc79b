//! State-complexity measurements on monster witnesses and structural audits
//! of the minimal automata.

use std::collections::BTreeMap;
use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::{minimize, nerode_classes, print_dfa, Dfa, MinimizeAlgo};
use crate::error::{Error, Result};
use crate::friendly::{word_oracle, EPredicate, OpExpr};
use crate::gen::{random_char_tuple, random_dfa, random_predicate};
use crate::modifiers::{build_standard, build_standard_labeled, BuildMode, DEFAULT_MAX_STATES};
use crate::monsters::{monster, AlphabetKind, MonsterSpec};
use crate::transforms::{tuple_space_size, TransFn, TransTuple};

/// Shared settings for experiment runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub max_states: usize,
    /// Also minimize with Moore's algorithm and compare outputs.
    pub cross_check: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            max_states: DEFAULT_MAX_STATES,
            cross_check: false,
        }
    }
}

/// Minimizes with Hopcroft and, if asked, checks Moore gives the same output.
fn minimize_checked(d: &Dfa, settings: &Settings, disagreements: &mut usize) -> Dfa {
    let h = minimize(d, MinimizeAlgo::Hopcroft);
    if settings.cross_check && print_dfa(&h) != print_dfa(&minimize(d, MinimizeAlgo::Moore)) {
        *disagreements += 1;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScRow {
    pub op_name: String,
    pub sizes: Vec<usize>,
    pub sc: u64,
    pub predicted: Option<u64>,
    pub matched: Option<bool>,
    /// Number of minimizer disagreements seen (always 0 without cross-checking).
    pub minimizer_disagreements: usize,
}

/// A requested table row.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpec {
    pub pred: EPredicate,
    pub sizes: Vec<usize>,
    pub kind: AlphabetKind,
}

/// Closed-form state complexity of `pred` on `sizes`, where known.
pub fn predicted_sc(pred: &EPredicate, sizes: &[usize]) -> Option<u64> {
    let pow = |n: usize| (n as u64).checked_pow(n as u32);
    let wheel = |k: usize| -> Option<u64> {
        if k != sizes.len() {
            return None;
        }
        if k == 1 {
            let n = sizes[0];
            return pow(n).map(|p| p - n as u64 + 1);
        }
        let total = tuple_space_size(sizes);
        u64::try_from(total).ok().filter(|&t| t != u64::MAX)
    };
    match pred {
        EPredicate::Wheel(k) => wheel(*k),
        EPredicate::Compiled { arity, expr } => match expr {
            OpExpr::Wheel(k) if k == arity => wheel(*k),
            OpExpr::Root(2, e) if **e == OpExpr::Arg(1) && *arity == 1 && sizes.len() == 1 => {
                let n = sizes[0] as u64;
                pow(sizes[0]).map(|p| p - n * (n - 1) / 2)
            }
            _ => None,
        },
        EPredicate::Explicit { .. } => None,
    }
}

/// Minimal state count of `pred` applied to the monster of the given sizes.
pub fn sc_on_witness(
    pred: &EPredicate,
    sizes: &[usize],
    kind: AlphabetKind,
    settings: &Settings,
) -> Result<ScRow> {
    let spec = MonsterSpec::new(sizes.to_vec(), kind)?;
    let dfas = monster(&spec, settings.max_states)?;
    let built = build_standard(
        pred,
        &dfas,
        BuildMode::accessible().with_cap(settings.max_states),
    )?;
    let mut disagreements = 0;
    let sc = minimize_checked(&built, settings, &mut disagreements).n_states() as u64;
    let predicted = predicted_sc(pred, sizes);
    Ok(ScRow {
        op_name: pred.name(),
        sizes: sizes.to_vec(),
        sc,
        predicted,
        matched: predicted.map(|p| p == sc),
        minimizer_disagreements: disagreements,
    })
}

/// Runs rows concurrently; output order follows `rows`.
pub fn run_rows(rows: &[RowSpec], settings: &Settings) -> Result<Vec<ScRow>> {
    rows.par_iter()
        .map(|r| sc_on_witness(&r.pred, &r.sizes, r.kind, settings))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            other => Err(Error::InvalidArgument(format!(
                "unknown format '{other}', expected csv or md"
            ))),
        }
    }
}

pub fn render_sizes(sizes: &[usize]) -> String {
    sizes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("x")
}

pub fn sc_table(rows: &[ScRow], format: TableFormat) -> String {
    let cells = |r: &ScRow| {
        [
            r.op_name.clone(),
            render_sizes(&r.sizes),
            r.sc.to_string(),
            r.predicted.map(|p| p.to_string()).unwrap_or_default(),
            r.matched.map(|m| m.to_string()).unwrap_or_default(),
        ]
    };
    let header = ["op", "sizes", "sc", "predicted", "match"];
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for r in rows {
                let row: Vec<String> = cells(r).iter().map(|c| csv_field(c)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in rows {
                let row: Vec<String> = cells(r).iter().map(|c| c.replace('|', "\\|")).collect();
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundAuditRow {
    pub n: usize,
    pub trials: usize,
    pub bound: u64,
    pub max_observed: u64,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundAudit {
    pub seed: u64,
    pub rows: Vec<BoundAuditRow>,
    pub minimizer_disagreements: usize,
}

impl BoundAudit {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.violations.is_empty())
    }
}

/// For each `n` in `1..=max_n`, `trials` random unary predicates on random
/// `n`-state DFAs; checks the minimal size never exceeds `n^n − n + 1`.
pub fn unary_bound_audit(
    trials: usize,
    max_n: usize,
    seed: u64,
    settings: &Settings,
) -> Result<BoundAudit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut disagreements = 0;
    for n in 1..=max_n {
        let bound = (n as u64).pow(n as u32) - n as u64 + 1;
        let mut row = BoundAuditRow {
            n,
            trials,
            bound,
            max_observed: 0,
            violations: Vec::new(),
        };
        for _ in 0..trials {
            let pred = random_predicate(&mut rng, 1, 4);
            let letters = rng.gen_range(1..=3);
            let a = random_dfa(&mut rng, n, &["a", "b", "c"][..letters]);
            let built = build_standard(
                &pred,
                std::slice::from_ref(&a),
                BuildMode::accessible().with_cap(settings.max_states),
            )?;
            let sc = minimize_checked(&built, settings, &mut disagreements).n_states() as u64;
            row.max_observed = row.max_observed.max(sc);
            if sc > bound {
                row.violations
                    .push(format!("{} on\n{}", pred.name(), print_dfa(&a)));
            }
        }
        rows.push(row);
    }
    Ok(BoundAudit {
        seed,
        rows,
        minimizer_disagreements: disagreements,
    })
}

/// `g_{s,t}`: `j ↦ s` for `j ∈ F`, `j ↦ t` otherwise.
pub fn g_st(finals: &[bool], s: usize, t: usize) -> TransFn {
    TransFn::new(finals.iter().map(|&f| if f { s } else { t }).collect()).expect("s, t < n")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GstAudit {
    pub n: usize,
    pub classes: usize,
    pub bound: usize,
    pub minimizer_disagreements: usize,
}

impl GstAudit {
    pub fn passed(&self) -> bool {
        self.classes <= self.bound
    }
}

/// Counts the Nerode classes met by the `n²` functions `g_{s,t}` in the
/// full standard construction of a unary predicate on `a`.
pub fn gst_class_audit(pred: &EPredicate, a: &Dfa, settings: &Settings) -> Result<GstAudit> {
    if pred.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: pred.arity(),
        });
    }
    let n = a.n_states();
    let built = build_standard(
        pred,
        std::slice::from_ref(a),
        BuildMode::full().with_cap(settings.max_states),
    )?;
    let mut disagreements = 0;
    minimize_checked(&built, settings, &mut disagreements);
    let classes = nerode_classes(&built, MinimizeAlgo::Hopcroft);
    let finals: Vec<bool> = (0..n).map(|q| a.is_final(q)).collect();
    let mut met: Vec<usize> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .map(|(s, t)| {
            let g = TransTuple::new(vec![g_st(&finals, s, t)]).expect("one component");
            classes[g.mixed_radix_index()]
        })
        .collect();
    met.sort_unstable();
    met.dedup();
    Ok(GstAudit {
        n,
        classes: met.len(),
        bound: n * n - n + 1,
        minimizer_disagreements: disagreements,
    })
}

/// Runs [`gst_class_audit`] on `cases` random unary predicates and random
/// DFAs with `1..=max_n` states whose initial state is not final.
pub fn gst_audit_random(
    cases: usize,
    max_n: usize,
    seed: u64,
    settings: &Settings,
) -> Result<Vec<GstAudit>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..cases)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            let pred = random_predicate(&mut rng, 1, 4);
            let a = random_dfa(&mut rng, n, &["a", "b"]);
            let finals: Vec<usize> = a.finals().filter(|&q| q != a.initial()).collect();
            let a = Dfa::new(
                a.alphabet().to_vec(),
                n,
                a.initial(),
                finals,
                (0..a.alphabet().len()).map(|l| a.row(l).to_vec()).collect(),
            )?;
            gst_class_audit(&pred, &a, settings)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishabilityReport {
    pub n: usize,
    pub total_classes: usize,
    /// Sizes of the classes with more than one state.
    pub multi_state_classes: Vec<usize>,
    pub singleton_classes: usize,
    /// Whether the only multi-state class is exactly the constant maps.
    pub constants_form_the_merged_class: bool,
    pub minimizer_disagreements: usize,
}

impl DistinguishabilityReport {
    pub fn passed(&self) -> bool {
        let n = self.n as u64;
        let expected = (n.pow(self.n as u32) - n + 1) as usize;
        let merged_ok = if self.n == 1 {
            self.multi_state_classes.is_empty()
        } else {
            self.multi_state_classes == [self.n] && self.constants_form_the_merged_class
        };
        self.total_classes == expected && merged_ok
    }
}

/// Inspects the Nerode classes of the wheel construction on the `n`-state
/// generator monster: the constants should collapse to one class and every
/// other map stay alone.
pub fn distinguishability_audit(n: usize, settings: &Settings) -> Result<DistinguishabilityReport> {
    let spec = MonsterSpec::new(vec![n], AlphabetKind::Generators)?;
    let dfas = monster(&spec, settings.max_states)?;
    let built = build_standard_labeled(
        &EPredicate::wheel(1)?,
        &dfas,
        BuildMode::accessible().with_cap(settings.max_states),
    )?;
    let mut disagreements = 0;
    minimize_checked(&built.dfa, settings, &mut disagreements);
    let classes = nerode_classes(&built.dfa, MinimizeAlgo::Hopcroft);
    let mut members: BTreeMap<usize, Vec<&TransFn>> = BTreeMap::new();
    for (q, &c) in classes.iter().enumerate() {
        members
            .entry(c)
            .or_default()
            .push(built.states[q].component(0));
    }
    let multi: Vec<&Vec<&TransFn>> = members.values().filter(|m| m.len() > 1).collect();
    Ok(DistinguishabilityReport {
        n,
        total_classes: members.len(),
        multi_state_classes: multi.iter().map(|m| m.len()).collect(),
        singleton_classes: members.values().filter(|m| m.len() == 1).count(),
        constants_form_the_merged_class: multi.len() == 1
            && multi[0].iter().all(|f| f.is_constant()),
        minimizer_disagreements: disagreements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub seed: u64,
    pub pairs: usize,
    pub failures: Vec<String>,
}

/// For random distinct tuples `u ≠ u'`, checks the one-letter word is in
/// `op({u})` but not in `op({u'})` on the unary witness languages of `u`.
pub fn injectivity_probe(pairs: usize, seed: u64) -> Result<InjectivityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < pairs {
        let k = rng.gen_range(1..=3);
        let u = random_char_tuple(&mut rng, k, 3, 3);
        let v = random_char_tuple(&mut rng, k, 3, 3);
        if u == v {
            continue;
        }
        done += 1;
        let dfas: Vec<Dfa> = u.components().iter().map(|s| s.to_unary_dfa()).collect();
        let in_u = word_oracle(&EPredicate::explicit(k, [u.clone()])?, &dfas, &["a"])?;
        let in_v = word_oracle(&EPredicate::explicit(k, [v.clone()])?, &dfas, &["a"])?;
        if !in_u || in_v {
            failures.push(format!("u=<{u}> u'=<{v}>"));
        }
    }
    Ok(InjectivityReport {
        seed,
        pairs,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::fixtures::fig1;

    fn s() -> Settings {
        Settings {
            cross_check: true,
            ..Settings::default()
        }
    }

    #[test]
    fn witness_rows() {
        let wheel1 = EPredicate::wheel(1).unwrap();
        let row = sc_on_witness(&wheel1, &[3], AlphabetKind::Generators, &s()).unwrap();
        assert_eq!(
            (row.sc, row.predicted, row.matched),
            (25, Some(25), Some(true))
        );
        assert_eq!(row.minimizer_disagreements, 0);
        let row = sc_on_witness(
            &EPredicate::wheel(2).unwrap(),
            &[2, 2],
            AlphabetKind::Generators,
            &s(),
        )
        .unwrap();
        assert_eq!((row.sc, row.predicted), (16, Some(16)));
        let sqrt = EPredicate::parse_expr("root[2](L1)").unwrap();
        let row = sc_on_witness(&sqrt, &[3], AlphabetKind::Full, &s()).unwrap();
        assert_eq!((row.sc, row.predicted), (24, Some(24)));
        let root = EPredicate::parse_expr("Root(L1)").unwrap();
        let row = sc_on_witness(&root, &[2], AlphabetKind::Generators, &s()).unwrap();
        assert_eq!((row.predicted, row.matched), (None, None));
    }

    #[test]
    fn predictions() {
        let p = |e: &str| EPredicate::parse_expr(e).unwrap();
        assert_eq!(
            predicted_sc(&EPredicate::wheel(1).unwrap(), &[4]),
            Some(253)
        );
        assert_eq!(predicted_sc(&p("wheel1"), &[5]), Some(3121));
        assert_eq!(
            predicted_sc(&EPredicate::wheel(2).unwrap(), &[2, 3]),
            Some(108)
        );
        assert_eq!(predicted_sc(&EPredicate::wheel(2).unwrap(), &[2]), None);
        assert_eq!(predicted_sc(&p("root[2](L1)"), &[4]), Some(250));
        assert_eq!(predicted_sc(&p("root[3](L1)"), &[4]), None);
        assert_eq!(predicted_sc(&p("L1"), &[4]), None);
    }

    #[test]
    fn tables() {
        let rows: Vec<RowSpec> = (2..=4)
            .map(|n| RowSpec {
                pred: EPredicate::wheel(1).unwrap(),
                sizes: vec![n],
                kind: AlphabetKind::Generators,
            })
            .collect();
        let out = run_rows(&rows, &Settings::default()).unwrap();
        assert_eq!(out.iter().map(|r| r.sc).collect::<Vec<_>>(), [3, 25, 253]);
        let csv = sc_table(&out, TableFormat::Csv);
        assert_eq!(
            csv,
            "op,sizes,sc,predicted,match\nwheel1,2,3,3,true\nwheel1,3,25,25,true\nwheel1,4,253,253,true\n"
        );
        let md = sc_table(&out, TableFormat::Markdown);
        assert!(md.starts_with("| op | sizes | sc | predicted | match |\n|---|---|---|---|---|\n"));
        assert!(md.contains("| wheel1 | 4 | 253 | 253 | true |"));
        assert_eq!(
            sc_table(&[], TableFormat::Csv),
            "op,sizes,sc,predicted,match\n"
        );
        assert_eq!(render_sizes(&[2, 3]), "2x3");
    }

    #[test]
    fn csv_quotes_names_with_commas() {
        let row = ScRow {
            op_name: "eset{<(0),(1)>}".into(),
            sizes: vec![1, 1],
            sc: 1,
            predicted: None,
            matched: None,
            minimizer_disagreements: 0,
        };
        assert!(sc_table(&[row], TableFormat::Csv).ends_with("\"eset{<(0),(1)>}\",1x1,1,,\n"));
    }

    #[test]
    fn small_bound_audit() {
        let audit = unary_bound_audit(20, 3, 7, &s()).unwrap();
        assert!(audit.passed());
        assert_eq!(audit.rows[0].max_observed, 1);
        assert!(audit.rows.iter().all(|r| r.max_observed <= r.bound));
        assert_eq!(audit.minimizer_disagreements, 0);
    }

    #[test]
    fn gst_on_fig1() {
        let r = gst_class_audit(&EPredicate::wheel(1).unwrap(), &fig1(), &s()).unwrap();
        assert_eq!(r.bound, 3);
        assert!(r.passed(), "{r:?}");
        let one = Dfa::new(vec!["a".into()], 1, 0, [], vec![vec![0]]).unwrap();
        let r = gst_class_audit(&EPredicate::parse_expr("Root(L1)").unwrap(), &one, &s()).unwrap();
        assert_eq!((r.classes, r.bound), (1, 1));
        assert!(gst_audit_random(10, 3, 1, &s())
            .unwrap()
            .iter()
            .all(GstAudit::passed));
    }

    #[test]
    fn gst_functions() {
        let g = g_st(&[false, true, true], 2, 0);
        assert_eq!(g.images(), [0, 2, 2]);
    }

    #[test]
    fn distinguishability() {
        let r = distinguishability_audit(2, &s()).unwrap();
        assert_eq!(r.total_classes, 3);
        assert_eq!(r.multi_state_classes, [2]);
        assert!(r.passed());
        let r = distinguishability_audit(3, &s()).unwrap();
        assert_eq!((r.total_classes, r.singleton_classes), (25, 24));
        assert!(r.passed());
        let r = distinguishability_audit(1, &s()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn injectivity() {
        let r = injectivity_probe(30, 5).unwrap();
        assert_eq!(r.pairs, 30);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }
}
