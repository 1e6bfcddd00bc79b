//! The line-oriented `dfa v1` text format.
//!
//! ```text
//! dfa v1
//! alphabet a b
//! states 2
//! initial 0
//! final 1
//! trans a: 1 0
//! trans b: 1 1
//! ```
//!
//! `#` starts a comment. Every letter needs exactly one `trans` row; rows may
//! come in any order. Partial rows are rejected, never completed with a sink.

use std::collections::HashMap;
use std::fmt::Write;

use super::{validate_token, Dfa};
use crate::error::{Error, Result};

pub fn print_dfa(d: &Dfa) -> String {
    let mut out = String::from("dfa v1\n");
    let _ = writeln!(out, "alphabet {}", d.alphabet().join(" "));
    let _ = writeln!(out, "states {}", d.n_states());
    let _ = writeln!(out, "initial {}", d.initial());
    out.push_str("final");
    for q in d.finals() {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for (a, tok) in d.alphabet().iter().enumerate() {
        let _ = write!(out, "trans {tok}:");
        for q in d.row(a) {
            let _ = write!(out, " {q}");
        }
        out.push('\n');
    }
    out
}

struct Located<T> {
    line: usize,
    value: T,
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "dfa v1")) => {}
        Some((line, other)) => {
            return Err(Error::parse(
                line,
                format!("malformed header '{other}', expected 'dfa v1'"),
            ))
        }
        None => return Err(Error::parse(1, "malformed header: empty document")),
    }

    let mut alphabet: Option<Located<Vec<String>>> = None;
    let mut states: Option<Located<usize>> = None;
    let mut initial: Option<Located<usize>> = None;
    let mut finals: Option<Located<Vec<usize>>> = None;
    let mut rows: Vec<Located<(String, Vec<usize>)>> = Vec::new();

    for (line, content) in lines {
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap_or_default();
        match keyword {
            "alphabet" => {
                once(&alphabet, line, keyword)?;
                let letters: Vec<String> = toks.map(str::to_string).collect();
                if letters.is_empty() {
                    return Err(Error::parse(line, "alphabet is empty"));
                }
                for tok in &letters {
                    validate_token(tok)
                        .map_err(|_| Error::parse(line, format!("invalid letter token '{tok}'")))?;
                }
                alphabet = Some(Located {
                    line,
                    value: letters,
                });
            }
            "states" => {
                once(&states, line, keyword)?;
                let n = single_int(toks, line, keyword)?;
                if n == 0 {
                    return Err(Error::parse(line, "states must be positive"));
                }
                states = Some(Located { line, value: n });
            }
            "initial" => {
                once(&initial, line, keyword)?;
                initial = Some(Located {
                    line,
                    value: single_int(toks, line, keyword)?,
                });
            }
            "final" => {
                once(&finals, line, keyword)?;
                let ids = toks.map(|t| int(t, line)).collect::<Result<Vec<_>>>()?;
                finals = Some(Located { line, value: ids });
            }
            "trans" => {
                let head = toks
                    .next()
                    .ok_or_else(|| Error::parse(line, "trans row without a letter"))?;
                let letter = match head.strip_suffix(':') {
                    Some(l) => l.to_string(),
                    None => match toks.next() {
                        Some(":") => head.to_string(),
                        _ => return Err(Error::parse(line, "expected ':' after the letter")),
                    },
                };
                let images = toks.map(|t| int(t, line)).collect::<Result<Vec<_>>>()?;
                rows.push(Located {
                    line,
                    value: (letter, images),
                });
            }
            other => return Err(Error::parse(line, format!("unknown directive '{other}'"))),
        }
    }

    let alphabet = alphabet.ok_or_else(|| Error::parse(0, "missing 'alphabet' line"))?;
    let states = states.ok_or_else(|| Error::parse(0, "missing 'states' line"))?;
    let initial = initial.ok_or_else(|| Error::parse(0, "missing 'initial' line"))?;
    let n = states.value;

    let mut position: HashMap<&str, usize> = HashMap::new();
    for (i, tok) in alphabet.value.iter().enumerate() {
        if position.insert(tok, i).is_some() {
            return Err(Error::parse(
                alphabet.line,
                format!("duplicate letter '{tok}'"),
            ));
        }
    }
    if initial.value >= n {
        return Err(Error::parse(
            initial.line,
            format!("initial state {} out of range 0..{n}", initial.value),
        ));
    }
    let final_ids = match finals {
        Some(f) => {
            if let Some(bad) = f.value.iter().find(|&&q| q >= n) {
                return Err(Error::parse(
                    f.line,
                    format!("final state {bad} out of range 0..{n}"),
                ));
            }
            f.value
        }
        None => Vec::new(),
    };

    let mut trans: Vec<Option<Vec<usize>>> = vec![None; alphabet.value.len()];
    for row in rows {
        let (letter, images) = row.value;
        let a = *position
            .get(letter.as_str())
            .ok_or_else(|| Error::parse(row.line, format!("unknown letter '{letter}'")))?;
        if trans[a].is_some() {
            return Err(Error::parse(
                row.line,
                format!("duplicate transition row for '{letter}'"),
            ));
        }
        if images.len() != n {
            return Err(Error::parse(
                row.line,
                format!(
                    "row for '{letter}' has {} images, expected {n}",
                    images.len()
                ),
            ));
        }
        if let Some(bad) = images.iter().find(|&&q| q >= n) {
            return Err(Error::parse(
                row.line,
                format!("image out of range: {bad} not in 0..{n}"),
            ));
        }
        trans[a] = Some(images);
    }
    let trans = trans
        .into_iter()
        .zip(&alphabet.value)
        .map(|(row, tok)| {
            row.ok_or_else(|| Error::parse(0, format!("missing transition row for '{tok}'")))
        })
        .collect::<Result<Vec<_>>>()?;

    Dfa::new(alphabet.value, n, initial.value, final_ids, trans)
}

fn once<T>(slot: &Option<Located<T>>, line: usize, keyword: &str) -> Result<()> {
    match slot {
        Some(prev) => Err(Error::parse(
            line,
            format!("'{keyword}' repeated (first on line {})", prev.line),
        )),
        None => Ok(()),
    }
}

fn int(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| {
        Error::parse(
            line,
            format!("expected a non-negative integer, found '{tok}'"),
        )
    })
}

fn single_int<'a>(
    mut toks: impl Iterator<Item = &'a str>,
    line: usize,
    keyword: &str,
) -> Result<usize> {
    let value = toks
        .next()
        .ok_or_else(|| Error::parse(line, format!("'{keyword}' needs a value")))?;
    let value = int(value, line)?;
    if toks.next().is_some() {
        return Err(Error::parse(
            line,
            format!("'{keyword}' takes exactly one value"),
        ));
    }
    Ok(value)
}
