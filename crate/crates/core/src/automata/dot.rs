use std::collections::BTreeMap;
use std::fmt::Write;

use super::Dfa;

/// Graphviz rendering with nodes named by state id.
pub fn to_dot(d: &Dfa) -> String {
    render(d, None)
}

/// Like [`to_dot`], with `labels[q]` shown as the label of state `q`.
pub fn to_dot_with_labels(d: &Dfa, labels: &[String]) -> String {
    render(d, Some(labels))
}

fn render(d: &Dfa, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph dfa {\n    rankdir=LR;\n    node [shape=circle];\n");
    out.push_str("    __start [shape=point];\n");
    let _ = writeln!(out, "    __start -> {};", d.initial());
    for q in 0..d.n_states() {
        let mut attrs = Vec::new();
        if d.is_final(q) {
            attrs.push("shape=doublecircle".to_string());
        }
        if let Some(l) = labels.and_then(|l| l.get(q)) {
            attrs.push(format!("label=\"{}\"", escape(l)));
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "    {q};");
        } else {
            let _ = writeln!(out, "    {q} [{}];", attrs.join(", "));
        }
    }
    // merge parallel edges into one labelled edge
    let mut edges: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for (a, tok) in d.alphabet().iter().enumerate() {
        for (q, &r) in d.row(a).iter().enumerate() {
            edges.entry((q, r)).or_default().push(tok);
        }
    }
    for ((q, r), toks) in edges {
        let _ = writeln!(
            out,
            "    {q} -> {r} [label=\"{}\"];",
            escape(&toks.join(","))
        );
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
