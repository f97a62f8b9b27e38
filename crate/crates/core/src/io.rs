//! Text formats for graphs and semigroups, and report rendering.
//!
//! Both formats are a free-form stream of integers: a two-number header
//! followed by a row-major matrix. Graph files hold `alphabet_size
//! node_count` and then one row of successors per node, `-1` marking an
//! undefined transition. Semigroup files hold `element_count
//! generator_count` and then one row of products `x·gen` per element, the
//! generators being the first elements. Any whitespace-separated token
//! without a decimal digit is a comment and is skipped; a token mixing digits
//! with other characters is an error.

use std::fmt::Write as _;

use crate::error::{Error, Result, TokenPos};
use crate::model::{
    format_word, FiniteSemigroup, Holds, OrderResult, PropertyReport, TransitionGraph, Verdict,
    Witness,
};

#[derive(Debug, Clone, Copy)]
struct Number {
    value: i64,
    pos: TokenPos,
}

fn numbers(text: &str) -> Result<Vec<Number>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let mut start = None;
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        for i in 0..=chars.len() {
            let boundary = i == chars.len() || chars[i].1.is_whitespace();
            match (start, boundary) {
                (None, false) => start = Some(i),
                (Some(s), true) => {
                    let token: String = chars[s..i].iter().map(|&(_, c)| c).collect();
                    let pos = TokenPos {
                        line: line_no + 1,
                        column: s + 1,
                        index: out.len(),
                    };
                    if token.chars().any(|c| c.is_ascii_digit()) {
                        let value = token
                            .parse::<i64>()
                            .map_err(|_| Error::BadToken { token, pos })?;
                        out.push(Number { value, pos });
                    }
                    start = None;
                }
                _ => {}
            }
        }
    }
    Ok(out)
}

fn header(nums: &[Number]) -> Result<(Number, Number)> {
    match nums {
        [a, b, ..] => Ok((*a, *b)),
        _ => Err(Error::TooFewNumbers {
            expected: 2,
            found: nums.len(),
        }),
    }
}

fn body(nums: &[Number], rows: usize, columns: usize) -> Result<&[Number]> {
    let expected = 2 + rows * columns;
    if nums.len() < expected {
        return Err(Error::TooFewNumbers {
            expected,
            found: nums.len(),
        });
    }
    Ok(&nums[2..expected])
}

pub fn parse_graph(text: &str) -> Result<TransitionGraph> {
    let nums = numbers(text)?;
    let (a, g) = header(&nums)?;
    for h in [a, g] {
        if h.value <= 0 {
            return Err(Error::NonpositiveHeader {
                value: h.value,
                pos: h.pos,
            });
        }
    }
    let (a, g) = (a.value as usize, g.value as usize);
    let cells = body(&nums, g, a)?;
    let mut delta = Vec::with_capacity(cells.len());
    for (i, cell) in cells.iter().enumerate() {
        if cell.value < -1 || cell.value >= g as i64 {
            return Err(Error::CellOutOfRange {
                row: i / a,
                column: i % a,
                value: cell.value,
                min: -1,
                limit: g,
                pos: cell.pos,
            });
        }
        delta.push((cell.value >= 0).then_some(cell.value as usize));
    }
    TransitionGraph::new(a, g, delta)
}

/// Parses Cayley rows and validates closure and associativity.
pub fn parse_semigroup(text: &str) -> Result<FiniteSemigroup> {
    let nums = numbers(text)?;
    let (n, g) = header(&nums)?;
    if n.value <= 0 || g.value <= 0 || g.value > n.value {
        return Err(Error::HeaderInconsistent {
            elements: n.value,
            generators: g.value,
        });
    }
    let (n, g) = (n.value as usize, g.value as usize);
    let cells = body(&nums, n, g)?;
    let mut cayley = Vec::with_capacity(cells.len());
    for (i, cell) in cells.iter().enumerate() {
        if cell.value < 0 || cell.value >= n as i64 {
            return Err(Error::CellOutOfRange {
                row: i / g,
                column: i % g,
                value: cell.value,
                min: 0,
                limit: n,
                pos: cell.pos,
            });
        }
        cayley.push(cell.value as usize);
    }
    FiniteSemigroup::new(n, g, cayley)
}

fn write_rows(out: &mut String, header: (usize, usize), rows: impl Iterator<Item = Vec<String>>) {
    let _ = writeln!(out, "{} {}", header.0, header.1);
    for row in rows {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

pub fn write_graph(gr: &TransitionGraph) -> String {
    let mut out = String::new();
    let rows = (0..gr.node_count()).map(|p| {
        gr.row(p)
            .iter()
            .map(|c| c.map_or("-1".to_string(), |t| t.to_string()))
            .collect()
    });
    write_rows(&mut out, (gr.alphabet_size(), gr.node_count()), rows);
    out
}

pub fn write_semigroup(s: &FiniteSemigroup) -> String {
    let mut out = String::new();
    let rows = (0..s.len()).map(|x| s.cayley_row(x).map(|v| v.to_string()).collect());
    write_rows(&mut out, (s.len(), s.generator_count()), rows);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    /// Pretty-printed JSON with a fixed key order.
    Machine,
}

fn holds_text(holds: &Holds) -> String {
    match holds {
        Holds::Yes => "yes".into(),
        Holds::No => "no".into(),
        Holds::Unknown(reason) => format!("unknown ({reason})"),
    }
}

fn witness_text(v: &Verdict, alphabet_size: usize) -> Option<String> {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let text = match v.witness.as_ref()? {
        Witness::Elements(xs) => format!("elements ({})", join(xs)),
        Witness::Words(words) => {
            let words: Vec<String> = words
                .iter()
                .map(|w| format_word(w, alphabet_size))
                .collect();
            match &v.elements {
                Some(xs) => format!("words {} = elements ({})", words.join(", "), join(xs)),
                None => format!("words {}", words.join(", ")),
            }
        }
        Witness::Labels {
            first,
            second,
            node,
        } => format!(
            "labels {}, {} at node {node}",
            format_word(&[*first], alphabet_size),
            format_word(&[*second], alphabet_size)
        ),
    };
    Some(text)
}

fn order_text(order: &OrderResult) -> String {
    match order {
        OrderResult::Found { k, t: 1 } => k.to_string(),
        OrderResult::Found { k, t } => format!("{k} (t={t})"),
        OrderResult::NoneUpTo { k_max, .. } => format!("none <= {k_max} (lower bound {k_max})"),
        OrderResult::Unknown {
            reason,
            lower_bound,
            ..
        } => format!("unknown ({reason}; lower bound {lower_bound})"),
    }
}

pub fn render_report(r: &PropertyReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Machine => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(r),
    }
}

fn render_text(r: &PropertyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", r.input);
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    let st = &r.statistics;
    if let (Some(nodes), Some(labels)) = (st.nodes, st.labels) {
        let _ = writeln!(out, "nodes: {nodes}, labels: {labels}");
    }
    if st.elements > 0 {
        let _ = writeln!(
            out,
            "elements: {}, generators: {}, idempotents: {}",
            st.elements, st.generators, st.idempotents
        );
    }
    for v in &r.verdicts {
        let _ = write!(out, "{} = {}", v.property, holds_text(&v.holds));
        if let Some(w) = witness_text(v, r.alphabet_size) {
            let _ = write!(out, "  witness: {w}");
        }
        out.push('\n');
    }
    if let Some(order) = &r.order {
        let _ = writeln!(out, "order = {}", order_text(order));
    }
    if let Some(order) = &r.threshold_order {
        let _ = writeln!(out, "threshold_order = {}", order_text(order));
    }
    if st.profile_states > 0 {
        let _ = writeln!(out, "profile_states: {}", st.profile_states);
    }
    out
}
