//! Plain, JSON and LaTeX renderings of a result record.

use serde::Serialize;

use crate::record::{ResultRecord, Term, VariableNames};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

#[derive(Serialize)]
struct Params {
    n: Option<u32>,
    g: u32,
    l: Option<u32>,
}

/// Stdout JSON document. Wall time is left out so output is byte-stable.
#[derive(Serialize)]
struct JsonOutput<'a> {
    schema: u32,
    group: &'a str,
    params: Params,
    variable: &'a VariableNames,
    terms: &'a [Term],
    provenance: &'a str,
}

pub fn render(record: &ResultRecord, format: Format) -> String {
    match format {
        Format::Plain => polynomial(record, Style::Plain),
        Format::Latex => polynomial(record, Style::Latex),
        Format::Json => json(record),
    }
}

pub fn json(record: &ResultRecord) -> String {
    let key = &record.key;
    let doc = JsonOutput {
        schema: key.schema,
        group: &key.group,
        params: Params {
            n: key.n,
            g: key.g,
            l: key.l,
        },
        variable: &record.variable,
        terms: &record.terms,
        provenance: &record.provenance,
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

#[derive(Clone, Copy)]
enum Style {
    Plain,
    Latex,
}

fn monomial(names: &[&str], exps: &[u32], style: Style) -> String {
    let factors: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e > 0)
        .map(|(v, e)| match (style, e) {
            (_, 1) => v.to_string(),
            (Style::Plain, e) => format!("{v}^{e}"),
            (Style::Latex, e) => format!("{v}^{{{e}}}"),
        })
        .collect();
    factors.join(match style {
        Style::Plain => "*",
        Style::Latex => " ",
    })
}

fn polynomial(record: &ResultRecord, style: Style) -> String {
    let names = record.variable.names();
    let mut out = String::new();
    for (i, (exps, coeff)) in record.terms.iter().enumerate() {
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, coeff.as_str()),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = monomial(&names, exps, style);
        let body = match (magnitude, mono.is_empty(), style) {
            (m, true, _) => m.to_string(),
            ("1", false, _) => mono,
            (m, false, Style::Plain) => format!("{m}*{mono}"),
            (m, false, Style::Latex) => format!("{m} {mono}"),
        };
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
