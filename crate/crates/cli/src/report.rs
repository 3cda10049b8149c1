//! Text tables and JSON for fusion reports and lattice listings.

use std::fmt::Write;
use std::io;

use dsmt::{Element, Frame, Notation};
use serde_json::{json, Map, Value as Json};

use crate::lattice::LatticeListing;
use crate::run::{Report, RuleResult, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// How numbers are printed: fixed decimals, or full precision when `raw`.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub precision: usize,
    pub raw: bool,
}

impl Default for Style {
    fn default() -> Self {
        Self {
            precision: 6,
            raw: false,
        }
    }
}

impl Style {
    fn number(&self, x: f64) -> String {
        let x = if x == 0.0 { 0.0 } else { x };
        if self.raw {
            format!("{x}")
        } else {
            format!("{x:.p$}", p = self.precision)
        }
    }

    fn json_number(&self, x: f64) -> Json {
        let x = if self.raw {
            x
        } else {
            self.number(x).parse().unwrap_or(x)
        };
        let x = if x == 0.0 { 0.0 } else { x };
        json!(x)
    }

    fn value(&self, v: &Value) -> String {
        match v {
            Value::Number(x) => self.number(*x),
            Value::Set(s) if self.raw => s.to_string(),
            Value::Set(s) => s.to_string_with_precision(self.precision),
            Value::Triple(t) if self.raw => t.to_string(),
            Value::Triple(t) => t.to_string_with_precision(self.precision),
        }
    }

    fn json_value(&self, v: &Value) -> Json {
        match v {
            Value::Number(x) => self.json_number(*x),
            Value::Set(_) => Json::String(self.value(v)),
            Value::Triple(t) => match t.as_points() {
                Some((a, b, c)) => json!([self.json_number(a), self.json_number(b), self.json_number(c)]),
                None => {
                    let set = |s: &dsmt::SubunitarySet| {
                        if self.raw {
                            s.to_string()
                        } else {
                            s.to_string_with_precision(self.precision)
                        }
                    };
                    json!([set(&t.t), set(&t.i), set(&t.f)])
                }
            },
        }
    }
}

fn name(frame: &Frame, x: Element) -> String {
    frame.render(x, Notation::Unicode)
}

fn ascii(frame: &Frame, x: Element) -> String {
    frame.render(x, Notation::Ascii)
}

/// Render under the model the rule ran on, so reduced elements print in
/// their canonical form for that model.
fn model_name(r: &RuleResult, x: Element, notation: Notation) -> String {
    r.model.render(x, notation)
}

/// Align rows into columns; the first `left` columns are left-aligned, the
/// rest right-aligned.
fn columns(rows: &[Vec<String>], left: usize) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::from("  ");
        for (c, cell) in row.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            if c > 0 {
                line.push_str("  ");
            }
            if c < left {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn extras(out: &mut String, frame: &Frame, r: &RuleResult, style: &Style) {
    if let Some(rows) = &r.belief {
        let _ = writeln!(out, "belief ({}):", r.rule);
        let mut table = vec![vec!["element".to_string(), "bel".into(), "pl".into()]];
        table.extend(rows.iter().map(|&(x, b, p)| vec![model_name(r, x, Notation::Unicode), style.number(b), style.number(p)]));
        out.push_str(&columns(&table, 1));
    }
    if let Some(probs) = &r.pignistic {
        let transform = r.decision.as_ref().map(|d| d.transform.to_string()).unwrap_or_default();
        let _ = writeln!(out, "pignistic ({}, {transform}):", r.rule);
        let rows: Vec<Vec<String>> = probs.iter().map(|&(x, p)| vec![name(frame, x), style.number(p)]).collect();
        out.push_str(&columns(&rows, 1));
    }
    if let Some(d) = &r.decision {
        let _ = write!(out, "decision ({}): {} with {}", r.rule, name(frame, d.choice), style.number(d.probability));
        if !d.tied_with.is_empty() {
            let tied: Vec<String> = d.tied_with.iter().map(|&x| name(frame, x)).collect();
            let _ = write!(out, ", tied with {}", tied.join(", "));
        }
        out.push('\n');
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning ({}): {w}", r.rule);
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error ({}): {e}", r.rule);
    }
}

/// Render a report as text. Rules of the same task share one mass table with
/// a column per rule.
pub fn render_table(report: &Report, style: &Style) -> String {
    let frame = &report.frame;
    let mut out = String::new();
    let mut i = 0;
    while i < report.results.len() {
        let task = &report.results[i].task;
        let group: Vec<&RuleResult> = report.results[i..].iter().take_while(|r| &r.task == task).collect();
        i += group.len();
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "task {task} (sources: {})", group[0].sources.join(", "));

        let mut elements: Vec<(Element, String)> = group
            .iter()
            .flat_map(|r| r.mass.iter().map(|(x, _)| (*x, model_name(r, *x, Notation::Unicode))))
            .collect();
        elements.sort();
        let mut names: Vec<String> = Vec::new();
        for (_, n) in elements {
            if !names.contains(&n) {
                names.push(n);
            }
        }
        let mut rows = vec![std::iter::once("element".to_string())
            .chain(group.iter().map(|r| r.rule.to_string()))
            .collect::<Vec<_>>()];
        for n in names {
            let mut row = vec![n.clone()];
            for r in &group {
                let cell = r
                    .mass
                    .iter()
                    .find(|(y, _)| model_name(r, *y, Notation::Unicode) == n)
                    .map(|(_, v)| style.value(v));
                row.push(cell.unwrap_or_else(|| if r.error.is_some() { "error".into() } else { "-".into() }));
            }
            rows.push(row);
        }
        if group.iter().any(|r| r.conflict.is_some()) {
            let mut row = vec!["conflict k12".to_string()];
            for r in &group {
                row.push(r.conflict.as_ref().map_or_else(|| "-".into(), |v| style.value(v)));
            }
            rows.push(row);
        }
        out.push_str(&columns(&rows, 1));
        for r in &group {
            extras(&mut out, frame, r, style);
        }
    }
    out
}

fn result_json(frame: &Frame, r: &RuleResult, style: &Style) -> Json {
    let mut obj = Map::new();
    obj.insert("task".into(), json!(r.task));
    obj.insert("rule".into(), json!(r.rule.to_string()));
    obj.insert("sources".into(), json!(r.sources));
    let key = |x: Element| model_name(r, x, Notation::Ascii);
    let mass: Map<String, Json> = r.mass.iter().map(|(x, v)| (key(*x), style.json_value(v))).collect();
    obj.insert("mass".into(), Json::Object(mass));
    obj.insert("conflict".into(), r.conflict.as_ref().map_or(Json::Null, |v| style.json_value(v)));
    if let Some(rows) = &r.belief {
        let bel: Map<String, Json> = rows.iter().map(|&(x, b, _)| (key(x), style.json_number(b))).collect();
        let pl: Map<String, Json> = rows.iter().map(|&(x, _, p)| (key(x), style.json_number(p))).collect();
        obj.insert("bel".into(), Json::Object(bel));
        obj.insert("pl".into(), Json::Object(pl));
    }
    if let Some(probs) = &r.pignistic {
        let p: Map<String, Json> = probs.iter().map(|&(x, v)| (ascii(frame, x), style.json_number(v))).collect();
        obj.insert("pignistic".into(), Json::Object(p));
    }
    if let Some(d) = &r.decision {
        let tied: Vec<String> = d.tied_with.iter().map(|&x| ascii(frame, x)).collect();
        obj.insert(
            "decision".into(),
            json!({
                "transform": d.transform.to_string(),
                "choice": ascii(frame, d.choice),
                "probability": style.json_number(d.probability),
                "tied_with": tied,
            }),
        );
    }
    obj.insert("warnings".into(), json!(r.warnings));
    if let Some(e) = &r.error {
        obj.insert("error".into(), json!(e));
    }
    Json::Object(obj)
}

/// Render a report as pretty-printed JSON with stable keys.
pub fn render_json(report: &Report, style: &Style) -> String {
    let results: Vec<Json> = report.results.iter().map(|r| result_json(&report.frame, r, style)).collect();
    let mut s = serde_json::to_string_pretty(&json!({ "results": results })).expect("report serializes");
    s.push('\n');
    s
}

/// Write a lattice listing as text, one row at a time so that the 7.8 million
/// rows of a six-hypothesis frame never sit in memory as strings.
pub fn write_lattice_table(listing: &LatticeListing, out: &mut dyn io::Write) -> io::Result<()> {
    let rows = &listing.rows;
    let wi = rows.len().saturating_sub(1).to_string().len().max(1);
    let wc = rows.iter().map(|r| r.cardinality).max().unwrap_or(0).to_string().len().max(3);
    writeln!(out, "{} elements", rows.len())?;
    writeln!(out, "  {:>wi$}  {:>wc$}  element", "#", "C_M")?;
    for r in rows {
        writeln!(
            out,
            "  {:>wi$}  {:>wc$}  {}",
            r.index,
            r.cardinality,
            name(&listing.frame, r.element)
        )?;
    }
    Ok(())
}

/// Write a lattice listing as JSON, one element object per line.
pub fn write_lattice_json(listing: &LatticeListing, out: &mut dyn io::Write) -> io::Result<()> {
    writeln!(out, "{{\n  \"elements\": [")?;
    let last = listing.rows.len().saturating_sub(1);
    for (k, r) in listing.rows.iter().enumerate() {
        let row = json!({"index": r.index, "element": ascii(&listing.frame, r.element), "cardinality": r.cardinality});
        writeln!(out, "    {row}{}", if k == last { "" } else { "," })?;
    }
    writeln!(out, "  ]\n}}")
}
