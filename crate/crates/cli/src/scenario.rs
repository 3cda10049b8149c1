//! Scenario documents: a frame, a model, named sources and fusion tasks.
//!
//! The text form is sectioned, one `key = value` per line, `#` starts a
//! comment:
//!
//! ```text
//! [frame]
//! labels = th1, th2, th3
//!
//! [model]
//! kind = shafer            # free | shafer | hybrid
//! constraint = th3 = 0     # repeatable
//!
//! [precise m1]             # or [imprecise NAME], [triple NAME]
//! th1 = 0.1
//! th1 | th2 = 0.3
//!
//! [task comparison]
//! rules = dsm_classic, dempster
//! compare = true
//! sources = m1, m2
//! decide = gpt             # gpt | cpt
//! belief = true
//! s3 = canonical           # canonical | plain
//! pair = union             # intersection | union
//! ```
//!
//! The same schema is accepted as JSON; see [`parse_scenario`].

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use dsmt::neutro::{NeutrosophicTriple, PairTarget, TripleMass};
use dsmt::{
    parse_constraint, parse_element, Element, Frame, ImpreciseMass, Model, Norm, Notation, PreciseMass, RuleId,
    S3Target, SubunitarySet,
};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModelBase {
    /// Free model, optionally with constraints.
    #[default]
    Free,
    /// Shafer's model: all hypotheses exclusive.
    Shafer,
    /// Free model plus constraints; kept apart from `Free` for the echo.
    Hybrid,
}

impl FromStr for ModelBase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "free" => Ok(Self::Free),
            "shafer" => Ok(Self::Shafer),
            "hybrid" => Ok(Self::Hybrid),
            other => Err(format!("unknown model kind {other:?}; expected free, shafer or hybrid")),
        }
    }
}

impl fmt::Display for ModelBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Free => "free",
            Self::Shafer => "shafer",
            Self::Hybrid => "hybrid",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MassKind {
    Precise,
    Imprecise,
    Triple,
}

impl FromStr for MassKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "precise" => Ok(Self::Precise),
            "imprecise" => Ok(Self::Imprecise),
            "triple" => Ok(Self::Triple),
            other => Err(format!("unknown source kind {other:?}; expected precise, imprecise or triple")),
        }
    }
}

impl fmt::Display for MassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Precise => "precise",
            Self::Imprecise => "imprecise",
            Self::Triple => "triple",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SourceMass {
    Precise(PreciseMass),
    Imprecise(ImpreciseMass),
    Triple(TripleMass),
}

impl SourceMass {
    pub fn kind(&self) -> MassKind {
        match self {
            Self::Precise(_) => MassKind::Precise,
            Self::Imprecise(_) => MassKind::Imprecise,
            Self::Triple(_) => MassKind::Triple,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Source {
    pub name: String,
    pub mass: SourceMass,
}

/// A rule a task can run: a mass combination rule, or a neutrosophic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskRule {
    Mass(RuleId),
    NNorm(Norm),
    NConorm(Norm),
}

impl TaskRule {
    /// Whether the rule accepts sources of this kind.
    pub fn accepts(self, kind: MassKind) -> bool {
        matches!(
            (self, kind),
            (TaskRule::Mass(_), MassKind::Precise)
                | (TaskRule::Mass(RuleId::DsmClassic | RuleId::DsmHybrid), MassKind::Imprecise)
                | (TaskRule::NNorm(_) | TaskRule::NConorm(_), MassKind::Triple)
        )
    }
}

impl fmt::Display for TaskRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaskRule::Mass(r) => write!(f, "{r}"),
            TaskRule::NNorm(n) => write!(f, "nnorm:{n}"),
            TaskRule::NConorm(n) => write!(f, "nconorm:{n}"),
        }
    }
}

impl FromStr for TaskRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (head, norm) = match s.split_once(':') {
            Some((h, n)) => (h, Some(n)),
            None => (s, None),
        };
        let norm = || -> Result<Norm, String> {
            norm.map_or(Ok(Norm::default()), |n| n.parse().map_err(|e: dsmt::Error| e.to_string()))
        };
        match head {
            "nnorm" => Ok(TaskRule::NNorm(norm()?)),
            "nconorm" => Ok(TaskRule::NConorm(norm()?)),
            _ => s.parse().map(TaskRule::Mass).map_err(|_| format!("unknown rule {s:?}")),
        }
    }
}

/// Which pignistic transformation a decision uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Transform {
    #[default]
    Gpt,
    Cpt,
}

impl FromStr for Transform {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gpt" | "true" => Ok(Self::Gpt),
            "cpt" => Ok(Self::Cpt),
            other => Err(format!("unknown transformation {other:?}; expected gpt or cpt")),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gpt => "gpt",
            Self::Cpt => "cpt",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Task {
    pub name: String,
    pub rules: Vec<TaskRule>,
    /// Also run the standard comparison set of rules.
    pub compare: bool,
    /// Source names; empty means every source.
    pub sources: Vec<String>,
    pub decide: Option<Transform>,
    pub belief: bool,
    pub s3: S3Target,
    pub pair: PairTarget,
}

impl Task {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            rules: Vec::new(),
            compare: false,
            sources: Vec::new(),
            decide: None,
            belief: false,
            s3: S3Target::default(),
            pair: PairTarget::Union,
        }
    }

    /// Rules in run order, without duplicates.
    pub fn rule_list(&self) -> Vec<TaskRule> {
        let mut out: Vec<TaskRule> = Vec::new();
        let compare = self.compare.then_some(RuleId::COMPARISON.map(TaskRule::Mass));
        for r in compare.iter().flatten().chain(&self.rules) {
            if !out.contains(r) {
                out.push(*r);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub frame: Frame,
    pub model_base: ModelBase,
    /// Elements forced empty, in document order.
    pub constraints: Vec<Element>,
    pub model: Model,
    pub sources: Vec<Source>,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn source(&self, name: &str) -> Option<&Source> {
        self.sources.iter().find(|s| s.name == name)
    }

    /// Sources a task runs on.
    pub fn task_sources(&self, task: &Task) -> Vec<&Source> {
        if task.sources.is_empty() {
            self.sources.iter().collect()
        } else {
            task.sources.iter().filter_map(|n| self.source(n)).collect()
        }
    }

    /// Render in the text format; parsing the result gives back an equal scenario.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let render = |x: Element| self.frame.render(x, Notation::Ascii);
        out.push_str("[frame]\n");
        out.push_str(&format!("labels = {}\n", self.frame.labels().join(", ")));
        out.push_str("\n[model]\n");
        out.push_str(&format!("kind = {}\n", self.model_base));
        for &c in &self.constraints {
            out.push_str(&format!("constraint = {} = 0\n", render(c)));
        }
        for s in &self.sources {
            out.push_str(&format!("\n[{} {}]\n", s.mass.kind(), s.name));
            match &s.mass {
                SourceMass::Precise(m) => m.iter().for_each(|(x, v)| out.push_str(&format!("{} = {v}\n", render(x)))),
                SourceMass::Imprecise(m) => m.iter().for_each(|(x, v)| out.push_str(&format!("{} = {v}\n", render(x)))),
                SourceMass::Triple(m) => m.iter().for_each(|(x, v)| out.push_str(&format!("{} = {v}\n", render(x)))),
            }
        }
        for t in &self.tasks {
            out.push_str(&format!("\n[task {}]\n", t.name));
            if !t.rules.is_empty() {
                let rules: Vec<String> = t.rules.iter().map(ToString::to_string).collect();
                out.push_str(&format!("rules = {}\n", rules.join(", ")));
            }
            if t.compare {
                out.push_str("compare = true\n");
            }
            if !t.sources.is_empty() {
                out.push_str(&format!("sources = {}\n", t.sources.join(", ")));
            }
            if let Some(d) = t.decide {
                out.push_str(&format!("decide = {d}\n"));
            }
            if t.belief {
                out.push_str("belief = true\n");
            }
            if t.s3 == S3Target::PlainUnion {
                out.push_str("s3 = plain\n");
            }
            if t.pair == PairTarget::Intersection {
                out.push_str("pair = intersection\n");
            }
        }
        out
    }
}

// ---- raw document ----

/// Where a value came from, for error messages.
#[derive(Clone, Debug)]
enum Loc {
    Text { line: usize, column: usize },
    Json(String),
}

impl Loc {
    /// Shift by a 1-based column offset inside the value.
    fn at(&self, column: usize) -> Loc {
        match self {
            Loc::Text { line, column: c } => Loc::Text {
                line: *line,
                column: c + column.saturating_sub(1),
            },
            Loc::Json(p) => Loc::Json(p.clone()),
        }
    }
}

impl fmt::Display for Loc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Loc::Text { line, column } => write!(f, "line {line}, column {column}"),
            Loc::Json(path) => f.write_str(path),
        }
    }
}

#[derive(Clone, Debug)]
struct Field {
    key: String,
    key_loc: Loc,
    value: String,
    value_loc: Loc,
}

#[derive(Debug, Default)]
struct RawDoc {
    labels: Option<(Vec<String>, Loc)>,
    kind: Option<(String, Loc)>,
    constraints: Vec<(String, Loc)>,
    sources: Vec<RawSource>,
    tasks: Vec<RawTask>,
}

#[derive(Debug)]
struct RawSource {
    name: String,
    kind: String,
    loc: Loc,
    entries: Vec<Field>,
}

#[derive(Debug)]
struct RawTask {
    name: String,
    fields: Vec<Field>,
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        column,
        message: message.into(),
    }
}

enum Section {
    None,
    Frame,
    Model,
    Source(usize),
    Task(usize),
}

fn parse_text_doc(text: &str) -> Result<RawDoc> {
    let mut doc = RawDoc::default();
    let mut section = Section::None;
    let (mut seen_frame, mut seen_model) = (false, false);
    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(header) = rest.strip_suffix(']') else {
                return Err(parse_err(line, indent + trimmed.chars().count(), "expected `]`"));
            };
            let mut words = header.split_whitespace();
            let kind = words.next().unwrap_or("");
            let name = words.next();
            if let Some(extra) = words.next() {
                return Err(parse_err(line, indent, format!("unexpected {extra:?} in section header")));
            }
            let loc = Loc::Text { line, column: indent };
            section = match (kind, name) {
                ("frame", None) if !seen_frame => {
                    seen_frame = true;
                    Section::Frame
                }
                ("model", None) if !seen_model => {
                    seen_model = true;
                    Section::Model
                }
                ("frame" | "model", None) => return Err(parse_err(line, indent, format!("duplicate [{kind}] section"))),
                ("precise" | "imprecise" | "triple", Some(name)) => {
                    doc.sources.push(RawSource {
                        name: name.to_string(),
                        kind: kind.to_string(),
                        loc,
                        entries: Vec::new(),
                    });
                    Section::Source(doc.sources.len() - 1)
                }
                ("precise" | "imprecise" | "triple", None) => {
                    return Err(parse_err(line, indent, format!("[{kind}] needs a source name")))
                }
                ("task", name) => {
                    let name = name.map_or_else(|| format!("task{}", doc.tasks.len() + 1), String::from);
                    doc.tasks.push(RawTask {
                        name,
                        fields: Vec::new(),
                    });
                    Section::Task(doc.tasks.len() - 1)
                }
                _ => return Err(parse_err(line, indent, format!("unknown section [{header}]"))),
            };
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(parse_err(line, indent, "expected `key = value`"));
        };
        let (key_raw, value_raw) = (&content[..eq], &content[eq + 1..]);
        let key = key_raw.trim().to_string();
        let value = value_raw.trim().to_string();
        let value_col = key_raw.chars().count() + 2 + value_raw.chars().take_while(|c| c.is_whitespace()).count();
        if key.is_empty() {
            return Err(parse_err(line, indent, "missing key before `=`"));
        }
        let field = Field {
            key,
            key_loc: Loc::Text { line, column: indent },
            value,
            value_loc: Loc::Text { line, column: value_col },
        };
        match section {
            Section::None => return Err(parse_err(line, indent, "entry outside any section")),
            Section::Frame => match field.key.as_str() {
                "labels" if doc.labels.is_none() => doc.labels = Some((split_list(&field.value), field.value_loc)),
                "labels" => return Err(parse_err(line, indent, "labels given twice")),
                other => return Err(parse_err(line, indent, format!("unknown frame key {other:?}"))),
            },
            Section::Model => match field.key.as_str() {
                "kind" if doc.kind.is_none() => doc.kind = Some((field.value, field.value_loc)),
                "kind" => return Err(parse_err(line, indent, "model kind given twice")),
                "constraint" => doc.constraints.push((field.value, field.value_loc)),
                other => return Err(parse_err(line, indent, format!("unknown model key {other:?}"))),
            },
            Section::Source(k) => doc.sources[k].entries.push(field),
            Section::Task(k) => doc.tasks[k].fields.push(field),
        }
    }
    Ok(doc)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDoc {
    frame: Vec<String>,
    #[serde(default)]
    model: JsonModel,
    #[serde(default)]
    sources: Vec<JsonSource>,
    #[serde(default)]
    tasks: Vec<serde_json::Map<String, serde_json::Value>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct JsonModel {
    kind: Option<String>,
    #[serde(default)]
    constraints: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSource {
    name: String,
    #[serde(default = "precise")]
    kind: String,
    masses: serde_json::Map<String, serde_json::Value>,
}

fn precise() -> String {
    "precise".into()
}

fn json_scalar(v: &serde_json::Value) -> Option<String> {
    match v {
        serde_json::Value::Number(n) => Some(n.to_string()),
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Bool(b) => Some(b.to_string()),
        serde_json::Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(json_scalar).collect();
            parts.map(|p| p.join(", "))
        }
        _ => None,
    }
}

fn parse_json_doc(text: &str) -> Result<RawDoc> {
    let json: JsonDoc =
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    let mut doc = RawDoc {
        labels: Some((json.frame, Loc::Json("frame".into()))),
        kind: json.model.kind.map(|k| (k, Loc::Json("model.kind".into()))),
        ..RawDoc::default()
    };
    for (i, c) in json.model.constraints.into_iter().enumerate() {
        doc.constraints.push((c, Loc::Json(format!("model.constraints[{i}]"))));
    }
    for (i, s) in json.sources.into_iter().enumerate() {
        let base = format!("sources[{i}]");
        let mut entries = Vec::new();
        for (key, v) in s.masses {
            let loc = Loc::Json(format!("{base}.masses[{key:?}]"));
            let value = match v {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s,
                other => {
                    return Err(CliError::Validation(vec![format!("{loc}: expected a number or string, got {other}")]))
                }
            };
            entries.push(Field {
                key,
                key_loc: loc.clone(),
                value,
                value_loc: loc,
            });
        }
        doc.sources.push(RawSource {
            name: s.name,
            kind: s.kind,
            loc: Loc::Json(base),
            entries,
        });
    }
    for (i, t) in json.tasks.into_iter().enumerate() {
        let base = format!("tasks[{i}]");
        let mut name = format!("task{}", i + 1);
        let mut fields = Vec::new();
        for (key, v) in t {
            let loc = Loc::Json(format!("{base}.{key}"));
            let Some(value) = json_scalar(&v) else {
                return Err(CliError::Validation(vec![format!("{loc}: unsupported value {v}")]));
            };
            if key == "name" {
                name = value;
                continue;
            }
            fields.push(Field {
                key,
                key_loc: loc.clone(),
                value,
                value_loc: loc,
            });
        }
        doc.tasks.push(RawTask { name, fields });
    }
    Ok(doc)
}

// ---- validation ----

struct Problems(Vec<String>);

impl Problems {
    fn push(&mut self, loc: &Loc, msg: impl fmt::Display) {
        self.0.push(format!("{loc}: {msg}"));
    }

    /// Report a core error, moving parse columns into document coordinates.
    fn core(&mut self, loc: &Loc, e: dsmt::Error) {
        match e {
            dsmt::Error::Parse { column, message } => self.push(&loc.at(column), message),
            other => self.push(loc, other),
        }
    }
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "on" => Ok(true),
        "false" | "no" | "off" => Ok(false),
        other => Err(format!("expected true or false, got {other:?}")),
    }
}

fn build_source(frame: &Frame, raw: &RawSource, kind: MassKind, problems: &mut Problems) -> Option<SourceMass> {
    let before = problems.0.len();
    let mut seen = BTreeSet::new();
    let mut focal = Vec::new();
    for e in &raw.entries {
        match parse_element(frame, &e.key) {
            Ok(x) if x.is_empty() => problems.push(&e.key_loc, "the empty set cannot be a focal element"),
            Ok(x) if !seen.insert(x) => problems.push(&e.key_loc, format!("focal element {:?} given twice", e.key)),
            Ok(x) => focal.push((x, e)),
            Err(err) => problems.core(&e.key_loc, err),
        }
    }
    let mass = match kind {
        MassKind::Precise => {
            let mut m = PreciseMass::new(frame);
            for (x, e) in focal {
                match e.value.parse::<f64>() {
                    Ok(v) => {
                        if let Err(err) = m.set(x, v) {
                            problems.core(&e.value_loc, err);
                        }
                    }
                    Err(_) => problems.push(&e.value_loc, format!("expected a number, got {:?}", e.value)),
                }
            }
            if problems.0.len() == before {
                if let Err(err) = m.validate() {
                    problems.push(&raw.loc, format!("source {}: {err}", raw.name));
                }
            }
            SourceMass::Precise(m)
        }
        MassKind::Imprecise => {
            let mut m = ImpreciseMass::new(frame);
            for (x, e) in focal {
                match e.value.parse::<SubunitarySet>() {
                    Ok(v) => {
                        if let Err(err) = m.set(x, v) {
                            problems.core(&e.value_loc, err);
                        }
                    }
                    Err(err) => problems.core(&e.value_loc, err),
                }
            }
            SourceMass::Imprecise(m)
        }
        MassKind::Triple => {
            let mut m = TripleMass::new(frame);
            for (x, e) in focal {
                match e.value.parse::<NeutrosophicTriple>() {
                    Ok(v) => {
                        if let Err(err) = m.set(x, v) {
                            problems.core(&e.value_loc, err);
                        }
                    }
                    Err(err) => problems.core(&e.value_loc, err),
                }
            }
            SourceMass::Triple(m)
        }
    };
    (problems.0.len() == before).then_some(mass)
}

fn build_task(raw: &RawTask, sources: &[Source], problems: &mut Problems) -> Task {
    let mut task = Task::new(&raw.name);
    let mut task_loc = None;
    for f in &raw.fields {
        task_loc.get_or_insert_with(|| f.key_loc.clone());
        let v = f.value.as_str();
        let result: Result<(), String> = match f.key.as_str() {
            "rule" | "rules" => split_list(v).iter().try_for_each(|r| {
                task.rules.push(r.parse()?);
                Ok(())
            }),
            "compare" => parse_bool(v).map(|b| task.compare = b),
            "sources" => {
                task.sources = split_list(v);
                Ok(())
            }
            "decide" => match v {
                "false" | "none" => {
                    task.decide = None;
                    Ok(())
                }
                _ => v.parse().map(|t| task.decide = Some(t)),
            },
            "belief" => parse_bool(v).map(|b| task.belief = b),
            "s3" => match v {
                "canonical" => Ok(S3Target::CanonicalUnion),
                "plain" => Ok(S3Target::PlainUnion),
                other => Err(format!("unknown s3 target {other:?}; expected canonical or plain")),
            }
            .map(|t| task.s3 = t),
            "pair" => match v {
                "intersection" => Ok(PairTarget::Intersection),
                "union" => Ok(PairTarget::Union),
                other => Err(format!("unknown pair target {other:?}; expected intersection or union")),
            }
            .map(|t| task.pair = t),
            other => Err(format!("unknown task key {other:?}")),
        };
        if let Err(msg) = result {
            problems.push(&f.value_loc, msg);
        }
    }
    let loc = task_loc.unwrap_or(Loc::Json(format!("task {}", raw.name)));
    for name in &task.sources {
        if !sources.iter().any(|s| &s.name == name) {
            problems.push(&loc, format!("task {}: unknown source {name:?}", task.name));
        }
    }
    let chosen: Vec<&Source> = if task.sources.is_empty() {
        sources.iter().collect()
    } else {
        sources.iter().filter(|s| task.sources.contains(&s.name)).collect()
    };
    let kinds: BTreeSet<String> = chosen.iter().map(|s| s.mass.kind().to_string()).collect();
    if kinds.len() > 1 {
        let kinds: Vec<String> = kinds.into_iter().collect();
        problems.push(&loc, format!("task {} mixes {} sources", task.name, kinds.join(" and ")));
    } else if let Some(kind) = chosen.first().map(|s| s.mass.kind()) {
        for r in task.rule_list() {
            if !r.accepts(kind) {
                problems.push(&loc, format!("task {}: rule {r} does not accept {kind} sources", task.name));
            }
        }
        if kind != MassKind::Precise && (task.decide.is_some() || task.belief) {
            problems.push(&loc, format!("task {}: decisions and belief tables need precise sources", task.name));
        }
    }
    task
}

fn validate(doc: RawDoc) -> Result<Scenario> {
    let mut problems = Problems(Vec::new());
    let Some((labels, labels_loc)) = doc.labels else {
        return Err(CliError::Validation(vec!["missing [frame] section".into()]));
    };
    if labels.is_empty() {
        return Err(CliError::Validation(vec![format!("{labels_loc}: the frame has no hypotheses")]));
    }
    let frame = match Frame::new(labels) {
        Ok(f) => f,
        Err(e @ dsmt::Error::FrameTooLarge { .. }) => return Err(e.into()),
        Err(e) => return Err(CliError::Validation(vec![format!("{labels_loc}: {e}")])),
    };

    let model_base = match &doc.kind {
        Some((k, loc)) => k.parse().unwrap_or_else(|msg| {
            problems.push(loc, msg);
            ModelBase::Free
        }),
        None => ModelBase::Free,
    };
    let mut model = match model_base {
        ModelBase::Shafer => Model::shafer(&frame),
        ModelBase::Free | ModelBase::Hybrid => Model::free(&frame),
    };
    let mut constraints = Vec::new();
    for (text, loc) in &doc.constraints {
        match parse_constraint(&frame, text).and_then(|x| Ok((x, model.clone().forcing_empty(x)?))) {
            Ok((x, m)) => {
                constraints.push(x);
                model = m;
            }
            Err(e) => problems.core(loc, e),
        }
    }

    let mut sources = Vec::new();
    let mut names = BTreeSet::new();
    for raw in &doc.sources {
        if !names.insert(raw.name.clone()) {
            problems.push(&raw.loc, format!("duplicate source name {:?}", raw.name));
            continue;
        }
        let kind = match raw.kind.parse::<MassKind>() {
            Ok(k) => k,
            Err(msg) => {
                problems.push(&raw.loc, msg);
                continue;
            }
        };
        if raw.entries.is_empty() {
            problems.push(&raw.loc, format!("source {} has no focal elements", raw.name));
            continue;
        }
        if let Some(mass) = build_source(&frame, raw, kind, &mut problems) {
            sources.push(Source {
                name: raw.name.clone(),
                mass,
            });
        }
    }

    let mut tasks = Vec::new();
    let mut task_names = BTreeSet::new();
    for raw in &doc.tasks {
        if !task_names.insert(raw.name.clone()) {
            problems.0.push(format!("duplicate task name {:?}", raw.name));
        }
        tasks.push(build_task(raw, &sources, &mut problems));
    }

    if problems.0.is_empty() {
        Ok(Scenario {
            frame,
            model_base,
            constraints,
            model,
            sources,
            tasks,
        })
    } else {
        Err(CliError::Validation(problems.0))
    }
}

/// Parse and validate a scenario. Documents whose first non-blank character
/// is `{` are read as JSON, anything else as the sectioned text format.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc = if text.trim_start().starts_with('{') {
        parse_json_doc(text)?
    } else {
        parse_text_doc(text)?
    };
    validate(doc)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const COMPARISON: &str = "\
[frame]
labels = th1, th2, th3

[model]
kind = shafer
constraint = th3 = 0

[precise m1]
th1 = 0.1
th2 = 0.4
th3 = 0.2
th1 | th2 = 0.3

[precise m2]
th1 = 0.5
th2 = 0.1
th3 = 0.3
th1 | th2 = 0.1

[task comparison]
compare = true
";

    #[test]
    fn parses_comparison_scenario() {
        let s = parse_scenario(COMPARISON).unwrap();
        assert_eq!(s.frame.len(), 3);
        assert_eq!(s.sources.len(), 2);
        assert_eq!(s.constraints.len(), 1);
        assert!(s.model.is_shafer_compatible());
        assert!(s.model.is_empty_element(s.frame.atom(3).unwrap()));
        assert_eq!(s.tasks[0].rule_list().len(), RuleId::COMPARISON.len());
    }

    #[test]
    fn echo_round_trips() {
        let s = parse_scenario(COMPARISON).unwrap();
        let echoed = s.to_text();
        assert_eq!(parse_scenario(&echoed).unwrap(), s);
        assert_eq!(parse_scenario(&echoed).unwrap().to_text(), echoed);
    }

    #[test]
    fn imprecise_values_parse_as_sets() {
        let text = "[frame]\nlabels = th1, th2\n[imprecise m1]\nth1 = [0.1,0.2]u{0.3}\nth2 = (0.4,0.6)u[0.7,0.8]\n";
        let s = parse_scenario(text).unwrap();
        let SourceMass::Imprecise(m) = &s.sources[0].mass else { panic!() };
        let want: SubunitarySet = "[0.1,0.2]∪{0.3}".parse().unwrap();
        assert_eq!(m.get(s.frame.atom(1).unwrap()), Some(&want));
    }

    #[test]
    fn empty_frame_is_a_validation_error() {
        let err = parse_scenario("[frame]\nlabels =\n").unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        match parse_scenario("[frame]\nlabels = a, b\n[precise m1]\nnonsense\n") {
            Err(CliError::Parse { line: 4, column: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_scenario("[frame]\nlabels = a, b\n[bogus]\n") {
            Err(CliError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expression_errors_point_into_the_line() {
        let err = parse_scenario("[frame]\nlabels = a, b\n[precise m1]\na & c = 1\n").unwrap_err();
        let CliError::Validation(msgs) = err else { panic!() };
        assert!(msgs[0].starts_with("line 4, column"), "{msgs:?}");
        assert!(msgs[0].contains("\"c\""), "{msgs:?}");
    }

    #[test]
    fn collects_every_offending_entry() {
        let text = "[frame]\nlabels = a, b\n[precise m1]\na = 0.5\n[precise m2]\nq = 1\n[precise m1]\nb = 1\n";
        let CliError::Validation(msgs) = parse_scenario(text).unwrap_err() else { panic!() };
        assert_eq!(msgs.len(), 3, "{msgs:?}");
        assert!(msgs[0].contains("deficit"), "{msgs:?}");
    }

    #[test]
    fn mixed_kinds_are_rejected() {
        let text = "[frame]\nlabels = a, b\n[precise m1]\na = 1\n[imprecise m2]\nb = [0.9,1]\n[task t]\nrules = dsm_classic\n";
        let CliError::Validation(msgs) = parse_scenario(text).unwrap_err() else { panic!() };
        assert!(msgs.iter().any(|m| m.contains("mixes")), "{msgs:?}");
    }

    #[test]
    fn rules_must_fit_the_source_kind() {
        let text = "[frame]\nlabels = a, b\n[imprecise m1]\na = [0.9,1]\n[imprecise m2]\nb = [0.9,1]\n[task t]\nrules = dempster\n";
        let CliError::Validation(msgs) = parse_scenario(text).unwrap_err() else { panic!() };
        assert!(msgs[0].contains("does not accept imprecise"), "{msgs:?}");
    }

    #[test]
    fn json_matches_text() {
        let json = r#"{
            "frame": ["th1", "th2", "th3"],
            "model": {"kind": "shafer", "constraints": ["th3 = 0"]},
            "sources": [
                {"name": "m1", "masses": {"th1": 0.1, "th2": 0.4, "th3": 0.2, "th1|th2": 0.3}},
                {"name": "m2", "kind": "precise", "masses": {"th1": 0.5, "th2": 0.1, "th3": 0.3, "th1 | th2": 0.1}}
            ],
            "tasks": [{"name": "comparison", "compare": true}]
        }"#;
        assert_eq!(parse_scenario(json).unwrap(), parse_scenario(COMPARISON).unwrap());
    }

    #[test]
    fn json_syntax_errors_carry_position() {
        match parse_scenario("{\n  \"frame\": [\"a\",\n}") {
            Err(CliError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oversized_frame_is_a_resource_error() {
        let err = parse_scenario("[frame]\nlabels = a, b, c, d, e, f, g\n").unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn task_rule_names() {
        for s in ["dsm_hybrid", "tnorm:bounded", "nnorm:algebraic", "nconorm:minmax"] {
            let r: TaskRule = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("nnorm:odd".parse::<TaskRule>().is_err());
        assert!("fancy".parse::<TaskRule>().is_err());
    }
}
