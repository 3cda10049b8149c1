//! Executing scenario tasks.

use dsmt::neutro::{nconorm_fusion, nnorm_fusion, NeutrosophicTriple, TripleMass};
use dsmt::rules::{dsm_classic_imprecise, dsm_hybrid_imprecise, dsm_hybrid_with};
use dsmt::{
    bel, cpt, decide_singletons, fuse, gpt, pl, Element, Error, FusionReport, ImpreciseMass, Model, PreciseMass,
    RuleId, SubunitarySet,
};

use crate::error::{CliError, Result};
use crate::scenario::{Scenario, SourceMass, Task, TaskRule, Transform};

/// A fused value of any kind.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Number(f64),
    Set(SubunitarySet),
    Triple(NeutrosophicTriple),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionOut {
    pub transform: Transform,
    pub choice: Element,
    pub probability: f64,
    pub tied_with: Vec<Element>,
}

/// The outcome of one rule within one task.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleResult {
    pub task: String,
    pub rule: TaskRule,
    pub sources: Vec<String>,
    /// The model the rule actually ran under.
    pub model: Model,
    pub mass: Vec<(Element, Value)>,
    pub conflict: Option<Value>,
    /// `(A, Bel(A), Pl(A))` over the nonempty reduced lattice.
    pub belief: Option<Vec<(Element, f64, f64)>>,
    pub pignistic: Option<Vec<(Element, f64)>>,
    pub decision: Option<DecisionOut>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

impl RuleResult {
    fn new(task: &Task, rule: TaskRule, sources: Vec<String>, model: &Model) -> Self {
        Self {
            task: task.name.clone(),
            rule,
            sources,
            model: model.clone(),
            mass: Vec::new(),
            conflict: None,
            belief: None,
            pignistic: None,
            decision: None,
            warnings: Vec::new(),
            error: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub frame: dsmt::Frame,
    pub results: Vec<RuleResult>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| r.error.is_some()).count()
    }
}

/// Command-line overrides applied to every task.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Replace each task's rule list with this rule.
    pub rule: Option<TaskRule>,
    pub compare: bool,
    pub decide: Option<Transform>,
    pub belief: bool,
    /// Largest frame the belief table may enumerate.
    pub max_frame: Option<usize>,
}

fn default_rule(scenario: &Scenario) -> TaskRule {
    match scenario.sources.first().map(|s| &s.mass) {
        Some(SourceMass::Triple(_)) => TaskRule::NNorm(dsmt::Norm::Algebraic),
        _ => TaskRule::Mass(RuleId::DsmHybrid),
    }
}

/// The tasks to run after applying overrides. A scenario without tasks gets
/// one default task over all sources.
pub fn effective_tasks(scenario: &Scenario, opts: &RunOptions) -> Vec<Task> {
    let mut tasks = scenario.tasks.clone();
    if tasks.is_empty() {
        let mut t = Task::new("default");
        if opts.rule.is_none() && !opts.compare {
            t.rules.push(default_rule(scenario));
        }
        tasks.push(t);
    }
    for t in &mut tasks {
        if let Some(r) = opts.rule {
            t.rules = vec![r];
            t.compare = false;
        }
        t.compare |= opts.compare;
        if opts.decide.is_some() {
            t.decide = opts.decide;
        }
        t.belief |= opts.belief;
    }
    tasks
}

fn collect<V: Clone>(sources: &[&SourceMass], pick: impl Fn(&SourceMass) -> Option<&V>) -> Result<Vec<V>, Error> {
    sources
        .iter()
        .map(|s| pick(s).cloned().ok_or(Error::FrameMismatch))
        .collect()
}

fn precise(s: &SourceMass) -> Option<&PreciseMass> {
    match s {
        SourceMass::Precise(m) => Some(m),
        _ => None,
    }
}

fn imprecise(s: &SourceMass) -> Option<&ImpreciseMass> {
    match s {
        SourceMass::Imprecise(m) => Some(m),
        _ => None,
    }
}

fn triple(s: &SourceMass) -> Option<&TripleMass> {
    match s {
        SourceMass::Triple(m) => Some(m),
        _ => None,
    }
}

fn fill<V: dsmt::MassValue>(out: &mut RuleResult, report: &FusionReport<V>, wrap: impl Fn(&V) -> Value) {
    out.mass = report.result.iter().map(|(x, v)| (x, wrap(v))).collect();
    out.conflict = Some(wrap(&report.conflict));
    out.warnings = report.warnings.iter().map(ToString::to_string).collect();
    out.model = report.model.clone();
}

/// Run one rule; rule failures are recorded in the result, resource limits abort.
fn run_rule(scenario: &Scenario, task: &Task, rule: TaskRule, opts: &RunOptions) -> Result<RuleResult> {
    let chosen = scenario.task_sources(task);
    let names = chosen.iter().map(|s| s.name.clone()).collect();
    let masses: Vec<&SourceMass> = chosen.iter().map(|s| &s.mass).collect();
    let mut out = RuleResult::new(task, rule, names, &scenario.model);
    let model = &scenario.model;

    let outcome: Result<Option<PreciseMass>, Error> = (|| match (rule, masses.first()) {
        (TaskRule::Mass(id), Some(SourceMass::Imprecise(_))) => {
            let s = collect(&masses, imprecise)?;
            let r = match id {
                RuleId::DsmClassic => dsm_classic_imprecise(&s)?,
                _ => dsm_hybrid_imprecise(model, &s, task.s3)?,
            };
            fill(&mut out, &r, |v| Value::Set(v.clone()));
            Ok(None)
        }
        (TaskRule::Mass(id), _) => {
            let s = collect(&masses, precise)?;
            let r = match id {
                RuleId::DsmHybrid => dsm_hybrid_with(model, &s, task.s3)?,
                _ => fuse(id, model, &s)?,
            };
            fill(&mut out, &r, |&v| Value::Number(v));
            Ok(Some(r.result))
        }
        (TaskRule::NNorm(kind) | TaskRule::NConorm(kind), _) => {
            let s = collect(&masses, triple)?;
            let [m1, m2] = s.as_slice() else {
                return Err(Error::RequiresTwoSources { got: s.len() });
            };
            let r = match rule {
                TaskRule::NNorm(_) => nnorm_fusion(kind, model, m1, m2)?,
                _ => nconorm_fusion(kind, task.pair, model, m1, m2)?,
            };
            out.mass = r.iter().map(|(x, v)| (x, Value::Triple(v.clone()))).collect();
            Ok(None)
        }
    })();

    let fused = match outcome {
        Ok(f) => f,
        Err(e @ Error::FrameTooLarge { .. }) => return Err(e.into()),
        Err(e) => {
            out.error = Some(e.to_string());
            return Ok(out);
        }
    };

    if let Some(m) = fused {
        let model = out.model.clone();
        if task.belief {
            let limit = opts.max_frame.unwrap_or(dsmt::DEFAULT_ENUMERATION_LIMIT);
            let rows = model.reduced_lattice(limit)?;
            let mut table = Vec::new();
            for x in rows.into_iter().filter(|x| !x.is_empty()) {
                table.push((x, bel(&model, &m, x)?, pl(&model, &m, x)?));
            }
            out.belief = Some(table);
        }
        if let Some(transform) = task.decide {
            let p = match transform {
                Transform::Gpt => gpt(&model, &m),
                Transform::Cpt => cpt(&model, &m),
            };
            match p.and_then(|p| Ok((p.singletons(), decide_singletons(&p)?))) {
                Ok((probs, d)) => {
                    out.pignistic = Some(probs);
                    out.decision = Some(DecisionOut {
                        transform,
                        choice: d.choice,
                        probability: d.probability,
                        tied_with: d.tied_with,
                    });
                }
                Err(e) => out.error = Some(format!("decision: {e}")),
            }
        }
    }
    Ok(out)
}

/// Run every task of the scenario.
pub fn run(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    let mut results = Vec::new();
    for task in effective_tasks(scenario, opts) {
        for rule in task.rule_list() {
            if let Some(kind) = task_kind(scenario, &task) {
                if !rule.accepts(kind) {
                    return Err(CliError::Validation(vec![format!(
                        "task {}: rule {rule} does not accept {kind} sources",
                        task.name
                    )]));
                }
            }
            results.push(run_rule(scenario, &task, rule, opts)?);
        }
    }
    Ok(Report {
        frame: scenario.frame.clone(),
        results,
    })
}

fn task_kind(scenario: &Scenario, task: &Task) -> Option<crate::scenario::MassKind> {
    scenario.task_sources(task).first().map(|s| s.mass.kind())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    const FOUR: &str = "\
[frame]
labels = th1, th2, th3, th4
[model]
kind = shafer
[precise m1]
th1 = 0.6
th3 = 0.4
[precise m2]
th2 = 0.2
th4 = 0.8
[task t]
rules = dsm_hybrid, dempster
";

    #[test]
    fn rule_errors_are_recorded_per_rule() {
        let s = parse_scenario(FOUR).unwrap();
        let r = run(&s, &RunOptions::default()).unwrap();
        assert_eq!(r.results.len(), 2);
        assert!(r.results[0].error.is_none());
        assert!(r.results[1].error.as_deref().unwrap().contains("total conflict"));
        assert_eq!(r.failures(), 1);
    }

    #[test]
    fn overrides_replace_rules() {
        let s = parse_scenario(FOUR).unwrap();
        let opts = RunOptions {
            rule: Some(TaskRule::Mass(RuleId::Yager)),
            decide: Some(Transform::Cpt),
            ..RunOptions::default()
        };
        let r = run(&s, &opts).unwrap();
        assert_eq!(r.results.len(), 1);
        let y = &r.results[0];
        assert_eq!(y.error, None);
        let d = y.decision.as_ref().unwrap();
        assert!((d.probability - 0.25).abs() < 1e-12);
        assert_eq!(d.tied_with.len(), 3);
    }

    #[test]
    fn scenarios_without_tasks_run_the_hybrid_rule() {
        let text = FOUR.split("[task").next().unwrap();
        let s = parse_scenario(text).unwrap();
        let r = run(&s, &RunOptions::default()).unwrap();
        assert_eq!(r.results[0].rule, TaskRule::Mass(RuleId::DsmHybrid));
    }

    #[test]
    fn belief_table_respects_frame_limit() {
        let s = parse_scenario(FOUR).unwrap();
        let opts = RunOptions {
            belief: true,
            rule: Some(TaskRule::Mass(RuleId::DsmHybrid)),
            max_frame: Some(3),
            ..RunOptions::default()
        };
        assert_eq!(run(&s, &opts).unwrap_err().exit_code(), 4);
        let opts = RunOptions { max_frame: None, ..opts };
        let r = run(&s, &opts).unwrap();
        // Shafer's model on four hypotheses: 2^4 - 1 nonempty elements.
        assert_eq!(r.results[0].belief.as_ref().unwrap().len(), 15);
    }
}
