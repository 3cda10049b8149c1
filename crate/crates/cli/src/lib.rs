//! Scenario files, fusion reports and lattice listings for the `dsmt`
//! command-line tool.

pub mod error;
pub mod lattice;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::{CliError, Result};
pub use lattice::{list_lattice, LatticeListing, LatticeRow};
pub use report::{render_json, render_table, write_lattice_json, write_lattice_table, Format, Style};
pub use run::{run, Report, RuleResult, RunOptions, Value};
pub use scenario::{load_scenario, parse_scenario, MassKind, ModelBase, Scenario, Source, SourceMass, Task, TaskRule, Transform};
