//! Command-line planner and validator for slice plan documents.
//!
//! Exit codes: 0 when the plan is legal (no violations), 1 when the report
//! contains violations, 2 on input or execution errors.

pub mod document;
pub mod graph;
pub mod render;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sliceplan::orchestrator::Orchestrator;
use sliceplan::{scenario_report, ScenarioReport};

use document::{DocumentError, PlanDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sliceplan",
    version,
    about = "Plan, validate and visualize network slice instances for local 5G operator deployments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute a plan document (its events, or auto-planning when it has
    /// none) and validate the result against the scenario rules
    Validate(RunArgs),
    /// Auto-plan every request in the document and show each outcome
    Plan(RunArgs),
    /// Replay the document's recorded events with a step-by-step trace
    Replay(RunArgs),
    /// Export the sharing graph of the executed document in DOT format
    Graph(GraphArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable report
    Text,
    /// The same report as a JSON object
    Structured,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Plan document to load
    pub file: PathBuf,
    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Plan document to load
    pub file: PathBuf,
    /// Write the graph to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Validate(args) => run_validate(&args),
        Command::Plan(args) => run_plan(&args),
        Command::Replay(args) => run_replay(&args),
        Command::Graph(args) => run_graph(&args),
    }
}

fn load(path: &Path) -> Result<(PlanDocument, Orchestrator), i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_INPUT_ERROR);
        }
    };
    let doc = match document::parse_document(&text) {
        Ok(doc) => doc,
        Err(errors) => {
            for error in errors {
                eprintln!("error: {error}");
            }
            return Err(EXIT_INPUT_ERROR);
        }
    };
    let (plan, scenario) = match document::build_state(&doc) {
        Ok(state) => state,
        Err(error) => {
            eprintln!("error: {error}");
            return Err(EXIT_INPUT_ERROR);
        }
    };
    Ok((doc, Orchestrator::new(plan, scenario)))
}

fn execute(doc: &PlanDocument, orchestrator: &mut Orchestrator) -> Result<(), DocumentError> {
    if doc.events.is_some() {
        document::run_events(orchestrator, doc)?;
    } else {
        document::auto_plan(orchestrator, doc, true)?;
    }
    Ok(())
}

fn report_for(orchestrator: &Orchestrator) -> Result<ScenarioReport, i32> {
    scenario_report(orchestrator.plan(), orchestrator.scenario()).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT_ERROR
    })
}

fn emit(content: &str, out: Option<&Path>) -> Result<(), i32> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_INPUT_ERROR
        }),
    }
}

fn render_report(report: &ScenarioReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render::render_text(report),
        OutputFormat::Structured => {
            let mut json = serde_json::to_string_pretty(report).expect("report serializes");
            json.push('\n');
            json
        }
    }
}

fn finish(report: &ScenarioReport, args: &RunArgs) -> i32 {
    let rendered = render_report(report, args.format);
    if let Err(code) = emit(&rendered, args.out.as_deref()) {
        return code;
    }
    if report.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    }
}

fn run_validate(args: &RunArgs) -> i32 {
    let (doc, mut orchestrator) = match load(&args.file) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    if let Err(e) = execute(&doc, &mut orchestrator) {
        eprintln!("error: {e}");
        return EXIT_INPUT_ERROR;
    }
    let report = match report_for(&orchestrator) {
        Ok(report) => report,
        Err(code) => return code,
    };
    finish(&report, args)
}

fn run_plan(args: &RunArgs) -> i32 {
    let (doc, mut orchestrator) = match load(&args.file) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let (trace, failures) = match document::auto_plan(&mut orchestrator, &doc, false) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    for line in &trace {
        println!("{line}");
    }
    for line in &failures {
        println!("{line}");
    }
    if !trace.is_empty() || !failures.is_empty() {
        println!();
    }
    let report = match report_for(&orchestrator) {
        Ok(report) => report,
        Err(code) => return code,
    };
    let code = finish(&report, args);
    if code == EXIT_OK && !failures.is_empty() {
        EXIT_VIOLATIONS
    } else {
        code
    }
}

fn run_replay(args: &RunArgs) -> i32 {
    let (doc, mut orchestrator) = match load(&args.file) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    let trace = match document::run_events(&mut orchestrator, &doc) {
        Ok(trace) => trace,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    for line in &trace {
        println!("{line}");
    }
    if !trace.is_empty() {
        println!();
    }
    let report = match report_for(&orchestrator) {
        Ok(report) => report,
        Err(code) => return code,
    };
    finish(&report, args)
}

fn run_graph(args: &GraphArgs) -> i32 {
    let (doc, mut orchestrator) = match load(&args.file) {
        Ok(loaded) => loaded,
        Err(code) => return code,
    };
    if let Err(e) = execute(&doc, &mut orchestrator) {
        eprintln!("error: {e}");
        return EXIT_INPUT_ERROR;
    }
    let dot = graph::render_dot(orchestrator.plan());
    match emit(&dot, args.out.as_deref()) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}
