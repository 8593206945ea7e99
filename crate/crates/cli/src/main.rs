//! `relcsp`: run consistency methods on instances, decide which methods
//! solve a template, check operation tables, and dump the built-in fixtures.
//!
//! stdout carries one JSON document per invocation; diagnostics go to stderr.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use relcsp::algebra::{
    check_conservative, check_majority, check_two_semilattice, induced_digraph, is_polymorphism,
    maximal_scc, parse_operation, FiniteOperation, Violation,
};
use relcsp::consistency::{outcome_to_value, run, Method, Options, Verdict};
use relcsp::fixtures::{self, random_instance, Fixture, InstanceParams, FIXTURE_NAMES};
use relcsp::hom::{enumerate_homs_with_budget, ENUMERATION_BUDGET};
use relcsp::solvability::{decide, verdict_to_value, SolvabilityVerdict, DEFAULT_NMAX};
use relcsp::structure::{parse_instance, parse_structure, serialize_instance, SizeBudget};
use relcsp::{Instance, Structure, ValueSet};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "relcsp", version, about = "Consistency methods over finite relational structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ac,
    Laac,
    Pac,
    Sac,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Ac => Method::Ac,
            MethodArg::Laac => Method::Laac,
            MethodArg::Pac => Method::Pac,
            MethodArg::Sac => Method::Sac,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a consistency method on an instance file.
    ///
    /// Exit 0 when the method does not reject, 1 on rejection.
    Run {
        #[arg(long, value_enum)]
        method: MethodArg,
        instance: PathBuf,
        /// Record the removal trace.
        #[arg(long)]
        trace: bool,
        /// Dispatch independent inner runs on the thread pool.
        #[arg(long)]
        parallel: bool,
    },
    /// Decide whether a method solves the CSP of a template file.
    ///
    /// Exit 0 solvable, 1 not solvable, 3 inconclusive up to `--nmax`.
    Decide {
        #[arg(long, value_enum)]
        method: MethodArg,
        template: PathBuf,
        /// Highest level checked by the pac and sac deciders.
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
        /// Cap on the universe size of constructed structures.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Report the laws an operation table satisfies.
    CheckOp {
        op: PathBuf,
        /// Also test whether the operation is a polymorphism of this structure.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// List, dump or sample the built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Enumerate every homomorphism of an instance by brute force.
    ///
    /// Exit 0 when one exists, 1 when none does.
    Oracle {
        instance: PathBuf,
        /// Maximum number of candidate maps examined.
        #[arg(long)]
        budget: Option<u128>,
    },
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Names and kinds of every fixture.
    List,
    /// The JSON document of one fixture.
    Dump { name: String },
    /// A seeded random instance over a fixture or a template file.
    Random {
        /// Fixture name or path to a structure file.
        template: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        elements: usize,
        #[arg(long, default_value_t = 6)]
        tuples: usize,
        /// Plant a homomorphism, reported on stderr.
        #[arg(long)]
        planted: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_structure(path: &Path) -> Result<Structure> {
    parse_structure(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_operation(path: &Path) -> Result<FiniteOperation> {
    parse_operation(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("json value serializes");
    // a closed pipe is the reader's choice, not an error
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn cmd_run(method: Method, path: &Path, opts: Options) -> Result<u8> {
    let inst = load_instance(path)?;
    let out = run(method, &inst, &opts);
    let mut v = outcome_to_value(&inst, &out);
    v["method"] = json!(method.as_str());
    emit(&v);
    let emptied = out.sets.iter().filter(|s| s.is_empty()).count();
    eprintln!(
        "{method}: {} on {} elements ({emptied} emptied)",
        out.verdict.as_str(),
        inst.lhs().len()
    );
    Ok(match out.verdict {
        Verdict::Reject => 1,
        Verdict::Unknown | Verdict::Accept(_) => 0,
    })
}

fn cmd_decide(method: Method, path: &Path, nmax: usize, budget: Option<u128>) -> Result<u8> {
    if nmax == 0 {
        bail!("--nmax must be at least 1");
    }
    let b = load_structure(path)?;
    let mut size = SizeBudget::default();
    if let Some(n) = budget {
        size.max_elements = n;
    }
    let v = decide(method, &b, nmax, &size)?;
    emit(&verdict_to_value(method, &b, &v));
    eprintln!("{method}: {}", v.outcome_str());
    Ok(match v {
        SolvabilityVerdict::Solvable(_) => 0,
        SolvabilityVerdict::NotSolvable { .. } => 1,
        SolvabilityVerdict::InconclusiveUpTo { .. } => 3,
    })
}

fn law(f: &FiniteOperation, check: relcsp::Result<Option<Violation>>) -> Result<Value> {
    Ok(match check {
        Ok(None) => json!({"holds": true, "witness": null}),
        Ok(Some(v)) => json!({
            "holds": false,
            "witness": {"law": v.law, "args": v.args.iter().map(|&a| &f.base()[a]).collect::<Vec<_>>()},
        }),
        Err(relcsp::Error::WrongArity { .. }) => Value::Null,
        Err(e) => return Err(e.into()),
    })
}

fn cmd_check_op(op: &Path, structure: Option<&Path>) -> Result<u8> {
    let f = load_operation(op)?;
    let mut report = Map::new();
    report.insert("arity".into(), json!(f.arity()));
    report.insert("majority".into(), law(&f, check_majority(&f))?);
    report.insert("two_semilattice".into(), law(&f, check_two_semilattice(&f))?);
    report.insert("conservative".into(), law(&f, check_conservative(&f))?);
    let twosem = f.arity() == 2 && check_two_semilattice(&f)?.is_none();
    if twosem {
        let names = |s: &ValueSet| s.iter().map(|x| f.base()[x].clone()).collect::<Vec<_>>();
        let edges: Vec<[&str; 2]> = induced_digraph(&f)?
            .into_iter()
            .map(|(a, b)| [f.base()[a].as_str(), f.base()[b].as_str()])
            .collect();
        let top = maximal_scc(&f, &ValueSet::full(f.base_len()))?;
        report.insert("digraph".into(), json!(edges));
        report.insert("maximal_scc".into(), json!(names(&top)));
    } else {
        report.insert("digraph".into(), Value::Null);
        report.insert("maximal_scc".into(), Value::Null);
    }
    let poly = match structure {
        Some(p) => {
            let b = load_structure(p)?;
            json!(is_polymorphism(&b, &f)?)
        }
        None => Value::Null,
    };
    report.insert("polymorphism".into(), poly);
    emit(&Value::Object(report));
    Ok(0)
}

fn cmd_fixtures(action: FixturesAction) -> Result<u8> {
    match action {
        FixturesAction::List => {
            let list: Vec<Value> = FIXTURE_NAMES
                .iter()
                .map(|&n| {
                    let kind = match fixtures::build(n) {
                        Ok(Fixture::Structure(_)) => "structure",
                        _ => "operation",
                    };
                    json!({"name": n, "kind": kind})
                })
                .collect();
            emit(&json!(list));
        }
        FixturesAction::Dump { name } => emit(&fixtures::build(&name)?.to_value()),
        FixturesAction::Random {
            template,
            seed,
            elements,
            tuples,
            planted,
        } => {
            let b = match fixtures::build(&template) {
                Ok(Fixture::Structure(s)) => s,
                Ok(Fixture::Operation(_)) => bail!("fixture `{template}` is an operation, not a structure"),
                Err(_) => load_structure(Path::new(&template))?,
            };
            let params = InstanceParams {
                elements,
                tuples,
                seed,
                planted,
            };
            let g = random_instance(&b, &params)?;
            let v: Value = serde_json::from_str(&serialize_instance(&g.instance))?;
            emit(&v);
            if let Some(h) = g.planted {
                let map: Vec<String> = h
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(a, &x)| format!("{}->{}", g.instance.lhs().element(a), b.element(x)))
                    .collect();
                eprintln!("planted: {}", map.join(" "));
            }
        }
    }
    Ok(0)
}

fn cmd_oracle(path: &Path, budget: Option<u128>) -> Result<u8> {
    let inst = load_instance(path)?;
    let homs = enumerate_homs_with_budget(
        inst.lhs(),
        inst.rhs(),
        inst.pins(),
        budget.unwrap_or(ENUMERATION_BUDGET),
    )?;
    let (lhs, rhs) = (inst.lhs(), inst.rhs());
    let first = homs.first().map(|h| {
        let m: Map<String, Value> = h
            .values()
            .iter()
            .enumerate()
            .map(|(a, &b)| (lhs.element(a).to_string(), json!(rhs.element(b))))
            .collect();
        Value::Object(m)
    });
    emit(&json!({
        "satisfiable": !homs.is_empty(),
        "count": homs.len(),
        "first": first,
    }));
    eprintln!("oracle: {} homomorphisms", homs.len());
    Ok(if homs.is_empty() { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            method,
            instance,
            trace,
            parallel,
        } => cmd_run(method.into(), &instance, Options { trace, parallel }),
        Command::Decide {
            method,
            template,
            nmax,
            budget,
        } => cmd_decide(method.into(), &template, nmax, budget),
        Command::CheckOp { op, structure } => cmd_check_op(&op, structure.as_deref()),
        Command::Fixtures { action } => cmd_fixtures(action),
        Command::Oracle { instance, budget } => cmd_oracle(&instance, budget),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
