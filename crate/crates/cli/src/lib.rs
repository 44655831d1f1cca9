//! Command-line front end for `nilmult`.
//!
//! [`run`] parses arguments, executes one command and returns the rendered
//! output together with the process exit code, so the binary and the tests
//! share one code path.
//!
//! Exit codes: `0` ok, `1` usage or input error, `2` arithmetic overflow or
//! capacity limit, `3` a `--expect clean` run found counterexamples.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nilmult::abelian::{
    canonicalize, parse_partition, FactoredOrder, GroupSpec, InvariantFactorForm, PGroupPartition,
};
use nilmult::classify::{
    self, Case, ClassificationCase, InequalityRanges, VerificationReport, WittRange,
};
use nilmult::hallbasis::{generate_hall_basis, witt, BasicCommutator};
use nilmult::multiplier::{
    nilpotent_multiplier, nilpotent_multiplier_p_group, MultiplierStructure,
};
use nilmult::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_EXPECTATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nilmult",
    version,
    about = "Nilpotent multipliers of finite abelian groups and exhaustive bound checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of basic commutators of a given weight (Witt formula).
    Witt {
        /// Weight.
        #[arg(short = 'n', long)]
        weight: u32,
        /// Number of letters.
        #[arg(short = 'd', long)]
        letters: u64,
    },
    /// List Hall basic commutators by weight.
    Hall {
        #[arg(short = 'd', long)]
        letters: u32,
        #[arg(short = 'w', long = "max-weight")]
        max_weight: u32,
    },
    /// Structure and order of the c-nilpotent multiplier.
    Multiplier(MultiplierArgs),
    /// Abelian p-groups of order p^n whose multiplier has order p^witt(c+1, n-t).
    Classify(ClassifyArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("group_input").required(true).multiple(false)))]
struct MultiplierArgs {
    /// Cyclic orders such as 4,2,2, or a symbolic p-group such as p^3,p,p.
    #[arg(short = 'G', long, group = "group_input", allow_hyphen_values = true)]
    group: Option<String>,
    /// Symbolic p-group as a weakly decreasing partition such as 3,1,1.
    #[arg(long, group = "group_input")]
    partition: Option<String>,
    /// Nilpotency class.
    #[arg(short = 'c', long)]
    class: u32,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("t_choice").required(true).multiple(false)))]
struct ClassifyArgs {
    #[arg(short = 'n', long)]
    n: u32,
    #[arg(short = 'c', long)]
    class: u32,
    #[arg(short = 't', long, group = "t_choice")]
    t: Option<u32>,
    /// Every 0 <= t <= n-1.
    #[arg(long, group = "t_choice")]
    all_t: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Witt,
    Schur,
    Bound,
    Thm34,
    Inequalities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Clean,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Largest n (weight for witt). Defaults: witt 12, bound 25, thm34 25; for
    /// inequalities the defaults are lemma i <= 12, III n <= 40, sandwich n <= 25.
    #[arg(long)]
    max_n: Option<u32>,
    /// Largest class c (default 4).
    #[arg(long)]
    max_c: Option<u32>,
    /// Largest letter count for witt (default 4).
    #[arg(long)]
    max_d: Option<u32>,
    /// Largest weight checked at d = 2 for witt (default 20).
    #[arg(long)]
    binary_max_n: Option<u32>,
    /// Largest group order for schur (default 4096).
    #[arg(long)]
    max_order: Option<u64>,
    /// Exit with code 3 if the suite reports any counterexample.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

/// Overall outcome recorded in every [`CommandResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommandStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "counterexamples-found")]
    CounterexamplesFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallLayer {
    pub weight: u32,
    pub count: usize,
    pub commutators: Vec<BasicCommutator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierResult {
    /// Invariant factors of a concrete input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<InvariantFactorForm>,
    /// Partition of a symbolic p-group input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PGroupPartition>,
    pub class: u32,
    pub structure: MultiplierStructure,
    /// Order of a concrete multiplier as prime exponents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<FactoredOrder>,
    /// `e` with order `p^e` for a symbolic p-group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_exponent: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Witt {
        value: u128,
    },
    Hall {
        counts: Vec<usize>,
        layers: Vec<HallLayer>,
    },
    Multiplier(MultiplierResult),
    Classify(VerificationReport),
    Verify(VerificationReport),
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Payload,
    pub status: CommandStatus,
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Present whenever the command ran to completion.
    pub result: Option<CommandResult>,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
            result: None,
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                        result: None,
                    }
                }
                _ => Outcome::failure(EXIT_USAGE, text),
            };
        }
    };

    let expect_clean = matches!(
        &cli.command,
        Command::Verify(VerifyArgs {
            expect: Some(Expect::Clean),
            ..
        })
    );
    let result = match execute(&cli.command) {
        Ok(result) => result,
        Err(e) => {
            let code = if e.is_capacity() {
                EXIT_CAPACITY
            } else {
                EXIT_USAGE
            };
            return Outcome::failure(code, format!("error: {e}\n"));
        }
    };
    let stdout = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&result).expect("results serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(&result),
    };
    let code = if expect_clean && result.status == CommandStatus::CounterexamplesFound {
        EXIT_EXPECTATION
    } else {
        EXIT_OK
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
        result: Some(result),
    }
}

fn report_status(report: &VerificationReport) -> CommandStatus {
    if report.is_clean() {
        CommandStatus::Ok
    } else {
        CommandStatus::CounterexamplesFound
    }
}

fn execute(command: &Command) -> Result<CommandResult, Error> {
    match command {
        Command::Witt { weight, letters } => Ok(CommandResult {
            command: "witt".into(),
            inputs: inputs([("weight", json!(weight)), ("letters", json!(letters))]),
            result: Payload::Witt {
                value: witt(*weight, *letters)?,
            },
            status: CommandStatus::Ok,
        }),
        Command::Hall {
            letters,
            max_weight,
        } => {
            let basis = generate_hall_basis(*letters, *max_weight)?;
            let layers = (1..=*max_weight)
                .map(|k| HallLayer {
                    weight: k,
                    count: basis.weight(k).len(),
                    commutators: basis.weight(k).to_vec(),
                })
                .collect();
            Ok(CommandResult {
                command: "hall".into(),
                inputs: inputs([
                    ("letters", json!(letters)),
                    ("max_weight", json!(max_weight)),
                ]),
                result: Payload::Hall {
                    counts: basis.counts(),
                    layers,
                },
                status: CommandStatus::Ok,
            })
        }
        Command::Multiplier(args) => multiplier_command(args),
        Command::Classify(args) => {
            let report = match args.t {
                Some(t) => {
                    let case = classify::classification_case(args.n, args.class, t)?;
                    VerificationReport::new(
                        "thm34",
                        &[
                            ("n", args.n.into()),
                            ("c", args.class.into()),
                            ("t", t.into()),
                        ],
                        vec![Case::Classification(case)],
                    )
                }
                None => classify::theorem34_report(args.n, args.class)?,
            };
            let mut echo = inputs([("n", json!(args.n)), ("class", json!(args.class))]);
            match args.t {
                Some(t) => echo.insert("t".into(), json!(t)),
                None => echo.insert("all_t".into(), json!(true)),
            };
            Ok(CommandResult {
                command: "classify".into(),
                inputs: echo,
                status: report_status(&report),
                result: Payload::Classify(report),
            })
        }
        Command::Verify(args) => verify_command(args),
    }
}

fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn multiplier_command(args: &MultiplierArgs) -> Result<CommandResult, Error> {
    let (spec, echo) = match (&args.group, &args.partition) {
        (Some(g), _) => (g.parse::<GroupSpec>()?, ("group", json!(g))),
        (None, Some(p)) => (
            GroupSpec::Symbolic(parse_partition(p)?),
            ("partition", json!(p)),
        ),
        (None, None) => unreachable!("clap enforces one group input"),
    };
    let result = match spec {
        GroupSpec::Concrete(g) => {
            let invariant = canonicalize(&g)?;
            let structure = nilpotent_multiplier(&invariant, args.class)?;
            MultiplierResult {
                invariant_factors: Some(invariant),
                partition: None,
                class: args.class,
                order: Some(structure.order()?),
                p_exponent: None,
                structure,
            }
        }
        GroupSpec::Symbolic(lambda) => {
            let structure = nilpotent_multiplier_p_group(&lambda, args.class)?;
            MultiplierResult {
                invariant_factors: None,
                partition: Some(lambda),
                class: args.class,
                order: None,
                p_exponent: Some(structure.p_exponent()?),
                structure,
            }
        }
    };
    Ok(CommandResult {
        command: "multiplier".into(),
        inputs: inputs([echo, ("class", json!(args.class))]),
        result: Payload::Multiplier(result),
        status: CommandStatus::Ok,
    })
}

fn verify_command(args: &VerifyArgs) -> Result<CommandResult, Error> {
    let max_c = args.max_c.unwrap_or(4);
    let suite_name;
    let report = match args.suite {
        Suite::Witt => {
            suite_name = "witt";
            let defaults = WittRange::default();
            classify::witt_suite(WittRange {
                max_n: args.max_n.unwrap_or(defaults.max_n),
                max_d: args.max_d.unwrap_or(defaults.max_d),
                binary_max_n: args.binary_max_n.unwrap_or(defaults.binary_max_n),
            })?
        }
        Suite::Schur => {
            suite_name = "schur";
            classify::schur_suite(args.max_order.unwrap_or(4096))?
        }
        Suite::Bound => {
            suite_name = "bound";
            classify::bound_suite(args.max_n.unwrap_or(25), max_c)?
        }
        Suite::Thm34 => {
            suite_name = "thm34";
            classify::thm34_suite(args.max_n.unwrap_or(25), max_c)?
        }
        Suite::Inequalities => {
            suite_name = "inequalities";
            let ranges = match args.max_n {
                Some(n) => InequalityRanges::uniform(n, max_c),
                None => InequalityRanges {
                    max_c,
                    ..InequalityRanges::default()
                },
            };
            classify::inequality_suite(ranges)?
        }
    };
    let mut echo = inputs([("suite", json!(suite_name))]);
    let optional = [
        ("max_n", args.max_n.map(u64::from)),
        ("max_c", args.max_c.map(u64::from)),
        ("max_d", args.max_d.map(u64::from)),
        ("binary_max_n", args.binary_max_n.map(u64::from)),
        ("max_order", args.max_order),
    ];
    for (k, v) in optional {
        if let Some(v) = v {
            echo.insert(k.into(), json!(v));
        }
    }
    if args.expect.is_some() {
        echo.insert("expect".into(), json!("clean"));
    }
    Ok(CommandResult {
        command: "verify".into(),
        inputs: echo,
        status: report_status(&report),
        result: Payload::Verify(report),
    })
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let pad = w - cell.chars().count();
                s.push_str(cell);
                s.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        line(row.clone());
    }
    out
}

fn join_partitions(ps: &[PGroupPartition]) -> String {
    if ps.is_empty() {
        return "-".into();
    }
    ps.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn classification_rows(cases: &[&ClassificationCase]) -> String {
    let rows: Vec<Vec<String>> = cases
        .iter()
        .map(|c| {
            vec![
                c.n.to_string(),
                c.c.to_string(),
                c.t.to_string(),
                c.target_exponent.to_string(),
                c.expected.to_string(),
                join_partitions(&c.solutions),
                c.status.to_string(),
            ]
        })
        .collect();
    table(
        &["n", "c", "t", "target", "expected", "solutions", "status"],
        &rows,
    )
}

fn case_line(case: &Case) -> String {
    match case {
        Case::Witt(w) => format!(
            "witt n={} d={}: formula {} vs lyndon {} ({})",
            w.n, w.d, w.witt, w.lyndon, w.status
        ),
        Case::Schur(s) => format!(
            "schur {}: formula {} vs oracle {} ({})",
            s.group, s.formula, s.oracle, s.status
        ),
        Case::Bound(b) => format!(
            "bound n={} c={}: bound {} max {} maximizers {} violations {} ({})",
            b.n,
            b.c,
            b.bound,
            b.max_found,
            join_partitions(&b.maximizers),
            join_partitions(&b.violations),
            b.status
        ),
        Case::Classification(c) => format!(
            "thm34 n={} c={} t={}: target {} expected {} solutions {} ({})",
            c.n,
            c.c,
            c.t,
            c.target_exponent,
            c.expected,
            join_partitions(&c.solutions),
            c.status
        ),
        Case::Inequality(f) => {
            let params = f
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "{} {}: {} {} {} {}",
                f.name,
                params,
                f.lhs,
                f.name.relation(),
                f.rhs,
                if f.holds { "holds" } else { "FAILS" }
            )
        }
    }
}

fn render_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    let params = report
        .parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(out, "suite        {}", report.suite);
    let _ = writeln!(out, "parameters   {params}");
    let _ = writeln!(
        out,
        "cases        {} ({} confirmed, {} counterexamples)",
        report.summary.cases, report.summary.confirmed, report.summary.counterexamples
    );
    let bad: Vec<&Case> = report.counterexamples().collect();
    if !bad.is_empty() {
        out.push_str("counterexamples:\n");
        for case in bad {
            let _ = writeln!(out, "  {}", case_line(case));
        }
    }
    out
}

/// Human-readable rendering of a result.
pub fn render_text(result: &CommandResult) -> String {
    match &result.result {
        Payload::Witt { value } => format!("{value}\n"),
        Payload::Hall { layers, .. } => {
            let rows: Vec<Vec<String>> = layers
                .iter()
                .map(|l| {
                    vec![
                        l.weight.to_string(),
                        l.count.to_string(),
                        l.commutators
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                    ]
                })
                .collect();
            table(&["weight", "count", "commutators"], &rows)
        }
        Payload::Multiplier(m) => {
            let mut rows = Vec::new();
            match (&m.invariant_factors, &m.partition) {
                (Some(g), _) => rows.push(vec!["group".into(), g.to_string()]),
                (None, Some(p)) => rows.push(vec!["p-group".into(), p.to_string()]),
                (None, None) => {}
            }
            rows.push(vec!["class".into(), m.class.to_string()]);
            rows.push(vec!["structure".into(), m.structure.to_string()]);
            if let Some(order) = &m.order {
                rows.push(vec!["order".into(), order.to_string()]);
            }
            if let Some(e) = m.p_exponent {
                rows.push(vec!["order".into(), format!("p^{e}")]);
                rows.push(vec!["p-exponent".into(), e.to_string()]);
            }
            let mut out = String::new();
            for row in rows {
                let _ = writeln!(out, "{:<11}{}", row[0], row[1]);
            }
            out
        }
        Payload::Classify(report) => {
            let cases: Vec<&ClassificationCase> = report
                .cases
                .iter()
                .filter_map(|c| match c {
                    Case::Classification(c) => Some(c),
                    _ => None,
                })
                .collect();
            let mut out = classification_rows(&cases);
            let _ = writeln!(
                out,
                "{} cases: {} confirmed, {} counterexamples",
                report.summary.cases, report.summary.confirmed, report.summary.counterexamples
            );
            out
        }
        Payload::Verify(report) => render_report(report),
    }
}
