use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chainbound::lp::{self, ZyArguments};
use chainbound::{
    cic_bound, compare, dic_bound_disjoint, dic_bound_singleton, mais_bound, search_disjoint, search_plain,
    search_singleton, verify_chain, CapacityMap, Chain, CompareOptions, Form, Instance, MessageSet, ModelOptions,
    Objective, SearchLimits, VerifiedChain,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chainbound", version, about = "Converse bounds for index coding instances")]
struct Cli {
    /// Whether text instances list side information (a) or interfering messages (b).
    #[arg(long, global = true, default_value = "a", value_parser = parse_form)]
    form: Form,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Not supported: every computation is deterministic.
    #[arg(long, global = true, hide = true)]
    seed: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Singleton,
    Disjoint,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Singleton when the chain has no crossing tower, otherwise disjoint.
    Auto,
    Singleton,
    Disjoint,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an instance and print it in both notations.
    Parse { instance: PathBuf },
    /// Maximum acyclic induced subgraph bound.
    Mais { instance: PathBuf },
    /// Search weighted alignment chains for the best bound.
    Search {
        instance: PathBuf,
        /// Largest number of spine edges [default: min(n-1, 6)].
        #[arg(long)]
        max_m: Option<usize>,
        /// Largest tower height [default: max(3, mais_size-2)].
        #[arg(long)]
        max_height: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Disjoint)]
        mode: Mode,
        /// Search nodes before the result is reported as non-exhaustive.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check a chain certificate against an instance.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// Distributed index coding bound of a chain certificate.
    DicBound {
        instance: PathBuf,
        capacities: PathBuf,
        certificate: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Auto)]
        variant: Variant,
    },
    /// Polymatroidal LP bound.
    Lp {
        instance: PathBuf,
        #[arg(long, default_value = "sum", value_parser = parse_objective)]
        objective: Objective,
        /// Zhang-Yeung instantiations: JSON list of 4-tuples of 1-based
        /// message lists, inline or as a file path.
        #[arg(long)]
        zy: Option<String>,
        /// Decoding constraints only for the extreme subsets.
        #[arg(long)]
        reduced: bool,
        /// Solve in exact arithmetic only.
        #[arg(long)]
        exact: bool,
        /// Write the model as self-describing JSON to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Every bound side by side, with their ordering checked.
    Compare {
        instance: PathBuf,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        max_height: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        /// Skip the LP above this many messages.
        #[arg(long)]
        lp_max_n: Option<usize>,
    },
}

fn parse_form(s: &str) -> Result<Form, String> {
    s.parse()
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    s.parse()
}

/// A failed run: exit code plus a message.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn violation(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

/// Output of a successful run. `ok == false` exits with code 1 after printing.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path, form: Form) -> Result<Instance, Failure> {
    Instance::read(&read(path)?, form).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_chain(path: &Path) -> Result<Chain, Failure> {
    Chain::from_certificate(&load_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_zy(arg: &str, n: usize) -> Result<Vec<ZyArguments>, Failure> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    let raw: Vec<[Vec<usize>; 4]> = serde_json::from_str(&text).map_err(|e| usage(format!("--zy: {e}")))?;
    raw.into_iter()
        .map(|tuple| {
            let mut sets = [MessageSet::EMPTY; 4];
            for (slot, members) in sets.iter_mut().zip(tuple) {
                for i in members {
                    if i == 0 || i > n {
                        return Err(usage(format!("--zy: message {i} out of range [1, {n}]")));
                    }
                    slot.insert(i - 1);
                }
            }
            Ok(sets)
        })
        .collect()
}

fn default_limits(
    inst: &Instance,
    max_m: Option<usize>,
    max_height: Option<usize>,
    budget: Option<u64>,
) -> SearchLimits {
    let mut limits = CompareOptions::defaults(inst).limits;
    if let Some(m) = max_m {
        limits.max_m = m;
    }
    if let Some(h) = max_height {
        limits.max_height = h;
    }
    if let Some(b) = budget {
        limits.node_budget = b;
    }
    limits
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let form = cli.form;
    match cli.command {
        Command::Parse { instance } => {
            let inst = load_instance(&instance, form)?;
            let json = json!({
                "n": inst.n(),
                "A": inst.to_json(Form::A)["A"],
                "B": inst.to_json(Form::B)["B"],
            });
            Ok(Output::ok(json, inst.render(form)))
        }
        Command::Mais { instance } => {
            let result = mais_bound(&load_instance(&instance, form)?);
            let text = format!("{} (acyclic set {:?})", result.bound, result.witness.to_one_based());
            Ok(Output::ok(serde_json::to_value(&result).expect("serializable"), text))
        }
        Command::Search {
            instance,
            max_m,
            max_height,
            mode,
            budget,
        } => {
            let inst = load_instance(&instance, form)?;
            let limits = default_limits(&inst, max_m, max_height, budget);
            let report = match mode {
                Mode::Singleton => search_singleton(&inst, limits),
                Mode::Disjoint => search_disjoint(&inst, limits),
                Mode::Plain => search_plain(&inst),
            };
            let text = match (&report.bound, &report.witness) {
                (Some(b), Some(c)) => format!("{b}  {}", c.render()),
                _ => "no chain".to_string(),
            };
            Ok(Output::ok(report.to_json(), text))
        }
        Command::Verify { instance, certificate } => {
            let inst = load_instance(&instance, form)?;
            let chain = load_chain(&certificate)?;
            let verdict = verify_chain(&inst, &chain).map_err(usage)?;
            let valid = verdict.is_valid();
            let bound = valid.then(|| cic_bound(&VerifiedChain::new(&inst, chain.clone()).expect("verified")));
            let violations: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
            let warnings: Vec<String> = verdict.warnings.iter().map(ToString::to_string).collect();
            let mut text = match &bound {
                Some(b) => format!("valid  {b}  {}", chain.render()),
                None => format!("invalid  {}", chain.render()),
            };
            for line in violations.iter().chain(&warnings) {
                text += &format!("\n  {line}");
            }
            Ok(Output {
                json: json!({
                    "valid": valid,
                    "bound": bound.map(|b| b.to_string()),
                    "chain": chain.render(),
                    "violations": violations,
                    "warnings": warnings,
                }),
                text,
                ok: valid,
            })
        }
        Command::DicBound {
            instance,
            capacities,
            certificate,
            variant,
        } => {
            let inst = load_instance(&instance, form)?;
            let cap = CapacityMap::from_json(&read(&capacities)?)
                .map_err(|e| usage(format!("{}: {e}", capacities.display())))?;
            let chain = load_chain(&certificate)?;
            let singleton = match variant {
                Variant::Auto => chain.is_singleton(),
                Variant::Singleton => true,
                Variant::Disjoint => false,
            };
            let result = if singleton {
                dic_bound_singleton(&inst, &cap, &chain)
            } else {
                dic_bound_disjoint(&inst, &cap, &chain)
            };
            let bound = result.map_err(|e| match e {
                chainbound::DicError::Chain(chainbound::ChainError::Invalid(v)) => {
                    violation(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
                }
                other => usage(other),
            })?;
            let mut text = bound.bound.to_string();
            for t in &bound.terms {
                text += &format!(
                    "\n  T_a={:?} T_b={:?} {}",
                    t.ta.to_one_based(),
                    t.tb.to_one_based(),
                    t.value
                );
            }
            Ok(Output::ok(serde_json::to_value(&bound).expect("serializable"), text))
        }
        Command::Lp {
            instance,
            objective,
            zy,
            reduced,
            exact,
            export,
        } => {
            let inst = load_instance(&instance, form)?;
            let mut model = lp::build_pm_model_with(&inst, objective, ModelOptions { reduced }).map_err(usage)?;
            let zy = match zy {
                Some(arg) => load_zy(&arg, inst.n())?,
                None => Vec::new(),
            };
            for &sets in &zy {
                let ineq = lp::zy_instantiate(sets, &inst).map_err(usage)?;
                model.add_inequality(&ineq).map_err(usage)?;
            }
            if let Some(path) = export {
                let body = serde_json::to_string_pretty(&model.to_json()).expect("serializable");
                fs::write(&path, body + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?;
            }
            let solution = if exact {
                lp::solve_exact(&model)
            } else {
                lp::solve(&model)
            }
            .map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            let name = match objective {
                Objective::Sum => "sum",
                Objective::Symmetric => "sym",
            };
            let json = json!({
                "value": solution.value.to_string(),
                "objective": name,
                "constraints": model.counts(),
                "zy": zy.len(),
            });
            Ok(Output::ok(json, format!("{} ({name})", solution.value)))
        }
        Command::Compare {
            instance,
            max_m,
            max_height,
            budget,
            lp_max_n,
        } => {
            let inst = load_instance(&instance, form)?;
            let mut options = CompareOptions::defaults(&inst);
            options.limits = default_limits(&inst, max_m, max_height, budget);
            if let Some(n) = lp_max_n {
                options.lp_max_n = n;
            }
            let result = compare(&inst, options);
            Ok(Output {
                json: result.to_json(),
                text: result.render().trim_end().to_string(),
                ok: result.is_consistent(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    if cli.seed.is_some() {
        eprintln!("error: --seed is not supported; every computation is deterministic");
        if format == Format::Json {
            println!("{}", json!({"error": "--seed is not supported"}));
        }
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            if format == Format::Json {
                println!("{}", json!({"error": failure.message, "exit_code": failure.code}));
            }
            ExitCode::from(failure.code)
        }
    }
}
