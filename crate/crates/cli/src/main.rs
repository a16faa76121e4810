use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use endoca::algebra::{entropy_witness, Algebra, FiniteAlgebra, PowerAlgebra};
use endoca::ca::eca;
use endoca::hom::{count_homs, enumerate_homs};
use endoca::theory::{classify_eca, count_endoca, enumerate_endoca, EcaPredicate};
use endoca::{builtins, suites};
use endoca::{CellularAutomaton, Configuration, Error, FiniteGroup, Group, Limits, MemorySet};

/// Finite algebras, homomorphisms and endomorphic cellular automata.
#[derive(Parser)]
#[command(name = "endoca", version)]
struct Cli {
    /// Largest domain for homomorphism search and rule tables.
    #[arg(long, global = true, default_value_t = Limits::default().domain)]
    cap_domain: usize,
    /// Largest exhaustively enumerated configuration or tuple space.
    #[arg(long, global = true, default_value_t = Limits::default().configs)]
    cap_configs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file or built-in alphabet.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Validate a group file or built-in group.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Count or list homomorphisms.
    Hom {
        #[command(subcommand)]
        action: HomCmd,
    },
    /// Work with cellular automaton files.
    Ca {
        #[command(subcommand)]
        action: CaCmd,
    },
    /// Endomorphic automata with a given memory set.
    Endoca {
        #[command(subcommand)]
        action: EndocaCmd,
    },
    /// Elementary cellular automata.
    Eca {
        #[command(subcommand)]
        action: EcaCmd,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Check {
        algebra: String,
        /// Also decide whether every operation is a homomorphism.
        #[arg(long)]
        entropic: bool,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Check { group: String },
}

#[derive(Subcommand)]
enum HomCmd {
    Count {
        domain: String,
        codomain: String,
        /// Use the `s`-th direct power of the domain.
        #[arg(long)]
        power: Option<usize>,
    },
    List {
        domain: String,
        codomain: String,
        #[arg(long)]
        power: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CaCmd {
    /// Apply to a configuration, printing one row per step.
    Apply {
        ca: PathBuf,
        /// Space-separated cell values.
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        /// `rows,cols` for configurations over `Z2`.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Print the composite `first o second` as a CA file.
    Compose { first: PathBuf, second: PathBuf },
    IsEndo { ca: PathBuf },
    Minimize { ca: PathBuf },
}

#[derive(Subcommand)]
enum EndocaCmd {
    Count {
        alphabet: String,
        #[command(flatten)]
        memory: MemoryArgs,
    },
    List {
        alphabet: String,
        #[command(flatten)]
        memory: MemoryArgs,
    },
}

#[derive(clap::Args)]
struct MemoryArgs {
    #[arg(long, default_value = "Z")]
    group: String,
    /// Space-separated memory elements.
    #[arg(long, allow_hyphen_values = true, default_value = "-1 0 1")]
    memory: String,
}

#[derive(Subcommand)]
enum EcaCmd {
    Classify {
        /// `additive`, `boolean-hom`, or an alphabet file or name.
        #[arg(long)]
        predicate: String,
    },
    Run {
        rule: u32,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Initial cells as a string of 0s and 1s.
        #[arg(long)]
        init: String,
    },
}

enum Failure {
    Verification(String),
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Inconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_algebra(arg: &str) -> Result<FiniteAlgebra, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(FiniteAlgebra::parse(&read(path)?)?);
    }
    builtins::alphabet(arg).ok_or_else(|| usage(format!("no algebra file or built-in alphabet `{arg}`")))
}

fn load_group(arg: &str) -> Result<Group, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(FiniteGroup::parse(&read(path)?)?.into());
    }
    builtins::group(arg).ok_or_else(|| usage(format!("no group file or built-in group `{arg}`")))
}

/// `name`, else `name^s` as a direct power.
fn load_domain(arg: &str, power: Option<usize>) -> Result<Box<dyn Algebra>, Failure> {
    let (base, s) = match (load_algebra(arg), arg.rsplit_once('^')) {
        (Ok(a), _) => (a, power),
        (Err(e), Some((b, s))) => match s.parse::<usize>() {
            Ok(_) if power.is_some() => return Err(usage("give either `name^s` or --power, not both")),
            Ok(s) => (load_algebra(b)?, Some(s)),
            Err(_) => return Err(e),
        },
        (Err(e), None) => return Err(e),
    };
    Ok(match s {
        Some(s) => Box::new(PowerAlgebra::new(Arc::new(base), s)?),
        None => Box::new(base),
    })
}

/// Group and alphabet names resolve to built-ins, then to `<name>.group`
/// and `<name>.alg` beside the CA file, then to paths.
fn load_ca(path: &Path) -> Result<(String, CellularAutomaton), Failure> {
    let dir = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let text = read(path)?;
    let beside = |name: &str, ext: &str| {
        let p = dir.join(format!("{name}.{ext}"));
        if p.is_file() {
            p.to_string_lossy().into_owned()
        } else {
            name.to_string()
        }
    };
    let resolve_group = |name: &str| {
        let arg = if builtins::group(name).is_some() { name.to_string() } else { beside(name, "group") };
        load_group(&arg).map_err(|f| Error::parse(0, failure_text(f)))
    };
    let resolve_alphabet = |name: &str| {
        let arg = if builtins::alphabet(name).is_some() { name.to_string() } else { beside(name, "alg") };
        load_algebra(&arg)
            .map(Arc::new)
            .map_err(|f| Error::parse(0, failure_text(f)))
    };
    Ok(CellularAutomaton::parse(&text, resolve_group, resolve_alphabet)?)
}

fn failure_text(f: Failure) -> String {
    match f {
        Failure::Verification(s) | Failure::Usage(s) | Failure::Cap(s) => s,
    }
}

fn row(x: &Configuration, sep: &str) -> String {
    x.cells().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits {
        domain: cli.cap_domain,
        configs: cli.cap_configs,
    };
    match cli.command {
        Command::Algebra {
            action: AlgebraCmd::Check { algebra, entropic },
        } => {
            let a = Arc::new(load_algebra(&algebra)?);
            let ops: Vec<String> = a
                .signature()
                .ops()
                .iter()
                .map(|o| format!("{}/{}", o.name, o.arity))
                .collect();
            let mut out = format!("algebra {}: size {}, operations [{}]\nvalid\n", a.name(), a.size(), ops.join(" "));
            if entropic {
                match entropy_witness(&a) {
                    None => out.push_str("entropic: true\n"),
                    Some(w) => out.push_str(&format!("entropic: false\nwitness: {w}\n")),
                }
            }
            Ok(out)
        }
        Command::Group {
            action: GroupCmd::Check { group },
        } => {
            let g = load_group(&group)?;
            let order = g.order().map_or("infinite".to_string(), |m| m.to_string());
            Ok(format!("group {}: order {order}\nvalid\n", g.name()))
        }
        Command::Hom { action } => {
            let (domain, codomain, power, list) = match action {
                HomCmd::Count { domain, codomain, power } => (domain, codomain, power, false),
                HomCmd::List { domain, codomain, power } => (domain, codomain, power, true),
            };
            let dom = load_domain(&domain, power)?;
            let cod = load_algebra(&codomain)?;
            if list {
                let homs = enumerate_homs(dom.as_ref(), &cod, &limits)?;
                Ok(homs
                    .items
                    .iter()
                    .map(|h| {
                        let vals: Vec<String> = h.table.iter().map(|v| v.to_string()).collect();
                        vals.join(" ") + "\n"
                    })
                    .collect())
            } else {
                let (n, _) = count_homs(dom.as_ref(), &cod, &limits)?;
                Ok(format!("{n}\n"))
            }
        }
        Command::Ca { action } => run_ca(action, &limits),
        Command::Endoca { action } => {
            let (alphabet, memory, list) = match action {
                EndocaCmd::Count { alphabet, memory } => (alphabet, memory, false),
                EndocaCmd::List { alphabet, memory } => (alphabet, memory, true),
            };
            let a = Arc::new(load_algebra(&alphabet)?);
            let g = load_group(&memory.group)?;
            let s = MemorySet::parse(g, &memory.memory)?;
            if list {
                let fam = enumerate_endoca(&s, &a, &limits)?;
                let mut out = format!("memory {s}\n");
                for ca in fam.items() {
                    out.push_str(&row(&Configuration::Finite(ca.table().to_vec()), " "));
                    if let Some(n) = ca.wolfram_number() {
                        out.push_str(&format!("  # rule {n}"));
                    }
                    out.push('\n');
                }
                Ok(out)
            } else {
                let c = count_endoca(s.len(), &a, &limits)?;
                let methods: Vec<String> = c.methods.iter().map(|(m, n)| format!("{m}={n}")).collect();
                Ok(format!("{}\nmethod: {}\nagreeing: {}\n", c.count, c.method, methods.join(" ")))
            }
        }
        Command::Eca { action } => match action {
            EcaCmd::Classify { predicate } => {
                let p = EcaPredicate::parse(&predicate, |name| {
                    load_algebra(name)
                        .map(Arc::new)
                        .map_err(|_| Error::Unknown(format!("predicate `{name}`")))
                })?;
                let rules: Vec<String> = classify_eca(&p)?.iter().map(|r| r.to_string()).collect();
                Ok(rules.join(",") + "\n")
            }
            EcaCmd::Run { rule, period, steps, init } => {
                let cells = init
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(usage(format!("--init must be 0s and 1s, found `{c}`"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if let Some(p) = period.filter(|&p| p != cells.len()) {
                    return Err(usage(format!("--period {p} but --init has {} cells", cells.len())));
                }
                let x = Configuration::periodic(cells)?;
                let rows = eca(rule)?.evolve(&x, steps)?;
                Ok(rows.iter().map(|r| row(r, "") + "\n").collect())
            }
        },
        Command::Verify { suite } => {
            let report = suites::run(&suite, &limits)?;
            if report.passed() {
                Ok(report.to_string())
            } else {
                Err(Failure::Verification(report.to_string()))
            }
        }
    }
}

fn run_ca(action: CaCmd, limits: &Limits) -> Outcome {
    match action {
        CaCmd::Apply { ca, config, shape, steps } => {
            let (_, tau) = load_ca(&ca)?;
            let cells = config
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| usage(format!("bad cell `{t}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let x = match (tau.group(), shape) {
                (Group::Finite(_), None) => Configuration::Finite(cells),
                (Group::Finite(_), Some(_)) => return Err(usage("--shape applies to Z2 only")),
                (_, Some(shape)) => {
                    let (r, c) = shape
                        .split_once(',')
                        .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                        .ok_or_else(|| usage("--shape expects rows,cols"))?;
                    Configuration::periodic_2d(r, c, cells)?
                }
                (_, None) => Configuration::periodic(cells)?,
            };
            let rows = tau.evolve(&x, steps)?;
            Ok(rows.iter().map(|r| row(r, " ") + "\n").collect())
        }
        CaCmd::Compose { first, second } => {
            let (n1, a) = load_ca(&first)?;
            let (n2, b) = load_ca(&second)?;
            Ok(a.compose(&b, limits)?.to_text(&format!("{n1}_after_{n2}")))
        }
        CaCmd::IsEndo { ca } => {
            let (_, tau) = load_ca(&ca)?;
            Ok(match tau.endomorphism_violation() {
                None => "endomorphic: true\n".to_string(),
                Some(v) => format!(
                    "endomorphic: false\nviolation: `{}` on {:?}: rule gives {}, expected {}\n",
                    tau.alphabet().signature().name(v.op),
                    v.args,
                    v.lhs,
                    v.rhs
                ),
            })
        }
        CaCmd::Minimize { ca } => {
            let (name, tau) = load_ca(&ca)?;
            Ok(tau.minimal_memory().to_text(&name))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
