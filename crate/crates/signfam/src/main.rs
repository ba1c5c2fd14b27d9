use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use signfam::cache::{cache_key, CachedStatus, ResultCache};
use signfam::io::{read_family, write_family};
use signfam::report::{emit, Format, VerificationReport};
use signfam::suites::{run_all, run_suite, SuiteError, SuiteParams};
use signfam_core::constructions::{classify_vector, ekr_family, inductive_extend, split_family, ClassKind, LastClass};
use signfam_core::formulas::{self as f, format_rational};
use signfam_core::solver::{solve_extremal, Deadline, Target};
use signfam_core::{enumerate_all, Profile, VectorFamily};

#[derive(Parser)]
#[command(name = "signfam", version, about = "Extremal families of signed vectors")]
struct Cli {
    /// JSON file of solver results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Solver budget in seconds.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Nkl {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
}

impl Nkl {
    fn profile(self) -> Result<Profile, CliError> {
        Profile::new(self.n, self.k, self.l).map_err(CliError::invalid)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    G,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Ekr,
    Inductive,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaName {
    FamilySize,
    GClosedL1,
    GBounds,
    GEkr,
    Increment,
    ProvenThreshold,
    ConjecturedThreshold,
    PSplit,
    PIncrement,
    N0,
    XCount,
    YCount,
    Ratio,
    Alpha,
    Coefficient,
}

#[derive(Subcommand)]
enum Command {
    /// Print every vector of a profile as a family file.
    Enumerate {
        #[command(flatten)]
        nkl: Nkl,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute g (no product -2l) or m (no negative product).
    Solve {
        target: TargetArg,
        #[command(flatten)]
        nkl: Nkl,
        /// Search all families instead of shifted ones only.
        #[arg(long)]
        no_shift_pruning: bool,
        /// Accepted for compatibility; the search is always sequential.
        #[arg(long)]
        deterministic: bool,
        /// Write the best family found to this file.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build an explicit family and write it as a family file.
    Construct {
        kind: ConstructKind,
        #[command(flatten)]
        nkl: Nkl,
        /// Plus side of a split family, e.g. `1,2,3`; defaults to the best prefix.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<usize>>,
        /// Input family for the inductive step; defaults to the first-coordinate family.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Label each member of a family by its last coordinate and covering class.
    Classify {
        #[arg(long)]
        family: PathBuf,
    },
    /// Evaluate a closed form exactly.
    Formula {
        name: FormulaName,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Run one verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Restrict to one profile; comparison-family suites read n as the base dimension.
        #[arg(long, requires_all = ["k", "l"])]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        no_shift_pruning: bool,
    },
    /// Run every suite and emit one combined report.
    Report {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(io::Error),
}

impl CliError {
    fn invalid(e: impl ToString) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        CliError::invalid(e)
    }
}

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_INVALID: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn open_cache(path: Option<&Path>) -> ResultCache {
    match path {
        None => ResultCache::in_memory(),
        Some(p) => {
            let (cache, warning) = ResultCache::open(p);
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            cache
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_family(path: &Path) -> Result<VectorFamily, CliError> {
    let file = File::open(path)?;
    read_family(BufReader::new(file)).map_err(CliError::invalid)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut cache = open_cache(cli.cache.as_deref());
    let budget = cli.budget.map(Duration::from_secs);
    let code = match cli.command {
        Command::Enumerate { nkl, output: out } => {
            let fam = enumerate_all(nkl.profile()?);
            let mut w = output(out.as_deref())?;
            write_family(&fam, &mut w)?;
            w.flush()?;
            0
        }
        Command::Solve {
            target,
            nkl,
            no_shift_pruning,
            deterministic: _,
            witness,
        } => solve(
            &mut cache,
            nkl.profile()?,
            target,
            !no_shift_pruning,
            budget,
            witness.as_deref(),
            cli.format,
        )?,
        Command::Construct {
            kind,
            nkl,
            x,
            input,
            output: out,
        } => {
            let p = nkl.profile()?;
            let fam = match kind {
                ConstructKind::Ekr => ekr_family(p),
                ConstructKind::Inductive => {
                    let base = match input {
                        Some(path) => load_family(&path)?,
                        None => ekr_family(p),
                    };
                    inductive_extend(&base).map_err(CliError::invalid)?
                }
                ConstructKind::Split => {
                    let x = match x {
                        Some(x) => x,
                        None => {
                            let best = f::p_split(p.n as u64, p.k as u64, p.l as u64).map_err(CliError::invalid)?;
                            (1..=best.argmax as usize).collect()
                        }
                    };
                    split_family(p, &x).map_err(CliError::invalid)?
                }
            };
            let mut w = output(out.as_deref())?;
            write_family(&fam, &mut w)?;
            w.flush()?;
            0
        }
        Command::Classify { family } => {
            classify(&load_family(&family)?, cli.format.unwrap_or(Format::Csv))?;
            0
        }
        Command::Formula { name, n, k, l, t, m } => {
            let values = formula(name, [n, k, l, t, m])?;
            print_map(&values, cli.format.unwrap_or(Format::Json))?;
            0
        }
        Command::Verify {
            suite,
            trials,
            n,
            k,
            l,
            no_shift_pruning,
        } => {
            let profile = match (n, k, l) {
                (Some(n), Some(k), Some(l)) => Some(Profile::new(n, k, l).map_err(CliError::invalid)?),
                _ => None,
            };
            let params = SuiteParams {
                seed: cli.seed,
                trials,
                profile,
                budget,
                shift_pruning: !no_shift_pruning,
            };
            let rep = run_suite(&suite, &params, &mut cache)?;
            finish_reports(&[rep], cli.format.unwrap_or(Format::Json), None)?
        }
        Command::Report { output: out } => {
            let params = SuiteParams {
                seed: cli.seed,
                budget,
                ..SuiteParams::default()
            };
            let reps = run_all(&params, &mut cache)?;
            finish_reports(&reps, cli.format.unwrap_or(Format::Json), out.as_deref())?
        }
    };
    cache.save()?;
    Ok(code)
}

/// Emits reports and a per-suite summary on stderr; returns the exit code.
fn finish_reports(reps: &[VerificationReport], format: Format, out: Option<&Path>) -> Result<u8, CliError> {
    let mut w = output(out)?;
    emit(reps, format, &mut w)?;
    writeln!(w)?;
    w.flush()?;
    let mut code = 0;
    for r in reps {
        let s = r.summary;
        eprintln!(
            "{}: {} passed, {} failed ({} required), {} informational, {} incomplete",
            r.suite, s.passed, s.failed, s.required_failed, s.informational, s.incomplete
        );
        if let Some(c) = r.failures().next() {
            eprintln!(
                "  first failure {}: expected {} got {} [{}]",
                c.id, c.expected, c.actual, c.inputs
            );
        }
        if s.incomplete > 0 {
            code = EXIT_TIMEOUT;
        } else if !r.all_required_pass() && code == 0 {
            code = EXIT_VERIFY_FAILED;
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct SolveOutput {
    n: usize,
    k: usize,
    l: usize,
    target: &'static str,
    pruning: bool,
    value: usize,
    status: CachedStatus,
    from_cache: bool,
    nodes_explored: Option<u64>,
    elapsed_ms: Option<u128>,
}

fn solve(
    cache: &mut ResultCache,
    p: Profile,
    target: TargetArg,
    pruning: bool,
    budget: Option<Duration>,
    witness: Option<&Path>,
    format: Option<Format>,
) -> Result<u8, CliError> {
    let (target, name) = match target {
        TargetArg::G => (Target::G, "g"),
        TargetArg::M => (Target::M, "m"),
    };
    p.require_extremal().map_err(CliError::invalid)?;
    // m is always searched without pruning.
    let pruning = pruning && target == Target::G;
    let key = cache_key(p, target, pruning);
    let cached = cache
        .get(&key)
        .filter(|e| e.status == CachedStatus::Exact && witness.is_none())
        .cloned();
    let out = match cached {
        Some(e) => SolveOutput {
            n: p.n,
            k: p.k,
            l: p.l,
            target: name,
            pruning,
            value: e.value,
            status: e.status,
            from_cache: true,
            nodes_explored: None,
            elapsed_ms: None,
        },
        None => {
            let mut deadline = Deadline::new(budget.unwrap_or(Duration::from_secs(60)));
            let r = solve_extremal(p, target, &mut deadline, pruning).map_err(CliError::invalid)?;
            cache.record(key, r.value, r.status.into());
            if let Some(path) = witness {
                let mut w = BufWriter::new(File::create(path)?);
                write_family(&r.witness, &mut w)?;
                w.flush()?;
            }
            SolveOutput {
                n: p.n,
                k: p.k,
                l: p.l,
                target: name,
                pruning,
                value: r.value,
                status: r.status.into(),
                from_cache: false,
                nodes_explored: Some(r.nodes_explored),
                elapsed_ms: r.elapsed.map(|d| d.as_millis()),
            }
        }
    };
    let stdout = io::stdout().lock();
    match format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut w = stdout;
            serde_json::to_writer_pretty(&mut w, &out).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout);
            w.serialize(&out).map_err(io::Error::from)?;
            w.flush()?;
        }
    }
    Ok(if out.status == CachedStatus::Exact {
        0
    } else {
        EXIT_TIMEOUT
    })
}

#[derive(Serialize)]
struct LabelRow {
    vector: String,
    last: &'static str,
    kind: &'static str,
    t: Option<usize>,
    m: Option<usize>,
    j: Option<usize>,
    j_prime: Option<usize>,
    in_b1_prime: Option<bool>,
    cond12: Option<bool>,
}

fn classify(fam: &VectorFamily, format: Format) -> Result<(), CliError> {
    let mut rows = Vec::with_capacity(fam.len());
    for v in fam {
        let last = LastClass::of(v);
        let mut row = LabelRow {
            vector: v.to_string(),
            last: match last {
                LastClass::Minus => "minus",
                LastClass::Zero => "zero",
                LastClass::Plus => "plus",
            },
            kind: "",
            t: None,
            m: None,
            j: None,
            j_prime: None,
            in_b1_prime: None,
            cond12: None,
        };
        if last == LastClass::Plus {
            let label = classify_vector(v).map_err(CliError::invalid)?;
            row.in_b1_prime = Some(label.in_b1_prime);
            row.cond12 = label.cond12;
            match label.kind {
                ClassKind::B1 { t, m } => (row.kind, row.t, row.m) = ("B1", Some(t), Some(m)),
                ClassKind::B2 { j, j_prime } => (row.kind, row.j, row.j_prime) = ("B2", Some(j), Some(j_prime)),
                ClassKind::Unclassified => row.kind = "unclassified",
            }
        }
        rows.push(row);
    }
    let stdout = io::stdout().lock();
    match format {
        Format::Json => {
            let mut w = stdout;
            serde_json::to_writer_pretty(&mut w, &rows).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout);
            for r in &rows {
                w.serialize(r).map_err(io::Error::from)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn need(v: Option<u64>, name: &str) -> Result<u64, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("this formula needs --{name}")))
}

fn formula(name: FormulaName, [n, k, l, t, m]: [Option<u64>; 5]) -> Result<BTreeMap<&'static str, String>, CliError> {
    use FormulaName::*;
    let inv = CliError::invalid;
    let mut out = BTreeMap::new();
    let mut put = |key: &'static str, v: String| {
        out.insert(key, v);
    };
    match name {
        FamilySize => {
            let p =
                Profile::new(need(n, "n")? as usize, need(k, "k")? as usize, need(l, "l")? as usize).map_err(inv)?;
            put("value", f::family_size(&p).to_string());
        }
        GClosedL1 => put(
            "value",
            f::g_closed_l1(need(n, "n")?, need(k, "k")?).map_err(inv)?.to_string(),
        ),
        GBounds => {
            let b = f::g_bounds(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?;
            put("lower", b.lower.to_string());
            put("upper", b.upper.to_string());
        }
        GEkr => {
            let e = f::g_ekr_value(need(n, "n")?, need(k, "k")?, need(l, "l")?);
            put("value", e.value.to_string());
            put("in_range", e.in_range.to_string());
        }
        Increment => {
            let i = f::increment_value(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?;
            put("value", i.value.to_string());
            put("proven_range", i.proven_range.to_string());
            put("conjectured_threshold", format_rational(&i.conjectured_threshold));
        }
        ProvenThreshold => put(
            "value",
            f::proven_increment_threshold(need(k, "k")?, need(l, "l")?).to_string(),
        ),
        ConjecturedThreshold => put(
            "value",
            format_rational(&f::conjectured_threshold(need(k, "k")?, need(l, "l")?).map_err(inv)?),
        ),
        PSplit => {
            let p = f::p_split(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?;
            put("value", p.value.to_string());
            put("argmax", p.argmax.to_string());
        }
        PIncrement => {
            let r = f::p_increment_report(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?;
            put("current", r.current.to_string());
            put("previous", r.previous.to_string());
            put("increment", r.increment.to_string());
            put("drop_minus", r.drop_minus.to_string());
            put("drop_plus", r.drop_plus.to_string());
            put("claimed", r.claimed().to_string());
            put("average", format_rational(&r.average));
            put("equality_holds", r.equality_holds.to_string());
            put("average_bound_holds", r.average_bound_holds.to_string());
            put("pascal_bound_holds", r.pascal_bound_holds.to_string());
        }
        N0 => put("value", f::n0_threshold(need(k, "k")?, need(l, "l")?).to_string()),
        XCount => put(
            "value",
            f::x_tm_count(
                need(n, "n")?,
                need(k, "k")?,
                need(l, "l")?,
                need(t, "t")?,
                need(m, "m")?,
            )
            .to_string(),
        ),
        YCount => put(
            "value",
            f::y_tm_count(
                need(n, "n")?,
                need(k, "k")?,
                need(l, "l")?,
                need(t, "t")?,
                need(m, "m")?,
            )
            .to_string(),
        ),
        Ratio => {
            let r = f::tm_ratio(
                need(n, "n")?,
                need(k, "k")?,
                need(l, "l")?,
                need(t, "t")?,
                need(m, "m")?,
            )
            .map_err(inv)?;
            put("value", format_rational(&r));
        }
        Alpha => put(
            "value",
            format_rational(&f::alpha(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?),
        ),
        Coefficient => {
            let c = f::coefficient(need(n, "n")?, need(k, "k")?, need(l, "l")?).map_err(inv)?;
            put("value", format_rational(&c));
            put(
                "below_one",
                (c < num_rational::BigRational::from_integer(1.into())).to_string(),
            );
        }
    }
    Ok(out)
}

fn print_map(values: &BTreeMap<&'static str, String>, format: Format) -> Result<(), CliError> {
    let mut w = io::stdout().lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, values).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            writeln!(w, "name,value")?;
            for (k, v) in values {
                writeln!(w, "{k},{v}")?;
            }
        }
    }
    Ok(())
}
