//! Command-line front end: table ingestion, bound reports in text or JSON,
//! feasible-set queries, and the verification harness entry points.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 validation
//! error, 3 resource budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nogold::analysis::{analyze, round_down, round_up, AnalysisOptions, Report};
use nogold::geometry::{
    is_feasible_gain, is_feasible_gain_restricted, is_feasible_pr_se1, is_feasible_pr_se2,
    is_feasible_quintuple, is_feasible_sens_triple, is_feasible_sens_triple_restricted,
    restricted_se1_necessary, se1_upper_from_density, FeasibleQuintuple, GainPair, SensTriple,
};
use nogold::model::{JointDensity, PairedCounts};
use nogold::verify::{exact_coverage_diff, lemma_suite, mc_coverage_restricted};
use nogold::{Error, ENGINE_ID, STATISTIC_ID};

fn version_banner() -> &'static str {
    static BANNER: std::sync::LazyLock<String> = std::sync::LazyLock::new(|| {
        format!(
            "{} (engine {ENGINE_ID}, statistic {STATISTIC_ID})",
            env!("CARGO_PKG_VERSION")
        )
    });
    BANNER.as_str()
}

#[derive(Parser)]
#[command(
    name = "nogold",
    version = version_banner(),
    about = "Exact one-sided confidence bounds for comparing two paired diagnostic tests without a gold standard"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a paired 2x2 table: gain and sensitivity bounds
    Bound(BoundArgs),
    /// Feasible-set membership tests and extremes for a given density
    Feasible(FeasibleArgs),
    /// Coverage checks: exact enumeration by default, Monte Carlo under
    /// the specificity-ordered model when --reps is given
    Coverage(CoverageArgs),
    /// Run the feasible-set validation suite
    Oracle(OracleArgs),
}

#[derive(clap::Args)]
struct BoundArgs {
    /// Count: both tests negative
    #[arg(long)]
    k00: Option<u64>,
    /// Count: first negative, second positive
    #[arg(long)]
    k01: Option<u64>,
    /// Count: first positive, second negative
    #[arg(long)]
    k10: Option<u64>,
    /// Count: both tests positive
    #[arg(long)]
    k11: Option<u64>,
    /// Table file: JSON {"k00":..,"k01":..,"k10":..,"k11":..} or two-line
    /// CSV laid out as the table (k00,k01 / k10,k11)
    #[arg(long, conflicts_with_all = ["k00", "k01", "k10", "k11"])]
    input: Option<PathBuf>,
    /// One-sided confidence level
    #[arg(long, default_value_t = 0.95)]
    beta: f64,
    /// Assumed prevalence upper bound in (0, 1]
    #[arg(long)]
    prevalence_max: Option<f64>,
    /// Use the direct (sharper, much slower) ratio bound for the
    /// sensitivity limit
    #[arg(long)]
    direct_ratio: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct FeasibleArgs {
    #[arg(long)]
    q00: Option<f64>,
    #[arg(long)]
    q01: Option<f64>,
    #[arg(long)]
    q10: Option<f64>,
    #[arg(long)]
    q11: Option<f64>,
    /// Derive the density from a table: four comma-separated counts
    /// k00,k01,k10,k11
    #[arg(long, value_name = "K00,K01,K10,K11",
          conflicts_with_all = ["q00", "q01", "q10", "q11"])]
    from_counts: Option<String>,
    /// Which feasible set to query
    #[arg(long, value_enum)]
    set: SetName,
    /// Print the interval endpoints of the selected inequality system
    /// instead of testing a point
    #[arg(long)]
    extremes: bool,
    #[arg(long)]
    pr: Option<f64>,
    #[arg(long)]
    sp1: Option<f64>,
    #[arg(long)]
    se1: Option<f64>,
    #[arg(long)]
    sp2: Option<f64>,
    #[arg(long)]
    se2: Option<f64>,
    /// Sensitivity gain Se2 - Se1 (sets C and C_le)
    #[arg(long, allow_hyphen_values = true)]
    dse: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetName {
    /// Full quintuple set (Pr, Sp1, Se1, Sp2, Se2)
    #[value(name = "A")]
    A,
    /// Sensitivity triple (Pr, Se1, Se2)
    #[value(name = "B")]
    B,
    /// Gain pair (Pr, Se2 - Se1)
    #[value(name = "C")]
    C,
    /// Pair (Pr, Se1)
    #[value(name = "D")]
    D,
    /// Pair (Pr, Se2)
    #[value(name = "E")]
    E,
    /// Restricted-model sensitivity triple
    #[value(name = "B_le")]
    BLe,
    /// Restricted-model gain pair
    #[value(name = "C_le")]
    CLe,
    /// Restricted-model (Pr, Se1), necessary condition only
    #[value(name = "D_le")]
    DLe,
    /// Restricted-model Se1 range, necessary condition only
    #[value(name = "E_le")]
    ELe,
}

#[derive(clap::Args)]
struct CoverageArgs {
    /// Sample size (exact mode enumerates every table; small n only)
    #[arg(long)]
    n: u64,
    #[arg(long)]
    beta: f64,
    /// Grid points per density axis (exact mode)
    #[arg(long, default_value_t = 21, conflicts_with_all = ["reps", "seed"])]
    grid: usize,
    /// Switch to Monte Carlo mode with this many parameter draws
    #[arg(long)]
    reps: Option<usize>,
    /// Monte Carlo seed
    #[arg(long, default_value_t = 0, requires = "reps")]
    seed: u64,
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Forward-soundness samples per model; equivalence and reverse
    /// checks scale down from this
    #[arg(long, default_value_t = 10000)]
    samples: usize,
}

enum Failure {
    Check(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn validation(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Validation(msg.into()))
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Feasible(args) => cmd_feasible(args),
        Command::Coverage(args) => cmd_coverage(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Validation(_) | Error::Infeasible(_) => ExitCode::from(2),
                Error::Resource { .. } => ExitCode::from(3),
            }
        }
    }
}

/// NOGOLD_THREADS caps the rayon pool used by the inner engines.
fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("NOGOLD_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| Error::Validation(format!("NOGOLD_THREADS = {raw:?} is not a count")))?;
    if threads == 0 {
        return Err(Error::Validation("NOGOLD_THREADS must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Validation(format!("thread pool: {e}")))
}

#[derive(serde::Deserialize)]
struct TableFile {
    k00: u64,
    k01: u64,
    k10: u64,
    k11: u64,
}

fn parse_csv_table(text: &str) -> Result<TableFile, Failure> {
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != 2 {
        return Err(validation(format!(
            "csv table must have 2 rows, found {}",
            rows.len()
        )));
    }
    let names = [["k00", "k01"], ["k10", "k11"]];
    let mut cells = [[0u64; 2]; 2];
    for (r, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(validation(format!(
                "csv row {} must have 2 cells, found {}",
                r + 1,
                fields.len()
            )));
        }
        for (c, field) in fields.iter().enumerate() {
            cells[r][c] = field.parse().map_err(|_| {
                validation(format!("{}: {field:?} is not a count", names[r][c]))
            })?;
        }
    }
    Ok(TableFile {
        k00: cells[0][0],
        k01: cells[0][1],
        k10: cells[1][0],
        k11: cells[1][1],
    })
}

fn load_table(args: &BoundArgs) -> Result<PairedCounts, Failure> {
    let table = if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| validation(format!("input {}: {e}", path.display())))?;
        if text.trim_start().starts_with('{') {
            serde_json::from_str::<TableFile>(&text)
                .map_err(|e| validation(format!("input json: {e}")))?
        } else {
            parse_csv_table(&text)?
        }
    } else {
        let cell = |name: &str, v: Option<u64>| {
            v.ok_or_else(|| validation(format!("missing cell --{name} (or use --input)")))
        };
        TableFile {
            k00: cell("k00", args.k00)?,
            k01: cell("k01", args.k01)?,
            k10: cell("k10", args.k10)?,
            k11: cell("k11", args.k11)?,
        }
    };
    Ok(PairedCounts::new(table.k00, table.k01, table.k10, table.k11)?)
}

fn print_text_report(r: &Report) {
    let k = &r.inputs;
    println!(
        "table [[{}, {}], [{}, {}]]  n={}  beta={}",
        k.k00,
        k.k01,
        k.k10,
        k.k11,
        k.n(),
        r.beta
    );
    println!(
        "gain_product_lower:   {:.4}   lower bound for Pr*(Se2-Se1), rounded down",
        r.gain_product_lower_display
    );
    if let (Some(cap), Some(g)) = (r.prevalence_max, r.gain_lower_at_cap_display) {
        println!("gain_lower_at_cap:    {g:.4}   with prevalence <= {cap}");
    }
    println!(
        "se1_upper:            {:.4}   upper bound for Se1, prevalence-free, rounded up",
        r.se1_upper_display
    );
    if let Some(s) = r.se1_upper_from_gain_display {
        println!("se1_upper_from_gain:  {s:.4}   implied by the capped gain bound");
    }
    if let Some(stmt) = &r.full_model_statement {
        println!("full model:           {stmt}");
    }
    println!(
        "method:               {} / {} (direct_ratio={})",
        r.method.engine, r.method.statistic, r.method.direct_ratio
    );
}

fn cmd_bound(args: BoundArgs) -> Result<(), Failure> {
    let table = load_table(&args)?;
    let options = AnalysisOptions {
        beta: args.beta,
        prevalence_max: args.prevalence_max,
        include_full_model_statement: true,
        include_direct_ratio_bound: args.direct_ratio,
    };
    let report = analyze(&table, &options)?;
    match args.format {
        Format::Text => print_text_report(&report),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
    }
    Ok(())
}

fn load_density(args: &FeasibleArgs) -> Result<JointDensity, Failure> {
    if let Some(raw) = &args.from_counts {
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(validation(format!(
                "--from-counts needs 4 comma-separated counts, found {}",
                parts.len()
            )));
        }
        let names = ["k00", "k01", "k10", "k11"];
        let mut cells = [0u64; 4];
        for (i, part) in parts.iter().enumerate() {
            cells[i] = part.parse().map_err(|_| {
                validation(format!("{}: {part:?} is not a count", names[i]))
            })?;
        }
        let k = PairedCounts::new(cells[0], cells[1], cells[2], cells[3])?;
        return Ok(JointDensity::from_counts(&k));
    }
    let cell = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| validation(format!("missing --{name} (or use --from-counts)")))
    };
    Ok(JointDensity::new([
        cell("q00", args.q00)?,
        cell("q01", args.q01)?,
        cell("q10", args.q10)?,
        cell("q11", args.q11)?,
    ])?)
}

fn need(name: &str, v: Option<f64>, set: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| validation(format!("set {set} needs --{name}")))
}

fn print_range(what: &str, lo: f64, hi: f64) {
    // Display rounding keeps the printed interval inside the exact one.
    println!(
        "{what} in [{:.4}, {:.4}]  (exact [{lo}, {hi}])",
        round_up(lo, 4),
        round_down(hi, 4)
    );
}

fn cmd_feasible(args: FeasibleArgs) -> Result<(), Failure> {
    let q = load_density(&args)?;
    if args.extremes {
        return feasible_extremes(&args, &q);
    }
    let verdict = match args.set {
        SetName::A => {
            let pt = FeasibleQuintuple::new(
                need("pr", args.pr, "A")?,
                need("sp1", args.sp1, "A")?,
                need("se1", args.se1, "A")?,
                need("sp2", args.sp2, "A")?,
                need("se2", args.se2, "A")?,
            )?;
            is_feasible_quintuple(&q, &pt)
        }
        SetName::B | SetName::BLe => {
            let name = if args.set == SetName::B { "B" } else { "B_le" };
            let t = SensTriple::new(
                need("pr", args.pr, name)?,
                need("se1", args.se1, name)?,
                need("se2", args.se2, name)?,
            )?;
            if args.set == SetName::B {
                is_feasible_sens_triple(&q, &t)
            } else {
                is_feasible_sens_triple_restricted(&q, &t)
            }
        }
        SetName::C | SetName::CLe => {
            let name = if args.set == SetName::C { "C" } else { "C_le" };
            let g = GainPair::new(need("pr", args.pr, name)?, need("dse", args.dse, name)?)?;
            if args.set == SetName::C {
                is_feasible_gain(&q, &g)
            } else {
                is_feasible_gain_restricted(&q, &g)
            }
        }
        SetName::D => is_feasible_pr_se1(&q, need("pr", args.pr, "D")?, need("se1", args.se1, "D")?),
        SetName::E => is_feasible_pr_se2(&q, need("pr", args.pr, "E")?, need("se2", args.se2, "E")?),
        SetName::DLe => {
            let ok = restricted_se1_necessary(
                &q,
                need("pr", args.pr, "D_le")?,
                need("se1", args.se1, "D_le")?,
            );
            println!(
                "{}",
                if ok {
                    "consistent (necessary condition holds; not a sufficiency certificate)"
                } else {
                    "excluded"
                }
            );
            return Ok(());
        }
        SetName::ELe => {
            let se1 = need("se1", args.se1, "E_le")?;
            let ok = se1 <= se1_upper_from_density(&q) + nogold::geometry::FEASIBILITY_TOL;
            println!(
                "{}",
                if ok {
                    "consistent (necessary condition holds; not a sufficiency certificate)"
                } else {
                    "excluded"
                }
            );
            return Ok(());
        }
    };
    println!("{}", if verdict { "member" } else { "not a member" });
    Ok(())
}

fn feasible_extremes(args: &FeasibleArgs, q: &JointDensity) -> Result<(), Failure> {
    match args.set {
        SetName::ELe => {
            let upper = se1_upper_from_density(q);
            println!(
                "se1 in [0.0000, {:.4}]  (exact upper {upper})",
                round_down(upper, 4)
            );
        }
        SetName::A | SetName::B => {
            let set = if args.set == SetName::A { "A" } else { "B" };
            let pr = need("pr", args.pr, set)?;
            print_range("Pr*Se1", pr - q.q0_plus(), q.q1_plus());
            print_range("Pr*Se2", pr - q.q_plus0(), q.q_plus1());
            print_range("Pr*(Se2-Se1)", -q.q10(), q.q01());
            print_range("Pr*(Se1+Se2-1)", -q.q00(), q.q11());
            if args.set == SetName::A {
                println!(
                    "with (1-Pr)*(1-Sp1) + Pr*Se1 = {} and (1-Pr)*(1-Sp2) + Pr*Se2 = {}",
                    q.q1_plus(),
                    q.q_plus1()
                );
            }
        }
        SetName::C => {
            let pr = need("pr", args.pr, "C")?;
            print_range(
                "Pr*dSe",
                (-q.q10()).max(q.q01() - q.q10() + pr - 1.0),
                q.q01().min(q.q01() - q.q10() + 1.0 - pr),
            );
        }
        SetName::CLe => {
            let pr = need("pr", args.pr, "C_le")?;
            print_range(
                "Pr*dSe",
                q.q01() - q.q10(),
                q.q01().min(q.q01() - q.q10() + 1.0 - pr),
            );
        }
        SetName::D => {
            let pr = need("pr", args.pr, "D")?;
            print_range("Pr*Se1", pr - q.q0_plus(), q.q1_plus());
        }
        SetName::E => {
            let pr = need("pr", args.pr, "E")?;
            print_range("Pr*Se2", pr - q.q_plus0(), q.q_plus1());
        }
        SetName::BLe => {
            let pr = need("pr", args.pr, "B_le")?;
            print_range("Pr*Se1", pr - q.q0_plus(), q.q1_plus());
            print_range("Pr*Se2", pr - q.q_plus0(), q.q_plus1());
            print_range("Pr*(Se2-Se1)", q.q01() - q.q10(), q.q01());
            print_range("Pr*(Se1+Se2-1)", -q.q00(), q.q11());
        }
        SetName::DLe => {
            let pr = need("pr", args.pr, "D_le")?;
            print_range(
                "Pr*Se1",
                pr - q.q0_plus(),
                q.q1_plus().min(pr + q.q10() - q.q01()),
            );
        }
    }
    Ok(())
}

fn cmd_coverage(args: CoverageArgs) -> Result<(), Failure> {
    if !(0.0..=1.0).contains(&args.beta) {
        return Err(validation(format!("beta = {} outside [0, 1]", args.beta)));
    }
    if let Some(reps) = args.reps {
        return mc_coverage(&args, reps);
    }
    let c = exact_coverage_diff(args.n, args.beta, args.grid)?;
    let pass = c.min_coverage >= args.beta;
    println!(
        "{} exact coverage: n={} beta={} grid={}x{}x{} tables={} min={:.6} at q=({:.4},{:.4},{:.4},{:.4})",
        if pass { "PASS" } else { "FAIL" },
        args.n,
        args.beta,
        args.grid,
        args.grid,
        args.grid,
        c.tables,
        c.min_coverage,
        c.argmin_q[0],
        c.argmin_q[1],
        c.argmin_q[2],
        c.argmin_q[3],
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "minimum coverage {:.6} below level {}",
            c.min_coverage, args.beta
        )))
    }
}

fn mc_coverage(args: &CoverageArgs, reps: usize) -> Result<(), Failure> {
    let mc = mc_coverage_restricted(args.n, args.beta, reps, args.seed)?;
    let threshold = args.beta - 3.0 * (args.beta * (1.0 - args.beta) / reps as f64).sqrt();
    let pass = mc.gain_coverage >= threshold && mc.se1_coverage >= threshold;
    println!(
        "{} mc coverage: n={} beta={} reps={} seed={} gain={:.4}(se {:.4}) se1={:.4}(se {:.4}) threshold={:.4}",
        if pass { "PASS" } else { "FAIL" },
        args.n,
        args.beta,
        mc.reps,
        args.seed,
        mc.gain_coverage,
        mc.gain_se,
        mc.se1_coverage,
        mc.se1_se,
        threshold,
    );
    if pass {
        Ok(())
    } else {
        Err(Failure::Check("empirical coverage below threshold".into()))
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<(), Failure> {
    let suite = lemma_suite(args.seed, args.samples);
    print!("{suite}");
    if suite.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check("feasible-set suite reported failures".into()))
    }
}
