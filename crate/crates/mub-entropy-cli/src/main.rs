//! `mubent`: entropy bounds under collision-probability constraints, MUB
//! uncertainty relations, Figure-style comparison curves, and seeded
//! verification runs.
//!
//! Exit codes: 0 success, 1 infeasible input or range error, 2 verification
//! failure, 3 inconclusive oracle.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mub_entropy::multi::arc_transfer_sweep;
use mub_entropy::mub::{bound_comparison_table, larsen_sweep, mub_entropy_decomposition};
use mub_entropy::oracle::{
    search_min_entropy_multi, search_min_entropy_single, SearchConfig, DEFAULT_LATTICE_STEP,
};
use mub_entropy::prior::{comparison_curve, BoundLabel};
use mub_entropy::single::extremal_distribution;
use mub_entropy::{Error, MultiBoundQuery, SingleBoundQuery};

/// Larsen residual gate for `verify larsen`.
const LARSEN_TOL: f64 = 1e-9;
/// Oracle may sit this far below a closed form before it counts as a
/// violation (floating-point allowance).
const TIGHTNESS_BELOW: f64 = 1e-6;
/// Oracle must come this close to the closed form from above.
const TIGHTNESS_ABOVE: f64 = 1e-4;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "mubent",
    version,
    about = "Tight entropy lower bounds under collision-probability constraints and the uncertainty relations they give for mutually unbiased bases"
)]
struct Cli {
    /// Output format (structured mirrors human field-for-field).
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Print entropies in bits instead of nats (display only).
    #[arg(long, global = true)]
    bits: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Tight lower bound on H for one distribution with an IC cap and a
    /// probability floor, plus the minimizing distribution.
    Single {
        /// Number of outcomes.
        #[arg(long)]
        d: usize,
        /// Collision-probability cap.
        #[arg(long)]
        k: f64,
        /// Per-outcome probability floor.
        #[arg(long, default_value_t = 0.0)]
        pmin: f64,
    },
    /// Uncertainty bound for M mutually unbiased observables in dimension d.
    MubBound {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        /// Also print the earlier bounds and the improvement.
        #[arg(long)]
        compare: bool,
    },
    /// Emit the comparison curve `k,h_tilde,azer_col_m1,neg_ln_k` as CSV.
    Curve {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded verification runs; nonzero exit on violation.
    Verify {
        #[command(subcommand)]
        subject: VerifySubject,
    },
}

#[derive(Subcommand)]
enum VerifySubject {
    /// Σ IC over the full basis set equals Tr(ρ²)+1 for random states.
    Larsen {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sampling oracle against the single-distribution closed form.
    TightnessSingle {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 0.0)]
        pmin: f64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Collision acceptance half-width below the target.
        #[arg(long, default_value_t = 1e-4)]
        band: f64,
    },
    /// Lattice oracle against the multi-distribution bound.
    TightnessMulti {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ktot: f64,
        /// Comma-separated outcome counts, one per distribution.
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_LATTICE_STEP)]
        step: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cross-arc transfers strictly reduce the entropy sum.
    Arcs {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Value {
    Int(i64),
    Num(f64),
    /// Entropy in nats; subject to --bits conversion.
    Entropy(f64),
    Text(String),
    List(Vec<f64>),
}

/// Ordered key/value record; the same fields drive every output format.
struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    fn new(command: &str) -> Self {
        let fields = vec![
            ("schema".to_string(), Value::Int(SCHEMA_VERSION as i64)),
            ("command".to_string(), Value::Text(command.to_string())),
            (
                "lib_version".to_string(),
                Value::Text(env!("CARGO_PKG_VERSION").to_string()),
            ),
        ];
        Self { fields }
    }

    fn push(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    fn render_value(value: &Value, bits: bool) -> String {
        match value {
            Value::Int(i) => i.to_string(),
            Value::Num(x) => format!("{x}"),
            Value::Entropy(x) => {
                if bits {
                    format!("{}", x / std::f64::consts::LN_2)
                } else {
                    format!("{x}")
                }
            }
            Value::Text(s) => s.clone(),
            Value::List(xs) => xs
                .iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }

    fn render_key(key: &str, value: &Value, bits: bool) -> String {
        if bits && matches!(value, Value::Entropy(_)) {
            key.replace("_nats", "_bits")
        } else {
            key.to_string()
        }
    }

    fn print(&self, format: Format, bits: bool) {
        match format {
            Format::Human => {
                let width = self
                    .fields
                    .iter()
                    .map(|(k, v)| Self::render_key(k, v, bits).len())
                    .max()
                    .unwrap_or(0);
                for (key, value) in &self.fields {
                    println!(
                        "{:width$} = {}",
                        Self::render_key(key, value, bits),
                        Self::render_value(value, bits),
                    );
                }
            }
            Format::Structured => {
                for (key, value) in &self.fields {
                    println!(
                        "{}={}",
                        Self::render_key(key, value, bits),
                        Self::render_value(value, bits)
                    );
                }
            }
            Format::Csv => {
                let keys: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(k, v)| Self::render_key(k, v, bits))
                    .collect();
                let values: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(_, v)| Self::render_value(v, bits))
                    .collect();
                println!("{}", keys.join(","));
                println!("{}", values.join(","));
            }
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification(message: String) -> Self {
        Self { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Inconclusive => 3,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("mubent: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Single { d, k, pmin } => cmd_single(cli, *d, *k, *pmin),
        Command::MubBound { d, m, compare } => cmd_mub_bound(cli, *d, *m, *compare),
        Command::Curve {
            d,
            from,
            to,
            steps,
            out,
        } => cmd_curve(cli, *d, *from, *to, *steps, out.as_deref()),
        Command::Verify { subject } => match subject {
            VerifySubject::Larsen { d, trials, seed } => verify_larsen(cli, *d, *trials, *seed),
            VerifySubject::TightnessSingle {
                d,
                k,
                pmin,
                budget,
                seed,
                band,
            } => verify_tightness_single(cli, *d, *k, *pmin, *budget, *seed, *band),
            VerifySubject::TightnessMulti {
                m,
                ktot,
                dims,
                step,
                seed,
            } => verify_tightness_multi(cli, *m, *ktot, dims.clone(), *step, *seed),
            VerifySubject::Arcs { d, pairs, seed } => verify_arcs(cli, *d, *pairs, *seed),
        },
    }
}

fn cmd_single(cli: &Cli, d: usize, k: f64, p_min: f64) -> Result<(), Failure> {
    let query = SingleBoundQuery::new(d, k, p_min)?;
    let extremal = extremal_distribution(&query)?;
    let mut record = Record::new("single");
    record.push("d", Value::Int(d as i64));
    record.push("k", Value::Num(k));
    record.push("p_min", Value::Num(p_min));
    record.push("kappa", Value::Int(extremal.big_k() as i64));
    record.push("delta", Value::Num(extremal.delta()));
    record.push("n_floor", Value::Int(extremal.n_floor() as i64));
    record.push("p_mid", Value::Num(extremal.p_mid()));
    record.push("p_top", Value::Num(extremal.p_top()));
    record.push("h_hat_nats", Value::Entropy(extremal.entropy()));
    record.push(
        "achieved_ic",
        Value::Num(extremal.distribution().collision_probability()),
    );
    record.push(
        "distribution",
        Value::List(extremal.distribution().probs().to_vec()),
    );
    record.print(cli.format, cli.bits);
    Ok(())
}

fn cmd_mub_bound(cli: &Cli, d: usize, m: usize, compare: bool) -> Result<(), Failure> {
    let decomposition = mub_entropy_decomposition(d, m)?;
    let mut record = Record::new("mub-bound");
    record.push("d", Value::Int(d as i64));
    record.push("m", Value::Int(m as i64));
    record.push("k_tot", Value::Num((d + m - 1) as f64 / d as f64));
    record.push("k_min", Value::Num(decomposition.k_min));
    record.push("k_max", Value::Num(decomposition.k_max));
    record.push("phi", Value::Int(decomposition.phi as i64));
    record.push("k_residual", Value::Num(decomposition.k_residual));
    record.push(
        "degenerate",
        Value::Text(decomposition.degenerate.to_string()),
    );
    record.push("bound_nats", Value::Entropy(decomposition.bound));
    if compare {
        let mut azer = f64::NAN;
        for row in bound_comparison_table(d, m)? {
            match row.label {
                BoundLabel::NewTheorem => {}
                BoundLabel::ColboundCap => record.push("colbound_cap", Value::Num(row.value)),
                label => {
                    if label == BoundLabel::Azer {
                        azer = row.value;
                    }
                    record.push(
                        &format!("{}_nats", label.as_str()),
                        Value::Entropy(row.value),
                    );
                }
            }
        }
        record.push("improvement_nats", Value::Entropy(decomposition.bound - azer));
    }
    record.print(cli.format, cli.bits);
    Ok(())
}

fn cmd_curve(
    cli: &Cli,
    d: usize,
    from: f64,
    to: f64,
    steps: usize,
    out: Option<&std::path::Path>,
) -> Result<(), Failure> {
    let rows = comparison_curve(d, from, to, steps)?;
    let scale = if cli.bits {
        1.0 / std::f64::consts::LN_2
    } else {
        1.0
    };
    let mut csv = String::from("k,h_tilde,azer_col_m1,neg_ln_k\n");
    for row in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            row.k,
            row.h_tilde * scale,
            row.azer_col_m1 * scale,
            row.neg_ln_k * scale
        );
    }
    match out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn verify_larsen(cli: &Cli, d: usize, trials: usize, seed: u64) -> Result<(), Failure> {
    let sweep = larsen_sweep(d, trials, seed)?;
    let pass = sweep.max_residual <= LARSEN_TOL;

    if cli.format == Format::Csv {
        println!("basis_index,ic");
        for (i, ic) in sweep.worst.per_basis_ic.iter().enumerate() {
            println!("{i},{ic}");
        }
        println!("max_residual,{}", sweep.max_residual);
        println!("trials,{trials}");
        println!("verdict,{}", if pass { "pass" } else { "fail" });
    } else {
        let mut record = Record::new("verify-larsen");
        record.push("d", Value::Int(d as i64));
        record.push("trials", Value::Int(trials as i64));
        record.push("seed", Value::Int(seed as i64));
        record.push("max_residual", Value::Num(sweep.max_residual));
        record.push("tolerance", Value::Num(LARSEN_TOL));
        record.push("worst_lhs", Value::Num(sweep.worst.lhs));
        record.push("worst_rhs", Value::Num(sweep.worst.rhs));
        record.push(
            "verdict",
            Value::Text(if pass { "pass" } else { "fail" }.to_string()),
        );
        record.print(cli.format, cli.bits);
    }

    if pass {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "larsen residual {} exceeds {LARSEN_TOL}",
            sweep.max_residual
        )))
    }
}

fn verify_tightness_single(
    cli: &Cli,
    d: usize,
    k: f64,
    p_min: f64,
    budget: usize,
    seed: u64,
    band: f64,
) -> Result<(), Failure> {
    let query = SingleBoundQuery::new(d, k, p_min)?;
    let bound = mub_entropy::h_hat(&query)?;
    let config = SearchConfig::with_params(budget, seed, band, 200)?;
    let found = search_min_entropy_single(&query, &config)?;
    let gap = found.best_entropy - bound;
    let pass = (-TIGHTNESS_BELOW..=TIGHTNESS_ABOVE).contains(&gap);

    let mut record = Record::new("verify-tightness-single");
    record.push("d", Value::Int(d as i64));
    record.push("k", Value::Num(k));
    record.push("p_min", Value::Num(p_min));
    record.push("budget", Value::Int(budget as i64));
    record.push("seed", Value::Int(seed as i64));
    record.push("h_hat_nats", Value::Entropy(bound));
    record.push("oracle_nats", Value::Entropy(found.best_entropy));
    record.push("gap_nats", Value::Entropy(gap));
    record.push("feasible_samples", Value::Int(found.feasible_count as i64));
    record.push(
        "verdict",
        Value::Text(if pass { "pass" } else { "fail" }.to_string()),
    );
    record.print(cli.format, cli.bits);

    if pass {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "oracle gap {gap} outside [-{TIGHTNESS_BELOW}, {TIGHTNESS_ABOVE}]"
        )))
    }
}

fn verify_tightness_multi(
    cli: &Cli,
    m: usize,
    k_tot: f64,
    dims: Vec<usize>,
    step: f64,
    seed: u64,
) -> Result<(), Failure> {
    let query = MultiBoundQuery::new(m, k_tot, dims)?;
    let bound = mub_entropy::multi_bound(&query)?.bound;
    let found = search_min_entropy_multi(&query, step)?;
    let gap = found.best_total_entropy - bound;
    let pass = (-TIGHTNESS_BELOW..=TIGHTNESS_ABOVE).contains(&gap);

    let mut record = Record::new("verify-tightness-multi");
    record.push("m", Value::Int(m as i64));
    record.push("k_tot", Value::Num(k_tot));
    record.push(
        "dims",
        Value::List(query.dims().iter().map(|&d| d as f64).collect()),
    );
    record.push("step", Value::Num(step));
    record.push("seed", Value::Int(seed as i64));
    record.push("bound_nats", Value::Entropy(bound));
    record.push("lattice_nats", Value::Entropy(found.best_total_entropy));
    record.push("gap_nats", Value::Entropy(gap));
    record.push("witness_k", Value::List(found.best_k.clone()));
    record.push(
        "verdict",
        Value::Text(if pass { "pass" } else { "fail" }.to_string()),
    );
    record.print(cli.format, cli.bits);

    if pass {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "lattice gap {gap} outside [-{TIGHTNESS_BELOW}, {TIGHTNESS_ABOVE}]"
        )))
    }
}

fn verify_arcs(cli: &Cli, d: usize, pairs: usize, seed: u64) -> Result<(), Failure> {
    let sweep = arc_transfer_sweep(d, pairs, seed)?;
    let pass = sweep.all_hold && sweep.min_margin > 0.0;

    let mut record = Record::new("verify-arcs");
    record.push("d", Value::Int(d as i64));
    record.push("pairs", Value::Int(pairs as i64));
    record.push("seed", Value::Int(seed as i64));
    record.push("min_margin_nats", Value::Entropy(sweep.min_margin));
    record.push(
        "verdict",
        Value::Text(if pass { "pass" } else { "fail" }.to_string()),
    );
    record.print(cli.format, cli.bits);

    if pass {
        Ok(())
    } else {
        Err(Failure::verification(format!(
            "transfer margin {} not strictly positive",
            sweep.min_margin
        )))
    }
}
