use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qcore::{qbinom, QBinomSpec};
use qpl::battery::{self, Config};
use qpl::fnfamily::{
    b_seq, f_infinite, f_small, f_upper_exact, f_upper_n, overpartition_gf, FamilyParams,
    PochReading,
};
use qpl::{Int, Report, Series};

#[derive(Parser)]
#[command(
    name = "qpl",
    version,
    about = "Exact q-series families and identity checks"
)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// F_N(i,j,k;x)
    #[value(name = "F")]
    Upper,
    /// F(i,k;x)
    #[value(name = "Finf")]
    Infinite,
    /// f_N
    #[value(name = "f")]
    Small,
    /// b_N
    #[value(name = "b")]
    B,
    /// F(i,k;x)/(xq;q)_inf
    #[value(name = "opgf")]
    Overpartitions,
    /// Gaussian binomial [top, bottom] in q^base
    #[value(name = "qbinom")]
    QBinom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum XMode {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    Tracked,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a series.
    Coeffs {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        i: u32,
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long = "N", default_value_t = 0, allow_negative_numbers = true)]
        n: i64,
        /// Truncation order; polynomial families default to their full degree.
        #[arg(long = "T")]
        t: Option<u32>,
        #[arg(long, value_enum, default_value_t = XMode::Tracked)]
        x: XMode,
        /// Sign of the second term of b_N.
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        sign: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        top: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        bottom: i64,
        #[arg(long, default_value_t = 1)]
        base: u32,
    },
    /// Run verification checks (`all` or a list of names; see `list`).
    Verify {
        #[arg(default_value = "all")]
        checks: Vec<String>,
        #[arg(long = "T", env = "QPL_DEFAULT_T", default_value_t = 100)]
        t: u32,
        #[arg(long, default_value_t = 40)]
        n_max: i64,
        /// Largest weight for overpartition enumeration.
        #[arg(long, default_value_t = 18)]
        op_n_max: u32,
    },
    /// Compare both sides of F(1,1;1) = 1/(q^2,q^3;q^6)_inf to order T.
    Conjecture {
        #[arg(long = "T", env = "QPL_DEFAULT_T", default_value_t = 100)]
        t: u32,
        /// Add q^d to the right side.
        #[arg(long)]
        perturb_rhs: Option<u32>,
    },
    /// List the available checks.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match cli.command {
        Command::Coeffs {
            family,
            i,
            j,
            k,
            n,
            t,
            x,
            sign,
            top,
            bottom,
            base,
        } => {
            if base == 0 {
                eprintln!("error: --base must be positive");
                return ExitCode::from(2);
            }
            let t_inf = t.unwrap_or(battery_default_t());
            let s: Series = match family {
                Family::Upper => {
                    let p = FamilyParams::new(i, j, k, n);
                    t.map_or_else(|| f_upper_exact(p), |t| f_upper_n(p, t))
                }
                Family::Infinite => f_infinite(i, k, t_inf, x != XMode::One),
                Family::Small => f_small(
                    n,
                    t.unwrap_or(qpl::fnfamily::f_small_degree(n)),
                    PochReading::Single,
                ),
                Family::B => b_seq(
                    n,
                    t.unwrap_or(((n.max(0) + 1) * (n.max(0) + 1)) as u32),
                    sign,
                ),
                Family::Overpartitions => overpartition_gf(i, k, t_inf),
                Family::QBinom => {
                    let spec = QBinomSpec::new(top, bottom, base);
                    qbinom(spec, t.unwrap_or(spec.degree() as u32))
                }
            };
            let s = match x {
                XMode::Tracked => s,
                XMode::One => s.eval_x_one(),
                XMode::Zero => Series::from_terms(
                    s.truncation(),
                    s.terms()
                        .filter(|t| t.1 == 0)
                        .map(|(d, e, c)| (d, e, c.clone())),
                )
                .expect("x-free terms are valid"),
            };
            match cli.format {
                Format::Json => println!("{}", qcore::json::to_json(&s)),
                Format::Text => print!("{}", table(&s)),
            }
            ExitCode::SUCCESS
        }
        Command::Verify {
            checks,
            t,
            n_max,
            op_n_max,
        } => {
            let config = Config { t, n_max, op_n_max };
            let agg = match battery::run(&checks, config) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}; try `qpl list`");
                    return ExitCode::from(2);
                }
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&agg).unwrap()),
                Format::Text => print!("{}", agg.to_text()),
            }
            exit_for(agg.status.is_pass())
        }
        Command::Conjecture { t, perturb_rhs } => {
            let r = battery::conjecture(t, perturb_rhs);
            print_report(&r, cli.format);
            exit_for(r.passed())
        }
        Command::List => {
            let width = battery::CHECKS
                .iter()
                .map(|c| c.name.len())
                .max()
                .unwrap_or(0);
            for c in battery::CHECKS {
                println!("{:width$}  {}", c.name, c.about);
            }
            ExitCode::SUCCESS
        }
    }
}

fn battery_default_t() -> u32 {
    std::env::var("QPL_DEFAULT_T")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(100)
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn print_report(r: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(r).unwrap()),
        Format::Text => {
            println!("{}", r.summary_line());
            for n in &r.notes {
                println!("  {n}");
            }
        }
    }
}

/// One line per q-degree: `d  coefficient`, with the x-polynomial spelled out.
fn table(s: &Series) -> String {
    let mut rows: Vec<(u32, String)> = Vec::new();
    for d in 0..=s.truncation() {
        let c = s.coeff(d).unwrap();
        if c.is_empty() {
            continue;
        }
        let text = if s.is_x_free() {
            c[0].1.to_string()
        } else {
            x_poly(&c)
        };
        rows.push((d, text));
    }
    let width = rows
        .iter()
        .map(|r| r.0.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = format!("# truncation {}\n", s.truncation());
    if rows.is_empty() {
        out.push_str("0\n");
    }
    for (d, text) in rows {
        out.push_str(&format!("q^{d:<width$}  {text}\n"));
    }
    out
}

fn x_poly(c: &[(u32, Int)]) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(e, v)| match e {
            0 => v.to_string(),
            1 => format!("{v}*x"),
            _ => format!("{v}*x^{e}"),
        })
        .collect();
    parts.join(" + ").replace("+ -", "- ")
}
