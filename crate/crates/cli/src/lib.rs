//! Command-line front end for the `intcover` library.
//!
//! Every generator writes the text formats the solvers read, so commands
//! compose through pipes:
//!
//! ```text
//! intcover gen-tight --s 10 | intcover solve-greedy --k 2
//! intcover gen-counterexample --preset u2 | intcover verify-dr --k-max 4
//! ```

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intcover::approx::{solve_approx, ApproxParams};
use intcover::dp::DpSolver;
use intcover::generate::{gen_random, gen_random_chain, gen_tight_example};
use intcover::greedy::{greedy_permutation, ratio_report};
use intcover::io::{format_instance, parse_instance};
use intcover::set_system::{
    brute_opt, build_counterexample, check_diminishing_returns, format_set_system,
    parse_set_system, profits_from_values, CounterexampleSpec, SetSystem,
};
use intcover::{CoverError, Instance};
use num_rational::Ratio;
use num_traits::Zero;

#[derive(Debug, Parser)]
#[command(
    name = "intcover",
    version,
    about = "Partial covers of points by intervals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Args)]
struct Io {
    /// Input file; stdin when omitted.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct Out {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Random normalized instance.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, default_value_t = 100, allow_negative_numbers = true)]
        hi: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw intervals that never contain one another.
        #[arg(long)]
        chain: bool,
        /// Longest interval length for --chain.
        #[arg(long, default_value_t = 10)]
        max_len: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Three-interval instance where greedy's 2-prefix is worst.
    GenTight {
        #[arg(long)]
        s: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Set system whose optimal covers lose diminishing returns.
    GenCounterexample {
        #[arg(long, value_parser = ["u2"], default_value = "u2")]
        preset: String,
        #[arg(long)]
        u: Option<u64>,
        #[arg(long, value_parser = parse_ratio)]
        alpha: Option<Ratio<u64>>,
        #[arg(long, value_parser = parse_ratio)]
        beta: Option<Ratio<u64>>,
        #[arg(long, value_parser = parse_ratio)]
        gamma: Option<Ratio<u64>>,
        #[command(flatten)]
        out: Out,
    },
    /// Optimal cover by at most k intervals.
    SolveExact {
        #[arg(long, allow_hyphen_values = true)]
        k: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Greedy permutation, optionally cut after k steps.
    SolveGreedy {
        #[arg(long, allow_hyphen_values = true)]
        k: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Cover by at most k + floor(eps k) intervals beating the optimal k-cover.
    SolveApprox {
        #[arg(long, allow_hyphen_values = true)]
        k: usize,
        /// Rational ("1/2") or decimal ("0.5").
        #[arg(long, value_parser = parse_ratio)]
        eps: Ratio<u64>,
        #[command(flatten)]
        io: Io,
    },
    /// Greedy prefix coverage over the optimum for k = 1..=k-max.
    RatioReport {
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Check that optimal marginal profits never rise.
    VerifyDr {
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Exhaustive optimal k-cover of an instance or set system.
    Brute {
        #[arg(long, allow_hyphen_values = true)]
        k: usize,
        #[command(flatten)]
        io: Io,
    },
}

/// Parses "p/q" or a finite decimal like "0.25" into an exact positive ratio.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let bad = || format!("`{s}` is not a positive rational (use p/q or a decimal)");
    let r = if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ratio::new(p, q)
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || (int.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let digits = |t: &str| t.is_empty() || t.bytes().all(|b| b.is_ascii_digit());
        if !digits(int) || !digits(frac) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_v: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let denom = 10u64.pow(frac.len() as u32);
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or_else(bad)?;
        Ratio::new(numer, denom)
    };
    if r.is_zero() {
        return Err(bad());
    }
    Ok(r)
}

/// Failure of one invocation; maps to the process exit code.
#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn flag(flag: &str, err: CoverError) -> Self {
        Self::from_cover(err, Some(flag))
    }

    fn from_cover(err: CoverError, flag: Option<&str>) -> Self {
        match err {
            CoverError::InvariantBreach(_) => Failure::Internal(err.to_string()),
            other => match flag {
                Some(f) => Failure::Input(format!("{f}: {other}")),
                None => Failure::Input(other.to_string()),
            },
        }
    }
}

impl From<CoverError> for Failure {
    fn from(err: CoverError) -> Self {
        Self::from_cover(err, None)
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Failure::Input(err.to_string())
    }
}

enum Loaded {
    Intervals(Instance),
    Sets(SetSystem),
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Input(format!("--input {}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            stdin.read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn first_key(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_once(':').map(|(k, _)| k.trim()))
}

fn load_any(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let text = read_input(path, stdin)?;
    match first_key(&text) {
        Some("elements") => Ok(Loaded::Sets(parse_set_system(&text)?)),
        _ => Ok(Loaded::Intervals(parse_instance(&text)?.normalized())),
    }
}

fn load_instance(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Instance, Failure> {
    match load_any(path, stdin)? {
        Loaded::Intervals(i) => Ok(i),
        Loaded::Sets(_) => Err(Failure::Input(
            "expected an interval instance, got a set system".into(),
        )),
    }
}

fn emit(path: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Input(format!("--output {}: {e}", p.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Aligned columns for table output.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn execute(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    match cli.command {
        Command::GenRandom {
            n,
            m,
            lo,
            hi,
            seed,
            chain,
            max_len,
            out,
        } => {
            let inst = if chain {
                gen_random_chain(n, m, lo..=hi, max_len, seed)
            } else {
                gen_random(n, m, lo..=hi, seed)
            }
            .map_err(|e| Failure::flag("gen-random", e))?;
            emit(&out.output, &format_instance(&inst), stdout)
        }
        Command::GenTight { s, out } => {
            let inst = gen_tight_example(s).map_err(|e| Failure::flag("--s", e))?;
            emit(&out.output, &format_instance(&inst), stdout)
        }
        Command::GenCounterexample {
            preset: _,
            u,
            alpha,
            beta,
            gamma,
            out,
        } => {
            let mut spec = CounterexampleSpec::preset_u2();
            spec.u = u.unwrap_or(spec.u);
            spec.alpha = alpha.unwrap_or(spec.alpha);
            spec.beta = beta.unwrap_or(spec.beta);
            spec.gamma = gamma.unwrap_or(spec.gamma);
            let sys =
                build_counterexample(&spec).map_err(|e| Failure::flag("gen-counterexample", e))?;
            emit(&out.output, &format_set_system(&sys), stdout)
        }
        Command::SolveExact { k, io } => {
            let inst = load_instance(&io.input, stdin)?;
            let cover = intcover::solve(&inst, k)?;
            let row = vec![
                k.to_string(),
                cover.value.to_string(),
                cover.len().to_string(),
                join(&cover.interval_ids),
            ];
            let text = match io.format {
                Format::Csv => csv(&["k", "value", "size", "ids"], &[row]),
                Format::Table => format!("k: {k}\nvalue: {}\ncover: {}\n", cover.value, row[3]),
            };
            emit(&io.output, &text, stdout)
        }
        Command::SolveGreedy { k, io } => {
            let inst = load_instance(&io.input, stdin)?;
            let g = greedy_permutation(&inst);
            let steps = k.unwrap_or(g.permutation.len()).min(g.permutation.len());
            let mut rows = Vec::with_capacity(steps);
            for step in 0..steps {
                let iv = inst.interval_by_id(g.permutation[step])?;
                rows.push(vec![
                    (step + 1).to_string(),
                    iv.id.to_string(),
                    iv.lo.to_string(),
                    iv.hi.to_string(),
                    g.gains[step].to_string(),
                    g.prefix_values[step].to_string(),
                ]);
            }
            let header = ["step", "id", "lo", "hi", "gain", "prefix_value"];
            let text = match io.format {
                Format::Csv => csv(&header, &rows),
                Format::Table => format!(
                    "{}value: {}\n",
                    table(&header, &rows),
                    g.prefix_value(steps)
                ),
            };
            emit(&io.output, &text, stdout)
        }
        Command::SolveApprox { k, eps, io } => {
            let inst = load_instance(&io.input, stdin)?;
            let params = ApproxParams::new(k, eps).map_err(|e| Failure::flag("--k/--eps", e))?;
            let r = solve_approx(&inst, &params)?;
            let delta = params.delta(inst.num_intervals());
            let text = match io.format {
                Format::Csv => csv(
                    &[
                        "k", "eps", "extra", "delta", "fallback", "value", "size", "ids",
                    ],
                    &[vec![
                        k.to_string(),
                        eps.to_string(),
                        params.extra().to_string(),
                        delta.to_string(),
                        r.fallback.to_string(),
                        r.value.to_string(),
                        r.cover.len().to_string(),
                        join(&r.cover.interval_ids),
                    ]],
                ),
                Format::Table => {
                    let mut t = format!(
                        "k: {k}\neps: {eps}\nextra: {}\ndelta: {delta}\n",
                        params.extra()
                    );
                    if r.fallback {
                        t.push_str("fallback: exact (floor(eps k) = 0)\n");
                    } else {
                        writeln!(t, "skeleton: {}", join(&r.skeleton)).unwrap();
                        writeln!(t, "take_counts: {}", join(&r.take_counts)).unwrap();
                    }
                    writeln!(
                        t,
                        "value: {}\nsize: {}\ncover: {}",
                        r.value,
                        r.cover.len(),
                        join(&r.cover.interval_ids)
                    )
                    .unwrap();
                    t
                }
            };
            emit(&io.output, &text, stdout)
        }
        Command::RatioReport { k_max, io } => {
            let inst = load_instance(&io.input, stdin)?;
            let k_max = k_max.unwrap_or(inst.num_intervals());
            let r = ratio_report(&inst, k_max).map_err(|e| Failure::flag("--k-max", e))?;
            let rows: Vec<Vec<String>> = (0..k_max)
                .map(|i| {
                    let ratio = r.per_k_ratio[i];
                    vec![
                        (i + 1).to_string(),
                        r.greedy_values[i].to_string(),
                        r.opt_values[i].to_string(),
                        ratio.numer().to_string(),
                        ratio.denom().to_string(),
                    ]
                })
                .collect();
            let text = match io.format {
                Format::Csv => csv(&["k", "greedy", "opt", "ratio_num", "ratio_den"], &rows),
                Format::Table => {
                    let display: Vec<Vec<String>> = rows
                        .iter()
                        .zip(&r.per_k_ratio)
                        .map(|(row, ratio)| {
                            vec![
                                row[0].clone(),
                                row[1].clone(),
                                row[2].clone(),
                                ratio.to_string(),
                            ]
                        })
                        .collect();
                    format!(
                        "{}min ratio: {}\n",
                        table(&["k", "greedy", "opt", "ratio"], &display),
                        r.min_ratio
                    )
                }
            };
            emit(&io.output, &text, stdout)
        }
        Command::VerifyDr { k_max, io } => {
            let (values, intervals) = match load_any(&io.input, stdin)? {
                Loaded::Intervals(inst) => {
                    let k_max = k_max.unwrap_or(inst.num_intervals());
                    let mut solver = DpSolver::new(&inst)?;
                    solver.advance_to(k_max);
                    (solver.values()[1..].to_vec(), true)
                }
                Loaded::Sets(sys) => {
                    let k_max = k_max.unwrap_or(sys.sets().len());
                    let values = (1..=k_max)
                        .map(|k| brute_opt(&sys, k).map(|r| r.value))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| Failure::flag("verify-dr", e))?;
                    (values, false)
                }
            };
            let profits = profits_from_values(&values);
            let rows: Vec<Vec<String>> = values
                .iter()
                .zip(&profits)
                .enumerate()
                .map(|(i, (v, p))| vec![(i + 1).to_string(), v.to_string(), p.to_string()])
                .collect();
            let violation = check_diminishing_returns(&profits);
            let verdict = match violation {
                Some(v) => format!("violation at k={}: {} < {}\n", v.k(), v.before, v.after),
                None => "no violation\n".to_string(),
            };
            let text = match io.format {
                Format::Csv => {
                    write!(stderr, "{verdict}")?;
                    csv(&["k", "opt", "profit"], &rows)
                }
                Format::Table => format!("{}{verdict}", table(&["k", "opt", "profit"], &rows)),
            };
            emit(&io.output, &text, stdout)?;
            match (violation, intervals) {
                (Some(_), true) => Err(Failure::Internal(format!(
                    "interval instance broke diminishing returns: {}",
                    verdict.trim_end()
                ))),
                _ => Ok(()),
            }
        }
        Command::Brute { k, io } => {
            let sys = match load_any(&io.input, stdin)? {
                Loaded::Intervals(inst) => SetSystem::from_instance(&inst),
                Loaded::Sets(sys) => sys,
            };
            let r = brute_opt(&sys, k).map_err(|e| Failure::flag("brute", e))?;
            let witness = sys.names(&r.witness).join(" ");
            let text = match io.format {
                Format::Csv => csv(
                    &["k", "value", "witness"],
                    &[vec![k.to_string(), r.value.to_string(), witness]],
                ),
                Format::Table => format!("k: {k}\nvalue: {}\nwitness: {witness}\n", r.value),
            };
            emit(&io.output, &text, stdout)
        }
    }
}

/// Runs one invocation. Returns 0 on success, 1 on input errors, and 2
/// when an internal invariant is breached.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = write!(stdout, "{err}");
                return 0;
            }
            let rendered = err.to_string();
            let first = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{first}");
            return 1;
        }
    };
    match execute(cli, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(stderr, "internal error: {msg}");
            2
        }
    }
}
