mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use diffspec::charsum::{brute_charsum, gamma_table_csv};
use diffspec::field::{FieldCtx, DEFAULT_FIELD_CAP};
use diffspec::verify::{sweep, verify, DEFAULT_DIRECT_SAMPLES};
use diffspec::{brute_spectrum, char_sum, closed_spectrum, CharSumKind, Error, SpectrumReport};

use output::{Envelope, Params, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "diffspec", version, about = "Differential spectrum of x^(p^n-3) over F_{p^n}")]
struct Cli {
    /// Largest field order the brute-force oracle may build.
    #[arg(long, env = "BRUTE_CAP", default_value_t = DEFAULT_FIELD_CAP, global = true)]
    brute_cap: u64,

    /// Worker threads for the oracle (default: all cores).
    #[arg(long, env = "WORKERS", global = true)]
    workers: Option<usize>,

    /// Report wall-clock time in `timing_ms` (otherwise 0, keeping output byte-stable).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Differential spectrum of x^(p^n - 3).
    Spectrum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = SpectrumMethod::Closed)]
        method: SpectrumMethod,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Gamma_{p,n}, the character sum attached to y^2 = x(x-1)(x+3).
    Gamma {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = ValueFormat::Plain)]
        format: ValueFormat,
    },
    /// CSV of Gamma_{p,1} for every prime 5 <= p <= max-p.
    GammaTable {
        #[arg(long)]
        max_p: u64,
    },
    /// One of the character sums Gamma, lambda1, lambda2.
    Charsum {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        which: CharSumKind,
        #[arg(long, value_enum, default_value_t = SumMethod::Closed)]
        method: SumMethod,
        #[arg(long, value_enum, default_value_t = ValueFormat::Plain)]
        format: ValueFormat,
    },
    /// Cross-check the closed form against the oracle for one field.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        /// Random b recounted by direct enumeration.
        #[arg(long, default_value_t = DEFAULT_DIRECT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = VerifyFormat::Text)]
        format: VerifyFormat,
    },
    /// Verify every odd prime power 3 < p^n <= max-order.
    Sweep {
        #[arg(long)]
        max_order: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectrumMethod {
    Closed,
    Brute,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumMethod {
    Closed,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValueFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
}

enum Failure {
    Lib(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch => 4,
            Failure::Lib(Error::CapExceeded { .. }) => 3,
            Failure::Lib(e) if e.is_internal() => 5,
            Failure::Lib(_) => 2,
        }
    }
}

struct Run {
    cap: u64,
    start: Instant,
    timing: bool,
}

impl Run {
    fn elapsed_ms(&self) -> u64 {
        if self.timing {
            self.start.elapsed().as_millis() as u64
        } else {
            0
        }
    }

    fn envelope<R: serde::Serialize>(&self, command: &'static str, params: Params, result: R) -> String {
        output::json(&Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            params,
            result,
            timing_ms: self.elapsed_ms(),
        })
    }

    fn field(&self, p: u64, n: u64) -> Result<FieldCtx, Error> {
        let n32 = u32::try_from(n).map_err(|_| Error::CapExceeded {
            order: format!("{p}^{n}"),
            cap: self.cap,
        })?;
        FieldCtx::with_cap(p, n32, self.cap)
    }
}

fn params(p: u64, n: u64, d: Option<&BigUint>) -> Params {
    Params {
        p,
        n,
        d: d.map(ToString::to_string),
    }
}

fn render(reports: &[&SpectrumReport], format: Format, run: &Run, agree: Option<bool>) -> String {
    let r0 = reports[0];
    match format {
        Format::Csv => {
            let mut lines = vec![output::csv_header().to_string()];
            lines.extend(reports.iter().map(|r| output::csv_row(r)));
            lines.join("\n")
        }
        Format::Pretty => {
            let mut s: String = reports.iter().map(|r| output::pretty(r)).collect();
            if let Some(agree) = agree {
                s += if agree { "closed and brute agree" } else { "closed and brute DISAGREE" };
            }
            s.trim_end().to_string()
        }
        Format::Json => {
            let ps = params(r0.p, r0.n, Some(&r0.d));
            match agree {
                Some(agree) => run.envelope(
                    "spectrum",
                    ps,
                    output::BothJson {
                        closed: reports[0].into(),
                        brute: reports[1].into(),
                        agree,
                    },
                ),
                None => run.envelope("spectrum", ps, output::SpectrumJson::from(r0)),
            }
        }
    }
}

fn brute_for(run: &Run, p: u64, n: u64) -> Result<SpectrumReport, Error> {
    // Reject inputs the closed form rejects before building anything.
    closed_spectrum(p, n)?;
    let ctx = run.field(p, n)?;
    brute_spectrum(&ctx, &(ctx.order() - 3u32))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    let run = Run {
        cap: cli.brute_cap,
        start: Instant::now(),
        timing: cli.timing,
    };
    match cli.command {
        Command::Spectrum { p, n, method, format } => {
            let (out, agree) = match method {
                SpectrumMethod::Closed => (render(&[&closed_spectrum(p, n)?], format, &run, None), true),
                SpectrumMethod::Brute => (render(&[&brute_for(&run, p, n)?], format, &run, None), true),
                SpectrumMethod::Both => {
                    let closed = closed_spectrum(p, n)?;
                    let brute = brute_for(&run, p, n)?;
                    let agree = closed.spectrum == brute.spectrum;
                    (render(&[&closed, &brute], format, &run, Some(agree)), agree)
                }
            };
            println!("{out}");
            if !agree {
                return Err(Failure::Mismatch);
            }
        }
        Command::Gamma { p, n, format } => {
            let v = char_sum(p, n, CharSumKind::Gamma)?;
            print_value(&run, "gamma", p, n, CharSumKind::Gamma, "closed", &v.value.to_string(), format);
        }
        Command::GammaTable { max_p } => print!("{}", gamma_table_csv(max_p)?),
        Command::Charsum { p, n, which, method, format } => {
            let closed = char_sum(p, n, which)?;
            let (value, name) = match method {
                SumMethod::Closed => (closed.value, "closed"),
                SumMethod::Brute => (brute_charsum(&run.field(p, n)?, which), "brute"),
            };
            print_value(&run, "charsum", p, n, which, name, &value.to_string(), format);
        }
        Command::Verify { p, n, samples, format } => {
            let report = verify(p, n, run.cap, samples)?;
            match format {
                VerifyFormat::Text => {
                    for c in &report.checks {
                        let tag = if c.passed { "ok" } else { "FAIL" };
                        println!("  {:<14} {tag:<4} {}", c.name, c.detail);
                    }
                    println!("{report}");
                }
                VerifyFormat::Json => {
                    let body = output::VerifyJson::from(&report);
                    println!("{}", run.envelope("verify", params(p, n, None), body));
                }
            }
            if !report.passed() {
                return Err(Failure::Mismatch);
            }
        }
        Command::Sweep { max_order } => {
            if max_order > run.cap {
                return Err(Error::CapExceeded {
                    order: max_order.to_string(),
                    cap: run.cap,
                }
                .into());
            }
            let summary = sweep(max_order, |r| println!("{r}"))?;
            println!(
                "{} fields checked, {} failed",
                summary.fields,
                summary.failed.len()
            );
            if !summary.passed() {
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn print_value(
    run: &Run,
    command: &'static str,
    p: u64,
    n: u64,
    which: CharSumKind,
    method: &'static str,
    value: &str,
    format: ValueFormat,
) {
    match format {
        ValueFormat::Plain => println!("{value}"),
        ValueFormat::Json => {
            let body = output::ValueJson {
                which: which.name(),
                method,
                value: value.to_string(),
            };
            println!("{}", run.envelope(command, params(p, n, None), body));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: cannot start {w} workers: {e}");
            return ExitCode::from(5);
        }
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Mismatch => eprintln!("error: closed form and oracle disagree"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
