use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qpforge::cuts::{cube_loop_witness, enumerate_cuts, homogeneity_report, Cut};
use qpforge::families::{build_a, build_d, potential_a_on, potential_d_on};
use qpforge::higher_ar::{ar_quiver, module_window};
use qpforge::io;
use qpforge::jacobian::{default_degree_cap, DEFAULT_SEED};
use qpforge::report::{cmd_verify, CheckKind, VerifyOptions};
use qpforge::{compute_algebra, Error, JacobianAlgebra, Potential, Quiver, Vertex};

const CAP_ENV: &str = "QPFORGE_DEGREE_CAP";

#[derive(Parser)]
#[command(name = "qpforge", version, about = "Exact Jacobian algebras of the type A and D quivers with potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quiver and potential.
    Build {
        #[command(flatten)]
        qp: QpArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Dimensions of the Jacobian algebra, per degree and per vertex pair.
    Dim {
        #[command(flatten)]
        qp: QpArgs,
    },
    /// Path basis of each e_x J.
    Basis {
        #[command(flatten)]
        qp: QpArgs,
        /// Restrict to one vertex, e.g. `3.0.0` or `X1`.
        #[arg(long)]
        vertex: Option<Vertex>,
    },
    /// Enumerate all cuts, in the order used by `--cut-index`.
    Cuts {
        #[command(flatten)]
        qp: QpArgs,
        /// Attach the homogeneity report of each cut.
        #[arg(long)]
        homogeneity: bool,
    },
    /// Nakayama permutation and the symmetry verdict.
    Nakayama {
        #[command(flatten)]
        qp: QpArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Run the verification checks for D^s.
    Verify {
        /// Checks to run (default: all).
        #[arg(value_parser = parse_check)]
        only: Vec<CheckKind>,
        #[command(flatten)]
        opts: VerifyArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// 2-AR quiver of the truncated algebra for a cut.
    ArQuiver {
        #[command(flatten)]
        qp: QpArgs,
        #[command(flatten)]
        cut: CutArgs,
        /// Inclusive level range such as `0..2`.
        #[arg(long, value_parser = parse_levels, conflicts_with = "module")]
        levels: Option<RangeInclusive<i64>>,
        /// Levels 0..t for s = 3t + 1.
        #[arg(long)]
        module: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Everything in one JSON document: quiver, dimensions, cuts and the verification report.
    Report {
        #[command(flatten)]
        opts: VerifyArgs,
    },
}

#[derive(Args)]
struct QpArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::D)]
    family: FamilyArg,
    #[arg(long)]
    s: usize,
}

#[derive(Args)]
struct CutArgs {
    /// Comma-separated arrow names, e.g. `a[1,0]@2.1.0,a[2,1]@2.1.0`.
    #[arg(long, conflicts_with = "cut_index")]
    cut: Option<String>,
    /// Position in the `cuts` listing.
    #[arg(long)]
    cut_index: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    s: usize,
    /// Comma-separated subset of checks.
    #[arg(long, value_delimiter = ',', value_parser = parse_check)]
    checks: Vec<CheckKind>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Per-cut checks stop after this many cuts.
    #[arg(long, default_value_t = 200)]
    max_cuts: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    A,
    D,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_levels(s: &str) -> Result<RangeInclusive<i64>, String> {
    let (lo, hi) =
        s.split_once("..=").or_else(|| s.split_once("..")).ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty level range {s:?}"));
    }
    Ok(lo..=hi)
}

enum Failure {
    Usage(String),
    Cap(String),
    Checks,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionCapExceeded { .. } | Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::InvalidParameter(_)
            | Error::BadCutSpec(_)
            | Error::NotACut
            | Error::NotInvariant
            | Error::Parse(_)
            | Error::UnknownArrow(_)
            | Error::UnknownVertex(_)
            | Error::WrongFamily => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn degree_cap(s: usize) -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            v.trim().parse().map_err(|_| Failure::Usage(format!("{CAP_ENV} must be a nonnegative integer, got {v:?}")))
        }
        Err(_) => Ok(default_degree_cap(s)),
    }
}

fn build(qp: &QpArgs) -> Result<(Quiver, Potential), Failure> {
    if qp.s < 2 {
        return Err(Failure::Usage(format!("--s must be at least 2, got {}", qp.s)));
    }
    Ok(match qp.family {
        FamilyArg::A => {
            let q = build_a(qp.s)?;
            let w = potential_a_on(&q);
            (q, w)
        }
        FamilyArg::D => {
            let q = build_d(qp.s)?;
            let w = potential_d_on(&q);
            (q, w)
        }
    })
}

fn algebra(qp: &QpArgs) -> Result<JacobianAlgebra, Failure> {
    let (q, w) = build(qp)?;
    Ok(compute_algebra(&q, &w, degree_cap(qp.s)?)?)
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"));
}

fn resolve_cut(q: &Quiver, w: &Potential, args: &CutArgs) -> Result<Cut, Failure> {
    match (&args.cut, args.cut_index) {
        (Some(spec), _) => Ok(Cut::parse(q, spec)?),
        (None, Some(k)) => {
            let cuts = enumerate_cuts(q, w);
            let n = cuts.len();
            cuts.into_iter().nth(k).ok_or_else(|| Failure::Usage(format!("cut index {k} out of range ({n} cuts)")))
        }
        (None, None) => Err(Failure::Usage("one of --cut or --cut-index is required".into())),
    }
}

fn verify_options(args: &VerifyArgs, only: &[CheckKind]) -> Result<VerifyOptions, Failure> {
    let mut opts = VerifyOptions::new(args.s);
    let mut wanted: Vec<CheckKind> = args.checks.iter().chain(only).copied().collect();
    wanted.sort();
    wanted.dedup();
    if !wanted.is_empty() {
        opts.checks = wanted;
    }
    opts.seed = args.seed;
    opts.max_cuts = args.max_cuts;
    opts.degree_cap = degree_cap(args.s)?;
    Ok(opts)
}

fn cuts_json(q: &Quiver, w: &Potential, j: Option<&JacobianAlgebra>) -> Result<Value, Failure> {
    let mut list = Vec::new();
    for (i, c) in enumerate_cuts(q, w).iter().enumerate() {
        let mut entry = json!({ "index": i, "arrows": c.names(q) });
        if let Some(j) = j {
            entry["homogeneity"] = serde_json::to_value(homogeneity_report(j, c)?).expect("serializable");
        }
        list.push(entry);
    }
    Ok(json!({
        "count": list.len(),
        "cuts": list,
        "loop_witness": cube_loop_witness(q, w),
    }))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Build { qp, format } => {
            let (q, w) = build(&qp)?;
            match format {
                Format::Json => print_json(&io::qp_json(&q, &w)),
                Format::Dot => emit(&io::quiver_dot(&q)),
            }
        }
        Command::Dim { qp } => print_json(&io::dimensions_json(&algebra(&qp)?)),
        Command::Basis { qp, vertex } => {
            let j = algebra(&qp)?;
            let all = io::bases_json(&j);
            match vertex {
                None => print_json(&all),
                Some(v) => {
                    let idx = j.quiver().vertex_index(&v)?;
                    print_json(&all[idx]);
                }
            }
        }
        Command::Cuts { qp, homogeneity } => {
            let (q, w) = build(&qp)?;
            let j = if homogeneity { Some(compute_algebra(&q, &w, degree_cap(qp.s)?)?) } else { None };
            print_json(&cuts_json(&q, &w, j.as_ref())?);
        }
        Command::Nakayama { qp, seed } => {
            let j = algebra(&qp)?;
            let q = j.quiver();
            let perm = j.nakayama_permutation()?;
            let map: Vec<Value> = perm.iter().enumerate().map(|(x, &y)| json!([q.vertex(x), q.vertex(y)])).collect();
            print_json(&json!({
                "permutation": map,
                "identity": perm.iter().enumerate().all(|(i, &p)| i == p),
                "symmetry": j.is_symmetric(4, seed),
            }));
        }
        Command::Verify { only, opts, format } => {
            let report = cmd_verify(opts.s, &verify_options(&opts, &only)?)?;
            match format {
                ReportFormat::Text => emit(&format!("{report}\n")),
                ReportFormat::Json => print_json(&serde_json::to_value(&report).expect("serializable")),
            }
            if !report.ok() {
                return Err(Failure::Checks);
            }
        }
        Command::ArQuiver { qp, cut, levels, module, format } => {
            let (q, w) = build(&qp)?;
            let c = resolve_cut(&q, &w, &cut)?;
            let window = match (levels, module) {
                (Some(l), _) => l,
                (None, true) => module_window(qp.s)?,
                (None, false) => 0..=0,
            };
            let ar = ar_quiver(&q, &w, &c, window)?;
            match format {
                Format::Json => print_json(&io::ar_quiver_json(&ar)),
                Format::Dot => emit(&io::ar_quiver_dot(&ar)),
            }
        }
        Command::Report { opts } => {
            let qp = QpArgs { family: FamilyArg::D, s: opts.s };
            let vopts = verify_options(&opts, &[])?;
            let report = cmd_verify(opts.s, &vopts)?;
            let (q, w) = build(&qp)?;
            let j = compute_algebra(&q, &w, vopts.degree_cap)?;
            print_json(&json!({
                "qp": io::qp_json(&q, &w),
                "dimensions": io::dimensions_json(&j),
                "cuts": cuts_json(&q, &w, None)?,
                "verification": report,
            }));
            if !report.ok() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
