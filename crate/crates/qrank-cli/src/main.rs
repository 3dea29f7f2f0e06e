//! Command-line front end: coefficient queries, series dumps, identity
//! verification, cusp tables, invariant orders, the valence budget, and the
//! numeric transformation suite.
//!
//! Exit codes: 0 success, 1 flag errors, 2 verification failure,
//! 3 hypothesis violation, 4 resource-budget refusal.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use qrank_core::catalog::{build_series, selftest, SERIES_NAMES};
use qrank_core::error::QError;
use qrank_core::fps::{rat, Rat};
use qrank_core::modgroup::{ord_at_cusp, thm13_budget, Block, BoundKind, CongGroup};
use qrank_core::numerics::{run_suite, CPoint, CheckKind, DEFAULT_TAUS, DEFAULT_TOL};
use qrank_core::rank::{rank_coeff, rank_coeff_mod, verify_identity, IdentityName};

#[derive(Parser)]
#[command(name = "qrank", version, about = "exact q-series laboratory for overpartition ranks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a rank coefficient M_d(m, n), or M_d(r, K, n) with --r/--mod
    Coeff(CoeffArgs),
    /// Dump a named series in the exact text format
    Series(SeriesArgs),
    /// Run an exact identity checker
    Verify(VerifyArgs),
    /// Print the cusp/width table of a congruence group
    Cusps(CuspsArgs),
    /// Print invariant-order records of a block at every cusp of a group
    Orders(OrdersArgs),
    /// Print the valence-formula budget of an identity
    Budget(BudgetArgs),
    /// Run the numeric transformation suite
    Numcheck(NumcheckArgs),
    /// Run the quick per-module examples
    Selftest,
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long)]
    d: u64,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long = "mod")]
    modulus: Option<i64>,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    expr: String,
    #[arg(long)]
    trunc: i64,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    trunc: Option<i64>,
}

#[derive(Args)]
struct CuspsArgs {
    #[arg(long)]
    n0: i64,
    #[arg(long)]
    n1: i64,
    #[arg(long, default_value_t = 1)]
    nup: i64,
}

#[derive(Args)]
struct OrdersArgs {
    /// group as n0,n1[,nup]
    #[arg(long)]
    group: String,
    /// block descriptor, e.g. eta:2 | etaquot2 | f:18:9 | klein:0:1/3:18 |
    /// p:3:1:1:0:3 | mtilde:3:0:1:0:3 | stilde:1:3:18
    #[arg(long)]
    block: String,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    identity: String,
}

#[derive(Args)]
struct NumcheckArgs {
    #[arg(long)]
    kind: Option<String>,
    /// base point as re,im (defaults to the built-in three)
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                QError::Hypothesis(_)
                | QError::PoleAtOne
                | QError::ZMinusOne
                | QError::DegenerateS { .. }
                | QError::DegenerateEta { .. }
                | QError::DegenerateKlein => 3,
                QError::ResourceBudget(_) => 4,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, QError> {
    match cli.command {
        Command::Coeff(args) => {
            match (args.r, args.modulus) {
                (Some(r), Some(k)) => {
                    if k < 1 || r < 0 || r >= k {
                        return Err(QError::BadDescriptor("need 0 <= r < mod".into()));
                    }
                    println!("{}", rank_coeff_mod(args.d, r, k, args.n));
                }
                (None, None) => println!("{}", rank_coeff(args.d, args.m, args.n)),
                _ => return Err(QError::BadDescriptor("--r and --mod go together".into())),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Series(args) => {
            let series = build_series(&args.expr, args.trunc)?;
            let text = series.to_text();
            match args.out {
                Some(path) => std::fs::write(&path, &text)
                    .map_err(|e| QError::BadDescriptor(format!("cannot write {path:?}: {e}")))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let name = IdentityName::from_str(&args.name)?;
            let trunc = args.trunc.unwrap_or_else(|| name.default_trunc());
            let report = verify_identity(name, trunc)?;
            println!("{}", report.describe());
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Cusps(args) => {
            let group = CongGroup::new(args.n0, args.n1, args.nup);
            let set = group.cusp_set();
            for (cusp, width) in &set {
                println!("{{cusp: \"{}\", width: {}}}", cusp.label(), width);
            }
            let total: i64 = set.iter().map(|(_, w)| w).sum();
            println!(
                "classes: {}  width sum: {}  projective index: {}",
                set.len(),
                total,
                group.projective_index()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Orders(args) => {
            let group = parse_group(&args.group)?;
            let block = parse_block(&args.block)?;
            for (cusp, width) in group.cusp_set() {
                let ord = ord_at_cusp(&block, &cusp)?;
                println!(
                    "{{cusp: \"{}\", width: {}, orders: {{value: {}/{}, kind: {}}}}}",
                    cusp.label(),
                    width,
                    ord.value.numer(),
                    ord.value.denom(),
                    match ord.kind {
                        BoundKind::Exact => "exact",
                        BoundKind::LowerBound => "lower-bound",
                    }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Budget(args) => {
            if args.identity != "thm1.3" {
                return Err(QError::BadDescriptor(
                    "only --identity thm1.3 carries a budget table".into(),
                ));
            }
            let report = thm13_budget()?;
            print!("{}", report.describe());
            // confirm the implied vanishing depth against the exact expansion
            let depth = report.required_check_order + 2;
            let check = verify_identity(IdentityName::Eq6Odd, depth)?;
            println!(
                "exact expansion vanishes to the required order: {}",
                if check.pass { "yes" } else { "NO" }
            );
            Ok(if check.pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Numcheck(args) => {
            let filter = match &args.kind {
                Some(k) => Some(CheckKind::from_str(k)?),
                None => None,
            };
            let taus: Vec<Complex64> = match &args.tau {
                Some(s) => {
                    let (re, im) = s
                        .split_once(',')
                        .ok_or_else(|| QError::BadDescriptor("tau must be re,im".into()))?;
                    let re: f64 =
                        re.parse().map_err(|_| QError::BadDescriptor("bad tau".into()))?;
                    let im: f64 =
                        im.parse().map_err(|_| QError::BadDescriptor("bad tau".into()))?;
                    vec![CPoint::new(Complex64::new(re, im))?.tau]
                }
                None => DEFAULT_TAUS.to_vec(),
            };
            let tol = args.tol.unwrap_or(DEFAULT_TOL);
            let reports = run_suite(filter, &taus, tol)?;
            let mut failures = 0usize;
            for r in &reports {
                println!("{}", r.line());
                if !r.pass {
                    failures += 1;
                }
            }
            println!(
                "checks: {}  pass: {}  fail: {}",
                reports.len(),
                reports.len() - failures,
                failures
            );
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Selftest => {
            let results = selftest();
            let mut failures = 0usize;
            for (name, ok) in &results {
                println!("{} | {}", if *ok { "PASS" } else { "FAIL" }, name);
                if !ok {
                    failures += 1;
                }
            }
            println!("selftest: {} checks, {} failures", results.len(), failures);
            if failures == 0 {
                println!("known series: {}", SERIES_NAMES.map(|(n, _)| n).join(", "));
            }
            Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn parse_group(s: &str) -> Result<CongGroup, QError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(QError::BadDescriptor("group must be n0,n1[,nup]".into()));
    }
    let mut vals = [1i64; 3];
    for (i, p) in parts.iter().enumerate() {
        vals[i] = p
            .trim()
            .parse()
            .map_err(|_| QError::BadDescriptor(format!("bad group level {p}")))?;
    }
    Ok(CongGroup::new(vals[0], vals[1], vals[2]))
}

fn parse_rat(s: &str) -> Result<Rat, QError> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 =
            n.parse().map_err(|_| QError::BadDescriptor(format!("bad rational {s}")))?;
        let d: i64 =
            d.parse().map_err(|_| QError::BadDescriptor(format!("bad rational {s}")))?;
        if d == 0 {
            return Err(QError::BadDescriptor("zero denominator".into()));
        }
        Ok(rat(n, d))
    } else {
        let n: i64 =
            s.parse().map_err(|_| QError::BadDescriptor(format!("bad rational {s}")))?;
        Ok(Rat::from_integer(n))
    }
}

fn parse_block(s: &str) -> Result<Block, QError> {
    let parts: Vec<&str> = s.split(':').collect();
    let ints = |idx: usize| -> Result<i64, QError> {
        parts
            .get(idx)
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| QError::BadDescriptor(format!("bad block field {idx} in {s}")))
    };
    match parts[0] {
        "eta" => Ok(Block::Eta { m: ints(1)? }),
        "etaquot2" => Ok(Block::EtaQuot2),
        "f" => Ok(Block::GenEta { n: ints(1)?, rho: ints(2)? }),
        "klein" => Ok(Block::Klein {
            a1: parse_rat(parts.get(1).copied().unwrap_or(""))?,
            a2: parse_rat(parts.get(2).copied().unwrap_or(""))?,
            m: ints(3)?,
        }),
        "p" => Ok(Block::P { d: ints(1)?, k: ints(2)?, a: ints(3)?, b: ints(4)?, c: ints(5)? }),
        "mtilde" => {
            Ok(Block::MTilde { d: ints(1)?, k: ints(2)?, a: ints(3)?, b: ints(4)?, c: ints(5)? })
        }
        "stilde" => Ok(Block::STilde { r: ints(1)?, c: ints(2)?, m: ints(3)? }),
        other => Err(QError::BadDescriptor(format!("unknown block kind {other}"))),
    }
}
