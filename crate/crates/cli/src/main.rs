use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use imbf_core::{
    build_poset, canonical_perm, compute_r_with, count_downsets, enumerate_dn, lift,
    oracle_downsets, oracle_enum_dn, oracle_phi, oracle_r, partitions, phi, verify_report, width,
    Budgets, CycleType, Error, KnownConstants, ReferenceTable, Strategy,
};

#[derive(Parser)]
#[command(
    name = "imbf",
    version,
    about = "Dedekind numbers and inequivalent monotone Boolean functions"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest |F|^2 allowed for pairwise scans.
    #[arg(long, global = true, default_value_t = 10_000_000_000_000)]
    budget_pairs: u128,
    /// Largest number of downsets or functions held in memory.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_downsets: u64,
    /// Largest n for which D_n may be enumerated outright.
    #[arg(long, global = true, default_value_t = 6)]
    enum_cap: u8,
    /// Suppress progress output on standard error.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Print d_n, the number of monotone Boolean functions of n variables.
    Dedekind {
        n: u8,
        /// JSON file of known values, e.g. {"d8": "..."}.
        #[arg(long)]
        constants: Option<PathBuf>,
    },
    /// Count the functions fixed by a permutation of the given cycle type.
    Phi {
        n: u8,
        /// Cycle lengths joined by '+', e.g. 2+5, or table notation (12)(345).
        #[arg(value_name = "TYPE")]
        cycle_type: String,
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Count inequivalent functions r_n with the per-type breakdown.
    R {
        n: u8,
        #[arg(long)]
        constants: Option<PathBuf>,
        /// 1: n <= 6, 2: n <= 7, 3: n = 8.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        tier: u8,
    },
    /// Export the orbit poset of a cycle type (DOT, or JSON with --format json).
    Poset {
        n: u8,
        #[arg(value_name = "TYPE")]
        cycle_type: String,
    },
    /// Compare every fast method with the brute-force reference for n <= 4.
    OracleCheck { n: u8 },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Precondition(_) => 2,
            Error::Config(_) => 3,
            Error::Resource(_) => 4,
            Error::Integrity(_) | Error::Internal(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn load_constants(path: &Option<PathBuf>) -> Result<KnownConstants, Failure> {
    Ok(match path {
        Some(p) => KnownConstants::from_path(p)?,
        None => KnownConstants::empty(),
    })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    imbf_core::progress::set_enabled(!cli.quiet);
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.budget_pairs == 0 || cli.budget_downsets == 0 {
        return Err(fail(2, "budgets must be positive"));
    }
    let budgets = Budgets {
        pair_comparisons: cli.budget_pairs,
        downsets: cli.budget_downsets,
        enum_cap: cli.enum_cap,
    };
    match &cli.command {
        Command::Dedekind { n, constants } => dedekind(cli.format, *n, constants, &budgets),
        Command::Phi {
            n,
            cycle_type,
            strategy,
        } => {
            let t = CycleType::parse(*n, cycle_type)?;
            let s: Strategy = strategy.parse()?;
            let res = phi(&t, s, &budgets)?;
            match cli.format {
                Format::Json => print_json(&res.to_json()),
                Format::Csv => println!(
                    "type,n,phi,strategy,elapsed_ms\n{},{},{},{},{}",
                    res.cycle_type,
                    res.n,
                    res.phi,
                    res.strategy,
                    res.elapsed.as_millis()
                ),
                Format::Text | Format::Markdown => println!("{} ({})", res.phi, res.strategy),
            }
            Ok(())
        }
        Command::R { n, constants, tier } => r(cli.format, *n, constants, *tier, &budgets),
        Command::Poset { n, cycle_type } => poset(cli.format, *n, cycle_type),
        Command::OracleCheck { n } => oracle_check(*n, &budgets),
    }
}

fn dedekind(
    format: Format,
    n: u8,
    constants: &Option<PathBuf>,
    budgets: &Budgets,
) -> Result<(), Failure> {
    let consts = load_constants(constants)?;
    let start = Instant::now();
    let (value, method) = if n == 8 {
        let d = consts
            .dedekind(8)
            .ok_or_else(|| fail(3, "d_8 is not computed; supply it with --constants"))?;
        (d, Strategy::KnownConstant)
    } else if n > 8 {
        return Err(fail(2, format!("n = {n} is outside 0..=8")));
    } else {
        let res = phi(&CycleType::identity(n)?, Strategy::Auto, budgets)?;
        (res.phi, res.strategy)
    };
    match format {
        Format::Json => print_json(&json!({
            "n": n,
            "d": value.to_string(),
            "method": method.label(),
            "elapsed_ms": start.elapsed().as_millis() as u64,
        })),
        Format::Csv => println!("n,d,method\n{n},{value},{method}"),
        Format::Text | Format::Markdown => println!("{value}"),
    }
    Ok(())
}

fn r(
    format: Format,
    n: u8,
    constants: &Option<PathBuf>,
    tier: u8,
    budgets: &Budgets,
) -> Result<(), Failure> {
    let needed = match n {
        0..=6 => 1,
        7 => 2,
        _ => 3,
    };
    if tier < needed {
        return Err(fail(
            4,
            format!("r_{n} needs --tier {needed} (current tier {tier})"),
        ));
    }
    let consts = load_constants(constants)?;
    let report = compute_r_with(n, &consts, budgets, |row| {
        if imbf_core::progress::enabled() {
            eprintln!(
                "[r_{n}] {} = {} via {} in {} ms",
                row.cycle_type,
                row.phi,
                row.strategy,
                row.elapsed.as_millis()
            );
        }
    })?;
    match format {
        Format::Json => print_json(&report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Markdown => print!("{}", report.to_markdown()),
        Format::Text => {
            let w = report
                .rows
                .iter()
                .map(|r| r.cycle_type.notation().len())
                .max()
                .unwrap_or(3)
                .max(4);
            println!(
                "{:>3}  {:<w$}  {:>6}  {:>26}  {:<18}  {:>9}",
                "i", "type", "mu", "phi", "strategy", "ms"
            );
            for (i, row) in report.rows.iter().enumerate() {
                println!(
                    "{:>3}  {:<w$}  {:>6}  {:>26}  {:<18}  {:>9}",
                    i + 1,
                    row.cycle_type.notation(),
                    row.mu,
                    row.phi,
                    row.strategy.label(),
                    row.elapsed.as_millis()
                );
            }
            println!("sum = {}", report.total);
            println!("r_{n} = {}", report.r);
        }
    }
    if let Some(reference) = ReferenceTable::bundled(n) {
        let diffs = verify_report(&report, &reference);
        if !diffs.is_empty() {
            for d in &diffs {
                eprintln!("mismatch: {d}");
            }
            return Err(fail(
                1,
                format!("{} difference(s) from the reference table", diffs.len()),
            ));
        }
    }
    Ok(())
}

fn poset(format: Format, n: u8, cycle_type: &str) -> Result<(), Failure> {
    let t = CycleType::parse(n, cycle_type)?;
    let p = build_poset(&lift(&canonical_perm(&t)))?;
    let reps = p.representatives();
    match format {
        Format::Json => {
            let covers: Vec<[usize; 2]> = p
                .covers()
                .iter()
                .map(|&(a, b)| [reps[a], reps[b]])
                .collect();
            let downsets = (p.len() <= 64).then(|| count_downsets(&p).to_string());
            print_json(&json!({
                "n": n,
                "type": t.notation(),
                "orbits": p.orbits(),
                "covers": covers,
                "width": width(&p),
                "downsets": downsets,
            }))
        }
        Format::Csv => {
            println!("lower,upper");
            for &(a, b) in p.covers() {
                println!("{},{}", reps[a], reps[b]);
            }
        }
        Format::Text | Format::Markdown => print!("{}", p.to_dot()),
    }
    Ok(())
}

fn oracle_check(n: u8, budgets: &Budgets) -> Result<(), Failure> {
    if n > 4 {
        return Err(fail(2, format!("oracle-check supports n <= 4, got {n}")));
    }
    let mut checks: Vec<(String, String, String)> = Vec::new();
    let fast = enumerate_dn(n)?;
    let slow = oracle_enum_dn(n)?;
    checks.push((
        format!("D_{n}"),
        fast.len().to_string(),
        slow.len().to_string(),
    ));
    let same = if fast == slow {
        "identical"
    } else {
        "different"
    };
    checks.push((format!("D_{n} elements"), same.into(), "identical".into()));
    let report = compute_r_with(n, &KnownConstants::empty(), budgets, |_| {})?;
    checks.push((
        format!("r_{n}"),
        report.r.to_string(),
        oracle_r(n)?.to_string(),
    ));
    let strategies = [
        Strategy::Alg1Enumerate,
        Strategy::Alg1Count,
        Strategy::Alg2Pairs,
        Strategy::Alg3Split,
        Strategy::QuadrantTwoFixed,
    ];
    for t in partitions(n)? {
        let want = oracle_phi(&canonical_perm(&t))?;
        for s in strategies {
            match phi(&t, s, budgets) {
                Ok(res) => checks.push((
                    format!("phi {} {}", t, s),
                    res.phi.to_string(),
                    want.to_string(),
                )),
                Err(Error::Precondition(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
        let p = build_poset(&lift(&canonical_perm(&t)))?;
        checks.push((
            format!("downsets {t}"),
            count_downsets(&p).to_string(),
            oracle_downsets(&p)?.to_string(),
        ));
    }
    let mut first_failure = None;
    for (name, got, want) in &checks {
        let ok = got == want;
        println!(
            "{} {name}: {got} (reference {want})",
            if ok { "PASS" } else { "FAIL" }
        );
        if !ok && first_failure.is_none() {
            first_failure = Some(name.clone());
        }
    }
    match first_failure {
        Some(name) => Err(fail(1, format!("oracle check failed at {name}"))),
        None => {
            println!("all {} checks passed", checks.len());
            Ok(())
        }
    }
}
