use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use abelzeta::funcfield::Cover;
use abelzeta::lab::{
    analyze_cover, csv_cells, irr_count, render_svg, run_oracle, run_sweep, Config, OracleOptions,
    SweepPlan, CSV_COLUMNS,
};
use abelzeta::{Budget, Error, Result};

#[derive(Parser)]
#[command(name = "abelzeta", version, about = "Class numbers of Kummer and Artin-Schreier function fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Maximum number of field elements one enumeration may visit.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    /// Significant digits for certified real comparisons (minimum 30).
    #[arg(long, global = true, default_value_t = 30)]
    precision_digits: u32,
    /// Emit JSON on standard output.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV on standard output.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Ramification, L-polynomial and bounds for one cover.
    Analyze {
        /// e.g. `as:q=2,f=x^3` or `kummer:q=3,m=2,f=x^3+2*x`
        spec: String,
        /// Also count places of degree g+1 and compare with the L-polynomial.
        #[arg(long)]
        verify: bool,
    },
    /// Run a family sweep described by a JSON plan file.
    Sweep {
        #[arg(long)]
        plan: PathBuf,
        /// Write a ratio-vs-genus chart.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Omit the generation-time comment from the chart.
        #[arg(long)]
        no_timestamp: bool,
        /// Add per-row wall time (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Cross-check place splitting against point enumeration on random covers.
    Oracle {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_genus: u64,
        /// Only draw covers with q^(2g+1) at most this.
        #[arg(long, default_value_t = OracleOptions::default().work_cap)]
        work_cap: u64,
        #[arg(long, hide = true)]
        inject_n2_fault: bool,
    },
    /// Monic irreducible counts of degree 1..=m over F_q.
    IrrCount {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    let config = Config {
        threads: g.threads,
        budget: Budget(g.budget),
        digits: g.precision_digits.max(30),
    };
    let format = |default| match (g.json, g.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => default,
    };
    match cli.command {
        Command::Analyze { spec, verify } => {
            let cover = Cover::parse(&spec)?;
            let a = config.run(|| analyze_cover(&cover, &config, verify))??;
            match format(Format::Json) {
                Format::Json => println!("{}", serde_json::to_string_pretty(&a)?),
                Format::Csv => print!("{}", csv_text(&[csv_cells(&a.bounds, false)])?),
            }
            let failed = a.hard_failures();
            if failed.is_empty() {
                Ok(0)
            } else {
                eprintln!("hard checks failed for {spec}: {}", failed.join(", "));
                Ok(5)
            }
        }
        Command::Sweep { plan, svg, no_timestamp, timings } => {
            let plan = SweepPlan::from_json(&fs::read_to_string(&plan)?)?;
            let result = run_sweep(&plan, &config, timings)?;
            let csv = result.to_csv()?;
            let json = result.to_json()?;
            if let Some(path) = &plan.csv {
                fs::write(path, &csv)?;
            }
            if let Some(path) = &plan.json {
                fs::write(path, &json)?;
            }
            if let Some(path) = svg.as_ref().or(plan.svg.as_ref()) {
                fs::write(path, render_svg(&result.rows, plan.q, !no_timestamp))?;
            }
            match format(Format::Csv) {
                Format::Csv => print!("{csv}"),
                Format::Json => print!("{json}"),
            }
            let s = &result.summary;
            eprintln!(
                "{} rows; max |ratio - 1| over the asserted segment: {}",
                s.rows,
                s.max_abs_ratio_minus_one.as_deref().unwrap_or("n/a")
            );
            Ok(0)
        }
        Command::Oracle { seed, count, max_genus, work_cap, inject_n2_fault } => {
            let opts = OracleOptions {
                seed,
                count,
                max_genus,
                work_cap,
                corrupt_n2: inject_n2_fault,
            };
            let summary = run_oracle(&opts, &config)?;
            match format(Format::Json) {
                Format::Json => print!("{}", summary.to_json()?),
                Format::Csv => print!("{}", summary.to_csv()?),
            }
            for m in &summary.mismatches {
                eprintln!(
                    "mismatch in {} at k = {}: {} splitting {} vs oracle {}",
                    m.spec, m.k, m.what, m.splitting, m.oracle
                );
            }
            for f in &summary.hard_failures {
                eprintln!("hard check failed: {f}");
            }
            if summary.passed {
                eprintln!("oracle: {} covers, all pass", summary.cases.len());
                Ok(0)
            } else {
                Ok(5)
            }
        }
        Command::IrrCount { q, m } => {
            if m == 0 {
                return Err(Error::Validation("m must be at least 1".into()));
            }
            let rows = irr_count(q, m, config.budget)?;
            match format(Format::Csv) {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => {
                    let mut out = vec![vec!["d".into(), "formula".into(), "enumerated".into()]];
                    for r in &rows {
                        out.push(vec![
                            r.d.to_string(),
                            r.formula.to_string(),
                            r.enumerated.map(|e| e.to_string()).unwrap_or_default(),
                        ]);
                    }
                    print!("{}", csv_text(&out)?);
                }
            }
            Ok(if rows.iter().all(|r| r.agrees()) { 0 } else { 5 })
        }
    }
}

fn csv_text(rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.first().is_some_and(|r| r.len() == CSV_COLUMNS.len()) {
        w.write_record(CSV_COLUMNS)?;
    }
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
