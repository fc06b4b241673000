//! Batch front end for the exact deformed-algebra checkers: sweep
//! orchestration from sectioned key=value configs, deterministic JSON/CSV
//! reports, and an expression-parser utility.

mod catalog;
mod config;
mod report;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "rpqv", version, about = "Exact checker sweeps for deformed Virasoro structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks described by a config file
    Run {
        /// Path to the sectioned key=value config
        #[arg(long)]
        config: String,
        /// Run only this check id, overriding the config's list
        #[arg(long)]
        check: Option<String>,
        /// Write the report here instead of the config's output path
        #[arg(long)]
        out: Option<String>,
        /// Report format
        #[arg(long, value_parser = ["json", "csv"])]
        format: Option<String>,
        /// Worker cap for concurrent grid evaluation
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the machine-readable check catalog
    List,
    /// Parse an R-expression and print its AST (or the error position)
    ParseR {
        /// Expression text, e.g. "(u - v)/(p - q)"
        expr: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { config, check, out, format, jobs } => run(&config, check, out, format, jobs),
        Command::List => list(),
        Command::ParseR { expr } => parse_r_cmd(&expr),
    };
    std::process::exit(code);
}

fn run(
    config_path: &str,
    check: Option<String>,
    out: Option<String>,
    format: Option<String>,
    jobs: usize,
) -> i32 {
    let cfg = match config::load_config(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let ids: Vec<String> = match check {
        Some(id) => vec![id],
        None => cfg.raw.checks.ids.clone(),
    };
    let records = match catalog::run_all(&cfg, &ids, jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    let summary = report::summarize(&records);
    let failed = summary.fail > 0;
    let format = format
        .or_else(|| cfg.raw.output.format.clone())
        .unwrap_or_else(|| "json".to_string());
    let body = match format.as_str() {
        "csv" => report::to_csv(&records),
        "json" => {
            let rep = report::Report { config: cfg.raw.clone(), summary, records: records.clone() };
            report::to_json(&rep)
        }
        other => {
            eprintln!("config error: unknown format `{other}`");
            return 2;
        }
    };
    let out_path = out.or_else(|| cfg.raw.output.path.clone());
    match out_path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &body) {
                eprintln!("cannot write `{path}`: {e}");
                return 2;
            }
            let s = report::summarize(&records);
            eprintln!(
                "{} records: {} pass, {} fail, {} recorded, {} skipped, {} error -> {path}",
                s.total, s.pass, s.fail, s.recorded, s.skipped, s.error
            );
        }
        None => println!("{body}"),
    }
    if failed {
        1
    } else {
        0
    }
}

fn list() -> i32 {
    let body =
        serde_json::to_string_pretty(catalog::CATALOG).expect("catalog serialization cannot fail");
    println!("{body}");
    0
}

fn parse_r_cmd(expr: &str) -> i32 {
    match rpq_core::rexpr::parse_r(expr) {
        Ok(ast) => {
            println!("{}", rpq_core::rexpr::print_ast(&ast));
            0
        }
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}
