use std::path::PathBuf;
use std::process::ExitCode;

use angle_rank::report::{
    analyze_with, import_lmfdb, render_text, run_corpus_with, selftest, Record, ReportOptions,
};
use angle_rank::Config;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "angle-rank", version, about = "Frobenius angle ranks and exotic Tate classes")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,
    #[arg(long, global = true, default_value_t = 16384)]
    max_precision_bits: u32,
    /// Denominator bound D for saturated relations; default max(60, 4g^2)
    #[arg(long, global = true)]
    denom_bound: Option<u64>,
    #[arg(long, global = true, default_value_t = 1 << 20)]
    height_bound: i64,
    #[arg(long, global = true, default_value_t = 12)]
    m_max: u32,
    #[arg(long, global = true)]
    json: bool,
    /// Only report this degree in the tables
    #[arg(long, global = true)]
    degree: Option<usize>,
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one Weil polynomial
    Analyze {
        #[arg(long)]
        q: Option<u64>,
        /// Coefficients a_0, ..., a_2g, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<i64>,
        #[arg(long, default_value = "input")]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        e_trace: Option<i64>,
        /// A full JSON record instead of --q/--coeffs
        #[arg(long, conflicts_with_all = ["q", "coeffs"])]
        record: Option<String>,
    },
    /// Analyze every record of a JSONL corpus
    Corpus { path: PathBuf },
    /// Run the built-in invariant suite
    Selftest,
    /// Normalize an LMFDB export into corpus JSONL
    Import {
        path: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(n) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let config = Config {
        precision_bits: g.precision_bits,
        max_precision_bits: g.max_precision_bits,
        denom_bound: g.denom_bound,
        height_bound: g.height_bound,
        m_max: g.m_max,
        threads: g.threads,
    };
    let opts = ReportOptions { degree: g.degree };
    let code = match cli.command {
        Command::Analyze {
            q,
            coeffs,
            label,
            e_trace,
            record,
        } => {
            let rec = match (record, q) {
                (Some(json), _) => match serde_json::from_str::<Record>(&json) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error: bad record: {e}");
                        return ExitCode::from(1);
                    }
                },
                (None, Some(q)) if !coeffs.is_empty() => Record {
                    label,
                    q,
                    coeffs,
                    e_trace,
                },
                _ => {
                    eprintln!("error: give --q and --coeffs, or --record");
                    return ExitCode::from(1);
                }
            };
            let rep = analyze_with(&rec, &config, opts);
            if g.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", render_text(&rep));
            }
            if rep.is_failure() {
                2
            } else {
                0
            }
        }
        Command::Corpus { path } => match run_corpus_with(&path, &config, opts) {
            Ok(out) => {
                if g.json {
                    println!("{}", serde_json::to_string(&out).expect("corpus output serializes"));
                } else {
                    for r in &out.reports {
                        print!("{}", render_text(r));
                    }
                    println!("{}", serde_json::to_string_pretty(&out.summary).expect("summary serializes"));
                }
                out.exit_code()
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Command::Selftest => {
            let out = selftest(&config);
            print!("{}", out.table());
            if out.passed() {
                0
            } else {
                3
            }
        }
        Command::Import { path, output } => match import_lmfdb(&path) {
            Ok(out) => {
                for w in &out.warnings {
                    eprintln!("warning: {w}");
                }
                for e in &out.rejected {
                    eprintln!("rejected: {e}");
                }
                let text = out.to_jsonl();
                match output {
                    Some(p) => {
                        if let Err(e) = std::fs::write(&p, text) {
                            eprintln!("error: {e}");
                            return ExitCode::from(1);
                        }
                    }
                    None => print!("{text}"),
                }
                if out.rejected.is_empty() {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
    };
    ExitCode::from(code)
}
