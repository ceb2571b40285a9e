//! `grcodes`: analyze polycyclic codes, emit distance tables, and run the
//! formula-versus-oracle verification campaigns.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grcodes::oracle::EnumerationBudget;
use grcodes::report::{analyze, distance_table, AnalyzeOptions, TableMode, TableRow};
use grcodes::spec_file::CodeSpec;
use grcodes::verify::{run_criterion, CriterionResult, VerifyConfig};

const EXIT_PARSE: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(name = "grcodes", version, about = "Polycyclic codes over Galois rings")]
struct Cli {
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Structure, standard form and distance of the code in a spec file.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        /// Cross-check the distance by exhaustive search.
        #[arg(long)]
        check: bool,
        /// Maximum number of codewords to enumerate.
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form distances for every exponent (or exponent pair).
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 1)]
        eta: usize,
        /// `eta_ps` or `two_eta_ps`.
        #[arg(long, default_value = "eta_ps")]
        mode: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification campaigns; exit 0 iff everything matches.
    Verify {
        /// Distance formulas and tables vs brute force (criteria 1, 2, 10).
        #[arg(long)]
        paper_tables: bool,
        /// Characteristic-p² cyclic classification and distances (criterion 3).
        #[arg(long)]
        p2_cyclic: bool,
        /// Structural and weight properties (criteria 4–9).
        #[arg(long)]
        properties: bool,
        /// Individual criteria by number.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=10))]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u128,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random generator sets per ambient.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Weight-retaining instances.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// An error carrying its exit status.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = e.downcast_ref::<Exit>() {
        return *code;
    }
    for cause in e.chain() {
        match cause.downcast_ref::<grcodes::Error>() {
            Some(grcodes::Error::Parse(_)) => return EXIT_PARSE,
            Some(grcodes::Error::BudgetExceeded { .. }) => return EXIT_BUDGET,
            _ => {}
        }
    }
    1
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn cmd_analyze(spec: &PathBuf, check: bool, budget: u128, output: &Output) -> Result<()> {
    let text = fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
    let code = CodeSpec::from_json_str(&text)?.build()?;
    let opts = AnalyzeOptions {
        check_distance: check,
        budget: EnumerationBudget::new(budget),
    };
    let report = analyze(&code, &opts)?;
    let body = match output.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&report),
        Format::Text => analyze_text(&report),
        Format::Csv => bail!(Exit(EXIT_PARSE, "analyze supports json and text output".into())),
    };
    emit(output, &body)?;
    if report["distance"]["oracle_checked"] == json!(false) {
        bail!(Exit(EXIT_MISMATCH, "closed-form distance disagrees with brute force".into()));
    }
    Ok(())
}

fn analyze_text(r: &Value) -> String {
    let mut s = String::new();
    let ring = &r["ring"];
    s += &format!(
        "ring GR({}^{}, {}), length {}, |C| = p^{}\n",
        ring["p"], ring["a"], ring["m"], r["length"], r["log_p_size"]
    );
    s += &format!("chain ring: {}, principal ideal ring: {}\n", r["chain"], r["pir"]);
    if let Some(comps) = r["torsional_degrees"].as_array() {
        for (i, c) in comps.iter().enumerate() {
            s += &format!(
                "component {i}: base {} t={} torsional degrees {}\n",
                poly_text(&c["base"]),
                c["t"],
                c["degrees"]
            );
        }
    }
    if let Some(gens) = r["standard_form"]["merged"].as_array() {
        for g in gens {
            s += &format!("generator p^{} * ({})\n", g["j"], poly_text(&g["g"]));
        }
    }
    if !r["p2_form"].is_null() {
        let f = &r["p2_form"];
        s += &format!("canonical form relative to {}: {}\n", poly_text(&f["base"]), f["form"]);
    }
    let d = &r["distance"];
    s += &match () {
        _ if d.is_null() => "distance: none (zero code)\n".to_string(),
        _ if d.get("unsupported").is_some() => format!("distance: unsupported ({})\n", d["unsupported"]),
        _ => format!(
            "distance: {} [{}, {}]{}\n",
            d["distance"],
            d["theorem"].as_str().unwrap_or("?"),
            case_text(&d["case"]),
            match d["oracle_checked"].as_bool() {
                Some(true) => ", brute force agrees",
                Some(false) => ", BRUTE FORCE DISAGREES",
                None => "",
            }
        ),
    };
    s
}

/// Renders a JSON coefficient array (little-endian, each coefficient an
/// array of base-10 strings) as `3x^2 + x + 1`, or `(1,2)x` for `m > 1`.
fn poly_text(v: &Value) -> String {
    let Some(coeffs) = v.as_array() else {
        return v.to_string();
    };
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter_map(|(i, c)| {
            let parts: Vec<&str> = c.as_array()?.iter().filter_map(|x| x.as_str()).collect();
            if parts.iter().all(|x| *x == "0") {
                return None;
            }
            let c = if parts.len() == 1 {
                parts[0].to_string()
            } else {
                format!("({})", parts.join(","))
            };
            Some(match (i, c.as_str()) {
                (0, _) => c,
                (1, "1") => "x".into(),
                (1, _) => format!("{c}x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            })
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn case_text(case: &Value) -> String {
    match case["kind"].as_str() {
        Some("Partition") => {
            let c = &case["case"];
            let mut s = c["variant"].as_str().unwrap_or("?").to_string();
            let params: Vec<String> = c
                .as_object()
                .into_iter()
                .flatten()
                .filter(|(k, _)| k.as_str() != "variant")
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            if !params.is_empty() {
                s += &format!("({})", params.join(", "));
            }
            s
        }
        Some("TableRow") => format!("row {}", case["row"]),
        Some(other) => other.to_lowercase(),
        None => case.to_string(),
    }
}

fn cmd_table(p: u64, m: usize, s: u32, eta: usize, mode: &str, output: &Output) -> Result<()> {
    let mode: TableMode = mode.parse()?;
    let rows = distance_table(p, m, s, eta, mode)?;
    let body = match output.format.unwrap_or(Format::Csv) {
        Format::Csv => table_csv(&rows)?,
        Format::Json => pretty(&serde_json::to_value(&rows)?),
        Format::Text => rows
            .iter()
            .map(|r| {
                let j = r.j.map_or(String::new(), |j| format!(" j={j}"));
                let d = r.distance.map_or("none".to_string(), |d| d.to_string());
                format!("i={}{j} [{}] d={d}\n", r.i, r.case)
            })
            .collect(),
    };
    emit(output, &body)
}

fn table_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "m", "s", "eta", "i", "j", "case", "distance"])?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.m.to_string(),
            r.s.to_string(),
            r.eta.to_string(),
            r.i.to_string(),
            r.j.map_or(String::new(), |j| j.to_string()),
            r.case.clone(),
            r.distance.map_or("none".to_string(), |d| d.to_string()),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    paper_tables: bool,
    p2_cyclic: bool,
    properties: bool,
    criteria: &[u8],
    cfg: VerifyConfig,
    output: &Output,
) -> Result<()> {
    let mut ids: Vec<u8> = criteria.to_vec();
    if paper_tables {
        ids.extend([1, 2, 10]);
    }
    if p2_cyclic {
        ids.push(3);
    }
    if properties {
        ids.extend([4, 5, 6, 7, 8, 9]);
    }
    ids.sort_unstable();
    ids.dedup();
    let results: Vec<CriterionResult> = ids.iter().map(|&id| run_criterion(id, &cfg)).collect();
    let all_match = results.iter().all(|r| r.mismatch_count == 0);
    let any_skipped = results.iter().any(|r| !r.skipped.is_empty());
    let summary = json!({
        "passed": all_match && !any_skipped,
        "criteria": results,
    });
    let body = match output.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&summary),
        Format::Text => results
            .iter()
            .map(|r| {
                format!(
                    "criterion {:>2}: {} | {} | checks={} mismatches={} skipped={} {}ms\n",
                    r.id,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.title,
                    r.checks,
                    r.mismatch_count,
                    r.skipped.len(),
                    r.millis
                )
            })
            .collect(),
        Format::Csv => bail!(Exit(EXIT_PARSE, "verify supports json and text output".into())),
    };
    emit(output, &body)?;
    if !all_match {
        bail!(Exit(EXIT_MISMATCH, "verification mismatch".into()));
    }
    if any_skipped {
        bail!(Exit(EXIT_BUDGET, "some checks exceeded the enumeration budget".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Analyze {
            spec,
            check,
            budget,
            output,
        } => cmd_analyze(spec, *check, *budget, output),
        Command::Table {
            p,
            m,
            s,
            eta,
            mode,
            output,
        } => cmd_table(*p, *m, *s, *eta, mode, output),
        Command::Verify {
            paper_tables,
            p2_cyclic,
            properties,
            criteria,
            budget,
            seed,
            trials,
            instances,
            output,
        } => {
            let cfg = VerifyConfig {
                budget: EnumerationBudget::new(*budget),
                seed: *seed,
                trials: *trials,
                instances: *instances,
                ..Default::default()
            };
            cmd_verify(*paper_tables, *p2_cyclic, *properties, criteria, cfg, output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
