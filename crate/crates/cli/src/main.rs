//! Command-line front end: every verification suite in the library behind
//! one binary with machine-readable reports.
//!
//! Exit codes are a stable contract: 0 all checks pass, 1 a check failed,
//! 2 usage or parse error, 3 internal certification failure, 4 resource
//! bound exceeded.

use clap::{Parser, Subcommand};
use plucker_core::model_checker::{
    self, build_w_sequence, check_grado_on_roots, check_h5, check_independence, check_mod3,
    check_sph3, verify_ip6_orbit, verify_ip6_roots, verify_lem_k, verify_w_sequence,
};
use plucker_core::pluecker::{self, ridge_restrict, schubert_restrict, straighten};
use plucker_core::rep_theory::{verify_mod1, verify_sph1};
use plucker_core::report::{CheckRecord, CheckStatus, RunReport};
use plucker_core::sl3;
use plucker_core::{exterior, Column, Family, KExtension, PlueckerError, Tableau};
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "plucker",
    version,
    about = "Exact straightening, weight combinatorics and invariant checks for Grassmannians and model varieties"
)]
struct Cli {
    /// Seed for randomized certificates; identical seeds give identical reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the run report as a single JSON line.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on enumerated objects.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Straighten a Plücker monomial into the standard basis.
    Straighten {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u8,
        /// Tableau token, e.g. "1,4|2,3".
        #[arg(long)]
        monomial: String,
    },
    /// List the standard tableaux of one degree.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u8,
        #[arg(long)]
        degree: usize,
    },
    /// Run model-variety check suites for one family and rank.
    VerifyModel {
        /// Family A, B or C.
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Comma-separated list: mod1,mod2,mod3,h1,h5,lemk,ip6-orbit,ip6-roots,wseq.
        #[arg(long, default_value = "")]
        checks: String,
    },
    /// Run spherical-case check suites for parameters (n, p).
    VerifySph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Comma-separated list: sph1,sph2,sph3,h1,h5,wseq.
        #[arg(long, default_value = "")]
        checks: String,
    },
    /// Columns surviving restriction to a Schubert variety and its ridge.
    Ridge {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u8,
        /// Column token, e.g. "2,4".
        #[arg(long)]
        column: String,
    },
    /// Reproduce the SL(3) non-stability counterexample.
    Sl3,
    /// Check the invariant wedge products on a model variety, or with
    /// --family sph and --p on the spherical one.
    Invariants {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        p: Option<usize>,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    fn bound(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.duration = start.elapsed();
            report.finalize();
            if cli.json {
                println!("{}", report.to_json());
            } else {
                render(&report);
            }
            std::process::exit(match report.status {
                CheckStatus::Pass => 0,
                CheckStatus::Fail => 1,
                CheckStatus::Error => 4,
            });
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}

fn render(report: &RunReport) {
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Error => "ERROR",
        };
        match &c.witness {
            Some(w) => println!("{status}  {} [{} rank {}] — {w}", c.check, c.family, c.rank),
            None => println!("{status}  {} [{} rank {}]", c.check, c.family, c.rank),
        }
    }
    if let Some(payload) = &report.report {
        println!(
            "{}",
            serde_json::to_string_pretty(payload).expect("payload serializes")
        );
    }
    let overall = match report.status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Error => "error",
    };
    println!(
        "{}: {overall} — {} checks in {:.2?}",
        report.command,
        report.checks.len(),
        report.duration
    );
}

fn run(cli: &Cli) -> Result<RunReport, CliError> {
    match &cli.command {
        Command::Straighten { k, n, monomial } => cmd_straighten(cli, *k, *n, monomial),
        Command::Enumerate { k, n, degree } => cmd_enumerate(cli, *k, *n, *degree),
        Command::VerifyModel {
            family,
            rank,
            checks,
        } => cmd_verify_model(cli, family, *rank, checks),
        Command::VerifySph { n, p, checks } => cmd_verify_sph(cli, *n, *p, checks),
        Command::Ridge { k, n, column } => cmd_ridge(cli, *k, *n, column),
        Command::Sl3 => cmd_sl3(cli),
        Command::Invariants { family, rank, p } => cmd_invariants(cli, family, *rank, *p),
    }
}

fn base_report(cli: &Cli, command: &str) -> RunReport {
    let mut report = RunReport::new(command);
    report.param("seed", cli.seed);
    report
}

fn parse_family(token: &str) -> Result<Family, CliError> {
    Family::from_str(token).map_err(|e| CliError::usage(e.to_string()))
}

fn model_family(token: &str) -> Result<Family, CliError> {
    let family = parse_family(token)?;
    if family == Family::D {
        return Err(CliError::usage(
            "model varieties are defined for families A, B and C",
        ));
    }
    Ok(family)
}

fn pluecker_usage(e: PlueckerError) -> CliError {
    match e {
        PlueckerError::Internal(m) => CliError::internal(m),
        PlueckerError::SizeBound(b) => CliError::bound(format!("size bound {b} exceeded")),
        other => CliError::usage(other.to_string()),
    }
}

fn cmd_straighten(cli: &Cli, k: usize, n: u8, monomial: &str) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "straighten");
    report
        .param("k", k)
        .param("n", n)
        .param("monomial", monomial);
    let t = Tableau::parse(monomial, n).map_err(pluecker_usage)?;
    if t.k() != k {
        return Err(CliError::usage(format!(
            "monomial has {} rows, expected {k}",
            t.k()
        )));
    }
    let result = straighten(&t).map_err(pluecker_usage)?;
    let expansion: Vec<serde_json::Value> = result
        .combo
        .iter()
        .map(|(tab, coeff)| {
            serde_json::json!({
                "coefficient": coeff.to_string(),
                "tableau": tab.to_string(),
            })
        })
        .collect();
    report.report = Some(serde_json::json!({
        "input": t.to_string(),
        "standard": t.is_standard(),
        "expansion": expansion,
    }));
    let mut rec = CheckRecord::of("straighten", format!("Gr({k},{n})"), t.degree(), true, "");
    rec.witness = Some(format!("{} standard terms", result.combo.len()));
    report.push(rec);
    Ok(report)
}

fn cmd_enumerate(cli: &Cli, k: usize, n: u8, degree: usize) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "enumerate");
    report.param("k", k).param("n", n).param("degree", degree);
    let tableaux = pluecker::enumerate_standard(k, n, degree).map_err(pluecker_usage)?;
    if tableaux.len() > cli.max_size {
        return Err(CliError::bound(format!(
            "{} tableaux exceed --max-size {}",
            tableaux.len(),
            cli.max_size
        )));
    }
    report.report = Some(serde_json::json!({
        "count": tableaux.len(),
        "tableaux": tableaux.iter().map(Tableau::to_string).collect::<Vec<_>>(),
    }));
    let mut rec = CheckRecord::of("enumerate", format!("Gr({k},{n})"), degree, true, "");
    rec.witness = Some(format!("{} standard tableaux", tableaux.len()));
    report.push(rec);
    Ok(report)
}

/// Run one named check, mapping any library error to an error record so
/// the remaining checks still run.
fn guarded(
    records: &mut Vec<CheckRecord>,
    name: &str,
    family: &str,
    rank: usize,
    outcome: Result<Vec<CheckRecord>, String>,
) {
    match outcome {
        Ok(mut rs) => records.append(&mut rs),
        Err(message) => records.push(CheckRecord::error(name, family, rank, message)),
    }
}

fn cmd_verify_model(
    cli: &Cli,
    family_token: &str,
    rank: usize,
    checks: &str,
) -> Result<RunReport, CliError> {
    let family = model_family(family_token)?;
    let mut report = base_report(cli, "verify-model");
    report
        .param("family", family)
        .param("rank", rank)
        .param("checks", checks);
    let names: Vec<String> = checks
        .split(',')
        .map(|s| s.trim().to_ascii_lowercase())
        .filter(|s| !s.is_empty())
        .collect();
    let label = family.to_string();
    let mut records = Vec::new();
    for name in &names {
        match name.as_str() {
            "mod1" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let mut rs = Vec::new();
                    for i in 1..=rank.min(4) {
                        rs.extend(verify_mod1(family, rank, i).map_err(|e| e.to_string())?);
                    }
                    Ok(rs)
                };
                guarded(&mut records, name, &label, rank, run());
            }
            "mod2" => guarded(
                &mut records,
                name,
                &label,
                rank,
                exterior::verify_mod2(family, rank).map_err(|e| e.to_string()),
            ),
            "mod3" => guarded(
                &mut records,
                name,
                &label,
                rank,
                check_mod3(family, rank).map_err(|e| e.to_string()),
            ),
            "h1" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let data =
                        model_checker::model_generators(family, rank).map_err(|e| e.to_string())?;
                    Ok(vec![
                        check_independence(&data),
                        check_grado_on_roots(&data).map_err(|e| e.to_string())?,
                    ])
                };
                guarded(&mut records, name, &label, rank, run());
            }
            "h5" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let data =
                        model_checker::model_generators(family, rank).map_err(|e| e.to_string())?;
                    check_h5(&data, 2).map_err(|e| e.to_string())
                };
                guarded(&mut records, name, &label, rank, run());
            }
            "lemk" => guarded(
                &mut records,
                name,
                &label,
                rank,
                verify_lem_k(family, rank).map_err(|e| e.to_string()),
            ),
            "ip6-orbit" => guarded(
                &mut records,
                name,
                &label,
                rank,
                verify_ip6_orbit(family, rank).map_err(|e| e.to_string()),
            ),
            "ip6-roots" => guarded(
                &mut records,
                name,
                &label,
                rank,
                verify_ip6_roots(family, rank).map_err(|e| e.to_string()),
            ),
            "wseq" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let seq = build_w_sequence(KExtension::Model(family), rank)
                        .map_err(|e| e.to_string())?;
                    verify_w_sequence(&seq).map_err(|e| e.to_string())
                };
                guarded(&mut records, name, &label, rank, run());
            }
            other => return Err(CliError::usage(format!("unknown check: {other}"))),
        }
    }
    report.extend(records);
    Ok(report)
}

fn cmd_verify_sph(cli: &Cli, n: usize, p: usize, checks: &str) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "verify-sph");
    report.param("n", n).param("p", p).param("checks", checks);
    let names: Vec<String> = checks
        .split(',')
        .map(|s| s.trim().to_ascii_lowercase())
        .filter(|s| !s.is_empty())
        .collect();
    let label = format!("Sph({n},{p})");
    let mut records = Vec::new();
    for name in &names {
        match name.as_str() {
            "sph1" => guarded(
                &mut records,
                name,
                &label,
                n,
                verify_sph1(n, p).map_err(|e| e.to_string()),
            ),
            "sph2" => guarded(
                &mut records,
                name,
                &label,
                n,
                exterior::verify_sph2(n, p).map_err(|e| e.to_string()),
            ),
            "sph3" => guarded(
                &mut records,
                name,
                &label,
                n,
                check_sph3(n, p).map_err(|e| e.to_string()),
            ),
            "h1" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let data = model_checker::sph_generators(n, p).map_err(|e| e.to_string())?;
                    Ok(vec![check_independence(&data)])
                };
                guarded(&mut records, name, &label, n, run());
            }
            "h5" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let data = model_checker::sph_generators(n, p).map_err(|e| e.to_string())?;
                    check_h5(&data, 1).map_err(|e| e.to_string())
                };
                guarded(&mut records, name, &label, n, run());
            }
            "wseq" => {
                let run = || -> Result<Vec<CheckRecord>, String> {
                    let seq =
                        build_w_sequence(KExtension::Sph { p }, n).map_err(|e| e.to_string())?;
                    verify_w_sequence(&seq).map_err(|e| e.to_string())
                };
                guarded(&mut records, name, &label, n, run());
            }
            other => return Err(CliError::usage(format!("unknown check: {other}"))),
        }
    }
    report.extend(records);
    Ok(report)
}

fn cmd_ridge(cli: &Cli, k: usize, n: u8, column: &str) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "ridge");
    report.param("k", k).param("n", n).param("column", column);
    let c = Column::parse(column, n).map_err(pluecker_usage)?;
    if c.k() != k {
        return Err(CliError::usage(format!(
            "column has {} rows, expected {k}",
            c.k()
        )));
    }
    let schubert = schubert_restrict(&c);
    let ridge = ridge_restrict(&c);
    report.report = Some(serde_json::json!({
        "column": c.to_string(),
        "schubert": schubert.iter().map(Column::to_string).collect::<Vec<_>>(),
        "ridge": ridge.iter().map(Column::to_string).collect::<Vec<_>>(),
    }));
    let mut rec = CheckRecord::of(
        "ridge",
        format!("Gr({k},{n})"),
        0,
        ridge.len() + 1 == schubert.len(),
        "ridge must drop exactly the minimum column",
    );
    rec.witness = Some(format!(
        "{} Schubert survivors, {} ridge survivors",
        schubert.len(),
        ridge.len()
    ));
    report.push(rec);
    Ok(report)
}

fn cmd_sl3(cli: &Cli) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "sl3");
    let result = sl3::check_nonstability().map_err(|e| CliError::internal(e.to_string()))?;
    report.push(CheckRecord::of(
        "sl3-basis-rank",
        "A",
        2,
        result.basis_rank == 8,
        format!("rank {} of 8 functions", result.basis_rank),
    ));
    report.push(CheckRecord::of(
        "sl3-stable-span",
        "A",
        2,
        result.stable_rank == 8,
        format!("rank {} after adjoining images", result.stable_rank),
    ));
    report.push(CheckRecord::of(
        "sl3-restricted-span",
        "A",
        2,
        result.span_dim == 5,
        format!("restricted span dimension {}", result.span_dim),
    ));
    let mut rec = CheckRecord::of(
        "sl3-witness",
        "A",
        2,
        !result.witnesses.is_empty(),
        "no Levi generator moves the restricted set out of its span",
    );
    if let Some(w) = result.witnesses.first() {
        rec.witness = Some(format!("{} applied to {} leaves the span", w.xi, w.f));
    }
    report.push(rec);
    report.report =
        Some(serde_json::to_value(&result).map_err(|e| CliError::internal(e.to_string()))?);
    Ok(report)
}

fn cmd_invariants(
    cli: &Cli,
    family_token: &str,
    rank: usize,
    p: Option<usize>,
) -> Result<RunReport, CliError> {
    let mut report = base_report(cli, "invariants");
    report.param("family", family_token).param("rank", rank);
    let records = if family_token.eq_ignore_ascii_case("sph") {
        let p = p.ok_or_else(|| CliError::usage("the spherical case needs --p"))?;
        report.param("p", p);
        exterior::verify_sph2(rank, p)
    } else {
        let family = model_family(family_token)?;
        exterior::verify_mod2(family, rank)
    }
    .map_err(|e| match e {
        exterior::ExtError::SizeBound(n, b) => {
            CliError::bound(format!("ambient dimension {n} exceeds bound {b}"))
        }
        other => CliError::usage(other.to_string()),
    })?;
    report.extend(records);
    Ok(report)
}
