use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finric_core::{
    compare_zeta, direction_grid, generic_zeta, qtp, ricci_general, ricci_vanishing_s, s_curvature_vanishes,
    table_zeta, AlphaBetaMetric, ImplicationReport, PhiFamily, PhiKind, RicciReport, ZetaSet, ZetaSource,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra_file::{parse_algebra, sha256_hex, LoadedAlgebra};
use crate::error::{exit, CliError, Result};
use crate::report::{num, Emit, ReportEnvelope, Table};

#[derive(Debug, Parser)]
#[command(name = "finric", version, about = "Zeta-coefficient verification and Ricci curvature of homogeneous (alpha, beta)-metric spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Object, global = true)]
    pub emit: Emit,
    /// Pole tolerance for numeric evaluation of the zeta functions.
    #[arg(long, default_value_t = 1e-12, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the derived zeta_1..zeta_26 with the closed-form table.
    VerifyZeta {
        #[arg(long, value_enum)]
        metric: ZetaMetric,
    },
    /// Ricci curvature in one direction.
    Ricci {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated components; defaults to the first basis vector.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        /// Use the reduced formula; fails unless the S-curvature vanishes.
        #[arg(long)]
        vanishing_s: bool,
    },
    /// Ricci curvature over a deterministic grid of unit directions.
    Scan {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
        grid: u32,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Algebra file (JSON).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = SourceArg::Generic)]
    pub zeta_source: SourceArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMetric {
    Square,
    RandersSquare,
    /// phi = 1: the derivation must give 26 zero functions.
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Generic,
    PaperTable,
}

impl From<SourceArg> for ZetaSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Generic => ZetaSource::Generic,
            SourceArg::PaperTable => ZetaSource::PaperTable,
        }
    }
}

/// A finished command: the report and the exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: ReportEnvelope,
    pub exit_code: i32,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be a positive number, got {}", cli.tol)));
    }
    match &cli.command {
        Command::VerifyZeta { metric } => run_verify_zeta(*metric),
        Command::Ricci { input, direction, vanishing_s } => {
            run_ricci(input, direction.as_deref(), *vanishing_s, cli.tol)
        }
        Command::Scan { input, grid } => run_scan(input, *grid as usize, cli.tol),
    }
}

fn verdict_label(matches: bool) -> &'static str {
    if matches {
        "exact_match"
    } else {
        "mismatch"
    }
}

pub fn run_verify_zeta(metric: ZetaMetric) -> Result<Outcome> {
    let (kind, right_label) = match metric {
        ZetaMetric::Square => (PhiKind::Square, "paper-table"),
        ZetaMetric::RandersSquare => (PhiKind::RandersSquare, "paper-table"),
        ZetaMetric::Riemannian => (PhiKind::Riemannian, "zero"),
    };
    let generic = generic_zeta(&qtp(&PhiFamily::named(kind))?)?;
    let table = match metric {
        ZetaMetric::Riemannian => ZetaSet::zero(ZetaSource::PaperTable),
        _ => table_zeta(kind)?,
    };
    let cmp = compare_zeta(&generic, &table);

    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    let mut warnings = Vec::new();
    for v in &cmp.verdicts {
        let (g, t) = (generic.get(v.index), table.get(v.index));
        let witness = v.witness.map(|w| json!({"s": w.s, "B": w.b, "generic": w.left, "table": w.right}));
        if let Some(w) = &v.witness {
            warnings.push(format!(
                "zeta_{} differs from the table: at s = {}, B = {} generic = {}, table = {}",
                v.index, w.s, w.b, w.left, w.right
            ));
        }
        rows.push(vec![
            v.index.to_string(),
            verdict_label(v.matches).into(),
            v.witness.map_or(String::new(), |w| num(w.s)),
            v.witness.map_or(String::new(), |w| num(w.b)),
            v.witness.map_or(String::new(), |w| num(w.left)),
            v.witness.map_or(String::new(), |w| num(w.right)),
        ]);
        verdicts.push(json!({
            "index": v.index,
            "verdict": verdict_label(v.matches),
            "exact_match": v.matches,
            "generic": g.to_string(),
            "table": t.to_string(),
            "witness": witness,
        }));
    }
    let mismatched = cmp.mismatched();
    let command = json!({"name": "verify-zeta", "metric": kind.name()});
    let results = json!({
        "metric": kind.name(),
        "left": "generic",
        "right": right_label,
        "all_match": cmp.all_match(),
        "mismatched": mismatched,
        "verdicts": verdicts,
    });
    let table = Table {
        header: ["index", "verdict", "s", "B", "generic", "table"].map(String::from).to_vec(),
        rows,
        notes: vec![("mismatched".into(), format!("{mismatched:?}"))],
    };
    let digest = sha256_hex(command.to_string().as_bytes());
    let exit_code = if cmp.all_match() { exit::OK } else { exit::ZETA_MISMATCH };
    Ok(Outcome { report: ReportEnvelope::new(command, digest, results, warnings, table), exit_code })
}

fn parse_direction(text: Option<&str>, n: usize) -> Result<Vec<f64>> {
    let Some(text) = text else {
        let mut e1 = vec![0.0; n];
        e1[0] = 1.0;
        return Ok(e1);
    };
    let z = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad direction component `{}`", p.trim()))))
        .collect::<Result<Vec<_>>>()?;
    if z.len() != n || z.iter().all(|v| *v == 0.0) || z.iter().any(|v| !v.is_finite()) {
        return Err(finric_core::Error::Direction { expected: n, got: z.len() }.into());
    }
    Ok(z)
}

struct Loaded {
    alg: LoadedAlgebra,
    metric: AlphaBetaMetric,
    source: ZetaSource,
    warnings: Vec<String>,
}

fn load(input: &InputArgs, tol: f64) -> Result<Loaded> {
    let alg = parse_algebra(&input.input)?;
    let metric = AlphaBetaMetric::new(alg.phi.clone())?.with_pole_tol(tol);
    let source = ZetaSource::from(input.zeta_source);
    let mut warnings = Vec::new();
    if source == ZetaSource::PaperTable {
        let cmp = compare_zeta(metric.zeta(ZetaSource::Generic)?, metric.zeta(ZetaSource::PaperTable)?);
        if !cmp.all_match() {
            warnings.push(format!(
                "the {} table differs from the derived zeta at indices {:?}",
                alg.phi.kind(),
                cmp.mismatched()
            ));
        }
    }
    Ok(Loaded { alg, metric, source, warnings })
}

fn input_echo(name: &str, input: &InputArgs, tol: f64) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("name".into(), json!(name));
    m.insert("input".into(), json!(input.input.display().to_string()));
    m.insert("zeta_source".into(), json!(ZetaSource::from(input.zeta_source).to_string()));
    m.insert("tol".into(), json!(tol));
    m
}

pub fn run_ricci(input: &InputArgs, direction: Option<&str>, vanishing_s: bool, tol: f64) -> Result<Outcome> {
    let l = load(input, tol)?;
    let alg = &l.alg.spec;
    let z = parse_direction(direction, alg.dimension())?;
    let report: RicciReport = if vanishing_s {
        ricci_vanishing_s(alg, &l.metric, &z, &l.alg.mode, l.source)?
    } else {
        ricci_general(alg, &l.metric, &z, &l.alg.mode, l.source)?
    };
    let mut command = input_echo("ricci", input, tol);
    command.insert("direction".into(), json!(z));
    command.insert("vanishing_s".into(), json!(vanishing_s));
    let mut results = serde_json::to_value(&report).expect("ricci report is serializable");
    results["metric"] = json!(l.alg.phi.to_string());
    let rows = [
        ("alpha_ric", num(report.alpha_ric)),
        ("rt_term", num(report.rt_term)),
        ("total", num(report.total)),
        ("s_vanishes", report.s_vanishes.to_string()),
        ("s_ratio", num(report.s_ratio)),
        ("B_value", num(report.b_value)),
    ]
    .into_iter()
    .map(|(k, v)| vec![k.to_string(), v])
    .collect();
    let table = Table { header: vec!["quantity".into(), "value".into()], rows, notes: Vec::new() };
    Ok(Outcome {
        report: ReportEnvelope::new(Value::Object(command), l.alg.digest.clone(), results, l.warnings, table),
        exit_code: exit::OK,
    })
}

pub fn run_scan(input: &InputArgs, grid: usize, tol: f64) -> Result<Outcome> {
    let l = load(input, tol)?;
    let alg = &l.alg.spec;
    let n = alg.dimension();
    let dirs = direction_grid(n, grid);
    let values = dirs
        .par_iter()
        .map(|z| ricci_general(alg, &l.metric, z, &l.alg.mode, l.source).map(|r| r.total))
        .collect::<finric_core::Result<Vec<f64>>>()?;
    let imp = ImplicationReport::from_values(s_curvature_vanishes(alg), &values);

    let mut command = input_echo("scan", input, tol);
    command.insert("grid".into(), json!(grid));
    let samples: Vec<Value> = dirs.iter().zip(&values).map(|(z, v)| json!({"direction": z, "ric": v})).collect();
    let mut results = serde_json::to_value(&imp).expect("implication report is serializable");
    results["metric"] = json!(l.alg.phi.to_string());
    results["values"] = Value::Array(samples);

    let mut header = vec!["k".to_string()];
    header.extend((1..=n).map(|i| format!("z{i}")));
    header.push("ric".into());
    let rows = dirs
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(k, (z, v))| {
            let mut row = vec![k.to_string()];
            row.extend(z.iter().map(|x| num(*x)));
            row.push(num(*v));
            row
        })
        .collect();
    let notes = vec![
        ("min".into(), num(imp.min)),
        ("max".into(), num(imp.max)),
        (
            "signs".into(),
            format!("negative={} zero={} positive={}", imp.signs.negative, imp.signs.zero, imp.signs.positive),
        ),
        ("s_vanishes".into(), imp.s_vanishes.to_string()),
        ("implication".into(), imp.message.clone()),
    ];
    Ok(Outcome {
        report: ReportEnvelope::new(Value::Object(command), l.alg.digest.clone(), results, l.warnings, Table {
            header,
            rows,
            notes,
        }),
        exit_code: exit::OK,
    })
}
