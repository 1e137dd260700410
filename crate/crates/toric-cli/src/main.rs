//! Command-line front end for the toric geometry engine.
//!
//! Subcommands mirror the library layers: `fan info` inspects a fan file,
//! `intersect` computes triple intersection numbers, `config check`
//! verifies a connected-sections configuration, `genus-bound` and
//! `boundary-genus` evaluate genus bounds for curve classes, and
//! `certify` / `sweep` run the hyperbolicity decision procedure over the
//! built-in parametric families.
//!
//! Exit codes: 0 when a verdict or report is produced (`UNKNOWN` and
//! `REFUTED` are verdicts), 2 on malformed input, 3 when a mathematical
//! hypothesis fails (non-Gorenstein fan, disconnected sections, missing
//! ample reference). Every report has a `--json` mirror with a stable
//! field set.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use toric::formats;
use toric_core::bounds::{
    curve_genus_bound, triple_intersection, BoundsError, CurveClass, GenusBound, IntersectError,
    QDivisor,
};
use toric_core::hyperbolicity::families::{self, Family, Params, SweepCell};
use toric_core::hyperbolicity::{certify, LedgerRow, RowKind, Verdict};
use toric_core::lattice::{int, Int};
use toric_core::toric::{Fan, ToricDivisor};

#[derive(Parser)]
#[command(name = "toric", version, about = "Toric surface hyperbolicity engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect fan files.
    Fan {
        #[command(subcommand)]
        command: FanCommand,
    },
    /// Triple intersection number of three divisors on one fan.
    Intersect {
        d1: PathBuf,
        d2: PathBuf,
        d3: PathBuf,
        /// Ample reference divisor file, required for non-nef factors.
        #[arg(long)]
        ample: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check configuration files.
    Config {
        #[command(subcommand)]
        command: ConfigCommand,
    },
    /// Genus bound for a curve class on a verified configuration.
    GenusBound {
        config: PathBuf,
        /// Curve class: `ci:c0,c1,...[/den]` (divisor coefficients of a
        /// complete intersection class) or `boundary:<ray>`.
        #[arg(long)]
        curve: String,
        /// Ample reference divisor file for non-nef intersections.
        #[arg(long)]
        ample: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Geometric genus of every toric boundary curve of a surface.
    BoundaryGenus {
        divisor: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Hyperbolicity verdict for one member of a built-in family.
    Certify {
        /// Family name; one of p3, p2xp1, p1cubed, blp3, wps.
        family: String,
        /// Parameter assignment, e.g. `a=5,b=3`.
        #[arg(long)]
        params: String,
        #[arg(long)]
        json: bool,
    },
    /// Hyperbolicity verdicts over a parameter grid, as CSV.
    Sweep {
        /// Family name; one of p3, p2xp1, p1cubed, blp3, wps.
        family: String,
        /// Fixed parameters, e.g. `n=2`.
        #[arg(long)]
        params: Option<String>,
        /// Swept parameters, e.g. `a=1..10,b=1..10` (inclusive); the last
        /// range varies fastest.
        #[arg(long)]
        range: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum FanCommand {
    /// Completeness, smoothness, Gorenstein and class group report.
    Info {
        fan: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ConfigCommand {
    /// Verify the connected-sections hypotheses of a configuration.
    Check {
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Failures the exit code distinguishes from produced verdicts.
enum Failure {
    /// Malformed or inconsistent input: exit 2.
    Input(anyhow::Error),
    /// A mathematical hypothesis failed: exit 3.
    Hypothesis(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Fan { command: FanCommand::Info { fan, json } } => fan_info(&fan, json),
        Command::Intersect { d1, d2, d3, ample, json } => intersect(&d1, &d2, &d3, ample, json),
        Command::Config { command: ConfigCommand::Check { config, json } } => {
            config_check(&config, json)
        }
        Command::GenusBound { config, curve, ample, json } => {
            genus_bound(&config, &curve, ample, json)
        }
        Command::BoundaryGenus { divisor, json } => boundary_genus(&divisor, json),
        Command::Certify { family, params, json } => run_certify(&family, &params, json),
        Command::Sweep { family, params, range, csv, json } => {
            run_sweep(&family, params.as_deref(), &range, csv.as_deref(), json)
        }
    }
}

#[derive(Serialize)]
struct ClassGroupDoc {
    free_rank: usize,
    torsion: Vec<String>,
}

#[derive(Serialize)]
struct FanInfoDoc {
    rank: usize,
    ray_count: usize,
    max_cone_count: usize,
    complete: bool,
    simplicial: bool,
    smooth: bool,
    gorenstein: bool,
    gorenstein_defect_cone: Option<usize>,
    class_group: ClassGroupDoc,
}

fn class_group_display(free_rank: usize, torsion: &[Int]) -> String {
    let mut parts: Vec<String> = Vec::new();
    match free_rank {
        0 => {}
        1 => parts.push(String::from("Z")),
        r => parts.push(format!("Z^{}", r)),
    }
    for t in torsion {
        parts.push(format!("Z/{}", t));
    }
    if parts.is_empty() {
        String::from("0")
    } else {
        parts.join(" x ")
    }
}

fn fan_info(path: &Path, json: bool) -> Result<(), Failure> {
    let fan = formats::load_fan(path)?;
    let defect = fan.gorenstein_data().err();
    let group = fan.class_group();
    let doc = FanInfoDoc {
        rank: fan.rank(),
        ray_count: fan.rays().len(),
        max_cone_count: fan.max_cones().len(),
        complete: true,
        simplicial: fan.is_simplicial(),
        smooth: fan.is_smooth(),
        gorenstein: defect.is_none(),
        gorenstein_defect_cone: defect.as_ref().map(|d| d.cone),
        class_group: ClassGroupDoc {
            free_rank: group.free_rank,
            torsion: group.torsion.iter().map(|t| t.to_string()).collect(),
        },
    };
    if json {
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
        return Ok(());
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    println!("rank: {}", doc.rank);
    println!("rays: {}", doc.ray_count);
    println!("maximal cones: {}", doc.max_cone_count);
    println!("complete: {}", yes_no(doc.complete));
    println!("simplicial: {}", yes_no(doc.simplicial));
    println!("smooth: {}", yes_no(doc.smooth));
    match doc.gorenstein_defect_cone {
        None => println!("gorenstein: yes"),
        Some(cone) => {
            println!("gorenstein: no (maximal cone {} has no integral support point)", cone)
        }
    }
    println!("class group: {}", class_group_display(group.free_rank, &group.torsion));
    Ok(())
}

/// Classifies intersection failures: structural mismatches are input
/// errors, missing or unusable references are hypothesis failures.
fn intersect_failure(e: IntersectError) -> Failure {
    match e {
        IntersectError::NotRankThree | IntersectError::FanMismatch => {
            Failure::Input(anyhow!("{}", e))
        }
        _ => Failure::Hypothesis(e.to_string()),
    }
}

#[derive(Serialize)]
struct IntersectDoc {
    value: String,
}

fn intersect(
    d1: &Path,
    d2: &Path,
    d3: &Path,
    ample: Option<PathBuf>,
    json: bool,
) -> Result<(), Failure> {
    let d1 = formats::load_divisor(d1)?;
    let d2 = formats::load_divisor(d2)?;
    let d3 = formats::load_divisor(d3)?;
    let ample = ample.map(|p| formats::load_divisor(&p)).transpose()?;
    let value =
        triple_intersection(&d1, &d2, &d3, ample.as_ref()).map_err(intersect_failure)?;
    if json {
        let doc = IntersectDoc { value: value.to_string() };
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
    } else {
        println!("D1.D2.D3 = {}", value);
    }
    Ok(())
}

#[derive(Serialize)]
struct ConfigCheckDoc {
    ok: bool,
    vertices: usize,
    components: usize,
    span_gaps: usize,
}

fn config_check(path: &Path, json: bool) -> Result<(), Failure> {
    let config = formats::load_config(path)?;
    let verified = config
        .verify()
        .map_err(|d| Failure::Hypothesis(format!("configuration rejected: {}", d)))?;
    let report = &verified.sections;
    let doc = ConfigCheckDoc {
        ok: true,
        vertices: report.vertex_count,
        components: report.component_count,
        span_gaps: report.missing_from_span.len(),
    };
    if json {
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
    } else {
        println!("hypotheses: satisfied");
        println!("sections: {}", report);
        println!("connected: yes");
    }
    Ok(())
}

/// Parses `ci:c0,c1,...[/den]` or `boundary:<ray>`.
fn parse_curve(spec: &str, fan: &std::sync::Arc<Fan>) -> Result<CurveClass> {
    if let Some(rest) = spec.strip_prefix("boundary:") {
        let ray: usize = rest.parse().with_context(|| format!("curve ray '{}'", rest))?;
        if ray >= fan.rays().len() {
            bail!("curve ray {} out of range ({} rays)", ray, fan.rays().len());
        }
        return Ok(CurveClass::Boundary { ray });
    }
    let Some(rest) = spec.strip_prefix("ci:") else {
        bail!("curve spec '{}' must start with 'ci:' or 'boundary:'", spec);
    };
    let (coeff_part, denom) = match rest.rsplit_once('/') {
        Some((c, d)) => {
            let denom: i64 = d.parse().with_context(|| format!("curve denominator '{}'", d))?;
            if denom <= 0 {
                bail!("curve denominator must be positive, found {}", denom);
            }
            (c, denom)
        }
        None => (rest, 1),
    };
    let coeffs: Vec<i64> = coeff_part
        .split(',')
        .map(|c| c.trim().parse().with_context(|| format!("curve coefficient '{}'", c)))
        .collect::<Result<_>>()?;
    if coeffs.len() != fan.rays().len() {
        bail!(
            "curve class has {} coefficients, fan has {} rays",
            coeffs.len(),
            fan.rays().len()
        );
    }
    Ok(CurveClass::CompleteIntersection(QDivisor::new(
        ToricDivisor::from_i64(fan, &coeffs),
        int(denom),
    )))
}

#[derive(Serialize)]
struct GenusBoundDoc {
    kind: &'static str,
    pairings: Vec<String>,
    genus_bound: Option<String>,
    genus: Option<String>,
}

fn genus_bound(
    config_path: &Path,
    curve: &str,
    ample: Option<PathBuf>,
    json: bool,
) -> Result<(), Failure> {
    let config = formats::load_config(config_path)?;
    let ample = ample.map(|p| formats::load_divisor(&p)).transpose()?;
    let class = parse_curve(curve, config.d.fan())?;
    let verified = config
        .verify()
        .map_err(|d| Failure::Hypothesis(format!("configuration rejected: {}", d)))?;
    let bound = curve_genus_bound(&verified, &class, ample.as_ref()).map_err(|e| match e {
        BoundsError::Intersect(e) => intersect_failure(e),
        BoundsError::Boundary(e) => Failure::Hypothesis(e.to_string()),
    })?;
    let doc = match &bound {
        GenusBound::LowerBound(g) => {
            let pairings = match &class {
                CurveClass::CompleteIntersection(f) => verified
                    .curve_pairings(f, ample.as_ref())
                    .map_err(intersect_failure)?
                    .iter()
                    .map(|p| p.to_string())
                    .collect(),
                CurveClass::Boundary { .. } => unreachable!("boundary classes are exact"),
            };
            GenusBoundDoc {
                kind: "lower_bound",
                pairings,
                genus_bound: Some(g.to_string()),
                genus: None,
            }
        }
        GenusBound::ExactBoundary(g) => GenusBoundDoc {
            kind: "exact_boundary",
            pairings: Vec::new(),
            genus_bound: None,
            genus: Some(g.to_string()),
        },
    };
    if json {
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
        return Ok(());
    }
    match &bound {
        GenusBound::LowerBound(g) => {
            for (i, p) in doc.pairings.iter().enumerate() {
                println!("pairing E{}: {}", i, p);
            }
            println!("genus >= {}", g);
        }
        GenusBound::ExactBoundary(g) => println!("genus = {} (exact)", g),
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundaryGenusRow {
    ray: usize,
    genus: String,
}

#[derive(Serialize)]
struct BoundaryGenusDoc {
    genera: Vec<BoundaryGenusRow>,
}

fn boundary_genus(path: &Path, json: bool) -> Result<(), Failure> {
    let d = formats::load_divisor(path)?;
    let polytope = d.polytope();
    let facets = polytope.facets().map_err(|_| {
        Failure::Hypothesis(String::from(
            "divisor polytope is not full-dimensional; members cut no surface",
        ))
    })?;
    let doc = BoundaryGenusDoc {
        genera: facets
            .iter()
            .map(|f| BoundaryGenusRow {
                ray: f.source,
                genus: f.interior_points.len().to_string(),
            })
            .collect(),
    };
    if json {
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
    } else {
        for row in &doc.genera {
            println!("ray {}: genus {}", row.ray, row.genus);
        }
    }
    Ok(())
}

fn parse_params(text: &str) -> Result<Params> {
    let mut params = Params::new();
    for part in text.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter '{}' is not of the form name=value", part))?;
        let value: i64 =
            value.parse().with_context(|| format!("parameter value '{}'", value))?;
        if params.insert(name.trim().to_string(), value).is_some() {
            bail!("parameter '{}' given twice", name);
        }
    }
    Ok(params)
}

fn parse_ranges(text: &str) -> Result<Vec<(String, i64, i64)>> {
    let mut ranges = Vec::new();
    for part in text.split(',') {
        let (name, span) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("range '{}' is not of the form name=lo..hi", part))?;
        let (lo, hi) = span
            .split_once("..")
            .ok_or_else(|| anyhow!("range '{}' is not of the form name=lo..hi", part))?;
        let lo: i64 = lo.parse().with_context(|| format!("range bound '{}'", lo))?;
        let hi: i64 = hi.parse().with_context(|| format!("range bound '{}'", hi))?;
        let name = name.trim().to_string();
        if ranges.iter().any(|(n, _, _)| *n == name) {
            bail!("range '{}' given twice", name);
        }
        ranges.push((name, lo, hi));
    }
    Ok(ranges)
}

fn family_by_name(name: &str) -> Result<Family> {
    families::by_name(name).map_err(|e| anyhow!("{}", e))
}

#[derive(Serialize)]
struct WitnessDoc {
    ray: usize,
    genus: String,
}

#[derive(Serialize)]
struct LedgerRowDoc {
    kind: &'static str,
    label: String,
    excess: String,
    degree: String,
    ratio: String,
}

#[derive(Serialize)]
struct VerdictDoc {
    verdict: &'static str,
    epsilon: Option<String>,
    ledger: Option<Vec<LedgerRowDoc>>,
    witness: Option<WitnessDoc>,
    reason: Option<String>,
}

fn ledger_row_doc(row: &LedgerRow) -> LedgerRowDoc {
    LedgerRowDoc {
        kind: match row.kind {
            RowKind::Ray => "ray",
            RowKind::Boundary => "boundary",
        },
        label: row.label.clone(),
        excess: row.excess.to_string(),
        degree: row.degree.to_string(),
        ratio: row.ratio.to_string(),
    }
}

fn verdict_doc(verdict: &Verdict) -> VerdictDoc {
    match verdict {
        Verdict::Certified { epsilon, ledger } => VerdictDoc {
            verdict: "CERTIFIED",
            epsilon: Some(epsilon.to_string()),
            ledger: Some(ledger.iter().map(ledger_row_doc).collect()),
            witness: None,
            reason: None,
        },
        Verdict::Refuted { witness } => VerdictDoc {
            verdict: "REFUTED",
            epsilon: None,
            ledger: None,
            witness: Some(WitnessDoc { ray: witness.ray, genus: witness.genus.to_string() }),
            reason: None,
        },
        Verdict::Unknown { reason } => VerdictDoc {
            verdict: "UNKNOWN",
            epsilon: None,
            ledger: None,
            witness: None,
            reason: Some(reason.code()),
        },
    }
}

fn run_certify(family: &str, params: &str, json: bool) -> Result<(), Failure> {
    let family = family_by_name(family)?;
    let params = parse_params(params)?;
    let problem = family.build(&params).map_err(|e| anyhow!("{}", e))?;
    let verdict = certify(&problem);
    let doc = verdict_doc(&verdict);
    if json {
        println!("{}", serde_json::to_string(&doc).expect("report serializes"));
        return Ok(());
    }
    match &verdict {
        Verdict::Certified { epsilon, ledger } => {
            println!("CERTIFIED epsilon={}", epsilon);
            for row in ledger {
                let kind = match row.kind {
                    RowKind::Ray => "ray",
                    RowKind::Boundary => "boundary",
                };
                println!(
                    "  {} {}: excess={} degree={} ratio={}",
                    kind, row.label, row.excess, row.degree, row.ratio
                );
            }
        }
        Verdict::Refuted { witness } => {
            println!("REFUTED witness ray={} genus={}", witness.ray, witness.genus);
        }
        Verdict::Unknown { reason } => println!("UNKNOWN reason={}", reason.code()),
    }
    Ok(())
}

/// Renders one sweep cell as the CSV row
/// `params,verdict,epsilon,witness,reason`.
fn csv_record(cell: &SweepCell, order: &[String]) -> [String; 5] {
    let params = order
        .iter()
        .map(|name| format!("{}={}", name, cell.params[name]))
        .collect::<Vec<_>>()
        .join(" ");
    match &cell.verdict {
        Verdict::Certified { epsilon, .. } => [
            params,
            String::from("CERTIFIED"),
            epsilon.to_string(),
            String::new(),
            String::new(),
        ],
        Verdict::Refuted { witness } => [
            params,
            String::from("REFUTED"),
            String::new(),
            format!("ray={} genus={}", witness.ray, witness.genus),
            String::new(),
        ],
        Verdict::Unknown { reason } => [
            params,
            String::from("UNKNOWN"),
            String::new(),
            String::new(),
            reason.code(),
        ],
    }
}

fn write_sweep_csv<W: Write>(out: W, cells: &[SweepCell], order: &[String]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["params", "verdict", "epsilon", "witness", "reason"])?;
    for cell in cells {
        writer.write_record(csv_record(cell, order))?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepCellDoc {
    params: Params,
    #[serde(flatten)]
    verdict: VerdictDoc,
}

fn run_sweep(
    family: &str,
    params: Option<&str>,
    range: &str,
    csv_path: Option<&Path>,
    json: bool,
) -> Result<(), Failure> {
    let family = family_by_name(family)?;
    let fixed = params.map(parse_params).transpose()?.unwrap_or_default();
    let ranges = parse_ranges(range)?;
    let cells = families::sweep(&family, &fixed, &ranges).map_err(|e| anyhow!("{}", e))?;

    let mut order: Vec<String> = fixed.keys().cloned().collect();
    order.extend(ranges.iter().map(|(name, _, _)| name.clone()));

    if let Some(path) = csv_path {
        let file = std::fs::File::create(path)
            .with_context(|| format!("creating {}", path.display()))
            .map_err(Failure::Input)?;
        write_sweep_csv(file, &cells, &order)?;
        if !json {
            println!("wrote {} cells to {}", cells.len(), path.display());
        }
    }
    if json {
        let docs: Vec<SweepCellDoc> = cells
            .iter()
            .map(|c| SweepCellDoc { params: c.params.clone(), verdict: verdict_doc(&c.verdict) })
            .collect();
        println!("{}", serde_json::to_string(&docs).expect("report serializes"));
    } else if csv_path.is_none() {
        write_sweep_csv(std::io::stdout().lock(), &cells, &order)?;
    }
    Ok(())
}
