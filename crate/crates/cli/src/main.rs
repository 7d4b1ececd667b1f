//! `projline`: generate, check, reconstruct and coordinatize projective line
//! candidates, and evaluate rapports in `P(K²)`.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 bad input, 3 internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projline::candidate::axioms::parse_axioms;
use projline::coordinatization::coordinate_map;
use projline::model::{table_for_frame, verify_classical_tables, ReportLevel};
use projline::reconstruction::{
    check_mod_p, minus_one_report, phi_consistency, phi_independence, reconstruct,
};
use projline::scalar::Field;
use projline::{
    check_axioms, classify_prime, validate_structure, verify_field, verify_iso, verify_uniqueness,
    Axiom, CandidateTable, Classification, FieldId, FieldTable, Frame, PrimeField, ProjectiveLine,
    Rationals, Report,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "projline",
    version,
    about = "Projective line candidates over exact fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for exhaustive sweeps (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Witnesses kept per failing check.
    #[arg(long, default_value_t = projline::DEFAULT_WITNESSES, global = true)]
    witnesses: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write the candidate table of P(F_p²).
    Gen {
        #[arg(long)]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest prime accepted.
        #[arg(long, default_value_t = 13)]
        cap: u64,
    },
    /// Check groupoid laws and axioms of a candidate file.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated subset of one,two,pappus,hex1,hex2,as.
        #[arg(long)]
        axioms: Option<String>,
    },
    /// Rebuild the field at a base object and verify it.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Base object name (default: the first object).
        #[arg(long)]
        base: Option<String>,
        /// Where to write the field tables.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the field axioms on a field file.
    VerifyField {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Coordinatize a candidate of prime order.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Three object names sent to 0:1, 1:0, 1:1 (default: the first three).
        #[arg(long)]
        frame: Option<String>,
        #[arg(long)]
        base: Option<String>,
        /// Also try every frame-fixing bijection.
        #[arg(long)]
        uniqueness: bool,
        /// Where to write the isomorphism.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross ratio (A,B;C,D).
    Cr(PointArgs),
    /// Tri-rapport (A,B,C;D,E,F).
    Tri(PointArgs),
    /// Harmonic conjugate of C with respect to A, B.
    Harmonic(PointArgs),
    /// The 18-row table of rapport identities.
    Tables {
        #[arg(long)]
        p: String,
        /// Evaluate one frame A,B,C = 0:1,1:0,1:1 and D with (A,B;C,D) = mu.
        #[arg(long, conflicts_with = "points")]
        mu: Option<String>,
        /// Evaluate one quadruple A,B,C,D.
        #[arg(long)]
        points: Option<String>,
        /// List every entry, not only failures.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
struct PointArgs {
    /// A prime or Q.
    #[arg(long)]
    p: String,
    /// Comma-separated points x:y.
    #[arg(long)]
    points: String,
}

/// A failed run: the message and its exit code.
struct Failure(u8, String);

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure(2, e.to_string())
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    let run = std::panic::catch_unwind(|| run(&cli));
    match run {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Failure(code, msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
        Err(_) => ExitCode::from(3),
    }
}

fn run(cli: &Cli) -> Outcome {
    let (fmt, cap) = (cli.format, cli.witnesses);
    match &cli.command {
        Command::Gen { p, out, cap: max } => gen(p, out.as_deref(), *max),
        Command::Check { input, axioms } => check(&load(input)?, axioms.as_deref(), fmt, cap),
        Command::Reconstruct { input, base, out } => {
            cmd_reconstruct(&load(input)?, base.as_deref(), out.as_deref(), fmt, cap)
        }
        Command::VerifyField { input: path } => {
            let ft = FieldTable::from_json(&read(path)?).map_err(input)?;
            let report = verify_field(&ft, cap);
            emit(fmt, &[&report])?;
            Ok(code(report.passed()))
        }
        Command::Classify {
            input,
            frame,
            base,
            uniqueness,
            out,
        } => classify(
            &load(input)?,
            frame.as_deref(),
            base.as_deref(),
            *uniqueness,
            out.as_deref(),
            fmt,
            cap,
        ),
        Command::Cr(args) => on_field(&args.p, |line| rapport(line, &args.points, 4, fmt)),
        Command::Tri(args) => on_field(&args.p, |line| rapport(line, &args.points, 6, fmt)),
        Command::Harmonic(args) => on_field(&args.p, |line| harmonic(line, &args.points, fmt)),
        Command::Tables {
            p,
            mu,
            points,
            full,
        } => on_field(p, |line| {
            tables(line, mu.as_deref(), points.as_deref(), *full, fmt)
        }),
    }
}

fn code(passed: bool) -> u8 {
    if passed {
        0
    } else {
        1
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<CandidateTable, Failure> {
    CandidateTable::from_json(&read(path)?)
        .map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn emit(fmt: Format, reports: &[&Report]) -> Result<(), Failure> {
    match fmt {
        Format::Text => reports.iter().for_each(|r| print!("{}", r.render_text())),
        Format::Json => {
            let text = if let [one] = reports {
                serde_json::to_string_pretty(one)
            } else {
                serde_json::to_string_pretty(reports)
            };
            println!("{}", text.map_err(|e| Failure(3, e.to_string()))?);
        }
    }
    Ok(())
}

fn gen(p: &str, out: Option<&Path>, max: u64) -> Outcome {
    let FieldId::Prime(p) = p.parse::<FieldId>().map_err(input)? else {
        return Err(input(
            "gen needs a prime; the rationals have no finite table",
        ));
    };
    if p > max {
        return Err(input(format!(
            "p = {p} exceeds the cap {max} (raise it with --cap)"
        )));
    }
    let line = ProjectiveLine::new(PrimeField::new(p).map_err(input)?);
    let table = CandidateTable::from_model(&line).map_err(|e| Failure(3, e.to_string()))?;
    let text = table.to_json();
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn check(t: &CandidateTable, axioms: Option<&str>, fmt: Format, cap: usize) -> Outcome {
    let which = match axioms {
        Some(list) => parse_axioms(list).map_err(input)?,
        None => Axiom::ALL.to_vec(),
    };
    let structure = validate_structure(t, cap);
    let axioms = check_axioms(t, &which, cap);
    emit(fmt, &[&structure, &axioms])?;
    Ok(code(structure.passed() && axioms.passed()))
}

fn base_object(t: &CandidateTable, base: Option<&str>) -> Result<usize, Failure> {
    base.map_or(Ok(0), |name| t.object_id(name).map_err(input))
}

/// Structure must pass before anything is rebuilt from the table.
fn require_structure(t: &CandidateTable, fmt: Format, cap: usize) -> Result<(), Failure> {
    let structure = validate_structure(t, cap);
    if structure.passed() {
        return Ok(());
    }
    emit(fmt, &[&structure])?;
    Err(Failure(1, "candidate fails the groupoid laws".into()))
}

fn cmd_reconstruct(
    t: &CandidateTable,
    base: Option<&str>,
    out: Option<&Path>,
    fmt: Format,
    cap: usize,
) -> Outcome {
    let base = base_object(t, base)?;
    require_structure(t, fmt, cap)?;
    let rec = reconstruct(t, base).map_err(|e| Failure(1, format!("reconstruction: {e}")))?;
    let ft = &rec.field;
    let mut report = verify_field(ft, cap);
    report.checks.push(phi_consistency(&rec, cap));
    report.extend(phi_independence(t, base, cap));
    report.extend(minus_one_report(t, cap));
    let class = if report.passed() {
        match classify_prime(ft) {
            Ok(Classification::Prime { p, residue }) => {
                report.checks.push(check_mod_p(ft, &residue, p, cap));
                format!("F_{p}")
            }
            Ok(Classification::NonPrime { order }) => format!("order {order}, not prime"),
            Err(e) => format!("unclassified: {e}"),
        }
    } else {
        "unclassified".into()
    };
    if let Some(path) = out {
        write(path, &ft.to_json())?;
    }
    match fmt {
        Format::Text => {
            print!("{}", report.render_text());
            println!("field: order {} at {}, {class}", ft.order(), ft.base_object);
            println!("-1 = {}", ft.carrier[ft.minus_one]);
        }
        Format::Json => {
            let doc = json!({ "report": report, "order": ft.order(), "classification": class });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| Failure(3, e.to_string()))?
            );
        }
    }
    Ok(code(report.passed()))
}

fn classify(
    t: &CandidateTable,
    frame: Option<&str>,
    base: Option<&str>,
    uniqueness: bool,
    out: Option<&Path>,
    fmt: Format,
    cap: usize,
) -> Outcome {
    let base = base_object(t, base)?;
    let frame = match frame {
        Some(text) => Frame::parse(t, text).map_err(input)?,
        None => Frame::new(0, 1, 2).map_err(input)?,
    };
    require_structure(t, fmt, cap)?;
    let ft = reconstruct(t, base)
        .map_err(|e| Failure(1, format!("reconstruction: {e}")))?
        .field;
    let iso =
        coordinate_map(t, &ft, frame).map_err(|e| Failure(1, format!("coordinatization: {e}")))?;
    let mut report = verify_iso(t, &iso, cap);
    if uniqueness {
        report.extend(verify_uniqueness(t, &ft, frame).map_err(input)?);
    }
    let verified = report.passed();
    let doc = iso.to_json(t, verified);
    if let Some(path) = out {
        write(path, &doc)?;
    }
    match fmt {
        Format::Text => {
            print!("{}", report.render_text());
            for o in 0..t.object_count() {
                println!("{} -> {}", t.object_name(o), iso.object_map[o]);
            }
            println!("verified: {verified}");
        }
        Format::Json => print!("{doc}"),
    }
    Ok(code(verified))
}

/// Runs `body` on `P(K²)` for `K` named by a prime or `Q`.
fn on_field(name: &str, body: impl Fn(&dyn AnyLine) -> Outcome) -> Outcome {
    match name.parse::<FieldId>().map_err(input)? {
        FieldId::Prime(p) => body(&ProjectiveLine::new(PrimeField::new(p).map_err(input)?)),
        FieldId::Rationals => body(&ProjectiveLine::new(Rationals::default())),
    }
}

/// The handful of model operations the calculator commands need, with
/// elements rendered as text so one closure serves every field.
trait AnyLine {
    fn cross_ratio(&self, pts: &[String]) -> Result<String, String>;
    fn tri_rapport(&self, pts: &[String]) -> Result<String, String>;
    fn harmonic(&self, pts: &[String]) -> Result<(String, String), String>;
    fn point_with_cross_ratio(&self, mu: &str) -> Result<Vec<String>, String>;
    fn table(&self, pts: &[String]) -> Result<Vec<projline::model::TableEntry>, String>;
    fn all_tables(&self, level: ReportLevel) -> Result<projline::model::TableReport, String>;
}

impl<F: Field> AnyLine for ProjectiveLine<F> {
    fn cross_ratio(&self, pts: &[String]) -> Result<String, String> {
        let p = parse_points(self, pts)?;
        Ok(
            ProjectiveLine::cross_ratio(self, &p[0], &p[1], &p[2], &p[3])
                .map_err(|e| e.to_string())?
                .to_string(),
        )
    }

    fn tri_rapport(&self, pts: &[String]) -> Result<String, String> {
        let p = parse_points(self, pts)?;
        let v = ProjectiveLine::tri_rapport(self, &p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
        Ok(v.map_err(|e| e.to_string())?.to_string())
    }

    fn harmonic(&self, pts: &[String]) -> Result<(String, String), String> {
        let p = parse_points(self, pts)?;
        let h = self
            .harmonic_conjugate(&p[0], &p[1], &p[2])
            .map_err(|e| e.to_string())?;
        let k = self
            .harmonic_conjugate_by_composite(&p[0], &p[1], &p[2])
            .map_err(|e| e.to_string())?;
        Ok((h.to_string(), k.to_string()))
    }

    fn point_with_cross_ratio(&self, mu: &str) -> Result<Vec<String>, String> {
        let mu = self.field().parse(mu).map_err(|e| e.to_string())?;
        let [a, b, c] = self.standard_frame();
        let d = ProjectiveLine::point_with_cross_ratio(self, &a, &b, &c, &mu)
            .map_err(|e| e.to_string())?;
        Ok([a, b, c, d].iter().map(|p| p.to_string()).collect())
    }

    fn table(&self, pts: &[String]) -> Result<Vec<projline::model::TableEntry>, String> {
        let p = parse_points(self, pts)?;
        table_for_frame(self, [&p[0], &p[1], &p[2], &p[3]]).map_err(|e| e.to_string())
    }

    fn all_tables(&self, level: ReportLevel) -> Result<projline::model::TableReport, String> {
        verify_classical_tables(self, level).map_err(|e| e.to_string())
    }
}

fn parse_points<F: Field>(
    line: &ProjectiveLine<F>,
    pts: &[String],
) -> Result<Vec<projline::Point<F::Elem>>, String> {
    pts.iter()
        .map(|s| line.parse_point(s).map_err(|e| e.to_string()))
        .collect()
}

fn split_points(text: &str, n: usize) -> Result<Vec<String>, Failure> {
    let pts: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if pts.len() != n {
        return Err(input(format!("expected {n} points, got {}", pts.len())));
    }
    Ok(pts)
}

fn rapport(line: &dyn AnyLine, points: &str, n: usize, fmt: Format) -> Outcome {
    let pts = split_points(points, n)?;
    let value = if n == 4 {
        line.cross_ratio(&pts)
    } else {
        line.tri_rapport(&pts)
    }
    .map_err(input)?;
    match fmt {
        Format::Text => println!("{value}"),
        Format::Json => println!("{}", json!({ "points": pts, "value": value })),
    }
    Ok(0)
}

fn harmonic(line: &dyn AnyLine, points: &str, fmt: Format) -> Outcome {
    let pts = split_points(points, 3)?;
    let (h, k) = line.harmonic(&pts).map_err(input)?;
    let agree = h == k;
    match fmt {
        Format::Text => {
            println!("{h}");
            if !agree {
                println!("composite characterization gives {k}");
            }
        }
        Format::Json => println!(
            "{}",
            json!({ "points": pts, "harmonic": h, "composite": k, "agree": agree })
        ),
    }
    Ok(code(agree))
}

fn tables(
    line: &dyn AnyLine,
    mu: Option<&str>,
    points: Option<&str>,
    full: bool,
    fmt: Format,
) -> Outcome {
    let quad = match (mu, points) {
        (Some(mu), _) => Some(line.point_with_cross_ratio(mu).map_err(input)?),
        (None, Some(text)) => Some(split_points(text, 4)?),
        (None, None) => None,
    };
    let text_err = |e: serde_json::Error| Failure(3, e.to_string());
    match quad {
        Some(quad) => {
            let entries = line.table(&quad).map_err(input)?;
            let passed = entries.iter().all(|e| e.pass);
            match fmt {
                Format::Text => {
                    println!("frame {}", quad.join(","));
                    for e in &entries {
                        let mark = if e.pass { "ok" } else { "MISMATCH" };
                        println!("  {:<44} {:>8} {:>8}  {mark}", e.row, e.expected, e.got);
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&entries).map_err(text_err)?
                ),
            }
            Ok(code(passed))
        }
        None => {
            let level = if full {
                ReportLevel::Full
            } else {
                ReportLevel::Summary
            };
            let report = line.all_tables(level).map_err(input)?;
            match fmt {
                Format::Text => {
                    println!("{}: {} quadruples", report.field, report.quadruples);
                    for r in &report.rows {
                        println!(
                            "  {:<44} checked={} failures={}",
                            r.row, r.checked, r.failures
                        );
                    }
                    for e in &report.entries {
                        let mark = if e.pass { "ok" } else { "MISMATCH" };
                        println!(
                            "  {} {}: expected {} got {}  {mark}",
                            e.frame, e.row, e.expected, e.got
                        );
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(text_err)?
                ),
            }
            Ok(code(report.passed()))
        }
    }
}
