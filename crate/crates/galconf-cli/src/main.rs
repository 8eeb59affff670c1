//! Command-line front end: run verification suites, print charges, and
//! transform trajectories.
//!
//! Exit codes: 0 = all checks pass, 1 = verification failure or off-shell
//! input, 2 = usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use galconf::group::{apply_point_transform, TrajectoryFile, TransformSpec};
use galconf::noether::{free_lagrangian, noether_charge, ostrogradski, standard_symmetries};
use galconf::phase::build_charges;
use galconf::rational::{decimal_string, parse_rational, Rational};
use galconf::report::{CheckStatus, Report};
use galconf::suites::{run_suite, Suite};
use galconf::{Branch, Error, ModelConfig};

#[derive(Parser)]
#[command(
    name = "galconf",
    version,
    about = "Exact verification of conformal Galilei symmetry in higher-derivative mechanics"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and report every check.
    Verify {
        /// Family index N (odd with --dim 3, even with --dim 2).
        #[arg(long = "N")]
        n: u32,
        /// Spatial dimension (2 or 3).
        #[arg(long)]
        dim: u8,
        /// Suite: algebra, group, noether, appendix or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Also write the machine-readable JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the phase-space charges and their Lagrangian counterparts.
    Charges {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        dim: u8,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply a finite transformation to a trajectory file.
    Transform {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        dim: u8,
        /// Input trajectory (JSON with rational coefficient strings).
        #[arg(long)]
        traj: PathBuf,
        /// Transformation, e.g. `conformal:c=1/2` or `boost:k=2,x=1/2,0,0`.
        #[arg(long)]
        op: String,
        /// Output trajectory file.
        #[arg(long)]
        out: PathBuf,
        /// Optional CSV sampling of the transformed trajectory.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Rational sampling grid start:step:count (required with --csv).
        #[arg(long)]
        grid: Option<String>,
        /// Decimal digits in CSV cells (display only).
        #[arg(long, default_value_t = 6)]
        digits: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Write to stdout, tolerating a consumer that stopped reading (EPIPE);
/// the exit code is decided before anything is printed.
fn emit(text: &str) {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: cannot write to stdout: {e}");
            std::process::exit(1);
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidModel(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Verify {
            n,
            dim,
            suite,
            json,
        } => cmd_verify(n, dim, &suite, json),
        Cmd::Charges { n, dim, format } => cmd_charges(n, dim, &format),
        Cmd::Transform {
            n,
            dim,
            traj,
            op,
            out,
            csv,
            grid,
            digits,
        } => cmd_transform(
            n,
            dim,
            &traj,
            &op,
            &out,
            csv.as_deref(),
            grid.as_deref(),
            digits,
        ),
    }
}

fn cmd_verify(n: u32, dim: u8, suite: &str, json: Option<PathBuf>) -> Result<ExitCode, Error> {
    let cfg = ModelConfig::new(n, dim)?;
    let suite = Suite::parse(suite)?;
    let report = run_suite(&cfg, suite);
    let verdict = if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    emit(&render_report(&report, suite));
    if let Some(path) = json {
        std::fs::write(&path, report.to_json())
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(verdict)
}

fn render_report(report: &Report, suite: Suite) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(
        out,
        "model N={} dim={} branch={} m={}  suite={}",
        report.model.n,
        report.model.dim,
        report.model.branch,
        report.model.m,
        suite.as_str()
    )
    .unwrap();
    for check in &report.checks {
        let tag = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::ReportedDiscrepancy => "note",
        };
        writeln!(out, "[{tag}] {}", check.id).unwrap();
        if check.status != CheckStatus::Pass {
            writeln!(out, "       {}", check.description).unwrap();
            if let Some(w) = &check.witness {
                writeln!(out, "       witness: {w}").unwrap();
            }
        }
    }
    writeln!(
        out,
        "summary: passed={} failed={} discrepancies={}",
        report.summary.passed, report.summary.failed, report.summary.discrepancies
    )
    .unwrap();
    out
}

#[derive(Serialize)]
struct ChargeGroup {
    h: String,
    d: String,
    k: String,
    j: Vec<String>,
    c: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct ChargesJson {
    model: galconf::report::ModelDesc,
    phase: ChargeGroup,
    lagrangian: ChargeGroup,
    momenta: Vec<Vec<String>>,
}

fn collect_charges(cfg: &ModelConfig) -> (ChargeGroup, ChargeGroup, Vec<Vec<String>>) {
    let ch = build_charges(cfg);
    let phase = ChargeGroup {
        h: ch.h.to_string(),
        d: ch.d.to_string(),
        k: ch.k.to_string(),
        j: ch.j.iter().map(|p| p.to_string()).collect(),
        c: ch
            .c
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect())
            .collect(),
    };
    let lm = free_lagrangian(cfg);
    let syms: std::collections::BTreeMap<String, _> =
        standard_symmetries(cfg).into_iter().collect();
    let charge = |name: &str| {
        noether_charge(&lm, &syms[name])
            .expect("standard symmetries are exact")
            .to_string()
    };
    let j_names: Vec<String> = match cfg.branch() {
        Branch::OddN3d => vec![
            "rotation-x".into(),
            "rotation-y".into(),
            "rotation-z".into(),
        ],
        Branch::EvenN2d => vec!["rotation".into()],
    };
    let lagrangian = ChargeGroup {
        h: charge("time-shift"),
        d: charge("dilation"),
        k: charge("conformal"),
        j: j_names.iter().map(|s| charge(s)).collect(),
        c: (0..=cfg.n())
            .map(|level| {
                cfg.axes()
                    .map(|a| charge(&format!("boost-{level}-{}", galconf::var::axis_letter(a))))
                    .collect()
            })
            .collect(),
    };
    let (momenta, _) = ostrogradski(&lm);
    let momenta = momenta
        .iter()
        .map(|row| row.iter().map(|p| p.to_string()).collect())
        .collect();
    (phase, lagrangian, momenta)
}

fn cmd_charges(n: u32, dim: u8, format: &str) -> Result<ExitCode, Error> {
    use std::fmt::Write;
    let cfg = ModelConfig::new(n, dim)?;
    let (phase, lagrangian, momenta) = collect_charges(&cfg);
    let mut text = String::new();
    match format {
        "text" => {
            writeln!(
                text,
                "phase-space charges (N={}, dim={}):",
                cfg.n(),
                cfg.dim()
            )
            .unwrap();
            writeln!(text, "  h = {}", phase.h).unwrap();
            writeln!(text, "  d = {}", phase.d).unwrap();
            writeln!(text, "  k = {}", phase.k).unwrap();
            for (i, j) in phase.j.iter().enumerate() {
                if cfg.dim() == 2 {
                    writeln!(text, "  j = {j}").unwrap();
                } else {
                    writeln!(text, "  j_{} = {j}", galconf::var::axis_letter(i as u8)).unwrap();
                }
            }
            for (level, row) in phase.c.iter().enumerate() {
                for (a, c) in row.iter().enumerate() {
                    writeln!(
                        text,
                        "  c_{level}^{} = {c}",
                        galconf::var::axis_letter(a as u8)
                    )
                    .unwrap();
                }
            }
            writeln!(text, "Lagrangian charges:").unwrap();
            writeln!(text, "  H = {}", lagrangian.h).unwrap();
            writeln!(text, "  D = {}", lagrangian.d).unwrap();
            writeln!(text, "  K = {}", lagrangian.k).unwrap();
            for (i, j) in lagrangian.j.iter().enumerate() {
                if cfg.dim() == 2 {
                    writeln!(text, "  J = {j}").unwrap();
                } else {
                    writeln!(text, "  J_{} = {j}", galconf::var::axis_letter(i as u8)).unwrap();
                }
            }
            for (level, row) in lagrangian.c.iter().enumerate() {
                for (a, c) in row.iter().enumerate() {
                    writeln!(
                        text,
                        "  C_{level}^{} = {c}",
                        galconf::var::axis_letter(a as u8)
                    )
                    .unwrap();
                }
            }
            writeln!(text, "Ostrogradski momenta:").unwrap();
            for (lvl, row) in momenta.iter().enumerate() {
                for (a, p) in row.iter().enumerate() {
                    writeln!(
                        text,
                        "  p_{lvl}^{} = {p}",
                        galconf::var::axis_letter(a as u8)
                    )
                    .unwrap();
                }
            }
        }
        "json" => {
            let out = ChargesJson {
                model: galconf::report::ModelDesc {
                    n: cfg.n(),
                    dim: cfg.dim(),
                    branch: cfg.branch().as_str().to_string(),
                    m: cfg.mass_string(),
                },
                phase,
                lagrangian,
                momenta,
            };
            text = serde_json::to_string_pretty(&out).expect("charges serialization");
            text.push('\n');
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown format {other:?} (expected text or json)"
            )))
        }
    }
    emit(&text);
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    n: u32,
    dim: u8,
    traj_path: &std::path::Path,
    op: &str,
    out_path: &std::path::Path,
    csv: Option<&std::path::Path>,
    grid: Option<&str>,
    digits: u32,
) -> Result<ExitCode, Error> {
    let cfg = ModelConfig::new(n, dim)?;
    let raw = std::fs::read_to_string(traj_path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", traj_path.display())))?;
    let file: TrajectoryFile = serde_json::from_str(&raw)
        .map_err(|e| Error::Parse(format!("invalid trajectory file: {e}")))?;
    let traj = file.to_trajectory(&cfg)?;
    if traj.degree() > cfg.n() {
        // Off-shell input: exit code 1, not a usage error.
        return Err(Error::OffShell {
            degree: traj.degree(),
            max: cfg.n(),
        });
    }
    let spec = TransformSpec::parse(op, &cfg)?;
    let image = apply_point_transform(&spec, &traj, &cfg)?;
    let out_file = TrajectoryFile::from_trajectory(&image, &cfg)?;
    let json = serde_json::to_string_pretty(&out_file).expect("trajectory serialization");
    std::fs::write(out_path, json + "\n")
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", out_path.display())))?;

    if let Some(csv_path) = csv {
        let grid =
            grid.ok_or_else(|| Error::Parse("--csv requires --grid start:step:count".into()))?;
        let (start, step, count) = parse_grid(grid)?;
        let letters: Vec<char> = (0..cfg.dim()).map(galconf::var::axis_letter).collect();
        let mut rows = String::from("t");
        for l in &letters {
            rows.push(',');
            rows.push(*l);
        }
        rows.push('\n');
        let mut t = start;
        for _ in 0..count {
            let vals = image.eval(&t)?;
            rows.push_str(&decimal_string(&t, digits));
            for v in vals {
                rows.push(',');
                rows.push_str(&decimal_string(&v, digits));
            }
            rows.push('\n');
            t += step.clone();
        }
        std::fs::write(csv_path, rows)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", csv_path.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_grid(grid: &str) -> Result<(Rational, Rational, usize), Error> {
    let parts: Vec<&str> = grid.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "grid {grid:?}: expected start:step:count"
        )));
    }
    let start = parse_rational(parts[0])?;
    let step = parse_rational(parts[1])?;
    let count = parts[2]
        .parse::<usize>()
        .map_err(|e| Error::Parse(format!("grid count {:?}: {e}", parts[2])))?;
    Ok((start, step, count))
}
