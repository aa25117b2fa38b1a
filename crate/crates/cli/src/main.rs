mod angle;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use knotsig::invariants::{alexander_poly, signature_profile_with, tl_signature_with, UnitCirclePoint};
use knotsig::lab::{replay_general, uniform_angles, verify_theorem, Epsilon, LabError};
use knotsig::seifert::entry_text;
use knotsig::{satellite_seifert, torus_knot_seifert, Catalog, SatelliteSpec, SeifertMatrix, Tolerances};

use angle::parse_angle;

#[derive(Debug, Parser)]
#[command(name = "knotsig", version, about = "Tristram-Levine signatures of knots and satellites")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Config {
    /// Knot catalog; the built-in knots are used if the file does not exist
    #[arg(long, global = true, default_value = "knots.txt")]
    catalog: PathBuf,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_zero: f64,
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_jump: f64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_root: f64,
    /// Grid size for `profile`
    #[arg(long, global = true, default_value_t = 360)]
    resolution: usize,
    /// Write the main output here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Signature at one angle
    Sig {
        knot: String,
        #[arg(long, allow_hyphen_values = true)]
        angle: String,
    },
    /// Signature CSV over the circle
    Profile { knot: String },
    /// Seifert matrix of a satellite, in catalog format
    Satellite {
        pattern: String,
        companion: String,
        winding: usize,
        #[arg(long, default_value = "satellite")]
        name: String,
    },
    /// Alexander polynomial in canonical form
    Alexander { knot: String },
    /// Check the satellite formula on uniform angles; `--out` receives the CSV report
    Verify {
        pattern: String,
        companion: String,
        winding: usize,
        #[arg(default_value_t = 360)]
        samples: usize,
    },
    /// Step-by-step congruence reduction of the satellite block form
    Replay {
        companion: String,
        winding: usize,
        #[arg(long, allow_hyphen_values = true)]
        angle: String,
        /// 1 or -1
        #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_epsilon)]
        eps: Epsilon,
        /// Defaults to the winding number
        #[arg(long)]
        u: Option<usize>,
    },
}

fn parse_epsilon(s: &str) -> Result<Epsilon, String> {
    match s {
        "1" | "+1" | "plus" => Ok(Epsilon::Plus),
        "-1" | "minus" => Ok(Epsilon::Minus),
        _ => Err(format!("expected 1 or -1, got `{s}`")),
    }
}

#[derive(Debug)]
enum CliError {
    UnknownKnot(String),
    Parse(String),
    ExcludedAngle(String),
    VerificationFailed(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::UnknownKnot(_) => 2,
            CliError::Parse(_) => 3,
            CliError::ExcludedAngle(_) => 4,
            CliError::VerificationFailed(_) => 5,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::UnknownKnot(m)
            | CliError::Parse(m)
            | CliError::ExcludedAngle(m)
            | CliError::VerificationFailed(m)
            | CliError::Io(m) => m,
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::RootOfUnityExcluded { .. } => CliError::ExcludedAngle(e.to_string()),
            LabError::StageMismatch { .. } => CliError::VerificationFailed(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

struct Context {
    config: Config,
    tol: Tolerances,
    catalog: Option<Catalog>,
}

impl Context {
    fn new(config: Config) -> Result<Self, CliError> {
        for (flag, v) in [("--tol-zero", config.tol_zero), ("--tol-jump", config.tol_jump), ("--tol-root", config.tol_root)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Parse(format!("{flag} must be positive, got {v}")));
            }
        }
        if config.resolution < 4 {
            return Err(CliError::Parse(format!("--resolution must be at least 4, got {}", config.resolution)));
        }
        let tol = Tolerances {
            zero: config.tol_zero,
            jump: config.tol_jump,
            root: config.tol_root,
            ..Tolerances::default()
        };
        Ok(Self { config, tol, catalog: None })
    }

    fn catalog(&mut self) -> Result<&Catalog, CliError> {
        if self.catalog.is_none() {
            let path = &self.config.catalog;
            let catalog = if path.exists() {
                Catalog::load(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
            } else {
                Catalog::builtin()
            };
            self.catalog = Some(catalog);
        }
        Ok(self.catalog.as_ref().unwrap())
    }

    /// Catalog name, then `T(p,q)`, then a catalog-format file (first entry).
    fn knot(&mut self, spec: &str) -> Result<SeifertMatrix, CliError> {
        if let Some(e) = self.catalog()?.get(spec) {
            return Ok(e.seifert.clone());
        }
        if let Some((p, q)) = torus_args(spec) {
            return torus_knot_seifert(p, q).map_err(|e| CliError::Parse(e.to_string()));
        }
        let path = Path::new(spec);
        if path.is_file() {
            let c = Catalog::load(path).map_err(|e| CliError::Parse(format!("{spec}: {e}")))?;
            return c
                .entries()
                .first()
                .map(|e| e.seifert.clone())
                .ok_or_else(|| CliError::Parse(format!("{spec}: no knot in file")));
        }
        Err(CliError::UnknownKnot(format!("unknown knot `{spec}`")))
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.config.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn torus_args(s: &str) -> Option<(i64, i64)> {
    let inner = s.strip_prefix("T(").or_else(|| s.strip_prefix("t("))?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn angle(s: &str) -> Result<UnitCirclePoint, CliError> {
    parse_angle(s).map(UnitCirclePoint::new).map_err(CliError::Parse)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut ctx = Context::new(cli.config)?;
    match cli.command {
        Command::Sig { knot, angle: a } => {
            let k = ctx.knot(&knot)?;
            let w = angle(&a)?;
            ctx.emit(&format!("{}\n", tl_signature_with(&k, w, &ctx.tol)))
        }
        Command::Profile { knot } => {
            let k = ctx.knot(&knot)?;
            let p = signature_profile_with(&k, ctx.config.resolution, &ctx.tol)
                .map_err(|e| CliError::VerificationFailed(e.to_string()))?;
            ctx.emit(&p.to_csv())
        }
        Command::Satellite { pattern, companion, winding, name } => {
            let spec = SatelliteSpec::new(ctx.knot(&pattern)?, ctx.knot(&companion)?, winding);
            let sat = satellite_seifert(&spec).map_err(|e| CliError::Parse(e.to_string()))?;
            ctx.emit(&entry_text(&name, sat.matrix(), Some(&alexander_poly(&sat))))
        }
        Command::Alexander { knot } => {
            let k = ctx.knot(&knot)?;
            ctx.emit(&format!("{}\n", alexander_poly(&k)))
        }
        Command::Verify { pattern, companion, winding, samples } => {
            if samples == 0 {
                return Err(CliError::Parse("samples must be positive".into()));
            }
            let spec = SatelliteSpec::new(ctx.knot(&pattern)?, ctx.knot(&companion)?, winding);
            let report = verify_theorem(&spec, &uniform_angles(samples), &ctx.tol)?;
            let failures = report.failures().len();
            let summary = format!(
                "compared {} skipped {} failures {failures}",
                report.compared(),
                report.skipped()
            );
            if ctx.config.out.is_some() {
                ctx.emit(&report.to_csv())?;
            }
            println!("{summary}");
            if failures > 0 {
                return Err(CliError::VerificationFailed(format!("{failures} angles violate the satellite formula")));
            }
            Ok(())
        }
        Command::Replay { companion, winding, angle: a, eps, u } => {
            let k = ctx.knot(&companion)?;
            let w = angle(&a)?;
            if w.is_one() {
                return Err(CliError::ExcludedAngle("omega = 1 gives the zero form".into()));
            }
            let trace = replay_general(&k, winding, w, eps, u.unwrap_or(winding), &ctx.tol)?;
            ctx.emit(&trace.to_log())?;
            if !trace.passed() {
                return Err(CliError::VerificationFailed("replay checks failed".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("knotsig: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
