use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use multispin::em::{stokes_expectations, PolarizationState};
use multispin::epsilon::{epsilon, BasisIndex, SpaceView};
use multispin::fock::normalized_gram;
use multispin::projectors::{dyad_factorize, EnergySign, FourMomentum, ProjectorFamily, StateLabel};
use multispin::scalar::rational_to_string;
use multispin::verify::{self, parse_config_file, SchemeChoice, Suite, SuiteConfig};
use multispin::wave::WaveMatrices;
use multispin::{Error, ExactMatrix, GaussianRational};

#[derive(Parser)]
#[command(name = "multispin", version, about = "Exact checks for the spin-0/spin-1 vector field algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report every identity.
    Verify(VerifyArgs),
    /// Print exact objects as JSON.
    #[command(subcommand)]
    Dump(DumpCommand),
    /// Stokes expectations ⟨J0..J3⟩ of a two-mode polarization state.
    Stokes {
        /// e.g. `[[1,0,"1"],[0,1,"i"]]`, entries `[n1, n2, coefficient]`.
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = multispin::em::DEFAULT_TRUNCATION)]
        truncation: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// all, algebra, projectors, u31, fock, em (comma separated).
    #[arg(default_value = "all")]
    suites: String,
    #[arg(long)]
    mass: Option<String>,
    /// Spatial momentum `px,py,pz`.
    #[arg(long, allow_hyphen_values = true)]
    momentum: Option<String>,
    #[arg(long)]
    k0: Option<String>,
    #[arg(long)]
    truncation: Option<u32>,
    /// 1, 2 or both.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long, env = verify::WORKERS_ENV)]
    workers: Option<usize>,
    #[arg(long)]
    json: bool,
    /// key = value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    no_timing: bool,
    /// Perturb one identity (by id) so that it must fail.
    #[arg(long)]
    mutate: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichMatrices {
    Alpha,
    Beta1,
    Beta0,
    Eta,
    Lorentz,
    All,
}

#[derive(Subcommand)]
enum DumpCommand {
    /// ε^{A,B} in one of the views dim4, dim5, dim10, dim11.
    Epsilon {
        #[arg(long, default_value = "dim11")]
        space: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    WaveMatrices {
        #[arg(long, value_enum, default_value = "all")]
        which: WhichMatrices,
    },
    /// The dyad Ψ, Ψ̄ of one pure state.
    Solutions {
        #[arg(long, default_value = "4")]
        mass: String,
        #[arg(long, default_value = "0,0,3", allow_hyphen_values = true)]
        momentum: String,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        energy_sign: i64,
        #[arg(long, default_value_t = 1)]
        spin: u8,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        projection: i8,
    },
    /// Normalized Gram matrix of the truncated Fock basis.
    Gram {
        #[arg(long, default_value_t = 4)]
        truncation: u32,
        #[arg(long, default_value = "2")]
        scheme: String,
    },
}

fn config_error(e: impl std::fmt::Display) -> Error {
    Error::Config(e.to_string())
}

fn build_config(args: &VerifyArgs) -> Result<(SuiteConfig, bool, Option<PathBuf>), Error> {
    let file: BTreeMap<String, String> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let known = ["mass", "momentum", "k0", "truncation", "scheme", "workers", "json", "no-timing", "mutate", "output"];
    if let Some(k) = file.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(config_error(format!("unknown config key '{k}'")));
    }
    let pick = |flag: &Option<String>, key: &str, default: &str| {
        flag.clone().or_else(|| file.get(key).cloned()).unwrap_or_else(|| default.to_string())
    };
    let flag_bool = |flag: bool, key: &str| -> Result<bool, Error> {
        if flag {
            return Ok(true);
        }
        match file.get(key).map(String::as_str) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => Err(config_error(format!("{key} must be true or false, got '{v}'"))),
        }
    };
    let parse_u = |flag: Option<usize>, key: &str, default: usize| -> Result<usize, Error> {
        match (flag, file.get(key)) {
            (Some(v), _) => Ok(v),
            (None, Some(v)) => v.parse().map_err(|_| config_error(format!("{key} must be a non-negative integer"))),
            (None, None) => Ok(default),
        }
    };
    let suites = Suite::parse_list(&args.suites)?;
    let truncation = parse_u(
        args.truncation.map(|t| t as usize),
        "truncation",
        multispin::fock::DEFAULT_TRUNCATION as usize,
    )?;
    let scheme: SchemeChoice = pick(&args.scheme, "scheme", "both").parse()?;
    let mut cfg = SuiteConfig::new(
        suites,
        &pick(&args.mass, "mass", "4"),
        &pick(&args.momentum, "momentum", "0,0,3"),
        &pick(&args.k0, "k0", "5"),
        u32::try_from(truncation).map_err(config_error)?,
        scheme,
    )?;
    cfg.workers = parse_u(args.workers, "workers", 1)?.max(1);
    cfg.timing = !flag_bool(args.no_timing, "no-timing")?;
    cfg.mutate = args.mutate.clone().or_else(|| file.get("mutate").cloned());
    let json = flag_bool(args.json, "json")?;
    let output = args.output.clone().or_else(|| file.get("output").map(PathBuf::from));
    Ok((cfg, json, output))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Error> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| config_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let (cfg, json, output) = build_config(args)?;
    let report = verify::run(&cfg)?;
    let mut text = if json { report.to_json() } else { report.to_text() };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(&text, output.as_ref())?;
    Ok(report.exit_code() as u8)
}

fn matrix_value(m: &ExactMatrix) -> Value {
    serde_json::to_value(m.to_json_value()).expect("matrix serializes")
}

fn run_dump(cmd: &DumpCommand) -> Result<String, Error> {
    let value = match cmd {
        DumpCommand::Epsilon { space, a, b } => {
            let space: SpaceView = space.parse().map_err(config_error)?;
            let a: BasisIndex = a.parse().map_err(config_error)?;
            let b: BasisIndex = b.parse().map_err(config_error)?;
            matrix_value(&epsilon(a, b, space)?)
        }
        DumpCommand::WaveMatrices { which } => {
            let w = WaveMatrices::build();
            let mut out = Map::new();
            let indexed = |out: &mut Map<String, Value>, name: &str, ms: &[ExactMatrix; 4]| {
                for (k, m) in ms.iter().enumerate() {
                    out.insert(format!("{name}{}", k + 1), matrix_value(m));
                }
            };
            let all = matches!(which, WhichMatrices::All);
            if all || matches!(which, WhichMatrices::Alpha) {
                indexed(&mut out, "alpha", &w.alpha);
            }
            if all || matches!(which, WhichMatrices::Beta1) {
                indexed(&mut out, "beta1_", &w.beta1);
            }
            if all || matches!(which, WhichMatrices::Beta0) {
                indexed(&mut out, "beta0_", &w.beta0);
            }
            if all || matches!(which, WhichMatrices::Eta) {
                out.insert("eta".into(), matrix_value(&w.eta));
            }
            if all || matches!(which, WhichMatrices::Lorentz) {
                for (&(a, b), m) in multispin::epsilon::BIVECTOR_PAIRS.iter().zip(&w.lorentz) {
                    out.insert(format!("J{a}{b}"), matrix_value(m));
                }
            }
            Value::Object(out)
        }
        DumpCommand::Solutions { mass, momentum, energy_sign, spin, projection } => {
            let p = FourMomentum::parse(mass, momentum).map_err(config_error)?;
            let label = StateLabel::new(EnergySign::from_i64(*energy_sign).map_err(config_error)?, *spin, *projection)
                .map_err(config_error)?;
            let w = WaveMatrices::build();
            let fam = ProjectorFamily::build(&w, &p).map_err(config_error)?;
            let delta = fam.delta(label).map_err(config_error)?;
            let dyad = dyad_factorize(delta, &w.eta, Some(label))?;
            serde_json::from_str(&dyad.to_json()).expect("dyad JSON is valid")
        }
        DumpCommand::Gram { truncation, scheme } => {
            let schemes = scheme.parse::<SchemeChoice>()?.schemes();
            if schemes.len() != 1 {
                return Err(config_error("gram needs scheme 1 or 2"));
            }
            matrix_value(&normalized_gram(*truncation, schemes[0]).map_err(config_error)?)
        }
    };
    Ok(value.to_string())
}

fn real_string(g: &GaussianRational) -> String {
    let [re, im] = g.to_string_pair();
    if im == "0/1" {
        rational_to_string(&g.re)
    } else {
        format!("{re}+{im}i")
    }
}

fn run_stokes(state: &str, truncation: u32) -> Result<String, Error> {
    let st = PolarizationState::from_json(state, truncation).map_err(config_error)?;
    let j = stokes_expectations(&st).map_err(config_error)?;
    Ok(json!({
        "J0": real_string(&j[0]),
        "J1": real_string(&j[1]),
        "J2": real_string(&j[2]),
        "J3": real_string(&j[3]),
    })
    .to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Dump(cmd) => run_dump(cmd).map(|s| {
            println!("{s}");
            0
        }),
        Command::Stokes { state, truncation } => run_stokes(state, *truncation).map(|s| {
            println!("{s}");
            0
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
