use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sodual::branching::{branch_set, central_charge, conformal_check, delta_sum_check, dynkin_index, trace_anomaly};
use sodual::fock::GaugeInstance;
use sodual::{
    enumerate_level_set, run_identities, young_to_weight, BWeight, BranchPair, DimRecord, DualityCase, DualityChecker,
    FockSpace, HarnessConfig, IdentityCheck, Source, Variant, VerlindeEngine, WeightClass, WeightLiteral,
    YoungDiagram, DEFAULT_BITS, IDENTITY_TOL,
};

use crate::output::{emit, Format, Output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sodual::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(sodual::Error::Precision { .. })
            | CliError::Core(sodual::Error::Resource(_))
            | CliError::Core(sodual::Error::Singular(_)) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Parser)]
#[command(name = "sodual", version, about = "Conformal blocks and rank-level duality for odd orthogonal algebras")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_BITS)]
    precision: usize,
    /// Residual allowed for identity checks.
    #[arg(long, global = true, default_value_t = IDENTITY_TOL)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dominant weights of `so(2r+1)` up to a level.
    Levelset {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        level: u32,
        /// Only weights with even last label.
        #[arg(long)]
        tensor: bool,
    },
    /// Verlinde dimension with insertions read from a JSON file (`-` for stdin).
    Dim {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Three-point dimension. Weights are `a.b.c` (fundamental labels),
    /// `Y:2.1` (diagram) or `SY:2.1` (diagram then automorphism).
    Fusion {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        level: u32,
        #[arg(long, value_delimiter = ',')]
        triple: Vec<String>,
    },
    /// Compares both sides of the duality for diagrams read from a JSON file.
    Duality {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        case: String,
        #[arg(long)]
        weights: PathBuf,
    },
    /// Branching components as JSON lines.
    Branch {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        source: String,
        #[arg(long = "max-size")]
        max_size: u32,
    },
    /// Central charges, Dynkin indices and the anomaly sum rule.
    Anomaly {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Fermionic Fock space computations.
    Fock(FockArgs),
    /// Seeded batch runs of the supporting identities.
    Identities {
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
}

#[derive(Debug, Args)]
struct FockArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Cap on the energy of produced vectors.
    #[arg(long = "energy-cap", default_value_t = sodual::fock::DEFAULT_ENERGY_CAP)]
    energy_cap: u32,
    #[command(subcommand)]
    action: FockAction,
}

#[derive(Debug, Subcommand)]
enum FockAction {
    /// Highest-weight vector of a branching component.
    Hwv {
        /// Diagram rows, e.g. `2,1`; empty for the vacuum.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "plain")]
        variant: String,
        #[arg(long)]
        verify: bool,
    },
    /// Vanishing of `B^{a,b}_{-c,-d}(1)` on the two-box lowest vectors.
    Gauge {
        #[arg(long = "max-size", default_value_t = 4)]
        max_size: u32,
    },
}

/// Parses arguments, runs, writes output, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => match out.render(cli.format).and_then(|text| emit(&text, cli.out.as_deref())) {
            Ok(()) => {
                if out.pass {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<Output> {
    if cli.precision < 64 {
        return usage("--precision must be at least 64 bits");
    }
    if !(cli.tolerance > 0.0) {
        return usage("--tolerance must be positive");
    }
    if let Some(k) = cli.jobs {
        if k == 0 {
            return usage("--jobs must be positive");
        }
        // a pool may already exist when run is called more than once in-process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let prec = cli.precision;
    match &cli.command {
        Command::Levelset { r, level, tensor } => levelset(*r, *level, *tensor),
        Command::Dim { r, level, genus, weights } => {
            let ws = read_literals(weights)?
                .iter()
                .map(|l| l.resolve(*r, *level))
                .collect::<Result<Vec<_>, _>>()?;
            dim(*r, *level, *genus, &ws, prec)
        }
        Command::Fusion { r, level, triple } => {
            if triple.len() != 3 {
                return usage(format!("--triple needs three weights, got {}", triple.len()));
            }
            let ws = triple.iter().map(|t| parse_weight_token(t, *r, *level)).collect::<CliResult<Vec<_>>>()?;
            dim(*r, *level, 0, &ws, prec)
        }
        Command::Duality { r, s, case, weights } => {
            let case: DualityCase = case.parse()?;
            let diagrams = read_literals(weights)?.iter().map(literal_diagram).collect::<CliResult<Vec<_>>>()?;
            let rep = DualityChecker::new(*r, *s, prec)?.check(&diagrams, case)?;
            Ok(Output::single(json!({ "lhs": rep.lhs, "rhs": rep.rhs, "pass": rep.pass }), rep.pass))
        }
        Command::Branch { r, s, source, max_size } => {
            let source: Source = source.parse()?;
            branch(*r, *s, source, *max_size)
        }
        Command::Anomaly { r, s } => anomaly(*r, *s),
        Command::Fock(args) => fock(args),
        Command::Identities { check, trials, seed, r, s } => {
            let check: IdentityCheck = check.parse()?;
            let mut cfg = HarnessConfig::new(check, *trials, *seed);
            cfg.r = *r;
            cfg.s = *s;
            cfg.precision = prec;
            cfg.tolerance = cli.tolerance;
            let rep = run_identities(&cfg)?;
            let csv = rep
                .records
                .iter()
                .map(|t| {
                    json!({ "check": rep.check, "seed": rep.seed, "trial": t.trial, "instance": t.instance,
                            "residual": t.residual, "pass": t.pass })
                })
                .collect();
            Ok(Output { json: vec![serde_json::to_value(&rep)?], csv: Some(csv), pass: rep.pass })
        }
    }
}

fn read_literals(path: &Path) -> CliResult<Vec<WeightLiteral>> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn literal_diagram(l: &WeightLiteral) -> CliResult<YoungDiagram> {
    match l {
        WeightLiteral::Young { young, sigma: false } => Ok(YoungDiagram::new(young.clone())?),
        _ => usage("duality points must be plain diagrams {\"young\": [...]}"),
    }
}

fn parse_rows(s: &str, sep: char) -> CliResult<Vec<u32>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(sep)
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad entry '{x}' in '{s}'"))))
        .collect()
}

fn parse_weight_token(token: &str, r: usize, level: u32) -> CliResult<BWeight> {
    let lit = if let Some(rest) = token.strip_prefix("SY:") {
        WeightLiteral::Young { young: parse_rows(rest, '.')?, sigma: true }
    } else if let Some(rest) = token.strip_prefix("Y:") {
        WeightLiteral::Young { young: parse_rows(rest, '.')?, sigma: false }
    } else {
        WeightLiteral::Fund { fund: parse_rows(token, '.')? }
    };
    Ok(lit.resolve(r, level)?)
}

fn levelset(r: usize, level: u32, tensor: bool) -> CliResult<Output> {
    if r == 0 {
        return usage("--r must be positive");
    }
    let class = if tensor { WeightClass::Tensor } else { WeightClass::All };
    let lines = enumerate_level_set(r, level, class)
        .iter()
        .map(|w| {
            let label = w.u_label(level).map(|u| u.to_string()).unwrap_or_default();
            json!({ "fund": w.fund(), "level": w.level(), "tensor": w.is_tensor(), "u": label })
        })
        .collect();
    Ok(Output::lines(lines, true))
}

fn dim(r: usize, level: u32, genus: u32, ws: &[BWeight], prec: usize) -> CliResult<Output> {
    let d = VerlindeEngine::new(r, level, prec)?.dim(ws, genus)?;
    Ok(Output::single(serde_json::to_value(DimRecord::new(r, level, genus, ws, &d))?, true))
}

fn pair_json(p: &BranchPair) -> CliResult<Value> {
    Ok(json!({
        "generator": p.generator.rows(),
        "variant": p.variant.to_string(),
        "source": p.source,
        "left": p.left.fund(),
        "right": p.right.fund(),
        "anomaly": p.anomaly()?.to_string(),
    }))
}

fn branch(r: usize, s: usize, source: Source, max_size: u32) -> CliResult<Output> {
    let lines = branch_set(r, s, source, max_size)?.iter().map(pair_json).collect::<CliResult<Vec<_>>>()?;
    Ok(Output::lines(lines, true))
}

fn anomaly(r: usize, s: usize) -> CliResult<Output> {
    if r == 0 || s == 0 {
        return usage("ranks must be positive");
    }
    let (ll, lr) = (2 * s as u32 + 1, 2 * r as u32 + 1);
    let conformal = conformal_check(r, s);
    let (di_left, di_right) = dynkin_index(r, s);
    let mut pass = conformal && (di_left, di_right) == (ll as i64, lr as i64);
    let mut rows = Vec::new();
    for y in YoungDiagram::enumerate(r, s) {
        let dl = trace_anomaly(&young_to_weight(&y, r)?, ll)?;
        let dr = trace_anomaly(&young_to_weight(&y.transpose(), s)?, lr)?;
        let ok = delta_sum_check(&y, r, s)?;
        pass &= ok;
        rows.push(json!({
            "lambda": y.to_string(),
            "delta_left": dl.to_string(),
            "delta_right": dr.to_string(),
            "sum": (dl + dr).to_string(),
            "pass": ok,
        }));
    }
    let summary = json!({
        "r": r,
        "s": s,
        "c_left": central_charge(r, ll).to_string(),
        "c_right": central_charge(s, lr).to_string(),
        "c_total": central_charge((2 * r + 1) * (2 * s + 1) / 2, 1).to_string(),
        "conformal": conformal,
        "dynkin": [di_left, di_right],
        "deltas": rows.clone(),
        "pass": pass,
    });
    Ok(Output { json: vec![summary], csv: Some(rows), pass })
}

fn gauge_json(g: &GaugeInstance) -> Value {
    json!({
        "lambda3": g.lambda3.to_string(),
        "ab": [g.ab.0, g.ab.1],
        "ef": [g.ef.0, g.ef.1],
        "cd": [g.cd.0, g.cd.1],
        "phi3_nonzero": g.phi3_nonzero,
        "vanishes": g.vanishes,
    })
}

fn fock(args: &FockArgs) -> CliResult<Output> {
    let f = FockSpace::new(args.r, args.s)?.with_energy_cap(args.energy_cap);
    match &args.action {
        FockAction::Hwv { lambda, variant, verify } => {
            let y = YoungDiagram::new(parse_rows(lambda, ',')?)?;
            let variant: Variant = variant.parse()?;
            let pair = BranchPair::new(&y, variant, args.r, args.s)?;
            let v = f.hwv_wedge(&y, variant)?;
            let mut record = json!({
                "lambda": y.to_string(),
                "variant": variant.to_string(),
                "left": pair.left.fund(),
                "right": pair.right.fund(),
                "source": pair.source,
                "vector": v.to_string(),
                "coefficients": v.to_map(),
                "energy": v.energy2().map(|e| if e % 2 == 0 { format!("{}", e / 2) } else { format!("{e}/2") }),
            });
            let mut pass = true;
            if *verify {
                let rep = f.verify_hwv(&v, &pair.left, &pair.right)?;
                pass = rep.pass;
                record["verify"] = serde_json::to_value(&rep)?;
            }
            Ok(Output::single(record, pass))
        }
        FockAction::Gauge { max_size } => {
            let instances = f.gauge_instances(*max_size)?;
            let pass = instances.iter().all(|g| g.vanishes);
            Ok(Output::lines(instances.iter().map(gauge_json).collect(), pass))
        }
    }
}
