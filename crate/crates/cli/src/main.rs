//! `combforge` — command-line front end for the comb-function toolkit.
//!
//! Every subcommand emits a single JSON document (stdout or `--out`) whose
//! keys include a `version`/`command`/`inputs` echo, so identical
//! invocations produce byte-identical output. Optional CSV plot data goes
//! to `--csv`. Exit codes: 0 success, 2 input validation error,
//! 3 numerical non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex;
use serde_json::{json, Value};

use combforge_core::combs::{cantor_comb, julia_comb, muckenhoupt_sup, GeneralComb};
use combforge_core::critpoly::{
    poly_from_critical_values, vcomb_of, CriticalSequence, SequenceKind,
};
use combforge_core::error::Error as CoreError;
use combforge_core::jacobi::{
    comb_heights, discriminant, discriminant_from_heights, spectrum, spectrum_of_discriminant,
    PeriodicJacobi,
};
use combforge_core::minimax::{comb_check, remez, weighted_remez};
use combforge_core::potential::{equilibrium_with, EquilibriumParams};
use combforge_core::realset::IntervalUnion;

#[derive(Parser)]
#[command(
    name = "combforge",
    version,
    about = "Comb functions toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    /// Write the JSON document to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write CSV plot data to this file (commands that produce it).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    /// Grid size for CSV plot data (at least 16).
    #[arg(long, global = true, default_value_t = 512)]
    grid: usize,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium measure, capacity, Green function and Green comb of a set.
    Green {
        /// Set as JSON: {"bands": [[a, b], ...]}.
        #[arg(long)]
        set: String,
        /// Evaluate the Green function at points "re" or "re,im" (repeatable).
        #[arg(long = "eval", value_name = "RE[,IM]", allow_hyphen_values = true)]
        eval: Vec<String>,
    },
    /// Monic polynomial of least deviation on a set.
    Cheby {
        /// Set as JSON: {"bands": [[a, b], ...]} (ignored with --weighted).
        #[arg(long)]
        set: Option<String>,
        /// Degree of the monic polynomial.
        #[arg(short)]
        n: usize,
        /// Weighted problem on [0, 1] with weight x^alpha (1-x)^beta.
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"], allow_negative_numbers = true)]
        weighted: Option<Vec<f64>>,
    },
    /// Polynomial with prescribed critical values.
    Critpoly {
        /// Comma-separated critical values "c1,c2,...".
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Also emit the V-comb of the constructed polynomial.
        #[arg(long)]
        vcomb: bool,
    },
    /// Discriminant and band spectrum of a periodic Jacobi matrix.
    Jacobi {
        /// Comma-separated positive off-diagonal entries "p1,p2,...".
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        /// Comma-separated diagonal entries "q1,q2,...".
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Build the discriminant from comb heights "h1,..." instead.
        #[arg(
            long = "from-heights",
            value_name = "H1,...",
            allow_hyphen_values = true
        )]
        from_heights: Option<String>,
    },
    /// Comb condition checkers (Widom sum, sector function, Muckenhoupt).
    Comb {
        /// Comb as JSON: {"base":[a,b], "slits":[[y,h],...], "plateaus":[[a,b,h],...]}.
        #[arg(long)]
        comb: Option<String>,
        /// Total slit height of the comb.
        #[arg(long)]
        widom: bool,
        /// Sector function H(x) of the comb at the given point.
        #[arg(long, value_name = "X", allow_negative_numbers = true)]
        sector: Option<f64>,
        /// Discrete Muckenhoupt sup of a positive sequence "d1,d2,...".
        #[arg(long, value_name = "D1,...", allow_hyphen_values = true)]
        muckenhoupt: Option<String>,
    },
    /// Example comb generators.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Dyadic comb of the quadratic Julia examples.
    Julia {
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 1.0)]
        h0: f64,
    },
    /// Inner approximation of the Cantor-characteristic comb.
    Cantor {
        #[arg(long)]
        depth: usize,
    },
}

/// CLI-level failure with the exit code mandated by the interface contract.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::QuadratureNonConvergence { .. }
            | CoreError::ExchangeNonConvergence { .. }
            | CoreError::NewtonNonConvergence { .. }
            | CoreError::NonRealRoots { .. }
            | CoreError::SingularSystem => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if cli.grid < 16 {
        return Err(Failure::input("grid size must be at least 16"));
    }
    let (doc, csv) = dispatch(cli)?;

    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
    text.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if let Some(path) = &cli.csv {
        let body = csv.unwrap_or_default();
        std::fs::write(path, body)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(Value, Option<String>), Failure> {
    match &cli.cmd {
        Command::Green { set, eval } => cmd_green(cli, set, eval),
        Command::Cheby { set, n, weighted } => cmd_cheby(cli, set.as_deref(), *n, weighted),
        Command::Critpoly { values, vcomb } => cmd_critpoly(values, *vcomb),
        Command::Jacobi { p, q, from_heights } => {
            cmd_jacobi(p.as_deref(), q.as_deref(), from_heights.as_deref())
        }
        Command::Comb {
            comb,
            widom,
            sector,
            muckenhoupt,
        } => cmd_comb(comb.as_deref(), *widom, *sector, muckenhoupt.as_deref()),
        Command::Gen { which } => cmd_gen(which),
    }
}

fn parse_set(text: &str) -> Result<IntervalUnion<f64>, Failure> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::input(format!("malformed set JSON: {e}")))?;
    let bands = v
        .get("bands")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::input("set JSON must contain a \"bands\" array"))?;
    let mut pairs = Vec::with_capacity(bands.len());
    for b in bands {
        let pair = b.as_array().filter(|a| a.len() == 2);
        let pair = pair.ok_or_else(|| Failure::input("each band must be a pair [a, b]"))?;
        let a = pair[0]
            .as_f64()
            .ok_or_else(|| Failure::input("band endpoints must be numbers"))?;
        let b = pair[1]
            .as_f64()
            .ok_or_else(|| Failure::input("band endpoints must be numbers"))?;
        pairs.push((a, b));
    }
    Ok(IntervalUnion::normalize(&pairs)?)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::input(format!("invalid {what} entry: {s:?}")))
        })
        .collect()
}

fn parse_point(text: &str) -> Result<Complex<f64>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        Failure::input(format!(
            "invalid point {text:?}; expected \"re\" or \"re,im\""
        ))
    };
    match parts.as_slice() {
        [re] => Ok(Complex::new(re.parse().map_err(|_| bad())?, 0.0)),
        [re, im] => Ok(Complex::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        )),
        _ => Err(bad()),
    }
}

fn equilibrium_params() -> EquilibriumParams {
    let mut params = EquilibriumParams::default();
    if let Ok(s) = std::env::var("COMBFORGE_MAX_NODES") {
        if let Ok(n) = s.parse::<usize>() {
            params.max_nodes = n.max(64);
        }
    }
    params
}

fn bands_json(set: &IntervalUnion<f64>) -> Value {
    Value::Array(set.bands().iter().map(|&(a, b)| json!([a, b])).collect())
}

fn cmd_green(
    cli: &Cli,
    set_text: &str,
    eval: &[String],
) -> Result<(Value, Option<String>), Failure> {
    let set = parse_set(set_text)?;
    let data = equilibrium_with(&set, &equilibrium_params())?;
    let comb = data.green_comb();

    let mut evaluations = Vec::new();
    for e in eval {
        let z = parse_point(e)?;
        evaluations.push(json!({ "z": [z.re, z.im], "green": data.green(z) }));
    }

    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "green",
        "inputs": { "set": { "bands": bands_json(&set) }, "eval": eval },
        "capacity": data.capacity(),
        "robin": data.robin(),
        "band_measures": data.band_measures(),
        "gap_zeros": data.gap_zeros(),
        "comb": {
            "base": [0.0, std::f64::consts::PI],
            "slits": comb.slits().iter().map(|&(x, h)| json!([x, h])).collect::<Vec<_>>(),
        },
        "evaluations": evaluations,
    });

    // CSV: equilibrium density over an interior grid of each band
    let mut csv = String::from("t,density\n");
    for &(a, b) in set.bands() {
        for i in 0..cli.grid {
            let t = a + (b - a) * (i as f64 + 0.5) / cli.grid as f64;
            let d = data.density(t)?;
            csv.push_str(&format!("{t},{d}\n"));
        }
    }
    Ok((doc, Some(csv)))
}

fn cmd_cheby(
    cli: &Cli,
    set_text: Option<&str>,
    n: usize,
    weighted: &Option<Vec<f64>>,
) -> Result<(Value, Option<String>), Failure> {
    if let Some(w) = weighted {
        let (alpha, beta) = (w[0], w[1]);
        let r = weighted_remez(n, alpha, beta)?;
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": "cheby",
            "inputs": { "n": n, "weighted": [alpha, beta] },
            "coeffs": r.poly.coeffs(),
            "L": r.deviation,
            "extreme_points": r.extreme_points,
            "comb_heights": Value::Array(Vec::new()),
        });
        let csv = plot_csv(cli.grid, 0.0, 1.0, |x| r.poly.eval(x));
        return Ok((doc, Some(csv)));
    }

    let set_text =
        set_text.ok_or_else(|| Failure::input("--set is required without --weighted"))?;
    let set = parse_set(set_text)?;
    let r = remez(&set, n)?;
    let check = comb_check(&set, &r)?;
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "cheby",
        "inputs": { "set": { "bands": bands_json(&set) }, "n": n },
        "coeffs": r.poly.coeffs(),
        "L": r.deviation,
        "extreme_points": r.extreme_points,
        "comb_heights": check.heights.iter().map(|&(x, h)| json!([x, h])).collect::<Vec<_>>(),
    });
    let csv = plot_csv(cli.grid, set.inf(), set.sup(), |x| r.poly.eval(x));
    Ok((doc, Some(csv)))
}

fn plot_csv(grid: usize, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> String {
    let mut csv = String::from("x,value\n");
    for i in 0..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        csv.push_str(&format!("{x},{}\n", f(x)));
    }
    csv
}

fn cmd_critpoly(values: &str, want_vcomb: bool) -> Result<(Value, Option<String>), Failure> {
    let c = parse_list(values, "critical value")?;
    let seq = CriticalSequence::new(&c, SequenceKind::UpDown);
    let r = poly_from_critical_values(&seq, true)?;
    let mut doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "critpoly",
        "inputs": { "values": values, "vcomb": want_vcomb },
        "coeffs": r.poly.coeffs(),
        "critical_points": r.critical_points,
        "residual": r.residual,
    });
    if want_vcomb {
        let v = vcomb_of(&r.poly)?;
        doc["vcomb"] = json!({
            "strip": [v.m as f64 * std::f64::consts::PI, v.k as f64 * std::f64::consts::PI],
            "rays": v.rays.iter().map(|&(level, tip)| json!([level, tip])).collect::<Vec<_>>(),
        });
    }
    Ok((doc, None))
}

fn cmd_jacobi(
    p: Option<&str>,
    q: Option<&str>,
    from_heights: Option<&str>,
) -> Result<(Value, Option<String>), Failure> {
    if let Some(hs) = from_heights {
        if p.is_some() || q.is_some() {
            return Err(Failure::input("--from-heights excludes --p/--q"));
        }
        let heights = parse_list(hs, "height")?;
        let delta = discriminant_from_heights(&heights)?;
        let bands = spectrum_of_discriminant(&delta)?;
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": "jacobi",
            "inputs": { "from_heights": hs },
            "discriminant": delta.coeffs(),
            "bands": bands_json(&bands),
        });
        return Ok((doc, None));
    }

    let (p, q) = match (p, q) {
        (Some(p), Some(q)) => (p, q),
        _ => return Err(Failure::input("provide --p and --q, or --from-heights")),
    };
    let pv = parse_list(p, "off-diagonal")?;
    let qv = parse_list(q, "diagonal")?;
    let jac = PeriodicJacobi::new(&qv, &pv)?;
    let delta = discriminant(&jac);
    let bands = spectrum(&jac)?;
    let heights = comb_heights(&delta);
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "jacobi",
        "inputs": { "p": p, "q": q },
        "discriminant": delta.coeffs(),
        "bands": bands_json(&bands),
        "comb_heights": heights,
    });
    Ok((doc, None))
}

fn parse_comb(text: &str) -> Result<GeneralComb<f64>, Failure> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Failure::input(format!("malformed comb JSON: {e}")))?;
    let base = v
        .get("base")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Failure::input("comb JSON must contain \"base\": [a, b]"))?;
    let a = base[0]
        .as_f64()
        .ok_or_else(|| Failure::input("base endpoints must be numbers"))?;
    let b = base[1]
        .as_f64()
        .ok_or_else(|| Failure::input("base endpoints must be numbers"))?;

    let mut slits = Vec::new();
    if let Some(arr) = v.get("slits").and_then(Value::as_array) {
        for s in arr {
            let pair = s.as_array().filter(|p| p.len() == 2);
            let pair =
                pair.ok_or_else(|| Failure::input("each slit must be [position, height]"))?;
            slits.push((
                pair[0]
                    .as_f64()
                    .ok_or_else(|| Failure::input("slit entries must be numbers"))?,
                pair[1]
                    .as_f64()
                    .ok_or_else(|| Failure::input("slit entries must be numbers"))?,
            ));
        }
    }
    let mut plateaus = Vec::new();
    if let Some(arr) = v.get("plateaus").and_then(Value::as_array) {
        for s in arr {
            let triple = s.as_array().filter(|p| p.len() == 3);
            let triple =
                triple.ok_or_else(|| Failure::input("each plateau must be [a, b, height]"))?;
            let nums: Vec<f64> = triple
                .iter()
                .map(|x| {
                    x.as_f64()
                        .ok_or_else(|| Failure::input("plateau entries must be numbers"))
                })
                .collect::<Result<_, _>>()?;
            plateaus.push((nums[0], nums[1], nums[2]));
        }
    }
    Ok(GeneralComb::new((a, b), &slits, &plateaus)?)
}

fn cmd_comb(
    comb_text: Option<&str>,
    widom: bool,
    sector: Option<f64>,
    muckenhoupt: Option<&str>,
) -> Result<(Value, Option<String>), Failure> {
    let selected =
        usize::from(widom) + usize::from(sector.is_some()) + usize::from(muckenhoupt.is_some());
    if selected != 1 {
        return Err(Failure::input(
            "choose exactly one of --widom, --sector, --muckenhoupt",
        ));
    }

    if let Some(list) = muckenhoupt {
        let d = parse_list(list, "sequence")?;
        let sup = muckenhoupt_sup(&d)?;
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": "comb",
            "inputs": { "muckenhoupt": list },
            "sup": sup,
        });
        return Ok((doc, None));
    }

    let comb_text = comb_text.ok_or_else(|| Failure::input("--comb JSON is required"))?;
    let comb = parse_comb(comb_text)?;

    if widom {
        let sum = comb.widom_sum();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": "comb",
            "inputs": { "comb": comb_text, "widom": true },
            "sum": if sum.is_finite() { json!(sum) } else { Value::Null },
            "infinite": !sum.is_finite(),
        });
        return Ok((doc, None));
    }

    let x = sector.expect("a mode is selected");
    let h = comb.sector_h(x)?;
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "comb",
        "inputs": { "comb": comb_text, "sector": x },
        "H": if h.is_finite() { json!(h) } else { Value::Null },
        "infinite": !h.is_finite(),
    });
    Ok((doc, None))
}

fn cmd_gen(which: &GenCommand) -> Result<(Value, Option<String>), Failure> {
    let (comb, inputs) = match which {
        GenCommand::Julia { depth, h0 } => (
            julia_comb(*h0, *depth)?,
            json!({ "generator": "julia", "depth": depth, "h0": h0 }),
        ),
        GenCommand::Cantor { depth } => (
            cantor_comb(*depth)?,
            json!({ "generator": "cantor", "depth": depth }),
        ),
    };
    let (a, b) = comb.base();
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": "gen",
        "inputs": inputs,
        "base": [a, b],
        "slits": comb.slits().iter().map(|&(x, h)| json!([x, h])).collect::<Vec<_>>(),
        "plateaus": comb.plateaus().iter().map(|&(pa, pb, h)| json!([pa, pb, h])).collect::<Vec<_>>(),
    });
    Ok((doc, None))
}
