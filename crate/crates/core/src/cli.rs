//! `cib` command-line front end.
//!
//! Subcommands: `bounds` (JSON report), `sweep` (CSV), `simulate` (CSV time
//! series) and `causal` (JSON verdict). Numeric flags accept SI or Planck
//! suffixes (`kg`, `m`, `s`, `C`, `mp`, `lp`, `tp`); bare numbers follow
//! `--units`. Exit codes: 0 success, 2 invalid input, 3 numerical
//! non-convergence. Errors are printed to stderr as a JSON object.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::bounds::{self, feasibility_report_for, BoundsReport, Coupling, Models, ScenarioParams, Tagged};
use crate::causal::{self, Boundary, Schedule};
use crate::dynamics::{self, OracleConfig};
use crate::error::Error;
use crate::units::{self, parse_with_planck, Dimension, UnitSystem};

pub const TOOL: &str = "cib";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cib", version, about = "Causality and timing bounds for mass and charge interferometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form bounds and feasibility flags for one scenario (JSON).
    Bounds(BoundsArgs),
    /// Bounds over a grid of one parameter (CSV).
    Sweep(SweepArgs),
    /// Time series of Bob's two conditional probe states (CSV).
    Simulate(SimulateArgs),
    /// Light-cone timeline and no-signalling verdicts (JSON).
    Causal(CausalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum UnitsArg {
    Si,
    Planck,
}

impl From<UnitsArg> for UnitSystem {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Si => UnitSystem::Si,
            UnitsArg::Planck => UnitSystem::Planck,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CouplingArg {
    Gravity,
    Coulomb,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Displacement,
    Phase,
    Both,
}

impl From<ModelArg> for Models {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Displacement => Models::Displacement,
            ModelArg::Phase => Models::Phase,
            ModelArg::Both => Models::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SimModelArg {
    Displacement,
    Phase,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Mass of Alice's particle.
    #[arg(long = "m-a", allow_hyphen_values = true)]
    m_a: Option<String>,
    /// Mass of Bob's probe [default: 1mp].
    #[arg(long = "m-b", allow_hyphen_values = true)]
    m_b: Option<String>,
    /// Path separation.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    /// Alice–Bob distance.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, value_enum, default_value = "gravity")]
    coupling: CouplingArg,
    /// Alice's charge (coulomb coupling).
    #[arg(long = "q-a", allow_hyphen_values = true)]
    q_a: Option<String>,
    /// Bob's charge (coulomb coupling).
    #[arg(long = "q-b", allow_hyphen_values = true)]
    q_b: Option<String>,
    /// Minimum trap confinement [default: 1lp for gravity].
    #[arg(long = "dx-min", allow_hyphen_values = true)]
    dx_min: Option<String>,
    /// Threshold for every "much greater than" comparison.
    #[arg(long = "r-over-d-min", default_value = "100", allow_hyphen_values = true)]
    r_over_d_min: f64,
    /// Multiplier on the displacement detectability threshold.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    slack: f64,
    /// Interpretation of bare numbers.
    #[arg(long, value_enum, default_value = "si")]
    units: UnitsArg,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value = "both")]
    model: ModelArg,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value = "both")]
    model: ModelArg,
    /// Parameter to sweep: m_A, m_B, d, R or eta.
    #[arg(long)]
    sweep: String,
    #[arg(long, allow_hyphen_values = true)]
    from: String,
    #[arg(long, allow_hyphen_values = true)]
    to: String,
    #[arg(long)]
    points: usize,
    /// Logarithmic spacing.
    #[arg(long)]
    log: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long, value_enum)]
    model: SimModelArg,
    /// Final time, or `auto`: the oracle's orthogonalization time (displacement)
    /// or the exact phase-model measurement time (phase).
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: String,
    #[arg(long)]
    steps: usize,
    /// Initial trap width.
    #[arg(long, default_value = "1lp", allow_hyphen_values = true)]
    sigma0: String,
    /// Near-orthogonality threshold used by `--t-max auto`.
    #[arg(long, default_value = "0.01", allow_hyphen_values = true)]
    eps: f64,
    /// Include the tidal gradient of each branch.
    #[arg(long)]
    tidal: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct CausalArgs {
    #[arg(long = "t-a", allow_hyphen_values = true)]
    t_a: String,
    #[arg(long = "t-b", allow_hyphen_values = true)]
    t_b: String,
    #[arg(long, allow_hyphen_values = true)]
    r: String,
    /// Count exact equality as consistent.
    #[arg(long = "non-strict")]
    non_strict: bool,
    #[arg(long, value_enum, default_value = "si")]
    units: UnitsArg,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// Result of one invocation: exit code and the exact bytes for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence(_) => Failure { code: EXIT_NO_CONVERGENCE, kind: "no_convergence", message: e.to_string() },
            _ => Failure { code: EXIT_INVALID, kind: "invalid_input", message: e.to_string() },
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INVALID, kind: "invalid_input", message: message.into() }
}

/// Run the CLI on `args` (including the program name) without touching the
/// process streams.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => failure_outcome(invalid(e.kind().to_string() + ": " + first_line(&e.to_string()))),
            };
        }
    };
    let (result, out) = match cli.command {
        Command::Bounds(a) => (run_bounds(&a), a.out),
        Command::Sweep(a) => (run_sweep(&a), a.out),
        Command::Simulate(a) => (run_simulate(&a), a.out),
        Command::Causal(a) => (run_causal(&a), a.out),
    };
    match result {
        Ok(text) => match out {
            Some(path) => match std::fs::write(&path, &text) {
                Ok(()) => Outcome { code: EXIT_OK, stdout: String::new(), stderr: String::new() },
                Err(e) => failure_outcome(invalid(format!("cannot write {}: {e}", path.display()))),
            },
            None => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
        },
        Err(f) => failure_outcome(f),
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("").trim_start_matches("error: ")
}

fn failure_outcome(f: Failure) -> Outcome {
    let obj = json!({ "error": { "code": f.code, "kind": f.kind, "message": f.message } });
    Outcome { code: f.code, stdout: String::new(), stderr: obj.to_string() + "\n" }
}

/// One parsed numeric flag with its echo.
struct Parsed {
    flag: &'static str,
    input: String,
    dim: Dimension,
    si: f64,
    planck: f64,
}

impl Parsed {
    fn echo(&self) -> Value {
        json!({
            "flag": self.flag,
            "input": self.input,
            "si": self.si,
            "si_unit": self.dim.si_symbol(),
            "planck": self.planck,
        })
    }
}

fn parse_flag(flag: &'static str, text: &str, dim: Dimension, system: UnitSystem) -> Result<Parsed, Failure> {
    let (q, planck) = parse_with_planck(text, dim, system).map_err(|e| invalid(format!("{flag}: {e}")))?;
    Ok(Parsed { flag, input: text.to_string(), dim, si: q.value(), planck })
}

fn dimensionless(flag: &'static str, v: f64) -> Parsed {
    Parsed { flag, input: format!("{v}"), dim: Dimension::DIMENSIONLESS, si: v, planck: v }
}

/// Scenario assembled from flags, with the echo of every parsed value.
struct Scenario {
    params: ScenarioParams,
    echo: Vec<Parsed>,
    system: UnitSystem,
    coupling_name: &'static str,
}

impl Scenario {
    fn input_json(&self, extra: Map<String, Value>) -> Value {
        let mut m = Map::new();
        m.insert("units".into(), json!(system_name(self.system)));
        m.insert("coupling".into(), json!(self.coupling_name));
        for (k, v) in extra {
            m.insert(k, v);
        }
        m.insert("parameters".into(), Value::Array(self.echo.iter().map(Parsed::echo).collect()));
        Value::Object(m)
    }
}

fn system_name(s: UnitSystem) -> &'static str {
    match s {
        UnitSystem::Si => "si",
        UnitSystem::Planck => "planck",
    }
}

/// Build the scenario; `skip` names a flag the caller will supply itself.
fn scenario_from(a: &ScenarioArgs, skip: &[&str]) -> Result<Scenario, Failure> {
    let system: UnitSystem = a.units.into();
    let mut echo = Vec::new();
    let mut need = |flag: &'static str, value: &Option<String>, dim: Dimension, default: Option<&str>| -> Result<f64, Failure> {
        if skip.contains(&flag) {
            return Ok(1.0);
        }
        let text = match (value, default) {
            (Some(t), _) => t.clone(),
            (None, Some(d)) => d.to_string(),
            (None, None) => return Err(invalid(format!("missing required flag {flag}"))),
        };
        let p = parse_flag(flag, &text, dim, system)?;
        let v = p.planck;
        echo.push(p);
        Ok(v)
    };
    let m_a = need("--m-a", &a.m_a, Dimension::MASS, None)?;
    let m_b = need("--m-b", &a.m_b, Dimension::MASS, Some("1mp"))?;
    let d = need("--d", &a.d, Dimension::LENGTH, None)?;
    let r = need("--r", &a.r, Dimension::LENGTH, None)?;
    let (coupling, coupling_name) = match a.coupling {
        CouplingArg::Gravity => (Coupling::Gravity, "gravity"),
        CouplingArg::Coulomb => {
            let q_a = need("--q-a", &a.q_a, Dimension::CHARGE, None)?;
            let q_b = need("--q-b", &a.q_b, Dimension::CHARGE, None)?;
            (Coupling::Coulomb { q_a, q_b }, "coulomb")
        }
    };
    let delta_x_min = match &a.dx_min {
        Some(_) => Some(need("--dx-min", &a.dx_min, Dimension::LENGTH, None)?),
        None => None,
    };
    echo.push(dimensionless("--r-over-d-min", a.r_over_d_min));
    echo.push(dimensionless("--slack", a.slack));
    let params = ScenarioParams {
        m_a,
        m_b,
        d,
        r,
        coupling,
        delta_x_min,
        r_over_d_min: a.r_over_d_min,
        slack: a.slack,
        override_validity: false,
    };
    Ok(Scenario { params, echo, system, coupling_name })
}

fn check_models(p: &ScenarioParams, models: Models) -> Result<(), Failure> {
    if models.displacement() && matches!(p.coupling, Coupling::Coulomb { .. }) && p.delta_x_min.is_none() {
        return Err(invalid("coulomb coupling with the displacement model requires --dx-min"));
    }
    Ok(())
}

/// Dimension of each report field.
fn field_dimension(name: &str) -> Dimension {
    match name {
        "r_max_displacement" | "r_max_phase" => Dimension::LENGTH,
        n if n.starts_with("m_") || n.starts_with("mass_") || n.starts_with("coupling") => Dimension::DIMENSIONLESS,
        _ => Dimension::TIME,
    }
}

fn planck_unit_name(dim: Dimension) -> &'static str {
    if dim == Dimension::TIME {
        "t_P"
    } else if dim == Dimension::LENGTH {
        "l_P"
    } else {
        "1"
    }
}

fn tagged_json(name: &str, t: &Tagged) -> Value {
    let dim = field_dimension(name);
    json!({
        "planck": t.value,
        "planck_unit": planck_unit_name(dim),
        "si": t.value * units::planck_scale(dim),
        "si_unit": dim.si_symbol(),
        "provenance": t.provenance,
    })
}

fn report_json(rep: &BoundsReport) -> Value {
    let tagged: Vec<(&str, Option<&Tagged>)> = vec![
        ("one_way_ta_tb_min", Some(&rep.one_way_ta_tb_min)),
        ("round_trip_ta_tb_min", Some(&rep.round_trip_ta_tb_min)),
        ("tb_displacement", rep.tb_displacement.as_ref()),
        ("ta_min_round_trip", rep.ta_min_round_trip.as_ref()),
        ("ta_min_one_way", rep.ta_min_one_way.as_ref()),
        ("r_max_displacement", rep.r_max_displacement.as_ref()),
        ("tb_phase_exact", rep.tb_phase_exact.as_ref()),
        ("tb_phase_approx", rep.tb_phase_approx.as_ref()),
        ("r_max_phase", rep.r_max_phase.as_ref()),
        ("m_a_over_mp", Some(&rep.m_a_over_mp)),
        ("m_b_over_mp", Some(&rep.m_b_over_mp)),
        ("mass_product_over_mp2", Some(&rep.mass_product_over_mp2)),
        ("coupling_strength", Some(&rep.coupling_strength)),
    ];
    let mut m = Map::new();
    for (name, t) in tagged {
        if let Some(t) = t {
            m.insert(name.into(), tagged_json(name, t));
        }
    }
    let mut flags = Map::new();
    for (name, f) in rep.flag_fields() {
        if let Some(f) = f {
            flags.insert(name.into(), json!(f));
        }
    }
    m.insert("flags".into(), Value::Object(flags));
    Value::Object(m)
}

fn envelope(command: &str, input: Value, results: Value) -> String {
    let v = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "input": input,
        "results": results,
    });
    serde_json::to_string_pretty(&v).expect("JSON values always serialize") + "\n"
}

fn model_name(m: Models) -> &'static str {
    match m {
        Models::Displacement => "displacement",
        Models::Phase => "phase",
        Models::Both => "both",
    }
}

fn run_bounds(a: &BoundsArgs) -> Result<String, Failure> {
    let sc = scenario_from(&a.scenario, &[])?;
    let models: Models = a.model.into();
    sc.params.validate()?;
    check_models(&sc.params, models)?;
    let rep = feasibility_report_for(&sc.params, models)?;
    let mut extra = Map::new();
    extra.insert("model".into(), json!(model_name(models)));
    Ok(envelope("bounds", sc.input_json(extra), report_json(&rep)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepParam {
    MassA,
    MassB,
    Separation,
    Distance,
    Eta,
}

impl SweepParam {
    fn parse(s: &str) -> Result<Self, Failure> {
        match s {
            "m_A" | "m_a" | "m-a" => Ok(SweepParam::MassA),
            "m_B" | "m_b" | "m-b" => Ok(SweepParam::MassB),
            "d" => Ok(SweepParam::Separation),
            "R" | "r" => Ok(SweepParam::Distance),
            "eta" => Ok(SweepParam::Eta),
            other => Err(invalid(format!("unknown sweep parameter '{other}' (expected m_A, m_B, d, R or eta)"))),
        }
    }

    fn column(self) -> &'static str {
        match self {
            SweepParam::MassA => "m_a",
            SweepParam::MassB => "m_b",
            SweepParam::Separation => "d",
            SweepParam::Distance => "r",
            SweepParam::Eta => "eta",
        }
    }

    fn flag(self) -> &'static str {
        match self {
            SweepParam::MassA => "--m-a",
            SweepParam::MassB => "--m-b",
            SweepParam::Separation => "--d",
            SweepParam::Distance | SweepParam::Eta => "--r",
        }
    }

    fn dimension(self) -> Dimension {
        match self {
            SweepParam::MassA | SweepParam::MassB => Dimension::MASS,
            SweepParam::Separation | SweepParam::Distance => Dimension::LENGTH,
            SweepParam::Eta => Dimension::DIMENSIONLESS,
        }
    }
}

/// Grid from `from` to `to` with both endpoints reproduced exactly.
pub fn sweep_grid(from: f64, to: f64, points: usize, log: bool) -> crate::Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::invalid("sweep needs at least 2 points"));
    }
    if !(from.is_finite() && to.is_finite()) || from >= to {
        return Err(Error::invalid("sweep range must satisfy from < to"));
    }
    if log && from <= 0.0 {
        return Err(Error::invalid("log sweep requires from > 0"));
    }
    let n = points - 1;
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                from
            } else if i == n {
                to
            } else {
                let frac = i as f64 / n as f64;
                if log {
                    (from.ln() + (to.ln() - from.ln()) * frac).exp()
                } else {
                    from + (to - from) * frac
                }
            }
        })
        .collect())
}

/// CSV number format: 17 significant digits in scientific notation.
pub fn csv_number(x: f64) -> String {
    format!("{x:.16e}")
}

fn run_sweep(a: &SweepArgs) -> Result<String, Failure> {
    let param = SweepParam::parse(&a.sweep)?;
    let sc = scenario_from(&a.scenario, &[param.flag()])?;
    let models: Models = a.model.into();
    check_models(&sc.params, models)?;
    let (from, to) = if param == SweepParam::Eta {
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| invalid(format!("cannot parse eta bound '{s}'")));
        (parse(&a.from)?, parse(&a.to)?)
    } else {
        (
            parse_flag("--from", &a.from, param.dimension(), sc.system)?.planck,
            parse_flag("--to", &a.to, param.dimension(), sc.system)?.planck,
        )
    };
    if param == SweepParam::Eta && !(from > 0.0 && to < 1.0) {
        return Err(invalid("eta sweep range must lie inside (0, 1)"));
    }
    let grid = sweep_grid(from, to, a.points, a.log)?;

    let rows: Vec<Result<String, Failure>> = grid
        .par_iter()
        .map(|&x| sweep_row(&sc.params, param, models, x))
        .collect();

    let mut out = String::new();
    out.push_str(&sweep_header(param));
    for row in rows {
        out.push_str(&row?);
    }
    Ok(out)
}

fn sweep_header(param: SweepParam) -> String {
    let blank = BoundsReport::header_template();
    let mut cols = vec![param.column().to_string()];
    if param == SweepParam::Eta {
        cols.extend(["r_eta", "tb_eta", "ta_lower_bound"].map(String::from));
    }
    cols.extend(blank.into_iter().map(String::from));
    cols.join(",") + "\n"
}

fn sweep_row(base: &ScenarioParams, param: SweepParam, models: Models, x: f64) -> Result<String, Failure> {
    let mut p = *base;
    let mut cells = vec![csv_number(x)];
    match param {
        SweepParam::MassA => p.m_a = x,
        SweepParam::MassB => p.m_b = x,
        SweepParam::Separation => p.d = x,
        SweepParam::Distance => p.r = x,
        SweepParam::Eta => {
            let pt = bounds::eta_point(&ScenarioParams { r: 1.0, ..p }, x)?;
            p.r = pt.r;
            cells.extend([pt.r, pt.tb, pt.ta_lower_bound].map(csv_number));
        }
    }
    let rep = feasibility_report_for(&p, models)?;
    cells.extend(rep.numeric_fields().into_iter().map(|(_, v)| v.map(csv_number).unwrap_or_default()));
    cells.extend(rep.flag_fields().into_iter().map(|(_, f)| f.map(|b| b.to_string()).unwrap_or_default()));
    Ok(cells.join(",") + "\n")
}

impl BoundsReport {
    fn header_template() -> Vec<&'static str> {
        let rep = feasibility_report_for(&ScenarioParams::gravity(1.0, 1.0, 1.0, 1.0), Models::Both)
            .expect("unit scenario is valid");
        rep.numeric_fields()
            .into_iter()
            .map(|(n, _)| n)
            .chain(rep.flag_fields().into_iter().map(|(n, _)| n))
            .collect()
    }
}

fn run_simulate(a: &SimulateArgs) -> Result<String, Failure> {
    let sc = scenario_from(&a.scenario, &[])?;
    let p = sc.params;
    p.validate()?;
    let sigma0 = parse_flag("--sigma0", &a.sigma0, Dimension::LENGTH, sc.system)?.planck;
    let cfg = OracleConfig { sigma0, eps: a.eps, tidal: a.tidal };
    let t_max = if a.t_max.trim() == "auto" {
        match a.model {
            SimModelArg::Displacement => dynamics::orthogonalization_time_with(&p, &cfg)?,
            SimModelArg::Phase => bounds::tb_phase(&p, bounds::Expansion::Exact)?,
        }
    } else {
        parse_flag("--t-max", &a.t_max, Dimension::TIME, sc.system)?.planck
    };
    let mut out = String::new();
    match a.model {
        SimModelArg::Displacement => {
            out.push_str("t,mean_x_L,mean_x_R,sigma_x,overlap_magnitude\n");
            for s in dynamics::displacement_series(&p, &cfg, t_max, a.steps)? {
                let cells = [s.t, s.mean_x_l, s.mean_x_r, s.sigma_x, s.overlap_magnitude].map(csv_number);
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        SimModelArg::Phase => {
            out.push_str("t,delta_phi,overlap_magnitude\n");
            for s in dynamics::phase_series(&p, t_max, a.steps)? {
                let cells = [s.t, s.delta_phi, s.overlap_magnitude].map(csv_number);
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
    }
    Ok(out)
}

fn run_causal(a: &CausalArgs) -> Result<String, Failure> {
    let system: UnitSystem = a.units.into();
    let t_a = parse_flag("--t-a", &a.t_a, Dimension::TIME, system)?;
    let t_b = parse_flag("--t-b", &a.t_b, Dimension::TIME, system)?;
    let r = parse_flag("--r", &a.r, Dimension::LENGTH, system)?;
    let schedule = Schedule::new(r.planck, t_a.planck, t_b.planck)?;
    let boundary = if a.non_strict { Boundary::NonStrict } else { Boundary::Strict };
    let timeline = causal::build_timeline(&schedule);
    let one_way = causal::check_one_way(&schedule, boundary);
    let round_trip = causal::check_no_signalling_with(&schedule, boundary);

    let (tp, lp) = (units::planck_time_si(), units::planck_length_si());
    let events: Vec<Value> = timeline
        .events
        .iter()
        .map(|e| json!({ "label": e.label, "t": e.t, "x": e.x, "t_si": e.t * tp, "x_si": e.x * lp }))
        .collect();
    let decide = timeline.event(causal::B_DECIDE).expect("timeline has B_decide");
    let done = timeline.event(causal::A_RECOMBINE_DONE).expect("timeline has A_recombine_done");
    let (class, s2) = causal::interval_class(decide, done);

    let verdict = |v: &causal::CausalVerdict, provenance: &str| {
        json!({
            "ok": v.no_signalling_ok,
            "margin": v.margin,
            "margin_si": v.margin * tp,
            "explanation": v.explanation,
            "provenance": provenance,
        })
    };
    let input = json!({
        "units": system_name(system),
        "boundary": if a.non_strict { "non_strict" } else { "strict" },
        "parameters": [t_a.echo(), t_b.echo(), r.echo()],
    });
    let results = json!({
        "events": events,
        "one_way": verdict(&one_way, bounds::provenance::ONE_WAY),
        "round_trip": verdict(&round_trip, bounds::provenance::ROUND_TRIP),
        "margin": round_trip.margin,
        "decision_to_recombination": {
            "class": class,
            "s2": s2,
            "decision_precedes_recombination": causal::causally_precedes(decide, done),
        },
    });
    Ok(envelope("causal", input, results))
}
