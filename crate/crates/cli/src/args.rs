use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morse_scatter::potential::{reduce, MorseParams, AMU};
use morse_scatter::{DimensionlessParams, Precision};

#[derive(Parser, Debug)]
#[command(
    name = "morse-scatter",
    version,
    about = "Bound states and s-wave scattering observables for the Morse potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the potential V(r)
    Potential(PotentialArgs),
    /// Bound-state spectra under both boundary conditions
    Bound(BoundArgs),
    /// Phase shifts along a k sweep
    Phase(PhaseArgs),
    /// Scattering length and effective range
    Observables(ObservablesArgs),
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Dimensionless depth d = sqrt(2 mu D) / (hbar beta)
    #[arg(long)]
    pub d: Option<f64>,

    /// Dimensionless equilibrium position beta * r0
    #[arg(long = "beta-r0")]
    pub beta_r0: Option<f64>,

    /// Built-in parameter set
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Well depth in meV (physical input mode; needs --beta, --r0, --mu-amu)
    #[arg(long = "depth-mev")]
    pub depth_mev: Option<f64>,

    /// Width parameter beta in 1/m (physical input mode)
    #[arg(long)]
    pub beta: Option<f64>,

    /// Equilibrium position r0 in m (physical input mode)
    #[arg(long)]
    pub r0: Option<f64>,

    /// Reduced mass in atomic mass units (physical input mode)
    #[arg(long = "mu-amu")]
    pub mu_amu: Option<f64>,

    /// Sweep specification VAR:START:STOP:N[:log]
    #[arg(long)]
    pub sweep: Option<SweepSpec>,

    /// Which boundary condition(s) to compute
    #[arg(long, value_enum, default_value_t = ConditionArg::Both)]
    pub condition: ConditionArg,

    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweep points (default: all cores)
    #[arg(long)]
    pub jobs: Option<usize>,

    /// Relative tolerance for Kummer function evaluations
    #[arg(long = "tol-kummer")]
    pub tol_kummer: Option<f64>,

    /// Bisection width target for bound-state roots
    #[arg(long = "tol-root")]
    pub tol_root: Option<f64>,

    /// Ladder consistency tolerance for the low-k fit
    #[arg(long = "tol-fit")]
    pub tol_fit: Option<f64>,

    /// Absolute tail bound for the phase-shift series
    #[arg(long = "tol-tail")]
    pub tol_tail: Option<f64>,

    /// Numerov step in beta*r units
    #[arg(long = "oracle-step")]
    pub oracle_step: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PotentialArgs {
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Reproduce the level-shift figure: sweep d for several beta*r0 values
    #[arg(long)]
    pub figure2: bool,

    /// beta*r0 values for --figure2
    #[arg(long = "beta-r0-list", value_delimiter = ',', default_value = "1,2,4")]
    pub beta_r0_list: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Phase-shift columns to emit
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "series,gamma,phys",
        value_enum
    )]
    pub columns: Vec<PhaseColumn>,
}

#[derive(Args, Debug)]
pub struct ObservablesArgs {
    #[command(flatten)]
    pub common: CommonArgs,

    /// Auxiliary (a, re) over the standard d sweep (2000 points, beta*r0 = 4.15)
    #[arg(long)]
    pub figure1: bool,

    /// Auxiliary and physical observables over a 200-point d sweep
    #[arg(long)]
    pub figure3: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Two 6Li atoms in the 40 meV triplet well, beta*r0 = 4.15
    Li6,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    Aux,
    Phys,
    Both,
}

impl std::fmt::Display for ConditionArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConditionArg::Aux => write!(f, "aux"),
            ConditionArg::Phys => write!(f, "phys"),
            ConditionArg::Both => write!(f, "both"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PhaseColumn {
    Series,
    Gamma,
    Phys,
    OracleAux,
    OraclePhys,
}

/// Parsed `VAR:START:STOP:N[:log]`.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub var: String,
    pub start: f64,
    pub stop: f64,
    pub n: usize,
    pub log: bool,
}

impl SweepSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        let n = self.n;
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                } else {
                    self.start + t * (self.stop - self.start)
                }
            })
            .collect()
    }

    pub fn echo(&self) -> String {
        format!(
            "{}:{}:{}:{}{}",
            self.var,
            self.start,
            self.stop,
            self.n,
            if self.log { ":log" } else { "" }
        )
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 && parts.len() != 5 {
            return Err(format!("expected VAR:START:STOP:N[:log], got '{s}'"));
        }
        let log = match parts.get(4) {
            None => false,
            Some(&"log") => true,
            Some(other) => return Err(format!("unknown sweep suffix '{other}'")),
        };
        let start: f64 = parts[1].parse().map_err(|e| format!("bad START: {e}"))?;
        let stop: f64 = parts[2].parse().map_err(|e| format!("bad STOP: {e}"))?;
        let n: usize = parts[3].parse().map_err(|e| format!("bad N: {e}"))?;
        if n < 2 {
            return Err("sweep needs at least 2 points".into());
        }
        if !(stop > start) {
            return Err("sweep range must be ordered and non-empty".into());
        }
        if log && !(start > 0.0) {
            return Err("log sweeps need a positive start".into());
        }
        Ok(SweepSpec { var: parts[0].to_ascii_lowercase(), start, stop, n, log })
    }
}

/// Mass of 6Li in atomic mass units.
const LI6_MASS_AMU: f64 = 6.0151228874;

/// Preset equilibrium distance for the li6 triplet well, m.
const LI6_R0: f64 = 4.17e-10;

/// The parameter set a command runs with: the dimensionless pair (possibly
/// with one member swept) plus the physical parameters when known.
pub struct ResolvedParams {
    pub d: Option<f64>,
    pub beta_r0: Option<f64>,
    pub physical: Option<MorseParams>,
    pub preset_echo: Option<String>,
}

impl ResolvedParams {
    pub fn params_at(&self, d: f64, beta_r0: f64) -> Result<DimensionlessParams, String> {
        DimensionlessParams::new(d, beta_r0).map_err(|e| e.to_string())
    }

    pub fn fixed(&self) -> Result<DimensionlessParams, String> {
        match (self.d, self.beta_r0) {
            (Some(d), Some(b)) => self.params_at(d, b),
            _ => Err("d and beta-r0 must both be fixed here".into()),
        }
    }
}

pub fn resolve_params(common: &CommonArgs) -> Result<ResolvedParams, String> {
    let mut d = common.d;
    let mut beta_r0 = common.beta_r0;
    let mut physical = None;
    let mut preset_echo = None;

    if let Some(Preset::Li6) = common.preset {
        let beta = 4.15 / LI6_R0;
        let p = MorseParams::from_mev(40.0, beta, LI6_R0, 0.5 * LI6_MASS_AMU * AMU)
            .map_err(|e| e.to_string())?;
        let dp = reduce(&p).map_err(|e| e.to_string())?;
        d = d.or(Some(dp.d));
        beta_r0 = beta_r0.or(Some(dp.beta_r0));
        preset_echo = Some(format!(
            "li6 (D = 40 meV, beta*r0 = 4.15, r0 = {LI6_R0:e} m, mu = {} amu)",
            0.5 * LI6_MASS_AMU
        ));
        physical = Some(p);
    }

    let phys_flags =
        [common.depth_mev.is_some(), common.beta.is_some(), common.r0.is_some(), common.mu_amu.is_some()];
    if phys_flags.iter().any(|&f| f) {
        if !phys_flags.iter().all(|&f| f) {
            return Err("physical input mode needs all of --depth-mev, --beta, --r0, --mu-amu".into());
        }
        let p = MorseParams::from_mev(
            common.depth_mev.unwrap(),
            common.beta.unwrap(),
            common.r0.unwrap(),
            common.mu_amu.unwrap() * AMU,
        )
        .map_err(|e| e.to_string())?;
        let dp = reduce(&p).map_err(|e| e.to_string())?;
        d = Some(dp.d);
        beta_r0 = Some(dp.beta_r0);
        physical = Some(p);
    }

    Ok(ResolvedParams { d, beta_r0, physical, preset_echo })
}

pub fn build_precision(common: &CommonArgs) -> Result<Precision, String> {
    let mut prec = Precision::default();
    if let Some(t) = common.tol_kummer {
        if !(t > 0.0) {
            return Err("--tol-kummer must be positive".into());
        }
        prec.kummer_rel_tol = t;
    }
    if let Some(t) = common.tol_root {
        if !(t > 0.0) {
            return Err("--tol-root must be positive".into());
        }
        prec.root_b_tol = t;
    }
    if let Some(t) = common.tol_fit {
        if !(t > 0.0) {
            return Err("--tol-fit must be positive".into());
        }
        prec.fit_rel_tol = t;
    }
    if let Some(t) = common.tol_tail {
        if !(t > 0.0) {
            return Err("--tol-tail must be positive".into());
        }
        prec.series_tail_tol = t;
    }
    if let Some(t) = common.oracle_step {
        if !(t > 0.0 && t <= 0.01) {
            return Err("--oracle-step must be in (0, 0.01]".into());
        }
        prec.oracle_step = t;
    }
    Ok(prec)
}
