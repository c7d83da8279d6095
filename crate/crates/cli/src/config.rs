//! Run configuration: per-command defaults, an optional JSON file, then
//! command-line flags, each layer overriding the previous one.

use std::f64::consts::PI;
use std::path::Path;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use nonstatic_phase::{CSign, Grid, Params, StateIndex, Times};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Figure parameter sets, the measure ladder and random draws.
    #[default]
    Default,
    /// Only the static sets.
    Static,
    /// The parameters given on the command line or in the config file.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    #[value(name = "+", alias = "positive")]
    Positive,
    #[value(name = "-", alias = "negative")]
    Negative,
}

impl From<SignArg> for CSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Positive => CSign::Positive,
            SignArg::Negative => CSign::Negative,
        }
    }
}

/// One configuration layer; unset fields fall through to the layer below.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Layer {
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub c_sign: Option<CSign>,
    pub omega: Option<f64>,
    pub t0: Option<f64>,
    pub phi: Option<f64>,
    pub eps: Option<f64>,
    pub hbar: Option<f64>,
    pub n: Option<Vec<u32>>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub q_max: Option<f64>,
    pub nq: Option<usize>,
    pub format: Option<Format>,
    pub phi_list: Option<Vec<f64>>,
    pub suite: Option<Suite>,
    pub seed: Option<u64>,
    pub ladder: Option<bool>,
    pub corrupt_c: Option<bool>,
    pub flip_chirp: Option<bool>,
}

impl Layer {
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// `other` wins wherever it sets a field.
    pub fn overlay(self, other: Layer) -> Layer {
        Layer {
            a: other.a.or(self.a),
            b: other.b.or(self.b),
            c_sign: other.c_sign.or(self.c_sign),
            omega: other.omega.or(self.omega),
            t0: other.t0.or(self.t0),
            phi: other.phi.or(self.phi),
            eps: other.eps.or(self.eps),
            hbar: other.hbar.or(self.hbar),
            n: other.n.or(self.n),
            t_max: other.t_max.or(self.t_max),
            steps: other.steps.or(self.steps),
            q_max: other.q_max.or(self.q_max),
            nq: other.nq.or(self.nq),
            format: other.format.or(self.format),
            phi_list: other.phi_list.or(self.phi_list),
            suite: other.suite.or(self.suite),
            seed: other.seed.or(self.seed),
            ladder: other.ladder.or(self.ladder),
            corrupt_c: other.corrupt_c.or(self.corrupt_c),
            flip_chirp: other.flip_chirp.or(self.flip_chirp),
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    /// Sign of C = ±√(AB − 1).
    #[arg(long)]
    pub c_sign: Option<SignArg>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub t0: Option<f64>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Fock index, or a comma separated list.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    /// End of the time window.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of time steps.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Half width of the q window.
    #[arg(long)]
    pub q_max: Option<f64>,
    /// Number of q points.
    #[arg(long)]
    pub nq: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    #[arg(long)]
    pub format: Option<Format>,
    /// JSON config file; flags override it.
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// Comma separated phase angles (sweep-phi).
    #[arg(long, value_delimiter = ',')]
    pub phi_list: Option<Vec<f64>>,
    #[arg(long)]
    pub suite: Option<Suite>,
    /// Seed of the random validation draws.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Emit the measure ladder instead of a single row (measure).
    #[arg(long)]
    pub ladder: bool,
    /// Shift C off the auxiliary condition (validate; negative control).
    #[arg(long)]
    pub corrupt_c: bool,
    /// Flip the sign of the chirp exponent (validate; negative control).
    #[arg(long)]
    pub flip_chirp: bool,
}

impl Flags {
    pub fn layer(&self) -> Layer {
        let on = |b: bool| if b { Some(true) } else { None };
        Layer {
            a: self.a,
            b: self.b,
            c_sign: self.c_sign.map(Into::into),
            omega: self.omega,
            t0: self.t0,
            phi: self.phi,
            eps: self.eps,
            hbar: self.hbar,
            n: self.n.clone(),
            t_max: self.t_max,
            steps: self.steps,
            q_max: self.q_max,
            nq: self.nq,
            format: self.format,
            phi_list: self.phi_list.clone(),
            suite: self.suite,
            seed: self.seed,
            ladder: on(self.ladder),
            corrupt_c: on(self.corrupt_c),
            flip_chirp: on(self.flip_chirp),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Density,
    Phases,
    Rates,
    SweepPhi,
    Measure,
    Validate,
}

pub const DEFAULT_SEED: u64 = 20_240_607;

/// Step between adjacent angles of the default sweep.
pub const PHI_SPACING: f64 = 0.15 * PI;

fn command_defaults(cmd: Command) -> Layer {
    let figure = |a: f64, b: f64, n: u32, omega: f64| Layer {
        a: Some(a),
        b: Some(b),
        n: Some(vec![n]),
        omega: Some(omega),
        ..Layer::default()
    };
    match cmd {
        Command::Density => Layer { steps: Some(200), nq: Some(401), ..figure(2.5, 0.5, 5, 1.0) },
        Command::Phases | Command::Rates => Layer { steps: Some(800), ..figure(0.5, 2.5, 5, 0.5) },
        Command::SweepPhi => Layer {
            steps: Some(400),
            phi_list: Some((0..7).map(|k| -0.45 * PI + PHI_SPACING * k as f64).collect()),
            ..figure(2.5, 0.5, 0, 0.5)
        },
        Command::Measure => figure(1.0, 1.0, 0, 1.0),
        Command::Validate => Layer { steps: Some(600), ..figure(0.5, 2.5, 5, 0.5) },
    }
}

/// Fully resolved configuration; this is what the config echo contains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub c_sign: CSign,
    pub omega: f64,
    pub t0: f64,
    pub phi: f64,
    pub eps: f64,
    pub hbar: f64,
    pub n: Vec<u32>,
    pub t_max: f64,
    pub steps: usize,
    pub q_max: f64,
    pub nq: usize,
    pub format: Format,
    pub phi_list: Vec<f64>,
    pub suite: Suite,
    pub seed: u64,
    pub ladder: bool,
    pub corrupt_c: bool,
    pub flip_chirp: bool,
}

impl RunConfig {
    pub fn resolve(cmd: Command, file: Option<Layer>, flags: Layer) -> anyhow::Result<Self> {
        let layer = command_defaults(cmd).overlay(file.unwrap_or_default()).overlay(flags);
        let omega = layer.omega.unwrap_or(1.0);
        let t0 = layer.t0.unwrap_or(0.0);
        let n = layer.n.unwrap_or_else(|| vec![0]);
        if n.is_empty() {
            bail!("at least one Fock index is required");
        }
        let mut config = RunConfig {
            a: layer.a.unwrap_or(1.0),
            b: layer.b.unwrap_or(1.0),
            c_sign: layer.c_sign.unwrap_or_default(),
            omega,
            t0,
            phi: layer.phi.unwrap_or(0.0),
            eps: layer.eps.unwrap_or(1.0),
            hbar: layer.hbar.unwrap_or(1.0),
            n,
            // two envelope periods
            t_max: layer.t_max.unwrap_or(t0 + 2.0 * PI / omega),
            steps: layer.steps.unwrap_or(400),
            q_max: 0.0,
            nq: layer.nq.unwrap_or(401),
            format: layer.format.unwrap_or_default(),
            phi_list: layer.phi_list.unwrap_or_default(),
            suite: layer.suite.unwrap_or_default(),
            seed: layer.seed.unwrap_or(DEFAULT_SEED),
            ladder: layer.ladder.unwrap_or(false),
            corrupt_c: layer.corrupt_c.unwrap_or(false),
            flip_chirp: layer.flip_chirp.unwrap_or(false),
        };
        config.q_max = match layer.q_max {
            Some(q) => q,
            None => {
                let top = config.n.iter().copied().max().unwrap_or(0);
                Grid::for_state(&config.params()?, top)?.half_width()
            }
        };
        if config.steps < 2 {
            bail!("--steps must be at least 2, got {}", config.steps);
        }
        Ok(config)
    }

    pub fn params(&self) -> nonstatic_phase::Result<Params> {
        Params::new(self.a, self.b, self.c_sign, self.omega, self.t0, self.phi, self.eps, self.hbar)
    }

    pub fn states(&self) -> nonstatic_phase::Result<Vec<StateIndex>> {
        self.n.iter().map(|&n| StateIndex::new(n)).collect()
    }

    pub fn time_grid(&self) -> nonstatic_phase::Result<Times> {
        Times::new(self.t0, self.t_max, self.steps)
    }

    /// The echo is loadable as a config layer and reproduces this run.
    pub fn echo(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("config serializes");
        text.push('\n');
        text
    }
}
