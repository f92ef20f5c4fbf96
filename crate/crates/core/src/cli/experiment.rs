//! `experiment` and `game`: Monte Carlo runs written as JSON summaries.

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use super::config::{load_config, overlay, CliError};
use super::output::{write_json, RunManifest};
use crate::interferometry::DetectorModel;
use crate::montecarlo::{
    run_game, run_phase_experiment_with, ActionMix, Execution, ExperimentConfig, ExperimentSummary, GameConfig,
    GameSummary, ShiftSign, SourceMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeName {
    Tie,
    Standard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// κ = 3, p1 = ½, k_max·δL = 0.01, 90 000 atoms, 500 repetitions.
    Tie,
    /// D = 0.9, k·δL = 0.01, 52 632 atoms, 200 repetitions.
    Standard,
}

fn source_mode(mode: ModeName, kappa: f64, p1: f64, distinguishability: f64) -> SourceMode {
    match mode {
        ModeName::Tie => SourceMode::Tie { kappa, p1 },
        ModeName::Standard => SourceMode::Standard { distinguishability },
    }
}

fn alpha_distinguishability(alpha: Option<f64>) -> Result<Option<f64>, CliError> {
    alpha
        .map(|a| Ok(DetectorModel::from_alpha(a)?.distinguishability()))
        .transpose()
}

#[derive(Debug, Clone, Default, Args)]
pub struct ExperimentArgs {
    /// JSON config file or run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Start from a named parameter set; later flags still override it.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeName>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    /// Which-way detector distinguishability (standard mode).
    #[arg(long)]
    pub distinguishability: Option<f64>,
    /// Detector angle α; sets the distinguishability to |cos α|.
    #[arg(long, conflicts_with = "distinguishability")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub kmax_delta_l: Option<f64>,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long)]
    pub n_in: Option<u64>,
    #[arg(long)]
    pub k1_l0: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub repetitions: Option<u32>,
    /// Run repetitions on one thread.
    #[arg(long)]
    pub serial: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for ShiftSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => ShiftSign::Plus,
            SignArg::Minus => ShiftSign::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentParams {
    pub mode: ModeName,
    pub kappa: f64,
    pub p1: f64,
    pub distinguishability: f64,
    pub kmax_delta_l: f64,
    pub sign: ShiftSign,
    pub n_in: u64,
    pub k1_l0: f64,
    pub seed: u64,
    pub repetitions: u32,
    pub serial: bool,
    pub out: PathBuf,
}

impl ExperimentParams {
    pub fn preset(preset: Preset) -> Self {
        let base = Self {
            mode: ModeName::Tie,
            kappa: 3.0,
            p1: 0.5,
            distinguishability: 0.9,
            kmax_delta_l: 0.01,
            sign: ShiftSign::Plus,
            n_in: 90_000,
            k1_l0: FRAC_PI_2,
            seed: 1,
            repetitions: 500,
            serial: false,
            out: PathBuf::from("experiment.json"),
        };
        match preset {
            Preset::Tie => base,
            Preset::Standard => Self {
                mode: ModeName::Standard,
                n_in: 52_632,
                repetitions: 200,
                ..base
            },
        }
    }

    pub fn experiment_config(&self) -> ExperimentConfig {
        ExperimentConfig {
            mode: source_mode(self.mode, self.kappa, self.p1, self.distinguishability),
            kmax_delta_l: self.kmax_delta_l,
            sign: self.sign,
            n_in: self.n_in,
            k1_l0: self.k1_l0,
            seed: self.seed,
            repetitions: self.repetitions,
        }
    }
}

impl Default for ExperimentParams {
    fn default() -> Self {
        Self::preset(Preset::Tie)
    }
}

impl ExperimentArgs {
    pub fn resolve(&self) -> Result<ExperimentParams, CliError> {
        let mut params = match (self.preset, &self.config) {
            (Some(_), Some(_)) => return Err(CliError::Config("--preset and --config are mutually exclusive".into())),
            (Some(p), None) => ExperimentParams::preset(p),
            (None, Some(path)) => load_config(path, "experiment")?,
            (None, None) => ExperimentParams::default(),
        };
        let sign = self.sign.map(ShiftSign::from);
        let distinguishability = alpha_distinguishability(self.alpha)?.or(self.distinguishability);
        overlay!(params, self; mode, kappa, p1, kmax_delta_l, n_in, k1_l0, seed, repetitions, out);
        if self.serial {
            params.serial = true;
        }
        if let Some(s) = sign {
            params.sign = s;
        }
        if let Some(d) = distinguishability {
            params.distinguishability = d;
        }
        Ok(params)
    }
}

/// Analytic predictions next to their simulated counterparts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub predicted_wrong: f64,
    pub empirical_wrong_mean: f64,
    pub empirical_wrong_std: f64,
    pub wrong_paths_bound: Option<f64>,
    pub predicted_p_plus: f64,
    pub empirical_plus_fraction: f64,
    pub n_in: u64,
    pub required_atoms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    #[serde(flatten)]
    pub summary: ExperimentSummary,
    pub comparison: Comparison,
}

pub fn experiment_report(params: &ExperimentParams) -> crate::Result<ExperimentReport> {
    let execution = if params.serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let summary = run_phase_experiment_with(&params.experiment_config(), execution)?;
    let p = summary.predictions;
    let comparison = Comparison {
        predicted_wrong: p.expected_wrong_paths,
        empirical_wrong_mean: summary.mean_wrong_paths,
        empirical_wrong_std: summary.std_wrong_paths,
        wrong_paths_bound: p.wrong_paths_bound,
        predicted_p_plus: p.p_plus,
        empirical_plus_fraction: summary.mean_plus_fraction,
        n_in: params.n_in,
        required_atoms: p.required_atoms,
    };
    Ok(ExperimentReport { summary, comparison })
}

pub fn run_experiment(args: &ExperimentArgs) -> Result<Vec<PathBuf>, CliError> {
    let params = args.resolve()?;
    let report = experiment_report(&params)?;
    write_json(&params.out, &report).map_err(|e| CliError::io(&params.out, e))?;
    let manifest = RunManifest::new("experiment", &params, Some(params.seed), vec![params.out.clone()]);
    let manifest_path = manifest
        .write_beside(&params.out)
        .map_err(|e| CliError::io(&params.out, e))?;
    Ok(vec![params.out, manifest_path])
}

#[derive(Debug, Clone, Default, Args)]
pub struct GameArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeName>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub p1: Option<f64>,
    #[arg(long)]
    pub distinguishability: Option<f64>,
    #[arg(long, conflicts_with = "distinguishability")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub kmax_delta_l: Option<f64>,
    #[arg(long)]
    pub k1_l0: Option<f64>,
    /// Atoms per shift trial.
    #[arg(long)]
    pub n_in: Option<u64>,
    /// Atoms per blocked trial.
    #[arg(long)]
    pub block_atoms: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub mix_shift_plus: Option<f64>,
    #[arg(long)]
    pub mix_shift_minus: Option<f64>,
    #[arg(long)]
    pub mix_block_a: Option<f64>,
    #[arg(long)]
    pub mix_block_b: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GameParams {
    pub mode: ModeName,
    pub kappa: f64,
    pub p1: f64,
    pub distinguishability: f64,
    pub kmax_delta_l: f64,
    pub k1_l0: f64,
    pub n_in: u64,
    pub block_atoms: u64,
    pub trials: u64,
    pub mix_shift_plus: f64,
    pub mix_shift_minus: f64,
    pub mix_block_a: f64,
    pub mix_block_b: f64,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for GameParams {
    fn default() -> Self {
        let mix = ActionMix::default();
        Self {
            mode: ModeName::Tie,
            kappa: 3.0,
            p1: 0.5,
            distinguishability: 0.9,
            kmax_delta_l: 0.01,
            k1_l0: FRAC_PI_2,
            n_in: 90_000,
            block_atoms: 1,
            trials: 400,
            mix_shift_plus: mix.shift_plus,
            mix_shift_minus: mix.shift_minus,
            mix_block_a: mix.block_a,
            mix_block_b: mix.block_b,
            seed: 1,
            out: PathBuf::from("game.json"),
        }
    }
}

impl GameParams {
    pub fn game_config(&self) -> GameConfig {
        GameConfig {
            mode: source_mode(self.mode, self.kappa, self.p1, self.distinguishability),
            kmax_delta_l: self.kmax_delta_l,
            k1_l0: self.k1_l0,
            n_in: self.n_in,
            block_atoms: self.block_atoms,
            trials: self.trials,
            mix: ActionMix {
                shift_plus: self.mix_shift_plus,
                shift_minus: self.mix_shift_minus,
                block_a: self.mix_block_a,
                block_b: self.mix_block_b,
            },
            seed: self.seed,
        }
    }
}

impl GameArgs {
    pub fn resolve(&self) -> Result<GameParams, CliError> {
        let mut params = match &self.config {
            Some(path) => load_config(path, "game")?,
            None => GameParams::default(),
        };
        let distinguishability = alpha_distinguishability(self.alpha)?.or(self.distinguishability);
        overlay!(params, self; mode, kappa, p1, kmax_delta_l, k1_l0, n_in, block_atoms, trials,
            mix_shift_plus, mix_shift_minus, mix_block_a, mix_block_b, seed, out);
        if let Some(d) = distinguishability {
            params.distinguishability = d;
        }
        Ok(params)
    }
}

pub fn game_summary(params: &GameParams) -> crate::Result<GameSummary> {
    run_game(&params.game_config())
}

pub fn run_game_command(args: &GameArgs) -> Result<Vec<PathBuf>, CliError> {
    let params = args.resolve()?;
    let summary = game_summary(&params)?;
    write_json(&params.out, &summary).map_err(|e| CliError::io(&params.out, e))?;
    let manifest = RunManifest::new("game", &params, Some(params.seed), vec![params.out.clone()]);
    let manifest_path = manifest
        .write_beside(&params.out)
        .map_err(|e| CliError::io(&params.out, e))?;
    Ok(vec![params.out, manifest_path])
}
