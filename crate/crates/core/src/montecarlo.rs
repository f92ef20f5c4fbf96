//! Atom-by-atom simulation of shot-noise limited sign estimation, wrong-path
//! counting and the path-blocking guessing game.
//!
//! Every atom draws from the exact joint law of (output port, internal
//! outcome) and carries a latent path label that is used only for scoring.
//! Randomness is keyed by `(seed, repetition, atom)` through
//! [`AtomStream`], so serial and parallel runs agree bit for bit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Range};

use crate::complementarity::{fringe_slope, sensitivity, standard_sensitivity, tie_distinguishability};
use crate::error::{check_finite, check_range, Error, Result};
use crate::interferometry::{joint_outcome_dist, standard_joint_dist, ArmGeometry, DetectorModel, JointDistribution};
use crate::rng::AtomStream;
use crate::states::TieInput;

/// Source of atoms fed into the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceMode {
    /// TIE state with `k1 = 1`, `k2 = κ` and real amplitudes `√p1`, `√(1−p1)`.
    Tie { kappa: f64, p1: f64 },
    /// Monochromatic atoms (`k = 1`) with a which-way detector of the given
    /// distinguishability.
    Standard { distinguishability: f64 },
}

impl SourceMode {
    /// Standard source with `D = |cos α|`.
    pub fn standard_from_alpha(alpha: f64) -> Result<Self> {
        let det = DetectorModel::from_alpha(alpha)?;
        Ok(SourceMode::Standard {
            distinguishability: det.distinguishability(),
        })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            SourceMode::Tie { kappa, p1 } => {
                check_finite("mode.kappa", kappa)?;
                check_range("mode.kappa", kappa, 1.0, f64::INFINITY)?;
                check_range("mode.p1", p1, 0.0, 1.0)?;
            }
            SourceMode::Standard { distinguishability } => {
                check_range("mode.distinguishability", distinguishability, 0.0, 1.0)?;
            }
        }
        Ok(())
    }

    fn k_max(&self) -> f64 {
        match *self {
            SourceMode::Tie { kappa, .. } => kappa,
            SourceMode::Standard { .. } => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftSign {
    Plus,
    Minus,
}

impl ShiftSign {
    pub fn factor(self) -> f64 {
        match self {
            ShiftSign::Plus => 1.0,
            ShiftSign::Minus => -1.0,
        }
    }
}

fn default_k1_l0() -> f64 {
    FRAC_PI_2
}

fn default_sign() -> ShiftSign {
    ShiftSign::Plus
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: SourceMode,
    /// Shift magnitude in units of the shortest wavelength, `k_max·|δL|`.
    pub kmax_delta_l: f64,
    #[serde(default = "default_sign")]
    pub sign: ShiftSign,
    pub n_in: u64,
    /// Working point `k1·L0`.
    #[serde(default = "default_k1_l0")]
    pub k1_l0: f64,
    pub seed: u64,
    pub repetitions: u32,
}

impl ExperimentConfig {
    /// Parses and validates a JSON config; errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::InvalidConfig(format!("field `{}`: {}", e.path(), e.inner())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.mode.validate()?;
        check_finite("kmax_delta_l", self.kmax_delta_l)?;
        if self.kmax_delta_l.abs() >= FRAC_PI_2 {
            return Err(Error::OutOfRange {
                name: "kmax_delta_l",
                value: self.kmax_delta_l,
                min: -FRAC_PI_2,
                max: FRAC_PI_2,
            });
        }
        check_finite("k1_l0", self.k1_l0)?;
        if self.n_in == 0 {
            return Err(Error::InvalidConfig("n_in must be at least 1".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be at least 1".into()));
        }
        Ok(())
    }
}

/// Interferometer configuration seen by every atom of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub geometry: ArmGeometry,
    pub law: JointDistribution,
    /// Signed `dP+/dL_AB` at the unshifted working point.
    pub slope_at_l0: f64,
    /// Sensitivity at the unshifted working point.
    pub sensitivity_at_l0: f64,
    /// Distinguishability at the shifted difference actually in force.
    pub distinguishability: f64,
    /// `P(outcome A | only path p open)` for p = A, B.
    pub single_path_outcome_a: [f64; 2],
    pub k_max: f64,
}

impl OperatingPoint {
    /// Operating point for a signed shift `delta_l` (in length units).
    pub fn new(mode: &SourceMode, k1_l0: f64, delta_l: f64) -> Result<Self> {
        mode.validate()?;
        match *mode {
            SourceMode::Tie { kappa, p1 } => {
                let tie = TieInput::with_weight(p1, kappa)?;
                let geometry = ArmGeometry::with_difference(k1_l0 / tie.k1(), delta_l)?;
                let basis = tie.ww_basis(geometry.l_a0, geometry.l_b0);
                let law = joint_outcome_dist(&tie, &geometry, &basis)?;
                let (psi_a, psi_b) = tie.arm_states(geometry.l_a(), geometry.l_b());
                let l0 = geometry.nominal_difference();
                Ok(Self {
                    geometry,
                    law,
                    slope_at_l0: fringe_slope(&tie, l0),
                    sensitivity_at_l0: sensitivity(&tie, l0),
                    distinguishability: tie_distinguishability(&tie, geometry.difference()),
                    single_path_outcome_a: [basis.a.overlap(&psi_a).norm_sqr(), basis.a.overlap(&psi_b).norm_sqr()],
                    k_max: tie.k_max(),
                })
            }
            SourceMode::Standard { distinguishability } => {
                let det = DetectorModel::from_distinguishability(distinguishability)?;
                let k = 1.0;
                let geometry = ArmGeometry::with_difference(k1_l0 / k, delta_l)?;
                let l0 = geometry.nominal_difference();
                let phase = k * l0 + det.fringe_phase();
                let correct = 0.5 * (1.0 + distinguishability);
                Ok(Self {
                    geometry,
                    law: standard_joint_dist(&det, k, geometry.difference()),
                    slope_at_l0: -0.5 * det.visibility() * k * phase.sin(),
                    sensitivity_at_l0: standard_sensitivity(det.visibility(), phase)?,
                    distinguishability,
                    single_path_outcome_a: [correct, 1.0 - correct],
                    k_max: k,
                })
            }
        }
    }

    /// Port-to-sign rule: `+` when the excess of `+` counts has the sign of the
    /// fringe slope; an exactly balanced count goes to `+`.
    pub fn guess_sign(&self, n_plus: u64, n_in: u64) -> (ShiftSign, bool) {
        let excess = 2 * n_plus as i128 - n_in as i128;
        let balanced = excess == 0;
        let plus = if self.slope_at_l0 < 0.0 {
            excess <= 0
        } else {
            excess >= 0
        };
        (if plus { ShiftSign::Plus } else { ShiftSign::Minus }, balanced)
    }
}

/// Counts accumulated over a block of atoms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct AtomTally {
    /// `counts[port][outcome]`, port 0 = `+`, outcome 0 = "A".
    pub counts: [[u64; 2]; 2],
    /// Atoms whose outcome label differs from their latent path.
    pub wrong_paths: u64,
}

impl AtomTally {
    pub fn n_plus(&self) -> u64 {
        self.counts[0][0] + self.counts[0][1]
    }

    pub fn n_minus(&self) -> u64 {
        self.counts[1][0] + self.counts[1][1]
    }

    pub fn outcome_counts(&self) -> [u64; 2] {
        [
            self.counts[0][0] + self.counts[1][0],
            self.counts[0][1] + self.counts[1][1],
        ]
    }

    pub fn total(&self) -> u64 {
        self.n_plus() + self.n_minus()
    }
}

impl Add for AtomTally {
    type Output = AtomTally;

    fn add(self, rhs: AtomTally) -> AtomTally {
        let mut counts = self.counts;
        for (row, other) in counts.iter_mut().zip(rhs.counts) {
            for (c, o) in row.iter_mut().zip(other) {
                *c += o;
            }
        }
        AtomTally {
            counts,
            wrong_paths: self.wrong_paths + rhs.wrong_paths,
        }
    }
}

/// Samples atoms `atoms` of stream `(seed, stream)` from `law`.
pub fn simulate_atoms(law: &JointDistribution, seed: u64, stream: u64, atoms: Range<u64>) -> AtomTally {
    let p = &law.probs;
    let c0 = p[0][0];
    let c1 = c0 + p[0][1];
    let c2 = c1 + p[1][0];
    let mut rng = AtomStream::new(seed, stream, atoms.start);
    let mut tally = AtomTally::default();
    for _ in atoms {
        let [u_outcome, u_path] = rng.next_atom();
        let (port, outcome) = if u_outcome < c0 {
            (0, 0)
        } else if u_outcome < c1 {
            (0, 1)
        } else if u_outcome < c2 {
            (1, 0)
        } else {
            (1, 1)
        };
        let path = usize::from(u_path >= law.path_a_given_outcome[outcome]);
        tally.counts[port][outcome] += 1;
        tally.wrong_paths += u64::from(path != outcome);
    }
    tally
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RepetitionResult {
    pub repetition: u32,
    pub n_plus: u64,
    pub n_minus: u64,
    /// Atoms read as "A" and "B" by the internal-state measurement.
    pub outcome_counts: [u64; 2],
    pub sign_guess: ShiftSign,
    pub sign_correct: bool,
    /// `N(+) = n_in/2` exactly; the guess fell back to `+`.
    pub tie_break: bool,
    pub wrong_paths: u64,
}

/// Closed-form expectations for a configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Predictions {
    pub k1_l_ab: f64,
    pub p_plus: f64,
    pub distinguishability: f64,
    pub sensitivity_at_l0: f64,
    /// `ceil(1/(k_max δL S)²)` at the working point; `None` when `S·δL = 0`.
    pub required_atoms: Option<u64>,
    /// `(1 − D)/2 · n_in` at the shifted difference.
    pub expected_wrong_paths: f64,
    /// Asymptotic formula: TIE `Δk²/(16 k_max² S²)`, standard floor
    /// `1/(4 k_max² δL²)`.
    pub wrong_paths_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub config: ExperimentConfig,
    pub predictions: Predictions,
    pub repetitions: Vec<RepetitionResult>,
    pub mean_wrong_paths: f64,
    pub std_wrong_paths: f64,
    pub sign_success_rate: f64,
    pub mean_plus_fraction: f64,
    pub tie_breaks: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// `ceil(1/(k_max δL · S)²)`.
///
/// Ratios that land within 1e-9 (relative) of an integer are taken as that
/// integer so exact inputs such as (0.01, 1/3) are not pushed up by rounding.
pub fn required_atoms(kmax_delta_l: f64, s: f64) -> Result<u64> {
    for (name, v) in [("kmax_delta_l", kmax_delta_l), ("sensitivity", s)] {
        check_finite(name, v)?;
        if v <= 0.0 {
            return Err(Error::OutOfRange {
                name,
                value: v,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
    }
    let x = (kmax_delta_l * s).powi(-2);
    let nearest = x.round();
    let n = if (x - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        x.ceil()
    };
    Ok(n.max(1.0) as u64)
}

/// Wrong-path expectations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WrongPathModel {
    /// `Δk²/(16 k_max² S²)` with `Δk/k_max = (κ−1)/κ`.
    Tie { kappa: f64, sensitivity: f64 },
    /// `1/(4 k_max² δL²)`.
    StandardFloor { kmax_delta_l: f64 },
    /// `(1 − D)/2 · n_in`.
    StandardAt { distinguishability: f64, n_in: u64 },
}

pub fn expected_wrong(model: WrongPathModel) -> Result<f64> {
    match model {
        WrongPathModel::Tie { kappa, sensitivity } => {
            check_range("kappa", kappa, 1.0, f64::INFINITY)?;
            check_range("sensitivity", sensitivity, f64::MIN_POSITIVE, 1.0)?;
            let ratio = (kappa - 1.0) / kappa;
            Ok(ratio * ratio / (16.0 * sensitivity * sensitivity))
        }
        WrongPathModel::StandardFloor { kmax_delta_l } => {
            check_finite("kmax_delta_l", kmax_delta_l)?;
            if kmax_delta_l == 0.0 {
                return Err(Error::InvalidConfig("kmax_delta_l must be non-zero".into()));
            }
            Ok(1.0 / (4.0 * kmax_delta_l * kmax_delta_l))
        }
        WrongPathModel::StandardAt {
            distinguishability,
            n_in,
        } => {
            check_range("distinguishability", distinguishability, 0.0, 1.0)?;
            Ok(0.5 * (1.0 - distinguishability) * n_in as f64)
        }
    }
}

pub fn predictions(cfg: &ExperimentConfig) -> Result<Predictions> {
    cfg.validate()?;
    let delta_l = cfg.sign.factor() * cfg.kmax_delta_l.abs() / cfg.mode.k_max();
    let op = OperatingPoint::new(&cfg.mode, cfg.k1_l0, delta_l)?;
    let s = op.sensitivity_at_l0;
    let required = if s > 0.0 && cfg.kmax_delta_l != 0.0 {
        Some(required_atoms(cfg.kmax_delta_l.abs(), s.min(1.0))?)
    } else {
        None
    };
    let bound = match cfg.mode {
        SourceMode::Tie { kappa, .. } if s > 0.0 => expected_wrong(WrongPathModel::Tie {
            kappa,
            sensitivity: s.min(1.0),
        })
        .ok(),
        SourceMode::Tie { .. } => None,
        SourceMode::Standard { .. } => expected_wrong(WrongPathModel::StandardFloor {
            kmax_delta_l: cfg.kmax_delta_l,
        })
        .ok(),
    };
    Ok(Predictions {
        k1_l_ab: op.geometry.difference(),
        p_plus: op.law.port_marginal().p_plus,
        distinguishability: op.distinguishability,
        sensitivity_at_l0: s,
        required_atoms: required,
        expected_wrong_paths: op.law.wrong_path_probability() * cfg.n_in as f64,
        wrong_paths_bound: bound,
    })
}

/// Runs `cfg.repetitions` independent experiments of `cfg.n_in` atoms each.
pub fn run_phase_experiment(cfg: &ExperimentConfig) -> Result<ExperimentSummary> {
    run_phase_experiment_with(cfg, Execution::Parallel)
}

pub fn run_phase_experiment_with(cfg: &ExperimentConfig, execution: Execution) -> Result<ExperimentSummary> {
    cfg.validate()?;
    let delta_l = cfg.sign.factor() * cfg.kmax_delta_l.abs() / cfg.mode.k_max();
    let op = OperatingPoint::new(&cfg.mode, cfg.k1_l0, delta_l)?;
    let predictions = predictions(cfg)?;

    let one = |rep: u32| -> RepetitionResult {
        let tally = simulate_atoms(&op.law, cfg.seed, rep as u64, 0..cfg.n_in);
        let (sign_guess, tie_break) = op.guess_sign(tally.n_plus(), cfg.n_in);
        RepetitionResult {
            repetition: rep,
            n_plus: tally.n_plus(),
            n_minus: tally.n_minus(),
            outcome_counts: tally.outcome_counts(),
            sign_guess,
            sign_correct: sign_guess == cfg.sign,
            tie_break,
            wrong_paths: tally.wrong_paths,
        }
    };
    let repetitions: Vec<RepetitionResult> = match execution {
        Execution::Serial => (0..cfg.repetitions).map(one).collect(),
        Execution::Parallel => (0..cfg.repetitions).into_par_iter().map(one).collect(),
    };

    let wrong: Vec<f64> = repetitions.iter().map(|r| r.wrong_paths as f64).collect();
    let (mean_wrong_paths, std_wrong_paths) = mean_std(&wrong);
    let r = repetitions.len() as f64;
    let sign_success_rate = repetitions.iter().filter(|r| r.sign_correct).count() as f64 / r;
    let mean_plus_fraction = repetitions
        .iter()
        .map(|rep| rep.n_plus as f64 / cfg.n_in as f64)
        .sum::<f64>()
        / r;
    let tie_breaks = repetitions.iter().filter(|r| r.tie_break).count() as u32;
    Ok(ExperimentSummary {
        config: *cfg,
        predictions,
        repetitions,
        mean_wrong_paths,
        std_wrong_paths,
        sign_success_rate,
        mean_plus_fraction,
        tie_breaks,
    })
}

/// Mean and sample standard deviation.
pub(crate) fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameAction {
    ShiftPlus,
    ShiftMinus,
    BlockA,
    BlockB,
}

/// Probabilities with which the choosing party picks each action.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionMix {
    pub shift_plus: f64,
    pub shift_minus: f64,
    pub block_a: f64,
    pub block_b: f64,
}

impl Default for ActionMix {
    fn default() -> Self {
        Self {
            shift_plus: 0.25,
            shift_minus: 0.25,
            block_a: 0.25,
            block_b: 0.25,
        }
    }
}

impl ActionMix {
    fn weights(&self) -> [f64; 4] {
        [self.shift_plus, self.shift_minus, self.block_a, self.block_b]
    }

    fn validate(&self) -> Result<()> {
        for w in self.weights() {
            check_range("mix", w, 0.0, 1.0)?;
        }
        let sum: f64 = self.weights().iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "mix probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }

    fn pick(&self, u: f64) -> GameAction {
        let [a, b, c, _] = self.weights();
        if u < a {
            GameAction::ShiftPlus
        } else if u < a + b {
            GameAction::ShiftMinus
        } else if u < a + b + c {
            GameAction::BlockA
        } else {
            GameAction::BlockB
        }
    }
}

fn default_block_atoms() -> u64 {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameConfig {
    pub mode: SourceMode,
    pub kmax_delta_l: f64,
    #[serde(default = "default_k1_l0")]
    pub k1_l0: f64,
    /// Atoms per shift trial.
    pub n_in: u64,
    /// Atoms per blocked trial.
    #[serde(default = "default_block_atoms")]
    pub block_atoms: u64,
    pub trials: u64,
    #[serde(default)]
    pub mix: ActionMix,
    pub seed: u64,
}

impl GameConfig {
    pub fn validate(&self) -> Result<()> {
        self.mode.validate()?;
        self.mix.validate()?;
        check_finite("kmax_delta_l", self.kmax_delta_l)?;
        if self.kmax_delta_l.abs() >= FRAC_PI_2 {
            return Err(Error::OutOfRange {
                name: "kmax_delta_l",
                value: self.kmax_delta_l,
                min: -FRAC_PI_2,
                max: FRAC_PI_2,
            });
        }
        check_finite("k1_l0", self.k1_l0)?;
        if self.n_in == 0 || self.block_atoms == 0 || self.trials == 0 {
            return Err(Error::InvalidConfig(
                "n_in, block_atoms and trials must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GameTrial {
    pub trial: u64,
    pub action: GameAction,
    /// Shift trials: whether the sign was guessed. Block trials: fraction of
    /// atoms whose path was named correctly.
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameSummary {
    pub config: GameConfig,
    pub trials_per_action: [u64; 4],
    pub shift_sign_success_rate: Option<f64>,
    pub shift_mean_wrong_paths: Option<f64>,
    pub block_atoms_total: u64,
    pub block_path_success_rate: Option<f64>,
    pub block_a_success_rate: Option<f64>,
    pub block_b_success_rate: Option<f64>,
    /// `(1 + D)/2` at the shifted difference in force during blocked trials.
    pub predicted_block_success: f64,
}

/// Plays `cfg.trials` rounds. Trial `t` uses stream `t`: atom slot 0 chooses
/// the action, slots `1..` are the atoms sent through the interferometer.
/// Blocked trials run with the shift `+|δL|` in force.
pub fn run_game(cfg: &GameConfig) -> Result<GameSummary> {
    cfg.validate()?;
    let delta = cfg.kmax_delta_l.abs() / cfg.mode.k_max();
    let plus = OperatingPoint::new(&cfg.mode, cfg.k1_l0, delta)?;
    let minus = OperatingPoint::new(&cfg.mode, cfg.k1_l0, -delta)?;

    let play = |t: u64| -> (GameTrial, u64, u64) {
        let [u, _] = AtomStream::new(cfg.seed, t, 0).next_atom();
        let action = cfg.mix.pick(u);
        match action {
            GameAction::ShiftPlus | GameAction::ShiftMinus => {
                let (op, truth) = if action == GameAction::ShiftPlus {
                    (&plus, ShiftSign::Plus)
                } else {
                    (&minus, ShiftSign::Minus)
                };
                let tally = simulate_atoms(&op.law, cfg.seed, t, 1..cfg.n_in + 1);
                let (guess, _) = op.guess_sign(tally.n_plus(), cfg.n_in);
                let score = if guess == truth { 1.0 } else { 0.0 };
                (
                    GameTrial {
                        trial: t,
                        action,
                        score,
                    },
                    tally.wrong_paths,
                    0,
                )
            }
            GameAction::BlockA | GameAction::BlockB => {
                let open = usize::from(action == GameAction::BlockB);
                let p_a = plus.single_path_outcome_a[open];
                let mut rng = AtomStream::new(cfg.seed, t, 1);
                let correct = (0..cfg.block_atoms)
                    .filter(|_| {
                        let [u, _] = rng.next_atom();
                        let outcome = usize::from(u >= p_a);
                        outcome == open
                    })
                    .count() as u64;
                let score = correct as f64 / cfg.block_atoms as f64;
                (
                    GameTrial {
                        trial: t,
                        action,
                        score,
                    },
                    0,
                    correct,
                )
            }
        }
    };
    let played: Vec<(GameTrial, u64, u64)> = (0..cfg.trials).into_par_iter().map(play).collect();

    let mut trials_per_action = [0u64; 4];
    let mut shift_correct = 0u64;
    let mut shift_wrong = 0u64;
    let mut block_correct = [0u64; 2];
    for (trial, wrong, correct) in &played {
        let idx = trial.action as usize;
        trials_per_action[idx] += 1;
        match trial.action {
            GameAction::ShiftPlus | GameAction::ShiftMinus => {
                shift_correct += trial.score as u64;
                shift_wrong += wrong;
            }
            GameAction::BlockA => block_correct[0] += correct,
            GameAction::BlockB => block_correct[1] += correct,
        }
    }
    let shift_trials = trials_per_action[0] + trials_per_action[1];
    let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
    let block_atoms = [
        trials_per_action[2] * cfg.block_atoms,
        trials_per_action[3] * cfg.block_atoms,
    ];
    Ok(GameSummary {
        config: *cfg,
        trials_per_action,
        shift_sign_success_rate: ratio(shift_correct, shift_trials),
        shift_mean_wrong_paths: ratio(shift_wrong, shift_trials),
        block_atoms_total: block_atoms[0] + block_atoms[1],
        block_path_success_rate: ratio(block_correct[0] + block_correct[1], block_atoms[0] + block_atoms[1]),
        block_a_success_rate: ratio(block_correct[0], block_atoms[0]),
        block_b_success_rate: ratio(block_correct[1], block_atoms[1]),
        predicted_block_success: 0.5 * (1.0 + plus.distinguishability),
    })
}
