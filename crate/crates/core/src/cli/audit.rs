//! `audit`: randomized verdict counts for the complementarity inequalities,
//! split by whether the inputs come from a standard which-way detector or from
//! a TIE state probed with a small shift.

use clap::Args;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::PathBuf;

use super::config::{load_config, overlay, CliError};
use super::output::{write_json, RunManifest};
use crate::complementarity::{
    duality_audit, sd_ellipse_bound, sensitivity, standard_sensitivity, tie_distinguishability, tie_small_shift,
    wave_particle_bound, wp_probability, ww_probability, AuditMode, DualityReport, Kappa, Verdict, WpMode,
};
use crate::error::Error;
use crate::interferometry::DetectorModel;
use crate::rng::AtomStream;
use crate::states::TieInput;

/// Largest `k1·δL` drawn for the TIE class.
pub const TIE_MAX_SHIFT: f64 = 0.1;

#[derive(Debug, Clone, Default, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Random draws per input class.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditParams {
    pub trials: u64,
    pub seed: u64,
    pub out: PathBuf,
}

impl Default for AuditParams {
    fn default() -> Self {
        Self {
            trials: 10_000,
            seed: 1,
            out: PathBuf::from("audit.json"),
        }
    }
}

impl AuditArgs {
    pub fn resolve(&self) -> Result<AuditParams, CliError> {
        let mut params = match &self.config {
            Some(path) => load_config(path, "audit")?,
            None => AuditParams::default(),
        };
        overlay!(params, self; trials, seed, out);
        Ok(params)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub satisfied: u64,
    pub tight: u64,
    pub violated: u64,
}

impl VerdictCounts {
    fn record(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Satisfied => self.satisfied += 1,
            Verdict::Tight => self.tight += 1,
            Verdict::Violated => self.violated += 1,
        }
    }
}

/// Inequality name to verdict counts.
pub type ClassCounts = BTreeMap<&'static str, VerdictCounts>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub trials: u64,
    pub seed: u64,
    pub standard: ClassCounts,
    pub tie: ClassCounts,
}

const STANDARD_STREAM: u64 = 0;
const TIE_STREAM: u64 = 1;

/// Reports for one detector drawn with `α ∈ [0, π/2]`, `φ ∈ [0, 2π)` and
/// `k·δL ∈ (0, π/2]`.
fn standard_draw(seed: u64, trial: u64) -> crate::Result<Vec<(&'static str, DualityReport)>> {
    let mut stream = AtomStream::new(seed, STANDARD_STREAM, 2 * trial);
    let [ua, uphi] = stream.next_atom();
    let [ushift, _] = stream.next_atom();
    let det = DetectorModel::from_alpha(ua * FRAC_PI_2)?;
    let (d, v) = (det.distinguishability(), det.visibility());
    let k_delta_l = (1.0 - ushift) * FRAC_PI_2;
    let p_ww = ww_probability(d)?;
    Ok(vec![
        (
            "duality_orthogonal",
            duality_audit(p_ww, wp_probability(v, WpMode::OrthogonalMax)?, AuditMode::Orthogonal)?,
        ),
        (
            "duality_discrete",
            duality_audit(
                p_ww,
                wp_probability(v, WpMode::Discrete { k_delta_l })?,
                AuditMode::Discrete { k_delta_l },
            )?,
        ),
        (
            "sensitivity_circle",
            sd_ellipse_bound(standard_sensitivity(v, uphi * TAU)?.min(1.0), d, Kappa::Finite(1.0))?,
        ),
        ("wave_particle", wave_particle_bound(d, v)?),
    ])
}

/// Reports for a TIE state with κ = 3, p1 = ½ at `k1·L0 = π/2`, shifted by
/// `k1·δL ∈ (0, 0.1]`. Sensitivity and distinguishability are read at the
/// shifted difference.
fn tie_draw(tie: &TieInput, seed: u64, trial: u64) -> crate::Result<Vec<(&'static str, DualityReport)>> {
    let [u, _] = AtomStream::new(seed, TIE_STREAM, trial).next_atom();
    let k_delta_l = (1.0 - u) * TIE_MAX_SHIFT;
    let delta_l = k_delta_l / tie.k1();
    let small = tie_small_shift(tie, delta_l)?;
    let l_ab = FRAC_PI_2 / tie.k1() + delta_l;
    let d = tie_distinguishability(tie, l_ab).min(1.0);
    let s = sensitivity(tie, l_ab).min(1.0);
    let v = (1.0 - d * d).max(0.0).sqrt();
    Ok(vec![
        (
            "duality_orthogonal",
            duality_audit(small.p_ww_exact, small.p_wp_exact, AuditMode::Orthogonal)?,
        ),
        (
            "duality_discrete",
            duality_audit(small.p_ww_exact, small.p_wp_exact, AuditMode::Discrete { k_delta_l })?,
        ),
        ("sensitivity_circle", sd_ellipse_bound(s, d, Kappa::Finite(1.0))?),
        (
            "sensitivity_ellipse",
            sd_ellipse_bound(s, d, Kappa::Finite(tie.kappa()))?,
        ),
        ("wave_particle", wave_particle_bound(d, v)?),
    ])
}

pub fn audit_report(params: &AuditParams) -> crate::Result<AuditReport> {
    if params.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let tie = TieInput::with_weight(0.5, 3.0)?;
    let mut standard = ClassCounts::new();
    let mut tie_counts = ClassCounts::new();
    for trial in 0..params.trials {
        for (name, report) in standard_draw(params.seed, trial)? {
            standard.entry(name).or_default().record(report.verdict);
        }
        for (name, report) in tie_draw(&tie, params.seed, trial)? {
            tie_counts.entry(name).or_default().record(report.verdict);
        }
    }
    Ok(AuditReport {
        trials: params.trials,
        seed: params.seed,
        standard,
        tie: tie_counts,
    })
}

pub fn run(args: &AuditArgs) -> Result<Vec<PathBuf>, CliError> {
    let params = args.resolve()?;
    let report = audit_report(&params)?;
    write_json(&params.out, &report).map_err(|e| CliError::io(&params.out, e))?;
    let manifest = RunManifest::new("audit", &params, Some(params.seed), vec![params.out.clone()]);
    let manifest_path = manifest
        .write_beside(&params.out)
        .map_err(|e| CliError::io(&params.out, e))?;
    Ok(vec![params.out, manifest_path])
}
