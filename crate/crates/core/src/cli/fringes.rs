//! `fringes`: TIE interference pattern, distinguishability, sensitivity and
//! purity over a grid of `k1·L_AB`.

use clap::Args;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::path::PathBuf;

use super::config::{load_config, overlay, CliError};
use super::output::{format_f64, write_csv, RunManifest};
use crate::complementarity::{purity, sensitivity, tie_distinguishability};
use crate::error::Error;
use crate::interferometry::tie_fringe;
use crate::states::TieInput;

pub const HEADER: [&str; 6] = ["k1_L_AB", "P_plus", "P_minus", "D", "S", "purity"];

#[derive(Debug, Clone, Default, Args)]
pub struct FringesArgs {
    /// JSON config file or run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Wavenumber ratio k2/k1.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Weight |c1|² of the slow component.
    #[arg(long)]
    pub p1: Option<f64>,
    /// First grid value of k1·L_AB.
    #[arg(long)]
    pub grid_min: Option<f64>,
    /// Last grid value of k1·L_AB.
    #[arg(long)]
    pub grid_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FringesParams {
    pub kappa: f64,
    pub p1: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    pub points: usize,
    pub out: PathBuf,
}

impl Default for FringesParams {
    fn default() -> Self {
        Self {
            kappa: 3.0,
            p1: 0.5,
            grid_min: 0.0,
            grid_max: TAU,
            points: 1001,
            out: PathBuf::from("fringes.csv"),
        }
    }
}

impl FringesArgs {
    pub fn resolve(&self) -> Result<FringesParams, CliError> {
        let mut params = match &self.config {
            Some(path) => load_config(path, "fringes")?,
            None => FringesParams::default(),
        };
        overlay!(params, self; kappa, p1, grid_min, grid_max, points, out);
        Ok(params)
    }
}

/// One row per grid point: `k1·L_AB, P+, P−, D, S, purity`.
pub fn fringe_rows(params: &FringesParams) -> crate::Result<Vec<[f64; 6]>> {
    if params.points < 2 {
        return Err(Error::InvalidConfig(format!(
            "points must be at least 2, got {}",
            params.points
        )));
    }
    if !(params.grid_min.is_finite() && params.grid_max.is_finite() && params.grid_max > params.grid_min) {
        return Err(Error::InvalidConfig(format!(
            "grid [{}, {}] is empty or not finite",
            params.grid_min, params.grid_max
        )));
    }
    let tie = TieInput::with_weight(params.p1, params.kappa)?;
    let step = (params.grid_max - params.grid_min) / (params.points - 1) as f64;
    Ok((0..params.points)
        .map(|i| {
            let x = if i + 1 == params.points {
                params.grid_max
            } else {
                params.grid_min + step * i as f64
            };
            let l_ab = x / tie.k1();
            let f = tie_fringe(&tie, l_ab);
            let (psi_a, psi_b) = tie.arm_states(l_ab, 0.0);
            [
                x,
                f.p_plus,
                f.p_minus,
                tie_distinguishability(&tie, l_ab),
                sensitivity(&tie, l_ab),
                purity(&psi_a, &psi_b),
            ]
        })
        .collect())
}

pub fn run(args: &FringesArgs) -> Result<Vec<PathBuf>, CliError> {
    let params = args.resolve()?;
    let rows: Vec<Vec<String>> = fringe_rows(&params)?
        .iter()
        .map(|r| r.iter().map(|&v| format_f64(v)).collect())
        .collect();
    write_csv(&params.out, &HEADER, &rows).map_err(|e| CliError::io(&params.out, e))?;
    let manifest = RunManifest::new("fringes", &params, None, vec![params.out.clone()]);
    let manifest_path = manifest
        .write_beside(&params.out)
        .map_err(|e| CliError::io(&params.out, e))?;
    Ok(vec![params.out, manifest_path])
}
