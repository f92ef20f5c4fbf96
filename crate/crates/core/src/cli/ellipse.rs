//! `ellipse`: upper boundary of the sensitivity-distinguishability region for
//! a list of κ, swept over p1 at the maximal-D working point `k1·L_AB = π/2`.
//!
//! Rows for κ = 1 come from monochromatic atoms with a which-way detector of
//! distinguishability `2√(p1 p2)` read at the steepest fringe point, which
//! traces the circle `S² + D² = 1`. Rows for κ = ∞ use the limiting boundary
//! `S = 1 − p1`, `D = 2√(p1 p2)`.

use clap::Args;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use super::config::{load_config, overlay, CliError};
use super::output::{format_f64, write_csv, RunManifest};
use crate::complementarity::{sd_ellipse_bound, sensitivity, standard_sensitivity, tie_distinguishability, Kappa};
use crate::error::Error;
use crate::interferometry::DetectorModel;
use crate::states::TieInput;

pub const HEADER: [&str; 6] = ["kappa", "p1", "S", "D", "ellipse_lhs", "slack"];

#[derive(Debug, Clone, Default, Args)]
pub struct EllipseArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated κ values; `inf` selects the κ → ∞ limit.
    #[arg(long, value_delimiter = ',')]
    pub kappa_list: Option<Vec<Kappa>>,
    /// Number of p1 samples in [0, 1].
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EllipseParams {
    pub kappa_list: Vec<Kappa>,
    pub points: usize,
    pub out: PathBuf,
}

impl Default for EllipseParams {
    fn default() -> Self {
        Self {
            kappa_list: vec![Kappa::Finite(1.0), Kappa::Finite(3.0), Kappa::Infinite],
            points: 101,
            out: PathBuf::from("ellipse.csv"),
        }
    }
}

impl EllipseArgs {
    pub fn resolve(&self) -> Result<EllipseParams, CliError> {
        let mut params = match &self.config {
            Some(path) => load_config(path, "ellipse")?,
            None => EllipseParams::default(),
        };
        overlay!(params, self; kappa_list, points, out);
        Ok(params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseRow {
    pub kappa: Kappa,
    pub p1: f64,
    pub s: f64,
    pub d: f64,
    pub lhs: f64,
    pub slack: f64,
}

/// `(S, D)` at weight `p1` on the boundary for `kappa`.
pub fn boundary_point(kappa: Kappa, p1: f64) -> crate::Result<(f64, f64)> {
    let d_of = |p1: f64| 2.0 * (p1 * (1.0 - p1)).max(0.0).sqrt();
    match kappa {
        Kappa::Finite(1.0) => {
            let det = DetectorModel::from_distinguishability(d_of(p1).min(1.0))?;
            Ok((
                standard_sensitivity(det.visibility(), FRAC_PI_2)?,
                det.distinguishability(),
            ))
        }
        Kappa::Finite(k) => {
            let tie = TieInput::with_weight(p1, k)?;
            let l_ab = FRAC_PI_2 / tie.k1();
            Ok((
                sensitivity(&tie, l_ab).min(1.0),
                tie_distinguishability(&tie, l_ab).min(1.0),
            ))
        }
        Kappa::Infinite => Ok((1.0 - p1, d_of(p1).min(1.0))),
    }
}

pub fn ellipse_rows(params: &EllipseParams) -> crate::Result<Vec<EllipseRow>> {
    if params.points < 2 {
        return Err(Error::InvalidConfig(format!(
            "points must be at least 2, got {}",
            params.points
        )));
    }
    if params.kappa_list.is_empty() {
        return Err(Error::InvalidConfig("kappa_list is empty".into()));
    }
    let mut rows = Vec::with_capacity(params.kappa_list.len() * params.points);
    for &kappa in &params.kappa_list {
        if let Kappa::Finite(k) = kappa {
            Kappa::finite(k)?;
        }
        for i in 0..params.points {
            let p1 = i as f64 / (params.points - 1) as f64;
            let (s, d) = boundary_point(kappa, p1)?;
            let report = sd_ellipse_bound(s, d, kappa)?;
            rows.push(EllipseRow {
                kappa,
                p1,
                s,
                d,
                lhs: report.lhs,
                slack: report.slack,
            });
        }
    }
    Ok(rows)
}

pub fn run(args: &EllipseArgs) -> Result<Vec<PathBuf>, CliError> {
    let params = args.resolve()?;
    let rows: Vec<Vec<String>> = ellipse_rows(&params)?
        .iter()
        .map(|r| {
            let kappa = match r.kappa {
                Kappa::Finite(k) => format_f64(k),
                Kappa::Infinite => "inf".to_owned(),
            };
            vec![
                kappa,
                format_f64(r.p1),
                format_f64(r.s),
                format_f64(r.d),
                format_f64(r.lhs),
                format_f64(r.slack),
            ]
        })
        .collect();
    write_csv(&params.out, &HEADER, &rows).map_err(|e| CliError::io(&params.out, e))?;
    let manifest = RunManifest::new("ellipse", &params, None, vec![params.out.clone()]);
    let manifest_path = manifest
        .write_beside(&params.out)
        .map_err(|e| CliError::io(&params.out, e))?;
    Ok(vec![params.out, manifest_path])
}
