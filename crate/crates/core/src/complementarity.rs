//! Distinguishability, visibility, purity and sensitivity, and the duality
//! inequalities that tie them together.
//!
//! Every inequality is reported as a [`DualityReport`] so callers see the
//! slack instead of a bare boolean.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_finite, check_range, Error, Result};
use crate::interferometry::{tie_fringe, DetectorModel};
use crate::states::{SpinState, TieInput};

/// Absolute tolerance separating "tight" from "satisfied"/"violated".
pub const TIGHT_TOLERANCE: f64 = 1e-9;

/// Largest `|k1·δL|` accepted by [`tie_small_shift`].
pub const SMALL_SHIFT_LIMIT: f64 = 0.3;
/// Above this `|k1·δL|` the small-shift expansion is flagged.
pub const SMALL_SHIFT_WARN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Tight,
    Violated,
}

impl Verdict {
    pub fn from_slack(slack: f64, tol: f64) -> Self {
        if slack.abs() <= tol {
            Verdict::Tight
        } else if slack > 0.0 {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }
}

/// Wavenumber ratio `κ = k2/k1`, with the `κ → ∞` limit kept as its own value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kappa {
    Finite(f64),
    Infinite,
}

impl Kappa {
    pub fn finite(value: f64) -> Result<Self> {
        check_finite("kappa", value)?;
        check_range("kappa", value, 1.0, f64::INFINITY)?;
        Ok(Kappa::Finite(value))
    }

    /// Ellipse center `(κ−1)/2κ` and half-axis `(κ+1)/2κ` along S.
    pub fn ellipse_axes(&self) -> (f64, f64) {
        match *self {
            Kappa::Finite(k) => ((k - 1.0) / (2.0 * k), (k + 1.0) / (2.0 * k)),
            Kappa::Infinite => (0.5, 0.5),
        }
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(k) => write!(f, "{k}"),
            Kappa::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(Kappa::Infinite);
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("cannot parse kappa from {s:?}")))?;
        Kappa::finite(v)
    }
}

impl Serialize for Kappa {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kappa::Finite(k) => s.serialize_f64(*k),
            Kappa::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Kappa::finite(v).map_err(serde::de::Error::custom),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "name")]
pub enum Inequality {
    /// `D² + V² ≤ 1`
    WaveParticle,
    /// `(2P_WW − 1)² + [2(P_WP)max − 1]² ≤ 1`
    OrthogonalWwWp,
    /// `(2P_WW − 1)² + [(2P_WP − 1)/sin k|δL|]² ≤ 1`
    DiscreteWwWp { k_delta_l: f64 },
    /// `S² + D² ≤ 1`
    SensitivityCircle,
    /// `((S − (κ−1)/2κ)/((κ+1)/2κ))² + D² ≤ 1`
    SensitivityEllipse { kappa: Kappa },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityReport {
    pub inequality: Inequality,
    pub lhs: f64,
    pub bound: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

impl DualityReport {
    fn new(inequality: Inequality, lhs: f64) -> Self {
        let bound = 1.0;
        let slack = bound - lhs;
        Self {
            inequality,
            lhs,
            bound,
            slack,
            verdict: Verdict::from_slack(slack, TIGHT_TOLERANCE),
        }
    }
}

/// `D = √(1 − |ov|²)`.
pub fn distinguishability_from_overlap(ov: Complex64) -> Result<f64> {
    let m = ov.norm();
    check_range("|overlap|", m, 0.0, 1.0 + 1e-12)?;
    Ok((1.0 - ov.norm_sqr()).max(0.0).sqrt())
}

/// `D = 2√(p1 p2)·|sin(Δk·L_AB/2)|`.
pub fn tie_distinguishability(tie: &TieInput, l_ab: f64) -> f64 {
    2.0 * (tie.p1() * tie.p2()).sqrt() * (0.5 * tie.delta_k() * l_ab).sin().abs()
}

/// `𝒱 = |⟨ψ_B|ψ_A⟩|`.
pub fn purity(psi_a: &SpinState, psi_b: &SpinState) -> f64 {
    psi_b.overlap(psi_a).norm().min(1.0)
}

/// `P_WW = (1 + D)/2`.
pub fn ww_probability(d: f64) -> Result<f64> {
    check_range("distinguishability", d, 0.0, 1.0)?;
    Ok(0.5 * (1.0 + d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WpMode {
    /// Two orthogonal output states: `(1 + V)/2`.
    OrthogonalMax,
    /// Two shifts `±|δL|` around a working point at an odd multiple of π/2:
    /// `½ + (V/2)·sin(k|δL|)`.
    Discrete { k_delta_l: f64 },
}

pub fn wp_probability(visibility: f64, mode: WpMode) -> Result<f64> {
    check_range("visibility", visibility, 0.0, 1.0)?;
    Ok(match mode {
        WpMode::OrthogonalMax => 0.5 * (1.0 + visibility),
        WpMode::Discrete { k_delta_l } => {
            check_finite("k_delta_l", k_delta_l)?;
            0.5 + 0.5 * visibility * k_delta_l.abs().sin()
        }
    })
}

/// `S = (2/k_max)|dP±/dL_AB|`, evaluated analytically.
pub fn sensitivity(tie: &TieInput, l_ab: f64) -> f64 {
    let (k1, k2) = (tie.k1(), tie.k2());
    let slope = tie.p1() * k1 * (k1 * l_ab).sin() + tie.p2() * k2 * (k2 * l_ab).sin();
    slope.abs() / tie.k_max()
}

/// Signed slope `dP+/dL_AB` of the TIE fringe.
pub fn fringe_slope(tie: &TieInput, l_ab: f64) -> f64 {
    let (k1, k2) = (tie.k1(), tie.k2());
    -0.5 * (tie.p1() * k1 * (k1 * l_ab).sin() + tie.p2() * k2 * (k2 * l_ab).sin())
}

/// Monochromatic sensitivity `S = V|sin φ|`.
pub fn standard_sensitivity(visibility: f64, phi: f64) -> Result<f64> {
    check_range("visibility", visibility, 0.0, 1.0)?;
    Ok(visibility * phi.sin().abs())
}

/// Which-way and which-phase probabilities for a small arm shift of the
/// κ = 3, p1 = ½ state at `k1·L0 = π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallShift {
    /// `1 − (k1δL)²/4`
    pub p_ww_approx: f64,
    /// `½(1 + |k1δL|)`
    pub p_wp_approx: f64,
    /// `(1 + D)/2` with D at the shifted difference.
    pub p_ww_exact: f64,
    /// `P+(L0 + |δL|)` from the exact fringe.
    pub p_wp_exact: f64,
    /// `|k1δL|` exceeds [`SMALL_SHIFT_WARN`].
    pub outside_small_regime: bool,
}

pub fn tie_small_shift(tie: &TieInput, delta_l: f64) -> Result<SmallShift> {
    if (tie.kappa() - 3.0).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "small-shift expansion needs kappa = 3, got {}",
            tie.kappa()
        )));
    }
    if (tie.p1() - 0.5).abs() > 1e-12 {
        return Err(Error::InvalidConfig(format!(
            "small-shift expansion needs p1 = 1/2, got {}",
            tie.p1()
        )));
    }
    let x = tie.k1() * delta_l;
    check_range("|k1 delta_l|", x.abs(), 0.0, SMALL_SHIFT_LIMIT)?;
    let l0 = FRAC_PI_2 / tie.k1();
    let d = tie_distinguishability(tie, l0 + delta_l);
    Ok(SmallShift {
        p_ww_approx: 1.0 - x * x / 4.0,
        p_wp_approx: 0.5 * (1.0 + x.abs()),
        p_ww_exact: 0.5 * (1.0 + d),
        p_wp_exact: tie_fringe(tie, l0 + delta_l.abs()).p_plus,
        outside_small_regime: x.abs() > SMALL_SHIFT_WARN,
    })
}

/// Bound on which-phase guessing with a standard detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardWpBound {
    /// `½[1 + |sin α|·sin(k|δL|)]`
    pub exact: f64,
    /// `½(1 + k|α δL|)`
    pub small_parameter: f64,
    /// `(1 + |cos α|)/2`
    pub p_ww: f64,
    /// `1 − α²/4`
    pub p_ww_small_parameter: f64,
}

pub fn standard_wp_bound(det: &DetectorModel, k: f64, delta_l: f64) -> StandardWpBound {
    let alpha = det.detector_alpha();
    let kdl = (k * delta_l).abs();
    StandardWpBound {
        exact: 0.5 * (1.0 + alpha.sin().abs() * kdl.sin()),
        small_parameter: 0.5 * (1.0 + kdl * alpha.abs()),
        p_ww: 0.5 * (1.0 + alpha.cos().abs()),
        p_ww_small_parameter: 1.0 - alpha * alpha / 4.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AuditMode {
    Orthogonal,
    Discrete { k_delta_l: f64 },
}

/// Evaluates the WW/WP duality inequality for the chosen measurement setting.
pub fn duality_audit(p_ww: f64, p_wp: f64, mode: AuditMode) -> Result<DualityReport> {
    check_range("P_WW", p_ww, 0.5, 1.0)?;
    check_range("P_WP", p_wp, 0.5, 1.0)?;
    let ww = (2.0 * p_ww - 1.0).powi(2);
    Ok(match mode {
        AuditMode::Orthogonal => DualityReport::new(Inequality::OrthogonalWwWp, ww + (2.0 * p_wp - 1.0).powi(2)),
        AuditMode::Discrete { k_delta_l } => {
            check_finite("k_delta_l", k_delta_l)?;
            let excess = 2.0 * p_wp - 1.0;
            let sine = k_delta_l.abs().sin();
            let wp = if sine == 0.0 {
                // no phase information is available at zero shift
                if excess.abs() <= TIGHT_TOLERANCE {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (excess / sine).powi(2)
            };
            DualityReport::new(Inequality::DiscreteWwWp { k_delta_l }, ww + wp)
        }
    })
}

/// `D² + V² ≤ 1`.
pub fn wave_particle_bound(d: f64, visibility: f64) -> Result<DualityReport> {
    check_range("distinguishability", d, 0.0, 1.0)?;
    check_range("visibility", visibility, 0.0, 1.0)?;
    Ok(DualityReport::new(
        Inequality::WaveParticle,
        d * d + visibility * visibility,
    ))
}

/// Sensitivity-distinguishability ellipse; `κ = 1` is the circle `S² + D² ≤ 1`.
pub fn sd_ellipse_bound(s: f64, d: f64, kappa: Kappa) -> Result<DualityReport> {
    check_range("sensitivity", s, 0.0, 1.0)?;
    check_range("distinguishability", d, 0.0, 1.0)?;
    if let Kappa::Finite(k) = kappa {
        check_range("kappa", k, 1.0, f64::INFINITY)?;
    }
    let (center, half_axis) = kappa.ellipse_axes();
    let lhs = ((s - center) / half_axis).powi(2) + d * d;
    let inequality = match kappa {
        Kappa::Finite(1.0) => Inequality::SensitivityCircle,
        _ => Inequality::SensitivityEllipse { kappa },
    };
    Ok(DualityReport::new(inequality, lhs))
}

/// Largest sensitivity on the upper branch of the ellipse at distinguishability
/// `d`: `(κ−1)/2κ + ((κ+1)/2κ)·√(1 − D²)`.
pub fn sd_upper_bound(d: f64, kappa: Kappa) -> Result<f64> {
    check_range("distinguishability", d, 0.0, 1.0)?;
    let (center, half_axis) = kappa.ellipse_axes();
    Ok(center + half_axis * (1.0 - d * d).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::TieInput;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn tie(p1: f64, kappa: f64) -> TieInput {
        TieInput::with_weight(p1, kappa).unwrap()
    }

    #[test]
    fn distinguishability_from_overlap_cases() {
        assert_eq!(distinguishability_from_overlap(Complex64::new(0.0, 0.0)).unwrap(), 1.0);
        assert_eq!(distinguishability_from_overlap(Complex64::new(0.0, 1.0)).unwrap(), 0.0);
        let d = distinguishability_from_overlap(Complex64::from_polar(0.6, 2.0)).unwrap();
        assert!(close(d, 0.8, 1e-15));
        assert!(distinguishability_from_overlap(Complex64::new(1.0, 0.5)).is_err());
    }

    #[test]
    fn tie_distinguishability_cases() {
        // Δk·L_AB = π
        assert!(close(tie_distinguishability(&tie(0.5, 3.0), PI / 2.0), 1.0, 1e-15));
        assert_eq!(tie_distinguishability(&tie(0.0, 3.0), 0.77), 0.0);
        assert!(close(
            tie_distinguishability(&tie(0.25, 3.0), PI / 2.0),
            3f64.sqrt() / 2.0,
            1e-15
        ));
    }

    #[test]
    fn purity_cases() {
        let t = tie(0.5, 3.0);
        let (a, _) = t.arm_states(0.2, 0.0);
        assert!(close(purity(&a, &a), 1.0, 1e-15));
        let (a, b) = t.arm_states(PI / 2.0, 0.0);
        assert!(purity(&a, &b) < 1e-15);
    }

    #[test]
    fn ww_and_wp_probabilities() {
        assert_eq!(ww_probability(1.0).unwrap(), 1.0);
        assert_eq!(ww_probability(0.0).unwrap(), 0.5);
        assert!(close(ww_probability(0.9).unwrap(), 0.95, 1e-15));
        assert!(ww_probability(1.5).is_err());

        assert_eq!(wp_probability(1.0, WpMode::OrthogonalMax).unwrap(), 1.0);
        assert_eq!(wp_probability(0.3, WpMode::Discrete { k_delta_l: 0.0 }).unwrap(), 0.5);
        assert!(close(
            wp_probability(1.0, WpMode::Discrete { k_delta_l: -PI / 2.0 }).unwrap(),
            1.0,
            1e-15
        ));
        assert!(wp_probability(-0.1, WpMode::OrthogonalMax).is_err());
    }

    #[test]
    fn sensitivity_cases() {
        assert!(close(sensitivity(&tie(0.5, 3.0), PI / 2.0), 1.0 / 3.0, 1e-15));
        assert_eq!(sensitivity(&tie(0.3, 5.0), 0.0), 0.0);
        assert!(close(sensitivity(&tie(0.75, 3.0), PI / 2.0), 0.0, 1e-15));
        // closed form |p1/3 sin x + p2 sin 3x| for κ = 3
        let t = tie(0.2, 3.0);
        for &x in &[0.1, 0.9, 2.0] {
            let expect = (0.2 / 3.0 * f64::sin(x) + 0.8 * f64::sin(3.0 * x)).abs();
            assert!(close(sensitivity(&t, x), expect, 1e-15));
        }
    }

    #[test]
    fn small_shift_values() {
        let t = tie(0.5, 3.0);
        let zero = tie_small_shift(&t, 0.0).unwrap();
        assert_eq!((zero.p_ww_approx, zero.p_wp_approx), (1.0, 0.5));
        assert!(close(zero.p_ww_exact, 1.0, 1e-15) && close(zero.p_wp_exact, 0.5, 1e-15));

        let s = tie_small_shift(&t, 0.01).unwrap();
        assert!(close(s.p_ww_approx, 0.999975, 1e-15));
        assert!(close(s.p_wp_approx, 0.505, 1e-15));
        assert!(close(s.p_ww_exact, 0.5 * (1.0 + 0.01f64.cos()), 1e-15));
        let oracle = 0.5 * (1.0 + 0.5 * (0.03f64.sin() - 0.01f64.sin()));
        assert!(close(s.p_wp_exact, oracle, 1e-15));
        assert!(close(s.p_wp_exact, 0.505, 2e-6));
        assert!(!s.outside_small_regime);

        assert!(tie_small_shift(&t, 0.2).unwrap().outside_small_regime);
        assert!(tie_small_shift(&t, 0.31).is_err());
        assert!(tie_small_shift(&tie(0.4, 3.0), 0.01).is_err());
        assert!(tie_small_shift(&tie(0.5, 5.0), 0.01).is_err());
    }

    #[test]
    fn small_shift_remainders_follow_taylor_series() {
        // (1+cos x)/2 − (1 − x²/4) = x⁴/48 − …
        // ¼(sin 3x − sin x) − x/2 = −13x³/12 + …
        let t = tie(0.5, 3.0);
        for i in 1..=50 {
            let x = 0.001 * i as f64;
            let s = tie_small_shift(&t, x).unwrap();
            assert!((s.p_ww_exact - s.p_ww_approx).abs() <= x.powi(3));
            let wp_gap = s.p_wp_approx - s.p_wp_exact;
            assert!((wp_gap / x.powi(3) - 13.0 / 12.0).abs() < 0.01, "x = {x}");
        }
    }

    #[test]
    fn standard_bound_cases() {
        let perfect = DetectorModel::from_alpha(0.0).unwrap();
        assert_eq!(standard_wp_bound(&perfect, 1.0, 0.3).exact, 0.5);
        let none = DetectorModel::from_alpha(PI / 2.0).unwrap();
        assert!(close(
            standard_wp_bound(&none, 2.0, -0.1).exact,
            0.5 * (1.0 + 0.2f64.sin()),
            1e-15
        ));
        let det = DetectorModel::from_alpha(0.1).unwrap();
        let b = standard_wp_bound(&det, 1.0, 0.01);
        assert!(close(b.exact, 0.5 * (1.0 + 0.1f64.sin() * 0.01f64.sin()), 1e-12));
        assert!(close(b.exact, 0.50050, 1e-6));
        assert!(close(b.small_parameter, 0.5005, 1e-12));
        assert!(close(b.p_ww, 0.5 * (1.0 + 0.1f64.cos()), 1e-12));
        assert!(close(b.p_ww_small_parameter, 1.0 - 0.0025, 1e-15));
    }

    #[test]
    fn duality_audit_cases() {
        let r = duality_audit(0.95, 0.5, AuditMode::Orthogonal).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(close(r.lhs, 0.81, 1e-12));
        let r = duality_audit(1.0, 1.0, AuditMode::Orthogonal).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.lhs, 2.0);

        let s = tie_small_shift(&tie(0.5, 3.0), 0.01).unwrap();
        let r = duality_audit(s.p_ww_exact, s.p_wp_exact, AuditMode::Discrete { k_delta_l: 0.01 }).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.lhs >= 1.99);

        let r = duality_audit(0.7, 0.5, AuditMode::Discrete { k_delta_l: 0.0 }).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        let r = duality_audit(0.7, 0.6, AuditMode::Discrete { k_delta_l: 0.0 }).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(duality_audit(0.4, 0.6, AuditMode::Orthogonal).is_err());
    }

    #[test]
    fn ellipse_cases() {
        let r = sd_ellipse_bound(1.0 / 3.0, 1.0, Kappa::Finite(3.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Tight);
        let r = sd_ellipse_bound(0.0, 0.0, Kappa::Finite(3.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(close(r.lhs, 0.25, 1e-15));
        let r = sd_ellipse_bound(1.0, 0.0, Kappa::Finite(1.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Tight);
        assert_eq!(r.inequality, Inequality::SensitivityCircle);
        let r = sd_ellipse_bound(0.5, 1.0, Kappa::Infinite).unwrap();
        assert_eq!(r.verdict, Verdict::Tight);
        assert!(sd_ellipse_bound(0.5, 1.0, Kappa::Finite(0.5)).is_err());
        assert!(sd_ellipse_bound(1.2, 0.0, Kappa::Finite(3.0)).is_err());
    }

    #[test]
    fn kappa_parsing() {
        assert_eq!("inf".parse::<Kappa>().unwrap(), Kappa::Infinite);
        assert_eq!(" 7 ".parse::<Kappa>().unwrap(), Kappa::Finite(7.0));
        assert!("0.5".parse::<Kappa>().is_err());
        assert!("x".parse::<Kappa>().is_err());
        assert_eq!(Kappa::Infinite.to_string(), "inf");
        let k: Kappa = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(k, Kappa::Infinite);
        let k: Kappa = serde_json::from_str("3.0").unwrap();
        assert_eq!(k, Kappa::Finite(3.0));
    }

    #[test]
    fn wave_particle_cases() {
        assert_eq!(wave_particle_bound(0.6, 0.8).unwrap().verdict, Verdict::Tight);
        assert_eq!(wave_particle_bound(0.6, 0.5).unwrap().verdict, Verdict::Satisfied);
        assert_eq!(wave_particle_bound(0.9, 0.9).unwrap().verdict, Verdict::Violated);
    }
}
