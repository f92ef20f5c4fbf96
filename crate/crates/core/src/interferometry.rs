//! Output-port statistics of a balanced Mach-Zehnder interferometer.
//!
//! The beam merger maps `|A⟩ → (|+⟩ + |−⟩)/√2` and `|B⟩ → (|+⟩ − |−⟩)/√2`.
//! Which-way detectors enter only through the overlap `⟨d_A|d_B⟩`.

use num_complex::Complex64;

use crate::error::{check_finite, check_range, Error, Result};
use crate::states::{MeasurementBasis, SpinState, TieInput};

/// Orthonormality slack accepted for a measurement basis.
pub const BASIS_TOLERANCE: f64 = 1e-9;

/// Port probabilities `(P+, P−)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fringe {
    pub p_plus: f64,
    pub p_minus: f64,
}

impl Fringe {
    /// Builds `(½(1 + x), ½(1 − x))`, clipping rounding excursions of `x`
    /// beyond ±1.
    pub fn from_contrast_term(x: f64) -> Self {
        let x = x.clamp(-1.0, 1.0);
        Self {
            p_plus: 0.5 * (1.0 + x),
            p_minus: 0.5 * (1.0 - x),
        }
    }

    pub fn sum(&self) -> f64 {
        self.p_plus + self.p_minus
    }
}

/// Arm lengths with a signed shift of their difference.
///
/// The shift is split antisymmetrically, `L_A = L_A0 + δL/2` and
/// `L_B = L_B0 − δL/2`, so `L_AB = (L_AB)₀ + δL` while `L_A + L_B` stays at
/// its nominal value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmGeometry {
    pub l_a0: f64,
    pub l_b0: f64,
    pub delta_l: f64,
}

impl ArmGeometry {
    pub fn new(l_a0: f64, l_b0: f64, delta_l: f64) -> Result<Self> {
        check_finite("l_a0", l_a0)?;
        check_finite("l_b0", l_b0)?;
        check_finite("delta_l", delta_l)?;
        Ok(Self { l_a0, l_b0, delta_l })
    }

    /// Arms with nominal difference `l0` (`L_A0 = l0`, `L_B0 = 0`).
    pub fn with_difference(l0: f64, delta_l: f64) -> Result<Self> {
        Self::new(l0, 0.0, delta_l)
    }

    pub fn l_a(&self) -> f64 {
        self.l_a0 + self.delta_l / 2.0
    }

    pub fn l_b(&self) -> f64 {
        self.l_b0 - self.delta_l / 2.0
    }

    /// `(L_AB)₀ = L_A0 − L_B0`.
    pub fn nominal_difference(&self) -> f64 {
        self.l_a0 - self.l_b0
    }

    /// `L_AB = (L_AB)₀ + δL`.
    pub fn difference(&self) -> f64 {
        self.nominal_difference() + self.delta_l
    }
}

/// Standard which-way detector, described by `⟨d_A|d_B⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorModel {
    overlap: Complex64,
}

impl DetectorModel {
    pub fn from_overlap(overlap: Complex64) -> Result<Self> {
        check_finite("detector overlap", overlap.re)?;
        check_finite("detector overlap", overlap.im)?;
        let magnitude = overlap.norm();
        check_range("|<d_A|d_B>|", magnitude, 0.0, 1.0 + 1e-12)?;
        let overlap = if magnitude > 1.0 { overlap / magnitude } else { overlap };
        Ok(Self { overlap })
    }

    /// Detector with real overlap `√(1 − D²)`.
    pub fn from_distinguishability(d: f64) -> Result<Self> {
        check_range("distinguishability", d, 0.0, 1.0)?;
        Ok(Self {
            overlap: Complex64::new((1.0 - d * d).sqrt(), 0.0),
        })
    }

    /// Detector with `D = |cos α|` and real overlap `|sin α|`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        check_finite("detector_alpha", alpha)?;
        Ok(Self {
            overlap: Complex64::new(alpha.sin().abs(), 0.0),
        })
    }

    pub fn overlap(&self) -> Complex64 {
        self.overlap
    }

    /// `D = √(1 − |⟨d_A|d_B⟩|²)`.
    pub fn distinguishability(&self) -> f64 {
        (1.0 - self.overlap.norm_sqr()).max(0.0).sqrt()
    }

    /// `Ṽ = |⟨d_A|d_B⟩|`.
    pub fn visibility(&self) -> f64 {
        self.overlap.norm()
    }

    /// The angle `α ∈ [0, π/2]` with `|cos α| = D`.
    pub fn detector_alpha(&self) -> f64 {
        self.distinguishability().clamp(0.0, 1.0).acos()
    }

    /// Offset added to `k·L_AB` in the fringe: `arg⟨d_B|d_A⟩`.
    pub fn fringe_phase(&self) -> f64 {
        self.overlap.conj().arg()
    }
}

/// One plane-wave component `c·e^{i(kx − ωt)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketComponent {
    pub amplitude: Complex64,
    pub k: f64,
    pub omega: f64,
}

/// Unentangled polychromatic input `f(x, t) = Σ c_j e^{i(k_j x − ω_j t)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolychromaticPacket {
    components: Vec<PacketComponent>,
}

impl PolychromaticPacket {
    pub fn new(mut components: Vec<PacketComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyPacket);
        }
        for c in &components {
            if !(c.k.is_finite() && c.k > 0.0) {
                return Err(Error::NonPositiveWavenumber(c.k));
            }
            check_finite("omega", c.omega)?;
            check_finite("amplitude", c.amplitude.re)?;
            check_finite("amplitude", c.amplitude.im)?;
        }
        let norm_sqr: f64 = components.iter().map(|c| c.amplitude.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::ZeroNorm);
        }
        if (norm_sqr - 1.0).abs() > crate::states::NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let scale = norm_sqr.sqrt().recip();
        for c in &mut components {
            c.amplitude *= scale;
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[PacketComponent] {
        &self.components
    }

    /// `f(x, t)`.
    pub fn field(&self, x: f64, t: f64) -> Complex64 {
        self.components
            .iter()
            .map(|c| c.amplitude * Complex64::cis(c.k * x - c.omega * t))
            .sum()
    }

    fn check_distinct_frequencies(&self) -> Result<()> {
        for (i, a) in self.components.iter().enumerate() {
            if self.components[i + 1..].iter().any(|b| b.omega == a.omega) {
                return Err(Error::RepeatedFrequency(a.omega));
            }
        }
        Ok(())
    }
}

/// Phase `θ = k·L̄_AB` picked up in a field-free stretch before the merger.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldFreeGeometry {
    pub theta: f64,
}

/// Path-basis density matrix `[[ρ_AA, ρ_AB], [ρ_BA, ρ_BB]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    pub elements: [[Complex64; 2]; 2],
}

impl DensityMatrix2 {
    pub fn trace(&self) -> Complex64 {
        self.elements[0][0] + self.elements[1][1]
    }

    /// Largest `|ρ_ij − ρ_ji*|`.
    pub fn hermiticity_error(&self) -> f64 {
        let e = &self.elements;
        let diag = e[0][0].im.abs().max(e[1][1].im.abs());
        diag.max((e[0][1] - e[1][0].conj()).norm())
    }

    /// Eigenvalues in ascending order (Hermitian closed form).
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.elements[0][0].re;
        let d = self.elements[1][1].re;
        let half_gap = (0.25 * (a - d) * (a - d) + self.elements[0][1].norm_sqr()).sqrt();
        let mid = 0.5 * (a + d);
        [mid - half_gap, mid + half_gap]
    }

    /// Probability of the merger port `|±⟩ = (|A⟩ ± |B⟩)/√2`.
    pub fn port_probabilities(&self) -> Fringe {
        let e = &self.elements;
        let coherence = e[0][1].re + e[1][0].re;
        let total = e[0][0].re + e[1][1].re;
        Fringe {
            p_plus: 0.5 * (total + coherence),
            p_minus: 0.5 * (total - coherence),
        }
    }
}

/// Joint law of (output port, internal outcome) for one atom, plus the latent
/// path label used to score which-way guesses.
///
/// Indices: port 0 is `+`, port 1 is `−`; outcome 0 is "A", outcome 1 is "B".
/// The latent path is drawn from `P(path | outcome) ∝ |⟨ψ̃_outcome|ψ_path⟩|²`,
/// which reproduces the outcome marginal of `probs` and the single-open-path
/// statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    pub probs: [[f64; 2]; 2],
    pub path_a_given_outcome: [f64; 2],
}

impl JointDistribution {
    pub fn port_marginal(&self) -> Fringe {
        Fringe {
            p_plus: self.probs[0][0] + self.probs[0][1],
            p_minus: self.probs[1][0] + self.probs[1][1],
        }
    }

    pub fn outcome_marginal(&self) -> [f64; 2] {
        [self.probs[0][0] + self.probs[1][0], self.probs[0][1] + self.probs[1][1]]
    }

    /// Probability that the outcome label differs from the latent path.
    pub fn wrong_path_probability(&self) -> f64 {
        let [pa, pb] = self.outcome_marginal();
        pa * (1.0 - self.path_a_given_outcome[0]) + pb * self.path_a_given_outcome[1]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().flatten().sum()
    }
}

/// `P± = ½(1 ± V cos φ)`.
pub fn standard_fringe(visibility: f64, phi: f64) -> Result<Fringe> {
    check_range("visibility", visibility, 0.0, 1.0)?;
    Ok(Fringe::from_contrast_term(visibility * phi.cos()))
}

/// `P± = ½ ± (V/2)·cos[k(L0 + δL)]`.
pub fn unbalanced_fringe(visibility: f64, k: f64, l0: f64, delta_l: f64) -> Result<Fringe> {
    check_range("visibility", visibility, 0.0, 1.0)?;
    Ok(Fringe::from_contrast_term(visibility * (k * (l0 + delta_l)).cos()))
}

/// Port statistics at time `t` for a polychromatic packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantFringe {
    /// Conditional port probabilities given a detection at `t`.
    pub fringe: Fringe,
    /// Detection intensity `(|f(L_A,t)|² + |f(L_B,t)|²)/2`; time-averages to 1.
    pub intensity: f64,
}

/// Port probabilities at time `t` from the combined particle-detector state
/// `(f(L_A,t)|A⟩|d_A⟩ + f(L_B,t)|B⟩|d_B⟩)/√2` after the merger.
///
/// Averaging `fringe` weighted by `intensity` over a long window gives
/// [`polychromatic_avg`].
pub fn polychromatic_instant(
    packet: &PolychromaticPacket,
    geom: &ArmGeometry,
    det: &DetectorModel,
    t: f64,
) -> InstantFringe {
    let fa = packet.field(geom.l_a(), t);
    let fb = packet.field(geom.l_b(), t);
    let intensity = 0.5 * (fa.norm_sqr() + fb.norm_sqr());
    let cross = (fa.conj() * fb * det.overlap()).re;
    let fringe = if intensity > 0.0 {
        Fringe::from_contrast_term(cross / intensity)
    } else {
        Fringe::from_contrast_term(0.0)
    };
    InstantFringe { fringe, intensity }
}

/// Time-averaged `⟨P±⟩ = ½{1 ± Ṽ Σ_j |c_j|² cos(k_j L_AB + φ)}` with
/// `φ = arg⟨d_B|d_A⟩`.
pub fn polychromatic_avg(packet: &PolychromaticPacket, l_ab: f64, det: &DetectorModel) -> Result<Fringe> {
    packet.check_distinct_frequencies()?;
    let phi = det.fringe_phase();
    let sum: f64 = packet
        .components()
        .iter()
        .map(|c| c.amplitude.norm_sqr() * (c.k * l_ab + phi).cos())
        .sum();
    Ok(Fringe::from_contrast_term(det.visibility() * sum))
}

/// TIE fringe `P± = p1·½(1 ± cos k1 L_AB) + p2·½(1 ± cos k2 L_AB)`.
pub fn tie_fringe(tie: &TieInput, l_ab: f64) -> Fringe {
    let x = tie.p1() * (tie.k1() * l_ab).cos() + tie.p2() * (tie.k2() * l_ab).cos();
    Fringe::from_contrast_term(x)
}

/// Exact joint distribution of (port, internal outcome) for a TIE atom:
/// `P(s, m) = |⟨ψ̃_m|ψ_A ± ψ_B⟩/2|²`.
pub fn joint_outcome_dist(tie: &TieInput, geom: &ArmGeometry, basis: &MeasurementBasis) -> Result<JointDistribution> {
    let err = basis.orthonormality_error();
    if err > BASIS_TOLERANCE {
        return Err(Error::NonOrthonormalBasis(err));
    }
    let (psi_a, psi_b) = tie.arm_states(geom.l_a(), geom.l_b());
    let mut probs = [[0.0; 2]; 2];
    let mut path_a_given_outcome = [0.5; 2];
    for (m, outcome) in basis.states().into_iter().enumerate() {
        let amp_a = outcome.overlap(&psi_a);
        let amp_b = outcome.overlap(&psi_b);
        probs[0][m] = (0.5 * (amp_a + amp_b)).norm_sqr();
        probs[1][m] = (0.5 * (amp_a - amp_b)).norm_sqr();
        let weight = amp_a.norm_sqr() + amp_b.norm_sqr();
        if weight > 0.0 {
            path_a_given_outcome[m] = amp_a.norm_sqr() / weight;
        }
    }
    Ok(JointDistribution {
        probs,
        path_a_given_outcome,
    })
}

/// Joint distribution for a monochromatic atom (wavenumber `k`) marked by a
/// standard detector read out in its optimal symmetric basis.
///
/// Port and detector outcome are independent: `P(s, m) = ½·P_s` with
/// `P± = ½(1 ± Ṽ cos(k L_AB + arg⟨d_B|d_A⟩))`, and the outcome names the
/// true path with probability `(1 + D)/2`.
pub fn standard_joint_dist(det: &DetectorModel, k: f64, l_ab: f64) -> JointDistribution {
    let ports = Fringe::from_contrast_term(det.visibility() * (k * l_ab + det.fringe_phase()).cos());
    let correct = 0.5 * (1.0 + det.distinguishability());
    JointDistribution {
        probs: [
            [0.5 * ports.p_plus, 0.5 * ports.p_plus],
            [0.5 * ports.p_minus, 0.5 * ports.p_minus],
        ],
        path_a_given_outcome: [correct, 1.0 - correct],
    }
}

/// Path-basis state after tracing out the spin:
/// `ρ = ½[[1, ⟨ψ_B|ψ_A⟩e^{iθ}], [⟨ψ_A|ψ_B⟩e^{−iθ}, 1]]`.
pub fn reduced_density(psi_a: &SpinState, psi_b: &SpinState, ff: &FieldFreeGeometry) -> DensityMatrix2 {
    let coherence = 0.5 * psi_b.overlap(psi_a) * Complex64::cis(ff.theta);
    let half = Complex64::new(0.5, 0.0);
    DensityMatrix2 {
        elements: [[half, coherence], [coherence.conj(), half]],
    }
}

/// `P± = ½[1 ± |⟨ψ_B|ψ_A⟩| cos(θ + arg⟨ψ_B|ψ_A⟩)]`.
pub fn field_free_fringe(psi_a: &SpinState, psi_b: &SpinState, ff: &FieldFreeGeometry) -> Fringe {
    let o = psi_b.overlap(psi_a);
    Fringe::from_contrast_term(o.norm() * (ff.theta + o.arg()).cos())
}
