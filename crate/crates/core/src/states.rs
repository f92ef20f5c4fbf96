//! Translational-internal entangled (TIE) input states and the internal
//! (spin) states they carry through the interferometer arms.
//!
//! Units: ħ = 1 and M = 1 unless a [`PhysicalParams`] says otherwise. Only the
//! products `k·L` matter, so lengths are usually quoted in units of `1/k1`.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{check_finite, Error, Result};

/// Tolerance on the squared norm accepted by the constructors before the
/// amplitudes are renormalized.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Bichromatic input `c1|k1⟩|1⟩ + c2|k2⟩|2⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieInput {
    c1: Complex64,
    c2: Complex64,
    k1: f64,
    k2: f64,
}

impl TieInput {
    /// Validates and renormalizes the amplitudes.
    pub fn new(c1: Complex64, c2: Complex64, k1: f64, k2: f64) -> Result<Self> {
        for k in [k1, k2] {
            if !(k.is_finite() && k > 0.0) {
                return Err(Error::NonPositiveWavenumber(k));
            }
        }
        let (c1, c2) = normalize_pair(c1, c2)?;
        Ok(Self { c1, c2, k1, k2 })
    }

    /// Real non-negative amplitudes `√p1`, `√(1−p1)` with `k1 = 1`, `k2 = κ`.
    pub fn with_weight(p1: f64, kappa: f64) -> Result<Self> {
        crate::error::check_range("p1", p1, 0.0, 1.0)?;
        Self::new(
            Complex64::new(p1.sqrt(), 0.0),
            Complex64::new((1.0 - p1).sqrt(), 0.0),
            1.0,
            kappa,
        )
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn c2(&self) -> Complex64 {
        self.c2
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn p1(&self) -> f64 {
        self.c1.norm_sqr()
    }

    pub fn p2(&self) -> f64 {
        self.c2.norm_sqr()
    }

    /// Wavenumber ratio `k2/k1`.
    pub fn kappa(&self) -> f64 {
        self.k2 / self.k1
    }

    /// `k2 − k1`.
    pub fn delta_k(&self) -> f64 {
        self.k2 - self.k1
    }

    pub fn k_max(&self) -> f64 {
        self.k1.max(self.k2)
    }

    /// Internal state after travelling a distance `x` through the field region.
    pub fn internal_state_at(&self, x: f64) -> SpinState {
        SpinState {
            a1: self.c1 * Complex64::cis(self.k1 * x),
            a2: self.c2 * Complex64::cis(self.k2 * x),
        }
    }

    /// Internal states arriving at the beam merger from arms A and B.
    pub fn arm_states(&self, l_a: f64, l_b: f64) -> (SpinState, SpinState) {
        (self.internal_state_at(l_a), self.internal_state_at(l_b))
    }

    /// Which-way measurement basis built from the measuring party's reference
    /// arm lengths:
    ///
    /// `|ψ̃_{A,B}⟩ = (|1⟩ ± i·e^{iΦ}|2⟩)/√2`, with
    /// `Φ = (k2−k1)(L_A,ref + L_B,ref)/2 + arg(c1* c2)`.
    ///
    /// When the reference lengths have the same sum as the true lengths the
    /// outcome `ψ̃_A` after path A has probability
    /// `½[1 + 2√(p1p2)·sin(Δk·L_AB/2)]`, which is `(1+D)/2` whenever the sine is
    /// non-negative. For a negative sine the labels trade places.
    pub fn ww_basis(&self, l_a_ref: f64, l_b_ref: f64) -> MeasurementBasis {
        let phase = self.delta_k() * (l_a_ref + l_b_ref) / 2.0 + (self.c1.conj() * self.c2).arg();
        let rotated = Complex64::i() * Complex64::cis(phase) * FRAC_1_SQRT_2;
        let up = Complex64::new(FRAC_1_SQRT_2, 0.0);
        MeasurementBasis {
            a: SpinState { a1: up, a2: rotated },
            b: SpinState { a1: up, a2: -rotated },
        }
    }
}

/// Energy bookkeeping for a TIE state: total energy, internal level energies
/// and mass, with ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub energy: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub mass: f64,
}

impl PhysicalParams {
    /// `k_i = √(2M(E − ε_i))`.
    pub fn momenta(&self) -> Result<(f64, f64)> {
        check_finite("energy", self.energy)?;
        check_finite("mass", self.mass)?;
        if self.mass.is_nan() || self.mass <= 0.0 {
            return Err(Error::OutOfRange {
                name: "mass",
                value: self.mass,
                min: f64::MIN_POSITIVE,
                max: f64::INFINITY,
            });
        }
        let k = |level: f64| -> Result<f64> {
            check_finite("internal level", level)?;
            if self.energy < level {
                return Err(Error::EnergyBelowLevel {
                    energy: self.energy,
                    level,
                });
            }
            Ok((2.0 * self.mass * (self.energy - level)).sqrt())
        };
        Ok((k(self.eps1)?, k(self.eps2)?))
    }

    /// Total energy of a component with wavenumber `k` on level `eps`.
    pub fn energy_of(&self, k: f64, eps: f64) -> f64 {
        k * k / (2.0 * self.mass) + eps
    }
}

/// Normalized two-component internal state `a1|1⟩ + a2|2⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    a1: Complex64,
    a2: Complex64,
}

impl SpinState {
    pub fn new(a1: Complex64, a2: Complex64) -> Result<Self> {
        let (a1, a2) = normalize_pair(a1, a2)?;
        Ok(Self { a1, a2 })
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a1.norm_sqr() + self.a2.norm_sqr()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn overlap(&self, other: &SpinState) -> Complex64 {
        self.a1.conj() * other.a1 + self.a2.conj() * other.a2
    }

    /// Relative phase `arg(a1* a2)`.
    pub fn relative_phase(&self) -> f64 {
        (self.a1.conj() * self.a2).arg()
    }
}

/// `⟨a|b⟩`.
pub fn overlap(a: &SpinState, b: &SpinState) -> Complex64 {
    a.overlap(b)
}

/// Pair of internal states whose outcomes are read as "path A" and "path B".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub a: SpinState,
    pub b: SpinState,
}

impl MeasurementBasis {
    /// Largest deviation from orthonormality.
    pub fn orthonormality_error(&self) -> f64 {
        let aa = (self.a.norm_sqr() - 1.0).abs();
        let bb = (self.b.norm_sqr() - 1.0).abs();
        let ab = self.a.overlap(&self.b).norm();
        aa.max(bb).max(ab)
    }

    pub fn states(&self) -> [&SpinState; 2] {
        [&self.a, &self.b]
    }
}

fn normalize_pair(a: Complex64, b: Complex64) -> Result<(Complex64, Complex64)> {
    for z in [a, b] {
        check_finite("amplitude", z.re)?;
        check_finite("amplitude", z.im)?;
    }
    let norm_sqr = a.norm_sqr() + b.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(Error::ZeroNorm);
    }
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm_sqr));
    }
    let scale = norm_sqr.sqrt().recip();
    Ok((a * scale, b * scale))
}
