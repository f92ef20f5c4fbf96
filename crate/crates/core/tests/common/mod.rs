//! Oracles shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, DiscreteCDF};
use std::f64::consts::TAU;
use tiemzi::interferometry::{polychromatic_instant, ArmGeometry, DetectorModel, PacketComponent, PolychromaticPacket};
use tiemzi::Complex64;

pub struct Draws(ChaCha8Rng);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

/// Packet of `n` components with frequencies at least 0.06 apart.
pub fn random_packet(draws: &mut Draws, n: usize) -> PolychromaticPacket {
    let raw: Vec<(Complex64, f64, f64)> = (0..n)
        .map(|j| {
            let amp = Complex64::from_polar(draws.range(0.1, 1.0), draws.range(0.0, TAU));
            let k = draws.range(0.5, 3.0);
            let omega = 1.0 + 0.1 * j as f64 + draws.range(0.0, 0.04);
            (amp, k, omega)
        })
        .collect();
    let norm = raw.iter().map(|(a, _, _)| a.norm_sqr()).sum::<f64>().sqrt();
    PolychromaticPacket::new(
        raw.into_iter()
            .map(|(amplitude, k, omega)| PacketComponent {
                amplitude: amplitude / norm,
                k,
                omega,
            })
            .collect(),
    )
    .unwrap()
}

/// Detection-weighted time average of the instantaneous `P+` by the
/// trapezoid rule over `periods` of the slowest beat.
pub fn time_averaged_p_plus(
    packet: &PolychromaticPacket,
    geom: &ArmGeometry,
    det: &DetectorModel,
    periods: f64,
) -> f64 {
    let omegas: Vec<f64> = packet.components().iter().map(|c| c.omega).collect();
    let mut min_gap = f64::INFINITY;
    let mut max_gap: f64 = 0.0;
    for (i, a) in omegas.iter().enumerate() {
        for b in &omegas[i + 1..] {
            min_gap = min_gap.min((a - b).abs());
            max_gap = max_gap.max((a - b).abs());
        }
    }
    if omegas.len() < 2 {
        let f = polychromatic_instant(packet, geom, det, 0.0);
        return f.fringe.p_plus;
    }
    let window = periods * TAU / min_gap;
    let steps = (window / (TAU / max_gap / 16.0)).ceil() as usize;
    let dt = window / steps as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..=steps {
        let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
        let f = polychromatic_instant(packet, geom, det, i as f64 * dt);
        num += w * f.intensity * f.fringe.p_plus;
        den += w * f.intensity;
    }
    num / den
}

/// Probability that the majority of `n` trials with success probability `p`
/// lands on the side the slope sign picks, balanced counts going to `+`.
pub fn binomial_sign_success(n: u64, p_plus: f64, slope_positive: bool) -> f64 {
    let bin = Binomial::new(p_plus, n).unwrap();
    let half = n / 2;
    if slope_positive {
        // 2N+ >= n
        let need = n.div_ceil(2);
        1.0 - if need == 0 { 0.0 } else { bin.cdf(need - 1) }
    } else {
        // 2N+ <= n
        bin.cdf(half)
    }
}

pub fn std_normal_cdf(x: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    Normal::new(0.0, 1.0).unwrap().cdf(x)
}
