//! Reflection and transmission amplitudes for each energy zone.
//!
//! Matching the spin-up plane waves at `z = 0`,
//!
//! ```text
//! u(p, E) + R u(-p, E) = T u₂
//! ```
//!
//! gives `R = (1 - α)/(1 + α)` and `T = 2/(1 + α)` with
//! `α = q (E + 1) / (p (E - V0 + 1))` in the oscillatory zones. The tunneling
//! zones follow from `q → i q̃` (Dirac tunneling) and `q → -i q̃` (Klein
//! tunneling), which replaces `α` by `±i α̃`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{classify_zone, free_spinor, region2_spinor, Kinematics, StepConfig, Zone};
use crate::scalar::Real;

/// Points where the closed forms are replaced by their limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Limit {
    /// `E = m`: no incident momentum.
    Grazing,
    /// `E = V0 - m`: the region-II spinor normalization diverges.
    KleinEdge,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterAmplitudes<T> {
    pub r_amp: Complex<T>,
    pub t_amp: Complex<T>,
    /// `α` in the oscillatory zones, `α̃` in the tunneling zones.
    pub alpha: T,
    pub zone: Zone,
    pub limit: Option<Limit>,
}

impl<T: Real> ScatterAmplitudes<T> {
    /// Arg R in `(-π, π]`.
    pub fn reflection_phase(&self) -> T {
        principal_arg(self.r_amp)
    }
}

/// Argument in `(-π, π]`; a negative zero imaginary part still maps to `π`.
pub fn principal_arg<T: Real>(c: Complex<T>) -> T {
    let a = c.arg();
    if a <= -T::PI() {
        T::PI()
    } else {
        a
    }
}

fn require_momentum<T: Real>(kin: &Kinematics<T>) -> Result<()> {
    if kin.p == T::zero() {
        Err(Error::DegenerateIncidence)
    } else {
        Ok(())
    }
}

/// `α = q (e + 1) / (p (e - v0 + 1))`: positive in diffusion, negative in
/// the Klein zone.
pub fn alpha_oscillatory<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<T> {
    let kin = Kinematics::new(e, cfg)?;
    let q = kin.q().ok_or(Error::WrongZone { expected: "diffusion or klein", got: kin.zone })?;
    require_momentum(&kin)?;
    Ok(q * (e + T::one()) / (kin.p * (e - cfg.v0() + T::one())))
}

/// `α̃ = q̃ (e + 1) / (p (e - v0 + 1))`, positive in both tunneling zones.
///
/// At `e = v0 - 1` numerator and denominator vanish together; the limit
/// from inside the zone is `+∞`, which is what is returned.
pub fn alpha_tilde<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<T> {
    let kin = Kinematics::new(e, cfg)?;
    let qt = kin.qt().ok_or(Error::WrongZone { expected: "a tunneling zone", got: kin.zone })?;
    require_momentum(&kin)?;
    Ok(alpha_tilde_of(&kin, qt, cfg))
}

fn alpha_tilde_of<T: Real>(kin: &Kinematics<T>, qt: T, cfg: &StepConfig<T>) -> T {
    let denom = kin.e - cfg.v0() + T::one();
    if denom == T::zero() {
        T::infinity()
    } else {
        qt * (kin.e + T::one()) / (kin.p * denom)
    }
}

/// Amplitudes at energy `e`, in the zone picked by [`classify_zone`].
pub fn scatter<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<ScatterAmplitudes<T>> {
    let zone = classify_zone(e, cfg)?;
    scatter_in_zone(e, zone, cfg)
}

/// Amplitudes using the formulas of `zone`, valid on the closure of the
/// zone's interval. At `e = v0` this gives the two one-sided limits.
pub fn scatter_in_zone<T: Real>(e: T, zone: Zone, cfg: &StepConfig<T>) -> Result<ScatterAmplitudes<T>> {
    let kin = Kinematics::in_zone(e, zone, cfg)?;
    let zero = T::zero();
    let one = T::one();
    let two = one + one;
    let real = |x: T| Complex::new(x, zero);

    let x = e - cfg.v0();
    let denom = x + one;

    if kin.p == zero {
        // p → 0 drives |α| → ∞ unless region II is also at rest (no step).
        if cfg.v0() == zero {
            return Ok(ScatterAmplitudes { r_amp: real(zero), t_amp: real(one), alpha: one, zone, limit: Some(Limit::Grazing) });
        }
        let alpha = if zone == Zone::Klein { T::neg_infinity() } else { T::infinity() };
        return Ok(ScatterAmplitudes { r_amp: real(-one), t_amp: real(zero), alpha, zone, limit: Some(Limit::Grazing) });
    }

    if zone.is_evanescent() && denom == zero {
        return Ok(ScatterAmplitudes {
            r_amp: real(-one),
            t_amp: real(zero),
            alpha: T::infinity(),
            zone,
            limit: Some(Limit::KleinEdge),
        });
    }

    let (alpha, r_amp, t_amp) = match zone {
        Zone::Diffusion | Zone::Klein => {
            let q = kin.q().expect("oscillatory zone");
            let a = q * (e + one) / (kin.p * denom);
            (a, real((one - a) / (one + a)), real(two / (one + a)))
        }
        Zone::DiracTunneling => {
            let a = alpha_tilde_of(&kin, kin.qt().expect("evanescent zone"), cfg);
            let ia = Complex::new(zero, a);
            (a, (real(one) - ia) / (real(one) + ia), real(two) / (real(one) + ia))
        }
        Zone::KleinTunneling => {
            let a = alpha_tilde_of(&kin, kin.qt().expect("evanescent zone"), cfg);
            let ia = Complex::new(zero, a);
            (a, (real(one) + ia) / (real(one) - ia), real(two) / (real(one) - ia))
        }
    };
    Ok(ScatterAmplitudes { r_amp, t_amp, alpha, zone, limit: None })
}

/// `|R|² + α|T|² - 1` for the oscillatory zones.
pub fn flux_residual<T: Real>(amps: &ScatterAmplitudes<T>) -> Result<T> {
    if amps.zone.is_evanescent() {
        return Err(Error::WrongZone { expected: "diffusion or klein (no region-II flux otherwise)", got: amps.zone });
    }
    let r2 = amps.r_amp.norm_sqr();
    if amps.alpha.is_infinite() {
        // T = 0 exactly; α|T|² carries no flux in the limit.
        return Ok(r2 - T::one());
    }
    Ok(r2 + amps.alpha * amps.t_amp.norm_sqr() - T::one())
}

/// Componentwise `u(p) + R u(-p) - T u₂` at `z = 0`.
pub fn continuity_residual<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<[Complex<T>; 4]> {
    let amps = scatter(e, cfg)?;
    let kin = Kinematics::new(e, cfg)?;
    let u2 = region2_spinor(kin.zone, &kin, cfg)?;
    let lhs = free_spinor(kin.p, e) + amps.r_amp * free_spinor(-kin.p, e);
    Ok((lhs - amps.t_amp * u2).c)
}

/// Charge-conjugate description of the Klein-zone region-II wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositronFrame<T> {
    /// Positron energy, `-e`.
    pub e_a: T,
    pub q_a: T,
    /// Group velocity `q/(v0 - e)`, positive.
    pub v_a: T,
}

pub fn positron_frame<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<PositronFrame<T>> {
    let kin = Kinematics::new(e, cfg)?;
    if kin.zone != Zone::Klein {
        return Err(Error::WrongZone { expected: "klein", got: kin.zone });
    }
    let q = kin.q().expect("klein zone is oscillatory");
    Ok(PositronFrame { e_a: -e, q_a: q, v_a: q / (cfg.v0() - e) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParticleNature {
    Electron,
    Positron,
}

/// Which fermions occupy region II in each zone.
pub fn region2_nature(zone: Zone) -> ParticleNature {
    match zone {
        Zone::Diffusion | Zone::DiracTunneling => ParticleNature::Electron,
        Zone::KleinTunneling | Zone::Klein => ParticleNature::Positron,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg(v0: f64) -> StepConfig<f64> {
        StepConfig::new(v0).unwrap()
    }

    #[test]
    fn alpha_oscillatory_examples() {
        assert_relative_eq!(alpha_oscillatory(1.75, &cfg(3.5)).unwrap(), -11.0 / 3.0, epsilon = 1e-14);
        assert_eq!(alpha_oscillatory(2.0, &cfg(0.0)).unwrap(), 1.0);
        assert_eq!(alpha_oscillatory(4.5, &cfg(3.5)).unwrap(), 0.0);
        assert_eq!(alpha_oscillatory(1.0, &cfg(3.5)), Err(Error::DegenerateIncidence));
        assert!(matches!(alpha_oscillatory(3.0, &cfg(3.5)), Err(Error::WrongZone { .. })));
    }

    #[test]
    fn alpha_tilde_examples() {
        assert_relative_eq!(alpha_tilde(3.5, &cfg(3.5)).unwrap(), 4.5 / 11.25f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(alpha_tilde(3.5, &cfg(3.5)).unwrap(), 1.341641, epsilon = 1e-6);
        // q̃ = 0 with a finite denominator at the diffusion edge.
        assert!(alpha_tilde(4.5 - 1e-15, &cfg(3.5)).unwrap() < 1e-6);
        // 0/0 at the Klein edge resolves to +∞ from inside the zone.
        assert_eq!(alpha_tilde(2.5, &cfg(3.5)).unwrap(), f64::INFINITY);
        assert!(alpha_tilde(2.5 + 1e-9, &cfg(3.5)).unwrap() > 1e3);
        assert!(matches!(alpha_tilde(5.0, &cfg(3.5)), Err(Error::WrongZone { .. })));
    }

    #[test]
    fn scatter_klein_example() {
        let a = scatter(1.75, &cfg(3.5)).unwrap();
        assert_eq!(a.zone, Zone::Klein);
        assert_relative_eq!(a.r_amp.re, -1.75, epsilon = 1e-14);
        assert_relative_eq!(a.t_amp.re, -0.75, epsilon = 1e-14);
        assert_eq!(a.r_amp.im, 0.0);
    }

    #[test]
    fn scatter_diffusion_edge_limit() {
        let a = scatter(4.5, &cfg(3.5)).unwrap();
        assert_eq!(a.r_amp, Complex::new(1.0, 0.0));
        assert_eq!(a.t_amp, Complex::new(2.0, 0.0));
        let b = scatter(4.5 + 1e-12, &cfg(3.5)).unwrap();
        assert_relative_eq!(b.t_amp.norm_sqr(), 4.0, epsilon = 1e-4);
    }

    #[test]
    fn scatter_free_propagation() {
        let a = scatter(2.0, &cfg(0.0)).unwrap();
        assert_eq!(a.r_amp, Complex::new(0.0, 0.0));
        assert_eq!(a.t_amp, Complex::new(1.0, 0.0));
    }

    #[test]
    fn scatter_dirac_tunneling_at_step_height() {
        let a = scatter(3.5, &cfg(3.5)).unwrap();
        let at = 1.341640786499874;
        let expected = Complex::new(1.0, -at) / Complex::new(1.0, at);
        assert_relative_eq!(a.r_amp.re, expected.re, epsilon = 1e-14);
        assert_relative_eq!(a.r_amp.im, expected.im, epsilon = 1e-14);
        assert_relative_eq!(a.r_amp.norm(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(a.reflection_phase(), -1.860548, epsilon = 1e-6);
        assert_relative_eq!(a.reflection_phase(), -2.0 * at.atan(), epsilon = 1e-14);
    }

    #[test]
    fn klein_tunneling_is_conjugate_of_dirac_tunneling() {
        let c = cfg(3.5);
        let below = scatter_in_zone(3.5, Zone::KleinTunneling, &c).unwrap();
        let above = scatter_in_zone(3.5, Zone::DiracTunneling, &c).unwrap();
        assert_eq!(below.alpha, above.alpha);
        assert_eq!(below.r_amp, above.r_amp.conj());
        assert_eq!(below.t_amp, above.t_amp.conj());
    }

    #[test]
    fn limits_are_consistent_with_matching() {
        let c = cfg(3.5);
        let g = scatter(1.0, &c).unwrap();
        assert_eq!(g.limit, Some(Limit::Grazing));
        assert_eq!(g.r_amp, Complex::new(-1.0, 0.0));
        assert_eq!(g.t_amp, Complex::new(0.0, 0.0));
        for r in continuity_residual(1.0, &c).unwrap() {
            assert_eq!(r.norm(), 0.0);
        }

        let edge = scatter(2.5, &c).unwrap();
        assert_eq!(edge.limit, Some(Limit::KleinEdge));
        assert_eq!(edge.r_amp, Complex::new(-1.0, 0.0));
        // Both neighbours approach R = -1.
        let below = scatter(2.5 - 1e-10, &c).unwrap();
        let above = scatter(2.5 + 1e-10, &c).unwrap();
        assert!((below.r_amp + 1.0).norm() < 1e-4);
        assert!((above.r_amp + 1.0).norm() < 1e-4);
        assert_eq!(continuity_residual(2.5, &c), Err(Error::SingularSpinor));

        assert_eq!(scatter(1.0, &cfg(0.0)).unwrap().r_amp, Complex::new(0.0, 0.0));
    }

    #[test]
    fn scatter_rejects_bad_input() {
        assert!(matches!(scatter(f64::NAN, &cfg(3.5)), Err(Error::InvalidArgument(_))));
        assert!(matches!(scatter(0.5, &cfg(3.5)), Err(Error::InvalidEnergy(_))));
    }

    #[test]
    fn flux_residual_examples() {
        let c = cfg(3.5);
        assert!(flux_residual(&scatter(5.0, &c).unwrap()).unwrap().abs() < 1e-12);
        assert!(flux_residual(&scatter(1.75, &c).unwrap()).unwrap().abs() < 1e-12);
        assert_eq!(flux_residual(&scatter(2.0, &cfg(0.0)).unwrap()).unwrap(), 0.0);
        assert!(matches!(flux_residual(&scatter(4.0, &c).unwrap()), Err(Error::WrongZone { .. })));
    }

    #[test]
    fn positron_frame_examples() {
        let c = cfg(3.5);
        let f = positron_frame(1.75, &c).unwrap();
        assert_eq!(f.e_a, -1.75);
        assert_relative_eq!(f.q_a, 1.436141, epsilon = 1e-6);
        assert_relative_eq!(f.v_a, 0.820652, epsilon = 1e-6);

        let f = positron_frame(1.0, &c).unwrap();
        assert_relative_eq!(f.q_a, 2.291288, epsilon = 1e-6);
        assert_relative_eq!(f.v_a, 2.291288 / 2.5, epsilon = 1e-6);

        let near = positron_frame(2.5 - 1e-10, &c).unwrap();
        assert!(near.v_a > 0.0 && near.v_a < 1e-4);
        assert!(matches!(positron_frame(3.0, &c), Err(Error::WrongZone { .. })));
    }

    #[test]
    fn natures() {
        assert_eq!(region2_nature(Zone::Diffusion), ParticleNature::Electron);
        assert_eq!(region2_nature(Zone::DiracTunneling), ParticleNature::Electron);
        assert_eq!(region2_nature(Zone::KleinTunneling), ParticleNature::Positron);
        assert_eq!(region2_nature(Zone::Klein), ParticleNature::Positron);
    }

    #[test]
    fn principal_arg_maps_negative_pi() {
        assert_eq!(principal_arg(Complex::new(-1.0, -0.0)), std::f64::consts::PI);
        assert_eq!(principal_arg(Complex::new(-1.0, 0.0)), std::f64::consts::PI);
    }

    #[test]
    fn single_precision_klein_amplitude() {
        let a = scatter(1.75f32, &StepConfig::new(3.5f32).unwrap()).unwrap();
        assert!((a.r_amp.re + 1.75).abs() < 1e-5);
    }
}
