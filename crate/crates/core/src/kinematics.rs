//! Units, energy zones, momenta and spin-up Dirac spinors.
//!
//! Everything is expressed in units of the rest mass: `m = 1`, `ħ = c = 1`.
//! Energies are `E/m`, momenta `p/m`, lengths `mz` and times `mt`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Step potential `V(z) = 0` for `z < 0`, `V(z) = v0` for `z > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepConfig<T> {
    v0: T,
}

impl<T: Real> StepConfig<T> {
    /// `v0 = 0` is accepted and describes free propagation.
    pub fn new(v0: T) -> Result<Self> {
        if !v0.is_finite() || v0 < T::zero() {
            return Err(Error::invalid(format!("step height must be finite and >= 0, got {v0}")));
        }
        Ok(Self { v0 })
    }

    pub fn v0(&self) -> T {
        self.v0
    }

    /// Rest mass; fixed by the unit convention.
    pub fn m(&self) -> T {
        T::one()
    }

    /// Energy interval `[lo, hi)` covered by `zone` for physical electrons
    /// (`E >= 1`), or `None` when the zone is empty. Diffusion has `hi = ∞`.
    pub fn energy_interval(&self, zone: Zone) -> Option<(T, T)> {
        let one = T::one();
        let v0 = self.v0;
        let (lo, hi) = match zone {
            Zone::Diffusion => (v0 + one, T::infinity()),
            Zone::DiracTunneling => (v0, v0 + one),
            Zone::KleinTunneling => (v0 - one, v0),
            Zone::Klein => (T::neg_infinity(), v0 - one),
        };
        let lo = lo.max(one);
        (lo < hi).then_some((lo, hi))
    }
}

/// Energy zones of the step, ordered by increasing energy from `Klein`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Zone {
    /// `E < V0 - m`: oscillatory region II, `|R| > 1`.
    Klein,
    /// `V0 - m <= E < V0`: evanescent region II occupied by positrons.
    KleinTunneling,
    /// `V0 <= E < V0 + m`: evanescent region II occupied by electrons.
    DiracTunneling,
    /// `E >= V0 + m`: oscillatory region II, `|R| < 1`.
    Diffusion,
}

impl Zone {
    pub const ALL: [Zone; 4] = [Zone::Klein, Zone::KleinTunneling, Zone::DiracTunneling, Zone::Diffusion];

    pub fn is_evanescent(self) -> bool {
        matches!(self, Zone::DiracTunneling | Zone::KleinTunneling)
    }

    pub fn label(self) -> &'static str {
        match self {
            Zone::Klein => "klein",
            Zone::KleinTunneling => "klein-tunneling",
            Zone::DiracTunneling => "dirac-tunneling",
            Zone::Diffusion => "diffusion",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Zone {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "diffusion" | "d" | "1" => Ok(Zone::Diffusion),
            "dirac-tunneling" | "dt" | "2a" => Ok(Zone::DiracTunneling),
            "klein-tunneling" | "kt" | "2b" => Ok(Zone::KleinTunneling),
            "klein" | "k" | "3" => Ok(Zone::Klein),
            other => Err(Error::invalid(format!("unknown zone '{other}'"))),
        }
    }
}

fn check_energy<T: Real>(e: T) -> Result<()> {
    if !e.is_finite() {
        return Err(Error::invalid(format!("energy must be finite, got {e}")));
    }
    if e < T::one() {
        return Err(Error::InvalidEnergy(e.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// Classifies an electron energy against the step.
///
/// Boundaries: `e == v0 + 1` is diffusion, `e == v0` is Dirac tunneling and
/// `e == v0 - 1` is Klein tunneling.
pub fn classify_zone<T: Real>(e: T, cfg: &StepConfig<T>) -> Result<Zone> {
    check_energy(e)?;
    let x = e - cfg.v0;
    let one = T::one();
    Ok(if x >= one {
        Zone::Diffusion
    } else if x >= T::zero() {
        Zone::DiracTunneling
    } else if x >= -one {
        Zone::KleinTunneling
    } else {
        Zone::Klein
    })
}

/// Region-II wavenumber: oscillatory `q` or evanescent decay rate `q̃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region2Momentum<T> {
    Oscillatory(T),
    Evanescent(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub e: T,
    /// Region-I momentum `sqrt(e² - 1)`.
    pub p: T,
    pub zone: Zone,
    pub region2: Region2Momentum<T>,
}

impl<T: Real> Kinematics<T> {
    pub fn new(e: T, cfg: &StepConfig<T>) -> Result<Self> {
        let zone = classify_zone(e, cfg)?;
        Ok(Self::build(e, zone, cfg))
    }

    /// Kinematics evaluated with the formulas of `zone`, which must contain
    /// `e` in its closure. Used for one-sided limits at zone boundaries.
    pub fn in_zone(e: T, zone: Zone, cfg: &StepConfig<T>) -> Result<Self> {
        check_energy(e)?;
        let x = e - cfg.v0;
        let one = T::one();
        let inside = match zone {
            Zone::Diffusion => x >= one,
            Zone::DiracTunneling => x >= T::zero() && x <= one,
            Zone::KleinTunneling => x >= -one && x <= T::zero(),
            Zone::Klein => x <= -one,
        };
        if !inside {
            return Err(Error::WrongZone { expected: zone.label(), got: classify_zone(e, cfg)? });
        }
        Ok(Self::build(e, zone, cfg))
    }

    fn build(e: T, zone: Zone, cfg: &StepConfig<T>) -> Self {
        let one = T::one();
        let x = e - cfg.v0;
        // Factored forms keep p² = e² - 1 exact near the boundaries.
        let p = ((e - one) * (e + one)).max(T::zero()).sqrt();
        let region2 = if zone.is_evanescent() {
            Region2Momentum::Evanescent(((one - x) * (one + x)).max(T::zero()).sqrt())
        } else {
            Region2Momentum::Oscillatory(((x - one) * (x + one)).max(T::zero()).sqrt())
        };
        Self { e, p, zone, region2 }
    }

    pub fn q(&self) -> Option<T> {
        match self.region2 {
            Region2Momentum::Oscillatory(q) => Some(q),
            Region2Momentum::Evanescent(_) => None,
        }
    }

    pub fn qt(&self) -> Option<T> {
        match self.region2 {
            Region2Momentum::Evanescent(qt) => Some(qt),
            Region2Momentum::Oscillatory(_) => None,
        }
    }
}

/// Four-component Dirac spinor. Only the spin-up sector (`c2 = c4 = 0`) is
/// ever populated by this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4<T> {
    pub c: [Complex<T>; 4],
}

impl<T: Real> Spinor4<T> {
    pub fn zero() -> Self {
        Self { c: [Complex::new(T::zero(), T::zero()); 4] }
    }

    /// Spin-up spinor `[upper, 0, lower, 0]`.
    pub fn spin_up(upper: Complex<T>, lower: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self { c: [upper, zero, lower, zero] }
    }

    /// `|c1|² + |c2|² + |c3|² + |c4|²`.
    pub fn density(&self) -> T {
        self.c.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Largest component modulus.
    pub fn max_abs(&self) -> T {
        self.c.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }
}

impl<T: Real> Add for Spinor4<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { c: std::array::from_fn(|i| self.c[i] + rhs.c[i]) }
    }
}

impl<T: Real> Sub for Spinor4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { c: std::array::from_fn(|i| self.c[i] - rhs.c[i]) }
    }
}

impl<T: Real> Mul<Spinor4<T>> for Complex<T> {
    type Output = Spinor4<T>;
    fn mul(self, rhs: Spinor4<T>) -> Spinor4<T> {
        Spinor4 { c: rhs.c.map(|c| self * c) }
    }
}

/// Free spin-up spinor `u(p, E) = [1, 0, p/(E+1), 0]`; `p_signed < 0` gives
/// the reflected spinor.
pub fn free_spinor<T: Real>(p_signed: T, e: T) -> Spinor4<T> {
    let zero = T::zero();
    Spinor4::spin_up(Complex::new(T::one(), zero), Complex::new(p_signed / (e + T::one()), zero))
}

/// Region-II spinor for `zone`, obtained from `u(q, E - V0)` by `q → i q̃`
/// (Dirac tunneling) or `q → -i q̃` (Klein tunneling).
///
/// The lower component diverges at `E = V0 - 1`; that point yields
/// [`Error::SingularSpinor`].
pub fn region2_spinor<T: Real>(zone: Zone, kin: &Kinematics<T>, cfg: &StepConfig<T>) -> Result<Spinor4<T>> {
    if kin.zone != zone {
        return Err(Error::WrongZone { expected: zone.label(), got: kin.zone });
    }
    let denom = kin.e - cfg.v0 + T::one();
    if denom == T::zero() {
        return Err(Error::SingularSpinor);
    }
    let zero = T::zero();
    let lower = match (zone, kin.region2) {
        (Zone::Diffusion | Zone::Klein, Region2Momentum::Oscillatory(q)) => Complex::new(q / denom, zero),
        (Zone::DiracTunneling, Region2Momentum::Evanescent(qt)) => Complex::new(zero, qt / denom),
        (Zone::KleinTunneling, Region2Momentum::Evanescent(qt)) => Complex::new(zero, -qt / denom),
        _ => return Err(Error::WrongZone { expected: zone.label(), got: kin.zone }),
    };
    Ok(Spinor4::spin_up(Complex::new(T::one(), zero), lower))
}
