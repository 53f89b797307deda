//! Energy sweeps of `R` and derived diagnostics: the phase jump at `E = V0`,
//! the location of the Klein-zone maximum of `|R|`, and `d Arg R / dE`.

use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{principal_arg, scatter, scatter_in_zone};
use crate::error::{Error, Result};
use crate::kinematics::{classify_zone, StepConfig, Zone};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow<T> {
    pub e: T,
    pub zone: Zone,
    pub r_mod: T,
    /// Arg R in `(-π, π]`.
    pub r_arg: T,
    /// Arg R unwrapped within the row's zone; restarts at every zone change.
    pub r_arg_unwrapped: T,
    pub t_mod: T,
    pub alpha: T,
    /// Finite-difference `d Arg R / dE` taken inside the row's zone.
    pub d_arg_de: T,
    /// Set on the Klein-tunneling limit row at `e = v0`, which `scatter`
    /// itself classifies as Dirac tunneling.
    pub one_sided: bool,
}

/// Wraps an angle difference into `(-π, π]`.
fn wrap<T: Real>(x: T) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let mut y = x % two_pi;
    if y > T::PI() {
        y = y - two_pi;
    } else if y <= -T::PI() {
        y = y + two_pi;
    }
    y
}

fn in_closure<T: Real>(e: T, zone: Zone, cfg: &StepConfig<T>) -> bool {
    e >= T::one()
        && match cfg.energy_interval(zone) {
            Some((lo, hi)) => e >= lo && e <= hi,
            None => false,
        }
}

fn zone_phase<T: Real>(e: T, zone: Zone, cfg: &StepConfig<T>) -> Result<T> {
    Ok(principal_arg(scatter_in_zone(e, zone, cfg)?.r_amp))
}

/// One-zone slope of Arg R: central where the stencil fits, one-sided at
/// zone edges, NaN when neither fits.
fn zone_slope<T: Real>(e: T, zone: Zone, h: T, cfg: &StepConfig<T>) -> T {
    let lo_ok = in_closure(e - h, zone, cfg);
    let hi_ok = in_closure(e + h, zone, cfg);
    let phase = |x: T| zone_phase(x, zone, cfg).unwrap_or(T::nan());
    match (lo_ok, hi_ok) {
        (true, true) => wrap(phase(e + h) - phase(e - h)) / (h + h),
        (false, true) => wrap(phase(e + h) - phase(e)) / h,
        (true, false) => wrap(phase(e) - phase(e - h)) / h,
        (false, false) => T::nan(),
    }
}

/// `n_points` uniform energies on `[e_min, e_max]` plus the zone boundaries
/// `v0 - 1`, `v0`, `v0 + 1` that fall inside. At `e = v0` both one-sided
/// limits are emitted, Klein tunneling first.
pub fn sweep<T: Real>(e_min: T, e_max: T, n_points: usize, cfg: &StepConfig<T>) -> Result<Vec<SweepRow<T>>> {
    let bad_range = || Error::InvalidRange(e_min.to_f64().unwrap_or(f64::NAN), e_max.to_f64().unwrap_or(f64::NAN));
    if !(e_min.is_finite() && e_max.is_finite() && e_min >= T::one() && e_min < e_max) {
        return Err(bad_range());
    }
    if n_points < 2 {
        return Err(Error::invalid(format!("sweep needs at least 2 points, got {n_points}")));
    }

    let h = (e_max - e_min) / T::count(n_points - 1);
    let mut points: Vec<(T, Zone, bool)> = Vec::with_capacity(n_points + 4);
    for k in 0..n_points {
        let e = if k == n_points - 1 { e_max } else { e_min + h * T::count(k) };
        points.push((e, classify_zone(e, cfg)?, false));
    }
    let v0 = cfg.v0();
    let one = T::one();
    for b in [v0 - one, v0, v0 + one] {
        if b >= e_min && b <= e_max {
            points.push((b, classify_zone(b, cfg)?, false));
        }
    }
    if v0 >= e_min && v0 <= e_max && v0 > one {
        points.push((v0, Zone::KleinTunneling, true));
    }
    points.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite energies").then(a.1.cmp(&b.1)));
    points.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);

    let stencil = (h / T::lit(4.0)).min(T::lit(1e-6));
    let mut rows: Vec<SweepRow<T>> = points
        .par_iter()
        .map(|&(e, zone, one_sided)| {
            let amps = scatter_in_zone(e, zone, cfg)?;
            let r_mod = amps.r_amp.norm();
            let d_arg_de = if r_mod == T::zero() { T::zero() } else { zone_slope(e, zone, stencil, cfg) };
            Ok(SweepRow {
                e,
                zone,
                r_mod,
                r_arg: amps.reflection_phase(),
                r_arg_unwrapped: T::zero(),
                t_mod: amps.t_amp.norm(),
                alpha: amps.alpha,
                d_arg_de,
                one_sided,
            })
        })
        .collect::<Result<_>>()?;

    let mut prev: Option<(Zone, T, T)> = None;
    for row in &mut rows {
        row.r_arg_unwrapped = match prev {
            Some((zone, arg, unwrapped)) if zone == row.zone => unwrapped + wrap(row.r_arg - arg),
            _ => row.r_arg,
        };
        prev = Some((row.zone, row.r_arg, row.r_arg_unwrapped));
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseJump<T> {
    /// Arg R as `e → v0` from below (Klein tunneling).
    pub arg_below: T,
    /// Arg R as `e → v0` from above (Dirac tunneling).
    pub arg_above: T,
    /// `arg_above - arg_below = -4 atan(α̃(v0))`.
    pub jump: T,
    pub alpha_tilde: T,
}

/// One-sided phases of `R` at `e = v0`. Needs `v0 > 1` so that `e = v0` is
/// a propagating electron energy.
pub fn phase_jump<T: Real>(cfg: &StepConfig<T>) -> Result<PhaseJump<T>> {
    let v0 = cfg.v0();
    if v0 <= T::one() {
        return Err(Error::InvalidEnergy(v0.to_f64().unwrap_or(f64::NAN)));
    }
    let below = scatter_in_zone(v0, Zone::KleinTunneling, cfg)?;
    let above = scatter_in_zone(v0, Zone::DiracTunneling, cfg)?;
    let arg_below = below.reflection_phase();
    let arg_above = above.reflection_phase();
    Ok(PhaseJump { arg_below, arg_above, jump: arg_above - arg_below, alpha_tilde: above.alpha })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KleinPeak<T> {
    pub e_star: T,
    pub r_mod_star: T,
    /// The maximum sits on the first or last grid point of the Klein zone.
    pub boundary_hit: bool,
}

/// Grid argmax of `|R|` over the Klein zone `1 <= e < v0 - 1`.
pub fn klein_peak<T: Real>(cfg: &StepConfig<T>, grid_step: T) -> Result<KleinPeak<T>> {
    let (lo, hi) = cfg
        .energy_interval(Zone::Klein)
        .ok_or(Error::EmptyZone { zone: Zone::Klein, v0: cfg.v0().to_f64().unwrap_or(f64::NAN) })?;
    if !(grid_step > T::zero() && grid_step <= T::lit(1e-3)) {
        return Err(Error::invalid(format!("grid step must lie in (0, 1e-3], got {grid_step}")));
    }
    let n = ((hi - lo) / grid_step).ceil().to_usize().unwrap_or(0);
    let mods: Vec<(T, T)> = (0..n)
        .into_par_iter()
        .map(|k| lo + grid_step * T::count(k))
        .filter(|&e| e < hi)
        .map(|e| Ok((e, scatter(e, cfg)?.r_amp.norm())))
        .collect::<Result<_>>()?;
    let (idx, &(e_star, r_mod_star)) = mods
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &(T, T))>, (i, row)| match best {
            Some((_, b)) if b.1 >= row.1 => best,
            _ => Some((i, row)),
        })
        .ok_or(Error::EmptyZone { zone: Zone::Klein, v0: cfg.v0().to_f64().unwrap_or(f64::NAN) })?;
    Ok(KleinPeak { e_star, r_mod_star, boundary_hit: idx == 0 || idx + 1 == mods.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseSlope<T> {
    pub value: T,
    /// False when `R = 0` and the phase has no meaning; `value` is then 0.
    pub defined: bool,
}

/// Central difference of Arg R with half-step `de`; the whole stencil must
/// stay in one zone.
pub fn phase_derivative<T: Real>(e: T, cfg: &StepConfig<T>, de: T) -> Result<PhaseSlope<T>> {
    if !(de.is_finite() && de > T::zero()) {
        return Err(Error::invalid(format!("stencil step must be positive, got {de}")));
    }
    let crossing = || Error::StencilCrossesBoundary {
        lo: (e - de).to_f64().unwrap_or(f64::NAN),
        hi: (e + de).to_f64().unwrap_or(f64::NAN),
    };
    let zone = classify_zone(e, cfg)?;
    let lo_zone = classify_zone(e - de, cfg).map_err(|_| crossing())?;
    let hi_zone = classify_zone(e + de, cfg)?;
    if lo_zone != zone || hi_zone != zone {
        return Err(crossing());
    }
    if scatter(e, cfg)?.r_amp.norm() == T::zero() {
        return Ok(PhaseSlope { value: T::zero(), defined: false });
    }
    let lo = scatter(e - de, cfg)?.reflection_phase();
    let hi = scatter(e + de, cfg)?.reflection_phase();
    Ok(PhaseSlope { value: wrap(hi - lo) / (de + de), defined: true })
}
