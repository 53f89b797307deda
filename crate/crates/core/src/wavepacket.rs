//! Gaussian wave packets built by momentum quadrature over stationary
//! scattering states, and the region-I / region-II particle numbers.
//!
//! The region-I field is
//!
//! ```text
//! Ψ_I(z, t) = ∫ dp g(p) [u(p) e^{ipz} + R(p) u(-p) e^{-ipz}] e^{-iE(p)t}
//! ```
//!
//! with `g(p) = exp(-(p - p0)² d²/4)` restricted to a single zone's momentum
//! window, so one closed-form `R` applies to every node.

use num_complex::Complex;
use rayon::prelude::*;

use crate::amplitudes::scatter;
use crate::error::{Error, Result};
use crate::kinematics::{classify_zone, region2_spinor, Kinematics, Region2Momentum, Spinor4, StepConfig, Zone};
use crate::quadrature::{trapezoid, uniform_grid, GaussLegendre};
use crate::scalar::Real;

/// Momentum interval of a zone. `hi == None` means unbounded (diffusion).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumWindow<T> {
    pub lo: T,
    pub hi: Option<T>,
}

/// Region-I momenta whose energies fall inside `zone`.
pub fn packet_window<T: Real>(zone: Zone, cfg: &StepConfig<T>) -> Result<MomentumWindow<T>> {
    let v0 = cfg.v0();
    if cfg.energy_interval(zone).is_none() {
        return Err(Error::EmptyZone { zone, v0: v0.to_f64().unwrap_or(f64::NAN) });
    }
    let one = T::one();
    let two = one + one;
    // p at E = v0 + 1, v0 and v0 - 1 respectively.
    let p_upper = (v0 * (v0 + two)).sqrt();
    let p_mid = if v0 > one { ((v0 - one) * (v0 + one)).sqrt() } else { T::zero() };
    let p_lower = if v0 > two { (v0 * (v0 - two)).sqrt() } else { T::zero() };
    Ok(match zone {
        Zone::Diffusion => MomentumWindow { lo: p_upper, hi: None },
        Zone::DiracTunneling => MomentumWindow { lo: p_mid, hi: Some(p_upper) },
        Zone::KleinTunneling => MomentumWindow { lo: p_lower, hi: Some(p_mid) },
        Zone::Klein => MomentumWindow { lo: T::zero(), hi: Some(p_lower) },
    })
}

/// Gaussian momentum profile truncated to one zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket<T> {
    pub zone: Zone,
    pub p0: T,
    /// Localization length in units of `1/m`.
    pub d: T,
    pub p_lo: T,
    pub p_hi: T,
}

impl<T: Real> GaussianPacket<T> {
    /// Packet peaked at `p0` inside `zone`. The unbounded diffusion window is
    /// cut at `p0 + 8/d`.
    pub fn new(zone: Zone, p0: T, d: T, cfg: &StepConfig<T>) -> Result<Self> {
        if !(d.is_finite() && d > T::zero()) {
            return Err(Error::invalid(format!("localization length must be positive, got {d}")));
        }
        if !(p0.is_finite() && p0 > T::zero()) {
            return Err(Error::invalid(format!("peak momentum must be positive, got {p0}")));
        }
        let w = packet_window(zone, cfg)?;
        let p_hi = w.hi.unwrap_or(p0 + T::lit(8.0) / d);
        if !(w.lo < p0 && p0 < p_hi) {
            return Err(Error::MixedZone { lo: to64(w.lo), hi: to64(p_hi) });
        }
        Ok(Self { zone, p0, d, p_lo: w.lo, p_hi })
    }

    /// Packet peaked at energy `e0`. With `zone == None` the zone of `e0`
    /// is used; otherwise `e0` must lie strictly inside `zone`.
    pub fn from_energy(e0: T, d: T, zone: Option<Zone>, cfg: &StepConfig<T>) -> Result<Self> {
        let actual = classify_zone(e0, cfg)?;
        let zone = zone.unwrap_or(actual);
        let p0 = Kinematics::new(e0, cfg)?.p;
        if actual != zone {
            let w = packet_window(zone, cfg)?;
            return Err(Error::MixedZone { lo: to64(w.lo), hi: to64(w.hi.unwrap_or(T::infinity())) });
        }
        Self::new(zone, p0, d, cfg)
    }

    /// Packet at the default peak of `zone`: the midpoint of the zone's
    /// energy interval, or `v0 + 2` for the unbounded diffusion zone.
    pub fn mid_zone(zone: Zone, d: T, cfg: &StepConfig<T>) -> Result<Self> {
        Self::from_energy(default_peak_energy(zone, cfg)?, d, Some(zone), cfg)
    }

    pub fn amplitude(&self, p: T) -> T {
        let x = (p - self.p0) * self.d;
        (-(x * x) / T::lit(4.0)).exp()
    }

    pub fn e0(&self) -> T {
        (self.p0 * self.p0 + T::one()).sqrt()
    }

    /// Group velocity `p0/E0` of the incident packet.
    pub fn group_velocity(&self) -> T {
        self.p0 / self.e0()
    }

    /// Half-width `T = 12 d E0/p0` of the default time series.
    pub fn default_time_span(&self) -> T {
        T::lit(12.0) * self.d / self.group_velocity()
    }

    /// Fraction of `∫ g² dp` over the real line lost to the window cut.
    pub fn tail_mass_cut(&self) -> T {
        let full = (T::lit(2.0) * T::PI()).sqrt() / self.d;
        let kept = GaussLegendre::new(256).integrate(self.p_lo, self.p_hi, |p| {
            let g = self.amplitude(p);
            g * g
        });
        (T::one() - kept / full).max(T::zero())
    }
}

/// Default packet peak energy for `zone`.
pub fn default_peak_energy<T: Real>(zone: Zone, cfg: &StepConfig<T>) -> Result<T> {
    let (lo, hi) = cfg
        .energy_interval(zone)
        .ok_or(Error::EmptyZone { zone, v0: to64(cfg.v0()) })?;
    Ok(if hi.is_infinite() { cfg.v0() + T::lit(2.0) } else { (lo + hi) / T::lit(2.0) })
}

fn to64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Discretization of the momentum integral and the spatial grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    /// Gauss-Legendre nodes on the packet window.
    pub n_p: usize,
    /// Left end of the region-I grid; region II extends to `-z_min`.
    pub z_min: T,
    pub dz: T,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(n_p: usize, z_min: T, dz: T, packet: &GaussianPacket<T>) -> Result<Self> {
        let d = packet.d;
        if n_p < 64 {
            return Err(Error::invalid(format!("need at least 64 momentum nodes, got {n_p}")));
        }
        if !(z_min.is_finite() && z_min < -(T::lit(5.0) * d)) {
            return Err(Error::invalid(format!("z_min must be below -5d = {}, got {z_min}", -(T::lit(5.0) * d))));
        }
        if !(dz > T::zero() && dz <= d / T::lit(20.0)) {
            return Err(Error::invalid(format!("dz must lie in (0, d/20], got {dz}")));
        }
        Ok(Self { n_p, z_min, dz })
    }

    /// 256 nodes, `dz = d/50` and `z_min = -(15 d + t_abs_max · v)` so the
    /// packet stays on the grid over `|t| <= t_abs_max`.
    pub fn default_for(packet: &GaussianPacket<T>, t_abs_max: T) -> Self {
        let d = packet.d;
        Self {
            n_p: 256,
            z_min: -(T::lit(15.0) * d + t_abs_max.abs() * packet.group_velocity()),
            dz: d / T::lit(50.0),
        }
    }

    pub fn with_nodes(self, n_p: usize) -> Self {
        Self { n_p, ..self }
    }
}

/// Per-node data of the momentum quadrature.
#[derive(Debug, Clone, Copy)]
struct Mode<T> {
    p: T,
    e: T,
    /// Quadrature weight times `g(p)`.
    weight: T,
    r: Complex<T>,
    /// `p/(E+1)`.
    lower: T,
    /// `weight · T` and `weight · T · u₂[2]`.
    t_upper: Complex<T>,
    t_lower: Complex<T>,
    /// Region-II exponent: `i q` or `-q̃`.
    kappa: Complex<T>,
}

#[derive(Debug, Clone)]
enum Region2Grid<T> {
    /// Trapezoid grid on `[0, -z_min]` with `e^{i q_j z_k}` table.
    Oscillatory { h: T, phases: Vec<Complex<T>>, n_z: usize },
    /// Exact half-line kernel `1/(q̃_j + q̃_k)`.
    Evanescent { kernel: Vec<T> },
}

/// Precomputed wave-packet field for one packet and quadrature.
#[derive(Debug, Clone)]
pub struct PacketField<T> {
    pub packet: GaussianPacket<T>,
    pub quad: QuadratureSpec<T>,
    modes: Vec<Mode<T>>,
    z1: Vec<T>,
    h1: T,
    /// `e^{i p_j z_k}`, row-major in `k`.
    phases1: Vec<Complex<T>>,
    region2: Region2Grid<T>,
    n_inc: T,
}

impl<T: Real> PacketField<T> {
    pub fn new(packet: GaussianPacket<T>, cfg: &StepConfig<T>, quad: QuadratureSpec<T>) -> Result<Self> {
        let rule = GaussLegendre::<T>::new(quad.n_p);
        let (ps, ws) = rule.on_interval(packet.p_lo, packet.p_hi);
        let mixed = || Error::MixedZone { lo: to64(packet.p_lo), hi: to64(packet.p_hi) };
        let zero = T::zero();
        let one = T::one();

        let mut modes = Vec::with_capacity(ps.len());
        for (&p, &w) in ps.iter().zip(&ws) {
            let e = (p * p + one).sqrt();
            let kin = Kinematics::new(e, cfg)?;
            if kin.zone != packet.zone {
                return Err(mixed());
            }
            let amps = scatter(e, cfg)?;
            let u2 = region2_spinor(kin.zone, &kin, cfg)?;
            let weight = w * packet.amplitude(p);
            let kappa = match kin.region2 {
                Region2Momentum::Oscillatory(q) => Complex::new(zero, q),
                Region2Momentum::Evanescent(qt) => Complex::new(-qt, zero),
            };
            modes.push(Mode {
                p,
                e,
                weight,
                r: amps.r_amp,
                lower: p / (e + one),
                t_upper: amps.t_amp * weight,
                t_lower: amps.t_amp * u2.c[2] * weight,
                kappa,
            });
        }

        let two_pi = T::lit(2.0) * T::PI();
        let n_inc = two_pi
            * modes
                .iter()
                .zip(&ws)
                .map(|(m, &w)| m.weight * m.weight / w * (one + m.lower * m.lower))
                .sum::<T>();

        let (z1, h1) = uniform_grid(quad.z_min, zero, quad.dz);
        let phases1 = phase_table(&z1, modes.iter().map(|m| Complex::new(zero, m.p)));

        let region2 = if packet.zone.is_evanescent() {
            let n = modes.len();
            let mut kernel = vec![zero; n * n];
            for (j, a) in modes.iter().enumerate() {
                for (k, b) in modes.iter().enumerate() {
                    kernel[j * n + k] = -one / (a.kappa.re + b.kappa.re);
                }
            }
            Region2Grid::Evanescent { kernel }
        } else {
            let (z2, h) = uniform_grid(zero, -quad.z_min, quad.dz);
            let phases = phase_table(&z2, modes.iter().map(|m| m.kappa));
            Region2Grid::Oscillatory { h, phases, n_z: z2.len() }
        };

        Ok(Self { packet, quad, modes, z1, h1, phases1, region2, n_inc })
    }

    /// Incident norm `2π ∫ g² |u(p)|² dp`, the full-line norm of the incident
    /// term (same `2π` convention as the spatial integrals).
    pub fn incident_norm(&self) -> T {
        self.n_inc
    }

    fn time_factors(&self, t: T) -> Vec<Complex<T>> {
        self.modes.iter().map(|m| Complex::new(T::zero(), -m.e * t).exp()).collect()
    }

    /// `Ψ_I(z, t)` for `z <= 0`.
    pub fn psi_region1(&self, z: T, t: T) -> Result<Spinor4<T>> {
        if z > T::zero() {
            return Err(Error::invalid(format!("region I needs z <= 0, got {z}")));
        }
        let zero = Complex::new(T::zero(), T::zero());
        let (mut up, mut lo) = (zero, zero);
        for (m, f) in self.modes.iter().zip(self.time_factors(t)) {
            let a = f * m.weight;
            let ph = Complex::new(T::zero(), m.p * z).exp();
            let inc = a * ph;
            let refl = a * m.r * ph.conj();
            up = up + inc + refl;
            lo = lo + (inc - refl) * m.lower;
        }
        Ok(Spinor4::spin_up(up, lo))
    }

    /// `Ψ_II(z, t)` for `z >= 0`.
    pub fn psi_region2(&self, z: T, t: T) -> Result<Spinor4<T>> {
        if z < T::zero() {
            return Err(Error::invalid(format!("region II needs z >= 0, got {z}")));
        }
        let zero = Complex::new(T::zero(), T::zero());
        let (mut up, mut lo) = (zero, zero);
        for (m, f) in self.modes.iter().zip(self.time_factors(t)) {
            let ph = f * (m.kappa * z).exp();
            up = up + m.t_upper * ph;
            lo = lo + m.t_lower * ph;
        }
        Ok(Spinor4::spin_up(up, lo))
    }

    /// `N1(t) = ∫_{z_min}^0 |Ψ_I|² dz` by the trapezoid rule.
    pub fn region1_number(&self, t: T) -> T {
        let n = self.modes.len();
        let f = self.time_factors(t);
        let coef: Vec<[Complex<T>; 4]> = self
            .modes
            .iter()
            .zip(&f)
            .map(|(m, &f)| {
                let a = f * m.weight;
                let b = a * m.r;
                [a, b, a * m.lower, -(b * m.lower)]
            })
            .collect();
        let zero = Complex::new(T::zero(), T::zero());
        let dens: Vec<T> = self
            .phases1
            .chunks_exact(n)
            .map(|row| {
                let (mut up, mut lo) = (zero, zero);
                for (ph, c) in row.iter().zip(&coef) {
                    let phc = ph.conj();
                    up = up + c[0] * ph + c[1] * phc;
                    lo = lo + c[2] * ph + c[3] * phc;
                }
                up.norm_sqr() + lo.norm_sqr()
            })
            .collect();
        trapezoid(&dens, self.h1)
    }

    /// `N2(t) = ∫_0^{z_max} |Ψ_II|² dz`. Evanescent zones use the exact
    /// half-line integral; oscillatory zones the trapezoid rule up to
    /// `z_max = -z_min`.
    pub fn region2_number(&self, t: T) -> T {
        let f = self.time_factors(t);
        let a: Vec<Complex<T>> = self.modes.iter().zip(&f).map(|(m, &f)| m.t_upper * f).collect();
        let b: Vec<Complex<T>> = self.modes.iter().zip(&f).map(|(m, &f)| m.t_lower * f).collect();
        let n = self.modes.len();
        match &self.region2 {
            Region2Grid::Evanescent { kernel } => {
                let mut total = T::zero();
                for j in 0..n {
                    let row = &kernel[j * n..(j + 1) * n];
                    let (aj, bj) = (a[j].conj(), b[j].conj());
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for k in 0..n {
                        acc = acc + (aj * a[k] + bj * b[k]) * row[k];
                    }
                    total = total + acc.re;
                }
                total
            }
            Region2Grid::Oscillatory { h, phases, n_z } => {
                let zero = Complex::new(T::zero(), T::zero());
                let dens: Vec<T> = phases
                    .chunks_exact(n)
                    .take(*n_z)
                    .map(|row| {
                        let (mut up, mut lo) = (zero, zero);
                        for ((ph, ak), bk) in row.iter().zip(&a).zip(&b) {
                            up = up + ak * ph;
                            lo = lo + bk * ph;
                        }
                        up.norm_sqr() + lo.norm_sqr()
                    })
                    .collect();
                trapezoid(&dens, *h)
            }
        }
    }

    /// `r(t) = N1(t) / N_inc`.
    pub fn r_of_t(&self, t: T) -> T {
        self.region1_number(t) / self.n_inc
    }

    pub fn n2_of_t(&self, t: T) -> T {
        self.region2_number(t)
    }

    /// Region-I grid used by [`Self::region1_number`].
    pub fn region1_grid(&self) -> (&[T], T) {
        (&self.z1, self.h1)
    }

    /// `N1`, `N2` and `r` on `times`, evaluated in parallel.
    pub fn series(&self, times: &[T]) -> DensitySeries<T> {
        let rows: Vec<(T, T)> = times.par_iter().map(|&t| (self.region1_number(t), self.region2_number(t))).collect();
        let (n1, n2): (Vec<T>, Vec<T>) = rows.into_iter().unzip();
        let r = n1.iter().map(|&x| x / self.n_inc).collect();
        DensitySeries { times: times.to_vec(), n1, n2, r, n_inc: self.n_inc }
    }
}

fn phase_table<T: Real>(zs: &[T], exps: impl Iterator<Item = Complex<T>> + Clone) -> Vec<Complex<T>> {
    zs.iter().flat_map(|&z| exps.clone().map(move |k| (k * z).exp())).collect()
}

/// Time series of particle numbers for one packet.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySeries<T> {
    pub times: Vec<T>,
    pub n1: Vec<T>,
    pub n2: Vec<T>,
    pub r: Vec<T>,
    pub n_inc: T,
}

impl<T: Real> DensitySeries<T> {
    /// `max_t |N1(t) + N2(t) - N1(t₀)| / N1(t₀)`.
    pub fn norm_drift(&self) -> T {
        self.drift(|a, b| a + b)
    }

    /// `max_t |N1(t) - N2(t) - N1(t₀)| / N1(t₀)`: region-II occupation
    /// counted with opposite charge.
    pub fn charge_drift(&self) -> T {
        self.drift(|a, b| a - b)
    }

    fn drift(&self, combine: impl Fn(T, T) -> T) -> T {
        let Some(&base) = self.n1.first() else { return T::zero() };
        self.n1
            .iter()
            .zip(&self.n2)
            .map(|(&a, &b)| (combine(a, b) - base).abs() / base)
            .fold(T::zero(), T::max)
    }

    pub fn r_min(&self) -> T {
        self.r.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn r_max(&self) -> T {
        self.r.iter().copied().fold(T::neg_infinity(), T::max)
    }
}

/// `n` uniformly spaced times on `[t_min, t_max]`.
pub fn time_grid<T: Real>(t_min: T, t_max: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![t_min],
        _ => {
            let h = (t_max - t_min) / T::count(n - 1);
            (0..n).map(|k| if k == n - 1 { t_max } else { t_min + h * T::count(k) }).collect()
        }
    }
}

/// Series at `quad` plus the largest change in `r` when the node count is
/// doubled. Fails with [`Error::NonConvergence`] when the change reaches `tol`.
pub fn converged_series<T: Real>(
    packet: GaussianPacket<T>,
    cfg: &StepConfig<T>,
    quad: QuadratureSpec<T>,
    times: &[T],
    tol: T,
) -> Result<(DensitySeries<T>, T)> {
    let coarse = PacketField::new(packet, cfg, quad)?.series(times);
    let fine = PacketField::new(packet, cfg, quad.with_nodes(2 * quad.n_p))?.series(times);
    let change = coarse.r.iter().zip(&fine.r).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
    if !(change < tol) {
        return Err(Error::NonConvergence { change: to64(change), tol: to64(tol) });
    }
    Ok((coarse, change))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg(v0: f64) -> StepConfig<f64> {
        StepConfig::new(v0).unwrap()
    }

    #[test]
    fn window_examples() {
        let c = cfg(3.5);
        let dt = packet_window(Zone::DiracTunneling, &c).unwrap();
        assert_relative_eq!(dt.hi.unwrap(), 4.387482, epsilon = 1e-6);
        assert_relative_eq!(dt.lo, 11.25f64.sqrt(), epsilon = 1e-14);
        let k = packet_window(Zone::Klein, &c).unwrap();
        assert_eq!(k.lo, 0.0);
        assert_relative_eq!(k.hi.unwrap(), 2.291288, epsilon = 1e-6);
        assert_eq!(packet_window(Zone::Diffusion, &c).unwrap().hi, None);
        assert!(matches!(packet_window(Zone::Klein, &cfg(1.5)), Err(Error::EmptyZone { .. })));
        let kt = packet_window(Zone::KleinTunneling, &cfg(1.5)).unwrap();
        assert_eq!(kt.lo, 0.0);
    }

    #[test]
    fn window_edges_map_to_zone_boundaries() {
        let c = cfg(3.5);
        for zone in Zone::ALL {
            let w = packet_window(zone, &c).unwrap();
            let (elo, ehi) = c.energy_interval(zone).unwrap();
            assert_relative_eq!((w.lo * w.lo + 1.0).sqrt(), elo, epsilon = 1e-14);
            if let Some(hi) = w.hi {
                assert_relative_eq!((hi * hi + 1.0).sqrt(), ehi, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn packet_construction() {
        let c = cfg(3.5);
        let p = GaussianPacket::mid_zone(Zone::DiracTunneling, 10.0, &c).unwrap();
        assert_relative_eq!(p.e0(), 4.0, epsilon = 1e-14);
        assert!(p.tail_mass_cut() < 1e-4);
        let diff = GaussianPacket::mid_zone(Zone::Diffusion, 10.0, &c).unwrap();
        assert_relative_eq!(diff.p_hi, diff.p0 + 0.8, epsilon = 1e-14);
        assert!(matches!(
            GaussianPacket::from_energy(4.0, 10.0, Some(Zone::KleinTunneling), &c),
            Err(Error::MixedZone { .. })
        ));
        assert!(GaussianPacket::new(Zone::Klein, 1.4, 0.0, &c).is_err());
        assert!(matches!(GaussianPacket::mid_zone(Zone::Klein, 10.0, &cfg(1.5)), Err(Error::EmptyZone { .. })));
    }

    #[test]
    fn quadrature_spec_invariants() {
        let c = cfg(3.5);
        let p = GaussianPacket::mid_zone(Zone::DiracTunneling, 10.0, &c).unwrap();
        assert!(QuadratureSpec::new(32, -300.0, 0.2, &p).is_err());
        assert!(QuadratureSpec::new(64, -40.0, 0.2, &p).is_err());
        assert!(QuadratureSpec::new(64, -300.0, 0.6, &p).is_err());
        let q = QuadratureSpec::default_for(&p, 100.0);
        assert_eq!(q, QuadratureSpec::new(256, q.z_min, q.dz, &p).unwrap());
        assert_relative_eq!(q.dz, 0.2);
    }

    #[test]
    fn density_examples() {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        assert_eq!(Spinor4::spin_up(one, zero).density(), 1.0);
        assert_eq!(Spinor4::spin_up(one, Complex::new(0.0, 0.5)).density(), 1.25);
    }

    #[test]
    fn fields_stay_in_spin_up_sector() {
        let c = cfg(3.5);
        let p = GaussianPacket::mid_zone(Zone::DiracTunneling, 10.0, &c).unwrap();
        let f = PacketField::new(p, &c, QuadratureSpec::new(64, -60.0, 0.5, &p).unwrap()).unwrap();
        for t in [-50.0, 0.0, 30.0] {
            let a = f.psi_region1(-3.0, t).unwrap();
            let b = f.psi_region2(2.0, t).unwrap();
            for s in [a, b] {
                assert_eq!(s.c[1], Complex::new(0.0, 0.0));
                assert_eq!(s.c[3], Complex::new(0.0, 0.0));
            }
        }
        assert!(f.psi_region1(1.0, 0.0).is_err());
        assert!(f.psi_region2(-1.0, 0.0).is_err());
    }

    #[test]
    fn fields_match_at_interface() {
        let c = cfg(3.5);
        for zone in Zone::ALL {
            let p = GaussianPacket::mid_zone(zone, 10.0, &c).unwrap();
            let f = PacketField::new(p, &c, QuadratureSpec::new(64, -60.0, 0.5, &p).unwrap()).unwrap();
            for t in [-20.0, 0.0, 5.0] {
                let diff = f.psi_region1(0.0, t).unwrap() - f.psi_region2(0.0, t).unwrap();
                assert!(diff.max_abs() < 1e-12, "{zone}: {diff:?}");
            }
        }
    }

    #[test]
    fn time_grid_endpoints() {
        let g = time_grid(-2.0, 2.0, 5);
        assert_eq!(g, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(time_grid(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn drift_measures() {
        let s = DensitySeries {
            times: vec![0.0, 1.0],
            n1: vec![1.0, 0.9],
            n2: vec![0.0, 0.1],
            r: vec![1.0, 0.9],
            n_inc: 1.0,
        };
        assert_relative_eq!(s.norm_drift(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.charge_drift(), 0.2, epsilon = 1e-15);
        assert_eq!(s.r_min(), 0.9);
    }
}
