//! Evolution of initial data by convolution with the Green functions.
//!
//! The undamped field `u` solves `u_tt − v²Δu + q²u = 0` with
//! `u(·, 0) = Φ`, `u_t(·, 0) = Ψ`, and
//!
//! ```text
//! u = ∂_t (G * Φ) + G * Ψ.
//! ```
//!
//! In 1D both terms are integrals over `[x − vt, x + vt]` plus the
//! travelling-wave part `(Φ(x + vt) + Φ(x − vt))/2`. In 3D the delta layer
//! contributes spherical means of radius `vt` and the regular part a radial
//! integral of spherical means over `ρ < vt`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::sqrt;

use crate::error::{finite, non_negative, Error, Result};
use crate::field::{FieldGrid, FieldKind, GridAxis};
use crate::green::{cone_distance, KgParams};
use crate::params::{DerivedParams, PhysicalParams};
use crate::profile::{InitialData, Profile, Support};
use crate::quadrature::{breakpoints, Adaptive, GaussLegendre};

/// Spatial dimension of an evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    /// One dimension, positions are `x`.
    Planar,
    /// Three dimensions with radial data, positions are `r ≥ 0`.
    Radial,
}

/// Product rule for means over spheres: Gauss–Legendre in `cos θ`,
/// trapezoid in `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereQuadrature {
    theta: GaussLegendre,
    n_phi: usize,
}

impl SphereQuadrature {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 8 || n_phi < 16 {
            return Err(Error::InvalidConfig(
                "sphere quadrature needs n_theta >= 8 and n_phi >= 16",
            ));
        }
        Ok(SphereQuadrature {
            theta: GaussLegendre::new(n_theta),
            n_phi,
        })
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Mean of `f` over the sphere of radius `radius` about `center`.
    pub fn mean(&self, f: impl Fn([f64; 3]) -> f64, center: [f64; 3], radius: f64) -> f64 {
        let dphi = 2.0 * PI / self.n_phi as f64;
        let mut sum = 0.0;
        for (&mu, &w) in self.theta.nodes().iter().zip(self.theta.weights()) {
            let s = sqrt(1.0 - mu * mu);
            let mut ring = 0.0;
            for j in 0..self.n_phi {
                let phi = j as f64 * dphi;
                let p = [
                    center[0] + radius * s * libm::cos(phi),
                    center[1] + radius * s * libm::sin(phi),
                    center[2] + radius * mu,
                ];
                ring += f(p);
            }
            sum += w * ring;
        }
        sum / (2.0 * self.n_phi as f64)
    }

    /// Mean of the radial function `f(|y|)` over the sphere `|y − x| = radius`
    /// with `|x| = r`. The azimuthal integral is trivial, which leaves
    /// `½∫ f(√(r² + R² + 2rRμ)) dμ`; `kinks` are radii where `f` is not
    /// smooth and split the `μ` integral.
    pub fn mean_radial(&self, f: impl Fn(f64) -> f64, r: f64, radius: f64, kinks: &[f64]) -> f64 {
        if r == 0.0 {
            return f(radius);
        }
        if radius == 0.0 {
            return f(r);
        }
        let rr = r * r + radius * radius;
        let cross = 2.0 * r * radius;
        let pieces = breakpoints(-1.0, 1.0, kinks.iter().map(|&b| (b * b - rr) / cross));
        let mut total = 0.0;
        for pair in pieces.windows(2) {
            total += self
                .theta
                .integrate(pair[0], pair[1], |mu| f(sqrt((rr + cross * mu).max(0.0))));
        }
        0.5 * total
    }

    /// `∂/∂R` of [`Self::mean_radial`], given the derivative `df` of `f`.
    fn mean_radial_dr(&self, df: impl Fn(f64) -> f64, r: f64, radius: f64, kinks: &[f64]) -> f64 {
        if r == 0.0 {
            return df(radius);
        }
        let rr = r * r + radius * radius;
        let cross = 2.0 * r * radius;
        let pieces = breakpoints(-1.0, 1.0, kinks.iter().map(|&b| (b * b - rr) / cross));
        let mut total = 0.0;
        for pair in pieces.windows(2) {
            total += self.theta.integrate(pair[0], pair[1], |mu| {
                let rho = sqrt((rr + cross * mu).max(0.0));
                if rho == 0.0 {
                    0.0
                } else {
                    df(rho) * (radius + r * mu) / rho
                }
            });
        }
        0.5 * total
    }
}

impl Default for SphereQuadrature {
    fn default() -> Self {
        SphereQuadrature {
            theta: GaussLegendre::new(48),
            n_phi: 32,
        }
    }
}

/// Accuracy settings for the convolution integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolveOptions {
    /// Relative tolerance of each adaptive integral.
    pub quad_tol: f64,
    pub sphere: SphereQuadrature,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            quad_tol: 1e-10,
            sphere: SphereQuadrature::default(),
        }
    }
}

impl EvolveOptions {
    fn quadrature(&self) -> Result<Adaptive> {
        if !(self.quad_tol > 0.0 && self.quad_tol < 1.0) {
            return Err(Error::InvalidConfig("quad_tol must lie in (0, 1)"));
        }
        Ok(Adaptive::new(self.quad_tol))
    }
}

/// A data function with the information the integrators need.
struct Source<'a> {
    f: &'a dyn Fn(f64) -> f64,
    support: Support,
    kinks: Vec<f64>,
}

impl<'a> Source<'a> {
    fn of(profile: &'a Profile, f: &'a dyn Fn(f64) -> f64) -> Self {
        Source {
            f,
            support: profile.support(),
            kinks: profile.breakpoints(),
        }
    }
}

/// `(G₁ * s)(x, t)`.
fn spread_1d(s: &Source, x: f64, t: f64, kg: &KgParams, quad: &Adaptive) -> Result<f64> {
    let reach = kg.v() * t;
    let Some((a, b)) = s.support.clip(x - reach, x + reach) else {
        return Ok(0.0);
    };
    let points = breakpoints(a, b, s.kinks.iter().copied());
    let v = kg.v();
    let r = quad.integrate_pieces(&points, |y| {
        let cd = cone_distance((x - y).abs(), t, v).max(0.0);
        kg.kernel_1d(cd) * (s.f)(y)
    })?;
    Ok(r.value)
}

/// `∂_t (G₁ * s)(x, t)`.
fn spread_1d_dt(s: &Source, x: f64, t: f64, kg: &KgParams, quad: &Adaptive) -> Result<f64> {
    let reach = kg.v() * t;
    let front = 0.5 * ((s.f)(x + reach) + (s.f)(x - reach));
    if kg.q_sq() == 0.0 {
        return Ok(front);
    }
    let Some((a, b)) = s.support.clip(x - reach, x + reach) else {
        return Ok(front);
    };
    let points = breakpoints(a, b, s.kinks.iter().copied());
    let v = kg.v();
    let r = quad.integrate_pieces(&points, |y| {
        let cd = cone_distance((x - y).abs(), t, v).max(0.0);
        kg.kernel_1d_dt(cd, t) * (s.f)(y)
    })?;
    Ok(front + r.value)
}

fn check_time(t: f64, kg: &KgParams) -> Result<()> {
    non_negative("t", t)?;
    kg.check_kernel_domain(t)
}

/// `u(x, t)` in one dimension. `t = 0` returns `Φ(x)` exactly.
pub fn solve_u_1d(
    data: &InitialData,
    x: f64,
    t: f64,
    kg: &KgParams,
    opts: &EvolveOptions,
) -> Result<f64> {
    finite("x", x)?;
    check_time(t, kg)?;
    if t == 0.0 {
        return Ok(data.phi.value(x));
    }
    let quad = opts.quadrature()?;
    let phi = |y: f64| data.phi.value(y);
    let psi = |y: f64| data.psi.value(y);
    let from_phi = spread_1d_dt(&Source::of(&data.phi, &phi), x, t, kg, &quad)?;
    let from_psi = spread_1d(&Source::of(&data.psi, &psi), x, t, kg, &quad)?;
    Ok(from_phi + from_psi)
}

/// `u_t(x, t)` in one dimension. Needs `Φ''`, so `Φ` must be smooth.
pub fn solve_u_1d_rate(
    data: &InitialData,
    x: f64,
    t: f64,
    kg: &KgParams,
    opts: &EvolveOptions,
) -> Result<f64> {
    finite("x", x)?;
    check_time(t, kg)?;
    // u_t solves the same equation with data (Ψ, v²Φ'' − q²Φ)
    data.phi.second_derivative(0.0)?;
    let v2 = kg.v() * kg.v();
    let accel =
        |y: f64| v2 * data.phi.second_derivative(y).unwrap_or(0.0) - kg.q_sq() * data.phi.value(y);
    if t == 0.0 {
        return Ok(data.psi.value(x));
    }
    let quad = opts.quadrature()?;
    let psi = |y: f64| data.psi.value(y);
    let from_psi = spread_1d_dt(&Source::of(&data.psi, &psi), x, t, kg, &quad)?;
    let from_accel = spread_1d(&Source::of(&data.phi, &accel), x, t, kg, &quad)?;
    Ok(from_psi + from_accel)
}

/// Radial extent `[lo, hi]` of `f(|y|)`, `None` when identically zero.
type RadialExtent = Option<(f64, f64)>;

/// Radial extent of `f(|y|)` and its kinks in `|y|`.
fn radial_source(profile: &Profile) -> Result<(RadialExtent, Vec<f64>)> {
    if !profile.is_radially_symmetric() {
        return Err(Error::NotRadiallySymmetric);
    }
    let extent = match profile.support() {
        Support::Empty => None,
        Support::Unbounded => Some((0.0, f64::INFINITY)),
        Support::Bounded(lo, hi) if lo < 0.0 => Some((0.0, hi.max(-lo))),
        Support::Bounded(lo, hi) => Some((lo, hi)),
    };
    let kinks = profile
        .breakpoints()
        .into_iter()
        .filter(|&b| b > 0.0)
        .collect();
    Ok((extent, kinks))
}

/// Interval of shell radii `ρ ∈ [0, R]` whose spheres about `|x| = r` meet
/// the radial extent, and the interior points where the integrand kinks.
fn shell_range(r: f64, reach: f64, extent: (f64, f64), kinks: &[f64]) -> Option<Vec<f64>> {
    let (lo, hi) = extent;
    let start = if r > hi {
        r - hi
    } else if r < lo {
        lo - r
    } else {
        0.0
    };
    let end = reach.min(r + hi);
    if start >= end {
        return None;
    }
    let interior = kinks
        .iter()
        .flat_map(|&b| [(r - b).abs(), r + b])
        .chain(core::iter::once(r));
    Some(breakpoints(start, end, interior))
}

/// `u(r, t)` for radially symmetric data in three dimensions.
pub fn solve_u_3d(
    data: &InitialData,
    r: f64,
    t: f64,
    kg: &KgParams,
    opts: &EvolveOptions,
) -> Result<f64> {
    non_negative("r", r)?;
    check_time(t, kg)?;
    let (phi_extent, phi_kinks) = radial_source(&data.phi)?;
    let (psi_extent, psi_kinks) = radial_source(&data.psi)?;
    if t == 0.0 {
        return Ok(data.phi.value(r));
    }
    let quad = opts.quadrature()?;
    let sphere = &opts.sphere;
    let v = kg.v();
    let reach = v * t;
    let has_mass = kg.q_sq() != 0.0;
    let mut u = 0.0;

    if let Some(extent) = psi_extent {
        let psi = |rho: f64| data.psi.value(rho);
        let mean = |rho: f64| sphere.mean_radial(psi, r, rho, &psi_kinks);
        u += t * mean(reach);
        if has_mass {
            if let Some(points) = shell_range(r, reach, extent, &psi_kinks) {
                let inner = quad.integrate_pieces(&points, |rho| {
                    let cd = cone_distance(rho, t, v).max(0.0);
                    kg.regular_3d(cd) * 4.0 * PI * rho * rho * mean(rho)
                })?;
                u += inner.value;
            }
        }
    }

    if let Some(extent) = phi_extent {
        data.phi.derivative(0.0)?;
        let phi = |rho: f64| data.phi.value(rho);
        let dphi = |rho: f64| data.phi.derivative(rho).unwrap_or(0.0);
        let mean = |rho: f64| sphere.mean_radial(phi, r, rho, &phi_kinks);
        let outer = mean(reach);
        let slope = sphere.mean_radial_dr(dphi, r, reach, &phi_kinks);
        u += outer + reach * slope;
        if has_mass {
            u -= 0.5 * kg.q_sq() * t * t * outer;
            if let Some(points) = shell_range(r, reach, extent, &phi_kinks) {
                let inner = quad.integrate_pieces(&points, |rho| {
                    let cd = cone_distance(rho, t, v).max(0.0);
                    kg.regular_3d_dt(cd, t) * 4.0 * PI * rho * rho * mean(rho)
                })?;
                u += inner.value;
            }
        }
    }
    Ok(u)
}

/// `u` at every grid position, in the given geometry.
pub fn evolve_grid(
    data: &InitialData,
    axis: GridAxis,
    t: f64,
    kg: &KgParams,
    tau: f64,
    geometry: Geometry,
    opts: &EvolveOptions,
) -> Result<FieldGrid> {
    if geometry == Geometry::Radial && axis.origin() < 0.0 {
        return Err(Error::Negative {
            name: "radial grid origin",
            value: axis.origin(),
        });
    }
    let values = axis
        .positions()
        .map(|x| match geometry {
            Geometry::Planar => solve_u_1d(data, x, t, kg, opts),
            Geometry::Radial => solve_u_3d(data, x, t, kg, opts),
        })
        .collect::<Result<Vec<f64>>>()?;
    FieldGrid::new(axis, values, t, FieldKind::U, *kg, tau)
}

/// Temperature of the damped physical problem on a grid. The data are the
/// `u`-form data, so `T(·, 0) = Φ` and `T_t(·, 0) = Ψ − Φ/(2τ)`.
pub fn evolve_temperature_grid(
    data: &InitialData,
    axis: GridAxis,
    t: f64,
    params: &PhysicalParams,
    geometry: Geometry,
    opts: &EvolveOptions,
) -> Result<FieldGrid> {
    let derived = DerivedParams::derive(params)?;
    let kg = derived.kg()?;
    evolve_grid(data, axis, t, &kg, derived.tau, geometry, opts)?.to_temperature()
}

#[cfg(test)]
mod tests {
    use super::*;
    use libm::{cos, cosh, exp, sin, sinh};
    use proptest::prelude::*;

    fn gaussian(w: f64, a: f64) -> Profile {
        Profile::gaussian(0.0, w, a).unwrap()
    }

    fn opts() -> EvolveOptions {
        EvolveOptions::default()
    }

    #[test]
    fn sphere_mean_of_polynomials() {
        let s = SphereQuadrature::new(12, 24).unwrap();
        // mean of |y|² over |y − c| = R is |c|² + R²
        let m = s.mean(
            |p| p[0] * p[0] + p[1] * p[1] + p[2] * p[2],
            [0.3, -0.2, 0.5],
            1.5,
        );
        assert!((m - (0.38 + 2.25)).abs() < 1e-13);
        let m = s.mean(|p| p[0] * p[1] + p[2], [0.0, 0.0, 0.0], 2.0);
        assert!(m.abs() < 1e-14);
        let radial = s.mean_radial(|rho| rho * rho, 0.38f64.sqrt(), 1.5, &[]);
        assert!((radial - (0.38 + 2.25)).abs() < 1e-13);
        assert!(SphereQuadrature::new(4, 16).is_err());
    }

    #[test]
    fn radial_mean_matches_general_mean() {
        let s = SphereQuadrature::default();
        let f = |rho: f64| exp(-rho * rho) * (1.0 + rho);
        let r = 0.7;
        let radius = 1.1;
        let general = s.mean(
            |p| f(sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])),
            [0.0, 0.0, r],
            radius,
        );
        let axial = s.mean_radial(f, r, radius, &[]);
        assert!((general - axial).abs() < 1e-12);
        let h = 1e-5;
        let fd = (s.mean_radial(f, r, radius + h, &[]) - s.mean_radial(f, r, radius - h, &[]))
            / (2.0 * h);
        let df = |rho: f64| exp(-rho * rho) * (1.0 - 2.0 * rho * (1.0 + rho));
        assert!((s.mean_radial_dr(df, r, radius, &[]) - fd).abs() < 1e-8);
    }

    #[test]
    fn dalembert_without_mass() {
        let kg = KgParams::new(2.0, 0.0).unwrap();
        let data = InitialData::new(gaussian(1.0, 1.0), Profile::Zero);
        for (x, t) in [(0.0, 1.0), (1.5, 0.4), (-3.0, 2.0)] {
            let u = solve_u_1d(&data, x, t, &kg, &opts()).unwrap();
            let exact =
                0.5 * (exp(-(x + 2.0 * t) * (x + 2.0 * t)) + exp(-(x - 2.0 * t) * (x - 2.0 * t)));
            assert!((u - exact).abs() < 1e-15, "x = {x}, t = {t}");
        }
    }

    #[test]
    fn homogeneous_data_oscillate_in_1d() {
        let q_sq: f64 = 1.7;
        let q = q_sq.sqrt();
        let kg = KgParams::new(1.3, q_sq).unwrap();
        let one = Profile::constant(1.0).unwrap();
        for t in [0.3, 1.0, 2.5] {
            let u = solve_u_1d(
                &InitialData::new(one.clone(), Profile::Zero),
                0.4,
                t,
                &kg,
                &opts(),
            )
            .unwrap();
            assert!((u - cos(q * t)).abs() < 1e-10, "t = {t}");
            let u = solve_u_1d(
                &InitialData::new(Profile::Zero, one.clone()),
                0.4,
                t,
                &kg,
                &opts(),
            )
            .unwrap();
            assert!((u - sin(q * t) / q).abs() < 1e-10, "t = {t}");
        }
        let tachyonic = KgParams::new(1.0, -q_sq).unwrap();
        let u = solve_u_1d(
            &InitialData::new(one, Profile::Zero),
            0.0,
            1.5,
            &tachyonic,
            &opts(),
        )
        .unwrap();
        assert!((u - cosh(q * 1.5)).abs() < 1e-9);
    }

    #[test]
    fn homogeneous_data_oscillate_in_3d() {
        let q_sq: f64 = 2.0;
        let q = q_sq.sqrt();
        let kg = KgParams::new(0.8, q_sq).unwrap();
        let one = Profile::constant(1.0).unwrap();
        for (r, t) in [(0.0, 0.5), (0.7, 1.2), (3.0, 2.0)] {
            let u = solve_u_3d(
                &InitialData::new(one.clone(), Profile::Zero),
                r,
                t,
                &kg,
                &opts(),
            )
            .unwrap();
            assert!((u - cos(q * t)).abs() < 1e-9, "r = {r}, t = {t}");
            let u = solve_u_3d(
                &InitialData::new(Profile::Zero, one.clone()),
                r,
                t,
                &kg,
                &opts(),
            )
            .unwrap();
            assert!((u - sin(q * t) / q).abs() < 1e-9, "r = {r}, t = {t}");
        }
        let tachyonic = KgParams::new(1.0, -1.0).unwrap();
        let u = solve_u_3d(
            &InitialData::new(Profile::Zero, one),
            0.5,
            1.0,
            &tachyonic,
            &opts(),
        )
        .unwrap();
        assert!((u - sinh(1.0)).abs() < 1e-9);
    }

    #[test]
    fn kirchhoff_without_mass() {
        // At the origin u = Φ(vt) + vt Φ'(vt) and Ψ contributes t Ψ(vt).
        let kg = KgParams::new(1.5, 0.0).unwrap();
        let g = gaussian(0.8, 1.0);
        let data = InitialData::new(g.clone(), g.clone());
        for t in [0.2, 0.7, 1.6] {
            let r = 1.5 * t;
            let expected = g.value(r) + r * g.derivative(r).unwrap() + t * g.value(r);
            let u = solve_u_3d(&data, 0.0, t, &kg, &opts()).unwrap();
            assert!((u - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn three_d_reduces_to_one_d_for_odd_extension() {
        // w = r u solves the 1D equation with odd data r Φ(r).
        let kg = KgParams::new(1.0, 0.9).unwrap();
        let data = InitialData::new(gaussian(0.7, 1.0), gaussian(1.1, 0.4));
        let (r, t) = (0.9, 1.3);
        let u3 = solve_u_3d(&data, r, t, &kg, &opts()).unwrap();
        let quad = Adaptive::new(1e-12);
        let odd_phi = |y: f64| y * data.phi.value(y.abs());
        let odd_psi = |y: f64| y * data.psi.value(y.abs());
        let phi_src = Source {
            f: &odd_phi,
            support: data.phi.support(),
            kinks: data.phi.breakpoints(),
        };
        let psi_src = Source {
            f: &odd_psi,
            support: data.psi.support(),
            kinks: data.psi.breakpoints(),
        };
        let w = spread_1d_dt(&phi_src, r, t, &kg, &quad).unwrap()
            + spread_1d(&psi_src, r, t, &kg, &quad).unwrap();
        assert!((u3 - w / r).abs() < 1e-9, "{u3} vs {}", w / r);
    }

    #[test]
    fn finite_speed_gives_exact_zeros() {
        let kg = KgParams::new(1.0, 1.0).unwrap();
        let rect = Profile::rectangle(0.0, 1.0, 1.0).unwrap();
        let data = InitialData::new(rect.clone(), rect);
        assert_eq!(solve_u_1d(&data, 3.5, 2.0, &kg, &opts()).unwrap(), 0.0);
        assert_eq!(solve_u_1d(&data, -3.01, 2.0, &kg, &opts()).unwrap(), 0.0);
        let g = InitialData::new(Profile::Zero, gaussian(0.1, 1.0));
        let edge = 28.0 * 0.1;
        assert_eq!(
            solve_u_3d(&g, edge + 2.0 + 1e-9, 2.0, &kg, &opts()).unwrap(),
            0.0
        );
    }

    #[test]
    fn rejects_bad_data_in_3d() {
        let kg = KgParams::new(1.0, 1.0).unwrap();
        let shifted = InitialData::new(Profile::gaussian(0.5, 1.0, 1.0).unwrap(), Profile::Zero);
        assert_eq!(
            solve_u_3d(&shifted, 0.0, 1.0, &kg, &opts()),
            Err(Error::NotRadiallySymmetric)
        );
        let rect = InitialData::new(Profile::rectangle(0.0, 1.0, 1.0).unwrap(), Profile::Zero);
        assert!(matches!(
            solve_u_3d(&rect, 0.0, 1.0, &kg, &opts()),
            Err(Error::NotDifferentiable { .. })
        ));
        let rect_psi = InitialData::new(Profile::Zero, Profile::rectangle(0.0, 1.0, 1.0).unwrap());
        assert!(solve_u_3d(&rect_psi, 0.5, 1.0, &kg, &opts()).is_ok());
    }

    #[test]
    fn initial_time_returns_data() {
        let kg = KgParams::new(1.0, 1.0).unwrap();
        let data = InitialData::new(gaussian(1.0, 2.0), gaussian(1.0, 5.0));
        assert_eq!(
            solve_u_1d(&data, 0.3, 0.0, &kg, &opts()).unwrap(),
            data.phi.value(0.3)
        );
        assert_eq!(
            solve_u_3d(&data, 0.3, 0.0, &kg, &opts()).unwrap(),
            data.phi.value(0.3)
        );
        let small = solve_u_1d(&data, 0.3, 1e-7, &kg, &opts()).unwrap();
        assert!((small - data.phi.value(0.3) - 1e-7 * data.psi.value(0.3)).abs() < 1e-12);
    }

    #[test]
    fn rate_matches_time_difference() {
        let kg = KgParams::new(1.0, 0.5).unwrap();
        let data = InitialData::new(gaussian(1.0, 1.0), gaussian(0.6, -0.3));
        let (x, t, h) = (0.4, 1.1, 1e-4);
        let fd = (solve_u_1d(&data, x, t + h, &kg, &opts()).unwrap()
            - solve_u_1d(&data, x, t - h, &kg, &opts()).unwrap())
            / (2.0 * h);
        let rate = solve_u_1d_rate(&data, x, t, &kg, &opts()).unwrap();
        assert!((rate - fd).abs() < 1e-7);
    }

    #[test]
    fn grids_and_temperature() {
        let kg = KgParams::new(1.0, 1.0).unwrap();
        let data = InitialData::new(gaussian(1.0, 1.0), Profile::Zero);
        let axis = GridAxis::spanning(-2.0, 2.0, 9).unwrap();
        let u = evolve_grid(&data, axis, 0.5, &kg, 2.0, Geometry::Planar, &opts()).unwrap();
        let temp = u.to_temperature().unwrap();
        for (a, b) in u.values().iter().zip(temp.values()) {
            assert!((b - a * exp(-0.5 / 4.0)).abs() < 1e-16);
        }
        assert_eq!(temp.kind(), FieldKind::Temperature);
        let neg = GridAxis::new(-1.0, 0.5, 3).unwrap();
        assert!(evolve_grid(&data, neg, 0.5, &kg, 2.0, Geometry::Radial, &opts()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn linear_in_data(a in -3.0f64..3.0, b in -3.0f64..3.0, x in -3.0f64..3.0, t in 0.1f64..3.0) {
            let kg = KgParams::new(1.0, 0.8).unwrap();
            let f = gaussian(0.7, 1.0);
            let g = gaussian(1.3, 1.0);
            let combined = InitialData::new(f.scaled(a), g.scaled(b));
            let uf = solve_u_1d(&InitialData::new(f, Profile::Zero), x, t, &kg, &opts()).unwrap();
            let ug = solve_u_1d(&InitialData::new(Profile::Zero, g), x, t, &kg, &opts()).unwrap();
            let u = solve_u_1d(&combined, x, t, &kg, &opts()).unwrap();
            prop_assert!((u - (a * uf + b * ug)).abs() < 1e-9 * (1.0 + a.abs() + b.abs()));
        }

        #[test]
        fn even_data_give_even_solutions(x in 0.0f64..4.0, t in 0.1f64..3.0) {
            let kg = KgParams::new(1.0, 1.5).unwrap();
            let data = InitialData::new(gaussian(0.9, 1.0), gaussian(0.5, 2.0));
            let plus = solve_u_1d(&data, x, t, &kg, &opts()).unwrap();
            let minus = solve_u_1d(&data, -x, t, &kg, &opts()).unwrap();
            prop_assert!((plus - minus).abs() < 1e-12);
        }
    }
}
