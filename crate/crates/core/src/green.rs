//! Green functions of the undamped Klein-Gordon form
//! `u_tt − v² Δu + q² u = 0` in one and three dimensions, and the spectral
//! and finite-difference oracles used to check them.
//!
//! Closed forms (with `s² = t² − r²/v²`, the cone distance):
//!
//! ```text
//! G₁(x, t) = H(s²) J₀(q s) / (2v)
//! G₃(r, t) = δ(r − vt) / (4π v r)  −  H(s²) q J₁(q s) / (4π v³ s)
//! ```
//!
//! Both prefactors use the propagation speed `v`. The delta layer is never
//! sampled: [`GreenEval3D::cone_layer_coefficient`] is the factor `t` with
//! which it acts on test data through the spherical mean of radius `vt`.
//!
//! For `q² < 0` the Bessel functions are replaced by their continuations in
//! `q²` (`J₀(qs) → I₀(|q|s)`, `q J₁(qs)/s → −|q| I₁(|q|s)/s`), see
//! [`crate::special::j1_over_z_continued`].

use core::f64::consts::PI;

use libm::{cos, sin, sinh, sqrt};

use crate::error::{finite, non_negative, positive, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special::{check_continued, j0_continued, j1_over_z_continued, j2_over_z2_continued};

/// Speed and squared frequency of the undamped equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KgParams {
    v: f64,
    q_sq: f64,
}

impl KgParams {
    pub fn new(v: f64, q_sq: f64) -> Result<Self> {
        positive("v", v)?;
        finite("v", v)?;
        finite("q_sq", q_sq)?;
        Ok(KgParams { v, q_sq })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn q_sq(&self) -> f64 {
        self.q_sq
    }

    /// `√|q²|`.
    pub fn q_abs(&self) -> f64 {
        sqrt(self.q_sq.abs())
    }

    /// `J₀(q s)` continued, as a function of the cone distance `s²`.
    pub(crate) fn kernel_1d(&self, cone_distance: f64) -> f64 {
        j0_continued(self.q_sq * cone_distance) / (2.0 * self.v)
    }

    /// `∂G₁/∂t` inside the cone: `−q² t J₁(qs)/(qs) / (2v)`.
    pub(crate) fn kernel_1d_dt(&self, cone_distance: f64, t: f64) -> f64 {
        -self.q_sq * t * j1_over_z_continued(self.q_sq * cone_distance) / (2.0 * self.v)
    }

    /// Interior part of `G₃`: `−q² J₁(qs)/(qs) / (4π v³)`.
    pub(crate) fn regular_3d(&self, cone_distance: f64) -> f64 {
        -self.q_sq * j1_over_z_continued(self.q_sq * cone_distance) / (4.0 * PI * cube(self.v))
    }

    /// `∂/∂t` of [`Self::regular_3d`]: `q⁴ t J₂(qs)/(qs)² / (4π v³)`.
    pub(crate) fn regular_3d_dt(&self, cone_distance: f64, t: f64) -> f64 {
        self.q_sq * self.q_sq * t * j2_over_z2_continued(self.q_sq * cone_distance)
            / (4.0 * PI * cube(self.v))
    }

    /// Domain check for every kernel evaluated up to time `t`.
    pub(crate) fn check_kernel_domain(&self, t: f64) -> Result<()> {
        check_continued(self.q_sq * t * t)
    }
}

fn cube(x: f64) -> f64 {
    x * x * x
}

/// Position of a spacetime point relative to the wave cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Interior,
    OnCone,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeRegion {
    pub region: Region,
    /// `t² − r²/v²`, in s².
    pub cone_distance: f64,
}

/// Scale-free default tolerance for [`classify`]: `1e-12 · t²`.
pub fn default_cone_eps(t: f64) -> f64 {
    1e-12 * t * t
}

/// `t² − r²/v²` evaluated in factored form.
pub(crate) fn cone_distance(r: f64, t: f64, v: f64) -> f64 {
    let travel = r / v;
    (t - travel) * (t + travel)
}

pub fn classify(r: f64, t: f64, kg: &KgParams, cone_eps: f64) -> Result<ConeRegion> {
    non_negative("t", t)?;
    non_negative("r", r)?;
    let cone_distance = cone_distance(r, t, kg.v);
    let region = if cone_distance > cone_eps {
        Region::Interior
    } else if cone_distance < -cone_eps {
        Region::Exterior
    } else {
        Region::OnCone
    };
    Ok(ConeRegion {
        region,
        cone_distance,
    })
}

/// One-dimensional Green function `H(vt − |x|) J₀(q√(t² − x²/v²)) / (2v)`.
///
/// Exterior points return exactly `0.0`. On the cone the value is `1/(2v)`.
pub fn green_1d(x: f64, t: f64, kg: &KgParams) -> Result<f64> {
    finite("x", x)?;
    let cone = classify(x.abs(), t, kg, default_cone_eps(t))?;
    match cone.region {
        Region::Exterior => Ok(0.0),
        _ => {
            let s_sq = cone.cone_distance.max(0.0);
            check_continued(kg.q_sq * s_sq)?;
            Ok(kg.kernel_1d(s_sq))
        }
    }
}

/// Distributional 3D Green function split into its two parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenEval3D {
    /// Smooth interior term; exactly `0.0` outside the cone.
    pub regular: f64,
    /// The delta layer acts on `f` as `cone_layer_coefficient · M_{vt}[f]`.
    pub cone_layer_coefficient: f64,
}

pub fn green_3d(r: f64, t: f64, kg: &KgParams) -> Result<GreenEval3D> {
    positive("t", t)?;
    let cone = classify(r, t, kg, default_cone_eps(t))?;
    let regular = match cone.region {
        Region::Exterior => 0.0,
        // On the cone this is the finite limit −q²/(8π v³).
        _ => {
            let s_sq = cone.cone_distance.max(0.0);
            check_continued(kg.q_sq * s_sq)?;
            kg.regular_3d(s_sq)
        }
    };
    Ok(GreenEval3D {
        regular,
        cone_layer_coefficient: t,
    })
}

/// Oracle for `green_3d(..).regular` from `−(1/2πr) ∂G₁/∂r`, with the
/// radial derivative taken by central differences of step `h`.
///
/// At `r = 0` the limit `−(1/2π) ∂²G₁/∂r²` is used instead.
pub fn green_3d_from_1d(r: f64, t: f64, kg: &KgParams, h: f64) -> Result<f64> {
    positive("t", t)?;
    non_negative("r", r)?;
    positive("h", h)?;
    let margin = kg.v * t - r;
    if margin <= h {
        return Err(Error::NearCone { r, t, margin: h });
    }
    let g = |x: f64| green_1d(x, t, kg);
    if r == 0.0 {
        let second = (g(h)? - 2.0 * g(0.0)? + g(-h)?) / (h * h);
        return Ok(-second / (2.0 * PI));
    }
    let first = (g(r + h)? - g(r - h)?) / (2.0 * h);
    Ok(-first / (2.0 * PI * r))
}

/// Fourier-space Green function: the solution of `G'' = −(v²k² + q²) G`
/// with `G(0) = 0`, `G'(0) = 1`.
pub fn fourier_mode_solution(k: f64, t: f64, kg: &KgParams) -> f64 {
    let lambda = kg.v * kg.v * k * k + kg.q_sq;
    let phase_sq = lambda * t * t;
    if phase_sq.abs() < 1e-8 {
        // removable singularity at λ = 0
        return t * (1.0 - phase_sq / 6.0 + phase_sq * phase_sq / 120.0);
    }
    if lambda > 0.0 {
        let omega = sqrt(lambda);
        sin(t * omega) / omega
    } else {
        let growth = sqrt(-lambda);
        sinh(t * growth) / growth
    }
}

/// Panel rule for the spectral oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelRule {
    GaussLegendre8,
    GaussLegendre12,
    GaussLegendre16,
}

impl PanelRule {
    pub fn order(self) -> usize {
        match self {
            PanelRule::GaussLegendre8 => 8,
            PanelRule::GaussLegendre12 => 12,
            PanelRule::GaussLegendre16 => 16,
        }
    }
}

/// Discretization of the inverse Fourier integral over `[0, k_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Truncation wavenumber, 1/m. The tail beyond it is added analytically.
    pub k_max: f64,
    pub n_panels: usize,
    pub scheme: PanelRule,
    /// Largest acceptable error estimate.
    pub tol: f64,
}

impl QuadratureSpec {
    pub const MIN_PANELS: usize = 64;

    pub fn new(k_max: f64, n_panels: usize, scheme: PanelRule, tol: f64) -> Result<Self> {
        positive("k_max", k_max)?;
        finite("k_max", k_max)?;
        positive("tol", tol)?;
        if n_panels < Self::MIN_PANELS {
            return Err(Error::InvalidConfig(
                "QuadratureSpec needs at least 64 panels",
            ));
        }
        Ok(QuadratureSpec {
            k_max,
            n_panels,
            scheme,
            tol,
        })
    }

    /// Resolution suited to evaluating at distance `x` and time `t`:
    /// quarter-period panels for the fastest phase `(vt + |x|) k`, and a
    /// cutoff far enough out that the asymptotic tail is accurate for the
    /// slowest phase `|vt − |x|| k` and for the `q²t/k` correction it
    /// neglects beyond first order.
    pub fn for_point(x: f64, t: f64, kg: &KgParams) -> Result<Self> {
        positive("t", t)?;
        let reach = kg.v * t;
        let fast = reach + x.abs();
        let slow = match (reach - x.abs()).abs() {
            d if d > 1e-3 * fast => d,
            _ => fast,
        };
        let k_max = (400.0 / slow)
            .max(40.0 * kg.q_abs() / kg.v)
            .max(100.0 * kg.q_sq.abs() * t / kg.v);
        let panel_width = 0.25 * (2.0 * PI / fast);
        let n_panels = ((k_max / panel_width) as usize + 1).max(Self::MIN_PANELS);
        QuadratureSpec::new(k_max, n_panels, PanelRule::GaussLegendre12, 1e-7)
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        QuadratureSpec::new(self.k_max, self.n_panels, self.scheme, tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

/// `∫_u^∞ sin(s)/s ds` for large `u > 0`, by repeated integration by parts.
fn sine_integral_tail(u: f64) -> f64 {
    let inv = 1.0 / u;
    let inv2 = inv * inv;
    let f = inv * (1.0 - 2.0 * inv2 + 24.0 * inv2 * inv2);
    let g = inv2 * (1.0 - 6.0 * inv2 + 120.0 * inv2 * inv2);
    f * cos(u) + g * sin(u)
}

/// `∫_K^∞ sin(a k)/k dk`.
fn sine_tail(a: f64, k: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let value = sine_integral_tail(a.abs() * k);
    if a < 0.0 {
        -value
    } else {
        value
    }
}

/// `∫_K^∞ cos(a k)/k² dk = cos(aK)/K − |a| ∫_{|a|K}^∞ sin(s)/s ds`.
fn cosine_tail_sq(a: f64, k: f64) -> f64 {
    if a == 0.0 {
        return 1.0 / k;
    }
    let u = a.abs() * k;
    cos(u) / k - a.abs() * sine_integral_tail(u)
}

/// `∫_K^∞` of the large-k expansion of `G(k, t) cos(kx)`:
///
/// ```text
/// [sin(a₊k) + sin(a₋k)] / (2vk) + t q² [cos(a₊k) + cos(a₋k)] / (4v²k²),  a± = vt ± x
/// ```
fn asymptotic_tail(x: f64, t: f64, kg: &KgParams, k: f64) -> f64 {
    let v = kg.v;
    let reach = v * t;
    let (plus, minus) = (reach + x, reach - x);
    let leading = (sine_tail(plus, k) + sine_tail(minus, k)) / (2.0 * v);
    let correction =
        t * kg.q_sq * (cosine_tail_sq(plus, k) + cosine_tail_sq(minus, k)) / (4.0 * v * v);
    leading + correction
}

/// `∫₀^∞ G(k, t) cos(kx) dk`: Gauss–Legendre panels on `[0, k_max]` plus
/// the asymptotic tail. The error estimate adds the panel-doubling
/// difference to the change observed when the cutoff moves to `1.5 k_max`.
fn cosine_transform(x: f64, t: f64, kg: &KgParams, spec: &QuadratureSpec) -> SpectralEstimate {
    let rule = GaussLegendre::new(spec.scheme.order());
    let integrand = |k: f64| fourier_mode_solution(k, t, kg) * cos(k * x);
    let panels = |count: usize, start: f64, width: f64| {
        (0..count).fold(0.0, |acc, p| {
            let a = start + p as f64 * width;
            acc + rule.integrate(a, a + width, integrand)
        })
    };
    let k_max = spec.k_max;
    let n = spec.n_panels;
    let coarse = panels(n, 0.0, k_max / n as f64);
    let fine_width = k_max / (2 * n) as f64;
    let fine = panels(2 * n, 0.0, fine_width);
    let tail = asymptotic_tail(x, t, kg, k_max);

    let extension = panels(n, k_max, fine_width);
    let extended_end = k_max + n as f64 * fine_width;
    let truncation = (extension + asymptotic_tail(x, t, kg, extended_end) - tail).abs();

    SpectralEstimate {
        value: fine + tail,
        error_estimate: (fine - coarse).abs() + truncation,
    }
}

/// Numerical inverse Fourier transform of [`fourier_mode_solution`] in 1D:
/// `(1/π) ∫₀^∞ G(k, t) cos(kx) dk`.
pub fn spectral_green_1d(
    x: f64,
    t: f64,
    kg: &KgParams,
    spec: &QuadratureSpec,
) -> Result<SpectralEstimate> {
    positive("t", t)?;
    finite("x", x)?;
    let raw = cosine_transform(x, t, kg, spec);
    let estimate = SpectralEstimate {
        value: raw.value / PI,
        error_estimate: raw.error_estimate / PI,
    };
    if estimate.error_estimate > spec.tol {
        return Err(Error::Quadrature {
            achieved: estimate.error_estimate,
            requested: spec.tol,
        });
    }
    Ok(estimate)
}

/// Spectral estimate of the regular part of `G₃` away from the cone:
/// `−(1/(2π² r)) ∂/∂r ∫₀^∞ G(k, t) cos(kr) dk`, with the `r`-derivative
/// taken by central differences of step `h`.
pub fn spectral_green_3d_radial(
    r: f64,
    t: f64,
    kg: &KgParams,
    spec: &QuadratureSpec,
    h: f64,
) -> Result<SpectralEstimate> {
    positive("t", t)?;
    positive("r", r)?;
    positive("h", h)?;
    let margin = (kg.v * t - r).abs();
    if margin <= h || r <= h {
        return Err(Error::NearCone { r, t, margin: h });
    }
    let ahead = cosine_transform(r + h, t, kg, spec);
    let behind = cosine_transform(r - h, t, kg, spec);
    let scale = -1.0 / (2.0 * PI * PI * r * 2.0 * h);
    let estimate = SpectralEstimate {
        value: scale * (ahead.value - behind.value),
        error_estimate: scale.abs() * (ahead.error_estimate + behind.error_estimate),
    };
    if estimate.error_estimate > spec.tol {
        return Err(Error::Quadrature {
            achieved: estimate.error_estimate,
            requested: spec.tol,
        });
    }
    Ok(estimate)
}
