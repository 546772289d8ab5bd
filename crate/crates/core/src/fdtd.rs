//! Explicit leapfrog solver used as an independent check of the
//! convolution solutions.
//!
//! The scheme is second order in space and time and advances
//!
//! ```text
//! T_tt + γ T_t + κ T = v² T_xx
//! ```
//!
//! with central differences. The undamped form has `γ = 0`, `κ = q²`; the
//! damped temperature form has `γ = 1/τ`, `κ = q² + 1/(4τ²)`. Radially
//! symmetric 3D problems are advanced in `w = r u`, which satisfies the same
//! one-dimensional equation with `w(0) = 0`.

use alloc::vec::Vec;

use libm::ceil;

use crate::error::{finite, positive, Error, Result};
use crate::evolution::Geometry;
use crate::field::{FieldGrid, FieldKind, GridAxis};
use crate::green::KgParams;
use crate::profile::InitialData;

/// Relative amplitude at the nodes next to a Dirichlet boundary above which
/// the run is aborted.
pub const BOUNDARY_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Field pinned to zero at the outer nodes. Guarded: the run fails once
    /// the wave reaches the nodes beside the boundary.
    Dirichlet,
    /// Zero normal derivative (`u_x = 0`, or `u_r = 0` radially).
    Reflecting,
}

/// Which form of the equation the scheme advances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    /// `u_tt − v² Δu + q² u = 0`.
    Undamped,
    /// The temperature equation with relaxation time `τ`.
    Damped,
}

/// Uniform grid on `[x_min, x_max]` with `nx` nodes and `n_steps` steps of
/// size `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec1D {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub dt: f64,
    pub n_steps: usize,
    pub boundary: Boundary,
    /// Whether a Dirichlet run aborts when the wave reaches the boundary.
    pub guard: bool,
}

impl GridSpec1D {
    pub fn new(
        x_min: f64,
        x_max: f64,
        nx: usize,
        dt: f64,
        n_steps: usize,
        boundary: Boundary,
    ) -> Result<Self> {
        finite("x_min", x_min)?;
        finite("x_max", x_max)?;
        positive("dt", dt)?;
        finite("dt", dt)?;
        if nx < 3 || x_max <= x_min {
            return Err(Error::InvalidConfig(
                "FDTD grid needs nx >= 3 and x_max > x_min",
            ));
        }
        Ok(GridSpec1D {
            x_min,
            x_max,
            nx,
            dt,
            n_steps,
            boundary,
            guard: true,
        })
    }

    /// Grid reaching `t_end` in whole steps with Courant number at most
    /// `courant`.
    pub fn with_courant(
        x_min: f64,
        x_max: f64,
        nx: usize,
        courant: f64,
        v: f64,
        t_end: f64,
        boundary: Boundary,
    ) -> Result<Self> {
        positive("courant", courant)?;
        positive("v", v)?;
        positive("t_end", t_end)?;
        finite("t_end", t_end)?;
        if nx < 3 || x_max <= x_min {
            return Err(Error::InvalidConfig(
                "FDTD grid needs nx >= 3 and x_max > x_min",
            ));
        }
        let dx = (x_max - x_min) / (nx - 1) as f64;
        let n_steps = ceil(t_end * v / (courant * dx) - 1e-9).max(1.0) as usize;
        GridSpec1D::new(x_min, x_max, nx, t_end / n_steps as f64, n_steps, boundary)
    }

    pub fn without_guard(self) -> Self {
        GridSpec1D {
            guard: false,
            ..self
        }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn axis(&self) -> GridAxis {
        GridAxis::new(self.x_min, self.dx(), self.nx).expect("validated grid")
    }

    pub fn t_end(&self) -> f64 {
        self.dt * self.n_steps as f64
    }

    pub fn courant(&self, v: f64) -> f64 {
        v * self.dt / self.dx()
    }
}

/// Leapfrog state: two time levels and the coefficients that advance them.
#[derive(Debug, Clone)]
pub struct Scheme {
    spec: GridSpec1D,
    geometry: Geometry,
    equation: Equation,
    kg: KgParams,
    tau: f64,
    gamma: f64,
    kappa: f64,
    prev: Vec<f64>,
    curr: Vec<f64>,
    /// Time level held in `curr`.
    level: usize,
    guard_scale: f64,
}

/// Sets up the first two time levels. `u¹` comes from a second-order Taylor
/// step using the discrete Laplacian, so the scheme stays second order.
///
/// Radial runs require `x_min = 0`. `tau` is used only by the damped form
/// and may be `+∞`.
pub fn init_scheme(
    spec: GridSpec1D,
    data: &InitialData,
    kg: &KgParams,
    tau: f64,
    equation: Equation,
    geometry: Geometry,
) -> Result<Scheme> {
    positive("tau", tau)?;
    let courant = spec.courant(kg.v());
    if courant > 1.0 {
        return Err(Error::Cfl { courant });
    }
    if geometry == Geometry::Radial {
        if spec.x_min != 0.0 {
            return Err(Error::InvalidConfig("radial FDTD grid must start at r = 0"));
        }
        if !data.phi.is_radially_symmetric() || !data.psi.is_radially_symmetric() {
            return Err(Error::NotRadiallySymmetric);
        }
    }
    let (gamma, kappa) = match equation {
        Equation::Undamped => (0.0, kg.q_sq()),
        Equation::Damped => {
            let gamma = 1.0 / tau;
            (gamma, kg.q_sq() + 0.25 * gamma * gamma)
        }
    };
    let axis = spec.axis();
    let weight = |x: f64| match geometry {
        Geometry::Planar => 1.0,
        Geometry::Radial => x,
    };
    let u0: Vec<f64> = axis
        .positions()
        .map(|x| weight(x) * data.phi.value(x))
        .collect();
    let rate: Vec<f64> = axis
        .positions()
        .zip(&u0)
        .map(|(x, &u)| weight(x) * data.psi.value(x) - 0.5 * gamma * u)
        .collect();
    let mut scheme = Scheme {
        spec,
        geometry,
        equation,
        kg: *kg,
        tau,
        gamma,
        kappa,
        prev: Vec::new(),
        curr: u0,
        level: 0,
        guard_scale: 0.0,
    };
    scheme.pin_boundaries_of_curr();
    let dt = spec.dt;
    let v2 = kg.v() * kg.v();
    let next: Vec<f64> = (0..spec.nx)
        .map(|i| {
            let c = scheme.curr[i];
            let accel = v2 * scheme.laplacian(&scheme.curr, i) - kappa * c - gamma * rate[i];
            c + dt * rate[i] + 0.5 * dt * dt * accel
        })
        .collect();
    scheme.prev = core::mem::replace(&mut scheme.curr, next);
    scheme.pin_boundaries_of_curr();
    scheme.level = 1;
    scheme.guard_scale = scheme
        .prev
        .iter()
        .chain(&scheme.curr)
        .fold(0.0, |m: f64, v| m.max(v.abs()));
    if spec.n_steps == 0 {
        scheme.curr = scheme.prev.clone();
        scheme.level = 0;
    } else {
        scheme.check_guard()?;
    }
    Ok(scheme)
}

impl Scheme {
    fn left_pinned(&self) -> bool {
        self.geometry == Geometry::Radial || self.spec.boundary == Boundary::Dirichlet
    }

    fn right_pinned(&self) -> bool {
        self.spec.boundary == Boundary::Dirichlet
    }

    fn pin_boundaries_of_curr(&mut self) {
        let n = self.curr.len();
        if self.left_pinned() {
            self.curr[0] = 0.0;
        }
        if self.right_pinned() {
            self.curr[n - 1] = 0.0;
        }
    }

    /// `δ²u / dx²` at node `i` with the ghost values the boundaries imply.
    fn laplacian(&self, u: &[f64], i: usize) -> f64 {
        let n = u.len();
        let dx = self.spec.dx();
        let left = if i > 0 {
            u[i - 1]
        } else if self.left_pinned() {
            0.0
        } else {
            u[1]
        };
        let right = if i + 1 < n {
            u[i + 1]
        } else if self.right_pinned() {
            0.0
        } else {
            match self.geometry {
                Geometry::Planar => u[n - 2],
                // u_r = 0 at R means w_r = w / R
                Geometry::Radial => u[n - 2] + 2.0 * dx * u[n - 1] / self.spec.x_max,
            }
        };
        (left - 2.0 * u[i] + right) / (dx * dx)
    }

    fn check_guard(&self) -> Result<()> {
        if !self.spec.guard || self.spec.boundary != Boundary::Dirichlet || self.guard_scale == 0.0
        {
            return Ok(());
        }
        let n = self.curr.len();
        let limit = BOUNDARY_GUARD * self.guard_scale;
        let left_hit = self.geometry == Geometry::Planar && self.curr[1].abs() > limit;
        if left_hit || self.curr[n - 2].abs() > limit {
            return Err(Error::ConeReachedBoundary { step: self.level });
        }
        Ok(())
    }

    /// Advances one time level.
    pub fn step(&mut self) -> Result<()> {
        let dt = self.spec.dt;
        let v2 = self.kg.v() * self.kg.v();
        let half = 0.5 * self.gamma * dt;
        let next: Vec<f64> = (0..self.spec.nx)
            .map(|i| {
                let c = self.curr[i];
                let rhs = 2.0 * c - (1.0 - half) * self.prev[i]
                    + dt * dt * (v2 * self.laplacian(&self.curr, i) - self.kappa * c);
                rhs / (1.0 + half)
            })
            .collect();
        self.prev = core::mem::replace(&mut self.curr, next);
        self.pin_boundaries_of_curr();
        self.level += 1;
        self.check_guard()
    }

    /// Steps until the final time level of the grid specification.
    pub fn run_to_end(&mut self) -> Result<()> {
        while self.level < self.spec.n_steps {
            self.step()?;
        }
        Ok(())
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn time(&self) -> f64 {
        self.spec.dt * self.level as f64
    }

    /// Raw values of the current level (`w = r u` in radial runs).
    pub fn raw(&self) -> &[f64] {
        &self.curr
    }

    /// Current level as a field grid of `u` (undamped) or `T` (damped).
    pub fn field(&self) -> Result<FieldGrid> {
        let axis = self.spec.axis();
        let values = match self.geometry {
            Geometry::Planar => self.curr.clone(),
            Geometry::Radial => {
                let mut u: Vec<f64> = axis
                    .positions()
                    .zip(&self.curr)
                    .map(|(r, &w)| if r > 0.0 { w / r } else { 0.0 })
                    .collect();
                // quadratic extrapolation of an even function to r = 0
                u[0] = (4.0 * u[1] - u[2]) / 3.0;
                u
            }
        };
        let kind = match self.equation {
            Equation::Undamped => FieldKind::U,
            Equation::Damped => FieldKind::Temperature,
        };
        FieldGrid::new(axis, values, self.time(), kind, self.kg, self.tau)
    }

    /// Discrete energy between the last two levels,
    ///
    /// ```text
    /// E = Σ [ (uⁿ⁺¹ − uⁿ)²/(2dt²) + κ uⁿ⁺¹uⁿ/2 ] dx
    ///   + Σ v² (δuⁿ⁺¹)(δuⁿ)/(2dx²) dx,
    /// ```
    ///
    /// with half weights on unpinned end nodes. It is conserved to rounding
    /// by the undamped planar scheme.
    pub fn energy(&self) -> Result<f64> {
        if self.geometry == Geometry::Radial && self.spec.boundary == Boundary::Reflecting {
            return Err(Error::InvalidConfig(
                "energy is defined for planar or pinned radial grids",
            ));
        }
        let dt = self.spec.dt;
        let dx = self.spec.dx();
        let v2 = self.kg.v() * self.kg.v();
        let (a, b) = (&self.prev, &self.curr);
        let n = a.len();
        let mut nodes = 0.0;
        for i in 0..n {
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            let d = b[i] - a[i];
            nodes += w * (d * d / (2.0 * dt * dt) + 0.5 * self.kappa * a[i] * b[i]);
        }
        let mut edges = 0.0;
        for i in 0..n - 1 {
            edges += (b[i + 1] - b[i]) * (a[i + 1] - a[i]);
        }
        Ok((nodes + v2 * edges / (2.0 * dx * dx)) * dx)
    }
}

/// Runs a planar problem to `spec.t_end()`.
pub fn run_1d(
    spec: GridSpec1D,
    data: &InitialData,
    kg: &KgParams,
    tau: f64,
    equation: Equation,
) -> Result<FieldGrid> {
    let mut scheme = init_scheme(spec, data, kg, tau, equation, Geometry::Planar)?;
    scheme.run_to_end()?;
    scheme.field()
}

/// Runs a radially symmetric 3D problem on `r ∈ [0, x_max]` to
/// `spec.t_end()`.
pub fn run_radial_3d(
    spec: GridSpec1D,
    data: &InitialData,
    kg: &KgParams,
    tau: f64,
    equation: Equation,
) -> Result<FieldGrid> {
    let mut scheme = init_scheme(spec, data, kg, tau, equation, Geometry::Radial)?;
    scheme.run_to_end()?;
    scheme.field()
}
