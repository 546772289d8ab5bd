//! Uniform sample grids and the error norms used to compare them.

use alloc::vec::Vec;

use libm::{exp, sqrt};

use crate::error::{finite, non_negative, positive, Error, Result};
use crate::green::KgParams;

/// Uniform positions `origin + i · spacing`, `i < n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    origin: f64,
    spacing: f64,
    n: usize,
}

impl GridAxis {
    pub fn new(origin: f64, spacing: f64, n: usize) -> Result<Self> {
        finite("origin", origin)?;
        positive("spacing", spacing)?;
        finite("spacing", spacing)?;
        if n == 0 {
            return Err(Error::InvalidConfig("grid needs at least one point"));
        }
        Ok(GridAxis { origin, spacing, n })
    }

    /// `n` points spanning `[min, max]` inclusive.
    pub fn spanning(min: f64, max: f64, n: usize) -> Result<Self> {
        finite("grid min", min)?;
        finite("grid max", max)?;
        if n < 2 || max <= min {
            return Err(Error::InvalidConfig("grid span needs n >= 2 and max > min"));
        }
        GridAxis::new(min, (max - min) / (n - 1) as f64, n)
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn position(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.position(i))
    }
}

/// Which field a grid holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// The undamped field `u = e^{t/(2τ)} T`.
    U,
    Temperature,
}

/// Sampled field at one instant, with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    axis: GridAxis,
    values: Vec<f64>,
    time: f64,
    kind: FieldKind,
    kg: KgParams,
    tau: f64,
}

impl FieldGrid {
    /// `tau` may be `+∞` (no damping); values must be finite.
    pub fn new(
        axis: GridAxis,
        values: Vec<f64>,
        time: f64,
        kind: FieldKind,
        kg: KgParams,
        tau: f64,
    ) -> Result<Self> {
        if values.len() != axis.len() {
            return Err(Error::GridMismatch);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                name: "field value",
            });
        }
        finite("time", time)?;
        positive("tau", tau)?;
        Ok(FieldGrid {
            axis,
            values,
            time,
            kind,
            kg,
            tau,
        })
    }

    pub fn axis(&self) -> &GridAxis {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn kg(&self) -> &KgParams {
        &self.kg
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Converts a `U` grid to temperature; temperature grids are returned
    /// unchanged.
    pub fn to_temperature(&self) -> Result<FieldGrid> {
        if self.kind == FieldKind::Temperature {
            return Ok(self.clone());
        }
        let factor = damping_factor(self.time, self.tau)?;
        let values = self.values.iter().map(|u| factor * u).collect();
        FieldGrid::new(
            self.axis,
            values,
            self.time,
            FieldKind::Temperature,
            self.kg,
            self.tau,
        )
    }
}

/// `e^{−t/(2τ)}`; `τ = +∞` gives 1.
pub fn damping_factor(t: f64, tau: f64) -> Result<f64> {
    non_negative("t", t)?;
    positive("tau", tau)?;
    Ok(exp(-t / (2.0 * tau)))
}

/// `T = e^{−t/(2τ)} u`.
pub fn temperature_from_u(u: f64, t: f64, tau: f64) -> Result<f64> {
    Ok(damping_factor(t, tau)? * u)
}

/// Discrete error norms of `numeric − reference`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    /// `√(Σ eᵢ² Δx)`.
    pub l2: f64,
    pub linf: f64,
    /// `l2` divided by the same norm of the reference.
    pub l2_relative: f64,
}

/// Compares two grids sampled at the same positions and time.
pub fn compare(reference: &FieldGrid, numeric: &FieldGrid) -> Result<Norms> {
    let (a, b) = (reference.axis(), numeric.axis());
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
    if a.len() != b.len()
        || !close(a.origin(), b.origin())
        || !close(a.spacing(), b.spacing())
        || !close(reference.time(), numeric.time())
        || reference.kind() != numeric.kind()
    {
        return Err(Error::GridMismatch);
    }
    let dx = a.spacing();
    let mut sq = 0.0;
    let mut ref_sq = 0.0;
    let mut linf: f64 = 0.0;
    for (r, n) in reference.values().iter().zip(numeric.values()) {
        let e = n - r;
        sq += e * e;
        ref_sq += r * r;
        linf = linf.max(e.abs());
    }
    let l2 = sqrt(sq * dx);
    let ref_l2 = sqrt(ref_sq * dx);
    Ok(Norms {
        l2,
        linf,
        l2_relative: if ref_l2 > 0.0 { l2 / ref_l2 } else { l2 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kg() -> KgParams {
        KgParams::new(1.0, 1.0).unwrap()
    }

    #[test]
    fn axis_positions() {
        let axis = GridAxis::spanning(-1.0, 1.0, 5).unwrap();
        let xs: Vec<f64> = axis.positions().collect();
        assert_eq!(xs, [-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(GridAxis::spanning(1.0, 1.0, 5).is_err());
        assert!(GridAxis::new(0.0, -1.0, 3).is_err());
    }

    #[test]
    fn rejects_non_finite_values() {
        let axis = GridAxis::new(0.0, 1.0, 2).unwrap();
        let bad = FieldGrid::new(
            axis,
            alloc::vec![0.0, f64::NAN],
            0.0,
            FieldKind::U,
            kg(),
            1.0,
        );
        assert!(bad.is_err());
        let short = FieldGrid::new(axis, alloc::vec![0.0], 0.0, FieldKind::U, kg(), 1.0);
        assert_eq!(short, Err(Error::GridMismatch));
    }

    #[test]
    fn substitution_round_trip() {
        for (t, tau) in [(0.0, 1.0), (1.0, 0.5), (3.0, 7.0), (2.0, f64::INFINITY)] {
            let u = 1.2345;
            let temp = temperature_from_u(u, t, tau).unwrap();
            let back = temp * exp(t / (2.0 * tau));
            assert!((back - u).abs() <= 1e-15 * u);
        }
        assert!(temperature_from_u(1.0, 1.0, 0.0).is_err());
        assert!(temperature_from_u(1.0, 1.0, -1.0).is_err());
        let tau = 3.0;
        let half = temperature_from_u(1.0, 2.0 * tau * 2f64.ln(), tau).unwrap();
        assert!((half - 0.5).abs() < 1e-15);
        let quarter = temperature_from_u(1.0, 2.0 * tau * 4f64.ln(), tau).unwrap();
        assert!((quarter - 0.25).abs() < 1e-15);
    }

    #[test]
    fn norms() {
        let axis = GridAxis::new(0.0, 0.5, 3).unwrap();
        let a = FieldGrid::new(
            axis,
            alloc::vec![1.0, 2.0, 2.0],
            1.0,
            FieldKind::U,
            kg(),
            1.0,
        )
        .unwrap();
        let b = FieldGrid::new(
            axis,
            alloc::vec![1.0, 2.0, 4.0],
            1.0,
            FieldKind::U,
            kg(),
            1.0,
        )
        .unwrap();
        let n = compare(&a, &b).unwrap();
        assert_eq!(n.linf, 2.0);
        assert!((n.l2 - sqrt(2.0)).abs() < 1e-15);
        assert!((n.l2_relative - 2.0 / 3.0).abs() < 1e-15);
        let later =
            FieldGrid::new(axis, alloc::vec![0.0; 3], 2.0, FieldKind::U, kg(), 1.0).unwrap();
        assert_eq!(compare(&a, &later), Err(Error::GridMismatch));
    }
}
