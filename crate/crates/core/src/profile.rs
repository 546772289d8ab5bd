//! Initial-data profiles `Φ(x) = u(x, 0)` and `Ψ(x) = u_t(x, 0)`.

use alloc::vec::Vec;

use libm::exp;

use crate::error::{finite, positive, Error, Result};

/// Half-width, in units of `width`, beyond which `exp(−z²)` underflows to
/// exactly zero in f64.
pub const GAUSSIAN_CUTOFF: f64 = 28.0;

/// Piecewise-linear samples, exactly zero outside `[x_first, x_last]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    xs: Vec<f64>,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(xs: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::InvalidConfig(
                "tabulated profile: x and values differ in length",
            ));
        }
        if xs.len() < 2 {
            return Err(Error::InvalidConfig(
                "tabulated profile needs at least two samples",
            ));
        }
        for (&x, &y) in xs.iter().zip(&values) {
            finite("tabulated x", x)?;
            finite("tabulated value", y)?;
        }
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConfig(
                "tabulated profile: x must be strictly increasing",
            ));
        }
        Ok(Tabulated { xs, values })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Index `i` with `xs[i] <= x <= xs[i + 1]`, if inside the support.
    fn segment(&self, x: f64) -> Option<usize> {
        let (lo, hi) = self.support();
        if !(lo..=hi).contains(&x) {
            return None;
        }
        let i = self.xs.partition_point(|&node| node <= x);
        Some(i.saturating_sub(1).min(self.xs.len() - 2))
    }

    fn value(&self, x: f64) -> f64 {
        match self.segment(x) {
            None => 0.0,
            Some(i) => {
                let (x0, x1) = (self.xs[i], self.xs[i + 1]);
                let (y0, y1) = (self.values[i], self.values[i + 1]);
                let s = (x - x0) / (x1 - x0);
                y0 + s * (y1 - y0)
            }
        }
    }

    fn slope(&self, x: f64) -> f64 {
        match self.segment(x) {
            None => 0.0,
            Some(i) => (self.values[i + 1] - self.values[i]) / (self.xs[i + 1] - self.xs[i]),
        }
    }
}

/// Spatial profile of initial data.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `amplitude · exp(−((x − center)/width)²)`.
    Gaussian {
        center: f64,
        width: f64,
        amplitude: f64,
    },
    /// `amplitude` on `|x − center| ≤ halfwidth`, zero elsewhere.
    Rectangle {
        center: f64,
        halfwidth: f64,
        amplitude: f64,
    },
    Constant {
        amplitude: f64,
    },
    Zero,
    Tabulated(Tabulated),
}

/// Where a profile can be non-zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    Empty,
    Bounded(f64, f64),
    Unbounded,
}

impl Support {
    /// Intersection with `[a, b]`, or `None` if empty.
    pub fn clip(&self, a: f64, b: f64) -> Option<(f64, f64)> {
        let (lo, hi) = match *self {
            Support::Empty => return None,
            Support::Unbounded => (a, b),
            Support::Bounded(lo, hi) => (a.max(lo), b.min(hi)),
        };
        (lo < hi).then_some((lo, hi))
    }
}

impl Profile {
    pub fn gaussian(center: f64, width: f64, amplitude: f64) -> Result<Self> {
        finite("center", center)?;
        positive("width", width)?;
        finite("width", width)?;
        finite("amplitude", amplitude)?;
        Ok(Profile::Gaussian {
            center,
            width,
            amplitude,
        })
    }

    pub fn rectangle(center: f64, halfwidth: f64, amplitude: f64) -> Result<Self> {
        finite("center", center)?;
        positive("halfwidth", halfwidth)?;
        finite("halfwidth", halfwidth)?;
        finite("amplitude", amplitude)?;
        Ok(Profile::Rectangle {
            center,
            halfwidth,
            amplitude,
        })
    }

    pub fn constant(amplitude: f64) -> Result<Self> {
        finite("amplitude", amplitude)?;
        Ok(Profile::Constant { amplitude })
    }

    pub fn shape_name(&self) -> &'static str {
        match self {
            Profile::Gaussian { .. } => "gaussian",
            Profile::Rectangle { .. } => "rectangle",
            Profile::Constant { .. } => "constant",
            Profile::Zero => "zero",
            Profile::Tabulated(_) => "tabulated",
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            Profile::Gaussian {
                center,
                width,
                amplitude,
            } => {
                let z = (x - center) / width;
                if z.abs() >= GAUSSIAN_CUTOFF {
                    0.0
                } else {
                    amplitude * exp(-z * z)
                }
            }
            Profile::Rectangle {
                center,
                halfwidth,
                amplitude,
            } => {
                if (x - center).abs() <= *halfwidth {
                    *amplitude
                } else {
                    0.0
                }
            }
            Profile::Constant { amplitude } => *amplitude,
            Profile::Zero => 0.0,
            Profile::Tabulated(table) => table.value(x),
        }
    }

    /// First derivative. Tabulated profiles return the slope of the
    /// containing segment; rectangles have none.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self {
            Profile::Gaussian { center, width, .. } => {
                let z = (x - center) / width;
                Ok(-2.0 * z / width * self.value(x))
            }
            Profile::Rectangle { .. } => Err(Error::NotDifferentiable { shape: "rectangle" }),
            Profile::Constant { .. } | Profile::Zero => Ok(0.0),
            Profile::Tabulated(table) => Ok(table.slope(x)),
        }
    }

    /// Second derivative; only the smooth shapes have one.
    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        match self {
            Profile::Gaussian { center, width, .. } => {
                let z = (x - center) / width;
                Ok((4.0 * z * z - 2.0) / (width * width) * self.value(x))
            }
            Profile::Constant { .. } | Profile::Zero => Ok(0.0),
            other => Err(Error::NotDifferentiable {
                shape: other.shape_name(),
            }),
        }
    }

    pub fn support(&self) -> Support {
        match self {
            Profile::Gaussian {
                center,
                width,
                amplitude,
            } => {
                if *amplitude == 0.0 {
                    Support::Empty
                } else {
                    let reach = GAUSSIAN_CUTOFF * width;
                    Support::Bounded(center - reach, center + reach)
                }
            }
            Profile::Rectangle {
                center,
                halfwidth,
                amplitude,
            } => {
                if *amplitude == 0.0 {
                    Support::Empty
                } else {
                    Support::Bounded(center - halfwidth, center + halfwidth)
                }
            }
            Profile::Constant { amplitude } => {
                if *amplitude == 0.0 {
                    Support::Empty
                } else {
                    Support::Unbounded
                }
            }
            Profile::Zero => Support::Empty,
            Profile::Tabulated(table) => {
                let (lo, hi) = table.support();
                Support::Bounded(lo, hi)
            }
        }
    }

    /// Points where the profile is not smooth, plus scale markers for
    /// narrow Gaussians so adaptive quadrature cannot step over them.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Profile::Gaussian { center, width, .. } => {
                [-GAUSSIAN_CUTOFF, -4.0, -1.0, 0.0, 1.0, 4.0, GAUSSIAN_CUTOFF]
                    .iter()
                    .map(|k| center + k * width)
                    .collect()
            }
            Profile::Rectangle {
                center, halfwidth, ..
            } => {
                alloc::vec![center - halfwidth, center + halfwidth]
            }
            Profile::Constant { .. } | Profile::Zero => Vec::new(),
            Profile::Tabulated(table) => table.xs().to_vec(),
        }
    }

    /// Whether `f(|y|)` is the intended 3D profile: shapes centered at the
    /// origin, or tabulated radial samples.
    pub fn is_radially_symmetric(&self) -> bool {
        match self {
            Profile::Gaussian { center, .. } | Profile::Rectangle { center, .. } => *center == 0.0,
            Profile::Constant { .. } | Profile::Zero => true,
            Profile::Tabulated(table) => {
                let (lo, hi) = table.support();
                lo >= 0.0 || lo == -hi
            }
        }
    }

    pub fn scaled(&self, factor: f64) -> Profile {
        match self {
            Profile::Gaussian {
                center,
                width,
                amplitude,
            } => Profile::Gaussian {
                center: *center,
                width: *width,
                amplitude: amplitude * factor,
            },
            Profile::Rectangle {
                center,
                halfwidth,
                amplitude,
            } => Profile::Rectangle {
                center: *center,
                halfwidth: *halfwidth,
                amplitude: amplitude * factor,
            },
            Profile::Constant { amplitude } => Profile::Constant {
                amplitude: amplitude * factor,
            },
            Profile::Zero => Profile::Zero,
            Profile::Tabulated(table) => Profile::Tabulated(Tabulated {
                xs: table.xs.clone(),
                values: table.values.iter().map(|v| v * factor).collect(),
            }),
        }
    }
}

/// Initial data of the undamped problem: `u(x, 0) = Φ`, `u_t(x, 0) = Ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub phi: Profile,
    pub psi: Profile,
}

impl InitialData {
    pub fn new(phi: Profile, psi: Profile) -> Self {
        InitialData { phi, psi }
    }

    pub fn zero() -> Self {
        InitialData::new(Profile::Zero, Profile::Zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_cutoff_matches_underflow() {
        let g = Profile::gaussian(0.0, 1.0, 1.0).unwrap();
        assert_eq!(exp(-(GAUSSIAN_CUTOFF * GAUSSIAN_CUTOFF)), 0.0);
        assert_eq!(g.value(GAUSSIAN_CUTOFF), 0.0);
        assert!(g.value(27.0) > 0.0);
        assert_eq!(g.value(0.0), 1.0);
    }

    #[test]
    fn gaussian_derivatives_match_differences() {
        let g = Profile::gaussian(0.3, 0.7, 2.0).unwrap();
        let h = 1e-5;
        for x in [-1.0, 0.0, 0.3, 0.9, 2.0] {
            let d = (g.value(x + h) - g.value(x - h)) / (2.0 * h);
            assert!((g.derivative(x).unwrap() - d).abs() < 1e-8);
            let d2 = (g.value(x + h) - 2.0 * g.value(x) + g.value(x - h)) / (h * h);
            assert!((g.second_derivative(x).unwrap() - d2).abs() < 1e-4);
        }
    }

    #[test]
    fn tabulated_interpolates_and_is_compact() {
        let t = Tabulated::new(alloc::vec![0.0, 1.0, 3.0], alloc::vec![1.0, 3.0, -1.0]).unwrap();
        let p = Profile::Tabulated(t);
        assert_eq!(p.value(-0.1), 0.0);
        assert_eq!(p.value(0.5), 2.0);
        assert_eq!(p.value(1.0), 3.0);
        assert_eq!(p.value(2.0), 1.0);
        assert_eq!(p.value(3.0), -1.0);
        assert_eq!(p.value(3.1), 0.0);
        assert_eq!(p.derivative(2.0).unwrap(), -2.0);
        assert_eq!(p.support(), Support::Bounded(0.0, 3.0));
        assert!(p.second_derivative(1.5).is_err());
    }

    #[test]
    fn tabulated_validation() {
        assert!(Tabulated::new(alloc::vec![0.0], alloc::vec![1.0]).is_err());
        assert!(Tabulated::new(alloc::vec![0.0, 0.0], alloc::vec![1.0, 2.0]).is_err());
        assert!(Tabulated::new(alloc::vec![0.0, 1.0], alloc::vec![1.0]).is_err());
        assert!(Tabulated::new(alloc::vec![0.0, f64::NAN], alloc::vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn rectangle_and_support() {
        let r = Profile::rectangle(1.0, 0.5, 2.0).unwrap();
        assert_eq!(r.value(1.5), 2.0);
        assert_eq!(r.value(1.6), 0.0);
        assert!(r.derivative(1.0).is_err());
        assert_eq!(r.support().clip(0.0, 1.2), Some((0.5, 1.2)));
        assert_eq!(r.support().clip(2.0, 3.0), None);
        assert_eq!(Profile::Zero.support().clip(0.0, 1.0), None);
        assert_eq!(
            Profile::constant(1.0).unwrap().support().clip(0.0, 1.0),
            Some((0.0, 1.0))
        );
    }

    #[test]
    fn symmetry_classification() {
        assert!(Profile::gaussian(0.0, 1.0, 1.0)
            .unwrap()
            .is_radially_symmetric());
        assert!(!Profile::gaussian(0.5, 1.0, 1.0)
            .unwrap()
            .is_radially_symmetric());
        let shell = Tabulated::new(alloc::vec![1.0, 2.0], alloc::vec![1.0, 1.0]).unwrap();
        assert!(Profile::Tabulated(shell).is_radially_symmetric());
        let lopsided = Tabulated::new(alloc::vec![-1.0, 2.0], alloc::vec![1.0, 1.0]).unwrap();
        assert!(!Profile::Tabulated(lopsided).is_radially_symmetric());
    }
}
