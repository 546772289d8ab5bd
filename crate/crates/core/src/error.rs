use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter that must be strictly positive was not.
    NonPositive { name: &'static str, value: f64 },
    /// A parameter that must be non-negative was negative.
    Negative { name: &'static str, value: f64 },
    /// A value was NaN or infinite where a finite number is required.
    NonFinite { name: &'static str },
    /// A Bessel argument lies outside the range covered by the accuracy contract.
    BesselDomain { arg: f64, domain_max: f64 },
    /// An oracle evaluation point is too close to the wave cone for its stencil.
    NearCone { r: f64, t: f64, margin: f64 },
    /// A quadrature did not reach its tolerance.
    Quadrature { achieved: f64, requested: f64 },
    /// The explicit scheme would be unstable.
    Cfl { courant: f64 },
    /// The significant part of the solution reached a Dirichlet boundary.
    ConeReachedBoundary { step: usize },
    /// Two grids could not be compared.
    GridMismatch,
    /// 3D evolution requires data centered on the origin.
    NotRadiallySymmetric,
    /// A profile derivative was requested for a non-differentiable shape.
    NotDifferentiable { shape: &'static str },
    /// Any other invalid configuration.
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositive { name, value } => {
                write!(f, "{name} must be strictly positive, got {value:e}")
            }
            Error::Negative { name, value } => {
                write!(f, "{name} must be non-negative, got {value:e}")
            }
            Error::NonFinite { name } => write!(f, "{name} must be finite"),
            Error::BesselDomain { arg, domain_max } => write!(
                f,
                "Bessel argument {arg:e} exceeds the accuracy domain |x| <= {domain_max:e}"
            ),
            Error::NearCone { r, t, margin } => write!(
                f,
                "point r = {r:e}, t = {t:e} is within {margin:e} of the wave cone"
            ),
            Error::Quadrature { achieved, requested } => write!(
                f,
                "quadrature did not converge: error estimate {achieved:e} above tolerance {requested:e}"
            ),
            Error::Cfl { courant } => {
                write!(f, "CFL condition violated: v*dt/dx = {courant} > 1")
            }
            Error::ConeReachedBoundary { step } => {
                write!(f, "solution reached the Dirichlet boundary at step {step}")
            }
            Error::GridMismatch => f.write_str("grids differ in size, spacing, origin or time"),
            Error::NotRadiallySymmetric => {
                f.write_str("3D evolution requires radially symmetric data centered at the origin")
            }
            Error::NotDifferentiable { shape } => {
                write!(f, "profile shape `{shape}` has no pointwise derivative")
            }
            Error::InvalidConfig(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_nan() {
        return Err(Error::NonFinite { name });
    }
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite { name });
    }
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::Negative { name, value })
    }
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name })
    }
}
