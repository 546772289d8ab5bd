//! Bessel functions of orders 0 and 1, ordinary (`J`) and modified (`I`).
//!
//! Small arguments use the power series, intermediate arguments of `J` use
//! Miller's backward recurrence normalized by `J₀ + 2ΣJ₂ₖ = 1`, and large
//! arguments use the Hankel asymptotic expansion. The checked entry points
//! (`bessel_*`) enforce the domain of [`BesselAccuracy`].
//!
//! The `*_continued` kernels are functions of `w = z²` that are entire in
//! `w`: for `w ≥ 0` they are the ordinary functions of `√w`, for `w < 0` the
//! modified ones of `√−w`. The Green functions are written in terms of them,
//! which makes the `q² < 0` branch the analytic continuation in `q²`.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::{cbrt, cos, exp, sin, sqrt};

use crate::error::{Error, Result};

/// Accuracy contract of the Bessel evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselAccuracy {
    /// Absolute error bound; relative to `e^|x|` for the modified functions.
    pub abs_tol: f64,
    /// Largest `|x|` covered by the contract.
    pub domain_max: f64,
}

impl BesselAccuracy {
    /// Contract for `J₀`, `J₁`.
    pub const ORDINARY: BesselAccuracy = BesselAccuracy {
        abs_tol: 1e-12,
        domain_max: 1e4,
    };
    /// Contract for `I₀`, `I₁` (`|error| ≤ abs_tol · e^|x|`).
    pub const MODIFIED: BesselAccuracy = BesselAccuracy {
        abs_tol: 1e-12,
        domain_max: 700.0,
    };

    pub fn check(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::NonFinite {
                name: "Bessel argument",
            });
        }
        if x.abs() > self.domain_max {
            Err(Error::BesselDomain {
                arg: x,
                domain_max: self.domain_max,
            })
        } else {
            Ok(x)
        }
    }
}

const SERIES_MAX: f64 = 2.0;
const ASYMPTOTIC_MIN: f64 = 25.0;
const MODIFIED_ASYMPTOTIC_MIN: f64 = 20.0;

pub fn bessel_j0(x: f64) -> Result<f64> {
    BesselAccuracy::ORDINARY.check(x).map(j0)
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    BesselAccuracy::ORDINARY.check(x).map(j1)
}

pub fn bessel_i0(x: f64) -> Result<f64> {
    BesselAccuracy::MODIFIED.check(x).map(i0)
}

pub fn bessel_i1(x: f64) -> Result<f64> {
    BesselAccuracy::MODIFIED.check(x).map(i1)
}

/// `J₀(x)` without the domain check.
pub fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_MAX {
        series(ax, 0, -1.0)
    } else if ax <= ASYMPTOTIC_MIN {
        miller(ax).0
    } else {
        hankel(ax, 0)
    }
}

/// `J₁(x)` without the domain check.
pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= SERIES_MAX {
        series(ax, 1, -1.0)
    } else if ax <= ASYMPTOTIC_MIN {
        miller(ax).1
    } else {
        hankel(ax, 1)
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// `I₀(x)` without the domain check.
pub fn i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= MODIFIED_ASYMPTOTIC_MIN {
        series(ax, 0, 1.0)
    } else {
        modified_asymptotic(ax, 0)
    }
}

/// `I₁(x)` without the domain check.
pub fn i1(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax <= MODIFIED_ASYMPTOTIC_MIN {
        series(ax, 1, 1.0)
    } else {
        modified_asymptotic(ax, 1)
    };
    if x < 0.0 {
        -value
    } else {
        value
    }
}

/// `(x/2)^n Σ (sign·x²/4)^m / (m! (m+n)!)` for `n ∈ {0, 1}`.
fn series(x: f64, order: u32, sign: f64) -> f64 {
    let y = sign * 0.25 * x * x;
    let lead = if order == 0 { 1.0 } else { 0.5 * x };
    lead * power_series(y, order)
}

/// `Σ y^m / (m! (m+n)!)`, summed until the terms stop contributing.
fn power_series(y: f64, order: u32) -> f64 {
    let mut denom_shift = 1.0;
    for k in 2..=order {
        denom_shift *= f64::from(k);
    }
    let mut term = 1.0 / denom_shift;
    let mut sum = term;
    for m in 1..200u32 {
        term *= y / (f64::from(m) * f64::from(m + order));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence for `(J₀(x), J₁(x))`, `x > 0`.
fn miller(x: f64) -> (f64, f64) {
    let start = {
        let n = (x + 10.0 * cbrt(x) + 30.0) as usize;
        n + (n & 1)
    };
    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut even_sum = 0.0;
    let mut order_one = 0.0;
    for k in (1..=start).rev() {
        let previous = (k as f64) * two_over_x * current - next;
        next = current;
        current = previous;
        let index = k - 1;
        if index == 1 {
            order_one = current;
        }
        if index > 0 && index % 2 == 0 {
            even_sum += current;
        }
        if current.abs() > 1e250 {
            current *= 1e-250;
            next *= 1e-250;
            even_sum *= 1e-250;
            order_one *= 1e-250;
        }
    }
    let norm = current + 2.0 * even_sum;
    (current / norm, order_one / norm)
}

/// Coefficients of the Hankel expansion: running `a_k(ν)`.
fn hankel_terms(x: f64, order: u32, mut visit: impl FnMut(usize, f64)) {
    let mu = 4.0 * f64::from(order * order);
    let mut coeff = 1.0;
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    visit(0, 1.0);
    for k in 1..60usize {
        let odd = (2 * k - 1) as f64;
        coeff *= (mu - odd * odd) / (8.0 * k as f64);
        power *= x;
        let term = coeff / power;
        if term.abs() >= last || term == 0.0 {
            break;
        }
        visit(k, term);
        last = term.abs();
        if term.abs() < 1e-18 {
            break;
        }
    }
}

fn hankel(x: f64, order: u32) -> f64 {
    let mut p = 0.0;
    let mut q = 0.0;
    hankel_terms(x, order, |k, term| {
        // (-1)^k alternation folded into the even/odd split
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
    });
    let (s, c) = (sin(x), cos(x));
    // phase x − π/4 (order 0) or x − 3π/4 (order 1), expanded exactly
    let (cos_chi, sin_chi) = if order == 0 {
        ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2)
    } else {
        ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2)
    };
    sqrt(2.0 / (PI * x)) * (p * cos_chi - q * sin_chi)
}

fn modified_asymptotic(x: f64, order: u32) -> f64 {
    let mut sum = 0.0;
    hankel_terms(x, order, |k, term| {
        sum += if k % 2 == 0 { term } else { -term };
    });
    // split e^x to keep the prefactor finite near the top of the domain
    let half = exp(0.5 * x);
    half * (sum / sqrt(2.0 * PI * x)) * half
}

/// `J₀(√w)` for `w ≥ 0`, `I₀(√−w)` for `w < 0`.
pub fn j0_continued(w: f64) -> f64 {
    if w.abs() <= 16.0 {
        power_series(-0.25 * w, 0)
    } else if w > 0.0 {
        j0(sqrt(w))
    } else {
        i0(sqrt(-w))
    }
}

/// `J₁(z)/z` with `z = √w`, continued to `I₁(z)/z` with `z = √−w`.
/// Equals 1/2 at `w = 0`.
pub fn j1_over_z_continued(w: f64) -> f64 {
    if w.abs() <= 16.0 {
        0.5 * power_series(-0.25 * w, 1)
    } else if w > 0.0 {
        let z = sqrt(w);
        j1(z) / z
    } else {
        let z = sqrt(-w);
        i1(z) / z
    }
}

/// `J₂(z)/z²` with `z = √w`, continued to `I₂(z)/z²`. Equals 1/8 at `w = 0`.
pub fn j2_over_z2_continued(w: f64) -> f64 {
    if w.abs() <= 16.0 {
        0.25 * power_series(-0.25 * w, 2)
    } else if w > 0.0 {
        let z = sqrt(w);
        (2.0 * j1(z) / z - j0(z)) / w
    } else {
        let z = sqrt(-w);
        (i0(z) - 2.0 * i1(z) / z) / (-w)
    }
}

/// Domain check for the continued kernels at `w`.
pub fn check_continued(w: f64) -> Result<()> {
    let z = sqrt(w.abs());
    if w >= 0.0 {
        BesselAccuracy::ORDINARY.check(z)?;
    } else {
        BesselAccuracy::MODIFIED.check(z)?;
    }
    Ok(())
}
