//! Gauss–Legendre rules and an adaptive Gauss–Kronrod integrator.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::cos;

use crate::error::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess
            let mut x = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_a^b f` with the rule mapped onto `[a, b]`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        half * sum
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
#[allow(clippy::excessive_precision)]
mod constants {
    pub(super) const XGK: [f64; 8] = [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ];
    pub(super) const WGK: [f64; 8] = [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ];
    pub(super) const WG: [f64; 4] = [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
    ];
}
use constants::{WG, WGK, XGK};

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

fn kronrod15(a: f64, b: f64, f: &mut impl FnMut(f64) -> f64) -> Segment {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_sum = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_sum * half.abs(),
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// Estimate of `∫|f|`, the scale the relative tolerance refers to.
    pub abs_value: f64,
}

/// Adaptive Gauss–Kronrod integration with global bisection.
///
/// Stops once the summed error estimate is at most
/// `max(abs_tol, rel_tol · ∫|f|)`. Degenerate intervals give exactly 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_segments: usize,
}

impl Adaptive {
    pub fn new(rel_tol: f64) -> Self {
        Adaptive {
            rel_tol,
            abs_tol: 0.0,
            max_segments: 4000,
        }
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> Result<Integral> {
        if a == b {
            return Ok(Integral {
                value: 0.0,
                error: 0.0,
                abs_value: 0.0,
            });
        }
        let mut segments: Vec<Segment> = alloc::vec![kronrod15(a, b, &mut f)];
        loop {
            let (value, error, abs_value) = totals(&segments);
            let target = self.abs_tol.max(self.rel_tol * abs_value);
            if error <= target || abs_value == 0.0 {
                return Ok(Integral {
                    value,
                    error,
                    abs_value,
                });
            }
            if segments.len() >= self.max_segments {
                return Err(Error::Quadrature {
                    achieved: error,
                    requested: target,
                });
            }
            let worst = segments
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let seg = segments.swap_remove(worst);
            let mid = 0.5 * (seg.a + seg.b);
            if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
                // interval no longer splittable in floating point
                return Err(Error::Quadrature {
                    achieved: error,
                    requested: target,
                });
            }
            segments.push(kronrod15(seg.a, mid, &mut f));
            segments.push(kronrod15(mid, seg.b, &mut f));
        }
    }

    /// Integrates over consecutive breakpoints, accumulating errors.
    pub fn integrate_pieces(
        &self,
        breakpoints: &[f64],
        mut f: impl FnMut(f64) -> f64,
    ) -> Result<Integral> {
        let mut total = Integral {
            value: 0.0,
            error: 0.0,
            abs_value: 0.0,
        };
        for pair in breakpoints.windows(2) {
            let piece = self.integrate(pair[0], pair[1], &mut f)?;
            total.value += piece.value;
            total.error += piece.error;
            total.abs_value += piece.abs_value;
        }
        Ok(total)
    }
}

fn totals(segments: &[Segment]) -> (f64, f64, f64) {
    segments.iter().fold((0.0, 0.0, 0.0), |(v, e, s), seg| {
        (v + seg.value, e + seg.error, s + seg.abs_value)
    })
}

/// Sorted, deduplicated breakpoints of `[a, b]` including the given
/// interior points that fall strictly inside.
pub fn breakpoints(a: f64, b: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut points: Vec<f64> = interior.into_iter().filter(|&p| p > a && p < b).collect();
    points.push(a);
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        for n in [1usize, 2, 5, 8, 16, 33] {
            let rule = GaussLegendre::new(n);
            let weight_sum: f64 = rule.weights().iter().sum();
            assert!((weight_sum - 2.0).abs() < 1e-14, "n = {n}");
            for degree in 0..(2 * n) {
                let exact = if degree % 2 == 0 {
                    2.0 / (degree as f64 + 1.0)
                } else {
                    0.0
                };
                let got = rule.integrate(-1.0, 1.0, |x| x.powi(degree as i32));
                assert!((got - exact).abs() < 1e-13, "n = {n}, degree = {degree}");
            }
        }
    }

    #[test]
    fn kronrod_constants_are_consistent() {
        // K15 integrates degree 22 exactly on [0, 1]; G7 degree 13.
        let mut f = |x: f64| x.powi(22);
        let seg = kronrod15(0.0, 1.0, &mut f);
        assert!((seg.value - 1.0 / 23.0).abs() < 1e-15);
        let mut g = |x: f64| 3.0 * x.powi(13) - x.powi(2);
        let seg = kronrod15(-1.0, 2.0, &mut g);
        let exact = 3.0 * (2f64.powi(14) - 1.0) / 14.0 - (8.0 + 1.0) / 3.0;
        assert!((seg.value - exact).abs() < 1e-10);
        assert!(seg.error < 1e-9 * exact.abs());
        let kronrod_sum = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let gauss_sum = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((kronrod_sum - 2.0).abs() < 1e-15);
        assert!((gauss_sum - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_kinks_and_singular_derivatives() {
        let quad = Adaptive::new(1e-12);
        let r = quad.integrate(-1.0, 2.0, |x: f64| x.abs()).unwrap();
        assert!((r.value - 2.5).abs() < 1e-11);
        let r = quad.integrate(0.0, 1.0, libm::sqrt).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11);
        let pieces = quad
            .integrate_pieces(&breakpoints(0.0, PI, [0.5, 1.0, 7.0]), libm::sin)
            .unwrap();
        assert!((pieces.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_failing_cases() {
        let quad = Adaptive::new(1e-12);
        assert_eq!(quad.integrate(1.0, 1.0, |_| 1.0).unwrap().value, 0.0);
        let tight = Adaptive {
            max_segments: 3,
            ..Adaptive::new(1e-15)
        };
        assert!(matches!(
            tight.integrate(0.0, 1.0, |x| libm::sin(1.0 / (x + 1e-3))),
            Err(Error::Quadrature { .. })
        ));
    }
}
