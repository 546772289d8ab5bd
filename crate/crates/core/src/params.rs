//! Physical constants and the derived parameter chain
//! `(m, α, c, V₀, ε₀, ħ) → (v, τ, q², σ₀, λ_B)`.
//!
//! Everything is strict SI. Defaults are CODATA 2018 values with the
//! electron as the heaton.

use crate::error::{finite, non_negative, positive, Result};
use crate::green::KgParams;

/// CODATA 2018 fine-structure constant.
pub const ALPHA: f64 = 7.2973525693e-3;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.99792458e8;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;
/// Vacuum permittivity, F/m.
pub const EPSILON0: f64 = 8.8541878128e-12;
/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.1093837015e-31;
/// Elementary charge, C (exact); one electronvolt in joules.
pub const ELECTRON_VOLT: f64 = 1.602176634e-19;
/// Hartree energy `m_e α² c²`, J.
pub const HARTREE_ENERGY: f64 = 4.3597447222071e-18;

/// Fundamental inputs of the thermal equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Heaton mass, kg.
    pub mass: f64,
    /// Fine-structure constant.
    pub alpha: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Potential V₀, J.
    pub v0: f64,
    /// Vacuum permittivity, F/m.
    pub epsilon0: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
}

impl Default for PhysicalParams {
    /// Electron heaton with `V₀ = E_h / 4`, which puts the undamped
    /// equation in the oscillatory regime with `q = 1/(2τ)`.
    fn default() -> Self {
        PhysicalParams {
            mass: ELECTRON_MASS,
            alpha: ALPHA,
            c: SPEED_OF_LIGHT,
            v0: HARTREE_ENERGY / 4.0,
            epsilon0: EPSILON0,
            hbar: HBAR,
        }
    }
}

impl PhysicalParams {
    /// Checks the field invariants: everything strictly positive and
    /// finite, except `v0` which only has to be non-negative.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("mass", self.mass),
            ("alpha", self.alpha),
            ("c", self.c),
            ("epsilon0", self.epsilon0),
            ("hbar", self.hbar),
        ] {
            positive(name, value)?;
            finite(name, value)?;
        }
        non_negative("v0", self.v0)?;
        Ok(())
    }

    pub fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Kinetic scale `m v²`, J.
    fn mv2(&self) -> f64 {
        let v = wave_speed(self);
        self.mass * v * v
    }
}

/// The derived chain, all in SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Interaction speed, m/s.
    pub v: f64,
    /// Relaxation time, s.
    pub tau: f64,
    /// Squared frequency of the undamped form, 1/s². May be negative.
    pub q_sq: f64,
    /// Inner-atomic conductivity, 1/(Ω·m).
    pub sigma0: f64,
    /// de Broglie wavelength of the heaton, m.
    pub lambda_b: f64,
}

impl DerivedParams {
    pub fn derive(p: &PhysicalParams) -> Result<Self> {
        p.validate()?;
        Ok(DerivedParams {
            v: wave_speed(p),
            tau: relaxation_time(p)?,
            q_sq: q_squared(p),
            sigma0: conductivity(p),
            lambda_b: de_broglie_wavelength(p)?,
        })
    }

    /// Parameters of the undamped Klein-Gordon form.
    pub fn kg(&self) -> Result<KgParams> {
        KgParams::new(self.v, self.q_sq)
    }
}

/// `v = α c`.
pub fn wave_speed(p: &PhysicalParams) -> f64 {
    p.alpha * p.c
}

/// `τ = ħ / (m α² c²)`.
pub fn relaxation_time(p: &PhysicalParams) -> Result<f64> {
    positive("mass", p.mass)?;
    Ok(p.hbar / p.mv2())
}

/// `q² = 2 V₀ m v² / ħ² − (m v² / 2ħ)²`, sign preserved.
pub fn q_squared(p: &PhysicalParams) -> f64 {
    let mv2 = p.mv2();
    let half_rate = mv2 / (2.0 * p.hbar);
    2.0 * p.v0 * mv2 / (p.hbar * p.hbar) - half_rate * half_rate
}

/// `σ₀ = ε₀ m α² c² / ħ`.
pub fn conductivity(p: &PhysicalParams) -> f64 {
    p.epsilon0 * p.mv2() / p.hbar
}

/// `λ_B = ħ / (m α c)`.
pub fn de_broglie_wavelength(p: &PhysicalParams) -> Result<f64> {
    positive("mass", p.mass)?;
    Ok(p.hbar / (p.mass * p.alpha * p.c))
}

/// Result of comparing the two conductivity routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub agrees: bool,
    pub relative_residual: f64,
}

/// Relative agreement required between `ε₀ m α² c²/ħ` and `ε₀ α c / λ_B`.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

/// Evaluates `σ₀` from the mass route and from the wavelength route
/// `ε₀ α c / λ_B` and reports their relative residual.
pub fn conductivity_identity_check(p: &PhysicalParams) -> Result<IdentityCheck> {
    let lambda_b = de_broglie_wavelength(p)?;
    Ok(conductivity_identity_check_with(p, lambda_b))
}

/// Diagnostic variant taking an externally supplied `λ_B`.
pub fn conductivity_identity_check_with(p: &PhysicalParams, lambda_b: f64) -> IdentityCheck {
    let direct = conductivity(p);
    let via_wavelength = p.epsilon0 * p.alpha * p.c / lambda_b;
    let relative_residual = ((direct - via_wavelength) / direct).abs();
    IdentityCheck {
        agrees: relative_residual < IDENTITY_TOLERANCE,
        relative_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    // Independent hand arithmetic for the electron defaults:
    //   m c² = 9.1093837015e-31 * 8.987551787368176e16 = 8.1871057769e-14 J
    //   α² = 5.3251354e-5, so m v² = 4.35974472e-18 J (the Hartree energy)
    //   τ = 1.054571817e-34 / 4.35974472e-18 = 2.4188843e-17 s
    //   σ₀ = 8.8541878128e-12 / 2.4188843e-17 = 3.6604e5 1/(Ω m)
    //   λ_B = ħ / (m α c) = 5.29177e-11 m (Bohr radius)
    const TAU_ORACLE: f64 = 2.4188843e-17;
    const SIGMA_ORACLE: f64 = 3.6604e5;
    const BOHR_RADIUS: f64 = 5.29177e-11;

    #[test]
    fn wave_speed_examples() {
        let p = PhysicalParams::default();
        assert!((wave_speed(&p) - 2.187691e6).abs() <= 1.0);
        let unit = PhysicalParams {
            alpha: 1.0,
            c: 1.0,
            ..p
        };
        assert_eq!(wave_speed(&unit), 1.0);
        let half = PhysicalParams {
            alpha: 0.5,
            c: 2.0,
            ..p
        };
        assert_eq!(wave_speed(&half), 1.0);
    }

    #[test]
    fn relaxation_time_examples() {
        let p = PhysicalParams::default();
        let tau = relaxation_time(&p).unwrap();
        assert!(rel(tau, TAU_ORACLE) < 0.01);
        assert!(rel(tau, 2.42e-17) < 0.01);
        assert!(tau > 1e-17 && tau < 1e-16);

        let v = wave_speed(&p);
        let constructed = PhysicalParams {
            mass: p.hbar / (v * v),
            ..p
        };
        assert!(rel(relaxation_time(&constructed).unwrap(), 1.0) < 1e-15);

        let bad = PhysicalParams { mass: 0.0, ..p };
        assert!(relaxation_time(&bad).is_err());
        assert!(de_broglie_wavelength(&PhysicalParams { mass: -1.0, ..p }).is_err());
    }

    #[test]
    fn q_squared_examples() {
        let p = PhysicalParams::default();
        let mv2 = p.mv2();
        let balanced = PhysicalParams { v0: mv2 / 8.0, ..p };
        assert!(q_squared(&balanced).abs() < 1e-12 * (mv2 / p.hbar).powi(2));

        let zero = PhysicalParams { v0: 0.0, ..p };
        let expected = -(mv2 / (2.0 * p.hbar)).powi(2);
        assert!(rel(q_squared(&zero), expected) < 1e-15);

        // 2 (mv²/4) mv²/ħ² − (mv²/2ħ)² = (mv²/ħ)² (1/2 − 1/4) = (mv²/2ħ)².
        let quarter = PhysicalParams { v0: mv2 / 4.0, ..p };
        let q_sq = q_squared(&quarter);
        assert!(q_sq > 0.0);
        assert!(rel(q_sq, (mv2 / (2.0 * p.hbar)).powi(2)) < 1e-14);
        // default potential is the same regime: q = 1/(2τ)
        let tau = relaxation_time(&p).unwrap();
        assert!(rel(q_squared(&p), 0.25 / (tau * tau)) < 1e-8);
    }

    #[test]
    fn conductivity_examples() {
        let p = PhysicalParams::default();
        let sigma = conductivity(&p);
        assert!(rel(sigma, SIGMA_ORACLE) < 0.01);
        assert!(sigma > 1e6 / 3.0 && sigma < 3e6);
        let doubled = PhysicalParams {
            epsilon0: 2.0 * p.epsilon0,
            ..p
        };
        assert!(rel(conductivity(&doubled), 2.0 * sigma) < 1e-15);
        let tau = relaxation_time(&p).unwrap();
        assert!(rel(sigma, p.epsilon0 / tau) < 1e-15);
    }

    #[test]
    fn de_broglie_examples() {
        let p = PhysicalParams::default();
        assert!(rel(de_broglie_wavelength(&p).unwrap(), BOHR_RADIUS) < 0.01);
        let unit = PhysicalParams {
            mass: p.hbar / (p.alpha * p.c),
            ..p
        };
        assert!(rel(de_broglie_wavelength(&unit).unwrap(), 1.0) < 1e-15);
        let halved = PhysicalParams {
            alpha: p.alpha / 2.0,
            ..p
        };
        assert!(
            rel(
                de_broglie_wavelength(&halved).unwrap(),
                2.0 * de_broglie_wavelength(&p).unwrap()
            ) < 1e-15
        );
    }

    #[test]
    fn identity_check() {
        let p = PhysicalParams::default();
        let check = conductivity_identity_check(&p).unwrap();
        assert!(check.agrees);
        assert!(check.relative_residual < 1e-12);
        let lambda = de_broglie_wavelength(&p).unwrap();
        assert!(!conductivity_identity_check_with(&p, 1.01 * lambda).agrees);
    }

    #[test]
    fn validation() {
        let p = PhysicalParams::default();
        assert!(p.validate().is_ok());
        assert!(PhysicalParams { v0: -1.0, ..p }.validate().is_err());
        assert!(PhysicalParams { c: 0.0, ..p }.validate().is_err());
        assert!(PhysicalParams {
            hbar: f64::NAN,
            ..p
        }
        .validate()
        .is_err());
        assert!(PhysicalParams { v0: 0.0, ..p }.validate().is_ok());
    }

    fn any_params() -> impl Strategy<Value = PhysicalParams> {
        (
            1e-32f64..1e-27,
            1e-3f64..1.0,
            1e6f64..1e9,
            0.0f64..1e-16,
            1e-12f64..1e-10,
            1e-35f64..1e-33,
        )
            .prop_map(|(mass, alpha, c, v0, epsilon0, hbar)| PhysicalParams {
                mass,
                alpha,
                c,
                v0,
                epsilon0,
                hbar,
            })
    }

    proptest! {
        #[test]
        fn sigma_times_tau_is_epsilon0(p in any_params()) {
            let product = conductivity(&p) * relaxation_time(&p).unwrap();
            prop_assert!(rel(product, p.epsilon0) < 1e-12);
        }

        #[test]
        fn tau_v2_m_is_hbar(p in any_params()) {
            let v = wave_speed(&p);
            let product = relaxation_time(&p).unwrap() * v * v * p.mass;
            prop_assert!(rel(product, p.hbar) < 1e-12);
        }

        #[test]
        fn identity_holds(p in any_params()) {
            prop_assert!(conductivity_identity_check(&p).unwrap().agrees);
        }

        #[test]
        fn q_squared_slope_in_v0(p in any_params(), dv in 1e-20f64..1e-17) {
            let v = wave_speed(&p);
            let slope = 2.0 * p.mass * v * v / (p.hbar * p.hbar);
            let lo = q_squared(&p);
            let hi = q_squared(&PhysicalParams { v0: p.v0 + dv, ..p });
            prop_assert!(hi > lo);
            let scale = lo.abs().max(hi.abs());
            prop_assert!(((hi - lo) - slope * dv).abs() <= 1e-9 * scale + 1e-6 * slope * dv);
        }
    }
}
