//! The breathing envelope `f(t)` of a nonstatic Fock wave.
//!
//! ```text
//! f(t) = A sin²θ + B cos²θ + C sin 2θ,   θ(t) = ω (t − t₀) + φ
//! ```
//!
//! with the auxiliary condition `AB − C² = 1`. The condition makes `f` an
//! exact solution of
//!
//! ```text
//! f̈ − ḟ²/(2f) + 2ω² (f − 1/f) = 0
//! ```
//!
//! and forces `f_min · f_max = 1`, so `f` is strictly positive.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Highest Fock index the normalized Hermite recurrence is supported for.
pub const N_MAX_SUPPORTED: u32 = 200;

/// Sign of the cross coefficient `C = ±√(AB − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CSign {
    #[default]
    Positive,
    Negative,
}

impl CSign {
    pub fn apply<T: Scalar>(self, magnitude: T) -> T {
        match self {
            CSign::Positive => magnitude,
            CSign::Negative => -magnitude,
        }
    }
}

/// Parameters of the envelope and the medium.
///
/// Built through [`EnvelopeParams::new`], which derives `C` from `A` and `B`
/// so the auxiliary condition holds to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeParams<T> {
    a: T,
    b: T,
    c: T,
    omega: T,
    t0: T,
    phi: T,
    eps: T,
    hbar: T,
}

impl<T: Scalar> EnvelopeParams<T> {
    /// Builds a parameter set with `C = c_sign · √(AB − 1)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(a: T, b: T, c_sign: CSign, omega: T, t0: T, phi: T, eps: T, hbar: T) -> Result<Self> {
        check_common(a, b, omega, t0, phi, eps, hbar)?;
        if a * b < T::one() {
            return Err(Error::domain(format!("A·B = {} must be at least 1", a * b)));
        }
        // AB − 1 can round slightly negative when AB is 1 up to an ulp.
        let c = c_sign.apply((a * b - T::one()).max(T::zero()).sqrt());
        Ok(Self { a, b, c, omega, t0, phi, eps, hbar })
    }

    /// Dimensionless units (`ε = ħ = 1`), `t₀ = φ = 0`, positive `C`.
    pub fn dimensionless(a: T, b: T, omega: T) -> Result<Self> {
        Self::new(a, b, CSign::Positive, omega, T::zero(), T::zero(), T::one(), T::one())
    }

    /// Builds a parameter set with a caller-supplied `C`.
    ///
    /// Every invariant except the auxiliary condition is checked, so this is
    /// the way to set up deliberately inconsistent envelopes (negative
    /// controls). [`EnvelopeParams::satisfies_constraint`] reports whether the
    /// result is physical.
    #[allow(clippy::too_many_arguments)]
    pub fn with_explicit_c(a: T, b: T, c: T, omega: T, t0: T, phi: T, eps: T, hbar: T) -> Result<Self> {
        check_common(a, b, omega, t0, phi, eps, hbar)?;
        if !c.is_finite() {
            return Err(Error::domain("C must be finite"));
        }
        if a * b - c * c <= T::zero() {
            return Err(Error::domain("A·B − C² must be positive for f(t) > 0"));
        }
        Ok(Self { a, b, c, omega, t0, phi, eps, hbar })
    }

    /// Same envelope with a different reference time.
    pub fn with_t0(self, t0: T) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::domain("t0 must be finite"));
        }
        Ok(Self { t0, ..self })
    }

    /// Same envelope with a different initial angle.
    pub fn with_phi(self, phi: T) -> Result<Self> {
        check_phi(phi)?;
        Ok(Self { phi, ..self })
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn c(&self) -> T {
        self.c
    }
    pub fn omega(&self) -> T {
        self.omega
    }
    pub fn t0(&self) -> T {
        self.t0
    }
    pub fn phi(&self) -> T {
        self.phi
    }
    pub fn eps(&self) -> T {
        self.eps
    }
    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn n_max_supported(&self) -> u32 {
        N_MAX_SUPPORTED
    }

    /// `|AB − C² − 1|`.
    pub fn constraint_violation(&self) -> T {
        (self.a * self.b - self.c * self.c - T::one()).abs()
    }

    /// Admissible rounding in the auxiliary condition: `10⁻¹²` in `f64`,
    /// a few ulps of `AB` in coarser types.
    pub fn constraint_tolerance(&self) -> T {
        let rounding = T::lit(8.0) * T::epsilon() * (self.a * self.b).max(T::one());
        T::lit(1e-12).max(rounding)
    }

    pub fn satisfies_constraint(&self) -> bool {
        self.constraint_violation() <= self.constraint_tolerance()
    }

    /// Envelope period `π/ω`.
    pub fn period(&self) -> T {
        T::PI() / self.omega
    }

    /// `θ(t) = ω (t − t₀) + φ`.
    #[inline]
    pub fn angle(&self, t: T) -> T {
        self.omega * (t - self.t0) + self.phi
    }

    /// `f(t)`, evaluated as `(A + B)/2 − (A − B)/2 cos 2θ + C sin 2θ` so the
    /// static envelope is exactly 1.
    #[inline]
    pub fn f(&self, t: T) -> T {
        let half = T::lit(0.5);
        let (s2, c2) = (T::lit(2.0) * self.angle(t)).sin_cos();
        half * (self.a + self.b) - half * (self.a - self.b) * c2 + self.c * s2
    }

    /// `ḟ(t) = ω[(A − B) sin 2θ + 2C cos 2θ]`.
    #[inline]
    pub fn f_dot(&self, t: T) -> T {
        let (s2, c2) = (T::lit(2.0) * self.angle(t)).sin_cos();
        self.omega * ((self.a - self.b) * s2 + T::lit(2.0) * self.c * c2)
    }

    /// `f̈(t) = 2ω²[(A − B) cos 2θ − 2C sin 2θ]`.
    #[inline]
    pub fn f_ddot(&self, t: T) -> T {
        let (s2, c2) = (T::lit(2.0) * self.angle(t)).sin_cos();
        T::lit(2.0) * self.omega * self.omega * ((self.a - self.b) * c2 - T::lit(2.0) * self.c * s2)
    }

    /// Left-hand side of the envelope equation evaluated on the closed form.
    pub fn ode_residual(&self, t: T) -> T {
        let f = self.f(t);
        let fd = self.f_dot(t);
        let two = T::lit(2.0);
        self.f_ddot(t) - fd * fd / (two * f) + two * self.omega * self.omega * (f - f.recip())
    }

    /// Scale the residual contract is stated against: `max(1, ω²(A + B))`.
    pub fn ode_residual_scale(&self) -> T {
        (self.omega * self.omega * (self.a + self.b)).max(T::one())
    }

    /// Nonstaticity measure `D_F = √((A + B)² − 4) / (2√2)`.
    pub fn nonstaticity_measure(&self) -> T {
        nonstaticity_measure(self.a, self.b)
    }

    /// Whether the wave is the ordinary static one (`f ≡ 1`).
    pub fn is_static(&self) -> bool {
        self.a == T::one() && self.b == T::one() && self.c == T::zero()
    }

    /// Amplitude of the oscillating part, `f = (A+B)/2 + R cos(2θ − α)`.
    fn oscillation(&self) -> (T, T) {
        let half = T::lit(0.5);
        let p = half * (self.b - self.a);
        let q = self.c;
        (p.hypot(q), q.atan2(p))
    }

    /// `(f_min, f_max)`: the eigenvalues of `[[A, C], [C, B]]`.
    pub fn extrema(&self) -> (T, T) {
        let mean = T::lit(0.5) * (self.a + self.b);
        let (r, _) = self.oscillation();
        let max = mean + r;
        // product of the eigenvalues is the determinant AB − C²
        ((self.a * self.b - self.c * self.c) / max, max)
    }

    /// Instants in `[t_start, t_end]` where `f` attains its minimum (the
    /// narrow-packet moments). Empty for the static envelope.
    pub fn minimum_times(&self, t_start: T, t_end: T) -> Vec<T> {
        let (r, alpha) = self.oscillation();
        if r == T::zero() || t_end < t_start {
            return Vec::new();
        }
        // minima at θ = (α + π)/2 + kπ
        let pi = T::PI();
        let theta_min = T::lit(0.5) * (alpha + pi);
        let theta_start = self.angle(t_start);
        let mut k = ((theta_start - theta_min) / pi).ceil();
        let mut out = Vec::new();
        loop {
            let t = self.t0 + (theta_min + k * pi - self.phi) / self.omega;
            if t > t_end {
                break;
            }
            if t >= t_start {
                out.push(t);
            }
            k = k + T::one();
        }
        out
    }
}

/// `D_F` as a function of `A` and `B` alone.
pub fn nonstaticity_measure<T: Scalar>(a: T, b: T) -> T {
    let s = a + b;
    let arg = (s * s - T::lit(4.0)).max(T::zero());
    arg.sqrt() / (T::lit(2.0) * T::SQRT_2())
}

fn check_phi<T: Scalar>(phi: T) -> Result<()> {
    let half_pi = T::FRAC_PI_2();
    if !(phi >= -half_pi && phi < half_pi) {
        return Err(Error::domain(format!("phi = {phi} outside [−π/2, π/2)")));
    }
    Ok(())
}

fn check_common<T: Scalar>(a: T, b: T, omega: T, t0: T, phi: T, eps: T, hbar: T) -> Result<()> {
    for (name, v) in [("A", a), ("B", b), ("omega", omega), ("eps", eps), ("hbar", hbar)] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::domain(format!("{name} = {v} must be positive and finite")));
        }
    }
    if !t0.is_finite() {
        return Err(Error::domain("t0 must be finite"));
    }
    check_phi(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn fig1b() -> EnvelopeParams<f64> {
        EnvelopeParams::dimensionless(2.5, 0.5, 1.0).unwrap()
    }

    fn central(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
        (f(t + h) - f(t - h)) / (2.0 * h)
    }

    #[test]
    fn c_is_derived_from_a_and_b() {
        assert_abs_diff_eq!(fig1b().c(), 0.5, epsilon = 1e-15);
        assert_eq!(EnvelopeParams::dimensionless(1.0, 1.0, 1.0).unwrap().c(), 0.0);
        let p = EnvelopeParams::dimensionless(0.1, 10.0, 1.0).unwrap();
        assert_abs_diff_eq!(p.c(), 0.0, epsilon = 1e-7);
        assert!(p.satisfies_constraint());
        let neg = EnvelopeParams::new(2.5, 0.5, CSign::Negative, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(neg.c(), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn rejects_invalid_parameters() {
        let bad = [
            EnvelopeParams::dimensionless(0.5, 1.0, 1.0),
            EnvelopeParams::dimensionless(-1.0, -1.0, 1.0),
            EnvelopeParams::dimensionless(1.0, 1.0, 0.0),
            EnvelopeParams::new(1.0, 1.0, CSign::Positive, 1.0, 0.0, FRAC_PI_2, 1.0, 1.0),
            EnvelopeParams::new(1.0, 1.0, CSign::Positive, 1.0, 0.0, -2.0, 1.0, 1.0),
            EnvelopeParams::new(1.0, 1.0, CSign::Positive, 1.0, 0.0, 0.0, 0.0, 1.0),
            EnvelopeParams::new(1.0, 1.0, CSign::Positive, 1.0, 0.0, 0.0, 1.0, -1.0),
        ];
        for r in bad {
            assert!(matches!(r, Err(Error::Domain(_))), "{r:?}");
        }
        assert!(EnvelopeParams::new(1.0, 1.0, CSign::Positive, 1.0, 0.0, -FRAC_PI_2, 1.0, 1.0).is_ok());
    }

    #[test]
    fn envelope_values() {
        let s = EnvelopeParams::dimensionless(1.0, 1.0, 0.7).unwrap();
        for t in [0.0, 0.3, 5.0, 17.2] {
            assert_abs_diff_eq!(s.f(t), 1.0, epsilon = 1e-15);
            assert_eq!(s.f_dot(t), 0.0);
        }
        let p = fig1b();
        assert_abs_diff_eq!(p.f(0.0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.f(FRAC_PI_2), 2.5, epsilon = 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for omega in [1.0, 0.5, 2.0] {
            let p = EnvelopeParams::dimensionless(2.5, 0.5, omega).unwrap();
            assert_abs_diff_eq!(p.f_dot(0.0), omega, epsilon = 1e-14);
            assert_abs_diff_eq!(p.f_ddot(0.0), 4.0 * omega * omega, epsilon = 1e-13);
            let h = 1e-6;
            let fd1 = central(|t| p.f(t), 0.0, h);
            assert!((fd1 - p.f_dot(0.0)).abs() <= 1e-6 * p.f_dot(0.0).abs());
            let h2 = 1e-4;
            let fd2 = (p.f(h2) - 2.0 * p.f(0.0) + p.f(-h2)) / (h2 * h2);
            assert!((fd2 - p.f_ddot(0.0)).abs() <= 1e-5 * p.f_ddot(0.0).abs());
            for t in [0.1, 0.9, 2.3] {
                let fdd = central(|s| p.f_dot(s), t, h);
                assert!((fdd - p.f_ddot(t)).abs() < 1e-6 * p.ode_residual_scale());
            }
        }
    }

    #[test]
    fn ode_residual_vanishes_on_valid_envelopes() {
        assert_eq!(EnvelopeParams::dimensionless(1.0, 1.0, 1.0).unwrap().ode_residual(3.0), 0.0);
        let p = fig1b();
        for i in 0..=1000 {
            let t = p.period() * i as f64 / 1000.0;
            assert!(p.ode_residual(t).abs() < 1e-10 * p.ode_residual_scale());
        }
    }

    #[test]
    fn ode_residual_detects_broken_constraint() {
        let p = EnvelopeParams::with_explicit_c(2.5, 0.5, -0.6, 1.0, 0.0, 0.0, 1.0, 1.0).unwrap();
        assert!(!p.satisfies_constraint());
        assert!(p.ode_residual(FRAC_PI_4).abs() > 1e-2);
    }

    #[test]
    fn measure_reported_values() {
        assert_abs_diff_eq!(nonstaticity_measure(1.0, 1.0), 0.0);
        assert_abs_diff_eq!(nonstaticity_measure(0.5, 2.5), 0.79, epsilon = 0.005);
        assert_abs_diff_eq!(nonstaticity_measure(0.1, 10.0), 3.50, epsilon = 0.005);
    }

    #[test]
    fn measure_ladder_round_trip() {
        // Invert D_F with B = 1: A = √(8 D² + 4) − 1, then round to the
        // nearest parameter on the ladder and recompute forward.
        let reported = [0.00, 0.79, 2.00, 3.82, 7.39, 14.48, 35.70];
        let expected_a = [1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 100.0];
        for (d, a) in reported.iter().zip(expected_a) {
            let inverted = (8.0 * d * d + 4.0f64).sqrt() - 1.0;
            assert!((inverted - a).abs() / a < 0.01, "{d} -> {inverted}");
            assert_abs_diff_eq!(nonstaticity_measure(a, 1.0), *d, epsilon = 0.01);
            assert_abs_diff_eq!(nonstaticity_measure(1.0, a), *d, epsilon = 0.01);
        }
    }

    #[test]
    fn extrema_and_minimum_times() {
        let p = fig1b();
        let (lo, hi) = p.extrema();
        assert_abs_diff_eq!(lo * hi, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(lo, (3.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-14);
        let mins = p.minimum_times(0.0, 3.0 * PI);
        assert_eq!(mins.len(), 3);
        for t in mins {
            assert_abs_diff_eq!(p.f(t), lo, epsilon = 1e-13);
            assert!(p.f_dot(t).abs() < 1e-12);
        }
        assert!(EnvelopeParams::dimensionless(1.0, 1.0, 1.0).unwrap().minimum_times(0.0, 10.0).is_empty());
    }

    #[test]
    fn single_precision_envelope() {
        let p = EnvelopeParams::<f32>::dimensionless(2.5, 0.5, 1.0).unwrap();
        assert!(p.satisfies_constraint());
        assert!((p.f(0.0) - 0.5).abs() < 1e-6);
    }

    fn valid_params() -> impl Strategy<Value = EnvelopeParams<f64>> {
        (0.1f64..20.0, 0.0f64..20.0, any::<bool>(), 0.1f64..5.0, -10.0f64..10.0, -FRAC_PI_2..FRAC_PI_2)
            .prop_map(|(a, extra, neg, omega, t0, phi)| {
                let b = 1.0 / a + extra;
                let sign = if neg { CSign::Negative } else { CSign::Positive };
                EnvelopeParams::new(a, b, sign, omega, t0, phi, 1.0, 1.0).unwrap()
            })
    }

    proptest! {
        #[test]
        fn periodic_with_period_pi_over_omega(p in valid_params(), t in -20.0f64..20.0) {
            let scale = p.a() + p.b();
            prop_assert!((p.f(t + p.period()) - p.f(t)).abs() <= 1e-12 * scale.max(1.0) * (1.0 + t.abs() * p.omega()));
        }

        #[test]
        fn positive_with_analytic_minimum(p in valid_params()) {
            let (lo, _) = p.extrema();
            let dense_min = (0..=2000)
                .map(|i| p.f(p.t0() + p.period() * i as f64 / 2000.0))
                .fold(f64::INFINITY, f64::min);
            prop_assert!(dense_min > 0.0);
            prop_assert!(dense_min >= lo - 1e-12 * (p.a() + p.b()));
            prop_assert!(dense_min - lo < 1e-4 * (p.a() + p.b()));
        }

        #[test]
        fn ode_residual_bounded(p in valid_params(), t in -20.0f64..20.0) {
            prop_assert!(p.ode_residual(t).abs() <= 1e-10 * p.ode_residual_scale());
        }

        #[test]
        fn nonstatic_iff_measure_positive(a in 0.2f64..5.0, extra in 0.0f64..3.0) {
            let b = 1.0 / a + extra;
            let p = EnvelopeParams::dimensionless(a, b, 1.0).unwrap();
            let spread = (0..50).map(|i| (p.f(0.1 * i as f64) - 1.0).abs()).fold(0.0, f64::max);
            prop_assert_eq!(spread > 0.0, p.nonstaticity_measure() > 0.0);
        }
    }
}
