//! Closed-form geometric, dynamical and total phases of the nonstatic Fock
//! states, their time derivatives and the Hannay angle.
//!
//! With `ΔU(t) = U(θ(t)) − U(φ)`, where `U` is the continuous branch of
//! `arctan(C + A tan θ)` (see [`unwrap_atan`]):
//!
//! ```text
//! γ_G,n(t) = ½(n + ½) [ (A + B) ω (t − t₀) − 2 ΔU(t) ]
//! γ_D,n(t) = −½(n + ½) (A + B) ω (t − t₀)
//! γ_n(t)   = −ω (n + ½) ∫ f⁻¹ = −(n + ½) ΔU(t)
//! Θ_H(t)   = −2 γ_G,0(t)
//! ```
//!
//! All phases are zero at `t = t₀` and are only defined for `t ≥ t₀`.

use serde::{Deserialize, Serialize};

use crate::envelope::EnvelopeParams;
use crate::error::{Error, Result};
use crate::numerics::{atan_wobble, step_compensation};
use crate::scalar::Scalar;
use crate::wavefunction::StateIndex;

/// Values of `g₁ = ∫f`, `g₂ = ∫1/f`, `g₃ = ∫ḟ²/f` over `[t₀, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GIntegrals<T> {
    pub g1: T,
    pub g2: T,
    pub g3: T,
}

impl<T: Scalar> GIntegrals<T> {
    /// `Γ_G = ω(g₁ − g₂) + g₃/(4ω)`.
    pub fn gamma_geometric(&self, omega: T) -> T {
        omega * (self.g1 - self.g2) + self.g3 / (T::lit(4.0) * omega)
    }

    /// `Γ_D = −ω(g₁ + g₂) − g₃/(4ω)`.
    pub fn gamma_dynamical(&self, omega: T) -> T {
        -omega * (self.g1 + self.g2) - self.g3 / (T::lit(4.0) * omega)
    }
}

/// All phases of state `n` at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord<T> {
    pub t: T,
    pub gamma_g: T,
    pub gamma_d: T,
    pub gamma_total: T,
    /// The `(A + B)` term of `γ_G`; cancels `γ_D` exactly.
    pub first_part: T,
    /// `γ_G − first_part`; equal to the total phase.
    pub second_part: T,
    pub hannay: T,
}

/// Time derivatives of the three phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRates<T> {
    pub geometric: T,
    pub dynamical: T,
    pub total: T,
}

fn check_time<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> Result<()> {
    if t.is_nan() || t < params.t0() {
        return Err(Error::domain(format!("t = {t} precedes t0 = {}", params.t0())));
    }
    Ok(())
}

#[inline]
fn half_index<T: Scalar>(n: StateIndex) -> T {
    T::lit(n.get() as f64 + 0.5)
}

/// `ΔW(t)`: change of the periodic part of the continuous
/// `arctan Z`, so that `ΔU = ω(t − t₀) + ΔW = ω g₂(t)`.
fn wobble_advance<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> T {
    let (c, a) = (params.c(), params.a());
    atan_wobble(c, a, params.angle(t)) - atan_wobble(c, a, params.phi())
}

/// `ΔU(t)`: continuous `arctan Z(t) − arctan Z(t₀)`, i.e. `ω g₂(t)`.
fn arctan_advance<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> T {
    params.omega() * (t - params.t0()) + wobble_advance(params, t)
}

/// `(A + B) ω (t − t₀)`.
fn linear_growth<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> T {
    (params.a() + params.b()) * params.omega() * (t - params.t0())
}

/// Closed forms of `g₁, g₂, g₃`, valid for every `t ≥ t₀`.
pub fn g_integrals<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> Result<GIntegrals<T>> {
    check_time(params, t)?;
    let (a, b, c, omega) = (params.a(), params.b(), params.c(), params.omega());
    let two = T::lit(2.0);
    let (s, co) = (two * params.angle(t)).sin_cos();
    let (s0, co0) = (two * params.phi()).sin_cos();
    // oscillating parts of G₁ and G₃, differenced against t₀
    let wobble = (a - b) * (s - s0) + two * c * (co - co0);
    let advance = arctan_advance(params, t);
    let growth = linear_growth(params, t);
    Ok(GIntegrals {
        g1: (two * growth - wobble) / (T::lit(4.0) * omega),
        g2: advance / omega,
        g3: omega * (two * growth + wobble - T::lit(4.0) * advance),
    })
}

/// Geometric phase `γ_G,n(t)`, continuous across the tangent poles.
pub fn geometric_phase<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<T> {
    check_time(params, t)?;
    // (A + B − 2) and ΔW both vanish exactly for a static envelope
    let excess = (params.a() + params.b() - T::lit(2.0)) * params.omega() * (t - params.t0());
    Ok(T::lit(0.5) * half_index::<T>(n) * (excess - T::lit(2.0) * wobble_advance(params, t)))
}

/// Geometric phase with the branch compensation written as the literal
/// Heaviside sum over tangent poles and `arctan` taken at its principal
/// value. Ill-conditioned next to a pole; kept to cross-check
/// [`geometric_phase`].
pub fn geometric_phase_step_sum<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<T> {
    check_time(params, t)?;
    let (a, c) = (params.a(), params.c());
    let z = |theta: T| c + a * theta.tan();
    let theta = params.angle(t);
    let bracket = z(theta).atan() - z(params.phi()).atan() + step_compensation(params.phi(), theta);
    Ok(T::lit(0.5) * half_index::<T>(n) * (linear_growth(params, t) - T::lit(2.0) * bracket))
}

/// Dynamical phase `γ_D,n(t) = −½(n + ½)(A + B)ω(t − t₀)`.
pub fn dynamical_phase<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<T> {
    check_time(params, t)?;
    Ok(-T::lit(0.5) * half_index::<T>(n) * linear_growth(params, t))
}

/// Total phase `γ_n(t) = −ω(n + ½) g₂(t)`.
pub fn total_phase<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<T> {
    let g = g_integrals(params, t)?;
    Ok(-params.omega() * half_index::<T>(n) * g.g2)
}

/// Hannay angle `Θ_H(t) = −2 γ_G,0(t)`.
pub fn hannay_angle<T: Scalar>(params: &EnvelopeParams<T>, t: T) -> Result<T> {
    Ok(-T::lit(2.0) * geometric_phase(params, StateIndex::GROUND, t)?)
}

/// Analytic phase rates.
///
/// `dγ_G/dt = ½(n + ½)[ω(f − 1/f) + ḟ²/(4ωf)]`,
/// `dγ_D/dt = −½(n + ½)(A + B)ω`, `dγ/dt = −ω(n + ½)/f`.
pub fn phase_rate<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<PhaseRates<T>> {
    check_time(params, t)?;
    let omega = params.omega();
    let f = params.f(t);
    let fd = params.f_dot(t);
    let k = half_index::<T>(n);
    let half = T::lit(0.5);
    Ok(PhaseRates {
        geometric: half * k * (omega * (f - f.recip()) + fd * fd / (T::lit(4.0) * omega * f)),
        dynamical: -half * k * (params.a() + params.b()) * omega,
        total: -omega * k / f,
    })
}

/// Every phase of state `n` at time `t`.
pub fn phase_record<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<PhaseRecord<T>> {
    let gamma_g = geometric_phase(params, n, t)?;
    let gamma_d = dynamical_phase(params, n, t)?;
    let gamma_total = total_phase(params, n, t)?;
    let first_part = -gamma_d;
    Ok(PhaseRecord {
        t,
        gamma_g,
        gamma_d,
        gamma_total,
        first_part,
        second_part: gamma_g - first_part,
        hannay: hannay_angle(params, t)?,
    })
}
