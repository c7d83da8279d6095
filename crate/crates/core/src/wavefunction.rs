//! Generalized Fock eigenfunctions on the breathing envelope,
//!
//! ```text
//! Φ_n(q, t) = (β/π)^{1/4} (2ⁿ n!)^{−1/2} H_n(√β q) exp[−(β/2)(1 − i ḟ/(2ω)) q²],
//! β(t) = εω / (ħ f(t)),
//! ```
//!
//! and the full solutions `Ψ_n = Φ_n exp[−iω(n + ½) g₂(t) + iγ_n(t₀)]`.
//! The real Gaussian is absorbed into the orthonormal Hermite function, so
//! `Φ_n = β^{1/4} h_n(√β q) exp(i β ḟ q² / (4ω))`.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::envelope::{EnvelopeParams, N_MAX_SUPPORTED};
use crate::error::{Error, Result};
use crate::numerics::{hermite_weighted, QuadratureGrid, TimeGrid};
use crate::phases;
use crate::scalar::Scalar;

/// Fock quantum number, bounded by [`N_MAX_SUPPORTED`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct StateIndex(u32);

impl StateIndex {
    pub const GROUND: StateIndex = StateIndex(0);

    pub fn new(n: u32) -> Result<Self> {
        if n > N_MAX_SUPPORTED {
            return Err(Error::domain(format!("Fock index {n} exceeds supported maximum {N_MAX_SUPPORTED}")));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for StateIndex {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

impl From<StateIndex> for u32 {
    fn from(n: StateIndex) -> u32 {
        n.0
    }
}

/// Sign convention of the imaginary exponent.
///
/// Only [`Chirp::Physical`] solves the Schrödinger equation; the flipped
/// variant exists so verification can show it is detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirp {
    #[default]
    Physical,
    Flipped,
}

/// One evaluated amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample<T> {
    pub q: T,
    pub t: T,
    pub value: Complex<T>,
    pub density: T,
}

impl<T: Scalar> WaveSample<T> {
    fn new(q: T, t: T, value: Complex<T>) -> Self {
        Self { q, t, value, density: value.norm_sqr() }
    }
}

/// Time-dependent quantities of `Φ_n` frozen at one instant.
#[derive(Debug, Clone, Copy)]
struct Snapshot<T> {
    sqrt_beta: T,
    amplitude: T,
    chirp: T,
}

impl<T: Scalar> Snapshot<T> {
    fn at(params: &EnvelopeParams<T>, t: T, sign: Chirp) -> Self {
        let beta = params.eps() * params.omega() / (params.hbar() * params.f(t));
        let chirp = beta * params.f_dot(t) / (T::lit(4.0) * params.omega());
        Self {
            sqrt_beta: beta.sqrt(),
            amplitude: beta.sqrt().sqrt(),
            chirp: match sign {
                Chirp::Physical => chirp,
                Chirp::Flipped => -chirp,
            },
        }
    }

    #[inline]
    fn eval(&self, n: StateIndex, q: T) -> Complex<T> {
        // n is bounded by construction
        let h = hermite_weighted(n.get(), self.sqrt_beta * q).unwrap_or_else(|_| T::nan());
        Complex::from_polar(self.amplitude * h, self.chirp * q * q)
    }
}

/// `Φ_n(q, t)`.
pub fn eigenfunction<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, q: T, t: T) -> Complex<T> {
    eigenfunction_with_chirp(params, n, q, t, Chirp::Physical)
}

/// `Φ_n(q, t)` with a selectable sign of the imaginary exponent.
pub fn eigenfunction_with_chirp<T: Scalar>(
    params: &EnvelopeParams<T>,
    n: StateIndex,
    q: T,
    t: T,
    chirp: Chirp,
) -> Complex<T> {
    Snapshot::at(params, t, chirp).eval(n, q)
}

/// `Φ_n(·, t)` sampled on every point of `grid`.
pub fn eigenfunction_on_grid<T: Scalar>(
    params: &EnvelopeParams<T>,
    n: StateIndex,
    t: T,
    grid: &QuadratureGrid<T>,
    chirp: Chirp,
) -> Vec<Complex<T>> {
    let snap = Snapshot::at(params, t, chirp);
    grid.points().iter().map(|&q| snap.eval(n, q)).collect()
}

/// Phase factor `exp[−iω(n + ½) g₂(t) + iγ₀]` of the full solution.
pub fn phase_factor<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T, gamma_n0: T) -> Result<Complex<T>> {
    let total = phases::total_phase(params, n, t)?;
    Ok(Complex::from_polar(T::one(), total + gamma_n0))
}

/// `Ψ_n(q, t)` with initial phase `gamma_n0` (zero by convention).
pub fn full_wavefunction<T: Scalar>(
    params: &EnvelopeParams<T>,
    n: StateIndex,
    q: T,
    t: T,
    gamma_n0: T,
) -> Result<Complex<T>> {
    Ok(eigenfunction(params, n, q, t) * phase_factor(params, n, t, gamma_n0)?)
}

/// `Ψ_n(·, t)` on `grid`.
pub fn full_wavefunction_on_grid<T: Scalar>(
    params: &EnvelopeParams<T>,
    n: StateIndex,
    t: T,
    gamma_n0: T,
    grid: &QuadratureGrid<T>,
    chirp: Chirp,
) -> Result<Vec<Complex<T>>> {
    let factor = phase_factor(params, n, t, gamma_n0)?;
    Ok(eigenfunction_on_grid(params, n, t, grid, chirp).into_iter().map(|v| v * factor).collect())
}

/// `Φ_n` at one point, with its density.
pub fn sample<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, q: T, t: T) -> WaveSample<T> {
    WaveSample::new(q, t, eigenfunction(params, n, q, t))
}

/// `|Φ_n(q, t)|²` on a time × space product grid, row-major in time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySurface<T> {
    pub times: Vec<T>,
    pub q: Vec<T>,
    pub density: Vec<T>,
}

impl<T: Scalar> DensitySurface<T> {
    pub fn row(&self, i: usize) -> &[T] {
        let w = self.q.len();
        &self.density[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.density.chunks(self.q.len())
    }
}

/// Density surface; time slices are evaluated in parallel.
pub fn density_surface<T: Scalar>(
    params: &EnvelopeParams<T>,
    n: StateIndex,
    t_grid: &TimeGrid<T>,
    q_grid: &QuadratureGrid<T>,
) -> DensitySurface<T> {
    let times = t_grid.points();
    let density = times
        .par_iter()
        .flat_map_iter(|&t| {
            let snap = Snapshot::at(params, t, Chirp::Physical);
            q_grid.points().iter().map(move |&q| snap.eval(n, q).norm_sqr())
        })
        .collect();
    DensitySurface { times, q: q_grid.points().to_vec(), density }
}

/// `⟨q²⟩` of `|Φ_n|²` by quadrature on `grid`.
pub fn second_moment<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T, grid: &QuadratureGrid<T>) -> T {
    let snap = Snapshot::at(params, t, Chirp::Physical);
    grid.integrate(|q| q * q * snap.eval(n, q).norm_sqr())
}

/// `⟨q²⟩ = (n + ½) ħ f(t) / (εω)`.
pub fn second_moment_closed_form<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> T {
    T::lit(n.get() as f64 + 0.5) * params.hbar() * params.f(t) / (params.eps() * params.omega())
}

/// Packet width `√⟨q²⟩`, measured by quadrature on the default grid.
pub fn packet_width<T: Scalar>(params: &EnvelopeParams<T>, n: StateIndex, t: T) -> Result<T> {
    let grid = QuadratureGrid::for_state(params, n.get())?;
    Ok(second_moment(params, n, t, &grid).sqrt())
}
