use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre_nodes;
use crate::envelope::EnvelopeParams;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MIN_GRID_POINTS: usize = 16;

/// Baseline resolution of the default spatial grid.
const DEFAULT_GRID_POINTS: usize = 4001;

/// Largest `Δq · k_max` the default grid allows; keeps the five-point
/// stencil error below 10⁻⁶ relative.
const MAX_PHASE_PER_STEP: f64 = 0.06;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    UniformTrapezoid,
    GaussLegendre,
}

/// Abscissae and weights for integrals over the quadrature coordinate on
/// the truncated domain `[−L, L]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid<T> {
    points: Vec<T>,
    weights: Vec<T>,
    kind: GridKind,
    half_width: T,
}

/// Compact description of a grid, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridDescriptor {
    pub kind: GridKind,
    pub half_width: f64,
    pub n_points: usize,
}

impl<T: Scalar> QuadratureGrid<T> {
    pub fn new(kind: GridKind, half_width: T, n_points: usize) -> Result<Self> {
        if !(half_width > T::zero() && half_width.is_finite()) {
            return Err(Error::domain(format!("grid half width {half_width} must be positive")));
        }
        if n_points < MIN_GRID_POINTS {
            return Err(Error::domain(format!("grid needs at least {MIN_GRID_POINTS} points, got {n_points}")));
        }
        let (points, weights) = match kind {
            GridKind::UniformTrapezoid => {
                let step = T::lit(2.0) * half_width / T::count(n_points - 1);
                let points = (0..n_points)
                    .map(|i| {
                        // mirror the upper half so the grid is exactly symmetric
                        let j = i.min(n_points - 1 - i);
                        let q = -half_width + step * T::count(j);
                        if i == j {
                            q
                        } else {
                            -q
                        }
                    })
                    .collect::<Vec<_>>();
                let mut weights = vec![step; n_points];
                weights[0] = step / T::lit(2.0);
                weights[n_points - 1] = step / T::lit(2.0);
                (points, weights)
            }
            GridKind::GaussLegendre => {
                let (nodes, w) = gauss_legendre_nodes::<T>(n_points);
                (
                    nodes.into_iter().map(|x| x * half_width).collect(),
                    w.into_iter().map(|x| x * half_width).collect(),
                )
            }
        };
        Ok(Self { points, weights, kind, half_width })
    }

    /// Default trapezoid grid wide and fine enough for state `n` at every
    /// instant of the breathing cycle.
    ///
    /// The half width covers the classical turning point of the widest packet
    /// plus six ground-state widths; the spacing resolves the largest local
    /// wavenumber `√((2n + 1)(A + B) εω/ħ)`, which bounds the chirped momentum
    /// spread over the whole cycle.
    pub fn for_state(params: &EnvelopeParams<T>, n: u32) -> Result<Self> {
        let (_, f_max) = params.extrema();
        let two_n1 = T::lit(2.0 * n as f64 + 1.0);
        let scale = params.eps() * params.omega() / params.hbar();
        let widest = (f_max / scale).sqrt();
        let half_width = T::lit(8.0).max(widest * (two_n1.sqrt() + T::lit(6.0)));
        let k_max = (two_n1 * (params.a() + params.b()) * scale).sqrt().max(T::one());
        let needed = (T::lit(2.0) * half_width * k_max / T::lit(MAX_PHASE_PER_STEP)).ceil();
        let needed = needed.to_usize().unwrap_or(usize::MAX);
        // odd count keeps q = 0 on the grid
        let n_points = DEFAULT_GRID_POINTS.max(needed) | 1;
        Self::new(GridKind::UniformTrapezoid, half_width, n_points)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }
    pub fn weights(&self) -> &[T] {
        &self.weights
    }
    pub fn kind(&self) -> GridKind {
        self.kind
    }
    pub fn half_width(&self) -> T {
        self.half_width
    }
    pub fn len(&self) -> usize {
        self.points.len()
    }
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Spacing of a uniform grid; `None` for Gauss–Legendre.
    pub fn spacing(&self) -> Option<T> {
        match self.kind {
            GridKind::UniformTrapezoid => Some(self.points[1] - self.points[0]),
            GridKind::GaussLegendre => None,
        }
    }

    /// `Σ wᵢ g(qᵢ)`.
    pub fn integrate(&self, mut g: impl FnMut(T) -> T) -> T {
        self.points.iter().zip(&self.weights).fold(T::zero(), |acc, (&q, &w)| acc + w * g(q))
    }

    /// `Σ wᵢ vᵢ` for values already sampled on the grid.
    pub fn integrate_samples(&self, values: &[T]) -> T {
        debug_assert_eq!(values.len(), self.len());
        values.iter().zip(&self.weights).fold(T::zero(), |acc, (&v, &w)| acc + w * v)
    }

    pub fn descriptor(&self) -> GridDescriptor {
        GridDescriptor { kind: self.kind, half_width: self.half_width.as_f64(), n_points: self.len() }
    }
}

/// Uniform sampling of `[t_start, t_end]` with `n_steps` intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid<T> {
    t_start: T,
    t_end: T,
    n_steps: usize,
}

impl<T: Scalar> TimeGrid<T> {
    pub fn new(t_start: T, t_end: T, n_steps: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
            return Err(Error::domain(format!("empty time window [{t_start}, {t_end}]")));
        }
        if n_steps == 0 {
            return Err(Error::domain("time grid needs at least one step"));
        }
        Ok(Self { t_start, t_end, n_steps })
    }

    pub fn t_start(&self) -> T {
        self.t_start
    }
    pub fn t_end(&self) -> T {
        self.t_end
    }
    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step(&self) -> T {
        (self.t_end - self.t_start) / T::count(self.n_steps)
    }

    pub fn point(&self, i: usize) -> T {
        if i == self.n_steps {
            self.t_end
        } else {
            self.t_start + self.step() * T::count(i)
        }
    }

    /// All `n_steps + 1` sample times, endpoints included.
    pub fn points(&self) -> Vec<T> {
        (0..=self.n_steps).map(|i| self.point(i)).collect()
    }
}
