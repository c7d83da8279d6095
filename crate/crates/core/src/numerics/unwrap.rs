use crate::scalar::Scalar;

/// Continuous branch of `arctan(c + a·tan θ)` for `a > 0`.
///
/// On `θ ∈ (−π/2, π/2)` this is the principal value; every time `θ` passes
/// an odd multiple of `π/2` the branch advances by `π`, so the result is
/// continuous and nondecreasing in `θ`. Evaluated as
/// `atan2(c cos θ' + a sin θ', cos θ') + mπ` with `θ = θ' + mπ`,
/// `θ' ∈ [−π/2, π/2]`, which never evaluates `tan` near its poles.
#[inline]
pub fn unwrap_atan<T: Scalar>(c_coef: T, a_coef: T, theta: T) -> T {
    let pi = T::PI();
    let m = (theta / pi).round();
    let reduced = theta - m * pi;
    let (s, c) = reduced.sin_cos();
    (c_coef * c + a_coef * s).atan2(c) + m * pi
}

/// `unwrap_atan(c, a, θ) − θ`: the bounded, π-periodic part of the branch.
///
/// Computed as the angle between `(cos θ', sin θ')` and
/// `(cos θ', c cos θ' + a sin θ')`, so it is exactly zero for `c = 0, a = 1`
/// and never subtracts large multiples of `π`.
#[inline]
pub fn atan_wobble<T: Scalar>(c_coef: T, a_coef: T, theta: T) -> T {
    let pi = T::PI();
    let reduced = theta - (theta / pi).round() * pi;
    let (s, c) = reduced.sin_cos();
    let cross = c * (c_coef * c + (a_coef - T::one()) * s);
    let dot = c * c + s * (c_coef * c + a_coef * s);
    cross.atan2(dot)
}

/// Literal step sum `π Σ_{m≥0} u[θ − (2m + 1)π/2]` counting the tangent
/// poles crossed after the start angle `theta_start ∈ [−π/2, π/2)`.
///
/// Together with the principal `arctan(c + a tan θ)` this reproduces
/// [`unwrap_atan`] away from the poles; it exists to cross-check it.
pub fn step_compensation<T: Scalar>(theta_start: T, theta: T) -> T {
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    debug_assert!(theta_start >= -half_pi && theta_start < half_pi);
    let mut crossings = T::zero();
    let mut pole = half_pi;
    while theta >= pole {
        crossings = crossings + T::one();
        pole = pole + pi;
    }
    crossings * pi
}
