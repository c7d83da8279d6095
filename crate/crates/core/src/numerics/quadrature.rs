use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`,
/// nodes ascending.
pub fn gauss_legendre_nodes<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::count(n);
    let two = T::lit(2.0);
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess for the i-th largest root
        let mut x = (T::PI() * (T::count(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != T::zero() {
            dp = d;
        }
        let w = two / ((T::one() - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative<T: Scalar>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::count(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nf = T::count(n);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

/// Adaptive Simpson quadrature of `g` over `[a, b]` with absolute tolerance
/// `tol` and at most `max_depth` bisections along any branch.
pub fn adaptive_simpson<T: Scalar>(g: impl Fn(T) -> T, a: T, b: T, tol: T, max_depth: u32) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let m = (a + b) / T::lit(2.0);
    let (fa, fm, fb) = (g(a), g(m), g(b));
    let whole = simpson(a, b, fa, fm, fb);
    let mut converged = true;
    let value = refine(&g, a, b, fa, fm, fb, whole, tol, max_depth, &mut converged);
    if !value.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integral over [{a}, {b}]")));
    }
    if !converged {
        return Err(Error::Quadrature(format!(
            "adaptive Simpson did not reach tolerance {tol} within depth {max_depth} on [{a}, {b}]"
        )));
    }
    Ok(value)
}

#[inline]
fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Scalar>(
    g: &impl Fn(T) -> T,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
    converged: &mut bool,
) -> T {
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let (flm, frm) = (g(lm), g(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    if depth == 0 {
        *converged = false;
        return left + right + delta / T::lit(15.0);
    }
    refine(g, a, m, fa, flm, fm, left, tol / two, depth - 1, converged)
        + refine(g, m, b, fm, frm, fb, right, tol / two, depth - 1, converged)
}

/// Composite Simpson rule for samples on a uniform grid; `values.len()`
/// must be odd and at least 3.
pub fn composite_simpson<T: Scalar>(values: &[T], step: T) -> Result<T> {
    let n = values.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::domain(format!("composite Simpson needs an odd sample count >= 3, got {n}")));
    }
    let mut acc = values[0] + values[n - 1];
    for (i, &v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc = acc + if i % 2 == 1 { T::lit(4.0) * v } else { T::lit(2.0) * v };
    }
    Ok(acc * step / T::lit(3.0))
}
