use crate::scalar::Scalar;

/// `(g(x + h) − g(x − h)) / 2h`.
#[inline]
pub fn central_difference<T: Scalar, V>(g: impl Fn(T) -> V, x: T, h: T) -> V
where
    V: std::ops::Sub<Output = V> + std::ops::Div<T, Output = V>,
{
    (g(x + h) - g(x - h)) / (T::lit(2.0) * h)
}

/// Fourth-order second derivative on uniform samples. The two outermost
/// points at each end have no full stencil and are left at zero.
pub fn second_derivative_5pt<T, V>(values: &[V], spacing: T) -> Vec<V>
where
    T: Scalar,
    V: Copy
        + num_traits::Zero
        + std::ops::Add<Output = V>
        + std::ops::Sub<Output = V>
        + std::ops::Mul<T, Output = V>
        + std::ops::Div<T, Output = V>,
{
    let n = values.len();
    let mut out = vec![V::zero(); n];
    if n < 5 {
        return out;
    }
    let denom = T::lit(12.0) * spacing * spacing;
    for i in 2..n - 2 {
        let s = values[i - 1] * T::lit(16.0) + values[i + 1] * T::lit(16.0)
            - values[i - 2]
            - values[i + 2]
            - values[i] * T::lit(30.0);
        out[i] = s / denom;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_derivative_of_gaussian() {
        let h = 0.01;
        let xs: Vec<f64> = (0..801).map(|i| -4.0 + h * i as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|x| (-x * x).exp()).collect();
        let d2 = second_derivative_5pt(&vals, h);
        for i in 2..xs.len() - 2 {
            let x = xs[i];
            let exact = (4.0 * x * x - 2.0) * (-x * x).exp();
            assert!((d2[i] - exact).abs() < 2e-8);
        }
        assert_eq!(d2[0], 0.0);
    }

    #[test]
    fn central_difference_of_sine() {
        let d = central_difference(|x: f64| x.sin(), 0.3, 1e-6);
        assert!((d - 0.3f64.cos()).abs() < 1e-9);
    }
}
