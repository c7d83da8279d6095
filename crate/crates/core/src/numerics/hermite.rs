use crate::envelope::N_MAX_SUPPORTED;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Orthonormal Hermite function
/// `h_n(x) = H_n(x) e^{−x²/2} / √(2ⁿ n! √π)`.
///
/// Evaluated with the normalized three-term recurrence
/// `h_{k+1} = x √(2/(k+1)) h_k − √(k/(k+1)) h_{k−1}`, which never forms
/// `H_n` or the factorial and stays finite for every `n ≤ 200`.
pub fn hermite_weighted<T: Scalar>(n: u32, x: T) -> Result<T> {
    check_order(n)?;
    let mut out = T::zero();
    walk(n, x, |k, h| {
        if k == n {
            out = h;
        }
    });
    Ok(out)
}

/// `h_0(x), …, h_n(x)` in one recurrence sweep.
pub fn hermite_functions<T: Scalar>(n: u32, x: T) -> Result<Vec<T>> {
    check_order(n)?;
    let mut out = Vec::with_capacity(n as usize + 1);
    walk(n, x, |_, h| out.push(h));
    Ok(out)
}

fn check_order(n: u32) -> Result<()> {
    if n > N_MAX_SUPPORTED {
        return Err(Error::domain(format!("Hermite order {n} exceeds supported maximum {N_MAX_SUPPORTED}")));
    }
    Ok(())
}

#[inline]
fn walk<T: Scalar>(n: u32, x: T, mut visit: impl FnMut(u32, T)) {
    let two = T::lit(2.0);
    let mut prev = T::zero();
    let mut cur = T::FRAC_1_PI().sqrt().sqrt() * (-x * x / two).exp();
    visit(0, cur);
    for k in 0..n {
        let kf = T::from_u32(k).unwrap();
        let next = x * (two / (kf + T::one())).sqrt() * cur - (kf / (kf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        visit(k + 1, cur);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn exact_h5(x: &BigRational) -> BigRational {
        // H₅(x) = 32x⁵ − 160x³ + 120x
        let c = |v: i64| BigRational::from_integer(BigInt::from(v));
        let x2 = x * x;
        let x3 = &x2 * x;
        let x5 = &x3 * &x2;
        c(32) * x5 - c(160) * x3 + c(120) * x.clone()
    }

    fn to_f64(r: &BigRational) -> f64 {
        // exact rational -> nearest f64 via scaled integer division
        let scale = BigInt::from(10u64).pow(30);
        let scaled = (r * BigRational::from_integer(scale.clone())).round().to_integer();
        scaled.to_string().parse::<f64>().unwrap() / 1e30
    }

    #[test]
    fn ground_state_and_parity() {
        assert_abs_diff_eq!(hermite_weighted(0, 0.0).unwrap(), PI.powf(-0.25), epsilon = 1e-15);
        assert_abs_diff_eq!(hermite_weighted(0, 0.0).unwrap(), 0.7511255444649425, epsilon = 1e-15);
        assert_eq!(hermite_weighted(1, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(hermite_weighted(7, -0.8).unwrap(), -hermite_weighted(7, 0.8).unwrap(), epsilon = 1e-15);
    }

    #[test]
    fn degree_five_matches_exact_polynomial() {
        let x = BigRational::new(BigInt::from(13), BigInt::from(10));
        let poly = to_f64(&exact_h5(&x));
        let norm = (32.0 * 120.0 * PI.sqrt()).sqrt();
        let expected = poly * (-0.845f64).exp() / norm;
        let got = hermite_weighted(5, 1.3).unwrap();
        assert!((got - expected).abs() < 1e-14 * expected.abs(), "{got} vs {expected}");
    }

    #[test]
    fn rejects_unsupported_order() {
        assert!(hermite_weighted(201, 0.5).is_err());
        assert!(hermite_weighted(200, 0.5f64).unwrap().is_finite());
        assert!(hermite_weighted(200, 25.0f64).unwrap().is_finite());
    }

    #[test]
    fn sweep_agrees_with_single_evaluation() {
        let all = hermite_functions(12, 1.7).unwrap();
        for (k, v) in all.iter().enumerate() {
            assert_eq!(*v, hermite_weighted(k as u32, 1.7).unwrap());
        }
    }

    proptest! {
        #[test]
        fn recurrence_holds(n in 1u32..150, x in -15.0f64..15.0) {
            let h = hermite_functions(n + 1, x).unwrap();
            let (hm, h0, hp) = (h[n as usize - 1], h[n as usize], h[n as usize + 1]);
            let nf = n as f64;
            let rhs = x * (2.0 / (nf + 1.0)).sqrt() * h0 - (nf / (nf + 1.0)).sqrt() * hm;
            let scale = hm.abs().max(h0.abs()).max(hp.abs()).max(1e-300);
            prop_assert!((hp - rhs).abs() <= 1e-14 * scale * (1.0 + x.abs()));
        }

        #[test]
        fn ladder_derivative_identity(n in 1u32..40, x in -8.0f64..8.0) {
            // h_n' = √(n/2) h_{n−1} − √((n+1)/2) h_{n+1}
            let h = hermite_functions(n + 1, x).unwrap();
            let nf = n as f64;
            let ladder = (nf / 2.0).sqrt() * h[n as usize - 1] - ((nf + 1.0) / 2.0).sqrt() * h[n as usize + 1];
            let step = 1e-5;
            let fd = (hermite_weighted(n, x + step).unwrap() - hermite_weighted(n, x - step).unwrap()) / (2.0 * step);
            prop_assert!((fd - ladder).abs() < 1e-7 * (1.0 + nf));
        }
    }
}
