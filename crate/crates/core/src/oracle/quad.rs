//! Adaptive Gauss–Kronrod quadrature over the band `(−1,1)`.
//!
//! Integrands are given in the spectral variable `λ`; the engine always
//! substitutes `λ = cos θ` and integrates `f(cos θ)·sin θ` over `(0, π)`,
//! which removes the `(1−λ²)^{∓1/2}` endpoint behavior of spectral
//! densities.  Panels are split where the embedded 7-point Gauss estimate
//! disagrees with the 15-point Kronrod value; the budget is `2·10⁴` panels.

use crate::{Error, Result, C64};

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule; nodes are symmetric, listed for the positive half.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

// Kronrod and Gauss estimates of ∫ over [lo,hi].
fn gk15<F: Fn(f64) -> C64>(f: &F, lo: f64, hi: f64) -> (C64, C64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut kron = C64::new(0.0, 0.0);
    let mut gauss = C64::new(0.0, 0.0);
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let val = if x == 0.0 {
            f(c)
        } else {
            f(c - h * x) + f(c + h * x)
        };
        kron += wk * val;
        if j % 2 == 1 {
            gauss += WG[j / 2] * val;
        }
    }
    (kron * h, gauss * h)
}

/// Adaptive integral of a complex-valued integrand over `λ ∈ (−1,1)`,
/// absolute tolerance `tol`.
pub fn quad_integrate_complex<F: Fn(f64) -> C64>(f: F, tol: f64) -> Result<C64> {
    let g = |theta: f64| f(theta.cos()) * theta.sin();
    let mut total = C64::new(0.0, 0.0);
    let mut stack = vec![(0.0f64, std::f64::consts::PI)];
    let mut panels = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        panels += 1;
        if panels > 20_000 {
            return Err(Error::QuadBudget(
                "adaptive quadrature exceeded 2e4 panels".into(),
            ));
        }
        let (kron, gauss) = gk15(&g, lo, hi);
        let err = (kron - gauss).norm();
        let width = hi - lo;
        if err <= tol * width / std::f64::consts::PI || width < 1e-12 {
            total += kron;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
    }
    Ok(total)
}

/// Adaptive integral of a real integrand over `λ ∈ (−1,1)`.
pub fn quad_integrate<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    quad_integrate_complex(|lam| C64::new(f(lam), 0.0), tol).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn semicircle_mass() {
        let m = quad_integrate(
            |lam| 2.0 / std::f64::consts::PI * (1.0 - lam * lam).sqrt(),
            1e-11,
        )
        .unwrap();
        assert_relative_eq!(m, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn inverse_sqrt_endpoint_singularity() {
        // ∫ dλ/(π sqrt(1-λ²)) = 1: the arcsine distribution.
        let m = quad_integrate(
            |lam| 1.0 / (std::f64::consts::PI * (1.0 - lam * lam).sqrt()),
            1e-11,
        )
        .unwrap();
        assert_relative_eq!(m, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn polynomial_moments() {
        for n in 0..8 {
            let m = quad_integrate(|lam| lam.powi(n), 1e-12).unwrap();
            let expect = if n % 2 == 1 {
                0.0
            } else {
                2.0 / (n as f64 + 1.0)
            };
            assert_relative_eq!(m, expect, epsilon = 1e-11);
        }
    }

    #[test]
    fn complex_integrand() {
        // Cauchy transform of the semicircle: ∫ ρ_1(λ)/(λ-z) dλ = r_{0,0}(z)/1
        // has the closed value 2(sqrt(z²-1)-z) at z = 1.25 via the free
        // resolvent; checked loosely here, exactly in the verify suites.
        let z = C64::new(1.25, 0.0);
        let v = quad_integrate_complex(
            |lam| {
                C64::new(
                    2.0 / std::f64::consts::PI * (1.0 - lam * lam).sqrt(),
                    0.0,
                ) / (C64::new(lam, 0.0) - z)
            },
            1e-11,
        )
        .unwrap();
        assert_relative_eq!(v.re, -1.0, epsilon = 1e-9);
        assert!(v.im.abs() < 1e-10);
    }

    #[test]
    fn budget_error() {
        // A discontinuous pathological integrand cannot meet 1e-15.
        let r = quad_integrate(|lam| if lam.sin().abs() * 1e8 % 1.0 > 0.5 { 1.0 } else { 0.0 }, 1e-15);
        assert!(matches!(r, Err(Error::QuadBudget(_))));
    }
}
