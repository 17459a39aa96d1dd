//! Generalized Chebyshev polynomials `Ch_n(z;a)` and `Ch_n(z;a,b)`.
//!
//! These are the orthonormal polynomials of the point-interaction operator
//! `H_{a,b}`: `Ch_0 = 1`, `Ch_1 = (2z−b)/a`, `Ch_2 = 2z·Ch_1 − a`, and the
//! free three-term recurrence `Ch_{k+1} = 2z·Ch_k − Ch_{k−1}` from `k = 2`
//! on.  At `a = 1, b = 0` they reduce to the second-kind polynomials `U_n`;
//! at `a = √2, b = 0` the recurrence yields `√2·T_n` for `n ≥ 1` (first
//! kind up to normalization).
//!
//! The recurrence is the canonical evaluator.  Alternative routes kept for
//! validation and asymptotics:
//!
//! - closed form `γ₊ωⁿ + γ₋ω⁻ⁿ` with
//!   `γ± = a/2 ± ((a²−2)z + b)/(2a√(z²−1))`, refused within `1e−8` of the
//!   band edges where the `1/√(z²−1)` pair cancels;
//! - band-edge values `Ch_n(±1;a) = (±1)ⁿ(2n/a − (n−1)a)`;
//! - trigonometric form `κ(θ;a)·cos(nθ − δ(θ;a))` on the band, `θ = arccos λ`.
//!
//! [`psi`] attaches the spectral weight, giving the continuum eigenfunctions
//! `ψ_n(λ;a)` of `H_a` normalized so that the eigenfunction transform is
//! unitary.

use crate::branch::EnergyPoint;
use crate::{Error, Result, C64};

/// Perturbation parameters `(a, b)` of `H_{a,b}`; `b = 0` for the pure
/// point interaction `H_a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingParams {
    a: f64,
    b: f64,
}

impl CouplingParams {
    /// General parameters; requires `a > 0`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "coupling requires finite a > 0, got a = {a}, b = {b}"
            )));
        }
        Ok(CouplingParams { a, b })
    }

    /// The pure `H_a` case, `b = 0`.
    pub fn rank_two(a: f64) -> Result<Self> {
        CouplingParams::new(a, 0.0)
    }

    /// Off-diagonal coupling `a` (`a_0 = a/2`).
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Diagonal coupling `b` (`b_0 = b/2`).
    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Values `Ch_0 .. Ch_N` at a fixed `z`.
#[derive(Debug, Clone)]
pub struct PolySeq {
    /// Parameters the sequence was generated with.
    pub params: CouplingParams,
    /// Evaluation point.
    pub z: C64,
    /// `values[n] = Ch_n(z)`.
    pub values: Vec<C64>,
}

/// `Ch_0 .. Ch_{n_max}` by the three-term recurrence.
pub fn eval_recurrence(params: CouplingParams, z: C64, n_max: usize) -> PolySeq {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(C64::new(1.0, 0.0));
    if n_max >= 1 {
        values.push((2.0 * z - params.b) / params.a);
    }
    if n_max >= 2 {
        values.push(2.0 * z * values[1] - params.a);
    }
    for k in 2..n_max {
        let next = 2.0 * z * values[k] - values[k - 1];
        values.push(next);
    }
    PolySeq { params, z, values }
}

/// Real-argument recurrence, single value `Ch_n(x)`.
pub fn eval_recurrence_real(params: CouplingParams, x: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = (2.0 * x - params.b) / params.a;
    for k in 1..n {
        let next = if k == 1 {
            2.0 * x * cur - params.a
        } else {
            2.0 * x * cur - prev
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// Closed form `γ₊ωⁿ + γ₋ω⁻ⁿ`; validation path, refuses the edge window.
pub fn eval_closed_form(params: CouplingParams, z: &EnergyPoint, n: usize) -> Result<C64> {
    if n == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    let zc = z.z();
    if (zc - 1.0).norm() < 1e-8 || (zc + 1.0).norm() < 1e-8 {
        return Err(Error::NearEdge(format!(
            "closed form unstable at z = {zc}; use the recurrence or edge formula"
        )));
    }
    let a = params.a;
    let s = z.sqrt_val();
    let corr = ((a * a - 2.0) * zc + params.b) / (2.0 * a * s);
    let gp = 0.5 * a + corr;
    let gm = 0.5 * a - corr;
    let w = z.omega_val();
    let wn = w.powi(n as i32);
    Ok(gp * wn + gm * wn.finv())
}

/// Band-edge value `Ch_n(±1;a) = (±1)ⁿ(2n/a − (n−1)a)` for `b = 0`.
pub fn eval_edge(a: f64, sign: i8, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let nf = n as f64;
    let magnitude = 2.0 * nf / a - (nf - 1.0) * a;
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    if sign >= 0 {
        magnitude
    } else {
        parity * magnitude
    }
}

/// Amplitude and phase of the on-band oscillation,
/// `κ(θ;a) = √(a⁴ + 4(1−a²)cos²θ)/(a sinθ)` and
/// `δ(θ;a) = arctan(((2−a²)/a²)·cotθ)`.
pub fn trig_amplitude_phase(a: f64, theta: f64) -> (f64, f64) {
    let (sin_t, cos_t) = theta.sin_cos();
    let a2 = a * a;
    let kappa = (a2 * a2 + 4.0 * (1.0 - a2) * cos_t * cos_t).sqrt() / (a * sin_t);
    let delta = (((2.0 - a2) / a2) * (cos_t / sin_t)).atan();
    (kappa, delta)
}

/// Trigonometric form `κ(θ;a)·cos(nθ − δ(θ;a))`, `θ = arccos λ`.
pub fn eval_trig(a: f64, lambda: f64, n: usize) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "eval_trig requires |lambda| < 1, got {lambda}"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("eval_trig requires a > 0, got {a}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let theta = lambda.acos();
    let (kappa, delta) = trig_amplitude_phase(a, theta);
    Ok(kappa * (n as f64 * theta - delta).cos())
}

// a^4 - 4(a^2-1)lambda^2 >= (a^2-2)^2 on the band.
fn weight_denominator(a: f64, lambda: f64) -> f64 {
    let a2 = a * a;
    a2 * a2 - 4.0 * (a2 - 1.0) * lambda * lambda
}

/// Continuum eigenfunction
/// `ψ_n(λ;a) = √(2/π)·a·(1−λ²)^{1/4}/√(a⁴ − 4(a²−1)λ²)·Ch_n(λ;a)`.
///
/// The denominator is bounded below by `(a²−2)²` on the band, so the value
/// is finite for every `|λ| < 1` (it grows like `(1−λ²)^{−1/4}` near the
/// edges only through `Ch_n` when `a = √2`).
pub fn psi(a: f64, lambda: f64, n: usize) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "psi requires |lambda| < 1, got {lambda}"
        )));
    }
    let params = CouplingParams::rank_two(a)?;
    let amp = (2.0 / std::f64::consts::PI).sqrt() * a * (1.0 - lambda * lambda).powf(0.25)
        / weight_denominator(a, lambda).sqrt();
    Ok(amp * eval_recurrence_real(params, lambda, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::{CutSide, Sheet};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    fn ch(a: f64, b: f64, z: f64, n: usize) -> f64 {
        eval_recurrence_real(CouplingParams::new(a, b).unwrap(), z, n)
    }

    #[test]
    fn recurrence_low_orders() {
        // Ch_n(z;1) = U_n(z): U_2(1/2) = 4z^2-1 = 0.
        assert_relative_eq!(ch(1.0, 0.0, 0.5, 2), 0.0, epsilon = 1e-15);
        // Edge example: Ch_3(1;2) = 2*3/2 - 2*2 = -1.
        assert_relative_eq!(ch(2.0, 0.0, 1.0, 3), -1.0, max_relative = 1e-14);
        // Ch_1 = 2z/a for b = 0.
        assert_relative_eq!(ch(1.7, 0.0, 0.3, 1), 0.6 / 1.7, max_relative = 1e-15);
        // b enters only Ch_1: Ch_1 = (2z-b)/a.
        assert_relative_eq!(ch(1.5, 0.4, 0.3, 1), (0.6 - 0.4) / 1.5, max_relative = 1e-15);
    }

    #[test]
    fn reduces_to_classical_u_and_t() {
        for k in 0..60 {
            let x: f64 = -0.99 + 0.0334 * k as f64;
            let theta = x.acos();
            for n in 0..25usize {
                let u = ((n as f64 + 1.0) * theta).sin() / theta.sin();
                assert_relative_eq!(ch(1.0, 0.0, x, n), u, epsilon = 1e-10);
                let t = (n as f64 * theta).cos();
                if n >= 1 {
                    // The recurrence normalizes the first-kind family by sqrt(2).
                    assert_relative_eq!(
                        ch(crate::SQRT2, 0.0, x, n),
                        crate::SQRT2 * t,
                        epsilon = 1e-10
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence_randomly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xc0de);
        for _ in 0..1000 {
            let a = rng.gen_range(0.05..4.0);
            let params = CouplingParams::rank_two(a).unwrap();
            let z = loop {
                let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
                if z.im.abs() > 0.05 || z.re.abs() > 1.05 {
                    break z;
                }
            };
            let n = rng.gen_range(1..=60usize);
            let seq = eval_recurrence(params, z, n);
            let p = EnergyPoint::new(z, Sheet::Physical);
            let cf = eval_closed_form(params, &p, n).unwrap();
            let scale = seq.values[n].norm().max(1.0);
            assert!(
                (cf - seq.values[n]).norm() < 1e-9 * scale,
                "a={a} z={z} n={n}: {cf} vs {:?}",
                seq.values[n]
            );
        }
    }

    #[test]
    fn closed_form_with_diagonal_coupling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xb0b);
        for _ in 0..300 {
            let params =
                CouplingParams::new(rng.gen_range(0.2..3.0), rng.gen_range(-2.0..2.0)).unwrap();
            let z = C64::new(rng.gen_range(1.2..3.0), rng.gen_range(0.3..2.0));
            let n = rng.gen_range(1..=40usize);
            let seq = eval_recurrence(params, z, n);
            let cf = eval_closed_form(params, &EnergyPoint::physical(z), n).unwrap();
            assert!((cf - seq.values[n]).norm() < 1e-9 * seq.values[n].norm().max(1.0));
        }
    }

    #[test]
    fn closed_form_edge_window_refused() {
        let params = CouplingParams::rank_two(1.3).unwrap();
        let p = EnergyPoint::physical(C64::new(1.0 + 1e-9, 0.0));
        assert!(matches!(
            eval_closed_form(params, &p, 3),
            Err(Error::NearEdge(_))
        ));
    }

    #[test]
    fn closed_form_on_cut() {
        let params = CouplingParams::rank_two(crate::SQRT2).unwrap();
        let p = EnergyPoint::on_cut(0.6, CutSide::Plus).unwrap();
        let cf = eval_closed_form(params, &p, 2).unwrap();
        // sqrt(2)*T_2(0.6) = sqrt(2)*(2*0.36-1)
        assert_relative_eq!(cf.re, -0.28 * crate::SQRT2, epsilon = 1e-12);
        assert_relative_eq!(cf.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn edge_formula_matches_recurrence() {
        for a in [0.5, 1.0, crate::SQRT2, 2.0] {
            for n in 0..=100usize {
                for sign in [1i8, -1] {
                    let x = sign as f64;
                    let direct = ch(a, 0.0, x, n);
                    let edge = eval_edge(a, sign, n);
                    assert_relative_eq!(edge, direct, epsilon = 1e-12 * (1.0 + direct.abs()));
                }
            }
        }
        // U_5(1) = 6.
        assert_relative_eq!(eval_edge(1.0, 1, 5), 6.0, max_relative = 1e-15);
        assert_relative_eq!(eval_edge(2.0, 1, 3), -1.0, max_relative = 1e-15);
        // Parity across the two edges.
        assert_eq!(eval_edge(1.3, -1, 7), -eval_edge(1.3, 1, 7));
    }

    #[test]
    fn trig_form_matches_recurrence() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = rng.gen_range(0.2..3.5);
            let lam = rng.gen_range(-0.98..0.98);
            let n = rng.gen_range(1..=30usize);
            let t = eval_trig(a, lam, n).unwrap();
            let r = ch(a, 0.0, lam, n);
            assert!(
                (t - r).abs() < 1e-10 * (1.0 + r.abs()),
                "a={a} lam={lam} n={n}"
            );
        }
        let t = eval_trig(1.5, 0.25, 7).unwrap();
        assert_relative_eq!(t, ch(1.5, 0.0, 0.25, 7), epsilon = 1e-11);
        assert!(eval_trig(1.5, 1.0, 3).is_err());
    }

    #[test]
    fn parity_in_lambda() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let a = rng.gen_range(0.2..3.5);
            let lam = rng.gen_range(0.0..0.99);
            for n in 0..15usize {
                let plus = ch(a, 0.0, lam, n);
                let minus = ch(a, 0.0, -lam, n);
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_relative_eq!(minus, sign * plus, epsilon = 1e-12 * (1.0 + plus.abs()));
            }
        }
        // Odd n vanishes at the center.
        assert_relative_eq!(ch(1.9, 0.0, 0.0, 7), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn degree_and_leading_coefficient() {
        // Leading coefficient of Ch_n is 2^n/a for n >= 1; probe by the
        // large-z quotient Ch_n(z)/z^n.
        let z = C64::new(1e7, 0.0);
        for a in [0.6, 1.0, 2.3] {
            let params = CouplingParams::rank_two(a).unwrap();
            let seq = eval_recurrence(params, z, 8);
            for n in 1..=8usize {
                let lead = (seq.values[n] / z.powi(n as i32)).re;
                let expect = 2f64.powi(n as i32) / a;
                assert_relative_eq!(lead, expect, max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn psi_values() {
        assert_relative_eq!(
            psi(1.0, 0.0, 0).unwrap(),
            (2.0 / std::f64::consts::PI).sqrt(),
            max_relative = 1e-15
        );
        // Grows like (1-lambda^2)^(-1/4) near the edge at a = sqrt(2).
        let near = psi(crate::SQRT2, 1.0 - 1e-8, 0).unwrap();
        assert!(near.is_finite() && near > 5.0);
        assert!(psi(crate::SQRT2, 1.0, 0).is_err());
        // Denominator lower bound keeps psi finite everywhere on the band.
        for k in 1..100 {
            let lam = -1.0 + 0.02 * k as f64;
            assert!(psi(1.4, lam, 5).unwrap().is_finite());
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(CouplingParams::rank_two(0.0).is_err());
        assert!(CouplingParams::rank_two(-1.0).is_err());
        assert!(CouplingParams::new(1.0, f64::NAN).is_err());
    }
}
