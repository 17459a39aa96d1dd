//! Stationary scattering data of the pair `(H_a, H_1)`.
//!
//! On the band `λ ∈ (−1,1)` the scattering matrix is the unimodular number
//!
//! `S_a(λ) = (1 + (1−a²)(2λ²−1+2iλ√(1−λ²)))/(1 + (1−a²)(2λ²−1−2iλ√(1−λ²)))`,
//!
//! equal to `D_a(λ−i0)/D_a(λ+i0)`.  Two independent re-derivations are kept:
//! through the T-matrix entries (`S = 1 − 2i√(1−λ²)·q(λ)/D_a(λ+i0)` with
//! `q = t00 + 2λ(t01+t10) + 4λ²t11`) and through the unimodular factors
//! `σ±(λ;a)` (`S = σ−/σ+`).
//!
//! The spectral shift function `ξ_a = (1/π)·boundary arg of D_a` is
//! computed both from the closed arctangent/arccotangent formulas
//! (including the integer plateaus beyond the band for `a > √2`) and by
//! continuous argument tracking of `D_a` down a vertical segment, with the
//! branch anchored by `arg D_a(z) → 0` at infinity.
//!
//! The eigenfunction transform `F_a` (rows `ψ_n(λ;a)`) and the wave
//! operators `W± = F_a*Σ±F_1` are exercised by brute-force finite-time
//! propagation of truncated operators against the stationary formulas.

use crate::branch::EnergyPoint;
use crate::chebyshev::{self, CouplingParams};
use crate::oracle::{self, TruncatedOperator};
use crate::pointres;
use crate::spectral;
use crate::{Error, Result, C64, SQRT2};

use std::f64::consts::{FRAC_PI_2, PI};

/// All scattering data of `H_a` at one band energy.
#[derive(Debug, Clone, Copy)]
pub struct ScatteringRecord {
    pub lambda: f64,
    /// `S_a(λ)`, unit modulus.
    pub s_value: C64,
    /// Spectral shift function value.
    pub xi: f64,
    pub sigma_plus: C64,
    pub sigma_minus: C64,
    /// `D_a(λ+i0)`.
    pub det_plus: C64,
}

fn check_band(a: f64, lambda: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("requires a > 0, got {a}")));
    }
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "band energy requires |lambda| < 1, got {lambda}"
        )));
    }
    Ok(())
}

/// Scattering matrix `S_a(λ)` by the boundary-determinant closed form.
pub fn smatrix(a: f64, lambda: f64) -> Result<C64> {
    check_band(a, lambda)?;
    let root = (1.0 - lambda * lambda).sqrt();
    let base = 2.0 * lambda * lambda - 1.0;
    let c = 1.0 - a * a;
    let num = 1.0 + c * C64::new(base, 2.0 * lambda * root);
    let den = 1.0 + c * C64::new(base, -2.0 * lambda * root);
    Ok(num / den)
}

/// `D_a(λ+i0)`.
pub fn det_plus(a: f64, lambda: f64) -> Result<C64> {
    check_band(a, lambda)?;
    let p = EnergyPoint::on_cut(lambda, crate::branch::CutSide::Plus)?;
    Ok(pointres::pert_det(a, &p))
}

/// Scattering matrix through the T-matrix entries:
/// `S = 1 − 2i√(1−λ²)(t00 + 2λ(t01+t10) + 4λ²t11)/D_a(λ+i0)`.
pub fn smatrix_via_t(a: f64, lambda: f64) -> Result<C64> {
    check_band(a, lambda)?;
    let p = EnergyPoint::on_cut(lambda, crate::branch::CutSide::Plus)?;
    let t = pointres::tmatrix(a, &p)?;
    let q = t.t00 + 2.0 * lambda * (t.t01 + t.t10) + 4.0 * lambda * lambda * t.t11;
    let root = (1.0 - lambda * lambda).sqrt();
    Ok(1.0 - C64::new(0.0, 2.0 * root) * q / t.det)
}

/// Unimodular factors
/// `σ±(λ;a) = (a² + 2(1−a²)λ² ± 2i(a²−1)λ√(1−λ²))/√(a⁴ − 4(a²−1)λ²)`.
///
/// The sign is fixed by the requirements that multiplication by `σ+` is
/// the stationary multiplier of `W_+` (confirmed against finite-time
/// propagation) and that `σ−/σ+ = S`; it is the solution of
/// `a·γ±(λ+i0;a)·σ± = √(a⁴−4(a²−1)λ²)·γ±(λ+i0;1)`.
pub fn sigma_pm(a: f64, lambda: f64) -> Result<(C64, C64)> {
    check_band(a, lambda)?;
    let root = (1.0 - lambda * lambda).sqrt();
    let re = a * a + 2.0 * (1.0 - a * a) * lambda * lambda;
    let im = 2.0 * (a * a - 1.0) * lambda * root;
    let den = (a.powi(4) - 4.0 * (a * a - 1.0) * lambda * lambda).sqrt();
    Ok((C64::new(re, im) / den, C64::new(re, -im) / den))
}

/// Scattering matrix as the quotient `σ−/σ+`.
pub fn smatrix_via_sigma(a: f64, lambda: f64) -> Result<C64> {
    let (sp, sm) = sigma_pm(a, lambda)?;
    Ok(sm / sp)
}

/// Spectral shift function by the closed piecewise formulas; total in `λ`,
/// with one-sided inner-limit values at the discontinuity points.
pub fn ssf_closed(a: f64, lambda: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("requires a > 0, got {a}")));
    }
    let sign = if lambda < 0.0 { -1.0 } else { 1.0 };
    let lam = lambda.abs();
    let a2 = a * a;
    if lam >= 1.0 {
        // Plateau region: counts eigenvalues crossed.
        if a > SQRT2 {
            let lam_plus = a2 / (2.0 * (a2 - 1.0).sqrt());
            if lam <= lam_plus {
                return Ok(sign);
            }
            return Ok(0.0);
        }
        if (a - SQRT2).abs() < 1e-14 && lam == 1.0 {
            return Ok(sign * 0.5);
        }
        return Ok(0.0);
    }
    if lam == 0.0 {
        return Ok(0.0);
    }
    let root = (1.0 - lam * lam).sqrt();
    let base = 2.0 * lam * lam - 1.0;
    let value = if a <= SQRT2 {
        // Denominator 1 + (1-a^2)(2λ²-1) >= min(a², 2-a²) > 0 on the band.
        (2.0 * (a2 - 1.0) * lam * root / (1.0 + (1.0 - a2) * base)).atan() / PI
    } else {
        // arccot with range (0, π).
        let x = (1.0 - (a2 - 1.0) * base) / (2.0 * (a2 - 1.0) * lam * root);
        (FRAC_PI_2 - x.atan()) / PI
    };
    Ok(sign * value)
}

// Continuous-argument increment of D_a along the segment y_hi -> y_lo at
// fixed real part, refined until each step turns by less than pi/2.
fn delta_arg(a: f64, lambda: f64, y_hi: f64, y_lo: f64, d_hi: C64, d_lo: C64, depth: u32) -> Result<f64> {
    let step = (d_lo / d_hi).arg();
    if step.abs() <= FRAC_PI_2 {
        return Ok(step);
    }
    if depth >= 60 {
        return Err(Error::PhaseStep(format!(
            "argument tracking stalled at lambda = {lambda}, y in [{y_lo}, {y_hi}]"
        )));
    }
    let y_mid = (y_hi * y_lo).sqrt();
    let d_mid = pointres::pert_det(a, &EnergyPoint::physical(C64::new(lambda, y_mid)));
    Ok(delta_arg(a, lambda, y_hi, y_mid, d_hi, d_mid, depth + 1)?
        + delta_arg(a, lambda, y_mid, y_lo, d_mid, d_lo, depth + 1)?)
}

/// Spectral shift function by continuous argument tracking of
/// `D_a(λ + iy)` from `y = 10` down to `y = eps_floor`, with the branch
/// anchored by `arg D_a → 0` at infinity.
pub fn ssf_arg_tracked(a: f64, lambda: f64, eps_floor: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("requires a > 0, got {a}")));
    }
    if !(eps_floor > 0.0) || eps_floor >= 1.0 {
        return Err(Error::Domain(format!(
            "eps_floor must lie in (0,1), got {eps_floor}"
        )));
    }
    let det_at = |y: f64| pointres::pert_det(a, &EnergyPoint::physical(C64::new(lambda, y)));
    let mut y_hi = 10.0;
    let mut d_hi = det_at(y_hi);
    // Anchor: at |z| = 10 the determinant is 1 + O(|z|^-2), so the principal
    // argument is already the branch with arg -> 0 at infinity.
    let mut phase = d_hi.arg();
    while y_hi > eps_floor {
        let y_lo = (y_hi * 0.7).max(eps_floor);
        let d_lo = det_at(y_lo);
        phase += delta_arg(a, lambda, y_hi, y_lo, d_hi, d_lo, 0)?;
        y_hi = y_lo;
        d_hi = d_lo;
    }
    Ok(phase / PI)
}

/// Full scattering record at one energy.
pub fn record(a: f64, lambda: f64) -> Result<ScatteringRecord> {
    let (sigma_plus, sigma_minus) = sigma_pm(a, lambda)?;
    Ok(ScatteringRecord {
        lambda,
        s_value: smatrix(a, lambda)?,
        xi: ssf_closed(a, lambda)?,
        sigma_plus,
        sigma_minus,
        det_plus: det_plus(a, lambda)?,
    })
}

/// Row `n` of the eigenfunction transform: `ψ_n(λ;a)` on a grid.
pub fn transform_row(a: f64, n: usize, grid: &[f64]) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&lam| chebyshev::psi(a, lam, n))
        .collect()
}

/// Entry `∫ψ_n ψ_m dλ` of `F_a^* F_a` (the absolutely continuous part of
/// the orthogonality relation); equals `δ_{n,m}` minus the atom term.
pub fn ac_orthogonality_entry(a: f64, n: usize, m: usize) -> Result<f64> {
    oracle::quad_integrate(
        |lam| chebyshev::psi(a, lam, n).unwrap_or(0.0) * chebyshev::psi(a, lam, m).unwrap_or(0.0),
        1e-11,
    )
}

/// Discrete check of `F_a F_a^* = I` on the Gauss grid of `ρ_a` generated
/// by the `size`-section eigensolver; returns the maximum deviation of
/// `F_a F_a^* 1` from `1` over the in-band nodes.
pub fn gauss_transform_identity_error(a: f64, size: usize) -> Result<f64> {
    let params = CouplingParams::rank_two(a)?;
    let t = TruncatedOperator::from_coupling(params, size)?;
    let s = oracle::dense_spectrum(&t)?;
    let vfac = |lam: f64| spectral::density(a, lam).map(|d| d.sqrt());
    // c_n = sum over in-band nodes of w_j Ch_n(lambda_j) g_j / Vfac_j, g = 1.
    let mut coeffs = vec![0.0; size];
    let mut band_nodes = Vec::new();
    for (j, &lam) in s.eigenvalues.iter().enumerate() {
        if lam.abs() >= 1.0 {
            continue;
        }
        band_nodes.push(j);
        let w = s.first_components[j] * s.first_components[j];
        let scale = w / vfac(lam)?;
        let mut prev = 0.0f64;
        let mut cur = 1.0f64;
        for (n, c) in coeffs.iter_mut().enumerate() {
            *c += scale * cur;
            let next = if n == 0 {
                2.0 * lam * cur / a
            } else if n == 1 {
                2.0 * lam * cur - a
            } else {
                2.0 * lam * cur - prev
            };
            prev = cur;
            cur = next;
        }
    }
    // Evaluate sum_n psi_n(lambda_k) c_n at each in-band node.
    let mut worst = 0.0f64;
    for &k in &band_nodes {
        let lam = s.eigenvalues[k];
        let v = vfac(lam)?;
        let mut acc = 0.0f64;
        let mut prev = 0.0f64;
        let mut cur = 1.0f64;
        for (n, c) in coeffs.iter().enumerate() {
            acc += c * cur;
            let next = if n == 0 {
                2.0 * lam * cur / a
            } else if n == 1 {
                2.0 * lam * cur - a
            } else {
                2.0 * lam * cur - prev
            };
            prev = cur;
            cur = next;
        }
        worst = worst.max((v * acc - 1.0).abs());
    }
    Ok(worst)
}

// 10-point Gauss-Legendre rule on [-1,1] (positive half; symmetric).
const GL_X: [f64; 5] = [
    0.148874338981631,
    0.433395394129247,
    0.679409568299024,
    0.865063366688985,
    0.973906528517172,
];
const GL_W: [f64; 5] = [
    0.295524224714753,
    0.269266719309996,
    0.219086362515982,
    0.149451349150581,
    0.066671344308688,
];

// Composite Gauss-Legendre nodes/weights in theta over (0, pi).
fn theta_rule(panels: usize) -> Vec<(f64, f64)> {
    let h = PI / panels as f64;
    let mut rule = Vec::with_capacity(panels * 10);
    for p in 0..panels {
        let c = (p as f64 + 0.5) * h;
        for i in 0..5 {
            for s in [-1.0, 1.0] {
                rule.push((c + s * 0.5 * h * GL_X[i], 0.5 * h * GL_W[i]));
            }
        }
    }
    rule
}

/// Which unimodular multiplier enters the stationary wave operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveSide {
    /// `W_+` (limit `t → +∞`).
    Plus,
    /// `W_−` (limit `t → −∞`).
    Minus,
}

/// `F_a^* Σ_side F_1 f` for a finitely supported real `f`, computed on a
/// composite Gauss grid; returns the first `n_max` components.
pub fn stationary_wave_apply(
    a: f64,
    side: WaveSide,
    f: &[f64],
    n_max: usize,
) -> Result<Vec<C64>> {
    check_band(a, 0.0)?;
    let panels = (n_max / 2).max(64);
    let rule = theta_rule(panels);
    let mut out = vec![C64::new(0.0, 0.0); n_max];
    for &(theta, wt) in &rule {
        let lam = theta.cos();
        // (F_1 f)(lambda)
        let mut g = 0.0f64;
        for (m, &fm) in f.iter().enumerate() {
            g += fm * chebyshev::psi(1.0, lam, m)?;
        }
        let (sp, sm) = sigma_pm(a, lam)?;
        let sigma = match side {
            WaveSide::Plus => sp,
            WaveSide::Minus => sm,
        };
        let coef = sigma * (g * wt * theta.sin());
        // Accumulate coef * psi_n(lambda; a) over n by the recurrence.
        let vfac = spectral::density(a, lam)?.sqrt();
        let scaled = coef * vfac;
        let mut prev = 0.0f64;
        let mut cur = 1.0f64;
        for (n, slot) in out.iter_mut().enumerate() {
            *slot += scaled * cur;
            let next = if n == 0 {
                2.0 * lam * cur / a
            } else if n == 1 {
                2.0 * lam * cur - a
            } else {
                2.0 * lam * cur - prev
            };
            prev = cur;
            cur = next;
        }
    }
    Ok(out)
}

/// Deviations `‖e^{iH_a t} e^{−iH_1 t} f − F_a^* Σ_{sign t} F_1 f‖` at each
/// requested time, sharing the two dense eigendecompositions across times;
/// decreases as `|t|` grows until truncation reflections set in.
pub fn wave_operator_deviations(
    a: f64,
    ts: &[f64],
    f: &[f64],
    truncation: usize,
) -> Result<Vec<f64>> {
    if truncation < 2048 {
        return Err(Error::Domain(format!(
            "truncation must be ≥ 2048, got {truncation}"
        )));
    }
    if f.len() > truncation / 8 {
        return Err(Error::Domain(format!(
            "f must be supported on indices < truncation/8 = {}",
            truncation / 8
        )));
    }
    for &t in ts {
        if t.abs() > 0.8 * truncation as f64 {
            return Err(Error::Domain(format!(
                "ballistic reach |t| = {} exceeds 0.8·truncation (reflection regime)",
                t.abs()
            )));
        }
    }
    let params = CouplingParams::rank_two(a)?;
    let mut fc = vec![C64::new(0.0, 0.0); truncation];
    for (i, &x) in f.iter().enumerate() {
        fc[i] = C64::new(x, 0.0);
    }
    // e^{-i H_1 t} f for every t first, so the free decomposition can be
    // dropped before the perturbed one is built.
    let frees: Vec<Vec<C64>> = {
        let t1 = TruncatedOperator::from_coupling(CouplingParams::rank_two(1.0)?, truncation)?;
        let (eigs, vecs) = oracle::dense_eigen_full(&t1)?;
        ts.iter().map(|&t| oracle::propagate(&eigs, &vecs, &fc, t)).collect()
    };
    let ta = TruncatedOperator::from_coupling(params, truncation)?;
    let (eigs, vecs) = oracle::dense_eigen_full(&ta)?;
    let stationary_plus = stationary_wave_apply(a, WaveSide::Plus, f, truncation)?;
    let stationary_minus = if ts.iter().any(|&t| t < 0.0) {
        Some(stationary_wave_apply(a, WaveSide::Minus, f, truncation)?)
    } else {
        None
    };
    let mut out = Vec::with_capacity(ts.len());
    for (k, &t) in ts.iter().enumerate() {
        let evolved = oracle::propagate(&eigs, &vecs, &frees[k], -t);
        let stationary = if t >= 0.0 {
            &stationary_plus
        } else {
            stationary_minus.as_ref().unwrap()
        };
        let mut dev = 0.0f64;
        for i in 0..truncation {
            dev += (evolved[i] - stationary[i]).norm_sqr();
        }
        out.push(dev.sqrt());
    }
    Ok(out)
}

/// Single-time version of [`wave_operator_deviations`].
pub fn wave_operator_check(a: f64, t: f64, f: &[f64], truncation: usize) -> Result<f64> {
    Ok(wave_operator_deviations(a, &[t], f, truncation)?[0])
}

/// `|‖F_a^* Σ_side F_1 f‖/‖f‖ − 1|`; the stationary wave operators are
/// isometric for `a ≤ √2`.
pub fn sigma_isometry_error(a: f64, side: WaveSide, f: &[f64], n_max: usize) -> Result<f64> {
    let w = stationary_wave_apply(a, side, f, n_max)?;
    let norm_w: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let norm_f: f64 = f.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm_f == 0.0 {
        return Err(Error::Domain("f must be nonzero".into()));
    }
    Ok((norm_w / norm_f - 1.0).abs())
}

/// Scaled oscillatory integral
/// `|∫ ω(λ ± i0)ⁿ e^{−iλt} g(λ) dλ|·(n+|t|)^p`, with the cut side matched
/// to the sign of `t` (Minus side for `t ≥ 0`); bounded uniformly in
/// `(n, t)` for smooth `g` supported in `(−1,1)`.
pub fn oscillatory_decay_check<G: Fn(f64) -> f64>(
    n: usize,
    t: f64,
    p: u32,
    g: G,
) -> Result<f64> {
    let side = if t >= 0.0 {
        crate::branch::CutSide::Minus
    } else {
        crate::branch::CutSide::Plus
    };
    let panels = 64 + (n as f64 + t.abs()) as usize;
    let rule = theta_rule(panels);
    let mut acc = C64::new(0.0, 0.0);
    for &(theta, wt) in &rule {
        let lam = theta.cos();
        let gv = g(lam);
        if gv == 0.0 {
            continue;
        }
        let w = crate::branch::boundary_omega(lam, side)?;
        let phase = -lam * t;
        acc += w.powi(n as i32) * C64::new(phase.cos(), phase.sin()) * (gv * wt * theta.sin());
    }
    Ok(acc.norm() * (n as f64 + t.abs()).powi(p as i32))
}
