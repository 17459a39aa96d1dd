//! Spectral data of `H_a` and the associated moment problem.
//!
//! The spectral measure of `H_a` (with respect to `e_0`) is
//!
//! `dρ_a = (2/π)·a²√(1−λ²)/(a⁴ − 4(a²−1)λ²) dλ` on `(−1,1)`,
//!
//! plus, for `a > √2`, two atoms at `λ±(a) = ±a²/(2√(a²−1))` of common
//! weight `(a²−2)/(2(a²−1))`.  For `a ∈ (0,1)` the second-sheet determinant
//! zeros sit at `±i a²/(2√(1−a²))` (complex resonances), for `a ∈ (1,√2]`
//! at `±a²/(2√(a²−1))` (anti-bound states), and for `a > √2` they migrate
//! to the physical sheet as the eigenvalues.
//!
//! Moments `κ_n(a) = ∫λⁿ dρ_a` have the generating function
//! `Σ κ_n ζⁿ = 2/(a²√(1−ζ²) + 2 − a²)`; traces of `H_aⁿ − H_1ⁿ` have
//! `Σ ζⁿ Tr(·) = 2(a²−1)(1−w)²/(w(ζ² + (1−a²)(1−w)²))`, `w = √(1−ζ²)`.
//! Both series are extracted by exact power-series arithmetic in `u = ζ²`
//! (binomial half-integer recurrences plus convolution division), never by
//! numerical differentiation.
//!
//! The appendix material is covered by [`hankel_dets`] (Hankel determinants
//! `h_n` of a moment sequence and the recovery `a_n² = h_n h_{n+2}/h_{n+1}²`)
//! and [`is_even_measure`] (vanishing odd moments certify `b_n = 0`).

use crate::branch::{EnergyPoint, Sheet};
use crate::{Error, Result, C64, SQRT2};

/// Absolutely continuous density plus atoms of the spectral measure of `H_a`.
#[derive(Debug, Clone)]
pub struct SpectralMeasureRecord {
    a: f64,
    atoms: Vec<(f64, f64)>,
}

impl SpectralMeasureRecord {
    /// Spectral measure of `H_a`.
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::Domain(format!("measure requires a > 0, got {a}")));
        }
        let atoms = if a > SQRT2 {
            let w = atom_weight(a)?;
            let lam = a * a / (2.0 * (a * a - 1.0).sqrt());
            vec![(-lam, w), (lam, w)]
        } else {
            Vec::new()
        };
        Ok(SpectralMeasureRecord { a, atoms })
    }

    /// Coupling parameter.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Atoms as `(location, weight)`, symmetric about `0`.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// Absolutely continuous density at `λ ∈ (−1,1)`.
    pub fn density(&self, lambda: f64) -> Result<f64> {
        density(self.a, lambda)
    }
}

/// Second-sheet zeros of the perturbation determinant.
#[derive(Debug, Clone)]
pub struct ResonanceSet {
    /// Zero locations on the second sheet (`|ω| ≥ 1`).
    pub points: Vec<C64>,
}

/// Density `(2/π)·a²√(1−λ²)/(a⁴ − 4(a²−1)λ²)` of the a.c. part of `ρ_a`.
pub fn density(a: f64, lambda: f64) -> Result<f64> {
    if !(lambda.abs() < 1.0) {
        return Err(Error::Domain(format!(
            "density requires |lambda| < 1, got {lambda}"
        )));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("density requires a > 0, got {a}")));
    }
    let a2 = a * a;
    let denom = a2 * a2 - 4.0 * (a2 - 1.0) * lambda * lambda;
    Ok(2.0 / std::f64::consts::PI * a2 * (1.0 - lambda * lambda).sqrt() / denom)
}

/// Eigenvalues of `H_a`: empty for `a ≤ √2`, else `±a²/(2√(a²−1))`.
pub fn eigenvalues(a: f64) -> Vec<f64> {
    if a <= SQRT2 {
        return Vec::new();
    }
    let lam = a * a / (2.0 * (a * a - 1.0).sqrt());
    vec![-lam, lam]
}

/// Common atom weight `(a²−2)/(2(a²−1))` for `a > √2`.
pub fn atom_weight(a: f64) -> Result<f64> {
    if !(a > SQRT2) {
        return Err(Error::Domain(format!(
            "atoms exist only for a > √2, got {a}"
        )));
    }
    Ok((a * a - 2.0) / (2.0 * (a * a - 1.0)))
}

/// Second-sheet determinant zeros.
///
/// Candidates solve `ω² = 1/(a²−1)`; those with `|ω| ≥ 1` lie on the
/// second sheet and are the resonances.  For `a > √2` both roots fall
/// inside the disc (they are the eigenvalues) and the set is empty, as it
/// is for `a = 1` where `D ≡ 1`.
pub fn resonances(a: f64) -> Result<ResonanceSet> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("resonances require a > 0, got {a}")));
    }
    if (a - 1.0).abs() < 1e-14 {
        return Ok(ResonanceSet { points: Vec::new() });
    }
    let disc = 1.0 / (a * a - 1.0);
    let w = if disc >= 0.0 {
        C64::new(disc.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-disc).sqrt())
    };
    // Slack for the |omega| >= 1 test: at the threshold coupling the root
    // sits exactly on the unit circle and rounding in a^2 - 1 can push it
    // a few ulps inside.
    if w.norm() < 1.0 - 1e-12 {
        return Ok(ResonanceSet { points: Vec::new() });
    }
    let z = (w + w.finv()) * 0.5;
    Ok(ResonanceSet {
        points: vec![-z, z],
    })
}

// Coefficients of sqrt(1-u) = sum c_k u^k: c_0 = 1, c_k = c_{k-1}(k-3/2)/k.
fn sqrt_series(n_max: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n_max + 1);
    c.push(1.0);
    for k in 1..=n_max {
        let kf = k as f64;
        c.push(c[k - 1] * (kf - 1.5) / kf);
    }
    c
}

// Power-series division num/den with den[0] != 0.
fn series_div(num: &[f64], den: &[f64], n_max: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        let mut acc = num.get(k).copied().unwrap_or(0.0);
        for j in 1..=k {
            acc -= den.get(j).copied().unwrap_or(0.0) * g[k - j];
        }
        g.push(acc / den[0]);
    }
    g
}

/// Even moments `κ_0, κ_2, .., κ_{2 n_max}` of `ρ_a` from the generating
/// function (odd moments vanish identically).
pub fn moment_coeffs(a: f64, n_max: usize) -> Vec<f64> {
    let c = sqrt_series(n_max);
    let a2 = a * a;
    // Denominator a^2 sqrt(1-u) + 2 - a^2 as a series in u.
    let mut den: Vec<f64> = c.iter().map(|&x| a2 * x).collect();
    den[0] = 2.0;
    series_div(&[2.0], &den, n_max)
}

/// Moment `κ_n(a) = ∫ λⁿ dρ_a(λ)`.
pub fn moment(a: f64, n: usize) -> f64 {
    if n % 2 == 1 {
        return 0.0;
    }
    moment_coeffs(a, n / 2)[n / 2]
}

fn gf_radius(a: f64) -> f64 {
    if a * a <= 2.0 {
        1.0
    } else {
        2.0 * (a * a - 1.0).sqrt() / (a * a)
    }
}

fn require_in_radius(a: f64, zeta: C64, what: &str) -> Result<()> {
    let r = gf_radius(a);
    if zeta.norm() >= r {
        return Err(Error::Domain(format!(
            "{what} converges for |ζ| < {r}, got |ζ| = {}",
            zeta.norm()
        )));
    }
    Ok(())
}

/// Moment generating function `Σ κ_n ζⁿ = 2/(a²√(1−ζ²) + 2 − a²)`.
pub fn moment_gf(a: f64, zeta: C64) -> Result<C64> {
    require_in_radius(a, zeta, "moment generating function")?;
    let w = (1.0 - zeta * zeta).sqrt();
    Ok(2.0 / (a * a * w + 2.0 - a * a))
}

/// Trace generating function
/// `Σ ζⁿ Tr(H_aⁿ − H_1ⁿ) = 2(a²−1)(1−w)²/(w(ζ² + (1−a²)(1−w)²))`,
/// `w = √(1−ζ²)`.
pub fn trace_gf(a: f64, zeta: C64) -> Result<C64> {
    require_in_radius(a, zeta, "trace generating function")?;
    if zeta.norm() == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let w = (1.0 - zeta * zeta).sqrt();
    let onemw2 = (1.0 - w) * (1.0 - w);
    Ok(2.0 * (a * a - 1.0) * onemw2 / (w * (zeta * zeta + (1.0 - a * a) * onemw2)))
}

/// Traces `Tr(H_a^{2k} − H_1^{2k})` for `k = 0..n_max` (odd powers give 0;
/// the `k = 0` entry is 0).
pub fn trace_coeffs(a: f64, n_max: usize) -> Vec<f64> {
    if n_max == 0 {
        return vec![0.0];
    }
    let c = sqrt_series(n_max + 1);
    // (1-w)^2 = 2 - u - 2 sqrt(1-u) = sum_{k>=2} (-2 c_k) u^k.
    // Numerator 2(a^2-1)(1-w)^2 = u^2 * num2, denominator w(u + (1-a^2)(1-w)^2)
    // = u * w * den2 with den2 = 1 + (1-a^2) sum_{k>=2} (-2 c_k) u^{k-1}.
    let m = n_max - 1;
    let mut num2 = vec![0.0; m + 1];
    let mut den2 = vec![0.0; m + 1];
    den2[0] = 1.0;
    for k in 0..=m {
        num2[k] = 2.0 * (a * a - 1.0) * (-2.0 * c[k + 2]);
        if k >= 1 {
            den2[k] = (1.0 - a * a) * (-2.0 * c[k + 1]);
        }
    }
    // Multiply den2 by the sqrt series (the w factor).
    let mut den = vec![0.0; m + 1];
    for k in 0..=m {
        for j in 0..=k {
            den[k] += c[j] * den2[k - j];
        }
    }
    let t = series_div(&num2, &den, m);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(0.0);
    out.extend(t);
    out
}

/// Hankel determinants `h_1..h_{n_max}` of a moment sequence (`h_0 = 1`).
///
/// Computed as the leading principal minors of the moment matrix
/// `(κ_{i+j})` via symmetric elimination; a non-positive pivot means the
/// sequence is not strictly positive definite and is reported as an error.
pub fn hankel_dets(moments: &[f64], n_max: usize) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    if moments.len() < 2 * n_max - 1 {
        return Err(Error::Domain(format!(
            "need at least {} moments for h_{n_max}, got {}",
            2 * n_max - 1,
            moments.len()
        )));
    }
    let n = n_max;
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = moments[i + j];
        }
    }
    let mut dets = Vec::with_capacity(n);
    let mut det = 1.0;
    for k in 0..n {
        let pivot = m[k * n + k];
        det *= pivot;
        if !(det > 0.0) {
            return Err(Error::SingularMoments(format!(
                "moment matrix minor h_{} = {det} is not positive",
                k + 1
            )));
        }
        dets.push(det);
        for i in (k + 1)..n {
            let factor = m[i * n + k] / pivot;
            for j in k..n {
                m[i * n + j] -= factor * m[k * n + j];
            }
        }
    }
    Ok(dets)
}

/// Off-diagonal coefficients `a_0, a_1, ..` recovered from Hankel
/// determinants via `a_n² = h_n h_{n+2}/h_{n+1}²` (`h` as returned by
/// [`hankel_dets`], i.e. starting at `h_1`).
pub fn offdiag_from_hankel(h: &[f64]) -> Vec<f64> {
    let get = |n: usize| -> f64 {
        if n == 0 {
            1.0
        } else {
            h[n - 1]
        }
    };
    (0..h.len().saturating_sub(1))
        .map(|n| (get(n) * get(n + 2) / (get(n + 1) * get(n + 1))).sqrt())
        .collect()
}

/// True iff all odd moments vanish within `tol`; certifies an even measure
/// and hence `b_n = 0` for the reconstructed Jacobi operator.
pub fn is_even_measure(moments: &[f64], tol: f64) -> bool {
    moments.iter().skip(1).step_by(2).all(|m| m.abs() <= tol)
}

/// Ratio of `κ_{2m}(a)` to its predicted leading asymptotic term; tends to
/// `1` as `m → ∞`.
///
/// Branches: power law `(a/(a²−2))²/(√π m^{3/2})` for `a < √2`; threshold
/// law `1/(√π m^{1/2})` at `a = √2`; for `a > √2` the normalized successive
/// ratio `κ_{2m}/κ_{2m−2} · 4(a²−1)/a⁴` (exponential regime).
pub fn moment_asymptotics_check(a: f64, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("need m >= 1".into()));
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mf = m as f64;
    if (a - SQRT2).abs() < 1e-12 {
        let kappa = moment(a, 2 * m);
        Ok(kappa * sqrt_pi * mf.sqrt())
    } else if a < SQRT2 {
        let kappa = moment(a, 2 * m);
        let factor = (a * a - 2.0) / a;
        Ok(kappa * sqrt_pi * mf.powf(1.5) * factor * factor)
    } else {
        let coeffs = moment_coeffs(a, m);
        let ratio = coeffs[m] / coeffs[m - 1];
        Ok(ratio * 4.0 * (a * a - 1.0) / (a * a * a * a))
    }
}

/// `|D_a|` evaluated on the second sheet at a candidate resonance; used by
/// tests and the verification suite.
pub fn second_sheet_det(a: f64, z: C64) -> C64 {
    crate::pointres::pert_det(a, &EnergyPoint::new(z, Sheet::Second))
}
