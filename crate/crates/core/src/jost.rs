//! General finite-support Jacobi perturbations: Jost solution and function,
//! perturbation determinant by downward recursion, regular solution, and
//! inverse recovery of coefficients from determinant polynomials.
//!
//! Coefficients deviate from the free values `a_n = 1/2`, `b_n = 0` only
//! for `n < N`.  The Jost solution is the unique solution of
//! `a_{n−1}u_{n−1} + b_n u_n + a_n u_{n+1} = z u_n` with `u_m = ω^m` in the
//! free region `m ≥ N` (and `a_{−1} := 1`); its extrapolated value
//! `u_{−1}(z)` is the Jost function.  The perturbation determinant is
//!
//! `D(z) = 2^{N+1} ω a_0 ⋯ a_{N−1} u_{−1}(z)`,
//!
//! a polynomial in `ω` of degree at most `2N` with constant term `1` and
//! real leading coefficient `1 − 4a_{N−1}²`.  Evaluating it at `2N+1`
//! scaled roots of unity in the `ω`-plane recovers its coefficients, and
//! closed formulas invert the `N = 1` (quadratic) and `N = 2` (quartic)
//! cases back to the Jacobi coefficients.

use crate::branch::EnergyPoint;
use crate::chebyshev::CouplingParams;
use crate::{Error, Result, C64};

/// Half-lattice Jacobi coefficients with finite-support deviation from the
/// free values; `a(n) = 1/2`, `b(n) = 0` for `n ≥ support()`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiCoeffs {
    a_seq: Vec<f64>,
    b_seq: Vec<f64>,
}

impl JacobiCoeffs {
    /// Coefficients `a_0..a_{N−1}`, `b_0..b_{N−1}`; all `a` entries positive.
    pub fn new(a_seq: Vec<f64>, b_seq: Vec<f64>) -> Result<Self> {
        if a_seq.len() != b_seq.len() {
            return Err(Error::Domain(format!(
                "coefficient lists must have equal length, got {} and {}",
                a_seq.len(),
                b_seq.len()
            )));
        }
        if a_seq.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
            return Err(Error::Domain("all a_n must be finite and positive".into()));
        }
        if b_seq.iter().any(|b| !b.is_finite()) {
            return Err(Error::Domain("all b_n must be finite".into()));
        }
        Ok(JacobiCoeffs { a_seq, b_seq })
    }

    /// The free operator, `N = 0`.
    pub fn free() -> Self {
        JacobiCoeffs {
            a_seq: Vec::new(),
            b_seq: Vec::new(),
        }
    }

    /// The `H_{a,b}` case as an `N = 1` perturbation: `a_0 = a/2`, `b_0 = b/2`.
    pub fn from_coupling(params: CouplingParams) -> Self {
        JacobiCoeffs {
            a_seq: vec![params.a() / 2.0],
            b_seq: vec![params.b() / 2.0],
        }
    }

    /// Support bound `N`.
    pub fn support(&self) -> usize {
        self.a_seq.len()
    }

    /// Off-diagonal entry `a_n` (free value `1/2` beyond the support).
    pub fn a(&self, n: usize) -> f64 {
        self.a_seq.get(n).copied().unwrap_or(0.5)
    }

    /// Diagonal entry `b_n` (free value `0` beyond the support).
    pub fn b(&self, n: usize) -> f64 {
        self.b_seq.get(n).copied().unwrap_or(0.0)
    }
}

/// The perturbation determinant as a polynomial `Σ c_k ω^k`.
#[derive(Debug, Clone)]
pub struct DetPolynomial {
    coeffs: Vec<C64>,
}

impl DetPolynomial {
    /// Polynomial from coefficients `c_0..c_d`.
    pub fn new(coeffs: Vec<C64>) -> Self {
        DetPolynomial { coeffs }
    }

    /// Polynomial with real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Self {
        DetPolynomial {
            coeffs: coeffs.iter().map(|&c| C64::new(c, 0.0)).collect(),
        }
    }

    /// Coefficient `c_k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Stored degree bound.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation at `ω`.
    pub fn eval(&self, w: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * w + c;
        }
        acc
    }

    /// Real coefficients, rejecting residual imaginary parts above `1e−10`.
    pub fn real_coeffs(&self) -> Result<Vec<f64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.im.abs() > 1e-10 {
                    Err(Error::Inadmissible(format!(
                        "determinant polynomial coefficient {c} is not real"
                    )))
                } else {
                    Ok(c.re)
                }
            })
            .collect()
    }
}

/// Jost solution `u_{n_min} .. u_N`; `u_m = ω^m` for `m ≥ N`, extended
/// downward by the three-term recursion with `a_{−1} = 1`.
pub fn jost_solution(coeffs: &JacobiCoeffs, z: &EnergyPoint, n_min: i64) -> Result<Vec<C64>> {
    if n_min < -1 {
        return Err(Error::Domain(format!(
            "jost_solution index starts at −1 at the lowest, got {n_min}"
        )));
    }
    let n_support = coeffs.support() as i64;
    if n_min > n_support {
        return Err(Error::Domain(format!(
            "jost_solution range must reach down to the support, got n_min = {n_min} > N = {n_support}"
        )));
    }
    let w = z.omega_val();
    let zc = z.z();
    // Seed the free region at indices N and N+1, then recurse downward.
    let mut out: Vec<C64> = Vec::new();
    let mut u_hi = w.powi(n_support as i32 + 1);
    let mut u = w.powi(n_support as i32);
    out.push(u);
    let mut n = n_support;
    while n > n_min {
        let a_left = if n == 0 { 1.0 } else { coeffs.a((n - 1) as usize) };
        let u_lo = ((zc - coeffs.b(n as usize)) * u - coeffs.a(n as usize) * u_hi) / a_left;
        out.push(u_lo);
        u_hi = u;
        u = u_lo;
        n -= 1;
    }
    out.reverse();
    Ok(out)
}

/// Jost function `u_{−1}(z)`; its physical-sheet zeros are eigenvalues.
pub fn jost_function(coeffs: &JacobiCoeffs, z: &EnergyPoint) -> Result<C64> {
    Ok(jost_solution(coeffs, z, -1)?[0])
}

/// Perturbation determinant `D(z) = 2^{N+1} ω a_0⋯a_{N−1} u_{−1}(z)`.
pub fn pert_det_general(coeffs: &JacobiCoeffs, z: &EnergyPoint) -> Result<C64> {
    let n = coeffs.support();
    let mut scale = 2f64.powi(n as i32 + 1);
    for k in 0..n {
        scale *= coeffs.a(k);
    }
    Ok(scale * z.omega_val() * jost_function(coeffs, z)?)
}

/// Coefficients of the determinant polynomial in `ω`, extracted by
/// evaluating at `2N+1` roots of unity scaled to radius `1/2` and applying
/// the inverse discrete Fourier transform.
pub fn det_polynomial(coeffs: &JacobiCoeffs) -> Result<DetPolynomial> {
    let deg = 2 * coeffs.support();
    let count = deg + 1;
    let radius = 0.5;
    let mut samples = Vec::with_capacity(count);
    for j in 0..count {
        let angle = 2.0 * std::f64::consts::PI * j as f64 / count as f64;
        let w = radius * C64::new(angle.cos(), angle.sin());
        let p = EnergyPoint::from_omega(w);
        samples.push(pert_det_general(coeffs, &p)?);
    }
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &s) in samples.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (j * k) as f64 / count as f64;
            acc += s * C64::new(angle.cos(), angle.sin());
        }
        out.push(acc / (count as f64 * radius.powi(k as i32)));
    }
    Ok(DetPolynomial::new(out))
}

/// Regular solution `φ_0 .. φ_{n_max}`: `φ_{−1} = 0`, `φ_0 = 1`; a degree-`n`
/// polynomial in `z`, equal to `Ch_n(z;a,b)` in the `N = 1` case.
pub fn regular_solution(coeffs: &JacobiCoeffs, z: C64, n_max: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    out.push(cur);
    for n in 0..n_max {
        let a_left = if n == 0 { 1.0 } else { coeffs.a(n - 1) };
        let next = ((z - coeffs.b(n)) * cur - a_left * prev) / coeffs.a(n);
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// Resolvent matrix element `(R(z)e_n, e_m) = −φ_min(z) u_max(z)/u_{−1}(z)`;
/// with the boundary coefficient fixed to 1 the Wronskian of `u` and `φ` is
/// `u_{−1}` itself.
pub fn resolvent_entry_general(
    coeffs: &JacobiCoeffs,
    n: usize,
    m: usize,
    z: &EnergyPoint,
) -> Result<C64> {
    let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
    let u = jost_solution(coeffs, z, -1)?;
    let u_m1 = u[0];
    if u_m1.norm() < 1e-13 {
        return Err(Error::Pole(format!(
            "Jost function vanishes at z = {} (bound state)",
            z.z()
        )));
    }
    let n_support = coeffs.support();
    let u_hi = if hi >= n_support {
        z.omega_val().powi(hi as i32)
    } else {
        u[hi + 1]
    };
    let phi = regular_solution(coeffs, z.z(), lo);
    Ok(-phi[lo] * u_hi / u_m1)
}

fn require_unit_constant(l0: f64) -> Result<()> {
    if (l0 - 1.0).abs() > 1e-12 {
        return Err(Error::Inadmissible(format!(
            "determinant polynomial must have constant term 1, got {l0}"
        )));
    }
    Ok(())
}

/// Recover `(a_0, b_0)` from a degree-`≤2` determinant polynomial:
/// `a_0 = √(1 − l_2)/2`, `b_0 = −l_1/2`.
pub fn recover_rank1(l: &DetPolynomial) -> Result<JacobiCoeffs> {
    if l.degree() > 2 {
        return Err(Error::Inadmissible(format!(
            "rank-one recovery needs degree ≤ 2, got {}",
            l.degree()
        )));
    }
    let c = l.real_coeffs()?;
    let get = |k: usize| c.get(k).copied().unwrap_or(0.0);
    require_unit_constant(get(0))?;
    let l2 = get(2);
    if l2 >= 1.0 {
        return Err(Error::Inadmissible(format!(
            "rank-one recovery needs l_2 < 1, got {l2}"
        )));
    }
    JacobiCoeffs::new(vec![(1.0 - l2).sqrt() / 2.0], vec![-get(1) / 2.0])
}

/// Recover `(a_0, a_1, b_0, b_1)` from a degree-`≤4` determinant polynomial.
///
/// `a_1 = √(1−ℓ_4)/2`, `b_0 = (ℓ_3−ℓ_1)/(2(1−ℓ_4))`,
/// `b_1 = (ℓ_1ℓ_4−ℓ_3)/(2(1−ℓ_4))`, and `a_0` from the radicand
/// `(1−ℓ_2+ℓ_4)(1−ℓ_4)² + (ℓ_3−ℓ_1)(ℓ_1ℓ_4−ℓ_3)`, which must be strictly
/// positive (the admissibility inequality; boundary cases are rejected).
pub fn recover_rank2(l: &DetPolynomial) -> Result<JacobiCoeffs> {
    if l.degree() > 4 {
        return Err(Error::Inadmissible(format!(
            "rank-two recovery needs degree ≤ 4, got {}",
            l.degree()
        )));
    }
    let c = l.real_coeffs()?;
    let get = |k: usize| c.get(k).copied().unwrap_or(0.0);
    require_unit_constant(get(0))?;
    let (l1, l2, l3, l4) = (get(1), get(2), get(3), get(4));
    if l4 >= 1.0 {
        return Err(Error::Inadmissible(format!(
            "rank-two recovery needs ℓ_4 < 1, got {l4}"
        )));
    }
    let one_m_l4 = 1.0 - l4;
    let a1 = one_m_l4.sqrt() / 2.0;
    let b0 = (l3 - l1) / (2.0 * one_m_l4);
    let b1 = (l1 * l4 - l3) / (2.0 * one_m_l4);
    let radicand = (1.0 - l2 + l4) * one_m_l4 * one_m_l4 + (l3 - l1) * (l1 * l4 - l3);
    if radicand <= 0.0 {
        return Err(Error::Inadmissible(format!(
            "admissibility inequality fails: radicand {radicand} ≤ 0"
        )));
    }
    let a0 = radicand.sqrt() / (2.0 * one_m_l4);
    JacobiCoeffs::new(vec![a0, a1], vec![b0, b1])
}
