//! Lanczos recovery of recurrence coefficients from a discrete measure.
//!
//! Given nodes `λ_k` and weights `w_k` (for instance the output of
//! [`super::dense_spectrum`]), runs the Lanczos iteration on the diagonal
//! matrix `diag(λ)` started from `v_0 = (√w_k)_k`.  The produced
//! tridiagonal is exactly the Jacobi matrix of the measure, so the
//! iteration is the Stieltjes procedure in disguise.  Full
//! reorthogonalization is used; at the depths of interest (≤ 40) the cost
//! is negligible and it removes the classical loss-of-orthogonality
//! instability.

use crate::{Error, Result};

/// Recurrence coefficients `(diag b_0.., offdiag a_0..)` of the orthonormal
/// polynomials of the discrete measure `Σ w_k δ(λ_k)`.
///
/// Returns `depth` diagonal entries and `depth − 1` off-diagonal entries.
pub fn stieltjes_coeffs(
    nodes: &[f64],
    weights: &[f64],
    depth: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = nodes.len();
    if n != weights.len() || n == 0 {
        return Err(Error::Domain(format!(
            "need matching nonempty nodes/weights, got {n} and {}",
            weights.len()
        )));
    }
    if depth == 0 || depth > n {
        return Err(Error::Domain(format!(
            "depth must be in 1..={n}, got {depth}"
        )));
    }
    if weights.iter().any(|&w| w < 0.0) {
        return Err(Error::Domain("weights must be nonnegative".into()));
    }
    let mass: f64 = weights.iter().sum();
    if !(mass > 0.0) {
        return Err(Error::Domain("total mass must be positive".into()));
    }

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(depth);
    let v0: Vec<f64> = weights.iter().map(|&w| (w / mass).sqrt()).collect();
    basis.push(v0);
    let mut alphas = Vec::with_capacity(depth);
    let mut betas = Vec::with_capacity(depth.saturating_sub(1));

    for j in 0..depth {
        let v = &basis[j];
        // u = diag(lambda) v
        let mut u: Vec<f64> = v.iter().zip(nodes.iter()).map(|(&x, &l)| l * x).collect();
        let alpha: f64 = u.iter().zip(v.iter()).map(|(&a, &b)| a * b).sum();
        alphas.push(alpha);
        if j + 1 == depth {
            break;
        }
        for q in basis.iter() {
            let dot: f64 = u.iter().zip(q.iter()).map(|(&a, &b)| a * b).sum();
            for (ui, &qi) in u.iter_mut().zip(q.iter()) {
                *ui -= dot * qi;
            }
        }
        // Second reorthogonalization pass for safety.
        for q in basis.iter() {
            let dot: f64 = u.iter().zip(q.iter()).map(|(&a, &b)| a * b).sum();
            for (ui, &qi) in u.iter_mut().zip(q.iter()) {
                *ui -= dot * qi;
            }
        }
        let beta: f64 = u.iter().map(|&x| x * x).sum::<f64>().sqrt();
        if beta < 1e-14 {
            return Err(Error::SingularMoments(format!(
                "measure supports fewer than {} orthogonal polynomials",
                j + 2
            )));
        }
        betas.push(beta);
        for x in u.iter_mut() {
            *x /= beta;
        }
        basis.push(u);
    }
    Ok((alphas, betas))
}
