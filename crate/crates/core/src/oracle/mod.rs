//! Brute-force numerical engines, independent of every closed form.
//!
//! The closed formulas in the rest of the crate are validated against the
//! computations here: finite sections of the operators, a symmetric
//! tridiagonal eigensolver (Sturm-count bisection plus inverse iteration),
//! direct banded resolvent solves, adaptive Gauss–Kronrod quadrature with
//! the `λ = cos θ` substitution, and Lanczos recovery of recurrence
//! coefficients from discrete measures.
//!
//! Nothing in this module evaluates `ω(z)`, perturbation determinants, or
//! any other closed-form object; agreement between the two routes is the
//! content of the acceptance suites in [`crate::verify`].
//!
//! Heavy operations are data-parallel over eigenvalue indices; the
//! `GCHEB_THREADS` environment variable caps the number of worker threads.

mod lanczos;
mod quad;
mod tridiag;

pub use lanczos::stieltjes_coeffs;
pub use quad::{quad_integrate, quad_integrate_complex};
pub use tridiag::{
    dense_eigen_full, dense_resolvent_entry, dense_spectrum, eigenvalues_all, DenseSpectrum,
};

use crate::chebyshev::CouplingParams;
use crate::jost::JacobiCoeffs;
use crate::{Error, Result, C64};

/// Finite top-left section of a half-lattice Jacobi operator.
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    size: usize,
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TruncatedOperator {
    /// Section from explicit entries; `offdiag` must have length
    /// `size − 1` with positive entries.
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.len() < 2 || offdiag.len() != diag.len() - 1 {
            return Err(Error::Domain(format!(
                "need size >= 2 with offdiag length size-1, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if offdiag.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Domain("off-diagonal entries must be positive".into()));
        }
        Ok(TruncatedOperator {
            size: diag.len(),
            diag,
            offdiag,
        })
    }

    /// Section of `H_{a,b}`: corner entries `b/2` and `a/2`, free elsewhere.
    pub fn from_coupling(params: CouplingParams, size: usize) -> Result<Self> {
        let coeffs = JacobiCoeffs::from_coupling(params);
        TruncatedOperator::from_coeffs(&coeffs, size)
    }

    /// Section of a general finite-support operator.
    pub fn from_coeffs(coeffs: &JacobiCoeffs, size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::Domain(format!("need size >= 2, got {size}")));
        }
        let diag = (0..size).map(|n| coeffs.b(n)).collect();
        let offdiag = (0..size - 1).map(|n| coeffs.a(n)).collect();
        TruncatedOperator::new(diag, offdiag)
    }

    /// Matrix dimension.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Diagonal entries.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Off-diagonal entries.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `T v` for a real vector.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.size;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * v[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * v[i + 1];
            }
            out[i] = acc;
        }
        out
    }

    /// `T v` for a complex vector.
    pub fn apply_complex(&self, v: &[C64]) -> Vec<C64> {
        let n = self.size;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = self.diag[i] * v[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * v[i + 1];
            }
            out[i] = acc;
        }
        out
    }
}

/// Worker-thread cap: `GCHEB_THREADS` if set, else the machine parallelism.
pub(crate) fn thread_count() -> usize {
    if let Ok(s) = std::env::var("GCHEB_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Moment `∫λⁿ dρ_a` computed by quadrature of the density plus the atom
/// contribution; the brute-force counterpart of the generating-function
/// route.
pub fn numeric_moment(a: f64, n: usize) -> Result<f64> {
    let measure = crate::spectral::SpectralMeasureRecord::new(a)?;
    let ac = quad_integrate(
        |lam| lam.powi(n as i32) * measure.density(lam).unwrap_or(0.0),
        1e-11,
    )?;
    let atoms: f64 = measure
        .atoms()
        .iter()
        .map(|&(loc, w)| w * loc.powi(n as i32))
        .sum();
    Ok(ac + atoms)
}

/// `e^{−iTt} f` from a precomputed eigendecomposition (`vecs` column-major
/// as returned by [`dense_eigen_full`]).
pub fn propagate(eigs: &[f64], vecs: &[f64], f: &[C64], t: f64) -> Vec<C64> {
    let n = eigs.len();
    assert_eq!(vecs.len(), n * n);
    assert_eq!(f.len(), n);
    // c = V^T f
    let mut coeffs = vec![C64::new(0.0, 0.0); n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let col = &vecs[k * n..(k + 1) * n];
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            acc += col[i] * f[i];
        }
        *c = acc;
    }
    // phases
    for (k, c) in coeffs.iter_mut().enumerate() {
        let phase = -eigs[k] * t;
        *c *= C64::new(phase.cos(), phase.sin());
    }
    // x = V c
    let mut out = vec![C64::new(0.0, 0.0); n];
    for k in 0..n {
        let col = &vecs[k * n..(k + 1) * n];
        let c = coeffs[k];
        for i in 0..n {
            out[i] += col[i] * c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn truncation_patterns() {
        let t = TruncatedOperator::from_coupling(
            CouplingParams::rank_two(1.0).unwrap(),
            3,
        )
        .unwrap();
        assert_eq!(t.diag(), &[0.0, 0.0, 0.0]);
        assert_eq!(t.offdiag(), &[0.5, 0.5]);
        let t = TruncatedOperator::from_coupling(
            CouplingParams::rank_two(2.0).unwrap(),
            2,
        )
        .unwrap();
        assert_eq!(t.offdiag(), &[1.0]);
        let coeffs =
            crate::jost::JacobiCoeffs::new(vec![0.3, 0.7], vec![-0.2, 0.4]).unwrap();
        let t = TruncatedOperator::from_coeffs(&coeffs, 5).unwrap();
        assert_eq!(t.diag(), &[-0.2, 0.4, 0.0, 0.0, 0.0]);
        assert_eq!(t.offdiag(), &[0.3, 0.7, 0.5, 0.5]);
        assert!(TruncatedOperator::from_coeffs(&coeffs, 1).is_err());
    }

    #[test]
    fn numeric_moments_match_series() {
        for a in [0.5, 1.0, 2.0] {
            for n in [0usize, 1, 2, 4, 7] {
                let numeric = numeric_moment(a, n).unwrap();
                let closed = crate::spectral::moment(a, n);
                assert_relative_eq!(numeric, closed, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn propagation_preserves_norm() {
        let t = TruncatedOperator::from_coupling(
            CouplingParams::rank_two(1.4).unwrap(),
            64,
        )
        .unwrap();
        let (eigs, vecs) = dense_eigen_full(&t).unwrap();
        let mut f = vec![C64::new(0.0, 0.0); 64];
        f[0] = C64::new(1.0, 0.0);
        let out = propagate(&eigs, &vecs, &f, 7.5);
        let norm: f64 = out.iter().map(|x| x.norm_sqr()).sum();
        assert_relative_eq!(norm, 1.0, epsilon = 1e-10);
        // t = 0 is the identity.
        let id = propagate(&eigs, &vecs, &f, 0.0);
        assert!((id[0] - 1.0).norm() < 1e-10);
    }
}
