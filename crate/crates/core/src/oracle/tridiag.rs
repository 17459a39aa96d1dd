//! Symmetric tridiagonal eigensolver and banded resolvent solves.
//!
//! Eigenvalues by Sturm-count bisection (each eigenvalue refined to machine
//! precision, so near-degenerate pairs in the clustered band interior stay
//! separated), eigenvectors by inverse iteration with a partial-pivot
//! banded LU.  Everything is O(n) per eigenpair and data-parallel over
//! eigenvalue indices.

use super::TruncatedOperator;
use crate::{Error, Result, C64};
use rand::{Rng, SeedableRng};

/// Eigenvalues plus the first component of each normalized eigenvector:
/// the discrete spectral measure of `e_0` (weights are the squares).
#[derive(Debug, Clone)]
pub struct DenseSpectrum {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// `v_k(0)` for the normalized eigenvector of `eigenvalues[k]`.
    pub first_components: Vec<f64>,
}

// Number of eigenvalues strictly below x, by the Sturm sequence of the
// shifted LDL^T recurrence.
fn sturm_count(diag: &[f64], off2: &[f64], x: f64) -> usize {
    let mut count = 0usize;
    let mut d = 1.0f64;
    for i in 0..diag.len() {
        let sub = if i > 0 { off2[i - 1] / d } else { 0.0 };
        d = diag[i] - x - sub;
        // A vanishing pivot means x is an eigenvalue of a leading section;
        // it must count as a sign change or symmetric spectra (where the
        // first bisection midpoint is exactly such a point) miscount.
        if d.abs() < 1e-300 {
            d = -1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(t: &TruncatedOperator) -> (f64, f64) {
    let n = t.size();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += t.offdiag()[i - 1].abs();
        }
        if i + 1 < n {
            r += t.offdiag()[i].abs();
        }
        lo = lo.min(t.diag()[i] - r);
        hi = hi.max(t.diag()[i] + r);
    }
    (lo - 1e-10, hi + 1e-10)
}

fn bisect_one(diag: &[f64], off2: &[f64], k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    let scale = lo.abs().max(hi.abs()).max(1e-30);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 4.0 * f64::EPSILON * scale || mid == lo || mid == hi {
            return Ok(mid);
        }
        if sturm_count(diag, off2, mid) >= k + 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::Convergence(format!(
        "bisection failed to isolate eigenvalue index {k}"
    )))
}

/// All eigenvalues, sorted ascending, each to machine precision.
pub fn eigenvalues_all(t: &TruncatedOperator) -> Result<Vec<f64>> {
    let n = t.size();
    let off2: Vec<f64> = t.offdiag().iter().map(|&x| x * x).collect();
    let (lo, hi) = gershgorin(t);
    let workers = super::thread_count().min(n).max(1);
    let chunk = n.div_ceil(workers);
    let mut out = vec![0.0; n];
    let mut first_err: Option<Error> = None;
    std::thread::scope(|s| {
        let handles: Vec<_> = out
            .chunks_mut(chunk)
            .enumerate()
            .map(|(c, slot)| {
                let diag = t.diag();
                let off2 = &off2;
                s.spawn(move || -> Result<()> {
                    for (j, v) in slot.iter_mut().enumerate() {
                        *v = bisect_one(diag, off2, c * chunk + j, lo, hi)?;
                    }
                    Ok(())
                })
            })
            .collect();
        for h in handles {
            if let Err(e) = h.join().expect("eigensolver worker panicked") {
                first_err.get_or_insert(e);
            }
        }
    });
    if let Some(e) = first_err {
        return Err(e);
    }
    Ok(out)
}

// Solve (T - shift) x = b by banded LU with partial pivoting; b is
// consumed.  A vanishing final pivot (exactly singular shift) is replaced
// by a tiny value, which is the standard inverse-iteration treatment.
fn solve_real_shifted(t: &TruncatedOperator, shift: f64, mut b: Vec<f64>) -> Vec<f64> {
    let n = t.size();
    let dl: Vec<f64> = t.offdiag().to_vec();
    let mut d: Vec<f64> = t.diag().iter().map(|&x| x - shift).collect();
    let mut du: Vec<f64> = t.offdiag().to_vec();
    let mut du2 = vec![0.0f64; n.saturating_sub(2)];
    let tiny = 1e-280;
    for i in 0..n - 1 {
        if d[i].abs() >= dl[i].abs() {
            if d[i].abs() < tiny {
                d[i] = tiny;
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            let bi = b[i];
            b[i + 1] -= fact * bi;
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            b.swap(i, i + 1);
            b[i + 1] -= fact * b[i];
        }
    }
    if d[n - 1].abs() < tiny {
        d[n - 1] = tiny;
    }
    let mut x = b;
    x[n - 1] /= d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    x
}

// Two rounds of inverse iteration from a seeded random start; normalized,
// sign fixed so the largest-magnitude component is positive.
fn inverse_iteration(t: &TruncatedOperator, lambda: f64, seed: u64) -> Vec<f64> {
    let n = t.size();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for _ in 0..2 {
        let x = solve_real_shifted(t, lambda, v);
        let norm = x.iter().map(|y| y * y).sum::<f64>().sqrt();
        v = x.into_iter().map(|y| y / norm).collect();
    }
    let mut imax = 0;
    for i in 1..n {
        if v[i].abs() > v[imax].abs() {
            imax = i;
        }
    }
    if v[imax] < 0.0 {
        for y in v.iter_mut() {
            *y = -*y;
        }
    }
    v
}

/// Full spectrum plus first eigenvector components (discrete measure of `e_0`).
pub fn dense_spectrum(t: &TruncatedOperator) -> Result<DenseSpectrum> {
    let eigenvalues = eigenvalues_all(t)?;
    let n = t.size();
    let workers = super::thread_count().min(n).max(1);
    let chunk = n.div_ceil(workers);
    let mut first_components = vec![0.0; n];
    std::thread::scope(|s| {
        for (c, slot) in first_components.chunks_mut(chunk).enumerate() {
            let eigs = &eigenvalues;
            s.spawn(move || {
                for (j, out) in slot.iter_mut().enumerate() {
                    let k = c * chunk + j;
                    let v = inverse_iteration(t, eigs[k], 0x517e + k as u64);
                    *out = v[0];
                }
            });
        }
    });
    Ok(DenseSpectrum {
        eigenvalues,
        first_components,
    })
}

/// Full eigendecomposition: sorted eigenvalues and the orthonormal
/// eigenvector matrix, column-major (`vecs[k*n..][..n]` is eigenvector `k`).
/// Memory is `O(n²)`; intended for sizes up to a few thousand.
pub fn dense_eigen_full(t: &TruncatedOperator) -> Result<(Vec<f64>, Vec<f64>)> {
    let eigenvalues = eigenvalues_all(t)?;
    let n = t.size();
    let workers = super::thread_count().min(n).max(1);
    let chunk = n.div_ceil(workers);
    let mut vecs = vec![0.0; n * n];
    std::thread::scope(|s| {
        for (c, slab) in vecs.chunks_mut(chunk * n).enumerate() {
            let eigs = &eigenvalues;
            s.spawn(move || {
                for (j, col) in slab.chunks_mut(n).enumerate() {
                    let k = c * chunk + j;
                    let v = inverse_iteration(t, eigs[k], 0x9e37 + k as u64);
                    col.copy_from_slice(&v);
                }
            });
        }
    });
    Ok((eigenvalues, vecs))
}

/// Entry `((T − z)⁻¹ e_m)_n` by a direct banded complex solve.
pub fn dense_resolvent_entry(
    t: &TruncatedOperator,
    n_idx: usize,
    m_idx: usize,
    z: C64,
) -> Result<C64> {
    let n = t.size();
    if n_idx >= n || m_idx >= n {
        return Err(Error::Domain(format!(
            "indices ({n_idx},{m_idx}) outside truncation {n}"
        )));
    }
    let dl: Vec<C64> = t.offdiag().iter().map(|&x| C64::new(x, 0.0)).collect();
    let mut d: Vec<C64> = t.diag().iter().map(|&x| C64::new(x, 0.0) - z).collect();
    let mut du: Vec<C64> = dl.clone();
    let mut du2 = vec![C64::new(0.0, 0.0); n.saturating_sub(2)];
    let mut b = vec![C64::new(0.0, 0.0); n];
    b[m_idx] = C64::new(1.0, 0.0);
    let tiny = 1e-280;
    for i in 0..n - 1 {
        if d[i].norm_sqr() >= dl[i].norm_sqr() {
            if d[i].norm() < tiny {
                return Err(Error::NearSingular(format!(
                    "shifted tridiagonal solve hit a vanishing pivot at z = {z}"
                )));
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            let bi = b[i];
            b[i + 1] -= fact * bi;
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = temp;
            b.swap(i, i + 1);
            let bi = b[i];
            b[i + 1] -= fact * bi;
        }
    }
    if d[n - 1].norm() < tiny {
        return Err(Error::NearSingular(format!(
            "shifted tridiagonal solve is singular at z = {z}"
        )));
    }
    let mut x = b;
    x[n - 1] = x[n - 1] / d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    }
    Ok(x[n_idx])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::CouplingParams;
    use approx::assert_relative_eq;

    fn coupling(a: f64, size: usize) -> TruncatedOperator {
        TruncatedOperator::from_coupling(CouplingParams::rank_two(a).unwrap(), size).unwrap()
    }

    #[test]
    fn two_by_two_spectrum() {
        // a = 2: offdiagonal entry 1, eigenvalues ±1.
        let t = coupling(2.0, 2);
        let s = dense_spectrum(&t).unwrap();
        assert_relative_eq!(s.eigenvalues[0], -1.0, epsilon = 1e-14);
        assert_relative_eq!(s.eigenvalues[1], 1.0, epsilon = 1e-14);
        let mass: f64 = s.first_components.iter().map(|x| x * x).sum();
        assert_relative_eq!(mass, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn free_section_has_cosine_spectrum() {
        // Free NxN section has eigenvalues cos(k pi/(N+1)).
        let n = 64;
        let t = coupling(1.0, n);
        let eigs = eigenvalues_all(&t).unwrap();
        for (j, &e) in eigs.iter().enumerate() {
            let k = n - j;
            let expect = (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_relative_eq!(e, expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn outliers_at_large_truncation() {
        let t = coupling(2.0, 1024);
        let eigs = eigenvalues_all(&t).unwrap();
        let expect = 2.0 / 3f64.sqrt();
        assert_relative_eq!(eigs[0], -expect, epsilon = 1e-10);
        assert_relative_eq!(eigs[1023], expect, epsilon = 1e-10);
        assert!(eigs[1].abs() < 1.0);
        assert!(eigs[1022].abs() < 1.0);
    }

    #[test]
    fn eigenpairs_have_small_residual() {
        let t = coupling(1.6, 200);
        let (eigs, vecs) = dense_eigen_full(&t).unwrap();
        let n = 200;
        for k in [0usize, 1, 57, 120, 199] {
            let v = &vecs[k * n..(k + 1) * n];
            let tv = t.apply(v);
            let mut res = 0.0f64;
            for i in 0..n {
                res += (tv[i] - eigs[k] * v[i]).powi(2);
            }
            assert!(res.sqrt() < 1e-11, "k={k} residual {}", res.sqrt());
        }
        // Orthogonality of a clustered pair.
        let dot: f64 = (0..n).map(|i| vecs[57 * n + i] * vecs[58 * n + i]).sum();
        assert!(dot.abs() < 1e-8, "neighbor dot {dot}");
    }

    #[test]
    fn resolvent_entry_against_closed_form() {
        let t = coupling(1.0, 2048);
        let r = dense_resolvent_entry(&t, 0, 0, C64::new(1.25, 0.0)).unwrap();
        assert_relative_eq!(r.re, -1.0, epsilon = 1e-9);
        assert!(r.im.abs() < 1e-12);
        let t2 = coupling(2.0, 2048);
        let r2 = dense_resolvent_entry(&t2, 0, 0, C64::new(1.25, 0.0)).unwrap();
        assert_relative_eq!(r2.re, -4.0, epsilon = 1e-8);
        // Symmetry.
        let z = C64::new(0.4, 0.9);
        let x = dense_resolvent_entry(&t2, 5, 2, z).unwrap();
        let y = dense_resolvent_entry(&t2, 2, 5, z).unwrap();
        assert!((x - y).norm() < 1e-12);
    }

    #[test]
    fn resolvent_solve_is_exact_for_small_sections() {
        // Verify (T - z) x = e_m directly on a small random-ish section.
        let t = TruncatedOperator::new(
            vec![0.3, -0.2, 0.5, 0.0, -0.4],
            vec![0.6, 0.2, 0.9, 0.4],
        )
        .unwrap();
        let z = C64::new(0.13, 0.57);
        for m in 0..5usize {
            let col: Vec<C64> = (0..5)
                .map(|i| dense_resolvent_entry(&t, i, m, z).unwrap())
                .collect();
            let tv = t.apply_complex(&col);
            for i in 0..5 {
                let lhs = tv[i] - z * col[i];
                let expect = if i == m { 1.0 } else { 0.0 };
                assert!((lhs - expect).norm() < 1e-13);
            }
        }
    }
}
