//! Cross-validation suites pitting every closed form against the
//! brute-force oracles.
//!
//! Each suite returns a [`SuiteReport`] listing individual checks with the
//! observed worst deviation and the bound it is held to.  The bounds are
//! fixed here, not configurable: loosening them would defeat the purpose.
//! The `truncation` argument scales only the oracle matrix sizes (default
//! 4096 from the CLI).
//!
//! One check is expected to fail and is kept anyway: the band-edge limit
//! of the scattering matrix at `a = √2`.  At `λ = 1 − 1e−6` the exact
//! value `S = −exp(2i·arccos λ)` sits at distance `2√(2·1e−6) ≈ 2.8e−3`
//! from `−1`, which no correct implementation can bring under the 1e−3
//! bound used for the other couplings; the suite reports the honest number.

use crate::branch::EnergyPoint;
use crate::chebyshev::{self, CouplingParams};
use crate::jost::{self, JacobiCoeffs};
use crate::oracle::{self, TruncatedOperator};
use crate::pointres;
use crate::scattering::{self, WaveSide};
use crate::spectral;
use crate::{Error, Result, C64, SQRT2};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

/// One named check with its observed deviation and bound.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn bound(label: impl Into<String>, observed: f64, tol: f64) -> Check {
        Check {
            label: label.into(),
            passed: observed.is_finite() && observed <= tol,
            detail: format!("observed {observed:.3e}, bound {tol:.1e}"),
        }
    }

    fn window(label: impl Into<String>, observed: f64, lo: f64, hi: f64) -> Check {
        Check {
            label: label.into(),
            passed: observed.is_finite() && observed >= lo && observed <= hi,
            detail: format!("observed {observed:.6}, window [{lo}, {hi}]"),
        }
    }

    fn flag(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Multi-line human-readable rendering.
    pub fn render(&self) -> String {
        let mut s = format!(
            "suite {}: {}\n",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for c in &self.checks {
            s.push_str(&format!(
                "  [{}] {} ({})\n",
                if c.passed { "ok" } else { "FAIL" },
                c.label,
                c.detail
            ));
        }
        s
    }
}

/// Names accepted by [`run_suite`], in canonical order.
pub const SUITE_NAMES: [&str; 12] = [
    "poly",
    "resolvent",
    "measure",
    "orthogonality",
    "scattering",
    "ssf",
    "genfunc",
    "asymptotics",
    "jost",
    "waveop",
    "hankel",
    "resonances",
];

/// Run one suite by name.
pub fn run_suite(name: &str, truncation: usize) -> Result<SuiteReport> {
    match name {
        "poly" => suite_poly(),
        "resolvent" => suite_resolvent(truncation),
        "measure" => suite_measure(truncation),
        "orthogonality" => suite_orthogonality(),
        "scattering" => suite_scattering(),
        "ssf" => suite_ssf(),
        "genfunc" => suite_genfunc(),
        "asymptotics" => suite_asymptotics(),
        "jost" => suite_jost(),
        "waveop" => suite_waveop(truncation),
        "hankel" => suite_hankel(),
        "resonances" => suite_resonances(),
        other => Err(Error::Domain(format!(
            "unknown suite '{other}'; expected one of {SUITE_NAMES:?}"
        ))),
    }
}

/// Run every suite in canonical order.
pub fn run_all(truncation: usize) -> Result<Vec<SuiteReport>> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, truncation))
        .collect()
}

fn dist_to_band(z: C64) -> f64 {
    if z.re.abs() <= 1.0 {
        z.im.abs()
    } else {
        (z.re.abs() - 1.0).hypot(z.im)
    }
}

fn draw_off_band(rng: &mut ChaCha8Rng) -> C64 {
    loop {
        let z = C64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-1.5..1.5));
        if dist_to_band(z) >= 0.05 {
            return z;
        }
    }
}

/// Polynomial evaluation: recurrence vs closed form, plus the band-edge
/// closed values.
pub fn suite_poly() -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x01);
    let mut worst_rel = 0.0f64;
    for _ in 0..1000 {
        let a = rng.gen_range(0.05..=4.0);
        let n = rng.gen_range(0..=60usize);
        let z = draw_off_band(&mut rng);
        let params = CouplingParams::rank_two(a)?;
        let rec = chebyshev::eval_recurrence(params, z, n).values[n];
        let closed = chebyshev::eval_closed_form(params, &EnergyPoint::physical(z), n)?;
        worst_rel = worst_rel.max((rec - closed).norm() / closed.norm());
    }
    let mut worst_edge = 0.0f64;
    for a in [0.5, 1.0, SQRT2, 2.0] {
        let params = CouplingParams::rank_two(a)?;
        for sign in [-1i8, 1] {
            for n in 0..=100usize {
                let rec = chebyshev::eval_recurrence_real(params, sign as f64, n);
                let edge = chebyshev::eval_edge(a, sign, n);
                worst_edge = worst_edge.max((rec - edge).abs() / edge.abs().max(1.0));
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(SuiteReport {
        name: "poly",
        checks: vec![
            Check::bound("recurrence vs closed form, 1000 random points", worst_rel, 1e-9),
            Check::bound("band-edge closed values, n <= 100", worst_edge, 1e-12),
            Check::bound("runtime seconds", elapsed, 5.0),
        ],
    })
}

/// Closed resolvent entries vs direct banded solves on a large section.
pub fn suite_resolvent(truncation: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x02);
    let mut worst = 0.0f64;
    for a in [0.7, 1.0, SQRT2, 2.0] {
        let t = TruncatedOperator::from_coupling(CouplingParams::rank_two(a)?, truncation)?;
        for _ in 0..20 {
            let z = draw_off_band(&mut rng);
            let p = EnergyPoint::physical(z);
            for n in 0..=8usize {
                for m in 0..=8usize {
                    let closed = pointres::resolvent_entry(a, n, m, &p)?;
                    let dense = oracle::dense_resolvent_entry(&t, n, m, z)?;
                    worst = worst.max((closed - dense).norm());
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Ok(SuiteReport {
        name: "resolvent",
        checks: vec![
            Check::bound(
                format!("closed vs dense solve at truncation {truncation}"),
                worst,
                1e-8,
            ),
            Check::bound("runtime seconds", elapsed, 60.0),
        ],
    })
}

/// Spectral measure: normalization and the outlier eigenpairs against the
/// large-section eigensolver.
pub fn suite_measure(truncation: usize) -> Result<SuiteReport> {
    let mut worst_mass = 0.0f64;
    for a in [0.5, 0.9, 1.0, 1.3, SQRT2, 2.0, 3.0] {
        worst_mass = worst_mass.max((oracle::numeric_moment(a, 0)? - 1.0).abs());
    }
    let size = 2 * truncation;
    let a = 2.0;
    let t = TruncatedOperator::from_coupling(CouplingParams::rank_two(a)?, size)?;
    let s = oracle::dense_spectrum(&t)?;
    let mut outliers: Vec<(f64, f64)> = s
        .eigenvalues
        .iter()
        .zip(s.first_components.iter())
        .filter(|(l, _)| l.abs() > 1.0 + 1e-6)
        .map(|(&l, &v)| (l, v * v))
        .collect();
    outliers.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let expect = a * a / (2.0 * (a * a - 1.0f64).sqrt());
    let expect_w = spectral::atom_weight(a)?;
    let (eig_dev, weight_dev) = if outliers.len() == 2 {
        (
            (outliers[0].0 + expect).abs().max((outliers[1].0 - expect).abs()),
            (outliers[0].1 - expect_w).abs().max((outliers[1].1 - expect_w).abs()),
        )
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    Ok(SuiteReport {
        name: "measure",
        checks: vec![
            Check::bound("total mass density + atoms", worst_mass, 1e-9),
            Check::flag(
                "exactly two outlier eigenvalues at a = 2",
                outliers.len() == 2,
                format!("found {}", outliers.len()),
            ),
            Check::bound(
                format!("outlier eigenvalues vs ±a²/(2√(a²−1)), size {size}"),
                eig_dev,
                1e-8,
            ),
            Check::bound("outlier weights vs (a²−2)/(2(a²−1))", weight_dev, 1e-6),
        ],
    })
}

// Atom contribution to the orthogonality relation for a > sqrt(2).
fn atom_term(a: f64, n: usize, m: usize) -> Result<f64> {
    if a <= SQRT2 {
        return Ok(0.0);
    }
    let params = CouplingParams::rank_two(a)?;
    let w = spectral::atom_weight(a)?;
    Ok(spectral::eigenvalues(a)
        .iter()
        .map(|&lam| {
            w * chebyshev::eval_recurrence_real(params, lam, n)
                * chebyshev::eval_recurrence_real(params, lam, m)
        })
        .sum())
}

// Atom pole terms in the resolvent-orthogonality identity.
fn atom_pole_term(a: f64, n: usize, m: usize, z: C64) -> Result<C64> {
    if a <= SQRT2 {
        return Ok(C64::new(0.0, 0.0));
    }
    let params = CouplingParams::rank_two(a)?;
    let w = spectral::atom_weight(a)?;
    let mut acc = C64::new(0.0, 0.0);
    for &lam in &spectral::eigenvalues(a) {
        acc += w * chebyshev::eval_recurrence_real(params, lam, n)
            * chebyshev::eval_recurrence_real(params, lam, m)
            / (lam - z);
    }
    Ok(acc)
}

/// Orthogonality of the generalized Chebyshev polynomials and the weighted
/// Cauchy-integral identities.
pub fn suite_orthogonality() -> Result<SuiteReport> {
    let mut worst_orth = 0.0f64;
    for a in [0.5, 1.0, SQRT2, 2.0] {
        for n in 0..=12usize {
            for m in n..=12usize {
                let ac = scattering::ac_orthogonality_entry(a, n, m)?;
                let delta = if n == m { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((ac + atom_term(a, n, m)? - delta).abs());
            }
        }
    }
    let z = C64::new(2.0, 0.5);
    let p = EnergyPoint::physical(z);
    // Second-kind case: (2/pi) int U_n U_m sqrt(1-l^2)/(l-z) dl = r_{n,m}.
    let params1 = CouplingParams::rank_two(1.0)?;
    let mut worst_u = 0.0f64;
    for n in 0..=6usize {
        for m in n..=6usize {
            let integral = oracle::quad_integrate_complex(
                |lam| {
                    C64::new(
                        chebyshev::eval_recurrence_real(params1, lam, n)
                            * chebyshev::eval_recurrence_real(params1, lam, m)
                            * (1.0 - lam * lam).sqrt(),
                        0.0,
                    ) / (lam - z)
                },
                1e-9,
            )? * (2.0 / PI);
            let closed = pointres::free_resolvent_entry(n, m, &p)?;
            worst_u = worst_u.max((integral - closed).norm());
        }
    }
    // First-kind case (a = sqrt 2): (1/pi) int Ch_n Ch_m /((l-z) sqrt(1-l^2))
    // equals the resolvent entry of H_{sqrt 2}.
    let params2 = CouplingParams::rank_two(SQRT2)?;
    let mut worst_t = 0.0f64;
    for n in 0..=6usize {
        for m in n..=6usize {
            let integral = oracle::quad_integrate_complex(
                |lam| {
                    C64::new(
                        chebyshev::eval_recurrence_real(params2, lam, n)
                            * chebyshev::eval_recurrence_real(params2, lam, m)
                            / (1.0 - lam * lam).sqrt(),
                        0.0,
                    ) / (lam - z)
                },
                1e-9,
            )? / PI;
            let closed = pointres::resolvent_entry(SQRT2, n, m, &p)?;
            worst_t = worst_t.max((integral - closed).norm());
        }
    }
    // General coupling with atoms: weighted Cauchy integral equals the
    // resolvent entry minus the atom pole terms.
    let a = 2.0;
    let params = CouplingParams::rank_two(a)?;
    let mut worst_g = 0.0f64;
    for n in 0..=6usize {
        for m in n..=6usize {
            let integral = oracle::quad_integrate_complex(
                |lam| {
                    let denom = a.powi(4) - 4.0 * (a * a - 1.0) * lam * lam;
                    C64::new(
                        chebyshev::eval_recurrence_real(params, lam, n)
                            * chebyshev::eval_recurrence_real(params, lam, m)
                            * (1.0 - lam * lam).sqrt()
                            / denom,
                        0.0,
                    ) / (lam - z)
                },
                1e-9,
            )? * (2.0 * a * a / PI);
            let closed = pointres::resolvent_entry(a, n, m, &p)? - atom_pole_term(a, n, m, z)?;
            worst_g = worst_g.max((integral - closed).norm());
        }
    }
    Ok(SuiteReport {
        name: "orthogonality",
        checks: vec![
            Check::bound("quadrature + atoms vs delta, n,m <= 12", worst_orth, 1e-8),
            Check::bound("second-kind Cauchy identity at z = 2+0.5i", worst_u, 1e-7),
            Check::bound("first-kind Cauchy identity at z = 2+0.5i", worst_t, 1e-7),
            Check::bound("weighted Cauchy identity with atoms, a = 2", worst_g, 1e-7),
        ],
    })
}

/// Scattering matrix: triple formula agreement, unitarity, symmetry, and
/// band-edge limits.
pub fn suite_scattering() -> Result<SuiteReport> {
    let a_grid = [0.3, 0.5, 0.8, 1.0, 1.1, SQRT2, 1.7, 2.0, 2.6, 3.5];
    let mut worst_triple = 0.0f64;
    let mut worst_unit = 0.0f64;
    let mut worst_sqrt2 = 0.0f64;
    for &a in &a_grid {
        for k in 0..100 {
            let lam = -0.99 + 0.02 * k as f64;
            let s1 = scattering::smatrix(a, lam)?;
            let s2 = scattering::smatrix_via_t(a, lam)?;
            let s3 = scattering::smatrix_via_sigma(a, lam)?;
            worst_triple = worst_triple.max((s1 - s2).norm().max((s1 - s3).norm()));
            worst_unit = worst_unit.max((s1.norm() - 1.0).abs());
        }
    }
    for k in 0..100 {
        let lam: f64 = -0.99 + 0.02 * k as f64;
        let root = (1.0 - lam * lam).sqrt();
        let closed = C64::new(root, -lam) / C64::new(root, lam);
        worst_sqrt2 = worst_sqrt2.max((scattering::smatrix(SQRT2, lam)? - closed).norm());
    }
    let mut worst_zero = 0.0f64;
    for &a in &a_grid {
        worst_zero = worst_zero.max((scattering::smatrix(a, 0.0)? - 1.0).norm());
    }
    let lam_edge = 1.0 - 1e-6;
    let mut worst_edge_generic = 0.0f64;
    for a in [0.9, 1.05] {
        for lam in [lam_edge, -lam_edge] {
            worst_edge_generic = worst_edge_generic.max((scattering::smatrix(a, lam)? - 1.0).norm());
        }
    }
    let mut edge_sqrt2 = 0.0f64;
    for lam in [lam_edge, -lam_edge] {
        edge_sqrt2 = edge_sqrt2.max((scattering::smatrix(SQRT2, lam)? + 1.0).norm());
    }
    Ok(SuiteReport {
        name: "scattering",
        checks: vec![
            Check::bound("triple formula agreement on 1000 grid points", worst_triple, 1e-12),
            Check::bound("unitarity |S| = 1", worst_unit, 1e-12),
            Check::bound("S(0) = 1", worst_zero, 1e-14),
            Check::bound("a = sqrt(2) closed quotient form", worst_sqrt2, 1e-12),
            Check::bound(
                "band-edge limit S -> 1 at lambda = ±(1−1e−6), a != sqrt(2)",
                worst_edge_generic,
                1e-3,
            ),
            // Expected to fail: the exact distance from −1 at this lambda is
            // 2·sqrt(2e−6) ≈ 2.8e−3 for every correct evaluation.
            Check::bound(
                "band-edge limit S -> −1 at lambda = ±(1−1e−6), a = sqrt(2)",
                edge_sqrt2,
                1e-3,
            ),
        ],
    })
}

/// Spectral shift function: argument tracking vs closed forms, plateaus,
/// and the Birman-Krein relation.
pub fn suite_ssf() -> Result<SuiteReport> {
    let mut worst_dual = 0.0f64;
    let lam_grid = [-0.9, -0.35, 0.2, 0.6, 0.95];
    for a in [0.5, 1.0, 1.2, SQRT2, 2.0, 3.0] {
        for &lam in &lam_grid {
            let tracked = scattering::ssf_arg_tracked(a, lam, 1e-10)?;
            let closed = scattering::ssf_closed(a, lam)?;
            worst_dual = worst_dual.max((tracked - closed).abs());
        }
    }
    // Plateaus outside the band for a = 2 (lambda_+ = 2/sqrt(3)).
    let mut worst_plateau = 0.0f64;
    for (lam, expect) in [(1.05, 1.0), (1.1, 1.0), (-1.05, -1.0), (1.3, 0.0), (-1.3, 0.0)] {
        let tracked = scattering::ssf_arg_tracked(2.0, lam, 1e-10)?;
        let closed = scattering::ssf_closed(2.0, lam)?;
        worst_plateau = worst_plateau
            .max((tracked - expect).abs())
            .max((closed - expect).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x06);
    let mut worst_bk = 0.0f64;
    for _ in 0..500 {
        let a = rng.gen_range(0.1..3.0);
        let lam = rng.gen_range(-0.999..0.999);
        let s = scattering::smatrix(a, lam)?;
        let xi = scattering::ssf_closed(a, lam)?;
        worst_bk = worst_bk.max((s - C64::new(0.0, -2.0 * PI * xi).exp()).norm());
    }
    Ok(SuiteReport {
        name: "ssf",
        checks: vec![
            Check::bound("argument tracking vs closed forms", worst_dual, 1e-8),
            Check::bound("plateau values for a = 2", worst_plateau, 1e-8),
            Check::bound("Birman-Krein S = exp(−2πiξ)", worst_bk, 1e-10),
        ],
    })
}

// Tr(H_a^k − H_1^k) on sections via the eigensolver; exact once the section
// is deep enough that the far boundary cannot feel the corner.
fn truncated_trace_diffs(a: f64, size: usize, k_max: usize) -> Result<Vec<f64>> {
    let ta = TruncatedOperator::from_coupling(CouplingParams::rank_two(a)?, size)?;
    let t1 = TruncatedOperator::from_coupling(CouplingParams::rank_two(1.0)?, size)?;
    let ea = oracle::eigenvalues_all(&ta)?;
    let e1 = oracle::eigenvalues_all(&t1)?;
    Ok((0..=k_max)
        .map(|k| {
            let pa: f64 = ea.iter().map(|l| l.powi(k as i32)).sum();
            let p1: f64 = e1.iter().map(|l| l.powi(k as i32)).sum();
            pa - p1
        })
        .collect())
}

/// Moment and trace generating functions vs quadrature moments and dense
/// truncated traces.
pub fn suite_genfunc() -> Result<SuiteReport> {
    let mut worst_mom = 0.0f64;
    let mut worst_odd = 0.0f64;
    for a in [0.5, 1.2, 2.0] {
        for n in 0..20usize {
            let closed = spectral::moment(a, n);
            let numeric = oracle::numeric_moment(a, n)?;
            worst_mom = worst_mom.max((closed - numeric).abs());
            if n % 2 == 1 {
                worst_odd = worst_odd.max(closed.abs());
            }
        }
    }
    let mut worst_tr = 0.0f64;
    for a in [0.5, 1.2, 2.0] {
        let closed = spectral::trace_coeffs(a, 9);
        let dense = truncated_trace_diffs(a, 64, 18)?;
        for k in 0..=9usize {
            worst_tr = worst_tr.max((closed[k] - dense[2 * k]).abs());
        }
        // Odd powers: traces of the difference vanish by symmetry.
        for k in 0..9 {
            worst_odd = worst_odd.max(dense[2 * k + 1].abs());
        }
    }
    Ok(SuiteReport {
        name: "genfunc",
        checks: vec![
            Check::bound("first 20 moment coefficients vs quadrature", worst_mom, 1e-9),
            Check::bound("first 10 trace coefficients vs dense traces", worst_tr, 1e-10),
            Check::bound("odd coefficients vanish", worst_odd, 1e-10),
        ],
    })
}

/// Large-order moment asymptotics in all three coupling regimes.
pub fn suite_asymptotics() -> Result<SuiteReport> {
    let r_half = spectral::moment_asymptotics_check(0.5, 400)?;
    let r_mid = spectral::moment_asymptotics_check(1.2, 400)?;
    let r_exp = spectral::moment_asymptotics_check(2.0, 200)?;
    Ok(SuiteReport {
        name: "asymptotics",
        checks: vec![
            Check::window("power-law ratio at a = 0.5, m = 400", r_half, 0.97, 1.03),
            Check::window("power-law ratio at a = 1.2, m = 400", r_mid, 0.97, 1.03),
            Check::bound(
                "successive-ratio limit at a = 2, m = 200",
                (r_exp - 1.0).abs(),
                1e-6,
            ),
        ],
    })
}

/// Determinant polynomial closed coefficients, inverse recovery
/// round-trips, and the degree/leading-coefficient law.
pub fn suite_jost() -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x09);
    let draw = |rng: &mut ChaCha8Rng, n: usize| -> JacobiCoeffs {
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.5)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        JacobiCoeffs::new(a, b).unwrap()
    };
    let mut worst_coef = 0.0f64;
    for _ in 0..50 {
        let c = draw(&mut rng, 1);
        let (a0, b0) = (c.a(0), c.b(0));
        let expect = [1.0, -2.0 * b0, 1.0 - 4.0 * a0 * a0];
        let poly = jost::det_polynomial(&c)?;
        for (k, &e) in expect.iter().enumerate() {
            worst_coef = worst_coef.max((poly.coeff(k) - e).norm() / (1.0 + e.abs()));
        }
    }
    for _ in 0..50 {
        let c = draw(&mut rng, 2);
        let (a0, a1, b0, b1) = (c.a(0), c.a(1), c.b(0), c.b(1));
        let (al0, al1) = (1.0 - 4.0 * a0 * a0, 1.0 - 4.0 * a1 * a1);
        let expect = [
            1.0,
            -2.0 * (b0 + b1),
            al1 + al0 + 4.0 * b0 * b1,
            -2.0 * (al1 * b0 + b1),
            al1,
        ];
        let poly = jost::det_polynomial(&c)?;
        for (k, &e) in expect.iter().enumerate() {
            worst_coef = worst_coef.max((poly.coeff(k) - e).norm() / (1.0 + e.abs()));
        }
    }
    let mut worst_rt = 0.0f64;
    for _ in 0..100 {
        let c = draw(&mut rng, 1);
        let back = jost::recover_rank1(&jost::det_polynomial(&c)?)?;
        worst_rt = worst_rt.max((back.a(0) - c.a(0)).abs().max((back.b(0) - c.b(0)).abs()));
    }
    for _ in 0..100 {
        let c = draw(&mut rng, 2);
        let back = jost::recover_rank2(&jost::det_polynomial(&c)?)?;
        for k in 0..2 {
            worst_rt = worst_rt.max((back.a(k) - c.a(k)).abs().max((back.b(k) - c.b(k)).abs()));
        }
    }
    let mut degree_ok = true;
    let mut worst_lead = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5usize);
        let c = draw(&mut rng, n);
        let poly = jost::det_polynomial(&c)?;
        degree_ok &= poly.degree() == 2 * n;
        let expect = 1.0 - 4.0 * c.a(n - 1) * c.a(n - 1);
        worst_lead = worst_lead.max((poly.coeff(2 * n) - expect).norm() / (1.0 + expect.abs()));
        worst_lead = worst_lead.max((poly.coeff(0) - 1.0).norm());
    }
    Ok(SuiteReport {
        name: "jost",
        checks: vec![
            Check::bound("closed determinant coefficients, N = 1 and 2", worst_coef, 1e-12),
            Check::bound("recovery round-trips, 100 draws each rank", worst_rt, 1e-12),
            Check::flag(
                "degree equals 2N for N <= 5",
                degree_ok,
                "degree checked on 100 draws",
            ),
            Check::bound("constant and leading coefficients", worst_lead, 1e-10),
        ],
    })
}

/// Finite-time propagation against the stationary wave operators, and the
/// isometry of the stationary transforms.
pub fn suite_waveop(truncation: usize) -> Result<SuiteReport> {
    let start = Instant::now();
    let f = [1.0f64];
    let devs = scattering::wave_operator_deviations(1.5, &[10.0, 50.0, 200.0], &f, truncation)?;
    let ordered = devs[2] < devs[1] && devs[1] < devs[0];
    let mut worst_iso = 0.0f64;
    for a in [0.7, 1.0, 1.2, SQRT2] {
        for side in [WaveSide::Plus, WaveSide::Minus] {
            worst_iso = worst_iso.max(scattering::sigma_isometry_error(a, side, &f, 8192)?);
        }
    }
    let free_dev = scattering::wave_operator_check(1.0, 40.0, &f, truncation.max(2048))?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(SuiteReport {
        name: "waveop",
        checks: vec![
            Check::flag(
                "deviation decreases with time",
                ordered,
                format!("dev(10) = {:.3e}, dev(50) = {:.3e}, dev(200) = {:.3e}", devs[0], devs[1], devs[2]),
            ),
            Check::bound("deviation at t = 200", devs[2], 5e-2),
            Check::bound("free coupling is the identity", free_dev, 1e-10),
            Check::bound("isometry of the stationary transforms, a <= sqrt(2)", worst_iso, 1e-8),
            Check::bound("runtime seconds", elapsed, 600.0),
        ],
    })
}

/// Hankel determinants: coefficient recovery, even-measure certificate,
/// and the constant-coefficient synthetic measure.
pub fn suite_hankel() -> Result<SuiteReport> {
    let mut worst_a0 = 0.0f64;
    for a in [0.8, 1.3, 2.5] {
        let moments: Vec<f64> = (0..=4usize)
            .map(|n| oracle::numeric_moment(a, n))
            .collect::<Result<_>>()?;
        let h = spectral::hankel_dets(&moments, 3)?;
        let a0 = spectral::offdiag_from_hankel(&h)[0];
        worst_a0 = worst_a0.max((a0 - a / 2.0).abs());
    }
    let mut worst_odd = 0.0f64;
    for a in [0.9, 2.0] {
        let measure = spectral::SpectralMeasureRecord::new(a)?;
        for n in [1usize, 3, 5] {
            let ac = oracle::quad_integrate(
                |lam| lam.powi(n as i32) * measure.density(lam).unwrap_or(0.0),
                1e-13,
            )?;
            let atoms: f64 = measure.atoms().iter().map(|&(l, w)| w * l.powi(n as i32)).sum();
            worst_odd = worst_odd.max((ac + atoms).abs());
        }
    }
    // Constant off-diagonal 1: all Hankel determinants equal 1.  The measure
    // comes from a small section, whose Gauss rule is exact for the needed
    // polynomial degrees.
    let t = TruncatedOperator::new(vec![0.0; 16], vec![1.0; 15])?;
    let s = oracle::dense_spectrum(&t)?;
    let moments: Vec<f64> = (0..=14usize)
        .map(|k| {
            s.eigenvalues
                .iter()
                .zip(s.first_components.iter())
                .map(|(&l, &v)| v * v * l.powi(k as i32))
                .sum()
        })
        .collect();
    let h = spectral::hankel_dets(&moments, 8)?;
    let worst_unit = h.iter().map(|&x| (x - 1.0).abs()).fold(0.0f64, f64::max);
    Ok(SuiteReport {
        name: "hankel",
        checks: vec![
            Check::bound("a_0 = a/2 from Hankel determinants", worst_a0, 1e-9),
            Check::bound("odd moments vanish", worst_odd, 1e-12),
            Check::bound("constant-coefficient measure has h_n = 1", worst_unit, 1e-8),
        ],
    })
}

/// Second-sheet determinant zeros against the closed resonance locations.
pub fn suite_resonances() -> Result<SuiteReport> {
    let mut worst_loc = 0.0f64;
    let mut worst_det = 0.0f64;
    for a in [0.5, 1.0 / SQRT2, 1.2, SQRT2] {
        let set = spectral::resonances(a)?;
        let expect: Vec<C64> = if a < 1.0 {
            let y = a * a / (2.0 * (1.0 - a * a).sqrt());
            vec![C64::new(0.0, -y), C64::new(0.0, y)]
        } else {
            let x = a * a / (2.0 * (a * a - 1.0f64).sqrt());
            vec![C64::new(-x, 0.0), C64::new(x, 0.0)]
        };
        if set.points.len() != expect.len() {
            worst_loc = f64::INFINITY;
            continue;
        }
        for e in &expect {
            let nearest = set
                .points
                .iter()
                .map(|p| (p - e).norm())
                .fold(f64::INFINITY, f64::min);
            worst_loc = worst_loc.max(nearest);
        }
        for &p in &set.points {
            worst_det = worst_det.max(spectral::second_sheet_det(a, p).norm());
        }
    }
    let mut spurious = 0usize;
    for a in [1.0, 2.0] {
        spurious += spectral::resonances(a)?.points.len();
    }
    Ok(SuiteReport {
        name: "resonances",
        checks: vec![
            Check::bound("zero locations vs closed forms", worst_loc, 1e-10),
            Check::bound("determinant modulus at the zeros", worst_det, 1e-10),
            Check::flag(
                "no resonances at a = 1 and a = 2",
                spurious == 0,
                format!("found {spurious}"),
            ),
        ],
    })
}
