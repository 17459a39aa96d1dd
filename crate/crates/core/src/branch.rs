//! Two-sheeted analytic kernel: the branch of `√(z²−1)` and the map `ω(z)`.
//!
//! The branch is fixed by `√(z²−1) > 0` for `z > 1`.  On the physical sheet
//! it is analytic off the cut `[−1,1]`, negative for `z < −1`, and its
//! boundary values on the cut are `±i√(1−λ²)` at `z = λ ± i0`.  The second
//! sheet carries the opposite sign.
//!
//! `ω(z) = z − √(z²−1) = (z + √(z²−1))⁻¹` maps the physical sheet into the
//! closed unit disc and the second sheet outside it; `ω(±1) = ±1`.  It is
//! the natural uniformizing variable: every closed form downstream is a
//! rational or polynomial expression in `ω`.
//!
//! Cut-side evaluation is done through an explicit [`CutSide`] flag rather
//! than signed-zero imaginary parts.

use crate::C64;

/// Which sheet of the Riemann surface of `√(z²−1)` a point lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sheet {
    /// `|ω(z)| ≤ 1`; the resolvent sheet.
    Physical,
    /// `|ω(z)| ≥ 1`; reached by continuation through the cut.
    Second,
}

impl Sheet {
    /// Sign carried by `√(z²−1)` relative to the physical branch.
    fn sign(self) -> f64 {
        match self {
            Sheet::Physical => 1.0,
            Sheet::Second => -1.0,
        }
    }

    /// The other sheet.
    pub fn flip(self) -> Sheet {
        match self {
            Sheet::Physical => Sheet::Second,
            Sheet::Second => Sheet::Physical,
        }
    }
}

/// Side of the cut `(−1,1)` for boundary values `z = λ ± i0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    /// `z = λ + i0`.
    Plus,
    /// `z = λ − i0`.
    Minus,
}

// Principal square root computed componentwise.  The polar-form sqrt loses
// a tiny imaginary part near the negative real axis to the representation
// error of pi/2, which wrecks complex-step differentiation; the half-angle
// identities below keep both components to full relative accuracy.
fn principal_sqrt(w: C64) -> C64 {
    if w.im == 0.0 && w.re >= 0.0 {
        return C64::new(w.re.sqrt(), w.im);
    }
    let t = ((w.norm() + w.re.abs()) * 0.5).sqrt();
    if w.re >= 0.0 {
        C64::new(t, w.im / (2.0 * t))
    } else {
        let b = if w.im >= 0.0 { t } else { -t };
        C64::new(w.im / (2.0 * b), b)
    }
}

/// `√(z²−1)` on the given sheet.
///
/// Computed as `√(z−1)·√(z+1)` with principal roots of each factor, which
/// reproduces the required branch on the physical sheet: positive for
/// `z > 1`, negative for `z < −1`, `±i√(1−λ²)` on the cut sides.  The
/// second sheet negates the result.  Total function; returns `0` at `z = ±1`.
pub fn branch_sqrt(z: C64, sheet: Sheet) -> C64 {
    let s = principal_sqrt(z - 1.0) * principal_sqrt(z + 1.0);
    sheet.sign() * s
}

/// `ω(z) = z − √(z²−1)` on the given sheet.
///
/// Cancellation-free: uses the reciprocal form `1/(z + √(z²−1))` whenever
/// `|z + √(z²−1)| ≥ 1`, so large `|z|` never subtracts nearly equal values.
pub fn omega(z: C64, sheet: Sheet) -> C64 {
    let s = branch_sqrt(z, sheet);
    let big = z + s;
    if big.norm_sqr() >= 1.0 {
        big.finv()
    } else {
        z - s
    }
}

/// `ω(λ ± i0) = λ ∓ i√(1−λ²)` for `λ ∈ (−1,1)`; unit modulus.
pub fn boundary_omega(lambda: f64, side: CutSide) -> crate::Result<C64> {
    if !(lambda.abs() < 1.0) {
        return Err(crate::Error::Domain(format!(
            "boundary_omega requires |lambda| < 1, got {lambda}"
        )));
    }
    let root = (1.0 - lambda * lambda).sqrt();
    let im = match side {
        CutSide::Plus => -root,
        CutSide::Minus => root,
    };
    Ok(C64::new(lambda, im))
}

/// A spectral parameter together with its sheet and cached branch values.
///
/// Cached invariants: `sqrt_val² = z² − 1` and `omega_val + 1/omega_val = 2z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    z: C64,
    sheet: Sheet,
    sqrt_val: C64,
    omega_val: C64,
}

impl EnergyPoint {
    /// Point off the cut (or at an edge `±1`) on the given sheet.
    pub fn new(z: C64, sheet: Sheet) -> Self {
        EnergyPoint {
            z,
            sheet,
            sqrt_val: branch_sqrt(z, sheet),
            omega_val: omega(z, sheet),
        }
    }

    /// Physical-sheet point; the common case.
    pub fn physical(z: C64) -> Self {
        EnergyPoint::new(z, Sheet::Physical)
    }

    /// Real physical-sheet point off `[−1,1]`.
    pub fn real(x: f64) -> Self {
        EnergyPoint::physical(C64::new(x, 0.0))
    }

    /// Boundary value `z = λ ± i0` on the physical sheet.
    ///
    /// `√(z²−1)` is `+i√(1−λ²)` on the `Plus` side, `−i√(1−λ²)` on `Minus`.
    pub fn on_cut(lambda: f64, side: CutSide) -> crate::Result<Self> {
        let w = boundary_omega(lambda, side)?;
        let root = (1.0 - lambda * lambda).sqrt();
        let s = match side {
            CutSide::Plus => C64::new(0.0, root),
            CutSide::Minus => C64::new(0.0, -root),
        };
        Ok(EnergyPoint {
            z: C64::new(lambda, 0.0),
            sheet: Sheet::Physical,
            sqrt_val: s,
            omega_val: w,
        })
    }

    /// Point determined by its uniformizing coordinate `ω ≠ 0`.
    ///
    /// `z = (ω + 1/ω)/2`, `√(z²−1) = (1/ω − ω)/2`; the sheet follows from
    /// `|ω|` (ties go to the physical sheet).
    pub fn from_omega(w: C64) -> Self {
        let winv = w.finv();
        let sheet = if w.norm_sqr() <= 1.0 {
            Sheet::Physical
        } else {
            Sheet::Second
        };
        EnergyPoint {
            z: (w + winv) * 0.5,
            sheet,
            sqrt_val: (winv - w) * 0.5,
            omega_val: w,
        }
    }

    /// The spectral parameter `z`.
    pub fn z(&self) -> C64 {
        self.z
    }

    /// Sheet tag.
    pub fn sheet(&self) -> Sheet {
        self.sheet
    }

    /// Cached `√(z²−1)` on this sheet.
    pub fn sqrt_val(&self) -> C64 {
        self.sqrt_val
    }

    /// Cached `ω(z)` on this sheet.
    pub fn omega_val(&self) -> C64 {
        self.omega_val
    }

    /// The same `z` on the other sheet.
    pub fn other_sheet(&self) -> Self {
        EnergyPoint {
            z: self.z,
            sheet: self.sheet.flip(),
            sqrt_val: -self.sqrt_val,
            omega_val: if self.omega_val == C64::new(0.0, 0.0) {
                // z at infinity cannot occur; omega_val = 0 only in the
                // degenerate limit, keep the reciprocal form total anyway.
                self.omega_val
            } else {
                self.omega_val.finv()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sqrt_right_of_band() {
        let s = branch_sqrt(C64::new(1.25, 0.0), Sheet::Physical);
        assert_relative_eq!(s.re, 0.75, max_relative = 1e-15);
        assert_eq!(s.im, 0.0);
    }

    #[test]
    fn sqrt_left_of_band_is_negative() {
        let s = branch_sqrt(C64::new(-2.0, 0.0), Sheet::Physical);
        assert_relative_eq!(s.re, -3.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(s.im, 0.0, epsilon = 1e-300);
    }

    #[test]
    fn sqrt_upper_cut_side() {
        let p = EnergyPoint::on_cut(0.0, CutSide::Plus).unwrap();
        assert_relative_eq!(p.sqrt_val().im, 1.0, max_relative = 1e-15);
        assert_eq!(p.sqrt_val().re, 0.0);
        // The signed-zero-free flag agrees with a point slightly off the cut.
        let near = branch_sqrt(C64::new(0.0, 1e-12), Sheet::Physical);
        assert_relative_eq!(near.im, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn omega_basic_values() {
        let w = omega(C64::new(1.25, 0.0), Sheet::Physical);
        assert_relative_eq!(w.re, 0.5, max_relative = 1e-15);
        let w0 = EnergyPoint::on_cut(0.0, CutSide::Plus).unwrap().omega_val();
        assert_eq!(w0, C64::new(0.0, -1.0));
        for sheet in [Sheet::Physical, Sheet::Second] {
            assert_eq!(omega(C64::new(1.0, 0.0), sheet), C64::new(1.0, 0.0));
            assert_eq!(omega(C64::new(-1.0, 0.0), sheet), C64::new(-1.0, 0.0));
        }
    }

    #[test]
    fn boundary_omega_values() {
        let w = boundary_omega(0.6, CutSide::Plus).unwrap();
        assert_relative_eq!(w.re, 0.6, max_relative = 1e-15);
        assert_relative_eq!(w.im, -0.8, max_relative = 1e-15);
        assert_eq!(boundary_omega(0.0, CutSide::Minus).unwrap(), C64::new(0.0, 1.0));
        assert!(boundary_omega(1.0, CutSide::Plus).is_err());
        assert!(boundary_omega(-1.3, CutSide::Minus).is_err());
    }

    #[test]
    fn boundary_sides_conjugate_and_unimodular() {
        for k in 0..200 {
            let lam = -0.995 + 0.01 * k as f64;
            let wp = boundary_omega(lam, CutSide::Plus).unwrap();
            let wm = boundary_omega(lam, CutSide::Minus).unwrap();
            assert_eq!(wp, wm.conj());
            assert!((wp.norm() - 1.0).abs() < 1e-14);
            // omega(-lam + i0) = -conj(omega(lam + i0))
            let wr = boundary_omega(-lam, CutSide::Plus).unwrap();
            assert_relative_eq!(wr.re, -wp.conj().re, epsilon = 1e-15);
            assert_relative_eq!(wr.im, -wp.conj().im, epsilon = 1e-15);
        }
    }

    fn random_off_band(rng: &mut impl Rng) -> C64 {
        // Rejection-sample points a safe distance from [-1,1].
        loop {
            let z = C64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
            let dist_im = z.im.abs();
            let dist = if z.re.abs() <= 1.0 {
                dist_im
            } else {
                ((z.re.abs() - 1.0).powi(2) + dist_im * dist_im).sqrt()
            };
            if dist > 1e-3 {
                return z;
            }
        }
    }

    #[test]
    fn identities_on_random_grid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1d2a);
        for _ in 0..10_000 {
            let z = random_off_band(&mut rng);
            for sheet in [Sheet::Physical, Sheet::Second] {
                let s = branch_sqrt(z, sheet);
                let w = omega(z, sheet);
                // s^2 = z^2 - 1
                assert!((s * s - (z * z - 1.0)).norm() <= 1e-13 * (z * z).norm().max(1.0));
                // 1 - w^2 = 2 s w and 1 + w^2 = 2 z w
                let lhs1 = 1.0 - w * w;
                let rhs1 = 2.0 * s * w;
                assert!((lhs1 - rhs1).norm() <= 1e-12 * rhs1.norm().max(1.0));
                let lhs2 = 1.0 + w * w;
                let rhs2 = 2.0 * z * w;
                assert!((lhs2 - rhs2).norm() <= 1e-12 * rhs2.norm().max(1.0));
            }
            // sheet involution
            let prod = omega(z, Sheet::Physical) * omega(z, Sheet::Second);
            assert!((prod - 1.0).norm() < 1e-12);
            // modulus ordering
            assert!(omega(z, Sheet::Physical).norm() <= 1.0 + 1e-14);
            assert!(omega(z, Sheet::Second).norm() >= 1.0 - 1e-14);
        }
    }

    #[test]
    fn energy_point_cache_consistency() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2_000 {
            let z = random_off_band(&mut rng);
            let p = EnergyPoint::new(z, Sheet::Physical);
            let q = p.other_sheet();
            assert!((q.sqrt_val() + p.sqrt_val()).norm() < 1e-15 * (1.0 + p.sqrt_val().norm()));
            assert!((q.omega_val() * p.omega_val() - 1.0).norm() < 1e-12);
            let r = EnergyPoint::from_omega(p.omega_val());
            assert!((r.z() - p.z()).norm() <= 1e-11 * (1.0 + p.z().norm()));
            assert!((r.sqrt_val() - p.sqrt_val()).norm() <= 1e-10 * (1.0 + p.sqrt_val().norm()));
        }
    }

    #[test]
    fn no_cancellation_at_large_modulus() {
        let z = C64::new(1e12, 3e11);
        let w = omega(z, Sheet::Physical);
        // omega ~ 1/(2z) with relative accuracy at machine level
        let approx = (2.0 * z).finv();
        assert!((w - approx).norm() < 1e-12 * approx.norm());
    }
}
