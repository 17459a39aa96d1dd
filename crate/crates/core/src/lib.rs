//! Spectral and scattering data of the point-interaction Jacobi operator.
//!
//! The half-lattice discrete Schrödinger operator `H_1` (tridiagonal, all
//! off-diagonal entries `1/2`) admits a family of rank-two perturbations
//! `H_a` in which only the first off-diagonal entry is replaced by `a/2`,
//! together with the rank-three extension `H_{a,b}` carrying a diagonal
//! entry `b/2` in the corner.  For these operators everything is available
//! in closed form: the resolvent, the spectral measure, eigenvalues and
//! resonances, the scattering matrix, the spectral shift function, wave
//! operators, trace and moment generating functions, and the orthogonal
//! polynomials (`Ch_n(z;a)`, a one-parameter deformation of the Chebyshev
//! polynomials) that diagonalize them.
//!
//! Every closed form in this crate is paired with an independent
//! brute-force route (dense truncated matrices, adaptive quadrature,
//! series extraction) living in [`oracle`], and the agreement suites are
//! collected in [`verify`].
//!
//! Module map:
//!
//! - [`branch`] — the two-sheeted analytic kernel: `√(z²−1)` and `ω(z)`.
//! - [`chebyshev`] — generalized Chebyshev polynomials by recurrence,
//!   closed form, trigonometric form and band-edge formula; weighted
//!   eigenfunctions `ψ_n`.
//! - [`pointres`] — resolvent algebra of `H_1` and `H_a`: perturbation
//!   determinant, T-matrix, Weyl m-function, all matrix elements.
//! - [`jost`] — general finite-support perturbations: Jost solution and
//!   function, determinant polynomials, inverse coefficient recovery.
//! - [`spectral`] — spectral measure, eigenvalues, atoms, resonances,
//!   moments, trace identities, Hankel determinants.
//! - [`scattering`] — scattering matrix by three routes, spectral shift
//!   function, eigenfunction transform, wave-operator checks.
//! - [`oracle`] — dense truncated-matrix engines and adaptive quadrature.
//! - [`verify`] — the oracle-agreement acceptance suites.

pub mod branch;
pub mod chebyshev;
pub mod error;
pub mod jost;
pub mod oracle;
pub mod pointres;
pub mod scattering;
pub mod spectral;
pub mod verify;

pub use branch::{boundary_omega, branch_sqrt, omega, CutSide, EnergyPoint, Sheet};
pub use chebyshev::{CouplingParams, PolySeq};
pub use error::{Error, Result};
pub use jost::{DetPolynomial, JacobiCoeffs};
pub use oracle::TruncatedOperator;
pub use scattering::ScatteringRecord;
pub use spectral::{ResonanceSet, SpectralMeasureRecord};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// `√2`, the threshold coupling separating resonances from bound states.
pub const SQRT2: f64 = std::f64::consts::SQRT_2;
