//! Calibrated-geometry toolkit.
//!
//! The crate is organized around one chain of ideas: a *calibration* is a
//! closed differential k-form of comass one, and any oriented k-surface whose
//! tangent planes pair to 1 with it is area-minimizing. The modules build that
//! chain bottom-up:
//!
//! * [`exterior`] — alternating k-vectors/k-covectors with wedge, interior
//!   product, dual pairing, and Plücker simplicity tests. Generic over the
//!   coefficient ring, so the same code runs on exact rationals (algebraic
//!   identities), `Complex<f64>` (holomorphic form expansion), and floats.
//! * [`grassmann`] — oriented k-planes as orthonormal frames / unit simple
//!   k-vectors, plus a seeded multi-start ascent for maximizing functions
//!   over the Grassmannian (the comass supremum).
//! * [`forms`] — pointwise form fields, comass, numerical exterior
//!   derivative, contact planes, cousin checks, and unique plane completion.
//! * [`catalog`] — the standard calibrations: volume forms, Kähler powers,
//!   special Lagrangian real parts, the coassociative 4-form, and
//!   codimension-one graph calibrations.
//! * [`graph`] — graphical submanifolds: area integrand, minimal-surface
//!   system residuals, tangent planes, special Lagrangian phase, the scaled
//!   Hopf-map cone, a Newton solver for the minimal surface equation, and
//!   the averaged difference operator for comparing two solutions.
//! * [`simplicial`] — integer simplicial chains in ℝⁿ: boundary, mass, form
//!   pairing, density estimates, cycle filling, cones, Stokes checks.
//! * [`plateau`] — the discrete oriented Plateau problem: mass minimization
//!   by LP (in-house simplex), a brute-force oracle, uniqueness probing, and
//!   calibration-cochain certificates by weak duality.
//!
//! Scalar genericity: algebra and geometry are generic over [`scalar::Real`]
//! (f32/f64) or the ring trait [`scalar::Scalar`]; the LP layer is fixed to
//! f64 because its pivot tolerances are pinned constants. The aliases below
//! give the concrete f64 types most callers want.

pub mod catalog;
pub mod demos;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod graph;
pub mod grassmann;
pub mod linalg;
pub mod lp;
pub mod plateau;
pub mod quadrature;
pub mod scalar;
pub mod simplicial;

pub use error::{Error, Result};

/// k-vector with f64 coefficients.
pub type KVec64 = exterior::KVector<f64>;
/// k-covector with f64 coefficients.
pub type KCov64 = exterior::KCovector<f64>;
/// k-vector with exact rational coefficients (identity checking).
pub type KVecRat = exterior::KVector<num_rational::BigRational>;
/// k-covector with exact rational coefficients.
pub type KCovRat = exterior::KCovector<num_rational::BigRational>;
/// Oriented k-plane with f64 frame.
pub type Plane64 = grassmann::SimplePlane<f64>;
/// Differential form field with f64 coefficients.
pub type FormField64 = forms::FormField<f64>;
/// Graphical submanifold with f64 data.
pub type GraphMap64 = graph::GraphMap<f64>;
/// Embedded simplicial complex with f64 vertices.
pub type Complex64 = simplicial::SimplicialComplex<f64>;
/// Integer chain on a [`Complex64`].
pub type Chain64 = simplicial::Chain<f64>;
