//! Pointwise differential k-form fields on regions of ℝⁿ: comass, numerical
//! exterior derivative, contact-plane membership, tangent-rotation ("cousin")
//! pairings, and closed-form completion of contact planes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exterior::{interior, pair, KCovector};
use crate::grassmann::{maximize_over_grassmannian, SimplePlane, DEFAULT_ITERS, DEFAULT_RESTARTS};
use crate::linalg::{axpy, complete_basis, norm};
use crate::scalar::{r, Real};

/// Membership tolerance for contact planes (inherits optimizer error).
pub const CONTACT_TOL: f64 = 1e-6;
/// Tolerance on cousin pairings (exact linear algebra once the plane is fixed).
pub const COUSIN_TOL: f64 = 1e-8;
/// Angle below which two near-maximal completions count as the same vector.
/// Completions separated by more than this can only coexist if the pairing
/// functional exceeds one, i.e. if comass-one is violated.
pub const DISTINCT_COMPLETION_ANGLE: f64 = 0.01;

/// Where a form field is defined and may be sampled.
#[derive(Debug, Clone)]
pub enum Region<T> {
    /// Axis-aligned box lo ≤ p ≤ hi.
    Box { lo: Vec<T>, hi: Vec<T> },
    /// Spherical shell inner ≤ |p − center| ≤ outer (inner > 0 excludes a
    /// singular point).
    Annulus { center: Vec<T>, inner: T, outer: T },
}

impl<T: Real> Region<T> {
    /// Effectively all of ℝⁿ (a huge box).
    pub fn all(dim: usize) -> Self {
        Self::cube(dim, 1e12)
    }

    /// The centered cube [−half, half]ⁿ.
    pub fn cube(dim: usize, half: f64) -> Self {
        Region::Box { lo: vec![r(-half); dim], hi: vec![r(half); dim] }
    }

    pub fn dim(&self) -> usize {
        match self {
            Region::Box { lo, .. } => lo.len(),
            Region::Annulus { center, .. } => center.len(),
        }
    }

    pub fn contains(&self, p: &[T]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        match self {
            Region::Box { lo, hi } => p
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(x, (a, b))| *a <= *x && *x <= *b),
            Region::Annulus { center, inner, outer } => {
                let d: T = p
                    .iter()
                    .zip(center)
                    .map(|(x, c)| (*x - *c) * (*x - *c))
                    .fold(T::zero(), |a, b| a + b)
                    .sqrt();
                *inner <= d && d <= *outer
            }
        }
    }
}

type Evaluator<T> = Arc<dyn Fn(&[T]) -> Result<KCovector<T>> + Send + Sync>;

/// A k-form field: an evaluator p ↦ φ_p over a region, with degree/dimension
/// metadata and a constancy flag that lets derivative code short-circuit.
#[derive(Clone)]
pub struct FormField<T: Real> {
    degree: usize,
    dim: usize,
    region: Region<T>,
    constant: bool,
    eval: Evaluator<T>,
}

impl<T: Real> fmt::Debug for FormField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormField")
            .field("degree", &self.degree)
            .field("dim", &self.dim)
            .field("region", &self.region)
            .field("constant", &self.constant)
            .finish_non_exhaustive()
    }
}

impl<T: Real> FormField<T> {
    pub fn new<F>(degree: usize, dim: usize, region: Region<T>, evaluator: F) -> Self
    where
        F: Fn(&[T]) -> Result<KCovector<T>> + Send + Sync + 'static,
    {
        FormField { degree, dim, region, constant: false, eval: Arc::new(evaluator) }
    }

    /// A form with the same covector at every point of the region.
    pub fn constant(cov: KCovector<T>, region: Region<T>) -> Self {
        let degree = cov.degree();
        let dim = cov.dim();
        FormField {
            degree,
            dim,
            region,
            constant: true,
            eval: Arc::new(move |_p: &[T]| Ok(cov.clone())),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn region(&self) -> &Region<T> {
        &self.region
    }

    pub fn is_constant(&self) -> bool {
        self.constant
    }

    /// Evaluate φ_p. Errors if p is outside the region or the evaluator
    /// cannot produce a value there (e.g. off-grid for sampled coefficients).
    pub fn at(&self, p: &[T]) -> Result<KCovector<T>> {
        if !self.region.contains(p) {
            return Err(Error::OutsideRegion(to_f64(p)));
        }
        let cov = (self.eval)(p)?;
        if cov.degree() != self.degree || cov.dim() != self.dim {
            return Err(Error::Precondition(format!(
                "evaluator produced a ({}, {})-tensor for a ({}, {})-field",
                cov.degree(),
                cov.dim(),
                self.degree,
                self.dim
            )));
        }
        Ok(cov)
    }

    /// The field c·φ (comass scales by |c|).
    pub fn scaled(&self, c: T) -> Self {
        let inner = self.eval.clone();
        FormField {
            degree: self.degree,
            dim: self.dim,
            region: self.region.clone(),
            constant: self.constant,
            eval: Arc::new(move |p: &[T]| Ok(inner(p)?.scale(&c))),
        }
    }
}

fn to_f64<T: Real>(p: &[T]) -> Vec<f64> {
    p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

/// Budget and seed for the comass optimizer.
#[derive(Debug, Clone, Copy)]
pub struct ComassOptions {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

impl Default for ComassOptions {
    fn default() -> Self {
        ComassOptions { restarts: DEFAULT_RESTARTS, iters: DEFAULT_ITERS, seed: 0xCA11_B7A7 }
    }
}

/// Comass of φ at p together with the maximizing plane:
/// sup over unit simple k-vectors ξ of ⟨φ_p, ξ⟩.
pub fn comass_argmax<T: Real>(
    phi: &FormField<T>,
    p: &[T],
    opts: &ComassOptions,
) -> Result<(SimplePlane<T>, T)> {
    let cov = phi.at(p)?;
    let f = move |pl: &SimplePlane<T>| pair(&cov, &pl.plucker).unwrap_or_else(|_| T::nan());
    maximize_over_grassmannian(&f, phi.degree(), phi.dim(), opts.restarts, opts.iters, opts.seed)
}

/// Pointwise comass ‖φ_p‖ (value only).
pub fn comass_at<T: Real>(phi: &FormField<T>, p: &[T], opts: &ComassOptions) -> Result<T> {
    comass_argmax(phi, p, opts).map(|(_, v)| v)
}

/// Supremum of the pointwise comass over a sample set.
pub fn comass_global<T: Real>(
    phi: &FormField<T>,
    samples: &[Vec<T>],
    opts: &ComassOptions,
) -> Result<T> {
    if samples.is_empty() {
        return Err(Error::ZeroInput("comass sample set"));
    }
    let mut best = T::neg_infinity();
    for p in samples {
        let v = comass_at(phi, p, opts)?;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Central-difference exterior derivative dφ at p, assembled as
/// Σ_s dx^s ∧ ∂_s φ; second-order accurate in h. Constant fields give the
/// zero (k+1)-form exactly.
pub fn exterior_derivative_numeric<T: Real>(
    phi: &FormField<T>,
    p: &[T],
    h: T,
) -> Result<KCovector<T>> {
    let n = phi.dim();
    let k = phi.degree();
    if phi.is_constant() {
        return KCovector::zero(k + 1, n);
    }
    if h <= T::zero() {
        return Err(Error::BadParameter("derivative step must be positive".into()));
    }
    let mut acc = KCovector::zero(k + 1, n)?;
    let half = T::one() / (h + h);
    for s in 1..=n {
        let mut pp = p.to_vec();
        let mut pm = p.to_vec();
        pp[s - 1] += h;
        pm[s - 1] -= h;
        if !phi.region().contains(&pp) || !phi.region().contains(&pm) {
            return Err(Error::StencilExitsRegion(h.to_f64().unwrap_or(f64::NAN)));
        }
        let d = phi.at(&pp)?.sub(&phi.at(&pm)?)?.scale(&half);
        let ds = KCovector::basis(n, &[s as u8])?;
        acc = acc.add(&ds.wedge(&d)?)?;
    }
    Ok(acc)
}

/// Outcome of testing a plane against the contact set 𝒢_p(φ).
#[derive(Debug, Clone)]
pub struct ContactReport<T: Real> {
    pub point: Vec<T>,
    pub plane: SimplePlane<T>,
    /// ⟨φ_p, ξ⟩
    pub value: T,
    /// 1 − value
    pub residual: T,
    /// value ≥ 1 − tol
    pub member: bool,
}

/// Test whether `plane` lies in the contact set of φ at p.
/// Checks the comass-one precondition first (via the optimizer).
pub fn contact_membership<T: Real>(
    phi: &FormField<T>,
    p: &[T],
    plane: &SimplePlane<T>,
    tol: T,
    opts: &ComassOptions,
) -> Result<ContactReport<T>> {
    let comass = comass_at(phi, p, opts)?;
    if (comass - T::one()).abs() > tol {
        return Err(Error::ComassNotOne(comass.to_f64().unwrap_or(f64::NAN)));
    }
    let value = pair(&phi.at(p)?, &plane.plucker)?;
    Ok(ContactReport {
        point: p.to_vec(),
        plane: plane.clone(),
        value,
        residual: T::one() - value,
        member: value >= T::one() - tol,
    })
}

/// Max pairing of φ_p with the tangent rotations ("first cousins") of a
/// contact plane ξ: the planes ξ_ij = w_j ∧ (v_i ⌟ ξ) obtained by rotating
/// one frame vector v_i of ξ into one normal direction w_j. A comass-one
/// form in contact with ξ must annihilate every cousin; the returned maximum
/// measures how badly that first-order criterion fails.
pub fn first_cousin_check<T: Real>(
    phi: &FormField<T>,
    p: &[T],
    plane: &SimplePlane<T>,
    opts: &ComassOptions,
) -> Result<T> {
    let report = contact_membership(phi, p, plane, r(CONTACT_TOL), opts)?;
    if !report.member {
        return Err(Error::NotContact(report.value.to_f64().unwrap_or(f64::NAN)));
    }
    let cov = phi.at(p)?;
    let n = plane.n();
    let k = plane.k();
    let full = complete_basis(&plane.frame, n);
    let normals = &full[k..];
    let mut worst = T::zero();
    for v in &plane.frame {
        let contracted = interior(v, &plane.plucker)?;
        for w in normals {
            let cousin = crate::exterior::KVector::from_components(n, w)?.wedge(&contracted)?;
            let val = pair(&cov, &cousin)?.abs();
            if val > worst {
                worst = val;
            }
        }
    }
    Ok(worst)
}

/// Result of completing a (k−1)-plane η to a contact k-plane η∧v.
#[derive(Debug, Clone)]
pub enum PlaneCompletion<T: Real> {
    /// Exactly one unit v ⊥ η with ⟨φ_p, η∧v⟩ ≥ 1 − tol.
    Unique { v: Vec<T>, value: T },
    /// No completion reaches 1 − tol.
    None,
    /// Two genuinely distinct completions reach 1 − tol. For a linear
    /// functional this forces max ⟨φ_p, η∧·⟩ > 1, i.e. a comass violation;
    /// both witnesses are returned as evidence.
    Multiple { first: Vec<T>, second: Vec<T>, value: T },
}

/// Find the unit vectors v ⊥ η with η∧v in the contact set of φ at p.
///
/// Over the unit sphere of η^⊥ the pairing g(v) = ⟨φ_p, η∧v⟩ is linear, so
/// the maximizer is the normalized dual vector — computed in closed form, no
/// iteration. Uniqueness of the completion is the generic outcome for
/// comass-one forms; `Multiple` can only trigger when g exceeds one.
pub fn complete_plane<T: Real>(
    phi: &FormField<T>,
    p: &[T],
    eta: &SimplePlane<T>,
    tol: T,
) -> Result<PlaneCompletion<T>> {
    eta.validate()?;
    let n = eta.n();
    if n != phi.dim() || eta.k() + 1 != phi.degree() {
        return Err(Error::DegreeMismatch(eta.k() + 1, phi.degree()));
    }
    let cov = phi.at(p)?;
    let full = complete_basis(&eta.frame, n);
    let comp = &full[eta.k()..];
    // dual coefficients of g on the orthonormal complement basis
    let mut coeffs = Vec::with_capacity(comp.len());
    for w in comp {
        let cand = eta
            .plucker
            .wedge(&crate::exterior::KVector::from_components(n, w)?)?;
        coeffs.push(pair(&cov, &cand)?);
    }
    let gmax = norm(&coeffs);
    let threshold = T::one() - tol;
    if gmax < threshold {
        return Ok(PlaneCompletion::None);
    }
    let mut v = vec![T::zero(); n];
    for (c, w) in coeffs.iter().zip(comp) {
        axpy(&mut v, *c / gmax, w);
    }
    // The sub-level set {g ≥ 1 − tol} is a spherical cap around v*). Two
    // completions at least DISTINCT_COMPLETION_ANGLE apart exist iff the cap
    // is that wide, i.e. iff gmax·cos(half-angle) ≥ 1 − tol.
    let half = r::<T>(DISTINCT_COMPLETION_ANGLE / 2.0);
    if comp.len() >= 2 && gmax * half.cos() >= threshold {
        // exhibit two witnesses: rotate v* by ±half within the cap
        let u = distinct_direction(comp, &coeffs, gmax, n);
        let (c, s) = (half.cos(), half.sin());
        let mut first = vec![T::zero(); n];
        let mut second = vec![T::zero(); n];
        axpy(&mut first, c, &v);
        axpy(&mut first, s, &u);
        axpy(&mut second, c, &v);
        axpy(&mut second, -s, &u);
        return Ok(PlaneCompletion::Multiple { first, second, value: gmax * c });
    }
    Ok(PlaneCompletion::Unique { v, value: gmax })
}

/// Any unit vector of span(comp) orthogonal to the dual vector (coeffs).
fn distinct_direction<T: Real>(
    comp: &[Vec<T>],
    coeffs: &[T],
    gmax: T,
    n: usize,
) -> Vec<T> {
    // rotate the dual coefficients within the first coordinate plane that
    // keeps the result nonzero
    let m = coeffs.len();
    let unit: Vec<T> = coeffs.iter().map(|c| *c / gmax).collect();
    let mut ortho = vec![T::zero(); m];
    // pick the axis least aligned with the dual vector, project, normalize
    let mut best_axis = 0;
    let mut best_abs = T::infinity();
    for (i, c) in unit.iter().enumerate() {
        if c.abs() < best_abs {
            best_abs = c.abs();
            best_axis = i;
        }
    }
    ortho[best_axis] = T::one();
    let d = unit[best_axis];
    for (o, c) in ortho.iter_mut().zip(&unit) {
        *o = *o - d * *c;
    }
    let len = norm(&ortho);
    let mut u = vec![T::zero(); n];
    for (c, w) in ortho.iter().zip(comp) {
        axpy(&mut u, *c / len, w);
    }
    u
}
