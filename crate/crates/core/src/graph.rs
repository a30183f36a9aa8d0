//! Geometry of graphical submanifolds y = u(x), u: Ω ⊂ ℝᵏ → ℝⁿ⁻ᵏ.
//!
//! A graph map carries values plus first and second derivatives, either as
//! analytic closures or as a uniform finite-difference grid. On top of it:
//! the area integrand and induced metric, the minimal-surface-system residual
//! gⁱʲ(Du) ∂ᵢⱼu^σ, the codimension-one coefficients aⁱʲ, oriented tangent
//! planes as unit simple k-vectors, calibration defects, the Lagrangian
//! angle, the scaled Hopf cone (a Lipschitz graph that is minimal yet
//! singular at the origin), an averaged second-order operator annihilating
//! the difference of two minimal graphs, and a Newton solver producing
//! grid-backed minimal graphs from Dirichlet data.
//!
//! Ambient coordinates always list the base first: (x¹,…,xᵏ, y¹,…,yⁿ⁻ᵏ).

use std::sync::Arc;

use rand::prelude::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog;
use crate::error::{Error, Result};
use crate::exterior::{pair, KCovector};
use crate::forms::{FormField, Region};
use crate::grassmann::{plane_from_frame, SimplePlane};
use crate::linalg::{det, inverse, norm, solve, sym_eigenvalues, Mat};
use crate::quadrature::gauss_legendre_16;
use crate::scalar::{r, Real};

/// A graph qualifies as "minimal at the sample scale" for the averaged
/// difference operator when its system residual is below this.
pub const DIFFERENCE_RESIDUAL_TOL: f64 = 1e-6;

/// Node-snap tolerance for grid-backed graphs, in units of the spacing.
const GRID_SNAP: f64 = 1e-6;

type ValueFn<T> = Arc<dyn Fn(&[T]) -> Result<Vec<T>> + Send + Sync>;
type JacobianFn<T> = Arc<dyn Fn(&[T]) -> Result<Mat<T>> + Send + Sync>;
type HessianFn<T> = Arc<dyn Fn(&[T]) -> Result<Vec<Mat<T>>> + Send + Sync>;

enum Backend<T: Real> {
    /// Closed-form value / Jacobian / Hessians.
    Analytic { u: ValueFn<T>, du: JacobianFn<T>, d2u: HessianFn<T> },
    /// Uniform m×m grid over a square, codimension one, base dimension two.
    /// Values only; derivatives come from central differences, so they are
    /// available at interior nodes and evaluation snaps to nodes.
    Grid { lo: Vec<T>, h: T, m: usize, vals: Vec<T> },
}

/// A graphical submanifold: base dimension k, ambient dimension n, codim
/// n − k, with a domain (box, or an annulus excluding a singular point) and
/// an orientation sign for its tangent planes.
pub struct GraphMap<T: Real> {
    k: usize,
    ambient: usize,
    domain: Region<T>,
    orientation: i8,
    backend: Backend<T>,
}

impl<T: Real> GraphMap<T> {
    /// Graph from analytic closures. `du` returns the (n−k)×k Jacobian
    /// (row σ = gradient of u^σ), `d2u` one k×k Hessian per component.
    pub fn analytic<U, D, H>(
        k: usize,
        ambient: usize,
        domain: Region<T>,
        u: U,
        du: D,
        d2u: H,
    ) -> Result<Self>
    where
        U: Fn(&[T]) -> Result<Vec<T>> + Send + Sync + 'static,
        D: Fn(&[T]) -> Result<Mat<T>> + Send + Sync + 'static,
        H: Fn(&[T]) -> Result<Vec<Mat<T>>> + Send + Sync + 'static,
    {
        if k == 0 || ambient <= k {
            return Err(Error::BadParameter(format!(
                "graph needs 1 ≤ k < n, got k={k}, n={ambient}"
            )));
        }
        if domain.dim() != k {
            return Err(Error::DimMismatch(domain.dim(), k));
        }
        Ok(GraphMap {
            k,
            ambient,
            domain,
            orientation: 1,
            backend: Backend::Analytic { u: Arc::new(u), du: Arc::new(du), d2u: Arc::new(d2u) },
        })
    }

    /// Codimension-one graph over an m×m grid on [lo, lo+(m−1)h]², row-major
    /// values `vals[i*m + j]` at (lo₁+ih, lo₂+jh). Derivatives are central
    /// differences, available at interior nodes.
    pub fn from_grid(lo: [T; 2], h: T, m: usize, vals: Vec<T>) -> Result<Self> {
        if m < 3 {
            return Err(Error::BadParameter(format!("grid needs m ≥ 3, got {m}")));
        }
        if vals.len() != m * m {
            return Err(Error::BadParameter(format!(
                "grid needs m² = {} values, got {}",
                m * m,
                vals.len()
            )));
        }
        if h <= T::zero() {
            return Err(Error::BadParameter("grid spacing must be positive".into()));
        }
        let side = h * r((m - 1) as f64);
        let domain = Region::Box {
            lo: vec![lo[0], lo[1]],
            hi: vec![lo[0] + side, lo[1] + side],
        };
        Ok(GraphMap {
            k: 2,
            ambient: 3,
            domain,
            orientation: 1,
            backend: Backend::Grid { lo: vec![lo[0], lo[1]], h, m, vals },
        })
    }

    /// Same graph with the tangent orientation flipped when `sign` is −1.
    pub fn with_orientation(mut self, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "orientation must be ±1");
        self.orientation = sign;
        self
    }

    pub fn base_dim(&self) -> usize {
        self.k
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.k
    }

    pub fn domain(&self) -> &Region<T> {
        &self.domain
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    fn check_domain(&self, x: &[T]) -> Result<()> {
        if x.len() != self.k {
            return Err(Error::DimMismatch(x.len(), self.k));
        }
        if !self.domain.contains(x) {
            let xs: Vec<f64> = x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
            if let Region::Annulus { center, inner, .. } = &self.domain {
                let d = norm(
                    &x.iter().zip(center).map(|(a, b)| *a - *b).collect::<Vec<_>>(),
                );
                if d < *inner {
                    return Err(Error::AtSingularity(xs));
                }
            }
            return Err(Error::OutsideRegion(xs));
        }
        Ok(())
    }

    /// Snap an evaluation point to its grid node, or fail with `OffGrid`.
    fn grid_node(lo: &[T], h: T, m: usize, x: &[T]) -> Result<(usize, usize)> {
        let mut idx = [0usize; 2];
        for d in 0..2 {
            let rel = (x[d] - lo[d]) / h;
            let near = rel.round();
            if (rel - near).abs() > r(GRID_SNAP) {
                return Err(Error::OffGrid(
                    x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
                ));
            }
            let i = near.to_f64().unwrap_or(-1.0);
            if i < 0.0 || i > (m - 1) as f64 {
                return Err(Error::OutsideRegion(
                    x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
                ));
            }
            idx[d] = i as usize;
        }
        Ok((idx[0], idx[1]))
    }

    /// u(x) ∈ ℝⁿ⁻ᵏ.
    pub fn value(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_domain(x)?;
        match &self.backend {
            Backend::Analytic { u, .. } => {
                let v = u(x)?;
                if v.len() != self.codim() {
                    return Err(Error::DimMismatch(v.len(), self.codim()));
                }
                Ok(v)
            }
            Backend::Grid { lo, h, m, vals } => {
                let (i, j) = Self::grid_node(lo, *h, *m, x)?;
                Ok(vec![vals[i * m + j]])
            }
        }
    }

    /// The (n−k)×k Jacobian Du(x); row σ is the gradient of u^σ.
    pub fn jacobian(&self, x: &[T]) -> Result<Mat<T>> {
        self.check_domain(x)?;
        match &self.backend {
            Backend::Analytic { du, .. } => {
                let j = du(x)?;
                if j.rows != self.codim() || j.cols != self.k {
                    return Err(Error::BadParameter(format!(
                        "Jacobian shape {}×{} but graph needs {}×{}",
                        j.rows,
                        j.cols,
                        self.codim(),
                        self.k
                    )));
                }
                Ok(j)
            }
            Backend::Grid { lo, h, m, vals } => {
                let (i, j) = Self::grid_node(lo, *h, *m, x)?;
                Self::require_interior(i, j, *m, x)?;
                let v = |a: usize, b: usize| vals[a * m + b];
                let two_h = *h + *h;
                let mut out = Mat::zeros(1, 2);
                out[(0, 0)] = (v(i + 1, j) - v(i - 1, j)) / two_h;
                out[(0, 1)] = (v(i, j + 1) - v(i, j - 1)) / two_h;
                Ok(out)
            }
        }
    }

    /// One k×k Hessian per component of u.
    pub fn hessians(&self, x: &[T]) -> Result<Vec<Mat<T>>> {
        self.check_domain(x)?;
        match &self.backend {
            Backend::Analytic { d2u, .. } => {
                let hs = d2u(x)?;
                if hs.len() != self.codim() {
                    return Err(Error::DimMismatch(hs.len(), self.codim()));
                }
                for hmat in &hs {
                    if hmat.rows != self.k || hmat.cols != self.k {
                        return Err(Error::DimMismatch(hmat.rows, self.k));
                    }
                }
                Ok(hs)
            }
            Backend::Grid { lo, h, m, vals } => {
                let (i, j) = Self::grid_node(lo, *h, *m, x)?;
                Self::require_interior(i, j, *m, x)?;
                let v = |a: usize, b: usize| vals[a * m + b];
                let h2 = *h * *h;
                let two = r::<T>(2.0);
                let mut hess = Mat::zeros(2, 2);
                hess[(0, 0)] = (v(i + 1, j) - two * v(i, j) + v(i - 1, j)) / h2;
                hess[(1, 1)] = (v(i, j + 1) - two * v(i, j) + v(i, j - 1)) / h2;
                let mixed = (v(i + 1, j + 1) - v(i + 1, j - 1) - v(i - 1, j + 1)
                    + v(i - 1, j - 1))
                    / (r::<T>(4.0) * h2);
                hess[(0, 1)] = mixed;
                hess[(1, 0)] = mixed;
                Ok(vec![hess])
            }
        }
    }

    fn require_interior(i: usize, j: usize, m: usize, x: &[T]) -> Result<()> {
        if i == 0 || j == 0 || i == m - 1 || j == m - 1 {
            return Err(Error::BadParameter(format!(
                "central differences need an interior grid node, got boundary node {:?}",
                x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>()
            )));
        }
        Ok(())
    }

    /// Check that the declared derivatives are consistent with the values:
    /// central finite differences of u against Du, and of Du against D²u, at
    /// `samples` random domain points. The tolerance scales with the
    /// differencing step (truncation is O(step²) per derivative order).
    pub fn validate(&self, samples: usize, seed: u64) -> Result<()> {
        let Backend::Analytic { u, du, d2u } = &self.backend else {
            return Ok(()); // grid derivatives are by construction differences of the values
        };
        let step = r::<T>(1e-5);
        let tol = r::<T>(1e-4); // step²·|u⁗| plus rounding ε/step, with slack
        for (s, x) in self.sample_points(samples, seed)?.into_iter().enumerate() {
            let jac = du(&x)?;
            let hs = d2u(&x)?;
            for i in 0..self.k {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[i] = xp[i] + step;
                xm[i] = xm[i] - step;
                if !(self.domain.contains(&xp) && self.domain.contains(&xm)) {
                    continue;
                }
                let (up, um) = (u(&xp)?, u(&xm)?);
                let (jp, jm) = (du(&xp)?, du(&xm)?);
                for sig in 0..self.codim() {
                    let fd = (up[sig] - um[sig]) / (step + step);
                    let exact = jac[(sig, i)];
                    if (fd - exact).abs() > tol * (T::one() + exact.abs()) {
                        return Err(Error::Precondition(format!(
                            "Jacobian entry ({sig},{i}) disagrees with differenced values at sample {s}: {} vs {}",
                            fd.to_f64().unwrap_or(f64::NAN),
                            exact.to_f64().unwrap_or(f64::NAN)
                        )));
                    }
                    for l in 0..self.k {
                        let fd2 = (jp[(sig, l)] - jm[(sig, l)]) / (step + step);
                        let exact2 = hs[sig][(l, i)];
                        if (fd2 - exact2).abs() > tol * (T::one() + exact2.abs()) {
                            return Err(Error::Precondition(format!(
                                "Hessian entry ({sig},{l},{i}) disagrees with differenced Jacobian at sample {s}: {} vs {}",
                                fd2.to_f64().unwrap_or(f64::NAN),
                                exact2.to_f64().unwrap_or(f64::NAN)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic random sample of domain points where derivatives are
    /// available: interior of the box / annulus for analytic graphs, interior
    /// grid nodes for grid-backed ones.
    pub fn sample_points(&self, count: usize, seed: u64) -> Result<Vec<Vec<T>>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Backend::Grid { lo, h, m, .. } = &self.backend {
            let mut nodes: Vec<(usize, usize)> = Vec::new();
            for i in 1..m - 1 {
                for j in 1..m - 1 {
                    nodes.push((i, j));
                }
            }
            nodes.shuffle(&mut rng);
            return Ok(nodes
                .into_iter()
                .cycle()
                .take(count)
                .map(|(i, j)| vec![lo[0] + *h * r(i as f64), lo[1] + *h * r(j as f64)])
                .collect());
        }
        let mut out = Vec::with_capacity(count);
        match &self.domain {
            Region::Box { lo, hi } => {
                for _ in 0..count {
                    let p: Vec<T> = lo
                        .iter()
                        .zip(hi)
                        .map(|(a, b)| {
                            // keep a margin so small FD stencils stay inside
                            let t = r::<T>(rng.gen_range(0.05..0.95));
                            *a + (*b - *a) * t
                        })
                        .collect();
                    out.push(p);
                }
            }
            Region::Annulus { center, inner, outer } => {
                let span = outer.to_f64().unwrap_or(1.0);
                let (ilo, ihi) = (
                    inner.to_f64().unwrap_or(0.0) * 1.05,
                    outer.to_f64().unwrap_or(1.0) * 0.95,
                );
                let mut guard = 0usize;
                while out.len() < count {
                    guard += 1;
                    if guard > 100_000 * count.max(1) {
                        return Err(Error::ResourceLimit(
                            "annulus rejection sampling failed to fill the quota".into(),
                        ));
                    }
                    let p: Vec<T> = center
                        .iter()
                        .map(|c| *c + r::<T>(rng.gen_range(-span..span)))
                        .collect();
                    let d = norm(
                        &p.iter().zip(center).map(|(a, b)| *a - *b).collect::<Vec<_>>(),
                    )
                    .to_f64()
                    .unwrap_or(0.0);
                    if d >= ilo && d <= ihi {
                        out.push(p);
                    }
                }
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Induced metric and the area integrand

/// Induced metric data of a graph with Jacobian P: g = I + PᵀP, its inverse,
/// and the area density F = √det g ≥ 1.
#[derive(Debug, Clone)]
pub struct MetricData<T> {
    pub g: Mat<T>,
    pub g_inv: Mat<T>,
    pub area_density: T,
}

/// Metric, inverse metric, and area density of the graph plane with Jacobian
/// `du` ((n−k)×k, rows = components). g is always symmetric positive
/// definite, so this cannot fail on finite input.
pub fn area_integrand<T: Real>(du: &Mat<T>) -> Result<MetricData<T>> {
    for i in 0..du.rows {
        for j in 0..du.cols {
            if !du[(i, j)].is_finite() {
                return Err(Error::NonFiniteObjective);
            }
        }
    }
    let g = Mat::identity(du.cols).add(&du.transpose().matmul(du));
    let g_inv = inverse(&g)?;
    let area_density = det(&g).sqrt();
    Ok(MetricData { g, g_inv, area_density })
}

// ---------------------------------------------------------------------------
// Minimal surface system / equation

/// Residual of the minimal surface system in non-divergence form: the vector
/// (gⁱʲ(Du) ∂ᵢⱼu^σ)_σ ∈ ℝⁿ⁻ᵏ. Zero exactly when the graph is minimal.
pub fn mss_residual<T: Real>(u: &GraphMap<T>, x: &[T]) -> Result<Vec<T>> {
    let jac = u.jacobian(x)?;
    let hess = u.hessians(x)?;
    let metric = area_integrand(&jac)?;
    let k = u.base_dim();
    let mut out = Vec::with_capacity(u.codim());
    for hs in &hess {
        let mut acc = T::zero();
        for i in 0..k {
            for j in 0..k {
                acc = acc + metric.g_inv[(i, j)] * hs[(i, j)];
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Codimension-one coefficients aⁱʲ(p) = (1+|p|²)^{−1/2}(δᵢⱼ − pᵢpⱼ/(1+|p|²)):
/// the derivative of the normalized-gradient map p ↦ p(1+|p|²)^{−1/2}, whose
/// divergence form of the minimal surface equation is aⁱʲ(Du)∂ᵢⱼu = 0.
/// Symmetric, with eigenvalues (1+|p|²)^{−3/2} on span p and (1+|p|²)^{−1/2}
/// on its complement.
pub fn mse_coefficients<T: Real>(p: &[T]) -> Mat<T> {
    let k = p.len();
    let s2 = (T::one() + p.iter().fold(T::zero(), |a, x| a + *x * *x)).recip();
    let s = s2.sqrt();
    let mut a = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let delta = if i == j { T::one() } else { T::zero() };
            a[(i, j)] = s * (delta - p[i] * p[j] * s2);
        }
    }
    a
}

/// ∂aⁱʲ/∂p_s, one k×k matrix per direction s.
fn mse_coefficient_gradients<T: Real>(p: &[T]) -> Vec<Mat<T>> {
    let k = p.len();
    let s2 = (T::one() + p.iter().fold(T::zero(), |a, x| a + *x * *x)).recip();
    let s = s2.sqrt();
    let s3 = s * s2;
    let s5 = s3 * s2;
    let three = r::<T>(3.0);
    (0..k)
        .map(|sdir| {
            let mut d = Mat::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    let delta_ij = if i == j { T::one() } else { T::zero() };
                    let delta_is = if i == sdir { T::one() } else { T::zero() };
                    let delta_js = if j == sdir { T::one() } else { T::zero() };
                    d[(i, j)] = -p[sdir] * s3 * delta_ij
                        - s3 * (delta_is * p[j] + delta_js * p[i])
                        + three * p[i] * p[j] * p[sdir] * s5;
                }
            }
            d
        })
        .collect()
}

/// aⁱʲ at a point of a codimension-one graph. Errors on higher codimension.
pub fn mse_coefficients_at<T: Real>(u: &GraphMap<T>, x: &[T]) -> Result<Mat<T>> {
    if u.codim() != 1 {
        return Err(Error::BadParameter(format!(
            "scalar minimal-surface coefficients need codimension one, got {}",
            u.codim()
        )));
    }
    let jac = u.jacobian(x)?;
    Ok(mse_coefficients(jac.row(0)))
}

// ---------------------------------------------------------------------------
// Tangent planes and calibration defects

/// Oriented unit tangent plane of the graph at (x, u(x)): the span of
/// (eᵢ, ∂ᵢu), orthonormalized, oriented by the base's standard orientation
/// times the graph's orientation sign.
pub fn tangent_plane<T: Real>(u: &GraphMap<T>, x: &[T]) -> Result<SimplePlane<T>> {
    let jac = u.jacobian(x)?;
    let (k, n) = (u.base_dim(), u.ambient_dim());
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = vec![T::zero(); n];
        row[i] = T::one();
        for sig in 0..u.codim() {
            row[k + sig] = jac[(sig, i)];
        }
        rows.push(row);
    }
    if u.orientation() == -1 {
        for entry in rows[k - 1].iter_mut() {
            *entry = -*entry;
        }
    }
    plane_from_frame(&rows)
}

/// Worst calibration defect 1 − ⟨φ_{(x,u(x))}, ξ(x)⟩ over the samples.
/// Zero (to rounding) exactly when φ calibrates the oriented graph there.
pub fn graph_calibrated_defect<T: Real>(
    u: &GraphMap<T>,
    phi: &FormField<T>,
    samples: &[Vec<T>],
) -> Result<T> {
    if phi.degree() != u.base_dim() {
        return Err(Error::DegreeMismatch(phi.degree(), u.base_dim()));
    }
    if phi.dim() != u.ambient_dim() {
        return Err(Error::DimMismatch(phi.dim(), u.ambient_dim()));
    }
    if samples.is_empty() {
        return Err(Error::ZeroInput("sample set"));
    }
    let mut worst = T::neg_infinity();
    for x in samples {
        let mut q = x.clone();
        q.extend(u.value(x)?);
        let cov = phi.at(&q)?;
        let xi = tangent_plane(u, x)?;
        let defect = T::one() - pair(&cov, &xi.plucker)?;
        worst = worst.max(defect);
    }
    Ok(worst)
}

/// Lagrangian angle of a potential graph y = ∇F(x): the sum of arctangents
/// of the eigenvalues of the (symmetric) Jacobian D²F. Constant angle is the
/// special Lagrangian condition.
pub fn slag_phase<T: Real>(u: &GraphMap<T>, x: &[T]) -> Result<T> {
    if u.codim() != u.base_dim() {
        return Err(Error::BadParameter(format!(
            "Lagrangian angle needs a square Jacobian (codim = k), got k={} codim={}",
            u.base_dim(),
            u.codim()
        )));
    }
    let jac = u.jacobian(x)?;
    let skew = jac.asymmetry();
    if skew > r(1e-8) {
        return Err(Error::Precondition(format!(
            "Jacobian is not symmetric (defect {}): not a potential graph",
            skew.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let sym = jac.add(&jac.transpose()).scale(r(0.5));
    Ok(sym_eigenvalues(&sym)
        .into_iter()
        .fold(T::zero(), |acc, lam| acc + lam.atan()))
}

// ---------------------------------------------------------------------------
// The scaled Hopf cone

/// The scaled Hopf-cone map ℝ⁴ ∖ {0} → ℝ³,
///   x ↦ (√5/2)|x|·h(x/|x|),  h(z¹,z²) = (2 z̄¹z², |z¹|² − |z²|²),
/// identified via z¹ = x₁+ix₂, z² = x₃+ix₄, so the components are
/// (√5/2)/|x| times the quadratics
///   Q₁ = 2(x₁x₃ + x₂x₄), Q₂ = 2(x₁x₄ − x₂x₃), Q₃ = x₁²+x₂²−x₃²−x₄².
/// Positively 1-homogeneous and Lipschitz, with an isolated singularity at
/// the origin; its graph is minimal but not C¹. Returns the value, the 3×4
/// Jacobian, and the three 4×4 Hessians, all in closed form (differencing
/// a degree-1 homogeneous map near its cone point loses digits).
pub fn lawson_osserman_map<T: Real>(x: &[T]) -> Result<(Vec<T>, Mat<T>, Vec<Mat<T>>)> {
    if x.len() != 4 {
        return Err(Error::DimMismatch(x.len(), 4));
    }
    let rad2 = x.iter().fold(T::zero(), |a, v| a + *v * *v);
    if rad2 < r(1e-300) {
        return Err(Error::AtSingularity(
            x.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
        ));
    }
    let rad = rad2.sqrt();
    let c = r::<T>(5.0).sqrt() * r::<T>(0.5);
    let two = r::<T>(2.0);
    let q = [
        two * (x[0] * x[2] + x[1] * x[3]),
        two * (x[0] * x[3] - x[1] * x[2]),
        x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3],
    ];
    let dq = [
        [two * x[2], two * x[3], two * x[0], two * x[1]],
        [two * x[3], -(two * x[2]), -(two * x[1]), two * x[0]],
        [two * x[0], two * x[1], -(two * x[2]), -(two * x[3])],
    ];
    // constant Hessians of the quadratics
    let z = T::zero();
    let d2q = [
        Mat::from_rows(&[
            vec![z, z, two, z],
            vec![z, z, z, two],
            vec![two, z, z, z],
            vec![z, two, z, z],
        ]),
        Mat::from_rows(&[
            vec![z, z, z, two],
            vec![z, z, -two, z],
            vec![z, -two, z, z],
            vec![two, z, z, z],
        ]),
        Mat::from_rows(&[
            vec![two, z, z, z],
            vec![z, two, z, z],
            vec![z, z, -two, z],
            vec![z, z, z, -two],
        ]),
    ];
    let r3 = rad * rad2;
    let r5 = r3 * rad2;
    let three = r::<T>(3.0);
    let value: Vec<T> = q.iter().map(|&qa| c * qa / rad).collect();
    let mut jac = Mat::zeros(3, 4);
    for a in 0..3 {
        for s in 0..4 {
            jac[(a, s)] = c * (dq[a][s] / rad - q[a] * x[s] / r3);
        }
    }
    let mut hess = Vec::with_capacity(3);
    for a in 0..3 {
        let mut hmat = Mat::zeros(4, 4);
        for s in 0..4 {
            for t in 0..4 {
                let delta = if s == t { T::one() } else { T::zero() };
                hmat[(s, t)] = c
                    * (d2q[a][(s, t)] / rad - dq[a][s] * x[t] / r3 - dq[a][t] * x[s] / r3
                        - q[a] * delta / r3
                        + three * q[a] * x[s] * x[t] / r5);
            }
        }
        hess.push(hmat);
    }
    Ok((value, jac, hess))
}

/// The scaled Hopf cone as a calibrated graph over the annulus
/// 0.1 ≤ |x| ≤ 1 (inner radius excludes the singular origin). The fiber
/// components are reordered to (h₃, −h₂, h₁) and the orientation reversed;
/// that rigid motion aligns the tangent planes with the 4-form returned by
/// [`catalog::coassociative_form`], making the graph calibrated. The motion
/// is orthogonal, so minimality and residuals are unaffected.
pub fn loc_graph<T: Real>() -> Result<GraphMap<T>> {
    let domain = Region::Annulus {
        center: vec![T::zero(); 4],
        inner: r(0.1),
        outer: r(1.0),
    };
    let reorder = |v: Vec<T>| vec![v[2], -v[1], v[0]];
    let u = move |x: &[T]| -> Result<Vec<T>> { Ok(reorder(lawson_osserman_map(x)?.0)) };
    let du = move |x: &[T]| -> Result<Mat<T>> {
        let jac = lawson_osserman_map(x)?.1;
        let rows: Vec<Vec<T>> = vec![
            jac.row(2).to_vec(),
            jac.row(1).iter().map(|v| -*v).collect(),
            jac.row(0).to_vec(),
        ];
        Ok(Mat::from_rows(&rows))
    };
    let d2u = move |x: &[T]| -> Result<Vec<Mat<T>>> {
        let hs = lawson_osserman_map(x)?.2;
        Ok(vec![hs[2].clone(), hs[1].scale(-T::one()), hs[0].clone()])
    };
    Ok(GraphMap::analytic(4, 7, domain, u, du, d2u)?.with_orientation(-1))
}

// ---------------------------------------------------------------------------
// Difference of two minimal graphs: the averaged linear operator

/// Coefficients of a second-order linear operator
///   L(w)^σ = ãⁱʲ ∂ᵢⱼw^σ + Σ_{τ,s} b^σ_{τs} ∂_s w^τ + c·w^σ
/// with the property L(u − v) = mss(u) − mss(v) at the sample point (for
/// codimension one the scalar divergence-form coefficients aⁱʲ are used in
/// place of gⁱʲ). The principal part is the line average of the pointwise
/// coefficients between the two gradients; the first-order part comes from
/// differentiating the coefficients along the same line, so that difference
/// of two minimal graphs satisfies L(u − v) = 0. `c` is always zero: the
/// system has no zero-order dependence on u. The normalization of b is a
/// convention; only the residual identity is canonical.
#[derive(Debug, Clone)]
pub struct DifferenceOperator<T> {
    /// k×k symmetric averaged principal coefficients (shared by all
    /// components: the operator is principally diagonal).
    pub principal: Mat<T>,
    /// One (codim×k) matrix per output component σ: coefficient of ∂_s w^τ.
    pub first_order: Vec<Mat<T>>,
    /// Zero-order coefficient, identically zero.
    pub zero_order: T,
    /// Guaranteed ellipticity bracket [λ, Λ] for the principal part,
    /// computed from the endpoint gradient bounds.
    pub ellipticity: (T, T),
    /// |L(u−v) − (residual(u) − residual(v))|_∞ at the sample point: the
    /// quadrature error in the averaging. Should sit at rounding level.
    pub identity_gap: T,
}

impl<T: Real> DifferenceOperator<T> {
    /// Apply L to a function given by its Jacobian and Hessians at the point.
    pub fn apply(&self, jac: &Mat<T>, hess: &[Mat<T>]) -> Vec<T> {
        let k = self.principal.rows;
        let m = self.first_order.len();
        let mut out = Vec::with_capacity(m);
        for sig in 0..m {
            let mut acc = T::zero();
            for i in 0..k {
                for j in 0..k {
                    acc = acc + self.principal[(i, j)] * hess[sig][(i, j)];
                }
            }
            for tau in 0..m {
                for s in 0..k {
                    acc = acc + self.first_order[sig][(tau, s)] * jac[(tau, s)];
                }
            }
            out.push(acc);
        }
        out
    }
}

/// Build the averaged difference operator for two minimal graphs at x.
/// Both graphs must have matching shape and system residual below
/// [`DIFFERENCE_RESIDUAL_TOL`] at x.
pub fn difference_operator<T: Real>(
    u: &GraphMap<T>,
    v: &GraphMap<T>,
    x: &[T],
) -> Result<DifferenceOperator<T>> {
    if u.base_dim() != v.base_dim() || u.ambient_dim() != v.ambient_dim() {
        return Err(Error::DimMismatch(u.ambient_dim(), v.ambient_dim()));
    }
    let (k, m) = (u.base_dim(), u.codim());
    for (name, g) in [("first", u), ("second", v)] {
        let res = mss_residual(g, x)?;
        let worst = res.iter().fold(T::zero(), |a, b| a.max(b.abs()));
        if worst > r(DIFFERENCE_RESIDUAL_TOL) {
            return Err(Error::Precondition(format!(
                "{name} graph is not minimal at the sample point: residual {}",
                worst.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    let ju = u.jacobian(x)?;
    let jv = v.jacobian(x)?;
    let hu = u.hessians(x)?;
    let hv = v.hessians(x)?;
    let jw = ju.add(&jv.scale(-T::one()));
    let hw: Vec<Mat<T>> = hu
        .iter()
        .zip(&hv)
        .map(|(a, b)| a.add(&b.scale(-T::one())))
        .collect();

    let quad = gauss_legendre_16::<T>();
    let mut principal = Mat::zeros(k, k);
    let mut first_order = vec![Mat::zeros(m, k); m];

    if m == 1 {
        // scalar case: average the divergence-form coefficients aⁱʲ
        let pu = ju.row(0).to_vec();
        let pv = jv.row(0).to_vec();
        let dp: Vec<T> = pu.iter().zip(&pv).map(|(a, b)| *a - *b).collect();
        for &(t, wt) in &quad {
            let pt: Vec<T> = pv.iter().zip(&dp).map(|(a, d)| *a + t * *d).collect();
            let a = mse_coefficients(&pt);
            principal = principal.add(&a.scale(wt));
            let da = mse_coefficient_gradients(&pt);
            // Hessian along the line: D²v + t·D²w
            let mt = hv[0].add(&hw[0].scale(t));
            for (s, das) in da.iter().enumerate() {
                let mut contraction = T::zero();
                for i in 0..k {
                    for j in 0..k {
                        contraction = contraction + das[(i, j)] * mt[(i, j)];
                    }
                }
                first_order[0][(0, s)] = first_order[0][(0, s)] + wt * contraction;
            }
        }
    } else {
        // system case: average the inverse induced metric gⁱʲ, with
        // ∂g⁻¹ = −g⁻¹(∂g)g⁻¹ and (∂g/∂P_{τs})ᵢⱼ = δ_{si}P_{τj} + P_{τi}δ_{sj}
        for &(t, wt) in &quad {
            let pt = jv.add(&jw.scale(t));
            let metric = area_integrand(&pt)?;
            principal = principal.add(&metric.g_inv.scale(wt));
            let mts: Vec<Mat<T>> = hv
                .iter()
                .zip(&hw)
                .map(|(a, b)| a.add(&b.scale(t)))
                .collect();
            for tau in 0..m {
                // β = g⁻¹ · (row τ of P_t)
                let mut beta = vec![T::zero(); k];
                for i in 0..k {
                    for j in 0..k {
                        beta[i] = beta[i] + metric.g_inv[(i, j)] * pt[(tau, j)];
                    }
                }
                for s in 0..k {
                    // α = column s of g⁻¹ (symmetric)
                    let alpha: Vec<T> = (0..k).map(|i| metric.g_inv[(i, s)]).collect();
                    for (sig, mt) in mts.iter().enumerate() {
                        // Σᵢⱼ (∂g⁻¹)ᵢⱼ Mᵢⱼ = −(αᵀMβ + βᵀMα)
                        let mut amb = T::zero();
                        let mut bma = T::zero();
                        for i in 0..k {
                            for j in 0..k {
                                amb = amb + alpha[i] * mt[(i, j)] * beta[j];
                                bma = bma + beta[i] * mt[(i, j)] * alpha[j];
                            }
                        }
                        first_order[sig][(tau, s)] =
                            first_order[sig][(tau, s)] - wt * (amb + bma);
                    }
                }
            }
        }
    }

    let ellipticity = ellipticity_bracket(&ju, &jv, m);

    // consistency of the construction: L(u−v) must reproduce the residual
    // difference up to quadrature error
    let op = DifferenceOperator {
        principal,
        first_order,
        zero_order: T::zero(),
        ellipticity,
        identity_gap: T::zero(),
    };
    let lw = op.apply(&jw, &hw);
    let target: Vec<T> = if m == 1 {
        let hu_scalar = scalar_divergence_residual(&ju, &hu[0]);
        let hv_scalar = scalar_divergence_residual(&jv, &hv[0]);
        vec![hu_scalar - hv_scalar]
    } else {
        let ru = mss_residual(u, x)?;
        let rv = mss_residual(v, x)?;
        ru.iter().zip(&rv).map(|(a, b)| *a - *b).collect()
    };
    let gap = lw
        .iter()
        .zip(&target)
        .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()));
    Ok(DifferenceOperator { identity_gap: gap, ..op })
}

/// aⁱʲ(p) ∂ᵢⱼu: the scalar divergence-form residual (equals the mean
/// curvature of the graph up to the positive factor (1+|p|²)^{1/2} against
/// the system residual).
fn scalar_divergence_residual<T: Real>(jac: &Mat<T>, hess: &Mat<T>) -> T {
    let a = mse_coefficients(jac.row(0));
    let mut acc = T::zero();
    for i in 0..a.rows {
        for j in 0..a.cols {
            acc = acc + a[(i, j)] * hess[(i, j)];
        }
    }
    acc
}

/// Guaranteed eigenvalue bracket for the averaged principal part.
/// Codimension one: eigenvalues of aⁱʲ(p) are exactly (1+|p|²)^{−3/2} and
/// (1+|p|²)^{−1/2}, so the average over the segment p_t = p_v + t(p_u−p_v)
/// lies in [(1+P²)^{−3/2}, (1+m²)^{−1/2}] with P the larger endpoint norm
/// and m the minimum of |p_t| over the segment (a one-variable quadratic).
/// Higher codimension: eigenvalues of (I+PᵀP)⁻¹ lie in [1/(1+‖P‖²_F), 1]
/// and ‖P_t‖²_F is maximized at an endpoint.
fn ellipticity_bracket<T: Real>(ju: &Mat<T>, jv: &Mat<T>, m: usize) -> (T, T) {
    let fro2 = |mat: &Mat<T>| {
        let mut acc = T::zero();
        for i in 0..mat.rows {
            for j in 0..mat.cols {
                acc = acc + mat[(i, j)] * mat[(i, j)];
            }
        }
        acc
    };
    let nu2 = fro2(ju);
    let nv2 = fro2(jv);
    let pmax2 = nu2.max(nv2);
    if m == 1 {
        let pu = ju.row(0);
        let pv = jv.row(0);
        let dp: Vec<T> = pu.iter().zip(pv).map(|(a, b)| *a - *b).collect();
        let d2 = dp.iter().fold(T::zero(), |a, x| a + *x * *x);
        // minimize |p_v + t·dp|² over t ∈ [0,1]
        let tstar = if d2 > T::zero() {
            let cross = pv.iter().zip(&dp).fold(T::zero(), |a, (p, d)| a + *p * *d);
            (-cross / d2).max(T::zero()).min(T::one())
        } else {
            T::zero()
        };
        let pmin: Vec<T> = pv.iter().zip(&dp).map(|(p, d)| *p + tstar * *d).collect();
        let m2 = pmin.iter().fold(T::zero(), |a, x| a + *x * *x);
        let lam = (T::one() + pmax2).powf(r(-1.5));
        let big = (T::one() + m2).sqrt().recip();
        (lam, big)
    } else {
        ((T::one() + pmax2).recip(), T::one())
    }
}

// ---------------------------------------------------------------------------
// Newton solver: grid minimal graphs from Dirichlet data

/// Solve the minimal surface equation on the square [−half, half]² with
/// Dirichlet boundary data, by Newton iteration on the non-divergence form
///   (1+u_y²)u_xx − 2u_xu_yu_xy + (1+u_x²)u_yy = 0
/// over an m×m grid with central differences and a dense LU on the analytic
/// Jacobian, starting from zero interior data. Converges quadratically for
/// boundary slopes of order one. Returns a grid-backed graph.
pub fn solve_mse_dirichlet(
    m: usize,
    half: f64,
    boundary: &dyn Fn(f64, f64) -> f64,
    max_iter: usize,
    tol: f64,
) -> Result<GraphMap<f64>> {
    if m < 5 {
        return Err(Error::BadParameter(format!("solver grid needs m ≥ 5, got {m}")));
    }
    let h = 2.0 * half / (m - 1) as f64;
    let coord = |i: usize| -half + h * i as f64;
    let mut vals = vec![0.0f64; m * m];
    for i in 0..m {
        for j in 0..m {
            if i == 0 || j == 0 || i == m - 1 || j == m - 1 {
                vals[i * m + j] = boundary(coord(i), coord(j));
            }
        }
    }
    let nin = m - 2; // interior nodes per side
    let unknowns = nin * nin;
    let gid = |i: usize, j: usize| (i - 1) * nin + (j - 1);

    for _iter in 0..max_iter {
        // residual and dense Jacobian of the discrete system
        let mut residual = vec![0.0f64; unknowns];
        let mut jac = Mat::<f64>::zeros(unknowns, unknowns);
        let mut worst = 0.0f64;
        for i in 1..m - 1 {
            for j in 1..m - 1 {
                let c = vals[i * m + j];
                let e = vals[(i + 1) * m + j];
                let w = vals[(i - 1) * m + j];
                let n = vals[i * m + j + 1];
                let s = vals[i * m + j - 1];
                let ne = vals[(i + 1) * m + j + 1];
                let nw = vals[(i - 1) * m + j + 1];
                let se = vals[(i + 1) * m + j - 1];
                let sw = vals[(i - 1) * m + j - 1];
                let ux = (e - w) / (2.0 * h);
                let uy = (n - s) / (2.0 * h);
                let uxx = (e - 2.0 * c + w) / (h * h);
                let uyy = (n - 2.0 * c + s) / (h * h);
                let uxy = (ne - nw - se + sw) / (4.0 * h * h);
                let res = (1.0 + uy * uy) * uxx - 2.0 * ux * uy * uxy
                    + (1.0 + ux * ux) * uyy;
                let row = gid(i, j);
                residual[row] = res;
                worst = worst.max(res.abs());
                // chain rule through the five difference quantities
                let duxx = 1.0 / (h * h);
                let duxy = 1.0 / (4.0 * h * h);
                let dux = 1.0 / (2.0 * h);
                let mut add = |ii: usize, jj: usize, dv: f64| {
                    if ii >= 1 && ii <= m - 2 && jj >= 1 && jj <= m - 2 {
                        jac[(row, gid(ii, jj))] += dv;
                    }
                };
                // ∂res/∂ux = −2 uy uxy + 2 ux uyy, etc.
                let r_ux = -2.0 * uy * uxy + 2.0 * ux * uyy;
                let r_uy = 2.0 * uy * uxx - 2.0 * ux * uxy;
                let r_uxx = 1.0 + uy * uy;
                let r_uyy = 1.0 + ux * ux;
                let r_uxy = -2.0 * ux * uy;
                add(i + 1, j, r_ux * dux + r_uxx * duxx);
                add(i - 1, j, -r_ux * dux + r_uxx * duxx);
                add(i, j + 1, r_uy * dux + r_uyy * duxx);
                add(i, j - 1, -r_uy * dux + r_uyy * duxx);
                add(i, j, -2.0 * r_uxx * duxx - 2.0 * r_uyy * duxx);
                add(i + 1, j + 1, r_uxy * duxy);
                add(i - 1, j - 1, r_uxy * duxy);
                add(i + 1, j - 1, -r_uxy * duxy);
                add(i - 1, j + 1, -r_uxy * duxy);
            }
        }
        if worst < tol {
            return GraphMap::from_grid([-half, -half], h, m, vals);
        }
        let rhs: Vec<f64> = residual.iter().map(|v| -v).collect();
        let delta = solve(&jac, &rhs)?;
        for i in 1..m - 1 {
            for j in 1..m - 1 {
                vals[i * m + j] += delta[gid(i, j)];
            }
        }
    }
    Err(Error::NoConvergence(format!(
        "Newton iteration did not reach tolerance {tol} in {max_iter} steps"
    )))
}

/// Continuous graph calibration from a grid-backed scalar graph: central
/// differences give the gradient at interior nodes, bilinear interpolation
/// extends it between them, and the interpolated field drives the graph
/// calibration family. The family has unit comass pointwise for *any*
/// gradient field — interpolation error cannot disturb that — whereas
/// closedness would need the exact solution, so treat the result as a
/// comass-one form, not a closed one. Defined over the sub-square spanned by
/// the interior nodes (times the full vertical line).
pub fn grid_graph_form(u: &GraphMap<f64>) -> Result<FormField<f64>> {
    let Backend::Grid { lo, h, m, vals } = &u.backend else {
        return Err(Error::BadParameter(
            "gradient interpolation needs a grid-backed graph".into(),
        ));
    };
    let (m, h) = (*m, *h);
    if m < 4 {
        return Err(Error::BadParameter(format!(
            "gradient interpolation needs m ≥ 4 so interior nodes span a cell, got {m}"
        )));
    }
    let origin = [lo[0], lo[1]];
    // gradients at the interior nodes, row-major like the values
    let mut gx = vec![0.0f64; m * m];
    let mut gy = vec![0.0f64; m * m];
    for i in 1..m - 1 {
        for j in 1..m - 1 {
            gx[i * m + j] = (vals[(i + 1) * m + j] - vals[(i - 1) * m + j]) / (2.0 * h);
            gy[i * m + j] = (vals[i * m + j + 1] - vals[i * m + j - 1]) / (2.0 * h);
        }
    }
    let du = move |x: &[f64]| -> Result<Vec<f64>> {
        let mut cell = [0usize; 2];
        let mut t = [0.0f64; 2];
        for d in 0..2 {
            let rel = (x[d] - origin[d]) / h;
            // clamp into the interior-node range [1, m−2]
            let rel = rel.clamp(1.0, (m - 2) as f64);
            let base = (rel.floor() as usize).min(m - 3).max(1);
            cell[d] = base;
            t[d] = rel - base as f64;
        }
        let (i, j) = (cell[0], cell[1]);
        let (s, r) = (t[0], t[1]);
        let blend = |f: &[f64]| {
            (1.0 - s) * (1.0 - r) * f[i * m + j]
                + s * (1.0 - r) * f[(i + 1) * m + j]
                + (1.0 - s) * r * f[i * m + j + 1]
                + s * r * f[(i + 1) * m + j + 1]
        };
        Ok(vec![blend(&gx), blend(&gy)])
    };
    let region = Region::Box {
        lo: vec![origin[0] + h, origin[1] + h, -1e12],
        hi: vec![
            origin[0] + h * (m - 2) as f64,
            origin[1] + h * (m - 2) as f64,
            1e12,
        ],
    };
    catalog::graph_form(2, Arc::new(du), region)
}

// ---------------------------------------------------------------------------
// Level-set spot check for the double cone

/// Mean curvature of the level set {Σ₁⁴xᵢ² = Σ₅⁸xᵢ²} ⊂ ℝ⁸ at p, via the
/// divergence of the unit normal of f = |x|²−|y|²:
///   H = (Δf·|∇f|² − ∇fᵀ∇²f∇f)/|∇f|³.
/// The cone is not globally graphical, so minimality is checked this way;
/// H vanishes identically on the cone away from the origin.
pub fn simons_mean_curvature<T: Real>(p: &[T]) -> Result<T> {
    if p.len() != 8 {
        return Err(Error::DimMismatch(p.len(), 8));
    }
    let two = r::<T>(2.0);
    let grad: Vec<T> = (0..8)
        .map(|i| if i < 4 { two * p[i] } else { -(two * p[i]) })
        .collect();
    let g2 = grad.iter().fold(T::zero(), |a, v| a + *v * *v);
    if g2 < r(1e-300) {
        return Err(Error::AtSingularity(
            p.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
        ));
    }
    let laplacian = T::zero(); // Δ(|x|²−|y|²) = 8 − 8
    let mut quad = T::zero(); // ∇fᵀ∇²f∇f with ∇²f = diag(2,…,−2,…)
    for (i, g) in grad.iter().enumerate() {
        let sign = if i < 4 { two } else { -two };
        quad = quad + sign * *g * *g;
    }
    Ok((laplacian * g2 - quad) / (g2.sqrt() * g2))
}

// ---------------------------------------------------------------------------
// Named examples

/// A graph packaged with a form that calibrates it (with its orientation).
pub struct CalibratedExample {
    pub id: String,
    pub graph: GraphMap<f64>,
    pub calibration: FormField<f64>,
}

/// What a verification id denotes: a calibrated graph, or the level-set
/// cone which is checked through its mean curvature instead.
pub enum VerifyTarget {
    Graph(CalibratedExample),
    SimonsCone,
}

/// Resolve a graph-example id:
/// `loc | scherk | slag-quadratic:<c1,c2,…> | holomorphic:<poly in z> |
///  affine:<a1,a2,…> | affine-tilted | simons`.
pub fn verify_target_by_id(id: &str) -> Result<VerifyTarget> {
    if id == "simons" {
        return Ok(VerifyTarget::SimonsCone);
    }
    Ok(VerifyTarget::Graph(example_by_id(id)?))
}

/// Resolve a calibrated-graph id (everything `verify_target_by_id` accepts
/// except the level-set cone).
pub fn example_by_id(id: &str) -> Result<CalibratedExample> {
    let own = |graph: GraphMap<f64>, calibration: FormField<f64>| CalibratedExample {
        id: id.to_string(),
        graph,
        calibration,
    };
    if id == "loc" {
        return Ok(own(loc_graph()?, catalog::coassociative_form()?));
    }
    if id == "scherk" {
        return Ok(own(scherk_graph()?, catalog::scherk_graph_form()?));
    }
    if id == "affine-tilted" {
        return example_by_id("affine:0.3,-0.2").map(|mut ex| {
            ex.id = id.to_string();
            ex
        });
    }
    if let Some(list) = id.strip_prefix("slag-quadratic:") {
        let cs = parse_list(list, id)?;
        return Ok(own(
            potential_quadratic_graph(&cs)?,
            catalog::slag_form(cs.len(), cs.iter().map(|c| c.atan()).sum())?,
        ));
    }
    if let Some(poly) = id.strip_prefix("holomorphic:") {
        let coeffs = parse_polynomial(poly)?;
        return Ok(own(holomorphic_graph(coeffs)?, kahler_interleaved()?));
    }
    if let Some(list) = id.strip_prefix("affine:") {
        let grad = parse_list(list, id)?;
        let k = grad.len();
        // the family's calibrated orientation flips with the parity of the
        // base dimension (the leading coefficient carries (−1)ᵏ)
        let sign = if k % 2 == 0 { 1 } else { -1 };
        return Ok(own(
            affine_graph(&grad)?.with_orientation(sign),
            catalog::graph_form_affine(&grad)?,
        ));
    }
    Err(Error::Malformed(format!("unknown graph id: {id}")))
}

fn parse_list(list: &str, id: &str) -> Result<Vec<f64>> {
    let parsed: std::result::Result<Vec<f64>, _> = list.split(',').map(str::parse).collect();
    parsed.map_err(|_| Error::Malformed(format!("bad number list in {id}")))
}

/// The codimension-one graph of the affine map x ↦ a·x.
pub fn affine_graph(gradient: &[f64]) -> Result<GraphMap<f64>> {
    let k = gradient.len();
    let a = gradient.to_vec();
    let a2 = a.clone();
    let zero_h = move |_: &[f64]| Ok(vec![Mat::zeros(k, k)]);
    GraphMap::analytic(
        k,
        k + 1,
        Region::cube(k, 1.0),
        move |x: &[f64]| Ok(vec![x.iter().zip(&a).map(|(xi, ai)| xi * ai).sum()]),
        move |_: &[f64]| Ok(Mat::from_rows(&[a2.clone()])),
        zero_h,
    )
}

/// Doubly periodic minimal graph u = log(cos x² / cos x¹) on a centered box
/// inside its fundamental domain. Exact solution: Du = (tan x¹, −tan x²).
pub fn scherk_graph() -> Result<GraphMap<f64>> {
    GraphMap::analytic(
        2,
        3,
        Region::cube(2, 1.3),
        |x: &[f64]| Ok(vec![(x[1].cos() / x[0].cos()).ln()]),
        |x: &[f64]| Ok(Mat::from_rows(&[vec![x[0].tan(), -x[1].tan()]])),
        |x: &[f64]| {
            let (cx, cy) = (x[0].cos(), x[1].cos());
            Ok(vec![Mat::from_rows(&[
                vec![1.0 / (cx * cx), 0.0],
                vec![0.0, -1.0 / (cy * cy)],
            ])])
        },
    )
}

/// Lagrangian graph of the potential F = ½Σcᵢ(xᵢ)²: u(x) = (c₁x₁,…,cₙxₙ),
/// special Lagrangian with constant angle Σ arctan cᵢ.
pub fn potential_quadratic_graph(cs: &[f64]) -> Result<GraphMap<f64>> {
    let n = cs.len();
    if n == 0 {
        return Err(Error::ZeroInput("quadratic potential coefficients"));
    }
    let c1 = cs.to_vec();
    let c2 = cs.to_vec();
    let c3n = n;
    GraphMap::analytic(
        n,
        2 * n,
        Region::cube(n, 1.0),
        move |x: &[f64]| Ok(x.iter().zip(&c1).map(|(xi, ci)| xi * ci).collect()),
        move |_: &[f64]| {
            let mut jac = Mat::zeros(c2.len(), c2.len());
            for (i, ci) in c2.iter().enumerate() {
                jac[(i, i)] = *ci;
            }
            Ok(jac)
        },
        move |_: &[f64]| Ok(vec![Mat::zeros(c3n, c3n); c3n]),
    )
}

/// Graph of a polynomial holomorphic map w = f(z) over the z-plane, in real
/// coordinates (Re z, Im z, Re w, Im w). Derivatives follow the
/// Cauchy–Riemann structure: rows of the Jacobian are (Re f′, −Im f′) and
/// (Im f′, Re f′).
pub fn holomorphic_graph(coeffs: Vec<f64>) -> Result<GraphMap<f64>> {
    if coeffs.is_empty() {
        return Err(Error::ZeroInput("polynomial coefficients"));
    }
    let c1 = coeffs.clone();
    let c2 = coeffs.clone();
    let c3 = coeffs;
    let horner = |cs: &[f64], z: num_complex::Complex<f64>| {
        cs.iter()
            .rev()
            .fold(num_complex::Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let derive = |cs: &[f64]| -> Vec<f64> {
        cs.iter()
            .enumerate()
            .skip(1)
            .map(|(p, &c)| c * p as f64)
            .collect()
    };
    GraphMap::analytic(
        2,
        4,
        Region::cube(2, 1.0),
        move |x: &[f64]| {
            let w = horner(&c1, num_complex::Complex::new(x[0], x[1]));
            Ok(vec![w.re, w.im])
        },
        move |x: &[f64]| {
            let d = horner(&derive(&c2), num_complex::Complex::new(x[0], x[1]));
            Ok(Mat::from_rows(&[vec![d.re, -d.im], vec![d.im, d.re]]))
        },
        move |x: &[f64]| {
            let dd = horner(
                &derive(&derive(&c3)),
                num_complex::Complex::new(x[0], x[1]),
            );
            Ok(vec![
                Mat::from_rows(&[vec![dd.re, -dd.im], vec![-dd.im, -dd.re]]),
                Mat::from_rows(&[vec![dd.im, dd.re], vec![dd.re, -dd.im]]),
            ])
        },
    )
}

/// The Kähler form in the interleaved coordinates (Re z¹, Im z¹, Re z², Im z²)
/// used by graph-of-a-holomorphic-map examples: dx¹∧dx² + dx³∧dx⁴.
fn kahler_interleaved() -> Result<FormField<f64>> {
    let omega = KCovector::basis(4, &[1, 2])?.add(&KCovector::basis(4, &[3, 4])?)?;
    Ok(FormField::constant(omega, Region::all(4)))
}

/// Parse a real-coefficient polynomial in z: terms like `z^3`, `-2z`,
/// `0.5z^2`, `+1`, joined by + and −. Returns ascending coefficients.
pub fn parse_polynomial(text: &str) -> Result<Vec<f64>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Malformed("empty polynomial".into()));
    }
    let mut coeffs: Vec<f64> = Vec::new();
    let mut term = String::new();
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !matches!(cleaned.as_bytes()[i - 1], b'e' | b'E') {
            terms.push(term.clone());
            term.clear();
        }
        term.push(ch);
    }
    terms.push(term);
    for t in terms {
        if t.is_empty() || t == "+" || t == "-" {
            return Err(Error::Malformed(format!("bad polynomial term in {text}")));
        }
        let (coeff_text, power) = match t.find('z') {
            None => (t.as_str(), 0usize),
            Some(pos) => {
                let p = match t[pos + 1..].strip_prefix('^') {
                    None if t[pos + 1..].is_empty() => 1usize,
                    Some(exp) => exp
                        .parse()
                        .map_err(|_| Error::Malformed(format!("bad exponent in {t}")))?,
                    None => {
                        return Err(Error::Malformed(format!("bad polynomial term {t}")));
                    }
                };
                (&t[..pos], p)
            }
        };
        let coeff: f64 = match coeff_text {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse()
                .map_err(|_| Error::Malformed(format!("bad coefficient in {t}")))?,
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0.0);
        }
        coeffs[power] += coeff;
    }
    Ok(coeffs)
}

/// All bundled calibrated graph examples (for sweep tests and docs).
pub fn example_ids() -> Vec<&'static str> {
    vec![
        "loc",
        "scherk",
        "affine-tilted",
        "slag-quadratic:0.5,-0.5",
        "slag-quadratic:1,1",
        "holomorphic:z^2",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::plane_angle;

    #[test]
    fn metric_data_basics() {
        let met = area_integrand(&Mat::<f64>::zeros(1, 2)).unwrap();
        assert_eq!(met.area_density, 1.0);
        assert_eq!(met.g, Mat::identity(2));

        // one-dimensional graph of slope one: arclength density √2
        let met = area_integrand(&Mat::from_rows(&[vec![1.0f64]])).unwrap();
        assert!((met.area_density - 2f64.sqrt()).abs() < 1e-15);

        // identity Jacobian in codimension two: density √det(2I) = 2
        let met = area_integrand(&Mat::<f64>::identity(2)).unwrap();
        assert!((met.area_density - 2.0).abs() < 1e-15);

        // SPD and density ≥ 1 on random Jacobians
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let rows: Vec<Vec<f64>> = (0..2)
                .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let met = area_integrand(&Mat::from_rows(&rows)).unwrap();
            assert!(met.area_density >= 1.0 - 1e-12);
            assert!(met.g.asymmetry() == 0.0);
            for lam in sym_eigenvalues(&met.g) {
                assert!(lam > 0.0);
            }
            let prod = met.g.matmul(&met.g_inv);
            assert!(prod.add(&Mat::identity(3).scale(-1.0)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn residual_examples() {
        // affine graphs are exactly minimal
        let aff = affine_graph(&[0.7, -0.4]).unwrap();
        let res = mss_residual(&aff, &[0.2, 0.3]).unwrap();
        assert_eq!(res, vec![0.0]);

        // u = (x₁)² has residual 2·g¹¹
        let parab = GraphMap::analytic(
            2,
            3,
            Region::cube(2, 2.0),
            |x: &[f64]| Ok(vec![x[0] * x[0]]),
            |x: &[f64]| Ok(Mat::from_rows(&[vec![2.0 * x[0], 0.0]])),
            |_: &[f64]| {
                Ok(vec![Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.0]])])
            },
        )
        .unwrap();
        let res = mss_residual(&parab, &[1.0, 0.0]).unwrap();
        assert!((res[0] - 2.0 / 5.0).abs() < 1e-14); // g¹¹ = 1/(1+4)

        // the exact non-affine solution has residual at rounding level
        let scherk = scherk_graph().unwrap();
        for x in scherk.sample_points(25, 7).unwrap() {
            let res = mss_residual(&scherk, &x).unwrap();
            assert!(res[0].abs() < 1e-12, "residual {} at {x:?}", res[0]);
        }
    }

    #[test]
    fn hopf_cone_map_identities() {
        let c = 5f64.sqrt() / 2.0;
        let (val, _, _) = lawson_osserman_map(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(val, vec![0.0, 0.0, c]);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if norm(&x) < 0.05 {
                continue;
            }
            let (val, _, _) = lawson_osserman_map(&x).unwrap();
            // sphere-to-sphere scaling: |value| = (√5/2)|x|
            assert!((norm(&val) - c * norm(&x)).abs() < 1e-12);
            // positive 1-homogeneity
            let xx: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
            let (val2, _, _) = lawson_osserman_map(&xx).unwrap();
            for (a, b) in val.iter().zip(&val2) {
                assert!((2.0 * a - b).abs() < 1e-12);
            }
        }
        assert!(matches!(
            lawson_osserman_map(&[0.0; 4]),
            Err(Error::AtSingularity(_))
        ));
    }

    #[test]
    fn hopf_cone_graph_is_minimal_and_calibrated() {
        let ex = example_by_id("loc").unwrap();
        ex.graph.validate(10, 3).unwrap();
        let samples = ex.graph.sample_points(50, 41).unwrap();
        for x in &samples {
            let res = mss_residual(&ex.graph, x).unwrap();
            let worst = res.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            assert!(worst < 1e-6, "residual {worst} at {x:?}");
        }
        let defect = graph_calibrated_defect(&ex.graph, &ex.calibration, &samples).unwrap();
        assert!(defect.abs() < 1e-6, "defect {defect}");
    }

    #[test]
    fn hopf_cone_domain_gates() {
        let g = loc_graph::<f64>().unwrap();
        assert!(matches!(
            g.value(&[0.05, 0.0, 0.0, 0.0]),
            Err(Error::AtSingularity(_))
        ));
        assert!(matches!(
            g.value(&[1.5, 0.0, 0.0, 0.0]),
            Err(Error::OutsideRegion(_))
        ));
    }

    #[test]
    fn mse_coefficient_matrix() {
        let a = mse_coefficients(&[0.0f64, 0.0]);
        assert!(a.add(&Mat::identity(2).scale(-1.0)).max_abs() < 1e-15);

        // gradient (1,0): eigenvalues 2^{−3/2} along it, 2^{−1/2} across
        let a = mse_coefficients(&[1.0f64, 0.0]);
        assert!((a[(0, 0)] - 2f64.powf(-1.5)).abs() < 1e-15);
        assert!((a[(1, 1)] - 2f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(a[(0, 1)], 0.0);

        // eigenvalue bracket on random gradients
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let p: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let q = 1.0 + p.iter().map(|v| v * v).sum::<f64>();
            let a = mse_coefficients(&p);
            assert!(a.asymmetry() == 0.0);
            for lam in sym_eigenvalues(&a) {
                assert!(lam >= q.powf(-1.5) - 1e-12 && lam <= q.powf(-0.5) + 1e-12);
            }
        }

        // gradient of the coefficients against finite differences
        let p = [0.6f64, -0.3, 0.2];
        let grads = mse_coefficient_gradients(&p);
        let h = 1e-6;
        for s in 0..3 {
            let mut pp = p;
            let mut pm = p;
            pp[s] += h;
            pm[s] -= h;
            let fd = mse_coefficients(&pp).add(&mse_coefficients(&pm).scale(-1.0));
            let diff = fd.scale(1.0 / (2.0 * h)).add(&grads[s].scale(-1.0));
            assert!(diff.max_abs() < 1e-9, "direction {s}: {}", diff.max_abs());
        }

        let holo = example_by_id("holomorphic:z^2").unwrap();
        assert!(mse_coefficients_at(&holo.graph, &[0.1, 0.1]).is_err());
    }

    #[test]
    fn tangent_plane_examples() {
        let flat = affine_graph(&[0.0, 0.0]).unwrap();
        let plane = tangent_plane(&flat, &[0.3, 0.1]).unwrap();
        assert_eq!(plane.plucker.coeff(&[1, 2]), 1.0);

        // 45-degree line
        let diag = affine_graph(&[1.0]).unwrap();
        let plane = tangent_plane(&diag, &[0.5]).unwrap();
        let is = 1.0 / 2f64.sqrt();
        assert!((plane.plucker.coeff(&[1]) - is).abs() < 1e-15);
        assert!((plane.plucker.coeff(&[2]) - is).abs() < 1e-15);

        // complex tangent line of (z, z²) at z = 1: span of (1,0,2,0),(0,1,0,2)
        let holo = example_by_id("holomorphic:z^2").unwrap();
        let plane = tangent_plane(&holo.graph, &[1.0, 0.0]).unwrap();
        let expect =
            plane_from_frame(&[vec![1.0, 0.0, 2.0, 0.0], vec![0.0, 1.0, 0.0, 2.0]]).unwrap();
        // arccos conditioning floors the measurable angle near √ε
        assert!(plane_angle(&plane, &expect).unwrap() < 1e-7);
    }

    #[test]
    fn calibrated_examples_sweep() {
        // every bundled pair is calibrated, and calibrated graphs are minimal
        for id in example_ids() {
            let ex = example_by_id(id).unwrap();
            ex.graph.validate(6, 17).unwrap();
            let samples = ex.graph.sample_points(25, 99).unwrap();
            let defect = graph_calibrated_defect(&ex.graph, &ex.calibration, &samples).unwrap();
            assert!(defect.abs() < 1e-6, "{id}: defect {defect}");
            for x in &samples {
                let res = mss_residual(&ex.graph, x).unwrap();
                let worst = res.iter().fold(0.0f64, |a, b| a.max(b.abs()));
                assert!(worst < 1e-3, "{id}: residual {worst} at {x:?}");
            }
        }
    }

    #[test]
    fn lagrangian_angle() {
        // potential |x|²/2 in n = 3: angle 3·π/4
        let ex = potential_quadratic_graph(&[1.0, 1.0, 1.0]).unwrap();
        let phase = slag_phase(&ex, &[0.2, -0.1, 0.4]).unwrap();
        assert!((phase - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-12);

        // harmonic quadratic: angle zero
        let ex = potential_quadratic_graph(&[1.0, -1.0]).unwrap();
        assert!(slag_phase(&ex, &[0.3, 0.3]).unwrap().abs() < 1e-12);

        // diagonal potential: sum of arctangents
        let cs = [0.5, -0.25, 2.0];
        let ex = potential_quadratic_graph(&cs).unwrap();
        let want: f64 = cs.iter().map(|c| c.atan()).sum();
        assert!((slag_phase(&ex, &[0.0, 0.0, 0.0]).unwrap() - want).abs() < 1e-12);

        // non-Lagrangian graph rejected
        let holo = example_by_id("holomorphic:z^2").unwrap();
        assert!(matches!(
            slag_phase(&holo.graph, &[0.5, 0.5]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn difference_operator_identities() {
        // u = v: principal part equals the pointwise coefficients
        let scherk = scherk_graph().unwrap();
        let x = [0.4, -0.2];
        let op = difference_operator(&scherk, &scherk, &x).unwrap();
        let a = mse_coefficients_at(&scherk, &x).unwrap();
        assert!(op.principal.add(&a.scale(-1.0)).max_abs() < 1e-13);
        assert!(op.identity_gap < 1e-13);
        assert_eq!(op.zero_order, 0.0);
        assert!(op.principal.asymmetry() < 1e-15);

        // two affine graphs: L(u−v) = 0 exactly
        let u = affine_graph(&[0.5, 0.1]).unwrap();
        let v = affine_graph(&[-0.2, 0.3]).unwrap();
        let op = difference_operator(&u, &v, &[0.0, 0.0]).unwrap();
        assert_eq!(op.identity_gap, 0.0);
        let (lam, big) = op.ellipticity;
        for ev in sym_eigenvalues(&op.principal) {
            assert!(ev >= lam - 1e-12 && ev <= big + 1e-12);
        }

        // distinct exact solutions, non-constant Hessians
        let u = scherk_graph().unwrap();
        let v = affine_graph(&[0.25, -0.3]).unwrap();
        for x in u.sample_points(40, 13).unwrap() {
            if !(v.domain().contains(&x)) {
                continue;
            }
            let op = difference_operator(&u, &v, &x).unwrap();
            assert!(op.identity_gap < 1e-10, "gap {} at {x:?}", op.identity_gap);
            let (lam, big) = op.ellipticity;
            assert!(lam > 0.0 && big >= lam);
            for ev in sym_eigenvalues(&op.principal) {
                assert!(ev >= lam - 1e-10 && ev <= big + 1e-10, "{ev} ∉ [{lam}, {big}]");
            }
        }

        // higher codimension: two holomorphic graphs
        let u = example_by_id("holomorphic:z^2").unwrap().graph;
        let v = holomorphic_graph(vec![0.0, 0.3, 1.0]).unwrap(); // z² + 0.3z
        for x in u.sample_points(25, 19).unwrap() {
            let op = difference_operator(&u, &v, &x).unwrap();
            assert!(op.identity_gap < 1e-10, "gap {} at {x:?}", op.identity_gap);
            assert!(op.principal.asymmetry() < 1e-14);
            let (lam, big) = op.ellipticity;
            for ev in sym_eigenvalues(&op.principal) {
                assert!(ev >= lam - 1e-10 && ev <= big + 1e-10);
            }
        }

        // the minimality precondition is enforced
        let bent = GraphMap::analytic(
            2,
            3,
            Region::cube(2, 1.0),
            |x: &[f64]| Ok(vec![x[0] * x[0]]),
            |x: &[f64]| Ok(Mat::from_rows(&[vec![2.0 * x[0], 0.0]])),
            |_: &[f64]| Ok(vec![Mat::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.0]])]),
        )
        .unwrap();
        let aff = affine_graph(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            difference_operator(&bent, &aff, &[0.5, 0.5]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn newton_solver_and_grid_graphs() {
        let u = solve_mse_dirichlet(
            25,
            1.1,
            &|x, y| 0.3 * (x * x - y * y),
            30,
            1e-11,
        )
        .unwrap();
        let v = solve_mse_dirichlet(
            25,
            1.1,
            &|x, y| 0.25 * x * y + 0.1 * x,
            30,
            1e-11,
        )
        .unwrap();

        // solutions satisfy the system at their own grid scale
        let mut inside = Vec::new();
        for p in u.sample_points(400, 3).unwrap() {
            if norm(&p) <= 1.0 && !inside.contains(&p) {
                inside.push(p);
            }
            if inside.len() == 100 {
                break;
            }
        }
        assert!(inside.len() >= 100, "not enough disc nodes: {}", inside.len());
        for x in &inside {
            let res = mss_residual(&u, x).unwrap();
            assert!(res[0].abs() < 1e-9, "residual {} at {x:?}", res[0]);
            let op = difference_operator(&u, &v, x).unwrap();
            assert!(op.identity_gap < 1e-8, "gap {} at {x:?}", op.identity_gap);
            let (lam, big) = op.ellipticity;
            for ev in sym_eigenvalues(&op.principal) {
                assert!(ev >= lam - 1e-10 && ev <= big + 1e-10);
            }
        }

        // off-node evaluation is rejected, boundary nodes have no Hessian
        assert!(matches!(u.value(&[0.123, 0.456]), Err(Error::OffGrid(_))));
        assert!(u.value(&[-1.1, -1.1]).is_ok());
        assert!(u.jacobian(&[-1.1, -1.1]).is_err());
    }

    #[test]
    fn interpolated_grid_form_has_unit_coefficients() {
        let u = solve_mse_dirichlet(15, 1.0, &|x, y| 0.4 * (x + y * y), 30, 1e-11).unwrap();
        let phi = grid_graph_form(&u).unwrap();
        assert_eq!(phi.degree(), 2);
        assert_eq!(phi.dim(), 3);

        // every 2-covector on ℝ³ is simple, so comass = coefficient norm; the
        // family normalizes that to one for any gradient field
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let q = [
                rng.gen_range(-0.85..0.85),
                rng.gen_range(-0.85..0.85),
                rng.gen_range(-3.0..3.0),
            ];
            let cov = phi.at(&q).unwrap();
            assert!((cov.norm_squared().sqrt() - 1.0).abs() < 1e-12);
        }

        // at an interior grid node the interpolant reproduces the node
        // gradient, so the form agrees with the affine family built there
        let x = [u.sample_points(1, 4).unwrap()[0][0], 0.0];
        let node = [x[0], 0.0];
        let jac = u.jacobian(&node).unwrap();
        let exact = catalog::graph_form_affine(&[jac[(0, 0)], jac[(0, 1)]]).unwrap();
        let q = [node[0], node[1], 0.3];
        let diff = phi.at(&q).unwrap().sub(&exact.at(&q).unwrap()).unwrap();
        assert!(diff.norm_squared().sqrt() < 1e-12);

        // outside the interior sub-square the field is undefined
        assert!(phi.at(&[1.0, 0.0, 0.0]).is_err());

        // analytic graphs are rejected
        assert!(grid_graph_form(&affine_graph(&[0.1]).unwrap()).is_err());
    }

    #[test]
    fn cone_level_set_is_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..40 {
            // random point with |x-half| = |y-half|
            let mut p: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let nx = norm(&p[..4]);
            let ny = norm(&p[4..]);
            if nx < 0.1 || ny < 0.1 {
                continue;
            }
            for v in &mut p[4..] {
                *v *= nx / ny;
            }
            let h = simons_mean_curvature(&p).unwrap();
            assert!(h.abs() < 1e-8, "H = {h} at {p:?}");
        }
        // away from the cone the level sets of |x|²−|y|² are not minimal
        let off: f64 =
            simons_mean_curvature(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]).unwrap();
        assert!(off.abs() > 1e-3);
        assert!(matches!(
            simons_mean_curvature(&[0.0; 8]),
            Err(Error::AtSingularity(_))
        ));
    }

    #[test]
    fn polynomial_parser() {
        assert_eq!(parse_polynomial("z^2").unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(parse_polynomial("z^3-z").unwrap(), vec![0.0, -1.0, 0.0, 1.0]);
        assert_eq!(parse_polynomial("2z^2+0.5").unwrap(), vec![0.5, 0.0, 2.0]);
        assert_eq!(parse_polynomial("-z").unwrap(), vec![0.0, -1.0]);
        assert_eq!(parse_polynomial("1e-2z").unwrap(), vec![0.0, 0.01]);
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("z^").is_err());
        assert!(parse_polynomial("w^2").is_err());
    }

    #[test]
    fn verify_target_ids() {
        assert!(matches!(
            verify_target_by_id("simons").unwrap(),
            VerifyTarget::SimonsCone
        ));
        assert!(matches!(
            verify_target_by_id("loc").unwrap(),
            VerifyTarget::Graph(_)
        ));
        assert!(verify_target_by_id("nonsense").is_err());
        let tilted = example_by_id("affine-tilted").unwrap();
        assert_eq!(tilted.id, "affine-tilted");
        let samples = tilted.graph.sample_points(5, 1).unwrap();
        let defect = graph_calibrated_defect(&tilted.graph, &tilted.calibration, &samples).unwrap();
        assert!(defect.abs() < 1e-12);
    }

    #[test]
    fn validate_catches_wrong_derivatives() {
        let bad = GraphMap::analytic(
            1,
            2,
            Region::cube(1, 1.0),
            |x: &[f64]| Ok(vec![x[0] * x[0]]),
            |_: &[f64]| Ok(Mat::from_rows(&[vec![0.123]])), // wrong slope
            |_: &[f64]| Ok(vec![Mat::from_rows(&[vec![2.0]])]),
        )
        .unwrap();
        assert!(matches!(bad.validate(10, 1), Err(Error::Precondition(_))));
    }
}
