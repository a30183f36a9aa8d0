//! Integer simplicial chains in ℝⁿ: oriented complexes with exact integer
//! boundary matrices, chain mass, pairing with form fields by simplex
//! quadrature, calibration defects, ball-density estimates, exact integer
//! cycle filling, cones, and Stokes checks.
//!
//! Orientation convention: a simplex is a vertex tuple; its orientation
//! k-vector is the normalized wedge of edge vectors out of the first vertex,
//! and ∂[v₀…v_k] = Σᵢ (−1)ⁱ [v₀…v̂ᵢ…v_k] with signs resolved against the
//! stored tuple of each face.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{pair as pair_tensors, KVector};
use crate::forms::{comass_at, exterior_derivative_numeric, ComassOptions, FormField};
use crate::grassmann::frame_wedge;
use crate::quadrature::{grundmann_moller, DEFAULT_SIMPLEX_STRENGTH};
use crate::scalar::{r, Real};

/// Comass slack allowed when a form is used as a calibration on a chain.
pub const DEFECT_COMASS_TOL: f64 = 1e-6;

/// Subdivision depth for ball clipping in density estimates: each simplex is
/// split at edge midpoints this many times (4 levels ⇒ 256 pieces of a
/// triangle), and each piece counts by its centroid.
pub const DENSITY_SUBDIVISION_LEVELS: usize = 4;

// ---------------------------------------------------------------------------
// Complex

/// An embedded simplicial complex: vertices in ℝⁿ and oriented simplices per
/// degree, closed under faces, with exact integer incidence matrices and
/// per-simplex volume and unit orientation k-vector.
#[derive(Debug)]
pub struct SimplicialComplex<T: Real> {
    dim: usize,
    vertices: Vec<Vec<T>>,
    /// simplices[k] = oriented vertex tuples of the k-simplices
    simplices: Vec<Vec<Vec<usize>>>,
    /// sorted-tuple → index lookup per degree
    lookup: Vec<BTreeMap<Vec<usize>, usize>>,
    /// incidence[k][j] = sparse column of ∂ for k-simplex j: (face index, ±1)
    incidence: Vec<Vec<Vec<(usize, i64)>>>,
    volumes: Vec<Vec<T>>,
    orientations: Vec<Vec<KVector<T>>>,
}

impl<T: Real> SimplicialComplex<T> {
    /// Build from vertices and declared oriented simplices (any degrees).
    /// All faces are generated automatically; every vertex becomes a
    /// 0-simplex. Declared tuples fix the orientation of their simplex;
    /// re-declaring one with opposite parity is an error.
    pub fn new(
        dim: usize,
        vertices: Vec<Vec<T>>,
        declared: &[(usize, Vec<Vec<usize>>)],
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::ZeroInput("vertex list"));
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimMismatch(v.len(), dim));
            }
        }
        let max_declared = declared.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let top = max_declared.max(0);
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
        let mut lookup: Vec<BTreeMap<Vec<usize>, usize>> = vec![BTreeMap::new(); top + 1];

        // all vertices are 0-simplices, in vertex order
        for i in 0..vertices.len() {
            lookup[0].insert(vec![i], i);
            simplices[0].push(vec![i]);
        }

        // `is_declared`: declared tuples fix orientation, so re-declaring
        // one with opposite parity is an error; auto-generated faces of two
        // neighbors legitimately arrive with both parities (that opposite
        // traversal is exactly what makes shared faces cancel in ∂).
        let add = |k: usize,
                   tuple: Vec<usize>,
                   is_declared: bool,
                   simplices: &mut Vec<Vec<Vec<usize>>>,
                   lookup: &mut Vec<BTreeMap<Vec<usize>, usize>>|
         -> Result<()> {
            if tuple.len() != k + 1 {
                return Err(Error::Malformed(format!(
                    "degree-{k} simplex needs {} vertices, got {tuple:?}",
                    k + 1
                )));
            }
            let mut key = tuple.clone();
            key.sort_unstable();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!("repeated vertex in simplex {tuple:?}")));
            }
            if *key.last().unwrap() >= vertices.len() {
                return Err(Error::Malformed(format!(
                    "simplex {tuple:?} references a missing vertex"
                )));
            }
            match lookup[k].get(&key) {
                None => {
                    lookup[k].insert(key, simplices[k].len());
                    simplices[k].push(tuple);
                    Ok(())
                }
                Some(&idx) => {
                    if is_declared && permutation_sign(&simplices[k][idx], &tuple) != 1 {
                        return Err(Error::Malformed(format!(
                            "simplex {tuple:?} re-declared with opposite orientation"
                        )));
                    }
                    Ok(())
                }
            }
        };

        for (k, tuples) in declared {
            if *k == 0 {
                continue; // vertices are already in
            }
            for t in tuples {
                add(*k, t.clone(), true, &mut simplices, &mut lookup)?;
            }
        }
        // face closure, top degree downwards
        for k in (1..=top).rev() {
            let mut idx = 0;
            while idx < simplices[k].len() {
                let tuple = simplices[k][idx].clone();
                for omit in 0..tuple.len() {
                    let face: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != omit)
                        .map(|(_, v)| *v)
                        .collect();
                    if k >= 1 && face.len() >= 2 {
                        add(k - 1, face, false, &mut simplices, &mut lookup)?;
                    }
                }
                idx += 1;
            }
        }

        // incidence matrices
        let mut incidence: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); top + 1];
        for k in 1..=top {
            for tuple in &simplices[k] {
                let mut col = Vec::with_capacity(k + 1);
                for omit in 0..=k {
                    let face: Vec<usize> = tuple
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != omit)
                        .map(|(_, v)| *v)
                        .collect();
                    let mut key = face.clone();
                    key.sort_unstable();
                    let fidx = *lookup[k - 1].get(&key).expect("face closure");
                    let sign = if omit % 2 == 0 { 1i64 } else { -1 }
                        * i64::from(permutation_sign(&simplices[k - 1][fidx], &face));
                    col.push((fidx, sign));
                }
                col.sort_unstable();
                incidence[k].push(col);
            }
        }
        // ∂∘∂ = 0, exactly
        for k in 2..=top {
            for (j, col) in incidence[k].iter().enumerate() {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(f, s1) in col {
                    for &(g, s2) in &incidence[k - 1][f] {
                        *acc.entry(g).or_insert(0) += s1 * s2;
                    }
                }
                if acc.values().any(|v| *v != 0) {
                    return Err(Error::Malformed(format!(
                        "boundary-of-boundary nonzero at degree {k}, simplex {j}"
                    )));
                }
            }
        }

        // volumes and orientation k-vectors
        let mut volumes: Vec<Vec<T>> = Vec::with_capacity(top + 1);
        let mut orientations: Vec<Vec<KVector<T>>> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut vols = Vec::with_capacity(simplices[k].len());
            let mut oris = Vec::with_capacity(simplices[k].len());
            for tuple in &simplices[k] {
                if k == 0 {
                    vols.push(T::one());
                    oris.push(KVector::basis(dim, &[])?);
                    continue;
                }
                let base = &vertices[tuple[0]];
                let edges: Vec<Vec<T>> = tuple[1..]
                    .iter()
                    .map(|&v| {
                        vertices[v]
                            .iter()
                            .zip(base)
                            .map(|(a, b)| *a - *b)
                            .collect()
                    })
                    .collect();
                let wedge = frame_wedge(&edges, dim)?;
                let wnorm = wedge.norm_squared().sqrt();
                if wnorm < r(1e-12) {
                    return Err(Error::DegenerateSimplex(k, tuple.clone()));
                }
                vols.push(wnorm / r(factorial(k)));
                oris.push(wedge.scale(&wnorm.recip()));
            }
            volumes.push(vols);
            orientations.push(oris);
        }

        Ok(SimplicialComplex { dim, vertices, simplices, lookup, incidence, volumes, orientations })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<T>] {
        &self.vertices
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplex(&self, k: usize, idx: usize) -> Result<&[usize]> {
        self.simplices
            .get(k)
            .and_then(|s| s.get(idx))
            .map(Vec::as_slice)
            .ok_or(Error::MissingSimplex(idx, k))
    }

    pub fn volume(&self, k: usize, idx: usize) -> Result<T> {
        self.volumes
            .get(k)
            .and_then(|s| s.get(idx))
            .copied()
            .ok_or(Error::MissingSimplex(idx, k))
    }

    /// Unit simple k-vector orienting the simplex.
    pub fn orientation(&self, k: usize, idx: usize) -> Result<&KVector<T>> {
        self.orientations
            .get(k)
            .and_then(|s| s.get(idx))
            .ok_or(Error::MissingSimplex(idx, k))
    }

    /// Sparse boundary columns at degree k: entry j lists (face, ±1) of
    /// k-simplex j.
    pub fn boundary_columns(&self, k: usize) -> &[Vec<(usize, i64)>] {
        self.incidence.get(k).map_or(&[], Vec::as_slice)
    }

    /// Find a simplex by vertex tuple; returns its index and the parity of
    /// the given tuple against the stored orientation.
    pub fn find(&self, k: usize, tuple: &[usize]) -> Option<(usize, i64)> {
        let mut key = tuple.to_vec();
        key.sort_unstable();
        let idx = *self.lookup.get(k)?.get(&key)?;
        Some((idx, i64::from(permutation_sign(&self.simplices[k][idx], tuple))))
    }

    pub fn centroid(&self, k: usize, idx: usize) -> Result<Vec<T>> {
        let tuple = self.simplex(k, idx)?;
        let mut c = vec![T::zero(); self.dim];
        for &v in tuple {
            for (ci, xi) in c.iter_mut().zip(&self.vertices[v]) {
                *ci = *ci + *xi;
            }
        }
        let scale = r::<T>(tuple.len() as f64).recip();
        Ok(c.into_iter().map(|x| x * scale).collect())
    }

    /// Axis-aligned bounding box of the vertex set.
    pub fn bounding_box(&self) -> (Vec<T>, Vec<T>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for d in 0..self.dim {
                lo[d] = lo[d].min(v[d]);
                hi[d] = hi[d].max(v[d]);
            }
        }
        (lo, hi)
    }

    /// Parse the JSON interchange format
    /// `{"dim": n, "vertices": [[…]], "simplices": {"k": [[v…]]}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let vertices: Vec<Vec<T>> = file
            .vertices
            .iter()
            .map(|v| v.iter().map(|&x| r(x)).collect())
            .collect();
        let mut declared: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        for (key, tuples) in file.simplices {
            let k: usize = key
                .parse()
                .map_err(|_| Error::Malformed(format!("bad degree key {key:?}")))?;
            declared.push((k, tuples));
        }
        declared.sort_by_key(|(k, _)| *k);
        Self::new(file.dim, vertices, &declared)
    }

    /// Serialize all simplices of degree ≥ 1 (faces included) to the
    /// interchange format; loading it back reproduces the complex.
    pub fn to_json(&self) -> String {
        let file = ComplexFile {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
                .collect(),
            simplices: (1..=self.max_degree())
                .filter(|&k| self.num_simplices(k) > 0)
                .map(|k| (k.to_string(), self.simplices[k].clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("complex serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    simplices: BTreeMap<String, Vec<Vec<usize>>>,
}

/// Sign of the permutation taking `a` to `b` (same distinct elements);
/// 0 never occurs for valid input.
fn permutation_sign(a: &[usize], b: &[usize]) -> i8 {
    debug_assert_eq!(a.len(), b.len());
    let positions: Vec<usize> = b
        .iter()
        .map(|x| a.iter().position(|y| y == x).expect("same vertex set"))
        .collect();
    let mut inversions = 0usize;
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            if positions[i] > positions[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

// ---------------------------------------------------------------------------
// Chains

/// Integer chain: a sparse integer coefficient per simplex of one degree.
#[derive(Debug, Clone)]
pub struct Chain<T: Real> {
    complex: Arc<SimplicialComplex<T>>,
    degree: usize,
    coeffs: BTreeMap<usize, i64>,
}

impl<T: Real> PartialEq for Chain<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex)
            && self.degree == other.degree
            && self.coeffs == other.coeffs
    }
}

#[derive(Serialize, Deserialize)]
struct ChainFile {
    degree: usize,
    coeffs: Vec<(usize, i64)>,
}

impl<T: Real> Chain<T> {
    pub fn zero(complex: Arc<SimplicialComplex<T>>, degree: usize) -> Self {
        Chain { complex, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(
        complex: Arc<SimplicialComplex<T>>,
        degree: usize,
        coeffs: &[(usize, i64)],
    ) -> Result<Self> {
        let mut chain = Self::zero(complex, degree);
        for &(idx, c) in coeffs {
            if idx >= chain.complex.num_simplices(degree) {
                return Err(Error::MissingSimplex(idx, degree));
            }
            if c != 0 {
                *chain.coeffs.entry(idx).or_insert(0) += c;
            }
        }
        chain.coeffs.retain(|_, c| *c != 0);
        Ok(chain)
    }

    /// Build by oriented vertex tuples; tuple parity against the stored
    /// simplex is folded into the coefficient.
    pub fn from_tuples(
        complex: Arc<SimplicialComplex<T>>,
        degree: usize,
        entries: &[(&[usize], i64)],
    ) -> Result<Self> {
        let mut pairs = Vec::with_capacity(entries.len());
        for (tuple, c) in entries {
            let (idx, sign) = complex
                .find(degree, tuple)
                .ok_or_else(|| Error::Malformed(format!("no simplex with vertices {tuple:?}")))?;
            pairs.push((idx, sign * c));
        }
        Self::from_coeffs(complex, degree, &pairs)
    }

    pub fn complex(&self) -> &Arc<SimplicialComplex<T>> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, idx: usize) -> i64 {
        self.coeffs.get(&idx).copied().unwrap_or(0)
    }

    /// Sorted (index, coefficient) pairs — the canonical form.
    pub fn entries(&self) -> Vec<(usize, i64)> {
        self.coeffs.iter().map(|(&i, &c)| (i, c)).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.complex, &other.complex) {
            return Err(Error::BadParameter("chains live on different complexes".into()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (&i, &c) in &other.coeffs {
            *out.coeffs.entry(i).or_insert(0) += c;
        }
        out.coeffs.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = self.clone();
        if s == 0 {
            out.coeffs.clear();
        } else {
            for c in out.coeffs.values_mut() {
                *c *= s;
            }
        }
        out
    }

    /// ∂T, by exact integer incidence arithmetic.
    pub fn boundary(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::BadParameter("0-chains have no boundary".into()));
        }
        let cols = self.complex.boundary_columns(self.degree);
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for (&j, &c) in &self.coeffs {
            for &(f, s) in &cols[j] {
                *acc.entry(f).or_insert(0) += s * c;
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(Chain { complex: Arc::clone(&self.complex), degree: self.degree - 1, coeffs: acc })
    }

    /// Σ |coefficient| · volume.
    pub fn mass(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, (&i, &c)| {
            acc + r::<T>(c.abs() as f64) * self.complex.volumes[self.degree][i]
        })
    }

    pub fn from_json(complex: Arc<SimplicialComplex<T>>, text: &str) -> Result<Self> {
        let file: ChainFile =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_coeffs(complex, file.degree, &file.coeffs)
    }

    pub fn to_json(&self) -> String {
        let file = ChainFile { degree: self.degree, coeffs: self.entries() };
        serde_json::to_string_pretty(&file).expect("chain serialization")
    }
}

// ---------------------------------------------------------------------------
// Pairing with form fields

/// ∫_T φ: per-simplex Gauss quadrature of ⟨φ_p, ξ_σ⟩ times coefficient and
/// volume. `strength` is the simplex-rule strength (degree-(2s+1) exact).
pub fn pair_form<T: Real>(chain: &Chain<T>, phi: &FormField<T>, strength: usize) -> Result<T> {
    let k = chain.degree();
    if phi.degree() != k {
        return Err(Error::DegreeMismatch(phi.degree(), k));
    }
    if phi.dim() != chain.complex().dim() {
        return Err(Error::DimMismatch(phi.dim(), chain.complex().dim()));
    }
    let rule = if k == 0 { vec![(vec![1.0], 1.0)] } else { grundmann_moller(k, strength) };
    let complex = chain.complex();
    let mut total = T::zero();
    for (idx, c) in chain.entries() {
        let tuple = complex.simplex(k, idx)?;
        let vol = complex.volume(k, idx)?;
        let xi = complex.orientation(k, idx)?;
        let mut integral = T::zero();
        for (bary, w) in &rule {
            let mut p = vec![T::zero(); complex.dim()];
            for (b, &v) in bary.iter().zip(tuple) {
                for (pi, xi_coord) in p.iter_mut().zip(&complex.vertices()[v]) {
                    *pi = *pi + r::<T>(*b) * *xi_coord;
                }
            }
            let cov = phi.at(&p)?;
            integral = integral + r::<T>(*w) * pair_tensors(&cov, xi)?;
        }
        total = total + r::<T>(c as f64) * vol * integral;
    }
    Ok(total)
}

/// mass(T) − T(φ) for a (sampled) comass-≤1 field φ: nonnegative up to
/// quadrature error, and ≈ 0 exactly when φ calibrates the chain. The comass
/// is spot-checked at support centroids first.
pub fn calibration_defect<T: Real>(
    chain: &Chain<T>,
    phi: &FormField<T>,
    opts: &ComassOptions,
) -> Result<T> {
    let k = chain.degree();
    for idx in chain.support() {
        let c = chain.complex().centroid(k, idx)?;
        let comass = comass_at(phi, &c, opts)?;
        if comass.to_f64().unwrap_or(f64::INFINITY) > 1.0 + DEFECT_COMASS_TOL {
            return Err(Error::ComassViolation(comass.to_f64().unwrap_or(f64::NAN)));
        }
    }
    Ok(chain.mass() - pair_form(chain, phi, DEFAULT_SIMPLEX_STRENGTH)?)
}

// ---------------------------------------------------------------------------
// Density

/// Ball-density estimates 𝕄(T ∩ B_r(p)) / (ω_k rᵏ) for each radius, by
/// fixed-depth midpoint subdivision of each support simplex with centroid
/// membership (supported for curves and surfaces, k ∈ {1, 2}).
pub fn density_estimate<T: Real>(chain: &Chain<T>, p: &[T], radii: &[f64]) -> Result<Vec<T>> {
    let k = chain.degree();
    if !(1..=2).contains(&k) {
        return Err(Error::BadParameter(format!(
            "density subdivision covers degrees 1 and 2, got {k}"
        )));
    }
    let complex = chain.complex();
    if p.len() != complex.dim() {
        return Err(Error::DimMismatch(p.len(), complex.dim()));
    }
    let (lo, hi) = complex.bounding_box();
    for d in 0..complex.dim() {
        if p[d] < lo[d] || p[d] > hi[d] {
            return Err(Error::OutsideRegion(
                p.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect(),
            ));
        }
    }
    let diameter: T = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| (*b - *a) * (*b - *a))
        .fold(T::zero(), |acc, x| acc + x)
        .sqrt();
    for &r_query in radii {
        if r_query <= 0.0 || r::<T>(r_query) > diameter {
            return Err(Error::BadParameter(format!(
                "radius {r_query} outside the complex extent"
            )));
        }
    }

    // collect pieces (vertex coordinate tuples + measure) once
    let mut pieces: Vec<(Vec<Vec<T>>, T)> = Vec::new();
    for (idx, c) in chain.entries() {
        let tuple = complex.simplex(k, idx)?;
        let vol = complex.volume(k, idx)?;
        let corners: Vec<Vec<T>> = tuple.iter().map(|&v| complex.vertices()[v].clone()).collect();
        let mult = r::<T>(c.abs() as f64);
        let mut level: Vec<Vec<Vec<T>>> = vec![corners];
        for _ in 0..DENSITY_SUBDIVISION_LEVELS {
            let mut next = Vec::with_capacity(level.len() * 4);
            for s in &level {
                subdivide(s, &mut next);
            }
            level = next;
        }
        let piece_vol = vol * mult / r::<T>(level.len() as f64);
        for s in level {
            pieces.push((s, piece_vol));
        }
    }

    let unit_ball = match k {
        1 => 2.0,
        _ => std::f64::consts::PI,
    };
    let mut out = Vec::with_capacity(radii.len());
    for &r_query in radii {
        let rq = r::<T>(r_query);
        let mut mass_in = T::zero();
        for (corners, vol) in &pieces {
            let mut centroid = vec![T::zero(); complex.dim()];
            for corner in corners {
                for (ci, xi) in centroid.iter_mut().zip(corner) {
                    *ci = *ci + *xi;
                }
            }
            let inv = r::<T>(corners.len() as f64).recip();
            let d2 = centroid
                .iter()
                .zip(p)
                .map(|(ci, pi)| {
                    let d = *ci * inv - *pi;
                    d * d
                })
                .fold(T::zero(), |a, b| a + b);
            if d2.sqrt() <= rq {
                mass_in = mass_in + *vol;
            }
        }
        out.push(mass_in / (r::<T>(unit_ball) * rq.powi(k as i32)));
    }
    Ok(out)
}

/// Midpoint subdivision: 2 children for a segment, 4 for a triangle.
fn subdivide<T: Real>(corners: &[Vec<T>], out: &mut Vec<Vec<Vec<T>>>) {
    let mid = |a: &[T], b: &[T]| -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| (*x + *y) * r::<T>(0.5)).collect()
    };
    match corners.len() {
        2 => {
            let m = mid(&corners[0], &corners[1]);
            out.push(vec![corners[0].clone(), m.clone()]);
            out.push(vec![m, corners[1].clone()]);
        }
        3 => {
            let ab = mid(&corners[0], &corners[1]);
            let bc = mid(&corners[1], &corners[2]);
            let ac = mid(&corners[0], &corners[2]);
            out.push(vec![corners[0].clone(), ab.clone(), ac.clone()]);
            out.push(vec![ab.clone(), corners[1].clone(), bc.clone()]);
            out.push(vec![ac.clone(), bc.clone(), corners[2].clone()]);
            out.push(vec![ab, bc, ac]);
        }
        _ => unreachable!("density subdivision is limited to degrees 1 and 2"),
    }
}

// ---------------------------------------------------------------------------
// Cycle filling (exact integer linear algebra)

/// Solve ∂S = T for an integer (k+1)-chain S, or prove there is none.
/// Exact big-integer column elimination; an infeasible system means the
/// cycle represents nontrivial homology of the complex.
pub fn fill_cycle<T: Real>(chain: &Chain<T>) -> Result<Chain<T>> {
    let k = chain.degree();
    if k >= 1 {
        let bnd = chain.boundary()?;
        if !bnd.is_zero() {
            return Err(Error::NotACycle(bnd.support().len()));
        }
    }
    let complex = chain.complex();
    let rows = complex.num_simplices(k);
    let cols = if k + 1 <= complex.max_degree() { complex.num_simplices(k + 1) } else { 0 };
    if chain.is_zero() {
        return Ok(Chain::zero(Arc::clone(complex), k + 1));
    }
    if cols == 0 {
        return Err(Error::Infeasible);
    }

    // dense big-integer copy of ∂_{k+1} and the transformation U with A·U = H
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); cols]; rows];
    for (j, col) in complex.boundary_columns(k + 1).iter().enumerate() {
        for &(f, s) in col {
            a[f][j] += s; // duplicate faces cannot occur; entries are ±1
        }
    }
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut row = vec![BigInt::zero(); cols];
            row[i] = BigInt::from(1);
            row
        })
        .collect();
    // column operation helper: col_j ← col_j − q·col_p applied to a and u
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot_col = 0usize;
    for row in 0..rows {
        if pivot_col >= cols {
            break;
        }
        loop {
            // find the active column with the smallest nonzero entry in row
            let mut best: Option<usize> = None;
            for j in pivot_col..cols {
                if !a[row][j].is_zero()
                    && best.is_none_or(|b: usize| a[row][j].abs() < a[row][b].abs())
                {
                    best = Some(j);
                }
            }
            let Some(bj) = best else { break };
            // reduce every other active column by the best one
            let mut clean = true;
            for j in pivot_col..cols {
                if j == bj || a[row][j].is_zero() {
                    continue;
                }
                let q = &a[row][j] / &a[row][bj];
                if !q.is_zero() {
                    for rr in 0..rows {
                        let sub = &q * &a[rr][bj];
                        a[rr][j] -= sub;
                    }
                    for uu in u.iter_mut() {
                        let sub = &q * &uu[bj];
                        uu[j] -= sub;
                    }
                }
                if !a[row][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // swap the pivot into place and freeze it
                for rr in 0..rows {
                    a[rr].swap(pivot_col, bj);
                }
                for uu in u.iter_mut() {
                    uu.swap(pivot_col, bj);
                }
                pivots.push((row, pivot_col));
                pivot_col += 1;
                break;
            }
        }
    }

    // forward substitution over the echelon columns
    let mut residual: Vec<BigInt> = vec![BigInt::zero(); rows];
    for (idx, c) in chain.entries() {
        residual[idx] = BigInt::from(c);
    }
    let mut y: Vec<BigInt> = vec![BigInt::zero(); cols];
    for &(row, col) in &pivots {
        if residual[row].is_zero() {
            continue;
        }
        let q = &residual[row] / &a[row][col];
        let rem = &residual[row] - &q * &a[row][col];
        if !rem.is_zero() {
            return Err(Error::Infeasible);
        }
        y[col] = q.clone();
        for rr in 0..rows {
            let sub = &q * &a[rr][col];
            residual[rr] -= sub;
        }
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return Err(Error::Infeasible);
    }
    // s = U·y
    let mut coeffs = Vec::new();
    for (j, urow) in u.iter().enumerate() {
        let mut acc = BigInt::zero();
        for (uc, yc) in urow.iter().zip(&y) {
            acc += uc * yc;
        }
        if !acc.is_zero() {
            let c = acc
                .to_i64()
                .ok_or_else(|| Error::SizeLimit("filling coefficient exceeds i64".into()))?;
            coeffs.push((j, c));
        }
    }
    let filling = Chain::from_coeffs(Arc::clone(complex), k + 1, &coeffs)?;
    // the construction is exact; verify the defining identity anyway
    let check = filling.boundary()?.add(&chain.scale(-1))?;
    debug_assert!(check.is_zero(), "filling verification failed");
    if !check.is_zero() {
        return Err(Error::Infeasible);
    }
    Ok(filling)
}

// ---------------------------------------------------------------------------
// Cones

/// Cone a k-chain to an apex: a new complex containing every simplex of the
/// old one (same indices) plus a cone simplex [apex, v₀…v_k] for each
/// support simplex, and the chain with matching coefficients. Satisfies
/// ∂(cone T) = T − cone(∂T), so the cone of a cycle is a filling of it.
pub fn cone_chain<T: Real>(link: &Chain<T>, apex: &[T]) -> Result<Chain<T>> {
    let complex = link.complex();
    if apex.len() != complex.dim() {
        return Err(Error::DimMismatch(apex.len(), complex.dim()));
    }
    let k = link.degree();
    for v in complex.vertices() {
        let d2 = v
            .iter()
            .zip(apex)
            .map(|(a, b)| (*a - *b) * (*a - *b))
            .fold(T::zero(), |acc, x| acc + x);
        if d2 < r(1e-24) {
            return Err(Error::BadParameter(
                "cone apex coincides with a complex vertex".into(),
            ));
        }
    }
    let mut vertices = complex.vertices().to_vec();
    let apex_idx = vertices.len();
    vertices.push(apex.to_vec());
    // re-declare the old simplices first so indices are preserved, then the
    // cone simplices over the link support
    let mut declared: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    for deg in 1..=complex.max_degree() {
        let tuples: Vec<Vec<usize>> =
            (0..complex.num_simplices(deg)).map(|i| complex.simplex(deg, i).unwrap().to_vec()).collect();
        if !tuples.is_empty() {
            declared.push((deg, tuples));
        }
    }
    let mut cone_tuples = Vec::new();
    for idx in link.support() {
        let mut tuple = vec![apex_idx];
        tuple.extend_from_slice(complex.simplex(k, idx)?);
        cone_tuples.push(tuple);
    }
    declared.push((k + 1, cone_tuples.clone()));
    let new_complex = Arc::new(SimplicialComplex::new(complex.dim(), vertices, &declared)?);
    let mut entries: Vec<(Vec<usize>, i64)> = Vec::new();
    for (idx, c) in link.entries() {
        let mut tuple = vec![apex_idx];
        tuple.extend_from_slice(complex.simplex(k, idx)?);
        entries.push((tuple, c));
    }
    let borrowed: Vec<(&[usize], i64)> =
        entries.iter().map(|(t, c)| (t.as_slice(), *c)).collect();
    Chain::from_tuples(new_complex, k + 1, &borrowed)
}

/// Re-express a chain on a super-complex that preserved simplex indices
/// (as built by [`cone_chain`]).
pub fn transplant<T: Real>(chain: &Chain<T>, target: &Arc<SimplicialComplex<T>>) -> Result<Chain<T>> {
    for (idx, _) in chain.entries() {
        let old = chain.complex().simplex(chain.degree(), idx)?;
        let new = target.simplex(chain.degree(), idx)?;
        if old != new {
            return Err(Error::BadParameter(
                "target complex does not preserve simplex indices".into(),
            ));
        }
    }
    Chain::from_coeffs(Arc::clone(target), chain.degree(), &chain.entries())
}

// ---------------------------------------------------------------------------
// Stokes

/// |⟨∂T, ψ⟩ − ⟨T, dψ⟩| with dψ formed by central differences of step `h`:
/// vanishes to quadrature + differencing order for smooth ψ.
pub fn stokes_check<T: Real>(chain: &Chain<T>, psi: &FormField<T>, h: f64) -> Result<T> {
    let k = chain.degree();
    if k == 0 {
        return Err(Error::BadParameter("Stokes check needs degree ≥ 1".into()));
    }
    if psi.degree() != k - 1 {
        return Err(Error::DegreeMismatch(psi.degree(), k - 1));
    }
    let lhs = pair_form(&chain.boundary()?, psi, DEFAULT_SIMPLEX_STRENGTH)?;
    let inner = psi.clone();
    let dpsi = FormField::new(k, psi.dim(), psi.region().clone(), move |p: &[T]| {
        exterior_derivative_numeric(&inner, p, r(h))
    });
    let rhs = pair_form(chain, &dpsi, DEFAULT_SIMPLEX_STRENGTH)?;
    Ok((lhs - rhs).abs())
}
