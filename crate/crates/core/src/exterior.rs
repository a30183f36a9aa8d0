//! Alternating k-vectors and k-covectors on ℝⁿ.
//!
//! Coefficients live on strictly increasing multi-indices (the lexicographic
//! basis); every sign in the module is derived from sorting permutations, so
//! serialization and arithmetic are deterministic. Internally a multi-index
//! is a bitmask over axes, which makes wedge signs a popcount and keeps the
//! coefficient maps canonically ordered.
//!
//! Both orientations of tensor share one generic container: `KVector<T>` and
//! `KCovector<T>` differ only by a phantom variance marker, so wedge and the
//! norms are written once while the dual pairing still type-checks.

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

/// Largest supported ambient dimension (axis masks are `u32`).
pub const MAX_DIM: usize = 30;

/// Strictly increasing list of axis labels in `1..=n`, stored as a bitmask
/// (bit `i-1` ⇔ axis `i` present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(u32);

impl MultiIndex {
    pub fn from_axes(axes: &[u8], dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge(dim));
        }
        let mut mask = 0u32;
        let mut prev = 0u8;
        for &a in axes {
            if a == 0 || a as usize > dim || a <= prev {
                return Err(Error::BadMultiIndex(axes.to_vec(), dim));
            }
            mask |= 1 << (a - 1);
            prev = a;
        }
        Ok(MultiIndex(mask))
    }

    pub fn axes(self) -> Vec<u8> {
        (0..32u8).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, axis: u8) -> bool {
        axis >= 1 && self.0 >> (axis - 1) & 1 == 1
    }

    fn mask(self) -> u32 {
        self.0
    }
}

/// Sign of interleaving the ascending axis lists of `a` and `b` into one
/// ascending list; `None` when they share an axis.
fn merge_sign(a: u32, b: u32) -> Option<(u32, i8)> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let low = bb & bb.wrapping_neg();
        // each axis of b must cross every axis of a above it
        swaps += (a & !(low - 1) & !low).count_ones();
        bb ^= low;
    }
    Some((a | b, if swaps % 2 == 0 { 1 } else { -1 }))
}

/// Marker for k-vector coefficients (contravariant slots).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contra;
/// Marker for k-covector coefficients (covariant slots).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Co;

mod sealed {
    pub trait Kind {}
    impl Kind for super::Contra {}
    impl Kind for super::Co {}
}
pub use sealed::Kind;

/// Alternating tensor of fixed degree on ℝⁿ; see the module docs for the
/// basis and sign conventions. Absent multi-indices mean coefficient zero.
#[derive(Serialize, Deserialize)]
#[serde(
    try_from = "AltRepr<T>",
    into = "AltRepr<T>",
    bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>")
)]
pub struct Alt<T, K: Kind> {
    degree: usize,
    dim: usize,
    terms: BTreeMap<u32, T>,
    _kind: PhantomData<K>,
}

// manual impls: the derives would demand K: Clone/Debug/PartialEq on the
// phantom marker, poisoning every generic use site
impl<T: Clone, K: Kind> Clone for Alt<T, K> {
    fn clone(&self) -> Self {
        Alt {
            degree: self.degree,
            dim: self.dim,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }
}

impl<T: fmt::Debug, K: Kind> fmt::Debug for Alt<T, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Alt")
            .field("degree", &self.degree)
            .field("dim", &self.dim)
            .field("terms", &self.terms)
            .finish()
    }
}

impl<T: PartialEq, K: Kind> PartialEq for Alt<T, K> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.dim == other.dim && self.terms == other.terms
    }
}

pub type KVector<T> = Alt<T, Contra>;
pub type KCovector<T> = Alt<T, Co>;

/// Serialized shape: `{"degree", "dim", "terms": [{"axes": [...], "coeff": ...}]}`,
/// terms sorted lexicographically by axis list.
#[derive(Serialize, Deserialize)]
struct AltRepr<T> {
    degree: usize,
    dim: usize,
    terms: Vec<TermRepr<T>>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr<T> {
    axes: Vec<u8>,
    coeff: T,
}

impl<T: Scalar, K: Kind> From<Alt<T, K>> for AltRepr<T> {
    fn from(a: Alt<T, K>) -> Self {
        let mut terms: Vec<TermRepr<T>> = a
            .terms
            .iter()
            .map(|(&m, c)| TermRepr { axes: MultiIndex(m).axes(), coeff: c.clone() })
            .collect();
        terms.sort_by(|s, t| s.axes.cmp(&t.axes));
        AltRepr { degree: a.degree, dim: a.dim, terms }
    }
}

impl<T: Scalar, K: Kind> TryFrom<AltRepr<T>> for Alt<T, K> {
    type Error = Error;
    fn try_from(r: AltRepr<T>) -> Result<Self> {
        let mut out = Alt::zero(r.degree, r.dim)?;
        for t in r.terms {
            if t.axes.len() != r.degree {
                return Err(Error::BadMultiIndex(t.axes, r.dim));
            }
            let idx = MultiIndex::from_axes(&t.axes, r.dim)?;
            out.add_term(idx.mask(), t.coeff);
        }
        Ok(out)
    }
}

impl<T: Scalar, K: Kind> Alt<T, K> {
    /// The zero tensor. `degree > dim` is allowed and represents the zero
    /// space Λ^k(ℝⁿ) = {0}, k > n: no valid multi-index of that length
    /// exists, so such a tensor can never acquire a term.
    pub fn zero(degree: usize, dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimTooLarge(dim));
        }
        Ok(Alt { degree, dim, terms: BTreeMap::new(), _kind: PhantomData })
    }

    /// Basis element `e_{axes}` (or `dx^{axes}`) with coefficient one.
    pub fn basis(dim: usize, axes: &[u8]) -> Result<Self> {
        let mut out = Self::zero(axes.len(), dim)?;
        let idx = MultiIndex::from_axes(axes, dim)?;
        if idx.len() != axes.len() {
            return Err(Error::BadMultiIndex(axes.to_vec(), dim));
        }
        out.terms.insert(idx.mask(), T::one());
        Ok(out)
    }

    pub fn from_terms(degree: usize, dim: usize, terms: &[(&[u8], T)]) -> Result<Self> {
        let mut out = Self::zero(degree, dim)?;
        for (axes, c) in terms {
            if axes.len() != degree {
                return Err(Error::BadMultiIndex(axes.to_vec(), dim));
            }
            let idx = MultiIndex::from_axes(axes, dim)?;
            out.add_term(idx.mask(), c.clone());
        }
        Ok(out)
    }

    /// Degree-1 tensor from plain coordinates (`v[i]` on axis `i+1`).
    pub fn from_components(dim: usize, v: &[T]) -> Result<Self> {
        if v.len() != dim {
            return Err(Error::DimMismatch(v.len(), dim));
        }
        let mut out = Self::zero(1, dim)?;
        for (i, c) in v.iter().enumerate() {
            out.add_term(1 << i, c.clone());
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient on the basis element with the given ascending axes.
    pub fn coeff(&self, axes: &[u8]) -> T {
        MultiIndex::from_axes(axes, self.dim)
            .ok()
            .and_then(|idx| self.terms.get(&idx.mask()).cloned())
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &T)> {
        self.terms.iter().map(|(&m, c)| (MultiIndex(m), c))
    }

    fn add_term(&mut self, mask: u32, c: T) {
        let entry = self.terms.entry(mask).or_insert_with(T::zero);
        *entry += c;
        if *entry == T::zero() {
            self.terms.remove(&mask);
        }
    }

    /// Wedge product. Degrees summing past the ambient dimension give the
    /// zero tensor of that degree (every index pair collides).
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        let mut out = Self::zero(degree, self.dim)?;
        for (&ma, ca) in &self.terms {
            for (&mb, cb) in &other.terms {
                if let Some((m, s)) = merge_sign(ma, mb) {
                    let prod = ca.clone() * cb.clone();
                    out.add_term(m, if s > 0 { prod } else { -prod });
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.clone().neg())
    }

    pub fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = self.clone();
        out.terms.retain(|_, c| {
            *c *= s.clone();
            *c != T::zero()
        });
        out
    }

    /// Sum of squared coefficients (the Euclidean norm squared in the
    /// orthonormal lexicographic basis).
    pub fn norm_squared(&self) -> T {
        let mut acc = T::zero();
        for c in self.terms.values() {
            acc += c.clone() * c.clone();
        }
        acc
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }
}

impl<T: Real, K: Kind> Alt<T, K> {
    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    /// Largest absolute coefficient (0 for the zero tensor).
    pub fn max_abs_coeff(&self) -> T {
        self.terms.values().fold(T::zero(), |m, c| m.max(c.abs()))
    }
}

/// Dual pairing ⟨φ, ξ⟩; basis covectors and vectors are dual-orthonormal.
pub fn pair<T: Scalar>(phi: &KCovector<T>, xi: &KVector<T>) -> Result<T> {
    if phi.dim != xi.dim {
        return Err(Error::DimMismatch(phi.dim, xi.dim));
    }
    if phi.degree != xi.degree {
        return Err(Error::DegreeMismatch(phi.degree, xi.degree));
    }
    let mut acc = T::zero();
    // iterate over the smaller support
    let (small, large): (&BTreeMap<u32, T>, &BTreeMap<u32, T>) = if phi.terms.len() <= xi.terms.len()
    {
        (&phi.terms, &xi.terms)
    } else {
        (&xi.terms, &phi.terms)
    };
    for (m, c) in small {
        if let Some(d) = large.get(m) {
            acc += c.clone() * d.clone();
        }
    }
    Ok(acc)
}

/// Interior product `v ⌟ ξ`, linear in `v`; on a basis k-vector containing
/// axis `i` at (1-based) position `p` it contributes the sign `(−1)^{p−1}`
/// and drops that axis, so `e_i ⌟ (e_1∧⋯∧e_k) = (−1)^{i−1} e_1∧⋯∧ê_i∧⋯∧e_k`.
pub fn interior<T: Scalar>(v: &[T], xi: &KVector<T>) -> Result<KVector<T>> {
    if v.len() != xi.dim {
        return Err(Error::DimMismatch(v.len(), xi.dim));
    }
    if xi.degree == 0 {
        return Err(Error::ZeroInput("degree (interior product needs degree ≥ 1)"));
    }
    let mut out = KVector::zero(xi.degree - 1, xi.dim)?;
    for (i, vi) in v.iter().enumerate() {
        if *vi == T::zero() {
            continue;
        }
        let bit = 1u32 << i;
        for (&m, c) in &xi.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let term = vi.clone() * c.clone();
            out.add_term(m ^ bit, if below % 2 == 0 { term } else { -term });
        }
    }
    Ok(out)
}

/// Interior product against a single axis vector `e_axis` (1-based).
pub fn interior_axis<T: Scalar>(axis: u8, xi: &KVector<T>) -> Result<KVector<T>> {
    let mut v = vec![T::zero(); xi.dim];
    if axis == 0 || axis as usize > xi.dim {
        return Err(Error::BadMultiIndex(vec![axis], xi.dim));
    }
    v[axis as usize - 1] = T::one();
    interior(&v, xi)
}

/// All quadratic Plücker relations of `xi`'s coefficient vector, one value
/// per pair (α, β) of a (k−1)- and a (k+1)-multi-index:
/// `R_{α,β} = Σ_j (−1)^j ξ_{α∪{β_j}} ξ_{β∖{β_j}}` with the `α∪{β_j}`
/// coefficient signed by sorting `β_j` into α. Every relation vanishes
/// exactly iff `xi` is simple (decomposable).
pub fn plucker_relations<T: Scalar>(xi: &KVector<T>) -> Vec<T> {
    let k = xi.degree;
    let n = xi.dim;
    if k < 2 || k + 1 > n || xi.terms.is_empty() {
        return Vec::new(); // degrees 0, 1, n−… have no relations: always simple
    }
    let coeff = |mask: u32| -> T { xi.terms.get(&mask).cloned().unwrap_or_else(T::zero) };
    let mut out = Vec::new();
    for alpha in (0..n as u8).combinations(k - 1) {
        let amask: u32 = alpha.iter().map(|&a| 1u32 << a).sum();
        for beta in (0..n as u8).combinations(k + 1) {
            let mut rel = T::zero();
            let mut any = false;
            for (j, &b) in beta.iter().enumerate() {
                let bbit = 1u32 << b;
                if amask & bbit != 0 {
                    continue; // repeated axis ⇒ the ξ_{α∪{b}} factor is zero
                }
                let bmask: u32 = beta.iter().map(|&x| 1u32 << x).sum::<u32>() ^ bbit;
                // sign from appending b to ascending α and re-sorting
                let above = (amask & !(bbit - 1)).count_ones();
                let mut term = coeff(amask | bbit) * coeff(bmask);
                if (j as u32 + above) % 2 == 1 {
                    term = -term;
                }
                rel += term;
                any = true;
            }
            if any {
                out.push(rel);
            }
        }
    }
    out
}

/// Distance-from-simple score: `‖Plücker relations‖₂ / |ξ|²`, zero exactly on
/// simple k-vectors. Normalizing by |ξ|² makes the score scale-invariant; the
/// normalization is pinned by `e₁∧e₂ + e₃∧e₄` in ℝ⁴ scoring exactly 1 (its
/// four relations are ±1 and |ξ|² = 2).
pub fn simplicity_defect<T: Real>(xi: &KVector<T>) -> Result<T> {
    if xi.is_zero() {
        return Err(Error::ZeroInput("k-vector"));
    }
    let mut sq = T::zero();
    for rel in plucker_relations(xi) {
        sq = sq + rel * rel;
    }
    Ok(sq.sqrt() / xi.norm_squared())
}

/// Defect threshold below which a k-vector is treated as simple (float noise
/// floor for ambient dimension ≤ 16).
pub const SIMPLE_TOL: f64 = 1e-9;
