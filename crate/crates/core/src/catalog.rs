//! The standard calibration library: constant volume forms, Kähler powers,
//! special Lagrangian real parts, the coassociative 4-form on ℝ⁷, and the
//! codimension-one graph calibration family.
//!
//! Coordinate conventions: complex space ℂⁿ is coordinatized as
//! (x¹,…,xⁿ,y¹,…,yⁿ) with zʲ = xʲ + iyʲ, so dxʲ is axis j and dyʲ is axis
//! n+j. Graph calibrations over a base ℝᵏ use axes 1..k for the base and
//! axis k+1 for the vertical coordinate.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::exterior::KCovector;
use crate::forms::{FormField, Region};
use crate::scalar::{r, Real};

/// dx¹∧⋯∧dxᵏ as a constant field on ℝⁿ.
pub fn volume_form<T: Real>(k: usize, n: usize) -> Result<FormField<T>> {
    if k == 0 || k > n {
        return Err(Error::BadParameter(format!("volume form needs 1 ≤ k ≤ n, got k={k}, n={n}")));
    }
    let axes: Vec<u8> = (1..=k as u8).collect();
    Ok(FormField::constant(KCovector::basis(n, &axes)?, Region::all(n)))
}

/// The Kähler form ω = Σⱼ dxʲ∧dyʲ on ℝ²ⁿ ≅ ℂⁿ.
pub fn kahler_form<T: Real>(half_dim: usize) -> Result<FormField<T>> {
    Ok(FormField::constant(kahler_covector(half_dim)?, Region::all(2 * half_dim)))
}

fn kahler_covector<T: Real>(n: usize) -> Result<KCovector<T>> {
    if n == 0 {
        return Err(Error::BadParameter("kahler form needs n ≥ 1".into()));
    }
    let mut omega = KCovector::zero(2, 2 * n)?;
    for j in 1..=n as u8 {
        omega = omega.add(&KCovector::basis(2 * n, &[j, j + n as u8])?)?;
    }
    Ok(omega)
}

/// The normalized Kähler power ωᵖ/p! on ℝ²ⁿ, the calibration of complex
/// p-dimensional submanifolds. Note the pairing-one planes carry the complex
/// orientation (x¹,y¹,x²,y²,…), which differs from the coordinate-block
/// orientation by a sign when p(p−1)/2 is odd.
pub fn kahler_power<T: Real>(half_dim: usize, power: usize) -> Result<FormField<T>> {
    if power == 0 || power > half_dim {
        return Err(Error::BadParameter(format!(
            "kahler power needs 1 ≤ p ≤ n, got p={power}, n={half_dim}"
        )));
    }
    let omega = kahler_covector::<T>(half_dim)?;
    let mut acc = omega.clone();
    let mut factorial = 1.0;
    for p in 2..=power {
        acc = acc.wedge(&omega)?;
        factorial *= p as f64;
    }
    Ok(FormField::constant(acc.scale(&r(1.0 / factorial)), Region::all(2 * half_dim)))
}

/// The special Lagrangian calibration Re(e^{−iϑ} dz¹∧⋯∧dzⁿ) on ℝ²ⁿ.
pub fn slag_form<T: Real>(half_dim: usize, theta: T) -> Result<FormField<T>> {
    let n = half_dim;
    if n == 0 {
        return Err(Error::BadParameter("slag form needs n ≥ 1".into()));
    }
    // expand the holomorphic volume form with complex coefficients, rotate
    // by the phase, keep real parts
    let dim = 2 * n;
    let mut acc: KCovector<Complex<T>> = KCovector::basis(dim, &[])?;
    for j in 1..=n as u8 {
        let dz = KCovector::from_terms(
            1,
            dim,
            &[
                (&[j], Complex::new(T::one(), T::zero())),
                (&[j + n as u8], Complex::new(T::zero(), T::one())),
            ],
        )?;
        acc = acc.wedge(&dz)?;
    }
    let phase = Complex::new(theta.cos(), -theta.sin());
    let rotated = acc.scale(&phase);
    let mut terms: Vec<(Vec<u8>, T)> = Vec::new();
    for (idx, c) in rotated.terms() {
        terms.push((idx.axes(), c.re));
    }
    let refs: Vec<(&[u8], T)> = terms.iter().map(|(a, c)| (a.as_slice(), *c)).collect();
    Ok(FormField::constant(KCovector::from_terms(n, dim, &refs)?, Region::all(dim)))
}

/// The coassociative 4-form on ℝ⁷:
/// φ = dx¹²³⁴ − dx⁶⁷∧(dx¹²−dx³⁴) + dx⁵⁷∧(dx¹³+dx²⁴) − dx⁵⁶∧(dx¹⁴−dx²³).
pub fn coassociative_form<T: Real>() -> Result<FormField<T>> {
    let b = |axes: &[u8]| KCovector::<T>::basis(7, axes);
    let phi = b(&[1, 2, 3, 4])?
        .sub(&b(&[6, 7])?.wedge(&b(&[1, 2])?.sub(&b(&[3, 4])?)?)?)?
        .add(&b(&[5, 7])?.wedge(&b(&[1, 3])?.add(&b(&[2, 4])?)?)?)?
        .sub(&b(&[5, 6])?.wedge(&b(&[1, 4])?.sub(&b(&[2, 3])?)?)?)?;
    Ok(FormField::constant(phi, Region::all(7)))
}

/// Gradient closure for the codimension-one graph calibration: x ↦ Du(x).
pub type GradientFn<T> = Arc<dyn Fn(&[T]) -> Result<Vec<T>> + Send + Sync>;

/// The graph calibration of a codimension-one graph y = u(x), x ∈ ℝᵏ:
///
/// φ(x,y) = (−1)ᵏ(1+|Du|²)^(−1/2) dx¹∧⋯∧dxᵏ
///        + Σᵢ (−1)ⁱ u_{xⁱ}(1+|Du|²)^(−1/2) dx¹∧⋯∧d̂xⁱ∧⋯∧dxᵏ∧dy
///
/// frozen in x (independent of y). At every point the coefficients form a
/// unit vector and every k-covector on ℝᵏ⁺¹ is simple, so the comass is one
/// pointwise for *any* u; closedness dφ = 0 is what requires u to solve the
/// minimal surface equation.
pub fn graph_form<T: Real>(k: usize, du: GradientFn<T>, region: Region<T>) -> Result<FormField<T>> {
    if region.dim() != k + 1 {
        return Err(Error::DimMismatch(region.dim(), k + 1));
    }
    if k == 0 {
        return Err(Error::BadParameter("graph form needs base dimension ≥ 1".into()));
    }
    let dim = k + 1;
    Ok(FormField::new(k, dim, region, move |q: &[T]| {
        let p = du(&q[..k])?;
        if p.len() != k {
            return Err(Error::DimMismatch(p.len(), k));
        }
        graph_covector(k, &p)
    }))
}

/// Same family for an affine u (constant gradient): a constant field.
pub fn graph_form_affine<T: Real>(gradient: &[T]) -> Result<FormField<T>> {
    let k = gradient.len();
    Ok(FormField::constant(graph_covector(k, gradient)?, Region::all(k + 1)))
}

fn graph_covector<T: Real>(k: usize, p: &[T]) -> Result<KCovector<T>> {
    let dim = k + 1;
    let norm2 = p.iter().fold(T::one(), |a, x| a + *x * *x);
    let s = norm2.sqrt().recip();
    let base_sign = if k % 2 == 0 { T::one() } else { -T::one() };
    let mut stored: Vec<(Vec<u8>, T)> = Vec::with_capacity(k + 1);
    stored.push(((1..=k as u8).collect(), base_sign * s));
    for i in 1..=k {
        let mut axes: Vec<u8> = (1..=k as u8).filter(|&j| j as usize != i).collect();
        axes.push(dim as u8);
        let sign = if i % 2 == 0 { T::one() } else { -T::one() };
        stored.push((axes, sign * p[i - 1] * s));
    }
    let refs: Vec<(&[u8], T)> = stored.iter().map(|(a, c)| (a.as_slice(), *c)).collect();
    KCovector::from_terms(k, dim, &refs)
}

/// Representative instances of every calibration family, keyed by the same
/// ids the command line accepts. Used by the cross-family property tests.
pub fn standard_calibrations() -> Vec<(String, FormField<f64>)> {
    vec![
        ("volume".into(), volume_form(2, 3).unwrap()),
        ("kahler".into(), kahler_form(2).unwrap()),
        ("kahler:dim=6".into(), kahler_form(3).unwrap()),
        ("kahler-power:2:dim=6".into(), kahler_power(3, 2).unwrap()),
        ("slag-re".into(), slag_form(2, 0.0).unwrap()),
        ("slag-re:dim=6".into(), slag_form(3, 0.0).unwrap()),
        (
            "slag-re:theta=pi/2".into(),
            slag_form(2, std::f64::consts::FRAC_PI_2).unwrap(),
        ),
        ("coassociative".into(), coassociative_form().unwrap()),
        ("graph:affine:0.3,-0.2".into(), graph_form_affine(&[0.3, -0.2]).unwrap()),
        ("graph:scherk".into(), scherk_graph_form().unwrap()),
    ]
}

/// Graph calibration of the doubly periodic minimal graph
/// u = log(cos x² / cos x¹), an exact minimal-surface-equation solution with
/// non-constant gradient (Du = (tan x¹, tan x²)).
pub fn scherk_graph_form() -> Result<FormField<f64>> {
    let du: GradientFn<f64> = Arc::new(|x: &[f64]| Ok(vec![x[0].tan(), -x[1].tan()]));
    let region = Region::Box {
        lo: vec![-1.4, -1.4, -1e12],
        hi: vec![1.4, 1.4, 1e12],
    };
    graph_form(2, du, region)
}

/// Resolve a CLI form id. `k`/`dim` size the dimension-parametric families;
/// `theta` sets the special Lagrangian phase. Grammar:
/// `volume | kahler | kahler-power:<p> | slag-re | coassociative |
///  graph:affine:<a1,a2,…> | graph:scherk | scale:<c>:<id>`.
pub fn form_by_id(id: &str, k: usize, dim: usize, theta: f64) -> Result<FormField<f64>> {
    if let Some(rest) = id.strip_prefix("scale:") {
        let (c_str, inner) = rest
            .split_once(':')
            .ok_or_else(|| Error::Malformed(format!("scale id needs scale:<c>:<form>: {id}")))?;
        let c: f64 = c_str
            .parse()
            .map_err(|_| Error::Malformed(format!("bad scale factor in {id}")))?;
        return Ok(form_by_id(inner, k, dim, theta)?.scaled(c));
    }
    match id {
        "volume" => volume_form(k, dim),
        "kahler" => {
            if dim % 2 != 0 {
                return Err(Error::BadParameter(format!("kahler form needs even dim, got {dim}")));
            }
            kahler_form(dim / 2)
        }
        "slag-re" => {
            if dim % 2 != 0 {
                return Err(Error::BadParameter(format!("slag form needs even dim, got {dim}")));
            }
            slag_form(dim / 2, theta)
        }
        "coassociative" => coassociative_form(),
        "graph:scherk" => scherk_graph_form(),
        _ => {
            if let Some(p) = id.strip_prefix("kahler-power:") {
                let power: usize = p
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad kahler power in {id}")))?;
                if dim % 2 != 0 {
                    return Err(Error::BadParameter(format!(
                        "kahler power needs even dim, got {dim}"
                    )));
                }
                return kahler_power(dim / 2, power);
            }
            if let Some(list) = id.strip_prefix("graph:affine:") {
                let gradient: std::result::Result<Vec<f64>, _> =
                    list.split(',').map(str::parse).collect();
                let gradient = gradient
                    .map_err(|_| Error::Malformed(format!("bad gradient list in {id}")))?;
                return graph_form_affine(&gradient);
            }
            Err(Error::Malformed(format!("unknown form id: {id}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::pair;
    use crate::forms::{comass_at, ComassOptions};
    use crate::grassmann::plane_from_frame;

    fn e(n: usize, i: u8) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i as usize - 1] = 1.0;
        v
    }

    #[test]
    fn coassociative_expansion() {
        let phi = coassociative_form::<f64>().unwrap();
        let cov = phi.at(&[0.0; 7]).unwrap();
        assert_eq!(cov.num_terms(), 7);
        let expect: [(&[u8], f64); 7] = [
            (&[1, 2, 3, 4], 1.0),
            (&[1, 2, 6, 7], -1.0),
            (&[3, 4, 6, 7], 1.0),
            (&[1, 3, 5, 7], 1.0),
            (&[2, 4, 5, 7], 1.0),
            (&[1, 4, 5, 6], -1.0),
            (&[2, 3, 5, 6], 1.0),
        ];
        for (axes, c) in expect {
            assert_eq!(cov.coeff(axes), c, "axes {axes:?}");
        }
        // the leading-term plane pairs to one
        let plane = plane_from_frame(&[e(7, 1), e(7, 2), e(7, 3), e(7, 4)]).unwrap();
        assert_eq!(pair(&cov, &plane.plucker).unwrap(), 1.0);
    }

    #[test]
    fn kahler_and_power() {
        let omega = kahler_form::<f64>(2).unwrap().at(&[0.0; 4]).unwrap();
        assert_eq!(omega.coeff(&[1, 3]), 1.0);
        assert_eq!(omega.coeff(&[2, 4]), 1.0);
        assert_eq!(omega.num_terms(), 2);

        // ω²/2 is the complex volume form: −dx¹∧dx²∧dy¹∧dy² in block order,
        // +1 on complex-oriented planes
        let top = kahler_power::<f64>(2, 2).unwrap().at(&[0.0; 4]).unwrap();
        assert_eq!(top.num_terms(), 1);
        assert_eq!(top.coeff(&[1, 2, 3, 4]), -1.0);
        let complex_oriented = plane_from_frame(&[e(4, 1), e(4, 3), e(4, 2), e(4, 4)]).unwrap();
        assert_eq!(pair(&top, &complex_oriented.plucker).unwrap(), 1.0);
    }

    #[test]
    fn slag_real_part() {
        let phi = slag_form::<f64>(2, 0.0).unwrap().at(&[0.0; 4]).unwrap();
        // Re(dz¹∧dz²) = dx¹∧dx² − dy¹∧dy²
        assert_eq!(phi.num_terms(), 2);
        assert!((phi.coeff(&[1, 2]) - 1.0).abs() < 1e-15);
        assert!((phi.coeff(&[3, 4]) + 1.0).abs() < 1e-15);
        let real_plane = plane_from_frame(&[e(4, 1), e(4, 2)]).unwrap();
        assert!((pair(&phi, &real_plane.plucker).unwrap() - 1.0).abs() < 1e-15);

        // phase rotation: at ϑ = π/2 the real plane pairs to cos(π/2) = 0
        let rotated = slag_form::<f64>(2, std::f64::consts::FRAC_PI_2).unwrap();
        let v = pair(&rotated.at(&[0.0; 4]).unwrap(), &real_plane.plucker).unwrap();
        assert!(v.abs() < 1e-15);
    }

    #[test]
    fn graph_form_flat_and_signs() {
        // u ≡ 0, k = 2: φ = +dx¹∧dx²
        let flat = graph_form_affine::<f64>(&[0.0, 0.0]).unwrap();
        let cov = flat.at(&[0.0; 3]).unwrap();
        assert_eq!(cov.num_terms(), 1);
        assert_eq!(cov.coeff(&[1, 2]), 1.0);

        // k = 1: φ = −dx¹ − p·dy, unit length
        let tilted = graph_form_affine::<f64>(&[1.0]).unwrap();
        let cov = tilted.at(&[0.0; 2]).unwrap();
        let is = 1.0 / 2f64.sqrt();
        assert!((cov.coeff(&[1]) + is).abs() < 1e-15);
        assert!((cov.coeff(&[2]) + is).abs() < 1e-15);
    }

    #[test]
    fn graph_covector_is_always_unit() {
        for p in [vec![0.7, -1.3], vec![2.0, 0.0], vec![0.1, 0.2]] {
            let cov = graph_covector::<f64>(2, &p).unwrap();
            assert!((cov.norm_squared() - 1.0).abs() < 1e-14, "p={p:?}");
        }
        let cov = graph_covector::<f64>(3, &[0.5, -0.5, 1.5]).unwrap();
        assert!((cov.norm_squared() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn comass_one_across_the_catalog() {
        let opts = ComassOptions { restarts: 48, iters: 200, seed: 23 };
        for (id, phi) in standard_calibrations() {
            let p = vec![0.25; phi.dim()];
            let c = comass_at(&phi, &p, &opts).unwrap();
            assert!((c - 1.0).abs() < 1e-6, "{id}: comass {c}");
        }
    }

    #[test]
    fn id_parser() {
        assert!(form_by_id("volume", 2, 3, 0.0).is_ok());
        assert!(form_by_id("kahler", 2, 4, 0.0).is_ok());
        assert!(form_by_id("kahler-power:2", 2, 4, 0.0).is_ok());
        assert!(form_by_id("slag-re", 2, 4, 0.5).is_ok());
        assert!(form_by_id("coassociative", 4, 7, 0.0).is_ok());
        assert!(form_by_id("graph:affine:0.3,-0.2", 2, 3, 0.0).is_ok());
        assert!(form_by_id("graph:scherk", 2, 3, 0.0).is_ok());
        let scaled = form_by_id("scale:2:volume", 2, 3, 0.0).unwrap();
        let cov = scaled.at(&[0.0; 3]).unwrap();
        assert_eq!(cov.coeff(&[1, 2]), 2.0);
        assert!(form_by_id("nonsense", 2, 3, 0.0).is_err());
        assert!(form_by_id("kahler", 2, 5, 0.0).is_err());
    }
}
