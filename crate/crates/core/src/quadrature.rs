//! Quadrature rules: Gauss–Legendre on [0, 1] and Grundmann–Möller rules on
//! simplices of any dimension.

use crate::scalar::{r, Real};

/// 16-point Gauss–Legendre nodes/weights on [0, 1] (exact to degree 31).
/// Nodes are the roots of P₁₆ mapped from [−1, 1].
pub fn gauss_legendre_16<T: Real>() -> Vec<(T, T)> {
    // (node, weight) on [-1, 1]; symmetric half listed, mirrored below
    const HALF: [(f64, f64); 8] = [
        (0.0950125098376374, 0.1894506104550685),
        (0.2816035507792589, 0.1826034150449236),
        (0.4580167776572274, 0.1691565193950025),
        (0.6178762444026438, 0.1495959888165767),
        (0.7554044083550030, 0.1246289712555339),
        (0.8656312023878318, 0.0951585116824928),
        (0.9445750230732326, 0.0622535239386479),
        (0.9894009349916499, 0.0271524594117541),
    ];
    let mut out = Vec::with_capacity(16);
    for &(x, w) in &HALF {
        out.push((r::<T>(0.5 * (1.0 - x)), r::<T>(0.5 * w)));
        out.push((r::<T>(0.5 * (1.0 + x)), r::<T>(0.5 * w)));
    }
    out
}

/// Grundmann–Möller rule of strength `s` on the k-simplex: exact for
/// polynomials of degree ≤ 2s+1. Points are returned in barycentric
/// coordinates (k+1 entries) with weights normalized so that Σw = 1
/// (reference measure = the simplex itself; scale by the simplex volume).
pub fn grundmann_moller(k: usize, s: usize) -> Vec<(Vec<f64>, f64)> {
    let d = (2 * s + 1) as i64;
    let mut pts: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut total = 0.0;
    for i in 0..=s {
        let denom = (d + k as i64 - 2 * i as i64) as f64;
        let w = (if i % 2 == 0 { 1.0 } else { -1.0 })
            * 2f64.powi(-2 * (s as i32))
            * denom.powi(d as i32)
            / (factorial(i) * factorial((d as usize + k).saturating_sub(i)));
        for comp in compositions(s - i, k + 1) {
            let bary: Vec<f64> = comp.iter().map(|&c| (2 * c + 1) as f64 / denom).collect();
            pts.push((bary, w));
            total += w;
        }
    }
    for p in &mut pts {
        p.1 /= total;
    }
    pts
}

/// Default strength used for pairing chains with forms: degree-5 exactness,
/// comfortably above the polynomial degrees in the bundled demos.
pub const DEFAULT_SIMPLEX_STRENGTH: usize = 2;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative ints.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}
