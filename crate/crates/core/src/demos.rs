//! Named demonstration fixtures: the small complexes, chains, certificates,
//! and instance builders shared by the tests and the command-line tool.
//!
//! Everything here is deterministic and built from exact rational-friendly
//! coordinates so that mass ties in the minimization demos are exact.

use std::sync::Arc;

use rand::Rng;

use crate::exterior::KCovector;
use crate::forms::{FormField, Region};
use crate::simplicial::{Chain, SimplicialComplex};

pub type Complex64 = SimplicialComplex<f64>;
pub type Chain64 = Chain<f64>;

// ---------------------------------------------------------------------------
// Flat squares

/// Unit square [0,1]² as two triangles.
pub fn unit_square_complex() -> Arc<Complex64> {
    Arc::new(
        SimplicialComplex::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]],
            &[(2, vec![vec![0, 1, 2], vec![0, 2, 3]])],
        )
        .expect("unit square"),
    )
}

/// The full square as a 2-chain of mass 1.
pub fn unit_square_chain(complex: &Arc<Complex64>) -> Chain64 {
    Chain::from_coeffs(Arc::clone(complex), 2, &[(0, 1), (1, 1)]).expect("square chain")
}

/// Unit square lifted into ℝ³ and tilted by `theta` about the x-axis.
pub fn tilted_square_complex(theta: f64) -> Arc<Complex64> {
    let (c, s) = (theta.cos(), theta.sin());
    Arc::new(
        SimplicialComplex::new(
            3,
            vec![
                vec![0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0],
                vec![1.0, c, s],
                vec![0.0, c, s],
            ],
            &[(2, vec![vec![0, 1, 2], vec![0, 2, 3]])],
        )
        .expect("tilted square"),
    )
}

// ---------------------------------------------------------------------------
// Refined grid square (density demos)

/// [0,1]² cut into an m×m grid of cells, each split into two triangles.
pub fn grid_square_complex(m: usize) -> Arc<Complex64> {
    let h = 1.0 / m as f64;
    let mut vertices = Vec::with_capacity((m + 1) * (m + 1));
    for j in 0..=m {
        for i in 0..=m {
            vertices.push(vec![i as f64 * h, j as f64 * h]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * m * m);
    for j in 0..m {
        for i in 0..m {
            let v00 = j * (m + 1) + i;
            let v10 = v00 + 1;
            let v01 = v00 + m + 1;
            let v11 = v01 + 1;
            triangles.push(vec![v00, v10, v11]);
            triangles.push(vec![v00, v11, v01]);
        }
    }
    Arc::new(SimplicialComplex::new(2, vertices, &[(2, triangles)]).expect("grid square"))
}

/// Every grid triangle with coefficient 1: the multiplicity-one square.
pub fn grid_square_chain(complex: &Arc<Complex64>) -> Chain64 {
    let coeffs: Vec<(usize, i64)> = (0..complex.num_simplices(2)).map(|i| (i, 1)).collect();
    Chain::from_coeffs(Arc::clone(complex), 2, &coeffs).expect("grid chain")
}

/// Grid square with coefficient 2 on the triangles inside (½,1)×(½,1):
/// density 2 at interior points of the patch, 1 elsewhere in the interior.
pub fn multiplicity_patch_chain(complex: &Arc<Complex64>) -> Chain64 {
    let mut coeffs = Vec::with_capacity(complex.num_simplices(2));
    for idx in 0..complex.num_simplices(2) {
        let c = complex.centroid(2, idx).expect("triangle centroid");
        let inside = c[0] > 0.5 && c[1] > 0.5;
        coeffs.push((idx, if inside { 2 } else { 1 }));
    }
    Chain::from_coeffs(Arc::clone(complex), 2, &coeffs).expect("patch chain")
}

// ---------------------------------------------------------------------------
// Annulus (a hole for the filling demos)

/// Square annulus: outer corners at radius 2, inner corners at radius 1,
/// a ring of 8 triangles with no interior — its inner loop is a hole.
pub fn annulus_complex() -> Arc<Complex64> {
    let vertices = vec![
        vec![-2.0, -2.0],
        vec![2.0, -2.0],
        vec![2.0, 2.0],
        vec![-2.0, 2.0],
        vec![-1.0, -1.0],
        vec![1.0, -1.0],
        vec![1.0, 1.0],
        vec![-1.0, 1.0],
    ];
    let triangles = vec![
        vec![0, 1, 4],
        vec![1, 5, 4],
        vec![1, 2, 5],
        vec![2, 6, 5],
        vec![2, 3, 6],
        vec![3, 7, 6],
        vec![3, 0, 7],
        vec![0, 4, 7],
    ];
    Arc::new(SimplicialComplex::new(2, vertices, &[(2, triangles)]).expect("annulus"))
}

/// The inner square loop of the annulus — a cycle that bounds nothing there.
pub fn annulus_hole_loop(complex: &Arc<Complex64>) -> Chain64 {
    let entries: Vec<(&[usize], i64)> =
        vec![(&[4, 5], 1), (&[5, 6], 1), (&[6, 7], 1), (&[7, 4], 1)];
    Chain::from_tuples(Arc::clone(complex), 1, &entries).expect("annulus loop")
}

/// The full annulus ring as a 2-chain (all eight triangles).
pub fn annulus_ring_chain(complex: &Arc<Complex64>) -> Chain64 {
    let coeffs: Vec<(usize, i64)> = (0..complex.num_simplices(2)).map(|i| (i, 1)).collect();
    Chain::from_coeffs(Arc::clone(complex), 2, &coeffs).expect("annulus ring")
}

// ---------------------------------------------------------------------------
// Polygons and cones

/// Regular n-gon inscribed in the unit circle (edges only), in the plane.
pub fn polygon_complex(nsides: usize) -> Arc<Complex64> {
    let vertices: Vec<Vec<f64>> = (0..nsides)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / nsides as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let edges: Vec<Vec<usize>> = (0..nsides).map(|i| vec![i, (i + 1) % nsides]).collect();
    Arc::new(SimplicialComplex::new(2, vertices, &[(1, edges)]).expect("polygon"))
}

/// The polygon traversed once counterclockwise.
pub fn polygon_loop(complex: &Arc<Complex64>) -> Chain64 {
    let n = complex.num_simplices(1);
    let coeffs: Vec<(usize, i64)> = (0..n).map(|i| (i, 1)).collect();
    Chain::from_coeffs(Arc::clone(complex), 1, &coeffs).expect("polygon loop")
}

/// Area of the regular n-gon inscribed in the unit circle: ½·n·sin(2π/n).
pub fn inscribed_polygon_area(nsides: usize) -> f64 {
    0.5 * nsides as f64 * (2.0 * std::f64::consts::PI / nsides as f64).sin()
}

/// Minimization fixture in ℝ³: a regular n-gon at z = 0 with two candidate
/// sheets filling it — the flat disc coned to the origin, and a "bumped"
/// tent coned to an apex lifted to z = 0.6. Returns the complex and the
/// polygon loop (the prescribed boundary).
pub fn cone_fixture(nsides: usize) -> (Arc<Complex64>, Chain64) {
    let mut vertices: Vec<Vec<f64>> = (0..nsides)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / nsides as f64;
            vec![a.cos(), a.sin(), 0.0]
        })
        .collect();
    let flat_apex = vertices.len();
    vertices.push(vec![0.0, 0.0, 0.0]);
    let bump_apex = vertices.len();
    vertices.push(vec![0.0, 0.0, 0.6]);
    let mut triangles = Vec::with_capacity(2 * nsides);
    for i in 0..nsides {
        triangles.push(vec![flat_apex, i, (i + 1) % nsides]);
    }
    for i in 0..nsides {
        triangles.push(vec![bump_apex, i, (i + 1) % nsides]);
    }
    let complex = Arc::new(
        SimplicialComplex::new(3, vertices, &[(2, triangles)]).expect("cone fixture"),
    );
    let entries: Vec<(Vec<usize>, i64)> =
        (0..nsides).map(|i| (vec![i, (i + 1) % nsides], 1)).collect();
    let borrowed: Vec<(&[usize], i64)> =
        entries.iter().map(|(t, c)| (t.as_slice(), *c)).collect();
    let boundary = Chain::from_tuples(Arc::clone(&complex), 1, &borrowed).expect("fixture loop");
    (complex, boundary)
}

/// The flat disc sheet of the cone fixture (cone to the origin).
pub fn cone_fixture_disc(complex: &Arc<Complex64>, nsides: usize) -> Chain64 {
    let flat_apex = nsides;
    let entries: Vec<(Vec<usize>, i64)> = (0..nsides)
        .map(|i| (vec![flat_apex, i, (i + 1) % nsides], 1))
        .collect();
    let borrowed: Vec<(&[usize], i64)> =
        entries.iter().map(|(t, c)| (t.as_slice(), *c)).collect();
    Chain::from_tuples(Arc::clone(complex), 2, &borrowed).expect("disc sheet")
}

/// The bumped tent sheet of the cone fixture (cone to the lifted apex).
pub fn cone_fixture_tent(complex: &Arc<Complex64>, nsides: usize) -> Chain64 {
    let bump_apex = nsides + 1;
    let entries: Vec<(Vec<usize>, i64)> = (0..nsides)
        .map(|i| (vec![bump_apex, i, (i + 1) % nsides], 1))
        .collect();
    let borrowed: Vec<(&[usize], i64)> =
        entries.iter().map(|(t, c)| (t.as_slice(), *c)).collect();
    Chain::from_tuples(Arc::clone(complex), 2, &borrowed).expect("tent sheet")
}

// ---------------------------------------------------------------------------
// Cube

/// Unit cube split into six tetrahedra around the main diagonal, all
/// positively oriented. Vertex i has coordinates given by its binary digits.
pub fn cube_complex() -> Arc<Complex64> {
    let vertices: Vec<Vec<f64>> = (0..8u32)
        .map(|b| {
            vec![
                f64::from(b & 1),
                f64::from((b >> 1) & 1),
                f64::from((b >> 2) & 1),
            ]
        })
        .collect();
    let mut tets = Vec::with_capacity(6);
    let perms: [[u32; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in perms {
        let m1 = 1u32 << p[0];
        let m2 = m1 | (1u32 << p[1]);
        let mut tet = vec![0usize, m1 as usize, m2 as usize, 7usize];
        // make every tetrahedron positively oriented: odd permutations of
        // the axis order flip the determinant, so swap two vertices back
        if permutation_parity(&p) < 0 {
            tet.swap(1, 2);
        }
        tets.push(tet);
    }
    Arc::new(SimplicialComplex::new(3, vertices, &[(3, tets)]).expect("cube"))
}

fn permutation_parity(p: &[u32; 3]) -> i8 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The solid cube as a 3-chain of mass 1.
pub fn cube_chain(complex: &Arc<Complex64>) -> Chain64 {
    let coeffs: Vec<(usize, i64)> = (0..complex.num_simplices(3)).map(|i| (i, 1)).collect();
    Chain::from_coeffs(Arc::clone(complex), 3, &coeffs).expect("cube chain")
}

// ---------------------------------------------------------------------------
// Four corners (the canonical non-uniqueness example)

/// Fan of four triangles around the origin spanning the square with corners
/// A(1,1), B(1,−1), C(−1,−1), D(−1,1); vertices are indexed A=0, B=1, C=2,
/// D=3, O=4. The complex contains the four sides and the four half-diagonal
/// spokes.
pub fn four_corners_complex() -> Arc<Complex64> {
    Arc::new(
        SimplicialComplex::new(
            2,
            vec![
                vec![1.0, 1.0],
                vec![1.0, -1.0],
                vec![-1.0, -1.0],
                vec![-1.0, 1.0],
                vec![0.0, 0.0],
            ],
            &[(2, vec![vec![4, 0, 1], vec![4, 1, 2], vec![4, 2, 3], vec![4, 3, 0]])],
        )
        .expect("four corners"),
    )
}

/// The prescribed boundary −A + B − C + D (a 0-chain).
pub fn four_corners_boundary(complex: &Arc<Complex64>) -> Chain64 {
    Chain::from_coeffs(Arc::clone(complex), 0, &[(0, -1), (1, 1), (2, -1), (3, 1)])
        .expect("four corners boundary")
}

/// The two mass-4 minimizers: the side pair {AB, CD} and the side pair
/// {AD, CB}.
pub fn four_corners_minimizers(complex: &Arc<Complex64>) -> [Chain64; 2] {
    let ab_cd: Vec<(&[usize], i64)> = vec![(&[0, 1], 1), (&[2, 3], 1)];
    let ad_cb: Vec<(&[usize], i64)> = vec![(&[3, 0], -1), (&[1, 2], -1)];
    [
        Chain::from_tuples(Arc::clone(complex), 1, &ab_cd).expect("side pair"),
        Chain::from_tuples(Arc::clone(complex), 1, &ad_cb).expect("other side pair"),
    ]
}

/// Certificate cochain values (one per edge, in complex index order) for the
/// four-corners instance: the edge integrals of the piecewise-constant
/// covector field that is −dy on the right fan triangle, dx on the bottom,
/// dy on the left, and −dx on the top. Along each spoke the two adjacent
/// pieces integrate to the same value, so the cochain is well defined,
/// exactly closed on every triangle, and attains mass on both minimizers.
pub fn four_corners_certificate(complex: &Arc<Complex64>) -> Vec<f64> {
    let entries: [(&[usize], f64); 8] = [
        (&[0, 1], 2.0),  // side AB: ∫ −dy
        (&[1, 2], -2.0), // side BC: ∫ dx
        (&[2, 3], 2.0),  // side CD: ∫ dy
        (&[3, 0], -2.0), // side DA: ∫ −dx
        (&[4, 0], -1.0), // spoke OA: both −dy and −dx give −1
        (&[4, 1], 1.0),  // spoke OB
        (&[4, 2], -1.0), // spoke OC
        (&[4, 3], 1.0),  // spoke OD
    ];
    let mut values = vec![0.0; complex.num_simplices(1)];
    for (tuple, v) in entries {
        let (idx, sign) = complex.find(1, tuple).expect("four corners edge");
        values[idx] = sign as f64 * v;
    }
    values
}

// ---------------------------------------------------------------------------
// Shortest-path fixtures

/// Line graph 0—1—2—3—4 along the x-axis with a strictly longer detour
/// through a raised vertex: the straight path is the unique minimizer for
/// boundary δ(4,0) − δ(0,0).
pub fn segment_path_complex() -> Arc<Complex64> {
    let vertices = vec![
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![2.0, 0.0],
        vec![3.0, 0.0],
        vec![4.0, 0.0],
        vec![2.0, 1.0],
    ];
    let edges = vec![
        vec![0, 1],
        vec![1, 2],
        vec![2, 3],
        vec![3, 4],
        vec![1, 5],
        vec![5, 3],
    ];
    Arc::new(SimplicialComplex::new(2, vertices, &[(1, edges)]).expect("segment path"))
}

/// Endpoint difference for the segment-path instance.
pub fn segment_path_boundary(complex: &Arc<Complex64>) -> Chain64 {
    Chain::from_coeffs(Arc::clone(complex), 0, &[(0, -1), (4, 1)]).expect("path boundary")
}

/// Two equal-length routes between opposite corners of a unit square:
/// P(0,0) → R(1,0) → Q(1,1) and P → S(0,1) → Q. Boundary δQ − δP has two
/// minimizers.
pub fn square_diagonal_complex() -> Arc<Complex64> {
    let vertices = vec![
        vec![0.0, 0.0],
        vec![1.0, 1.0],
        vec![1.0, 0.0],
        vec![0.0, 1.0],
    ];
    let edges = vec![vec![0, 2], vec![2, 1], vec![0, 3], vec![3, 1]];
    Arc::new(SimplicialComplex::new(2, vertices, &[(1, edges)]).expect("two routes"))
}

pub fn square_diagonal_boundary(complex: &Arc<Complex64>) -> Chain64 {
    Chain::from_coeffs(Arc::clone(complex), 0, &[(0, -1), (1, 1)]).expect("route boundary")
}

// ---------------------------------------------------------------------------
// Discretized holomorphic graph

/// Graph of w = z² over [−half, half]² as a triangulated surface in ℝ⁴ with
/// coordinates (Re z, Im z, Re w, Im w), m×m cells. Calibrated by the
/// Kähler form matched to this coordinate interleaving, up to O(h²)
/// discretization error.
pub fn holomorphic_graph_complex(m: usize, half: f64) -> (Arc<Complex64>, Chain64) {
    let h = 2.0 * half / m as f64;
    let mut vertices = Vec::with_capacity((m + 1) * (m + 1));
    for j in 0..=m {
        for i in 0..=m {
            let x = -half + i as f64 * h;
            let y = -half + j as f64 * h;
            vertices.push(vec![x, y, x * x - y * y, 2.0 * x * y]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * m * m);
    for j in 0..m {
        for i in 0..m {
            let v00 = j * (m + 1) + i;
            let v10 = v00 + 1;
            let v01 = v00 + m + 1;
            let v11 = v01 + 1;
            triangles.push(vec![v00, v10, v11]);
            triangles.push(vec![v00, v11, v01]);
        }
    }
    let complex = Arc::new(
        SimplicialComplex::new(4, vertices, &[(2, triangles)]).expect("holomorphic graph"),
    );
    let coeffs: Vec<(usize, i64)> = (0..complex.num_simplices(2)).map(|i| (i, 1)).collect();
    let chain = Chain::from_coeffs(Arc::clone(&complex), 2, &coeffs).expect("graph chain");
    (complex, chain)
}

/// The Kähler form for the interleaved coordinates (Re z, Im z, Re w, Im w).
pub fn interleaved_kahler_form() -> FormField<f64> {
    let cov = KCovector::from_terms(2, 4, &[(&[1, 2], 1.0), (&[3, 4], 1.0)])
        .expect("interleaved Kähler covector");
    FormField::constant(cov, Region::all(4))
}

// ---------------------------------------------------------------------------
// Random polynomial forms (Stokes sweeps)

/// Random form field of the given degree on ℝⁿ whose coefficients are
/// quadratic polynomials — smooth test data for Stokes checks, exactly
/// captured by the default quadrature and central differencing.
pub fn random_polynomial_form<R: Rng>(degree: usize, dim: usize, rng: &mut R) -> FormField<f64> {
    let axes: Vec<u8> = (1..=dim as u8).collect();
    let mut indices: Vec<Vec<u8>> = Vec::new();
    collect_index_sets(&axes, degree, &mut Vec::new(), &mut indices);
    // coefficient polynomial c(p) = a + Σ b_i p_i + Σ c_ij p_i p_j per index set
    let mut polys = Vec::with_capacity(indices.len());
    for _ in &indices {
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c: Vec<f64> = (0..dim * dim).map(|_| rng.gen_range(-0.5..0.5)).collect();
        polys.push((a, b, c));
    }
    let indices_eval = indices.clone();
    FormField::new(degree, dim, Region::all(dim), move |p: &[f64]| {
        let mut terms: Vec<(&[u8], f64)> = Vec::with_capacity(indices_eval.len());
        for (idx_set, (a, b, c)) in indices_eval.iter().zip(&polys) {
            let mut v = *a;
            for (i, bi) in b.iter().enumerate() {
                v += bi * p[i];
            }
            for i in 0..p.len() {
                for j in 0..p.len() {
                    v += c[i * p.len() + j] * p[i] * p[j];
                }
            }
            terms.push((idx_set.as_slice(), v));
        }
        KCovector::from_terms(degree, p.len(), &terms)
    })
}

fn collect_index_sets(axes: &[u8], k: usize, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    let start = prefix.last().map_or(0, |&l| l) ;
    for &a in axes.iter().filter(|&&a| a > start) {
        prefix.push(a);
        collect_index_sets(axes, k, prefix, out);
        prefix.pop();
    }
}

/// The five demonstration chains used for Stokes sweeps: flat square,
/// tilted square, annulus ring, solid cube, and the discretized
/// holomorphic graph.
pub fn stokes_demo_chains() -> Vec<(&'static str, Chain64)> {
    let square = unit_square_complex();
    let tilted = tilted_square_complex(0.4);
    let annulus = annulus_complex();
    let cube = cube_complex();
    let (_, holo) = holomorphic_graph_complex(6, 0.7);
    vec![
        ("flat-square", unit_square_chain(&square)),
        ("tilted-square", unit_square_chain(&tilted)),
        ("annulus-ring", annulus_ring_chain(&annulus)),
        ("solid-cube", cube_chain(&cube)),
        ("holomorphic-graph", holo),
    ]
}

// ---------------------------------------------------------------------------
// Random small complexes (oracle sweeps)

/// Random small instance data for minimization sweeps: a complex with at
/// most 14 degree-k simplices and a boundary that is feasible by
/// construction (it bounds a random integer chain). Returns the complex,
/// the degree k, and the boundary chain.
pub fn random_small_instance<R: Rng>(rng: &mut R) -> (Arc<Complex64>, usize, Chain64) {
    loop {
        let k = if rng.gen_bool(0.5) { 1 } else { 2 };
        let nv = rng.gen_range(5..=7);
        let vertices: Vec<Vec<f64>> = (0..nv)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / nv as f64;
                let radius = rng.gen_range(0.6..1.4);
                vec![
                    radius * a.cos() + rng.gen_range(-0.15..0.15),
                    radius * a.sin() + rng.gen_range(-0.15..0.15),
                ]
            })
            .collect();
        let target = if k == 1 { rng.gen_range(7..=12) } else { rng.gen_range(4..=7) };
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut attempts = 0;
        while tuples.len() < target && attempts < 200 {
            attempts += 1;
            let mut t: Vec<usize> = (0..nv).collect();
            for i in 0..=k {
                let j = rng.gen_range(i..nv);
                t.swap(i, j);
            }
            t.truncate(k + 1);
            let mut key = t.clone();
            key.sort_unstable();
            if seen.insert(key) {
                tuples.push(t);
            }
        }
        let Ok(complex) = SimplicialComplex::new(2, vertices, &[(k, tuples)]) else {
            continue;
        };
        if complex.num_simplices(k) > 14 {
            continue;
        }
        let complex = Arc::new(complex);
        // a random chain's boundary is feasible by construction
        let coeffs: Vec<(usize, i64)> = (0..complex.num_simplices(k))
            .map(|i| (i, rng.gen_range(-1..=1)))
            .collect();
        let Ok(filled) = Chain::from_coeffs(Arc::clone(&complex), k, &coeffs) else {
            continue;
        };
        if filled.is_zero() {
            continue;
        }
        let Ok(boundary) = filled.boundary() else { continue };
        if boundary.is_zero() {
            continue;
        }
        return (complex, k, boundary);
    }
}
