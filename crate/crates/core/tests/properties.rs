//! Randomized invariants for the algebra and chain layers.
//!
//! Identities that hold exactly (multilinear algebra, boundary operators)
//! are checked on arbitrary-precision rational coefficients with zero
//! tolerance; metric statements (frames, comass) run on f64 with pinned
//! tolerances.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::collection::vec as pvec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use calibra_core::demos;
use calibra_core::exterior::{interior, pair, plucker_relations};
use calibra_core::forms::{comass_at, ComassOptions, FormField, Region};
use calibra_core::grassmann::{plane_from_frame, random_plane};
use calibra_core::simplicial::{fill_cycle, pair_form, Chain};
use calibra_core::{KCov64, KCovRat, KVecRat};

fn rq(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// All strictly increasing k-tuples of axes from 1..=n, in lexicographic order.
fn multi_indices(k: usize, n: usize) -> Vec<Vec<u8>> {
    fn rec(start: u8, n: u8, k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..=n {
            cur.push(a);
            rec(a + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n as u8, k, &mut Vec::new(), &mut out);
    out
}

fn rat_covector(k: usize, n: usize, coeffs: &[i64]) -> KCovRat {
    let idx = multi_indices(k, n);
    let terms: Vec<(&[u8], BigRational)> =
        idx.iter().map(|a| a.as_slice()).zip(coeffs.iter().map(|&c| rq(c))).collect();
    KCovRat::from_terms(k, n, &terms).expect("valid covector data")
}

fn rat_vector(k: usize, n: usize, coeffs: &[i64]) -> KVecRat {
    let idx = multi_indices(k, n);
    let terms: Vec<(&[u8], BigRational)> =
        idx.iter().map(|a| a.as_slice()).zip(coeffs.iter().map(|&c| rq(c))).collect();
    KVecRat::from_terms(k, n, &terms).expect("valid vector data")
}

fn is_zero_cov(x: &KCovRat) -> bool {
    x.norm_squared() == rq(0)
}

fn is_zero_vec(x: &KVecRat) -> bool {
    x.norm_squared() == rq(0)
}

/// Exact determinant by cofactor expansion along the first row.
fn det_rat(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return rq(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = rq(0);
    for (j, pivot) in m[0].iter().enumerate() {
        if *pivot == rq(0) {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()
            })
            .collect();
        let term = pivot.clone() * det_rat(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// (n, k₁, coeffs₁, k₂, coeffs₂) with k₁ + k₂ ≤ n, coefficients in [−9, 9].
fn two_tensors() -> impl Strategy<Value = (usize, usize, Vec<i64>, usize, Vec<i64>)> {
    (3usize..=5, 1usize..=2, 1usize..=2)
        .prop_filter("degrees must fit in the ambient dimension", |&(n, k1, k2)| k1 + k2 <= n)
        .prop_flat_map(|(n, k1, k2)| {
            let l1 = multi_indices(k1, n).len();
            let l2 = multi_indices(k2, n).len();
            (Just(n), Just(k1), pvec(-9i64..=9, l1), Just(k2), pvec(-9i64..=9, l2))
        })
}

/// Three tensors sharing an ambient dimension, with degree sum ≤ n.
#[allow(clippy::type_complexity)]
fn three_tensors(
) -> impl Strategy<Value = (usize, usize, Vec<i64>, usize, Vec<i64>, usize, Vec<i64>)> {
    (4usize..=5, 1usize..=2, 1usize..=2, 1usize..=2)
        .prop_filter("degrees must fit in the ambient dimension", |&(n, a, b, c)| a + b + c <= n)
        .prop_flat_map(|(n, a, b, c)| {
            let (la, lb, lc) =
                (multi_indices(a, n).len(), multi_indices(b, n).len(), multi_indices(c, n).len());
            (
                Just(n),
                Just(a),
                pvec(-9i64..=9, la),
                Just(b),
                pvec(-9i64..=9, lb),
                Just(c),
                pvec(-9i64..=9, lc),
            )
        })
}

mod rational_identities {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        /// α ∧ β = (−1)^{kl} β ∧ α, exactly.
        #[test]
        fn wedge_is_graded_anticommutative((n, k1, c1, k2, c2) in two_tensors()) {
            let a = rat_covector(k1, n, &c1);
            let b = rat_covector(k2, n, &c2);
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            let sign = if (k1 * k2) % 2 == 0 { rq(1) } else { rq(-1) };
            prop_assert!(is_zero_cov(&ab.sub(&ba.scale(&sign)).unwrap()));
        }

        /// (α ∧ β) ∧ γ = α ∧ (β ∧ γ), exactly.
        #[test]
        fn wedge_is_associative((n, ka, ca, kb, cb, kc, cc) in three_tensors()) {
            let a = rat_covector(ka, n, &ca);
            let b = rat_covector(kb, n, &cb);
            let c = rat_covector(kc, n, &cc);
            let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert!(is_zero_cov(&left.sub(&right).unwrap()));
        }

        /// (α + s·α′) ∧ β = α ∧ β + s·(α′ ∧ β), exactly.
        #[test]
        fn wedge_is_bilinear(
            (n, k1, c1, k2, c2) in two_tensors(),
            extra in pvec(-9i64..=9, 10),
            s in -7i64..=7,
        ) {
            let a = rat_covector(k1, n, &c1);
            let len = multi_indices(k1, n).len();
            let a2 = rat_covector(k1, n, &extra[..len]);
            let b = rat_covector(k2, n, &c2);
            let s = rq(s);
            let left = a.add(&a2.scale(&s)).unwrap().wedge(&b).unwrap();
            let right = a.wedge(&b).unwrap().add(&a2.wedge(&b).unwrap().scale(&s)).unwrap();
            prop_assert!(is_zero_cov(&left.sub(&right).unwrap()));
        }

        /// ⟨dx^I, v₁∧⋯∧v_k⟩ equals the k×k minor determinant det[(v_i)_{I_j}],
        /// for every multi-index I.
        #[test]
        fn pairing_of_simple_vectors_is_a_minor_determinant(
            n in 2usize..=5,
            k in 1usize..=3,
            flat in pvec(-9i64..=9, 15),
        ) {
            prop_assume!(k <= n);
            let rows: Vec<Vec<i64>> = (0..k).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
            let mut xi = KVecRat::from_terms(0, n, &[(&[][..], rq(1))]).unwrap();
            for row in &rows {
                let coords: Vec<BigRational> = row.iter().map(|&c| rq(c)).collect();
                xi = xi.wedge(&KVecRat::from_components(n, &coords).unwrap()).unwrap();
            }
            for index in multi_indices(k, n) {
                let basis_cov =
                    KCovRat::from_terms(k, n, &[(index.as_slice(), rq(1))]).unwrap();
                let minor: Vec<Vec<BigRational>> = rows
                    .iter()
                    .map(|row| index.iter().map(|&axis| rq(row[axis as usize - 1])).collect())
                    .collect();
                prop_assert_eq!(pair(&basis_cov, &xi).unwrap(), det_rat(&minor));
            }
        }

        /// v ⌟ (α ∧ β) = (v ⌟ α) ∧ β + (−1)^{deg α} α ∧ (v ⌟ β), exactly,
        /// and contracting twice with the same vector annihilates everything.
        #[test]
        fn interior_product_is_an_antiderivation(
            (n, k1, c1, k2, c2) in two_tensors(),
            vraw in pvec(-9i64..=9, 5),
        ) {
            let a = rat_vector(k1, n, &c1);
            let b = rat_vector(k2, n, &c2);
            let v: Vec<BigRational> = vraw[..n].iter().map(|&c| rq(c)).collect();
            let ab = a.wedge(&b).unwrap();
            let left = interior(&v, &ab).unwrap();
            let sign = if k1 % 2 == 0 { rq(1) } else { rq(-1) };
            let right = interior(&v, &a)
                .unwrap()
                .wedge(&b)
                .unwrap()
                .add(&a.wedge(&interior(&v, &b).unwrap()).unwrap().scale(&sign))
                .unwrap();
            prop_assert!(is_zero_vec(&left.sub(&right).unwrap()));
            if ab.degree() >= 2 {
                prop_assert!(is_zero_vec(&interior(&v, &interior(&v, &ab).unwrap()).unwrap()));
            }
        }

        /// ⟨φ, v ⌟ ξ⟩ = ⟨v♭ ∧ φ, ξ⟩ (Euclidean flat on components), exactly.
        #[test]
        fn interior_product_is_adjoint_to_left_wedge(
            n in 3usize..=5,
            k in 2usize..=3,
            xi_raw in pvec(-9i64..=9, 10),
            phi_raw in pvec(-9i64..=9, 10),
            vraw in pvec(-9i64..=9, 5),
        ) {
            prop_assume!(k <= n);
            let lxi = multi_indices(k, n).len();
            let lphi = multi_indices(k - 1, n).len();
            let xi = rat_vector(k, n, &xi_raw[..lxi]);
            let phi = rat_covector(k - 1, n, &phi_raw[..lphi]);
            let v: Vec<BigRational> = vraw[..n].iter().map(|&c| rq(c)).collect();
            let vflat = KCovRat::from_components(n, &v).unwrap();
            let left = pair(&phi, &interior(&v, &xi).unwrap()).unwrap();
            let right = pair(&vflat.wedge(&phi).unwrap(), &xi).unwrap();
            prop_assert_eq!(left, right);
        }

        /// Wedges of 1-vectors are decomposable: every quadratic Plücker
        /// relation of v₁ ∧ v₂ vanishes exactly.
        #[test]
        fn wedges_of_vectors_satisfy_plucker_relations(
            n in 4usize..=6,
            flat in pvec(-9i64..=9, 12),
        ) {
            let u: Vec<BigRational> = flat[..n].iter().map(|&c| rq(c)).collect();
            let w: Vec<BigRational> = flat[6..6 + n].iter().map(|&c| rq(c)).collect();
            let xi = KVecRat::from_components(n, &u)
                .unwrap()
                .wedge(&KVecRat::from_components(n, &w).unwrap())
                .unwrap();
            for rel in plucker_relations(&xi) {
                prop_assert_eq!(rel, rq(0));
            }
        }
    }

    /// A genuinely non-decomposable 2-vector must violate some Plücker relation.
    #[test]
    fn non_simple_vectors_violate_plucker_relations() {
        let xi = rat_vector(2, 4, &[1, 0, 0, 0, 0, 1]); // e₁∧e₂ + e₃∧e₄
        assert!(plucker_relations(&xi).iter().any(|r| *r != rq(0)));
    }
}

mod chain_exactness {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// ∂∂ = 0 exactly on random integer 2-chains.
        #[test]
        fn boundary_of_boundary_vanishes(seed in any::<u64>(), raw in pvec(-3i64..=3, 14)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (complex, k, _) = demos::random_small_instance(&mut rng);
            prop_assume!(k == 2);
            let coeffs: Vec<(usize, i64)> =
                (0..complex.num_simplices(k)).map(|i| (i, raw[i % raw.len()])).collect();
            let chain = Chain::from_coeffs(Arc::clone(&complex), k, &coeffs).unwrap();
            let dd = chain.boundary().unwrap().boundary().unwrap();
            prop_assert!(dd.is_zero());
        }

        /// Filling a chain that is a boundary by construction succeeds, and the
        /// filling's boundary reproduces the input with exact integer equality.
        #[test]
        fn fillings_bound_their_input_exactly(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, _, boundary) = demos::random_small_instance(&mut rng);
            let filling = fill_cycle(&boundary).unwrap();
            prop_assert_eq!(filling.degree(), boundary.degree() + 1);
            prop_assert_eq!(filling.boundary().unwrap().entries(), boundary.entries());
        }

        /// Mass is a norm on chains: positive off zero, absolutely homogeneous
        /// under integer scaling, and subadditive.
        #[test]
        fn mass_is_a_norm(
            seed in any::<u64>(),
            ra in pvec(-3i64..=3, 14),
            rb in pvec(-3i64..=3, 14),
            s in prop::sample::select(vec![-5i64, -2, -1, 0, 1, 3, 7]),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (complex, k, _) = demos::random_small_instance(&mut rng);
            let m = complex.num_simplices(k);
            let coeffs = |raw: &[i64]| -> Vec<(usize, i64)> {
                (0..m).map(|i| (i, raw[i % raw.len()])).collect()
            };
            let a = Chain::from_coeffs(Arc::clone(&complex), k, &coeffs(&ra)).unwrap();
            let b = Chain::from_coeffs(Arc::clone(&complex), k, &coeffs(&rb)).unwrap();
            prop_assert_eq!(a.mass() == 0.0, a.is_zero());
            let scaled = a.scale(s);
            prop_assert!((scaled.mass() - s.abs() as f64 * a.mass()).abs() <= 1e-12 * (1.0 + a.mass()));
            let sum = a.add(&b).unwrap();
            prop_assert!(sum.mass() <= a.mass() + b.mass() + 1e-12);
        }

        /// |∫_T φ| ≤ mass(T) · ‖φ‖₂ for constant coefficient forms: the
        /// Euclidean norm dominates the comass, which is the sharp constant.
        #[test]
        fn pairing_is_bounded_by_mass_times_norm(
            seed in any::<u64>(),
            raw in pvec(-3i64..=3, 14),
            phi_raw in pvec(-4i64..=4, 1),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (complex, k, _) = demos::random_small_instance(&mut rng);
            let m = complex.num_simplices(k);
            let coeffs: Vec<(usize, i64)> = (0..m).map(|i| (i, raw[i % raw.len()])).collect();
            let chain = Chain::from_coeffs(Arc::clone(&complex), k, &coeffs).unwrap();
            let indices = multi_indices(k, 2);
            let terms: Vec<(&[u8], f64)> = indices
                .iter()
                .enumerate()
                .map(|(i, a)| (a.as_slice(), phi_raw[i % phi_raw.len()] as f64 + 0.5))
                .collect();
            let cov = KCov64::from_terms(k, 2, &terms).unwrap();
            let norm = cov.norm_squared().sqrt();
            let phi = FormField::constant(cov, Region::all(2));
            let integral = pair_form(&chain, &phi, 2).unwrap();
            prop_assert!(integral.abs() <= chain.mass() * norm + 1e-9);
        }
    }
}

mod metric_geometry {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Orientation-preserving orthonormalization of integer frames yields
        /// planes that pass their own invariant check (orthonormal frame, unit
        /// simple wedge) and whose wedge keeps the input orientation.
        #[test]
        fn planes_from_integer_frames_validate(
            n in 2usize..=6,
            k in 1usize..=3,
            flat in pvec(-4i64..=4, 18),
        ) {
            prop_assume!(k <= n);
            let rows: Vec<Vec<f64>> =
                (0..k).map(|i| flat[i * n..(i + 1) * n].iter().map(|&c| c as f64).collect()).collect();
            match plane_from_frame(&rows) {
                Ok(plane) => {
                    plane.validate().unwrap();
                    // the raw wedge is a positive multiple of the plane's wedge
                    let mut raw = calibra_core::KVec64::basis(n, &[]).unwrap();
                    for row in &rows {
                        raw = raw.wedge(&calibra_core::KVec64::from_components(n, row).unwrap()).unwrap();
                    }
                    let mut inner = 0.0;
                    for (idx, c) in raw.terms() {
                        inner += *c * plane.plucker.coeff(&idx.axes());
                    }
                    prop_assert!(inner > 0.0);
                    prop_assert!((inner * inner - raw.norm_squared()).abs() <= 1e-6 * (1.0 + raw.norm_squared()));
                }
                Err(_) => {} // rank-deficient integer frames are legitimately rejected
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        /// comass(c·φ) = |c| · comass(φ) within 1e−8.
        #[test]
        fn comass_is_absolutely_homogeneous(
            coeffs in pvec(-3i64..=3, 6),
            c in prop::sample::select(vec![-2.5f64, -1.0, 0.75, 2.0]),
        ) {
            prop_assume!(coeffs.iter().any(|&x| x != 0));
            let idx = multi_indices(2, 4);
            let terms: Vec<(&[u8], f64)> = idx
                .iter()
                .zip(&coeffs)
                .map(|(a, &v)| (a.as_slice(), v as f64))
                .collect();
            let cov = KCov64::from_terms(2, 4, &terms).unwrap();
            let phi = FormField::constant(cov, Region::all(4));
            let opts = ComassOptions { restarts: 24, iters: 200, seed: 7 };
            let base = comass_at(&phi, &[0.0; 4], &opts).unwrap();
            let scaled = comass_at(&phi.scaled(c), &[0.0; 4], &opts).unwrap();
            prop_assert!((scaled - c.abs() * base).abs() <= 1e-8);
        }

        /// The multi-start maximizer dominates every randomly probed plane.
        #[test]
        fn comass_dominates_random_probe_planes(
            coeffs in pvec(-3i64..=3, 6),
            probe_seed in any::<u64>(),
        ) {
            prop_assume!(coeffs.iter().any(|&x| x != 0));
            let idx = multi_indices(2, 4);
            let terms: Vec<(&[u8], f64)> = idx
                .iter()
                .zip(&coeffs)
                .map(|(a, &v)| (a.as_slice(), v as f64))
                .collect();
            let cov = KCov64::from_terms(2, 4, &terms).unwrap();
            let phi = FormField::constant(cov.clone(), Region::all(4));
            let opts = ComassOptions { restarts: 24, iters: 200, seed: 7 };
            let best = comass_at(&phi, &[0.0; 4], &opts).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(probe_seed);
            for _ in 0..5 {
                let plane = random_plane::<f64, _>(2, 4, &mut rng).unwrap();
                let mut val = 0.0;
                for (i, c) in cov.terms() {
                    val += *c * plane.plucker.coeff(&i.axes());
                }
                prop_assert!(best + 1e-7 >= val.abs());
            }
        }
    }
}
