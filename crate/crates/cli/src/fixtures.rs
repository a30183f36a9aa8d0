//! Bundled input files for the command-line examples, generated from the
//! library's demo constructions so they can never drift from the code — a
//! test regenerates the set and byte-compares it against the files on disk.
//!
//! Three schemas:
//! * instances: the complex schema plus `k` and a `boundary` chain — inputs
//!   for `calibra plateau`;
//! * chain files: the complex schema plus a `chain` member — inputs for
//!   `calibra density` and `calibra fill`;
//! * certificates: `{degree, values}` cochains for `--certificate`.

use calibra_core::catalog;
use calibra_core::demos;
use calibra_core::forms::FormField;
use calibra_core::plateau::{induced_cochain, CochainCertificate, PlateauInstance};

use crate::chain_file_text;

/// Every bundled fixture as (file name, file text).
pub fn fixture_set() -> Vec<(&'static str, String)> {
    vec![
        ("four-corners.json", four_corners_instance()),
        ("four-corners-certificate.json", four_corners_certificate()),
        ("segment-path.json", segment_path_instance()),
        ("segment-path-certificate.json", segment_path_certificate()),
        ("square-diagonal.json", square_diagonal_instance()),
        ("annulus-hole.json", annulus_hole_instance()),
        ("cone-16gon.json", cone_instance(16)),
        ("cone-64gon.json", cone_instance(64)),
        ("unit-square-chain.json", unit_square_chain_file()),
        ("multiplicity-patch-chain.json", multiplicity_patch_chain_file()),
        ("square-boundary-chain.json", square_boundary_chain_file()),
    ]
}

fn instance_text(instance: &PlateauInstance) -> String {
    let mut text = instance.to_json();
    text.push('\n');
    text
}

/// Two pairs of opposite boundary points on a square with a center vertex:
/// the mass-4 instance with two distinct minimizing chains.
fn four_corners_instance() -> String {
    let complex = demos::four_corners_complex();
    let boundary = demos::four_corners_boundary(&complex);
    instance_text(&PlateauInstance::new(complex, 1, boundary).expect("four-corners instance"))
}

/// The piecewise-constant cochain that is tight on both four-corners
/// minimizers: closed, comass-bounded, value 4 on the boundary data.
fn four_corners_certificate() -> String {
    let complex = demos::four_corners_complex();
    let alpha = CochainCertificate { degree: 1, values: demos::four_corners_certificate(&complex) };
    let mut text = alpha.to_json();
    text.push('\n');
    text
}

/// Endpoints of a segment subdivided into unit edges, with a longer detour
/// available: the shortest-path demo.
fn segment_path_instance() -> String {
    let complex = demos::segment_path_complex();
    let boundary = demos::segment_path_boundary(&complex);
    instance_text(&PlateauInstance::new(complex, 1, boundary).expect("segment-path instance"))
}

/// The constant covector dx¹ evaluated on every edge of the segment-path
/// complex: a certificate that the straight path is the unique minimizer.
fn segment_path_certificate() -> String {
    let complex = demos::segment_path_complex();
    let phi: FormField<f64> = catalog::volume_form(1, 2).expect("dx1 on the plane");
    let (alpha, _excess) =
        induced_cochain(&phi, &complex, 1).expect("segment-path certificate");
    let mut text = alpha.to_json();
    text.push('\n');
    text
}

/// Opposite corners of a unit square whose edge graph offers two routes of
/// equal length: the minimizer is not unique.
fn square_diagonal_instance() -> String {
    let complex = demos::square_diagonal_complex();
    let boundary = demos::square_diagonal_boundary(&complex);
    instance_text(&PlateauInstance::new(complex, 1, boundary).expect("square-diagonal instance"))
}

/// The inner rim of a triangulated annulus: a 1-cycle that bounds nothing in
/// the complex, so the solve reports INFEASIBLE.
fn annulus_hole_instance() -> String {
    let complex = demos::annulus_complex();
    let boundary = demos::annulus_hole_loop(&complex);
    instance_text(&PlateauInstance::new(complex, 2, boundary).expect("annulus-hole instance"))
}

/// A regular n-gon rim in ℝ³ with a flat center vertex and a raised one: the
/// flat disc wins, and refining n drives its mass to the area of the circle.
fn cone_instance(nsides: usize) -> String {
    let (complex, rim) = demos::cone_fixture(nsides);
    instance_text(&PlateauInstance::new(complex, 2, rim).expect("cone instance"))
}

/// The two-triangle unit square as a 2-chain (density 1 inside, ½ on the
/// boundary).
fn unit_square_chain_file() -> String {
    let complex = demos::unit_square_complex();
    chain_file_text(&demos::unit_square_chain(&complex))
}

/// A finer grid square carrying coefficient 2 on its upper-right quadrant
/// (density 2 there).
fn multiplicity_patch_chain_file() -> String {
    let complex = demos::grid_square_complex(4);
    chain_file_text(&demos::multiplicity_patch_chain(&complex))
}

/// The boundary of the unit-square 2-chain, as input for `calibra fill`.
fn square_boundary_chain_file() -> String {
    let complex = demos::unit_square_complex();
    let rim = demos::unit_square_chain(&complex).boundary().expect("square boundary");
    chain_file_text(&rim)
}
