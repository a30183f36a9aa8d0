//! Engine behind the `calibra` command line: each subcommand is a function
//! from parsed arguments to a [`CmdReport`] — the JSON document to print, an
//! optional CSV rendering of the command's main table, and the process exit
//! code. Keeping the logic here (instead of in `main.rs`) lets integration
//! tests drive commands in-process and keeps the binary a thin argument
//! parser.

pub mod fixtures;

use std::fs;
use std::path::Path;
use std::sync::Arc;

use calibra_core::catalog;
use calibra_core::error::{Error, Result};
use calibra_core::forms::{comass_argmax, ComassOptions, Region};
use calibra_core::graph::{
    self, graph_calibrated_defect, lawson_osserman_map, mss_residual, simons_mean_curvature,
    slag_phase, tangent_plane, CalibratedExample, VerifyTarget,
};
use calibra_core::grassmann::SimplePlane;
use calibra_core::plateau::{
    brute_force_oracle, solve, uniqueness_probe, verify_certificate, CochainCertificate,
    PlateauInstance, Verdict,
};
use calibra_core::simplicial::{density_estimate, fill_cycle, Chain};
use calibra_core::{forms, Chain64, Complex64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Success.
pub const EXIT_OK: i32 = 0;
/// Malformed input, unknown id, or a failed verification.
pub const EXIT_BAD_INPUT: i32 = 1;
/// The requested cycle has no filling in its complex.
pub const EXIT_INFEASIBLE: i32 = 2;
/// A requested uniqueness probe ended without a verdict.
pub const EXIT_UNKNOWN: i32 = 3;

/// What a command hands back to the binary for printing.
pub struct CmdReport {
    pub json: Value,
    /// The command's main table as CSV lines (header first), for `--csv`.
    pub csv: Vec<String>,
    pub exit: i32,
}

/// Exit code for an error that escaped a command.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Infeasible => EXIT_INFEASIBLE,
        _ => EXIT_BAD_INPUT,
    }
}

// ---------------------------------------------------------------------------
// comass

pub struct ComassArgs {
    pub form_id: String,
    pub k: usize,
    pub dim: usize,
    pub theta: f64,
    pub samples: usize,
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
}

/// Deterministic sample points inside a form's region. "All of ℝⁿ" boxes
/// (huge bounds) are narrowed to [−1, 1]ⁿ: comass sampling wants
/// representative points, not astronomically scaled ones. A small margin
/// keeps downstream derivative stencils inside.
pub fn sample_region(region: &Region<f64>, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match region {
        Region::Box { lo, hi } => Ok((0..count)
            .map(|_| {
                lo.iter()
                    .zip(hi)
                    .map(|(&a, &b)| {
                        let (a, b) = if b - a > 100.0 { (a.max(-1.0), b.min(1.0)) } else { (a, b) };
                        a + (b - a) * rng.gen_range(0.05..0.95)
                    })
                    .collect()
            })
            .collect()),
        Region::Annulus { center, inner, outer } => {
            let mut out = Vec::with_capacity(count);
            let mut guard = 0usize;
            while out.len() < count {
                guard += 1;
                if guard > 100_000 * count.max(1) {
                    return Err(Error::ResourceLimit(
                        "annulus rejection sampling failed to fill the quota".into(),
                    ));
                }
                let p: Vec<f64> = center
                    .iter()
                    .map(|c| c + outer * rng.gen_range(-1.0..1.0))
                    .collect();
                let d: f64 = p
                    .iter()
                    .zip(center)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if d >= inner * 1.05 && d <= outer * 0.95 {
                    out.push(p);
                }
            }
            Ok(out)
        }
    }
}

pub fn cmd_comass(args: &ComassArgs) -> Result<CmdReport> {
    let phi = catalog::form_by_id(&args.form_id, args.k, args.dim, args.theta)?;
    let opts = ComassOptions { restarts: args.restarts, iters: args.iters, seed: args.seed };
    // a constant field has one comass; sampling it repeatedly buys nothing
    let count = if phi.is_constant() { 1 } else { args.samples.max(1) };
    let points = sample_region(phi.region(), count, args.seed)?;

    let mut per_point = Vec::with_capacity(points.len());
    let mut best: Option<(f64, Vec<f64>, SimplePlane<f64>)> = None;
    for p in &points {
        let (plane, value) = comass_argmax(&phi, p, &opts)?;
        if best.as_ref().is_none_or(|(b, _, _)| value > *b) {
            best = Some((value, p.clone(), plane));
        }
        per_point.push(value);
    }
    let (comass, argmax_point, argmax_plane) = best.expect("at least one sample point");

    let mut csv = vec!["point_index,comass_value".to_string()];
    for (i, v) in per_point.iter().enumerate() {
        csv.push(format!("{i},{v}"));
    }
    let json = json!({
        "command": "comass",
        "form": args.form_id,
        "degree": phi.degree(),
        "dim": phi.dim(),
        "constant_field": phi.is_constant(),
        "seed": args.seed,
        "restarts": args.restarts,
        "iters": args.iters,
        "samples_requested": args.samples,
        "samples_evaluated": points.len(),
        "comass": comass,
        "argmax_point": argmax_point,
        "argmax_plane": argmax_plane.frame,
        "per_point_values": per_point,
    });
    Ok(CmdReport { json, csv, exit: EXIT_OK })
}

// ---------------------------------------------------------------------------
// verify

pub struct VerifyArgs {
    pub example_id: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    /// This row demonstrates a violation on purpose; it must FAIL for the
    /// command to succeed.
    expect_fail: bool,
}

impl Check {
    fn passes(&self) -> bool {
        self.value.abs() <= self.threshold
    }
    fn ok(&self) -> bool {
        self.passes() == !self.expect_fail
    }
    fn row(&self) -> Value {
        json!({
            "check": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "pass": self.passes(),
            "expect_fail": self.expect_fail,
        })
    }
}

fn check(name: &'static str, value: f64, threshold: f64) -> Check {
    Check { name, value, threshold, expect_fail: false }
}

/// Points on the |x| = |y| level-set cone in ℝ⁸ at radii in [0.3, 1.5].
fn cone_samples(count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut p: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
        let nx: f64 = p[..4].iter().map(|v| v * v).sum::<f64>().sqrt();
        let ny: f64 = p[4..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if nx < 0.2 || ny < 0.2 {
            continue;
        }
        let scale = rng.gen_range(0.3..1.5) / (nx * 2f64.sqrt());
        for v in &mut p[4..] {
            *v *= nx / ny;
        }
        for v in &mut p {
            *v *= scale;
        }
        out.push(p);
    }
    out
}

fn graph_checks(ex: &CalibratedExample, args: &VerifyArgs, checks: &mut Vec<Check>) -> Result<()> {
    let xs = ex.graph.sample_points(args.samples, args.seed)?;
    let opts = ComassOptions { seed: args.seed, ..ComassOptions::default() };

    let mut residual = 0.0f64;
    for x in &xs {
        for component in mss_residual(&ex.graph, x)? {
            residual = residual.max(component.abs());
        }
    }
    checks.push(check("minimal-surface-system-residual", residual, args.tol));

    let defect = graph_calibrated_defect(&ex.graph, &ex.calibration, &xs)?;
    checks.push(check("calibration-defect", defect, args.tol));

    // contact + tangent-rotation pairings need one optimizer run per point;
    // a handful of points is plenty to catch a broken convention
    let mut cousin = 0.0f64;
    for x in xs.iter().take(8) {
        let mut q = x.clone();
        q.extend(ex.graph.value(x)?);
        let xi = tangent_plane(&ex.graph, x)?;
        cousin = cousin.max(forms::first_cousin_check(&ex.calibration, &q, &xi, &opts)?);
    }
    checks.push(check("first-cousin-pairing", cousin, args.tol));

    match ex.id.as_str() {
        "loc" => {
            // the map is (√5/2)|x| times a unit vector: check the norm identity
            let mut worst = 0.0f64;
            for x in &xs {
                let (val, _, _) = lawson_osserman_map(x)?;
                let lhs: f64 = val.iter().map(|v| v * v).sum::<f64>().sqrt();
                let rhs = 5f64.sqrt() / 2.0 * x.iter().map(|v| v * v).sum::<f64>().sqrt();
                worst = worst.max((lhs - rhs).abs());
            }
            checks.push(check("norm-identity", worst, 1e-12));
        }
        "affine-tilted" => {
            // demonstration: the plain volume form does NOT calibrate a
            // tilted plane; the defect is 1 − cos(tilt) and must show up
            let k = ex.graph.base_dim();
            let vol = catalog::volume_form(k, k + 1)?;
            let defect = graph_calibrated_defect(&ex.graph, &vol, &xs)?;
            checks.push(Check {
                name: "volume-form-defect",
                value: defect,
                threshold: args.tol,
                expect_fail: true,
            });
        }
        id if id.starts_with("slag-quadratic:") => {
            let phase0 = slag_phase(&ex.graph, &xs[0])?;
            let mut drift = 0.0f64;
            for x in &xs {
                drift = drift.max((slag_phase(&ex.graph, x)? - phase0).abs());
            }
            checks.push(check("lagrangian-angle-constancy", drift, 1e-8));
        }
        _ => {}
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CmdReport> {
    let target = graph::verify_target_by_id(&args.example_id)?;
    let mut checks: Vec<Check> = Vec::new();
    match &target {
        VerifyTarget::SimonsCone => {
            let mut worst = 0.0f64;
            for p in cone_samples(args.samples, args.seed) {
                worst = worst.max(simons_mean_curvature(&p)?.abs());
            }
            checks.push(check("mean-curvature-residual", worst, args.tol));
        }
        VerifyTarget::Graph(ex) => graph_checks(ex, args, &mut checks)?,
    }

    let ok = checks.iter().all(Check::ok);
    let mut csv = vec!["check,value,threshold,pass,expect_fail".to_string()];
    for c in &checks {
        csv.push(format!(
            "{},{},{},{},{}",
            c.name,
            c.value,
            c.threshold,
            c.passes(),
            c.expect_fail
        ));
    }
    let json = json!({
        "command": "verify",
        "example": args.example_id,
        "samples": args.samples,
        "seed": args.seed,
        "tol": args.tol,
        "checks": checks.iter().map(Check::row).collect::<Vec<_>>(),
        "ok": ok,
    });
    Ok(CmdReport { json, csv, exit: if ok { EXIT_OK } else { EXIT_BAD_INPUT } })
}

// ---------------------------------------------------------------------------
// plateau

pub struct PlateauArgs {
    pub instance_path: String,
    pub probe: Option<usize>,
    pub oracle: bool,
    pub certificate_path: Option<String>,
    pub seed: u64,
}

/// A chain as report JSON: entries with their vertex tuples for readability.
pub fn chain_value(chain: &Chain64) -> Value {
    let entries: Vec<Value> = chain
        .entries()
        .iter()
        .map(|&(idx, coeff)| {
            json!({
                "index": idx,
                "simplex": chain.complex().simplex(chain.degree(), idx).expect("chain entry"),
                "coefficient": coeff,
            })
        })
        .collect();
    json!({ "degree": chain.degree(), "mass": chain.mass(), "entries": entries })
}

fn read_input(path: &str) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))
}

fn verdict_str(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::Unique => "UNIQUE",
        Verdict::Multiple => "MULTIPLE",
        Verdict::Unknown => "UNKNOWN",
    }
}

pub fn cmd_plateau(args: &PlateauArgs) -> Result<CmdReport> {
    let text = read_input(&args.instance_path)?;
    let instance = PlateauInstance::from_json(&text)?;
    let k = instance.degree();
    let mut json = json!({
        "command": "plateau",
        "instance": args.instance_path,
        "k": k,
        "candidate_simplices": instance.complex().num_simplices(k),
        "boundary_mass": instance.boundary().mass(),
    });
    let obj = json.as_object_mut().expect("report object");

    let solution = match solve(&instance) {
        Ok(sol) => sol,
        Err(Error::Infeasible) => {
            obj.insert("status".into(), json!("INFEASIBLE"));
            return Ok(CmdReport {
                json,
                csv: vec!["status".into(), "INFEASIBLE".into()],
                exit: EXIT_INFEASIBLE,
            });
        }
        Err(e) => return Err(e),
    };
    obj.insert("status".into(), json!("SOLVED"));
    obj.insert("mass".into(), json!(solution.mass));
    obj.insert("lp_objective".into(), json!(solution.lp_objective));
    obj.insert("lp_iterations".into(), json!(solution.lp_iterations));
    obj.insert("branch_and_bound_nodes".into(), json!(solution.bb_nodes));
    obj.insert("chain".into(), chain_value(&solution.chain));

    let mut exit = EXIT_OK;
    let mut minimizers = vec![solution.chain.clone()];
    if let Some(trials) = args.probe {
        let (verdict, alternates) = uniqueness_probe(&instance, &solution, trials, args.seed)?;
        obj.insert("probe_trials".into(), json!(trials));
        obj.insert("verdict".into(), json!(verdict_str(&verdict)));
        obj.insert(
            "alternate_minimizers".into(),
            Value::Array(alternates.iter().map(chain_value).collect()),
        );
        if matches!(verdict, Verdict::Unknown) {
            exit = EXIT_UNKNOWN;
        }
        minimizers.extend(alternates);
    }

    if args.oracle {
        match brute_force_oracle(&instance, 2) {
            Ok(oracle) => {
                let agrees = oracle
                    .min_mass
                    .map(|m| (m - solution.mass).abs() <= 1e-9);
                obj.insert(
                    "oracle".into(),
                    json!({
                        "min_mass": oracle.min_mass,
                        "feasible_count": oracle.feasible_count,
                        "minimizer_count": oracle.minimizers.len(),
                        "minimizers": oracle.minimizers.iter().map(chain_value).collect::<Vec<_>>(),
                        "agrees_with_solve": agrees,
                    }),
                );
            }
            Err(Error::SizeLimit(msg)) => {
                obj.insert("oracle".into(), json!({ "skipped": msg }));
            }
            Err(e) => return Err(e),
        }
    }

    if let Some(cert_path) = &args.certificate_path {
        let alpha = CochainCertificate::from_json(&read_input(cert_path)?)?;
        let report = verify_certificate(&instance, &minimizers, &alpha)?;
        obj.insert(
            "certificate".into(),
            serde_json::to_value(&report).expect("certificate report"),
        );
        if !report.pass {
            exit = EXIT_BAD_INPUT;
        }
    }

    let mut csv = vec!["index,coefficient".to_string()];
    for (idx, c) in solution.chain.entries() {
        csv.push(format!("{idx},{c}"));
    }
    Ok(CmdReport { json, csv, exit })
}

// ---------------------------------------------------------------------------
// chain files (density / fill inputs)

/// Parse a chain file: the complex schema plus a `chain` member. Returns the
/// complex so callers can keep it alive alongside the chain.
pub fn load_chain_file(text: &str) -> Result<(Arc<Complex64>, Chain64)> {
    let complex = Arc::new(Complex64::from_json(text)?);
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    let chain_text = value
        .get("chain")
        .ok_or_else(|| Error::Malformed("chain file needs a \"chain\" member".into()))?
        .to_string();
    let chain = Chain::from_json(complex.clone(), &chain_text)?;
    Ok((complex, chain))
}

/// Serialize a chain with its complex as a chain file.
pub fn chain_file_text(chain: &Chain64) -> String {
    let mut value: Value =
        serde_json::from_str(&chain.complex().to_json()).expect("complex JSON");
    value["chain"] = serde_json::from_str(&chain.to_json()).expect("chain JSON");
    let mut text = serde_json::to_string_pretty(&value).expect("chain file JSON");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// density

pub struct DensityArgs {
    pub chain_path: String,
    pub point: Vec<f64>,
    pub radii: Vec<f64>,
}

pub fn cmd_density(args: &DensityArgs) -> Result<CmdReport> {
    let (_complex, chain) = load_chain_file(&read_input(&args.chain_path)?)?;
    let densities = density_estimate(&chain, &args.point, &args.radii)?;
    let mut csv = vec!["radius,density".to_string()];
    for (r, d) in args.radii.iter().zip(&densities) {
        csv.push(format!("{r},{d}"));
    }
    let json = json!({
        "command": "density",
        "input": args.chain_path,
        "degree": chain.degree(),
        "chain_mass": chain.mass(),
        "point": args.point,
        "radii": args.radii,
        "densities": densities,
    });
    Ok(CmdReport { json, csv, exit: EXIT_OK })
}

// ---------------------------------------------------------------------------
// fill

pub struct FillArgs {
    pub chain_path: String,
}

pub fn cmd_fill(args: &FillArgs) -> Result<CmdReport> {
    let (_complex, chain) = load_chain_file(&read_input(&args.chain_path)?)?;
    let mut json = json!({
        "command": "fill",
        "input": args.chain_path,
        "cycle": chain_value(&chain),
    });
    let obj = json.as_object_mut().expect("report object");
    match fill_cycle(&chain) {
        Ok(filling) => {
            obj.insert("status".into(), json!("FILLED"));
            obj.insert("filling".into(), chain_value(&filling));
            let mut csv = vec!["index,coefficient".to_string()];
            for (idx, c) in filling.entries() {
                csv.push(format!("{idx},{c}"));
            }
            Ok(CmdReport { json, csv, exit: EXIT_OK })
        }
        Err(Error::Infeasible) => {
            obj.insert("status".into(), json!("INFEASIBLE"));
            Ok(CmdReport {
                json,
                csv: vec!["status".into(), "INFEASIBLE".into()],
                exit: EXIT_INFEASIBLE,
            })
        }
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// report output

/// Write the fixture files into `dir`, returning the file names.
pub fn write_fixtures(dir: &Path) -> std::io::Result<Vec<&'static str>> {
    fs::create_dir_all(dir)?;
    let mut names = Vec::new();
    for (name, text) in fixtures::fixture_set() {
        fs::write(dir.join(name), text)?;
        names.push(name);
    }
    Ok(names)
}
