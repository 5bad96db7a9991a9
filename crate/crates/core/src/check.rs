//! Self-check suite: runs the geometric invariants of one surface at seeded
//! random samples and reports the worst deviation of each.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::numerics::{derivative, integrate};
use crate::roulettes::{ProfileJet, RouletteKind, RouletteSpec};
use crate::surfgeom::{curvatures_generic, generic_normal, CurvatureBundle, PatchDomain, SurfaceKind, SurfaceSpec};

pub const DEFAULT_SEED: u64 = 0x5eed;
const SAMPLES: usize = 24;
const PATCHES: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub surface: SurfaceKind,
    pub roulette: RouletteSpec,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
}

/// Parameter window in which the checks sample `t`.
pub fn sample_window(kind: RouletteKind) -> (f64, f64) {
    match kind {
        RouletteKind::Undulary1 | RouletteKind::Undulary2 => (-PI, PI),
        _ => (-2.5, 2.5),
    }
}

/// Expected constant mean curvature.
pub fn expected_mean_curvature(spec: &SurfaceSpec) -> f64 {
    match spec.kind() {
        SurfaceKind::Catenoid => 0.0,
        SurfaceKind::Unduloid => 0.5 / spec.roulette.conic().a().unwrap_or(f64::NAN),
        SurfaceKind::Nodoid1 | SurfaceKind::Nodoid2 => -0.5 / spec.roulette.conic().a().unwrap_or(f64::NAN),
    }
}

/// Meridian jet assembled from Richardson finite differences of
/// [`RouletteSpec::eval`].
pub fn finite_difference_jet(roulette: &RouletteSpec, t: f64) -> Result<ProfileJet> {
    let p = roulette.eval(t)?;
    let f = |z: f64| roulette.radius(z);
    let g = |z: f64| roulette.abscissa(z).unwrap_or(f64::NAN);
    Ok(ProfileJet {
        f: p.f,
        g: p.g,
        df: derivative(f, t, 1),
        dg: derivative(g, t, 1),
        d2f: derivative(f, t, 2),
        d2g: derivative(g, t, 2),
    })
}

/// Largest relative deviation between two curvature bundles, each entry
/// measured against the scale of the principal curvatures.
pub fn bundle_deviation(x: &CurvatureBundle, reference: &CurvatureBundle) -> f64 {
    let s = reference.k1.abs().max(reference.k2.abs()).max(f64::MIN_POSITIVE);
    [
        (x.k1 - reference.k1).abs() / s,
        (x.k2 - reference.k2).abs() / s,
        (x.mean - reference.mean).abs() / s,
        (x.gaussian - reference.gaussian).abs() / (s * s),
        (x.kg - reference.kg).abs() / s.max(reference.kg.abs()),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    worst: f64,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, worst: 0.0 }
    }

    fn record(&mut self, err: f64) {
        // NaN counts as a failure.
        if !(err <= self.worst) {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome { name: self.name, max_error: self.worst, tolerance: self.tolerance, passed: self.worst <= self.tolerance }
    }
}

fn random_patch(rng: &mut ChaCha8Rng, window: (f64, f64)) -> PatchDomain {
    let t1 = rng.gen_range(window.0..window.1 - 0.2);
    let t2 = rng.gen_range(t1 + 0.1..window.1);
    let span = rng.gen_range(0.1..=TAU);
    let v1 = rng.gen_range(-PI..PI);
    PatchDomain::new(t1, t2, v1, v1 + span).expect("sampled patch is valid")
}

/// Runs every invariant on `spec` with samples drawn from a ChaCha stream
/// seeded by `seed`.
pub fn run_checks(spec: &SurfaceSpec, seed: u64) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roulette = &spec.roulette;
    let window = sample_window(roulette.kind());
    let scale = roulette.conic().b().max(roulette.conic().a().unwrap_or(0.0));
    let h_expected = expected_mean_curvature(spec);

    let mut cmc = Tally::new("constant_mean_curvature", 1e-10);
    let mut tables = Tally::new("closed_forms_match_generic", 1e-10);
    let mut fd = Tally::new("finite_difference_curvatures", 1e-6);
    let mut normals = Tally::new("unit_normals", 1e-12);
    let mut rolling = Tally::new("rolling_construction", 1e-8 * scale.max(1.0));
    let mut arclength = Tally::new("arclength_closed_form", 1e-9 * scale.max(1.0));
    let mut gauss_bonnet = Tally::new("gauss_bonnet", 1e-6);
    let mut total_k = Tally::new("total_curvature", 1e-6);

    for _ in 0..SAMPLES {
        let t = rng.gen_range(window.0..window.1);
        let closed = spec.curvatures(t);
        let generic = curvatures_generic(&roulette.local_jet(t))?;
        cmc.record((generic.mean - h_expected).abs() / h_expected.abs().max(1.0));
        tables.record(bundle_deviation(&generic, &closed));
        fd.record(bundle_deviation(&curvatures_generic(&finite_difference_jet(roulette, t)?)?, &closed));

        let v = rng.gen_range(0.0..TAU);
        let n = spec.normal(t, v);
        normals.record((n.norm() - 1.0).abs().max((n - generic_normal(&roulette.local_jet(t), v)).norm()));

        let exact = roulette.eval(t)?;
        let rolled = roulette.by_rolling(t)?;
        rolling.record((exact.g - rolled.g).abs().max((exact.f - rolled.f).abs()));

        let t0 = rng.gen_range(window.0..window.1);
        let quad = integrate(|z| roulette.speed(z), t0, t, 1e-12, 1e-12)?.value;
        arclength.record((roulette.arclength(t0, t) - quad).abs());
    }

    for _ in 0..PATCHES {
        let patch = random_patch(&mut rng, window);
        gauss_bonnet.record(spec.gauss_bonnet_residual(&patch)?.abs());
        total_k.record((spec.total_curvature(&patch) - spec.total_curvature_numeric(&patch)?).abs());
    }

    let checks: Vec<CheckOutcome> =
        [cmc, tables, fd, normals, rolling, arclength, gauss_bonnet, total_k].into_iter().map(Tally::finish).collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(CheckReport { surface: spec.kind(), roulette: *roulette, seed, checks, passed })
}
