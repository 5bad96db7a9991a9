//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::f64::consts::{PI, TAU};
use std::path::Path;
use std::process::{Command, ExitCode};

use delaunay::check::{bundle_deviation, expected_mean_curvature, finite_difference_jet, sample_window};
use delaunay::mesh::{assemble_composite_nodoid, join_gap, CompositeOptions, Sampling};
use delaunay::numerics::integrate;
use delaunay::solver::{fit_nodoid, FitKind, FitRequest, MAX_NEWTON_ITERATIONS};
use delaunay::surfgeom::curvatures_generic;
use delaunay::{ConicSpec, PatchDomain, RouletteKind, RouletteSpec, SurfaceKind, SurfaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

struct Verdict {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn verdict(id: &'static str, title: &'static str, passed: bool, detail: String) -> Verdict {
    Verdict { id, title, passed, detail }
}

fn random_roulette(rng: &mut ChaCha8Rng, kind: RouletteKind) -> RouletteSpec {
    let a = rng.gen_range(0.5..3.0);
    let b = match kind {
        RouletteKind::Undulary1 | RouletteKind::Undulary2 => rng.gen_range(0.5..=1.0) * a,
        _ => rng.gen_range(0.5..3.0),
    };
    RouletteSpec::from_parts(kind, a, b).expect("sampled conic is valid")
}

// 50 conics cycling through the five kinds, with 50 parameters each.
fn sample_set(rng: &mut ChaCha8Rng) -> Vec<(RouletteSpec, Vec<f64>)> {
    (0..50)
        .map(|i| {
            let r = random_roulette(rng, RouletteKind::ALL[i % 5]);
            let (lo, hi) = sample_window(r.kind());
            let ts = (0..50).map(|_| rng.gen_range(lo..hi)).collect();
            (r, ts)
        })
        .collect()
}

fn cmc_constancy(set: &[(RouletteSpec, Vec<f64>)]) -> Verdict {
    let mut worst = [0.0_f64; 3];
    for (r, ts) in set {
        let s = SurfaceSpec::new(*r);
        let h0 = expected_mean_curvature(&s);
        let slot = match s.kind() {
            SurfaceKind::Catenoid => 0,
            SurfaceKind::Unduloid => 1,
            _ => 2,
        };
        for &t in ts {
            let h = curvatures_generic(&r.local_jet(t)).map(|k| k.mean).unwrap_or(f64::NAN);
            let err = (h - h0).abs();
            worst[slot] = if err.is_nan() { f64::INFINITY } else { worst[slot].max(err) };
        }
    }
    verdict(
        "1",
        "CMC constancy",
        worst[0] <= 1e-12 && worst[1] <= 1e-10 && worst[2] <= 1e-10,
        format!("max |H − H0|: catenoid {:.2e} (≤1e-12), unduloid {:.2e}, nodoid {:.2e} (≤1e-10)", worst[0], worst[1], worst[2]),
    )
}

fn finite_difference_oracle(set: &[(RouletteSpec, Vec<f64>)]) -> Verdict {
    let mut worst = 0.0_f64;
    for (r, ts) in set {
        let s = SurfaceSpec::new(*r);
        for &t in ts {
            let dev = finite_difference_jet(r, t)
                .and_then(|jet| curvatures_generic(&jet))
                .map(|k| bundle_deviation(&k, &s.curvatures(t)))
                .unwrap_or(f64::INFINITY);
            worst = worst.max(if dev.is_nan() { f64::INFINITY } else { dev });
        }
    }
    verdict("2", "Closed form vs finite differences", worst <= 1e-6, format!("max relative deviation {worst:.2e} (≤1e-6)"))
}

fn rolling_oracle(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst = 0.0_f64;
    for kind in RouletteKind::ALL {
        let r = random_roulette(rng, kind);
        let (lo, hi) = sample_window(kind);
        for _ in 0..20 {
            let t = rng.gen_range(lo..hi);
            let err = match (r.eval(t), r.by_rolling(t)) {
                (Ok(p), Ok(q)) => (p.g - q.g).abs().max((p.f - q.f).abs()),
                _ => f64::INFINITY,
            };
            worst = worst.max(err);
        }
    }
    verdict("3", "Rolling construction", worst <= 1e-8, format!("max |rolled − closed form| {worst:.2e} (≤1e-8)"))
}

fn arclength_identities(rng: &mut ChaCha8Rng) -> Vec<Verdict> {
    let mut quad_worst = 0.0_f64;
    for kind in RouletteKind::ALL {
        for _ in 0..4 {
            let r = random_roulette(rng, kind);
            let (lo, hi) = sample_window(kind);
            let (t0, t1) = (rng.gen_range(lo..hi), rng.gen_range(lo..hi));
            let quad = integrate(|z| r.speed(z), t0, t1, 1e-13, 1e-13).map(|q| q.value).unwrap_or(f64::NAN);
            let err = (r.arclength(t0, t1) - quad).abs();
            quad_worst = quad_worst.max(if err.is_nan() { f64::INFINITY } else { err });
        }
    }
    let (mut und, mut nod, mut pedal) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..10 {
        let a = rng.gen_range(0.5..3.0);
        let e = RouletteSpec::from_parts(RouletteKind::Undulary1, a, rng.gen_range(0.5..=1.0) * a).unwrap();
        let e2 = RouletteSpec::new(*e.conic(), RouletteKind::Undulary2).unwrap();
        und = und.max((e.arclength(-0.5 * PI, 0.5 * PI) + e2.arclength(-0.5 * PI, 0.5 * PI) - TAU * a).abs());

        let b = rng.gen_range(0.5..3.0);
        let n1 = RouletteSpec::from_parts(RouletteKind::Nodary1, a, b).unwrap();
        let n2 = RouletteSpec::new(*n1.conic(), RouletteKind::Nodary2).unwrap();
        let (l1, l2) = (n1.total_length().unwrap(), n2.total_length().unwrap());
        nod = nod.max((l1 + l2 - TAU * a).abs());
        pedal = pedal.max((l1 - 2.0 * a * (b / a).atan()).abs());
    }
    vec![
        verdict("4a", "Arc length: closed form vs quadrature", quad_worst <= 1e-9, format!("max deviation {quad_worst:.2e} (≤1e-9)")),
        verdict("4b", "Arc length: undulary pair sums to 2πa", und <= 1e-10, format!("max deviation {und:.2e} (≤1e-10)")),
        verdict("4c", "Arc length: nodary pair total is 2πa", nod <= 1e-10, format!("max deviation {nod:.2e} (≤1e-10)")),
        verdict("4d", "Arc length: nodary1 total is 2a·arctan(b/a)", pedal <= 1e-12, format!("max deviation {pedal:.2e} (≤1e-12)")),
    ]
}

fn pedal_circle(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst = 0.0_f64;
    for hyperbola in [false, true] {
        let a = rng.gen_range(0.5..3.0);
        let conic = if hyperbola {
            ConicSpec::hyperbola(a, rng.gen_range(0.5..3.0)).unwrap()
        } else {
            ConicSpec::ellipse(a, rng.gen_range(0.5..=1.0) * a).unwrap()
        };
        for _ in 0..20 {
            let t = rng.gen_range(-3.0..3.0);
            for focus in 0..2 {
                let q = conic.pedal_foot(focus, t).map(|q| q.norm()).unwrap_or(f64::NAN);
                let err = (q - a).abs();
                worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
            }
        }
    }
    verdict("5", "Pedal circle", worst <= 1e-10, format!("max ||Q| − a| {worst:.2e} (≤1e-10)"))
}

fn random_patch(rng: &mut ChaCha8Rng, kind: RouletteKind) -> PatchDomain {
    let (lo, hi) = sample_window(kind);
    let t1 = rng.gen_range(lo..hi - 0.1);
    let t2 = rng.gen_range(t1 + 0.05..hi);
    let v1 = rng.gen_range(-PI..PI);
    // Every fifth patch is a full turn.
    let span = if rng.gen_ratio(1, 5) { TAU } else { rng.gen_range(0.05..TAU) };
    PatchDomain::new(t1, t2, v1, v1 + span).unwrap()
}

fn gauss_bonnet(rng: &mut ChaCha8Rng) -> Verdict {
    let kinds = [RouletteKind::Catenary, RouletteKind::Undulary1, RouletteKind::Undulary2, RouletteKind::Nodary1, RouletteKind::Nodary2];
    let mut worst = 0.0_f64;
    let mut covered = std::collections::BTreeSet::new();
    for i in 0..20 {
        let kind = kinds[i % kinds.len()];
        let s = SurfaceSpec::new(random_roulette(rng, kind));
        covered.insert(format!("{:?}", s.kind()));
        let patch = random_patch(rng, kind);
        let res = s.gauss_bonnet_residual(&patch).map(f64::abs).unwrap_or(f64::INFINITY);
        worst = worst.max(res);
    }
    verdict(
        "6",
        "Gauss–Bonnet",
        worst <= 1e-6 && covered.len() == 4,
        format!("max |residual| {worst:.2e} (≤1e-6) over 20 patches, {} surface kinds", covered.len()),
    )
}

fn total_curvature(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst = 0.0_f64;
    for i in 0..20 {
        let kind = RouletteKind::ALL[i % 5];
        let s = SurfaceSpec::new(random_roulette(rng, kind));
        let patch = random_patch(rng, kind);
        let err = s.total_curvature_numeric(&patch).map(|n| (n - s.total_curvature(&patch)).abs()).unwrap_or(f64::INFINITY);
        worst = worst.max(err);
    }
    let cat = SurfaceSpec::new(RouletteSpec::from_parts(RouletteKind::Catenary, 0.0, 1.0).unwrap());
    let full = PatchDomain::full_turn(-20.0, 20.0).unwrap();
    let limit = cat.total_curvature_numeric(&full).map(|k| (k + 4.0 * PI).abs()).unwrap_or(f64::INFINITY);
    verdict(
        "7",
        "Total curvature",
        worst <= 1e-6 && limit <= 1e-6,
        format!("closed vs numeric {worst:.2e}, catenoid |∫K + 4π| at T=20 {limit:.2e} (≤1e-6)"),
    )
}

// The volume and radius constraints evaluated from their printed closed forms.
fn nodoid_constraints(a: f64, b: f64, t0: f64) -> (f64, f64) {
    let c = a.hypot(b);
    let integral = integrate(
        |t: f64| {
            let cc = c * t.cosh();
            (cc - a) / ((cc + a).powi(2) * (cc * cc - a * a).sqrt())
        },
        -t0,
        t0,
        1e-12,
        1e-12,
    )
    .map(|q| q.value)
    .unwrap_or(f64::NAN);
    let cc = c * t0.cosh();
    (PI * a * b.powi(4) * integral, b * (cc - a) / (cc * cc - a * a).sqrt())
}

fn constrained_fit() -> Vec<Verdict> {
    let base = FitRequest::new(FitKind::Nodoid, 1.0, 1.0, Some(1.0)).and_then(|q| fit_nodoid(&q));
    let first = match &base {
        Ok(fit) => {
            let (a, b) = (fit.conic.a().unwrap(), fit.conic.b());
            let (v, r) = nodoid_constraints(a, b, 1.0);
            let (ev, er) = ((v - 1.0).abs(), (r - 1.0).abs());
            verdict(
                "8a",
                "Nodoid fit V=1, r=1, t0=1",
                fit.iterations <= MAX_NEWTON_ITERATIONS && ev <= 1e-8 && er <= 1e-8,
                format!("(a, b) = ({a:.10}, {b:.10}), {} iterations (≤25), re-verified residuals {ev:.2e}, {er:.2e} (≤1e-8)", fit.iterations),
            )
        }
        Err(e) => verdict("8a", "Nodoid fit V=1, r=1, t0=1", false, format!("fit failed: {e}")),
    };
    let lambda = 2.0_f64;
    let scaled = FitRequest::new(FitKind::Nodoid, lambda.powi(3), lambda, Some(1.0)).and_then(|q| fit_nodoid(&q));
    let second = match (&base, &scaled) {
        (Ok(x), Ok(y)) => {
            let da = (y.conic.a().unwrap() - lambda * x.conic.a().unwrap()).abs();
            let db = (y.conic.b() - lambda * x.conic.b()).abs();
            verdict("8b", "Nodoid fit homogeneity λ=2", da <= 1e-6 && db <= 1e-6, format!("|Δa| {da:.2e}, |Δb| {db:.2e} (≤1e-6)"))
        }
        _ => verdict("8b", "Nodoid fit homogeneity λ=2", false, "fit failed".into()),
    };
    vec![first, second]
}

fn cylinder(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst = [0.0_f64; 3];
    for _ in 0..5 {
        let a = rng.gen_range(0.5..3.0);
        let r = RouletteSpec::from_parts(RouletteKind::Undulary1, a, a).unwrap();
        for _ in 0..20 {
            let t = rng.gen_range(-10.0..10.0);
            let k = curvatures_generic(&r.local_jet(t)).unwrap();
            worst[0] = worst[0].max((r.radius(t) - a).abs());
            worst[1] = worst[1].max(k.gaussian.abs());
            worst[2] = worst[2].max((k.mean - 0.5 / a).abs());
        }
    }
    verdict(
        "9",
        "Cylinder limit b = a",
        worst.iter().all(|&w| w <= 1e-12),
        format!("max |f − a| {:.2e}, |K| {:.2e}, |H − 1/(2a)| {:.2e} (≤1e-12)", worst[0], worst[1], worst[2]),
    )
}

fn composite() -> Vec<Verdict> {
    let conic = ConicSpec::hyperbola(1.0, 1.0).unwrap();
    let gap = join_gap(&conic, 8.0).unwrap();
    let gap_verdict = verdict("10a", "Composite join gap at T=8", gap <= 1e-5, format!("|f¹(8) − f²(8)| = {gap:.3e} (≤1e-5)"));

    // The stated T=8 gap exceeds the default join tolerance; the topology and
    // volume checks run at T=8 with the tolerance widened to 1e-3.
    let base = CompositeOptions { join_tol: 1e-3, closed: true, ..CompositeOptions::new(8.0, 4) };
    let topology = match assemble_composite_nodoid(&conic, &CompositeOptions { nt: 32, nv: 24, ..base }) {
        Ok(c) => {
            let loops = c.mesh.boundary_loops();
            verdict("10b", "Closed 4-period composite has no boundary", loops == 0, format!("{loops} boundary rings, χ = {}", c.mesh.euler_characteristic()))
        }
        Err(e) => verdict("10b", "Closed 4-period composite has no boundary", false, format!("assembly failed: {e}")),
    };

    let error = |n: usize| -> Result<f64, delaunay::Error> {
        let c = assemble_composite_nodoid(&conic, &CompositeOptions { nt: n, nv: n, sampling: Sampling::UniformArcLength, ..base })?;
        Ok((c.mesh.signed_volume() - c.reference_volume.unwrap()).abs())
    };
    let convergence = match (error(48), error(96)) {
        (Ok(e1), Ok(e2)) => {
            let ratio = e1 / e2;
            verdict("10c", "Composite mesh volume converges at second order", (3.0..=5.0).contains(&ratio), format!("errors {e1:.3e}, {e2:.3e}, ratio {ratio:.3} (4 ± 25%)"))
        }
        (Err(e), _) | (_, Err(e)) => verdict("10c", "Composite mesh volume converges at second order", false, format!("assembly failed: {e}")),
    };
    vec![gap_verdict, topology, convergence]
}

fn run_cli(args: &[&str], out: &Path) -> Option<Vec<u8>> {
    let status = Command::new(env!("CARGO_BIN_EXE_delaunay")).args(args).arg("--out").arg(out).status().ok()?;
    status.success().then(|| std::fs::read(out).ok()).flatten()
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().expect("temporary directory");
    let mesh_args = ["mesh", "--kind", "nodary2", "--a", "1.3", "--b", "0.7", "--t-min", "-2", "--t-max", "2", "--nt", "40", "--nv", "32"];
    let profile_args = ["profile", "--kind", "undulary1", "--a", "2", "--b", "1", "--t-min", "-3", "--t-max", "3", "--samples", "200"];
    let mut same = true;
    let mut sizes = Vec::new();
    for (name, args) in [("mesh", &mesh_args[..]), ("profile", &profile_args[..])] {
        let first = run_cli(args, &dir.path().join(format!("{name}-1")));
        let second = run_cli(args, &dir.path().join(format!("{name}-2")));
        match (first, second) {
            (Some(x), Some(y)) => {
                same &= x == y && !x.is_empty();
                sizes.push(format!("{name} {} bytes", x.len()));
            }
            _ => {
                same = false;
                sizes.push(format!("{name} failed"));
            }
        }
    }
    verdict("11", "Deterministic CLI output", same, format!("repeated runs byte-identical: {same} ({})", sizes.join(", ")))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let set = sample_set(&mut rng);
    let mut verdicts = vec![cmc_constancy(&set), finite_difference_oracle(&set), rolling_oracle(&mut rng)];
    verdicts.extend(arclength_identities(&mut rng));
    verdicts.push(pedal_circle(&mut rng));
    verdicts.push(gauss_bonnet(&mut rng));
    verdicts.push(total_curvature(&mut rng));
    verdicts.extend(constrained_fit());
    verdicts.push(cylinder(&mut rng));
    verdicts.extend(composite());
    verdicts.push(determinism());

    for v in &verdicts {
        println!("{} {:<4} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.id, v.title, v.detail);
    }
    let failed = verdicts.iter().filter(|v| !v.passed).count();
    println!("acceptance: {} passed, {failed} failed", verdicts.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
