//! Fitting Delaunay surfaces to a prescribed enclosed volume and boundary
//! radius.
//!
//! Every fit describes the piece of surface over `t ∈ [−t0, t0]` whose two
//! boundary circles have radius `r` and which, together with the discs they
//! bound, encloses volume `V`:
//!
//! * nodoids (`Nodary1` meridian) solve the 2×2 system in `(a, b)` by damped
//!   Newton, in units of `r`;
//! * unduloids reduce to one equation in the signed eccentricity `e`, since
//!   the radius condition fixes the scale;
//! * catenoids reduce to one equation in `t0`, with `b = r / cosh t0`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::conics::ConicSpec;
use crate::error::{Error, Result};
use crate::numerics::{find_root_1d, solve_2d};
use crate::roulettes::{RouletteKind, RouletteSpec};
use crate::surfgeom::SurfaceSpec;

/// Quadrature tolerance inside the residuals.
pub const SOLVE_TOL: f64 = 1e-10;
/// Quadrature tolerance of the post-hoc verification.
pub const VERIFY_TOL: f64 = 1e-12;
/// Bound on the scaled residual ∞-norm of an accepted fit.
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const MAX_NEWTON_ITERATIONS: usize = 25;

// Nodoid search box, in units of r.
const AXIS_MIN: f64 = 1e-6;
const AXIS_MAX: f64 = 1e3;
// Eccentricity scan for unduloids.
const ECCENTRICITY_MAX: f64 = 0.999;
const ECCENTRICITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitKind {
    Nodoid,
    Unduloid,
    Catenoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitRequest {
    pub kind: FitKind,
    pub volume: f64,
    pub radius: f64,
    /// Half-width of the parameter interval; solved for catenoids.
    pub t0: Option<f64>,
}

impl FitRequest {
    pub fn new(kind: FitKind, volume: f64, radius: f64, t0: Option<f64>) -> Result<Self> {
        let req = Self { kind, volume, radius, t0 };
        req.validate()?;
        Ok(req)
    }

    fn validate(&self) -> Result<()> {
        if !(self.volume.is_finite() && self.volume > 0.0) {
            return Err(Error::InvalidArgument(format!("volume must be positive, got {}", self.volume)));
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be positive, got {}", self.radius)));
        }
        match (self.kind, self.t0) {
            (FitKind::Catenoid, _) => Ok(()),
            (_, Some(t0)) if t0.is_finite() && t0 > 0.0 => Ok(()),
            (_, Some(t0)) => Err(Error::InvalidArgument(format!("t0 must be positive, got {t0}"))),
            (_, None) => Err(Error::InvalidArgument(format!("{:?} fit needs t0", self.kind))),
        }
    }

    fn t0(&self) -> f64 {
        self.t0.unwrap_or(f64::NAN)
    }
}

/// A converged fit. `residuals` are `(V_fit − V)/V` and `(f(t0) − r)/r`,
/// re-evaluated with quadrature at [`VERIFY_TOL`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub conic: ConicSpec,
    pub kind: RouletteKind,
    pub t0: f64,
    pub residuals: [f64; 2],
    pub iterations: usize,
}

impl FitResult {
    pub fn roulette(&self) -> RouletteSpec {
        RouletteSpec::new(self.conic, self.kind).expect("fit results pair matching conic and roulette")
    }

    pub fn residual_norm(&self) -> f64 {
        self.residuals[0].abs().max(self.residuals[1].abs())
    }
}

pub fn fit(req: &FitRequest) -> Result<FitResult> {
    match req.kind {
        FitKind::Nodoid => fit_nodoid(req),
        FitKind::Unduloid => fit_unduloid(req),
        FitKind::Catenoid => fit_catenoid(req),
    }
}

fn scaled_residuals(roulette: &RouletteSpec, t0: f64, volume: f64, radius: f64, tol: f64) -> Result<[f64; 2]> {
    let v = SurfaceSpec::new(*roulette).volume_with_tol(-t0, t0, tol)?;
    Ok([(v - volume) / volume, (roulette.radius(t0) - radius) / radius])
}

fn finish(roulette: RouletteSpec, t0: f64, req: &FitRequest, iterations: usize) -> Result<FitResult> {
    let residuals = scaled_residuals(&roulette, t0, req.volume, req.radius, VERIFY_TOL)?;
    let norm = residuals[0].abs().max(residuals[1].abs());
    if !(norm <= RESIDUAL_TOL) {
        let (a, _) = roulette.conic().ac();
        return Err(Error::NonConvergence { iterate: [a, roulette.conic().b()], residuals, iterations });
    }
    Ok(FitResult { conic: *roulette.conic(), kind: roulette.kind(), t0, residuals, iterations })
}

/// Nodoid through two circles of radius `r` at `±t0` enclosing volume `V`.
///
/// Newton starts from `a = b = r` and is confined to `a, b ∈ (10⁻⁶ r, 10³ r)`.
pub fn fit_nodoid(req: &FitRequest) -> Result<FitResult> {
    req.validate()?;
    if req.kind != FitKind::Nodoid {
        return Err(Error::InvalidArgument("fit_nodoid needs a nodoid request".into()));
    }
    let (v, r, t0) = (req.volume, req.radius, req.t0());

    let residual = |x: [f64; 2]| -> [f64; 2] {
        if !x.iter().all(|u| *u > AXIS_MIN && *u < AXIS_MAX) {
            return [f64::NAN; 2];
        }
        RouletteSpec::from_parts(RouletteKind::Nodary1, x[0] * r, x[1] * r)
            .and_then(|rs| scaled_residuals(&rs, t0, v, r, SOLVE_TOL))
            .unwrap_or([f64::NAN; 2])
    };
    let sol = solve_2d(residual, [1.0, 1.0], 0.1 * RESIDUAL_TOL, MAX_NEWTON_ITERATIONS).map_err(|e| match e {
        Error::NonConvergence { iterate, residuals, iterations } => {
            Error::NonConvergence { iterate: [iterate[0] * r, iterate[1] * r], residuals, iterations }
        }
        other => other,
    })?;
    let roulette = RouletteSpec::from_parts(RouletteKind::Nodary1, sol.root[0] * r, sol.root[1] * r)?;
    finish(roulette, t0, req, sol.iterations)
}

// Unduloid of semi-major axis 1 and signed eccentricity e; e < 0 selects the
// second focus.
fn unit_unduloid(e: f64) -> Result<RouletteSpec> {
    let kind = if e < 0.0 { RouletteKind::Undulary2 } else { RouletteKind::Undulary1 };
    RouletteSpec::from_parts(kind, 1.0, (1.0 - e * e).sqrt())
}

fn scaled_unduloid(e: f64, t0: f64, r: f64) -> Result<RouletteSpec> {
    let unit = unit_unduloid(e)?;
    let a = r / unit.radius(t0);
    RouletteSpec::from_parts(unit.kind(), a, a * unit.conic().b())
}

/// Unduloid through two circles of radius `r` at `±t0` enclosing volume `V`.
///
/// The radius condition fixes `a = r / f̂(t0; e)` for the unit-axis unduloid
/// of signed eccentricity `e`; the volume condition is then solved for `e` by
/// scanning `(−1, 1)` for sign changes. Of several roots the one nearest the
/// cylinder `e = 0` is returned.
pub fn fit_unduloid(req: &FitRequest) -> Result<FitResult> {
    req.validate()?;
    if req.kind != FitKind::Unduloid {
        return Err(Error::InvalidArgument("fit_unduloid needs an unduloid request".into()));
    }
    let (v, r, t0) = (req.volume, req.radius, req.t0());

    let volume_residual = |e: f64| -> f64 {
        scaled_unduloid(e, t0, r)
            .and_then(|rs| scaled_residuals(&rs, t0, v, r, SOLVE_TOL))
            .map(|res| res[0])
            .unwrap_or(f64::NAN)
    };

    let at_zero = volume_residual(0.0);
    if at_zero.abs() <= 0.1 * RESIDUAL_TOL {
        return finish(scaled_unduloid(0.0, t0, r)?, t0, req, 0);
    }

    let grid: Vec<f64> = (0..=ECCENTRICITY_SAMPLES)
        .map(|i| -ECCENTRICITY_MAX + 2.0 * ECCENTRICITY_MAX * i as f64 / ECCENTRICITY_SAMPLES as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&e| volume_residual(e)).collect();
    let mut brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, fv)| fv[0].is_finite() && fv[1].is_finite() && fv[0] * fv[1] <= 0.0)
        .map(|(ev, _)| (ev[0], ev[1]))
        .collect();
    // Nearest the cylinder first, preferring the first focus on ties.
    brackets.sort_by(|x, y| {
        let dx = x.0.abs().min(x.1.abs());
        let dy = y.0.abs().min(y.1.abs());
        dx.total_cmp(&dy).then(y.0.total_cmp(&x.0))
    });

    let (lo, hi) = *brackets.first().ok_or_else(|| {
        Error::Infeasible(format!(
            "no unduloid through radius {r} at t0 = {t0} encloses volume {v} (|e| ≤ {ECCENTRICITY_MAX})"
        ))
    })?;
    let root = find_root_1d(volume_residual, lo, hi, 0.1 * RESIDUAL_TOL)?;
    if !root.converged {
        let rs = scaled_unduloid(root.root, t0, r)?;
        let (a, _) = rs.conic().ac();
        return Err(Error::NonConvergence {
            iterate: [a, rs.conic().b()],
            residuals: [root.residual_norm, 0.0],
            iterations: root.iterations,
        });
    }
    finish(scaled_unduloid(root.root, t0, r)?, t0, req, root.iterations)
}

// (t + sinh t cosh t) / cosh³t: catenoid volume over [−t, t] in units of π r³.
fn unit_catenoid_volume(t: f64) -> f64 {
    let (s, c) = (t.sinh(), t.cosh());
    (t + s * c) / (c * c * c)
}

/// Parameter at which the catenoid volume for fixed boundary radius peaks;
/// the root of `2 cosh³t = 3 sinh t (t + sinh t cosh t)`.
pub fn catenoid_peak_parameter() -> f64 {
    let slope = |t: f64| {
        let (s, c) = (t.sinh(), t.cosh());
        2.0 * c * c * c - 3.0 * s * (t + s * c)
    };
    find_root_1d(slope, 0.1, 2.0, 1e-15).expect("the volume slope changes sign on [0.1, 2]").root
}

/// Largest volume a catenoid spanning two circles of radius `r` can enclose.
pub fn catenoid_max_volume(radius: f64) -> f64 {
    PI * radius.powi(3) * unit_catenoid_volume(catenoid_peak_parameter())
}

/// Catenoid through two circles of radius `r` enclosing volume `V`; solves
/// for `t0` and `b = r / cosh t0`.
///
/// For fixed `r` the volume rises from 0 at `t0 = 0` to a maximum and then
/// decays; the root on the rising branch (the wider, stable catenoid) is
/// returned.
pub fn fit_catenoid(req: &FitRequest) -> Result<FitResult> {
    req.validate()?;
    if req.kind != FitKind::Catenoid {
        return Err(Error::InvalidArgument("fit_catenoid needs a catenoid request".into()));
    }
    let (v, r) = (req.volume, req.radius);
    let target = v / (PI * r.powi(3));
    let peak = catenoid_peak_parameter();
    let max = unit_catenoid_volume(peak);
    if target > max {
        return Err(Error::Infeasible(format!(
            "a catenoid spanning radius {r} encloses at most {:.6e}, asked for {v}",
            PI * r.powi(3) * max
        )));
    }
    let root = find_root_1d(|t| (unit_catenoid_volume(t) - target) / target, 0.0, peak, 1e-15)?;
    let t0 = root.root;
    let roulette = RouletteSpec::from_parts(RouletteKind::Catenary, 0.0, r / t0.cosh())?;
    finish(roulette, t0, req, root.iterations)
}

/// Role of a member in the constant-volume family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyRole {
    Cylinder,
    Unduloid,
    Catenoid,
    Nodoid,
}

/// One entry of [`constant_volume_family`]; failed fits keep their error.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyEntry {
    pub role: FamilyRole,
    /// Requested `t0` (`None` for the catenoid, which solves for it).
    pub t0: Option<f64>,
    pub outcome: Result<FitResult>,
}

/// Constant-volume family through circles of radius `r`, ordered from the
/// outside in: the cylinder, unduloids for each grid `t0`, the catenoid, and
/// nodoids for each grid `t0`.
///
/// The cylinder is written down directly: radius `r`, height `V / (π r²)`.
pub fn constant_volume_family(volume: f64, radius: f64, t0_grid: &[f64]) -> Result<Vec<FamilyEntry>> {
    if t0_grid.is_empty() {
        return Err(Error::InvalidArgument("t0 grid is empty".into()));
    }
    FitRequest::new(FitKind::Catenoid, volume, radius, None)?;

    let mut entries = Vec::with_capacity(2 * t0_grid.len() + 2);
    // g = r t on the circle-traced meridian, so the height 2 r t_c is V/(π r²).
    let t_cyl = volume / (2.0 * PI * radius.powi(3));
    entries.push(FamilyEntry {
        role: FamilyRole::Cylinder,
        t0: Some(t_cyl),
        outcome: RouletteSpec::from_parts(RouletteKind::Undulary1, radius, radius).map(|rs| FitResult {
            conic: *rs.conic(),
            kind: rs.kind(),
            t0: t_cyl,
            residuals: [0.0, 0.0],
            iterations: 0,
        }),
    });
    for &t0 in t0_grid {
        entries.push(FamilyEntry {
            role: FamilyRole::Unduloid,
            t0: Some(t0),
            outcome: FitRequest::new(FitKind::Unduloid, volume, radius, Some(t0)).and_then(|q| fit_unduloid(&q)),
        });
    }
    entries.push(FamilyEntry {
        role: FamilyRole::Catenoid,
        t0: None,
        outcome: FitRequest::new(FitKind::Catenoid, volume, radius, None).and_then(|q| fit_catenoid(&q)),
    });
    for &t0 in t0_grid {
        entries.push(FamilyEntry {
            role: FamilyRole::Nodoid,
            t0: Some(t0),
            outcome: FitRequest::new(FitKind::Nodoid, volume, radius, Some(t0)).and_then(|q| fit_nodoid(&q)),
        });
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;

    fn nodoid_request(v: f64, r: f64, t0: f64) -> FitRequest {
        FitRequest::new(FitKind::Nodoid, v, r, Some(t0)).unwrap()
    }

    // The nodoid volume integral in its printed closed form.
    fn nodoid_volume_closed(a: f64, b: f64, t0: f64) -> f64 {
        let c = a.hypot(b);
        let integral = integrate(
            |t: f64| {
                let cc = c * t.cosh();
                (cc - a) / ((cc + a).powi(2) * (cc * cc - a * a).sqrt())
            },
            -t0,
            t0,
            1e-13,
            1e-13,
        )
        .unwrap()
        .value;
        PI * a * b.powi(4) * integral
    }

    #[test]
    fn request_validation() {
        assert!(FitRequest::new(FitKind::Nodoid, 0.0, 1.0, Some(1.0)).is_err());
        assert!(FitRequest::new(FitKind::Nodoid, 1.0, -1.0, Some(1.0)).is_err());
        assert!(FitRequest::new(FitKind::Unduloid, 1.0, 1.0, None).is_err());
        assert!(FitRequest::new(FitKind::Unduloid, 1.0, 1.0, Some(0.0)).is_err());
        assert!(FitRequest::new(FitKind::Catenoid, 1.0, 1.0, None).is_ok());
        let req = nodoid_request(1.0, 1.0, 1.0);
        assert!(fit_unduloid(&req).unwrap_err().is_input_error());
    }

    #[test]
    fn nodoid_unit_fit() {
        let fit = fit_nodoid(&nodoid_request(1.0, 1.0, 1.0)).unwrap();
        assert!(fit.iterations <= MAX_NEWTON_ITERATIONS);
        assert!(fit.residual_norm() <= RESIDUAL_TOL);
        let a = fit.conic.a().unwrap();
        let b = fit.conic.b();
        assert!((nodoid_volume_closed(a, b, 1.0) - 1.0).abs() <= 1e-8);
        let c = a.hypot(b);
        let cc = c * 1.0_f64.cosh();
        assert!((b * (cc - a) / (cc * cc - a * a).sqrt() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn nodoid_homogeneity() {
        let base = fit_nodoid(&nodoid_request(1.0, 1.0, 1.0)).unwrap();
        let lambda = 2.0_f64;
        let scaled = fit_nodoid(&nodoid_request(lambda.powi(3), lambda, 1.0)).unwrap();
        assert!((scaled.conic.a().unwrap() - lambda * base.conic.a().unwrap()).abs() <= 1e-6);
        assert!((scaled.conic.b() - lambda * base.conic.b()).abs() <= 1e-6);
    }

    #[test]
    fn nodoid_volume_is_monotone_along_radius_constraint() {
        let fit = fit_nodoid(&nodoid_request(1.0, 1.0, 1.0)).unwrap();
        let (a0, b0) = (fit.conic.a().unwrap(), fit.conic.b());
        // Walk the curve f(t0) = 1 through the solution, sorted by b.
        let mut path = Vec::new();
        for k in -2..=2 {
            let a = a0 * (1.0 + 0.05 * k as f64);
            let radius_gap = |b: f64| RouletteSpec::from_parts(RouletteKind::Nodary1, a, b).unwrap().radius(1.0) - 1.0;
            let b = find_root_1d(radius_gap, 0.5 * b0, 2.0 * b0, 1e-13).unwrap().root;
            path.push((b, nodoid_volume_closed(a, b, 1.0)));
        }
        path.sort_by(|x, y| x.0.total_cmp(&y.0));
        let volumes: Vec<f64> = path.iter().map(|p| p.1).collect();
        let increasing = volumes.windows(2).all(|w| w[1] > w[0]);
        let decreasing = volumes.windows(2).all(|w| w[1] < w[0]);
        assert!(increasing || decreasing, "{volumes:?}");
    }

    #[test]
    fn nodoid_grid() {
        for t0 in [0.8, 1.0, 1.2] {
            let fit = fit_nodoid(&nodoid_request(1.0, 1.0, t0)).unwrap();
            assert!(fit.residual_norm() <= RESIDUAL_TOL, "t0 = {t0}");
        }
    }

    #[test]
    fn unduloid_fit() {
        for (v, t0) in [(1.0, 0.2), (1.0, 0.1), (3.0, 0.5), (8.0, 1.0)] {
            let req = FitRequest::new(FitKind::Unduloid, v, 1.0, Some(t0)).unwrap();
            let fit = fit_unduloid(&req).unwrap();
            assert!(fit.residual_norm() <= RESIDUAL_TOL, "V = {v}, t0 = {t0}");
            let surf = SurfaceSpec::new(fit.roulette());
            assert!((surf.volume(-t0, t0).unwrap() - v).abs() <= 1e-8 * v);
            assert!((fit.roulette().radius(t0) - 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn unduloid_cylinder_limit() {
        let (r, t0) = (1.3, 0.4);
        let v = PI * r * r * (2.0 * r * t0);
        let fit = fit_unduloid(&FitRequest::new(FitKind::Unduloid, v, r, Some(t0)).unwrap()).unwrap();
        assert!(fit.conic.c().unwrap() < 1e-6 * r, "{:?}", fit.conic);
        assert!((fit.conic.a().unwrap() - r).abs() < 1e-6);
    }

    #[test]
    fn unduloid_homogeneity() {
        let req = FitRequest::new(FitKind::Unduloid, 1.0, 1.0, Some(0.2)).unwrap();
        let base = fit_unduloid(&req).unwrap();
        let scaled = fit_unduloid(&FitRequest::new(FitKind::Unduloid, 8.0, 2.0, Some(0.2)).unwrap()).unwrap();
        assert_eq!(base.kind, scaled.kind);
        assert!((scaled.conic.a().unwrap() - 2.0 * base.conic.a().unwrap()).abs() <= 1e-6);
        assert!((scaled.conic.b() - 2.0 * base.conic.b()).abs() <= 1e-6);
    }

    #[test]
    fn unduloid_infeasible() {
        let req = FitRequest::new(FitKind::Unduloid, 1e6, 1.0, Some(0.1)).unwrap();
        assert!(matches!(fit_unduloid(&req), Err(Error::Infeasible(_))));
    }

    #[test]
    fn catenoid_round_trip() {
        let b = 0.8_f64;
        let t0 = (1.0 / b).acosh();
        let v = PI * b.powi(3) * (t0 + t0.sinh() * t0.cosh());
        let fit = fit_catenoid(&FitRequest::new(FitKind::Catenoid, v, 1.0, None).unwrap()).unwrap();
        assert!((fit.conic.b() - b).abs() < 1e-8, "{}", fit.conic.b());
        assert!((fit.t0 - t0).abs() < 1e-8);
        assert!(fit.residual_norm() <= RESIDUAL_TOL);
        let surf = SurfaceSpec::new(fit.roulette());
        assert!((surf.volume(-fit.t0, fit.t0).unwrap() - v).abs() <= 1e-8 * v);
    }

    #[test]
    fn catenoid_peak() {
        let t = catenoid_peak_parameter();
        assert!((t - 0.7302).abs() < 1e-4, "{t}");
        let h = 1e-4;
        assert!(unit_catenoid_volume(t) > unit_catenoid_volume(t - h));
        assert!(unit_catenoid_volume(t) > unit_catenoid_volume(t + h));
        let req = FitRequest::new(FitKind::Catenoid, 1.01 * catenoid_max_volume(1.0), 1.0, None).unwrap();
        assert!(matches!(fit_catenoid(&req), Err(Error::Infeasible(_))));
    }

    #[test]
    fn catenoid_degenerate_radius_equation() {
        // b = r forces t0 = 0 and a vanishing volume.
        assert_eq!(unit_catenoid_volume(0.0), 0.0);
    }

    #[test]
    fn family_order_and_statuses() {
        let grid = [0.8, 1.0, 1.2];
        let family = constant_volume_family(1.0, 1.0, &grid).unwrap();
        let roles: Vec<FamilyRole> = family.iter().map(|e| e.role).collect();
        use FamilyRole::*;
        assert_eq!(roles, vec![Cylinder, Unduloid, Unduloid, Unduloid, Catenoid, Nodoid, Nodoid, Nodoid]);
        let cyl = family[0].outcome.as_ref().unwrap();
        let surf = SurfaceSpec::new(cyl.roulette());
        assert!((surf.volume(-cyl.t0, cyl.t0).unwrap() - 1.0).abs() < 1e-12);
        assert!((surf.roulette.abscissa(cyl.t0).unwrap() * 2.0 - 1.0 / PI).abs() < 1e-12);
        for e in &family[5..] {
            assert!(e.outcome.as_ref().unwrap().residual_norm() <= RESIDUAL_TOL);
        }
        // V = 1 at r = 1 exceeds the catenoid maximum.
        assert!(family[4].outcome.is_err() || family[4].outcome.as_ref().unwrap().residual_norm() <= RESIDUAL_TOL);
    }

    #[test]
    fn family_failures_do_not_abort() {
        let family = constant_volume_family(1e6, 1.0, &[0.1, 0.2]).unwrap();
        assert_eq!(family.len(), 6);
        assert!(family[0].outcome.is_ok());
        assert!(family[1..].iter().all(|e| e.outcome.is_err()));
        assert!(constant_volume_family(1.0, 1.0, &[]).is_err());
    }
}
