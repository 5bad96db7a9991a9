//! Differential geometry of surfaces of revolution
//! `x(t, v) = (f(t) cos v, f(t) sin v, g(t))`.
//!
//! The generic routines work from a [`ProfileJet`]; [`SurfaceSpec`] adds the
//! closed forms specific to catenoids, unduloids and nodoids. The unit normal
//! is `x_t × x_v / |x_t × x_v|` throughout, which points towards the axis
//! wherever `g′ > 0`.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::integrate;
use crate::roulettes::{ProfileJet, RouletteKind, RouletteSpec};
use crate::vector::Vec3;

/// Tolerance used by the numeric integrals of this module.
pub const SURFACE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Catenoid,
    Unduloid,
    Nodoid1,
    Nodoid2,
}

/// First and second fundamental form coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct FundamentalForms {
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub L: f64,
    pub M: f64,
    pub N: f64,
}

/// Principal, mean and Gaussian curvature plus the geodesic curvature of
/// the parallel through the point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureBundle {
    pub k1: f64,
    pub k2: f64,
    #[serde(rename = "H")]
    pub mean: f64,
    #[serde(rename = "K")]
    pub gaussian: f64,
    pub kg: f64,
}

/// Parameter rectangle `[t1, t2] × [v1, v2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PatchDomain {
    pub t1: f64,
    pub t2: f64,
    pub v1: f64,
    pub v2: f64,
}

impl PatchDomain {
    pub fn new(t1: f64, t2: f64, v1: f64, v2: f64) -> Result<Self> {
        if ![t1, t2, v1, v2].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidPatch("bounds must be finite".into()));
        }
        if t1 >= t2 {
            return Err(Error::InvalidPatch(format!("need t1 < t2, got [{t1}, {t2}]")));
        }
        let span = v2 - v1;
        if !(span > 0.0 && span <= TAU + 1e-12) {
            return Err(Error::InvalidPatch(format!("need 0 < v2 - v1 <= 2π, got {span}")));
        }
        Ok(Self { t1, t2, v1, v2 })
    }

    /// Full revolution over `[t1, t2]`.
    pub fn full_turn(t1: f64, t2: f64) -> Result<Self> {
        Self::new(t1, t2, 0.0, TAU)
    }

    pub fn v_span(&self) -> f64 {
        self.v2 - self.v1
    }

    /// Whether the patch closes up around the axis.
    pub fn is_full_turn(&self) -> bool {
        (self.v_span() - TAU).abs() <= 1e-12
    }
}

fn check_jet(jet: &ProfileJet) -> Result<f64> {
    let e = jet.df * jet.df + jet.dg * jet.dg;
    if !(e > 0.0 && e.is_finite()) {
        return Err(Error::DegenerateJet(format!("irregular meridian, |x_t|² = {e}")));
    }
    if !(jet.f > 0.0) {
        return Err(Error::DegenerateJet(format!("radius must be positive, got {}", jet.f)));
    }
    Ok(e)
}

pub fn fundamental_forms(jet: &ProfileJet) -> Result<FundamentalForms> {
    let e = check_jet(jet)?;
    let root = e.sqrt();
    Ok(FundamentalForms {
        E: e,
        F: 0.0,
        G: jet.f * jet.f,
        L: (jet.df * jet.d2g - jet.d2f * jet.dg) / root,
        M: 0.0,
        N: jet.f * jet.dg / root,
    })
}

/// Curvatures of the surface of revolution generated by any regular meridian.
pub fn curvatures_generic(jet: &ProfileJet) -> Result<CurvatureBundle> {
    let ff = fundamental_forms(jet)?;
    let k1 = ff.L / ff.E;
    let k2 = ff.N / ff.G;
    Ok(CurvatureBundle {
        k1,
        k2,
        mean: 0.5 * (k1 + k2),
        gaussian: ff.L * ff.N / (ff.E * ff.G),
        kg: jet.df / (jet.f * ff.E.sqrt()),
    })
}

/// Unit normal `(−g′ cos v, −g′ sin v, f′) / |(f′, g′)|`.
pub fn generic_normal(jet: &ProfileJet, v: f64) -> Vec3 {
    let (s, c) = v.sin_cos();
    let speed = jet.speed();
    Vec3::new(-jet.dg * c / speed, -jet.dg * s / speed, jet.df / speed)
}

/// A Delaunay surface: the revolution of a roulette about its rolling line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSpec {
    pub roulette: RouletteSpec,
}

impl From<RouletteSpec> for SurfaceSpec {
    fn from(roulette: RouletteSpec) -> Self {
        Self { roulette }
    }
}

impl SurfaceSpec {
    pub fn new(roulette: RouletteSpec) -> Self {
        Self { roulette }
    }

    pub fn kind(&self) -> SurfaceKind {
        match self.roulette.kind() {
            RouletteKind::Catenary => SurfaceKind::Catenoid,
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => SurfaceKind::Unduloid,
            RouletteKind::Nodary1 => SurfaceKind::Nodoid1,
            RouletteKind::Nodary2 => SurfaceKind::Nodoid2,
        }
    }

    // (a, b, c) with a = c = 0 for the catenoid.
    fn abc(&self) -> (f64, f64, f64) {
        let conic = self.roulette.conic();
        let (a, c) = conic.ac();
        (a, conic.b(), c)
    }

    // ±1: which focus traces the meridian.
    fn sign(&self) -> f64 {
        if self.roulette.kind().focus_index() == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn point(&self, t: f64, v: f64) -> Result<Vec3> {
        let p = self.roulette.eval(t)?;
        Ok(self.point_from_profile(p.g, p.f, v))
    }

    pub(crate) fn point_from_profile(&self, g: f64, f: f64, v: f64) -> Vec3 {
        let (s, c) = v.sin_cos();
        Vec3::new(f * c, f * s, g)
    }

    /// Closed-form unit normal.
    pub fn normal(&self, t: f64, v: f64) -> Vec3 {
        let (a, b, c) = self.abc();
        let (sv, cv) = v.sin_cos();
        match self.roulette.kind() {
            RouletteKind::Catenary => {
                let ch = t.cosh();
                Vec3::new(-cv / ch, -sv / ch, t.tanh())
            }
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                let cc = c * t.cos();
                let w = ((a - cc) * (a + cc)).sqrt();
                Vec3::new(-b * cv / w, -b * sv / w, self.sign() * c * t.sin() / w)
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let cc = c * t.cosh();
                let w = ((cc - a) * (cc + a)).sqrt();
                let s = self.sign();
                Vec3::new(-s * b * cv / w, -s * b * sv / w, s * c * t.sinh() / w)
            }
        }
    }

    /// Tabulated curvatures of the four surface families.
    pub fn curvatures(&self, t: f64) -> CurvatureBundle {
        let (a, b, c) = self.abc();
        let s = self.sign();
        match self.roulette.kind() {
            RouletteKind::Catenary => {
                let ch2 = t.cosh().powi(2);
                CurvatureBundle {
                    k1: -1.0 / (b * ch2),
                    k2: 1.0 / (b * ch2),
                    mean: 0.0,
                    gaussian: -1.0 / (b * b * ch2 * ch2),
                    kg: t.sinh() / (b * ch2),
                }
            }
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                // Undulary2 is Undulary1 with c → −c.
                let cc = s * c * t.cos();
                let d = a - cc;
                CurvatureBundle {
                    k1: -cc / (a * d),
                    k2: 1.0 / d,
                    mean: 0.5 / a,
                    gaussian: -cc / (a * d * d),
                    kg: s * c * t.sin() / (b * d),
                }
            }
            RouletteKind::Nodary1 => {
                let cc = c * t.cosh();
                let d = cc - a;
                CurvatureBundle {
                    k1: -cc / (a * d),
                    k2: 1.0 / d,
                    mean: -0.5 / a,
                    gaussian: -cc / (a * d * d),
                    kg: c * t.sinh() / (b * d),
                }
            }
            RouletteKind::Nodary2 => {
                let cc = c * t.cosh();
                let d = cc + a;
                CurvatureBundle {
                    k1: -cc / (a * d),
                    k2: -1.0 / d,
                    mean: -0.5 / a,
                    gaussian: cc / (a * d * d),
                    kg: -c * t.sinh() / (b * d),
                }
            }
        }
    }

    /// Generic curvatures applied to the analytic jet.
    pub fn curvatures_from_jet(&self, t: f64) -> Result<CurvatureBundle> {
        curvatures_generic(&self.roulette.local_jet(t))
    }

    /// `k_g · |x_v|` of the parallel at `t`, in closed form:
    /// `tanh t`, `± c sin t / √(a² − c² cos²t)`, `± c sinh t / √(c² cosh²t − a²)`.
    pub fn parallel_turning(&self, t: f64) -> f64 {
        let (a, _, c) = self.abc();
        let s = self.sign();
        match self.roulette.kind() {
            RouletteKind::Catenary => t.tanh(),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                let cc = c * t.cos();
                s * c * t.sin() / ((a - cc) * (a + cc)).sqrt()
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let cc = c * t.cosh();
                s * c * t.sinh() / ((cc - a) * (cc + a)).sqrt()
            }
        }
    }

    /// Closed-form `∫K dσ = −(v2 − v1) [k_g |x_v|]_{t1}^{t2}`.
    pub fn total_curvature(&self, patch: &PatchDomain) -> f64 {
        -patch.v_span() * (self.parallel_turning(patch.t2) - self.parallel_turning(patch.t1))
    }

    /// `∫K dσ` by quadrature of `K |x_t| |x_v|`; the `v` integral is exact.
    pub fn total_curvature_numeric(&self, patch: &PatchDomain) -> Result<f64> {
        let integrand = |t: f64| {
            let jet = self.roulette.local_jet(t);
            let bundle = curvatures_generic(&jet).map(|k| k.gaussian).unwrap_or(f64::NAN);
            bundle * jet.speed() * jet.f
        };
        let r = integrate(integrand, patch.t1, patch.t2, SURFACE_TOL, SURFACE_TOL)?;
        Ok(patch.v_span() * r.value)
    }

    /// `∫_S K dσ + ∫_{C1} k_g dℓ + ∫_{C2} k_g dℓ` with the boundary parallels
    /// oriented by the surface; vanishes for every patch.
    ///
    /// The area term is numeric and the boundary terms come from the generic
    /// `k_g = f′/(f|x_t|)` evaluated on the analytic jet.
    pub fn gauss_bonnet_residual(&self, patch: &PatchDomain) -> Result<f64> {
        let area_term = self.total_curvature_numeric(patch)?;
        let boundary = |t: f64| -> Result<f64> {
            let jet = self.roulette.local_jet(t);
            Ok(curvatures_generic(&jet)?.kg * jet.f)
        };
        let c1 = -patch.v_span() * boundary(patch.t1)?;
        let c2 = patch.v_span() * boundary(patch.t2)?;
        Ok(area_term + c1 + c2)
    }

    /// Signed volume `π ∫ f² g′ dt` swept by the meridian over `[t0, t1]`.
    pub fn volume(&self, t0: f64, t1: f64) -> Result<f64> {
        self.volume_with_tol(t0, t1, SURFACE_TOL)
    }

    pub fn volume_with_tol(&self, t0: f64, t1: f64, tol: f64) -> Result<f64> {
        let r = integrate(
            |t| {
                let jet = self.roulette.local_jet(t);
                jet.f * jet.f * jet.dg
            },
            t0,
            t1,
            tol,
            tol,
        )?;
        Ok(std::f64::consts::PI * r.value)
    }

    /// `(v2 − v1) ∫ f |x_t| dt`.
    pub fn lateral_area(&self, patch: &PatchDomain) -> Result<f64> {
        let r = integrate(|t| self.roulette.radius(t) * self.roulette.speed(t), patch.t1, patch.t2, SURFACE_TOL, SURFACE_TOL)?;
        Ok(patch.v_span() * r.value)
    }
}
