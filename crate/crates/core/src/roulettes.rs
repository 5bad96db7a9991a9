//! Roulettes of conic foci: the curves traced by a focus while the conic
//! rolls without slipping along a straight line.
//!
//! A roulette is described as a meridian `(g(t), f(t))`: `g` runs along the
//! rolling line (the future axis of revolution) and `f > 0` is the distance to
//! it. The five kinds are
//!
//! | kind        | conic     | focus     | `f(t)`                             |
//! |-------------|-----------|-----------|------------------------------------|
//! | `Catenary`  | parabola  | `(b, 0)`  | `b cosh t`                         |
//! | `Undulary1` | ellipse   | `(c, 0)`  | `b (a − c cos t) / √(a² − c² cos²t)` |
//! | `Undulary2` | ellipse   | `(−c, 0)` | `b (a + c cos t) / √(a² − c² cos²t)` |
//! | `Nodary1`   | hyperbola | `(c, 0)`  | `b (c cosh t − a) / √(c² cosh²t − a²)` |
//! | `Nodary2`   | hyperbola | `(−c, 0)` | `b (c cosh t + a) / √(c² cosh²t − a²)` |
//!
//! For the four non-catenary kinds the tangent is `(f′, g′) = (p(t), b)·h(t)`
//! with an explicit scalar `h`, which also yields the second derivatives.
//! The abscissa `g` is the rolled arc length minus the signed tangent offset
//! of the pedal foot; [`RouletteSpec::eval`] evaluates it by integrating the
//! closed-form `g′`, while [`RouletteSpec::by_rolling`] replays the rolling
//! construction on the conic itself.

use std::f64::consts::PI;

use serde::Serialize;

use crate::conics::{ConicKind, ConicSpec};
use crate::error::{Error, Result};
use crate::numerics::integrate;

/// Tolerance of the quadrature that produces the abscissa `g`.
pub const PROFILE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RouletteKind {
    Catenary,
    Undulary1,
    Undulary2,
    Nodary1,
    Nodary2,
}

impl RouletteKind {
    pub const ALL: [RouletteKind; 5] = [
        RouletteKind::Catenary,
        RouletteKind::Undulary1,
        RouletteKind::Undulary2,
        RouletteKind::Nodary1,
        RouletteKind::Nodary2,
    ];

    pub fn conic_kind(self) -> ConicKind {
        match self {
            RouletteKind::Catenary => ConicKind::Parabola,
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => ConicKind::Ellipse,
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => ConicKind::Hyperbola,
        }
    }

    /// Index into [`ConicSpec::foci`] of the tracing focus.
    pub fn focus_index(self) -> usize {
        match self {
            RouletteKind::Undulary2 | RouletteKind::Nodary2 => 1,
            _ => 0,
        }
    }

    /// +1 for the focus at `(c, 0)`, −1 for `(−c, 0)`.
    fn sign(self) -> f64 {
        if self.focus_index() == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Meridian point: `g` along the axis, `f` the radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    pub g: f64,
    pub f: f64,
}

/// Values and first two `t`-derivatives of the meridian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileJet {
    pub f: f64,
    pub g: f64,
    pub df: f64,
    pub dg: f64,
    pub d2f: f64,
    pub d2g: f64,
}

impl ProfileJet {
    pub fn speed(&self) -> f64 {
        self.df.hypot(self.dg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RouletteSpec {
    conic: ConicSpec,
    kind: RouletteKind,
    t_origin: f64,
}

impl RouletteSpec {
    pub fn new(conic: ConicSpec, kind: RouletteKind) -> Result<Self> {
        if conic.kind() != kind.conic_kind() {
            return Err(Error::InvalidRoulette(format!(
                "{kind:?} is traced by a {:?}, got a {:?}",
                kind.conic_kind(),
                conic.kind()
            )));
        }
        Ok(Self { conic, kind, t_origin: 0.0 })
    }

    /// Convenience constructor; `a` is ignored for the catenary.
    pub fn from_parts(kind: RouletteKind, a: f64, b: f64) -> Result<Self> {
        Self::new(ConicSpec::new(kind.conic_kind(), a, b)?, kind)
    }

    /// Moves the lower limit of the abscissa integral.
    pub fn with_origin(mut self, t_origin: f64) -> Result<Self> {
        if !t_origin.is_finite() {
            return Err(Error::InvalidRoulette(format!("t_origin must be finite, got {t_origin}")));
        }
        self.t_origin = t_origin;
        Ok(self)
    }

    pub fn conic(&self) -> &ConicSpec {
        &self.conic
    }

    pub fn kind(&self) -> RouletteKind {
        self.kind
    }

    pub fn t_origin(&self) -> f64 {
        self.t_origin
    }

    /// Radius `f(t)`.
    pub fn radius(&self, t: f64) -> f64 {
        let b = self.conic.b();
        let (a, c) = self.conic.ac();
        let s = self.kind.sign();
        match self.kind {
            RouletteKind::Catenary => b * t.cosh(),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                let cc = c * t.cos();
                b * (a - s * cc) / ((a - cc) * (a + cc)).sqrt()
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let cc = c * t.cosh();
                b * (cc - s * a) / ((cc - a) * (cc + a)).sqrt()
            }
        }
    }

    /// Closed-form tangent offset subtracted from the rolled arc length:
    /// `b sinh t cosh t`, `± c sin t (a ∓ c cos t)/√…`, `c sinh t (c cosh t ∓ a)/√…`.
    fn offset(&self, t: f64) -> f64 {
        let b = self.conic.b();
        let (a, c) = self.conic.ac();
        let s = self.kind.sign();
        match self.kind {
            RouletteKind::Catenary => b * t.sinh() * t.cosh(),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                let cc = c * t.cos();
                s * c * t.sin() * (a - s * cc) / ((a - cc) * (a + cc)).sqrt()
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let cc = c * t.cosh();
                c * t.sinh() * (cc - s * a) / ((cc - a) * (cc + a)).sqrt()
            }
        }
    }

    /// Jet without the abscissa value: every entry except `g`, which is set
    /// to zero. Curvatures, areas and volumes do not depend on `g`.
    pub fn local_jet(&self, t: f64) -> ProfileJet {
        let b = self.conic.b();
        let (a, c) = self.conic.ac();
        let s = self.kind.sign();
        let f = self.radius(t);
        let (df, dg, d2f, d2g) = match self.kind {
            RouletteKind::Catenary => (b * t.sinh(), b, b * t.cosh(), 0.0),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                let (sn, cs) = t.sin_cos();
                let w2 = a * a - c * c * cs * cs;
                let denom = a + s * c * cs;
                let h = a * b / (w2.sqrt() * denom);
                let dh = h * (s * c * sn / denom - c * c * sn * cs / w2);
                let (p, dp) = (s * c * sn, s * c * cs);
                (p * h, b * h, dp * h + p * dh, b * dh)
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let (sh, ch) = (t.sinh(), t.cosh());
                let cc = c * ch;
                let w2 = (cc - a) * (cc + a);
                let denom = cc + s * a;
                let h = s * a * b / (w2.sqrt() * denom);
                let dh = -h * (c * c * ch * sh / w2 + c * sh / denom);
                let (p, dp) = (c * sh, c * ch);
                (p * h, b * h, dp * h + p * dh, b * dh)
            }
        };
        ProfileJet { f, g: 0.0, df, dg, d2f, d2g }
    }

    /// Axial coordinate `g(t)`.
    pub fn abscissa(&self, t: f64) -> Result<f64> {
        self.abscissa_from(self.t_origin, -self.offset(self.t_origin), t)
    }

    fn abscissa_from(&self, t_known: f64, g_known: f64, t: f64) -> Result<f64> {
        if let RouletteKind::Catenary = self.kind {
            return Ok(g_known + self.conic.b() * (t - t_known));
        }
        let inc = integrate(|z| self.local_jet(z).dg, t_known, t, PROFILE_TOL, PROFILE_TOL)?;
        Ok(g_known + inc.value)
    }

    pub fn eval(&self, t: f64) -> Result<ProfilePoint> {
        Ok(ProfilePoint { g: self.abscissa(t)?, f: self.radius(t) })
    }

    /// Full jet including `g`.
    pub fn jet(&self, t: f64) -> Result<ProfileJet> {
        let mut jet = self.local_jet(t);
        jet.g = self.abscissa(t)?;
        Ok(jet)
    }

    /// Evaluates the meridian along `ts`, integrating `g′` between
    /// consecutive samples rather than from the origin each time.
    pub fn sample(&self, ts: &[f64]) -> Result<Vec<ProfilePoint>> {
        let mut out = Vec::with_capacity(ts.len());
        let mut known = (self.t_origin, -self.offset(self.t_origin));
        for &t in ts {
            let g = self.abscissa_from(known.0, known.1, t)?;
            out.push(ProfilePoint { g, f: self.radius(t) });
            known = (t, g);
        }
        Ok(out)
    }

    /// Closed-form speed: `b cosh t`, `ab/(a ± c cos t)`, `ab/(c cosh t ± a)`.
    pub fn speed(&self, t: f64) -> f64 {
        let b = self.conic.b();
        let (a, c) = self.conic.ac();
        let s = self.kind.sign();
        match self.kind {
            RouletteKind::Catenary => b * t.cosh(),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => a * b / (a + s * c * t.cos()),
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => a * b / (c * t.cosh() + s * a),
        }
    }

    /// Ratio inside the arctan antiderivatives.
    fn arctan_ratio(&self) -> f64 {
        let (a, c) = self.conic.ac();
        let s = self.kind.sign();
        match self.kind.conic_kind() {
            ConicKind::Ellipse => ((a - s * c) / (a + s * c)).sqrt(),
            _ => ((c - s * a) / (c + s * a)).sqrt(),
        }
    }

    /// Continuous antiderivative of the speed.
    fn length_primitive(&self, t: f64) -> f64 {
        let b = self.conic.b();
        let (a, _) = self.conic.ac();
        match self.kind {
            RouletteKind::Catenary => b * t.sinh(),
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => {
                // tan(t/2) jumps at odd multiples of π; shift to the principal
                // branch and add a full period (2πa) per branch crossed.
                let n = ((t + PI) / (2.0 * PI)).floor();
                let reduced = t - 2.0 * PI * n;
                2.0 * a * ((self.arctan_ratio() * (0.5 * reduced).tan()).atan() + PI * n)
            }
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                2.0 * a * (self.arctan_ratio() * (0.5 * t).tanh()).atan()
            }
        }
    }

    /// Arc length of the roulette between `t0` and `t1`, in closed form.
    pub fn arclength(&self, t0: f64, t1: f64) -> f64 {
        self.length_primitive(t1) - self.length_primitive(t0)
    }

    /// Length over the whole parameter line for nodaries
    /// (`4a·arctan(√((c ∓ a)/(c ± a)))`); `None` for other kinds, which are
    /// unbounded.
    pub fn total_length(&self) -> Option<f64> {
        match self.kind {
            RouletteKind::Nodary1 | RouletteKind::Nodary2 => {
                let (a, _) = self.conic.ac();
                Some(4.0 * a * self.arctan_ratio().atan())
            }
            _ => None,
        }
    }

    /// Length of one 2π period of an undulary (`2πa`); `None` otherwise.
    pub fn period_length(&self) -> Option<f64> {
        match self.kind {
            RouletteKind::Undulary1 | RouletteKind::Undulary2 => Some(2.0 * PI * self.conic.ac().0),
            _ => None,
        }
    }

    /// Meridian point obtained by rolling the conic: the tangent line at `t`
    /// is laid on the axis with its direction of increasing `t` pointing
    /// along `+g`, the contact point sitting at the rolled arc length.
    pub fn by_rolling(&self, t: f64) -> Result<ProfilePoint> {
        let focus = self.conic.focus(self.kind.focus_index())?;
        let (contact, dir) = self.conic.tangent(t)?;
        let foot = self.conic.pedal_foot(self.kind.focus_index(), t)?;
        let rolled = self.conic.arclength_with_tol(self.t_origin, t, PROFILE_TOL)?;
        Ok(ProfilePoint { g: rolled + (foot - contact).dot(dir), f: (focus - foot).norm() })
    }
}

/// One member of the constant-length family: a conic together with the two
/// roulettes traced by its foci.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyMember {
    pub first: RouletteSpec,
    pub second: RouletteSpec,
}

impl FamilyMember {
    /// Parameter range over which the two roulettes are measured:
    /// `(−π/2, π/2)` for undularies, the whole line for nodaries.
    pub fn parameter_range(&self) -> (f64, f64) {
        match self.first.kind {
            RouletteKind::Undulary1 => (-0.5 * PI, 0.5 * PI),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Combined closed-form length; equals `2πa` for every member.
    pub fn total_length(&self) -> f64 {
        match (self.first.total_length(), self.second.total_length()) {
            (Some(l1), Some(l2)) => l1 + l2,
            _ => {
                let (lo, hi) = self.parameter_range();
                self.first.arclength(lo, hi) + self.second.arclength(lo, hi)
            }
        }
    }
}

/// Undulary and nodary pairs of total length `2πa`.
///
/// Ellipse members take `b = a(1 − i/n)` for `i = 0..n`, starting at the
/// straight-segment limit `b = a`. Hyperbola members sweep `b` geometrically
/// from `10⁻² a` up to `10² a`, the last member always being `b = 100a`
/// (close to the circle of radius `a`).
pub fn family_constant_length(a: f64, count_ellipse: usize, count_hyperbola: usize) -> Result<Vec<FamilyMember>> {
    let mut members = Vec::with_capacity(count_ellipse + count_hyperbola);
    for i in 0..count_ellipse {
        let b = a * (1.0 - i as f64 / count_ellipse as f64);
        let conic = ConicSpec::ellipse(a, b)?;
        members.push(FamilyMember {
            first: RouletteSpec::new(conic, RouletteKind::Undulary1)?,
            second: RouletteSpec::new(conic, RouletteKind::Undulary2)?,
        });
    }
    for j in 0..count_hyperbola {
        let exponent = -2.0 + 4.0 * (j + 1) as f64 / count_hyperbola as f64;
        let conic = ConicSpec::hyperbola(a, a * 10f64.powf(exponent))?;
        members.push(FamilyMember {
            first: RouletteSpec::new(conic, RouletteKind::Nodary1)?,
            second: RouletteSpec::new(conic, RouletteKind::Nodary2)?,
        });
    }
    Ok(members)
}
