//! Parametric conics in the positions used to roll them along a line.
//!
//! * parabola `α(t) = (b sinh²t, 2b sinh t)`, i.e. `y² = 4bx`, focus `(b, 0)`;
//! * ellipse `β(t) = (a cos t, b sin t)`, foci `(±c, 0)` with `c² = a² − b²`;
//! * hyperbola `γ(t) = (a cosh t, b sinh t)`, foci `(±c, 0)` with `c² = a² + b²`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::integrate;
use crate::vector::PlanePoint2;

/// Default absolute and relative tolerance for numeric arc lengths.
pub const ARCLENGTH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConicKind {
    Parabola,
    Ellipse,
    Hyperbola,
}

/// A validated conic. `a` and `c` are meaningless for a parabola and are
/// reported as `None` there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConicSpec {
    kind: ConicKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::InvalidConic(format!("{name} must be positive and finite, got {v}")))
    }
}

impl ConicSpec {
    pub fn parabola(b: f64) -> Result<Self> {
        Ok(Self { kind: ConicKind::Parabola, a: None, b: positive("b", b)?, c: None })
    }

    /// Ellipse with `0 < b ≤ a`; `b = a` is the circle (`c = 0`).
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        let a = positive("a", a)?;
        let b = positive("b", b)?;
        if b > a {
            return Err(Error::InvalidConic(format!("ellipse needs b <= a, got a = {a}, b = {b}")));
        }
        let c = ((a - b) * (a + b)).sqrt();
        Ok(Self { kind: ConicKind::Ellipse, a: Some(a), b, c: Some(c) })
    }

    pub fn hyperbola(a: f64, b: f64) -> Result<Self> {
        let a = positive("a", a)?;
        let b = positive("b", b)?;
        Ok(Self { kind: ConicKind::Hyperbola, a: Some(a), b, c: Some(a.hypot(b)) })
    }

    /// Builds a conic of the given kind; `a` is ignored for a parabola.
    pub fn new(kind: ConicKind, a: f64, b: f64) -> Result<Self> {
        match kind {
            ConicKind::Parabola => Self::parabola(b),
            ConicKind::Ellipse => Self::ellipse(a, b),
            ConicKind::Hyperbola => Self::hyperbola(a, b),
        }
    }

    pub fn kind(&self) -> ConicKind {
        self.kind
    }

    pub fn a(&self) -> Option<f64> {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> Option<f64> {
        self.c
    }

    // Internal accessors for ellipse/hyperbola formulas.
    pub(crate) fn ac(&self) -> (f64, f64) {
        (self.a.unwrap_or(0.0), self.c.unwrap_or(0.0))
    }

    pub fn point(&self, t: f64) -> PlanePoint2 {
        let b = self.b;
        let (a, _) = self.ac();
        match self.kind {
            ConicKind::Parabola => {
                let s = t.sinh();
                PlanePoint2::new(b * s * s, 2.0 * b * s)
            }
            ConicKind::Ellipse => PlanePoint2::new(a * t.cos(), b * t.sin()),
            ConicKind::Hyperbola => PlanePoint2::new(a * t.cosh(), b * t.sinh()),
        }
    }

    /// First derivative of the parametrization.
    pub fn velocity(&self, t: f64) -> PlanePoint2 {
        let b = self.b;
        let (a, _) = self.ac();
        match self.kind {
            ConicKind::Parabola => {
                let (s, c) = (t.sinh(), t.cosh());
                PlanePoint2::new(2.0 * b * s * c, 2.0 * b * c)
            }
            ConicKind::Ellipse => PlanePoint2::new(-a * t.sin(), b * t.cos()),
            ConicKind::Hyperbola => PlanePoint2::new(a * t.sinh(), b * t.cosh()),
        }
    }

    /// `|d/dt point(t)|` in the closed forms `2b cosh²t`,
    /// `√(a² − c² cos²t)` and `√(c² cosh²t − a²)`.
    pub fn speed(&self, t: f64) -> f64 {
        let (a, c) = self.ac();
        match self.kind {
            ConicKind::Parabola => 2.0 * self.b * t.cosh().powi(2),
            ConicKind::Ellipse => {
                let cc = c * t.cos();
                ((a - cc) * (a + cc)).sqrt()
            }
            ConicKind::Hyperbola => {
                let cc = c * t.cosh();
                ((cc - a) * (cc + a)).sqrt()
            }
        }
    }

    /// Point on the conic and the unit tangent in the direction of increasing `t`.
    pub fn tangent(&self, t: f64) -> Result<(PlanePoint2, PlanePoint2)> {
        let d = self.velocity(t);
        let len = d.norm();
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::DegenerateTangent { t });
        }
        Ok((self.point(t), d * (1.0 / len)))
    }

    /// Foci: `[(b, 0)]` for the parabola, `[(c, 0), (−c, 0)]` otherwise.
    pub fn foci(&self) -> Vec<PlanePoint2> {
        match self.kind {
            ConicKind::Parabola => vec![PlanePoint2::new(self.b, 0.0)],
            _ => {
                let (_, c) = self.ac();
                vec![PlanePoint2::new(c, 0.0), PlanePoint2::new(-c, 0.0)]
            }
        }
    }

    pub fn focus(&self, index: usize) -> Result<PlanePoint2> {
        self.foci().get(index).copied().ok_or_else(|| {
            Error::InvalidArgument(format!("focus index {index} out of range for {:?}", self.kind))
        })
    }

    /// Foot of the perpendicular from focus `focus_index` onto the tangent line at `t`.
    pub fn pedal_foot(&self, focus_index: usize, t: f64) -> Result<PlanePoint2> {
        let focus = self.focus(focus_index)?;
        let (p, u) = self.tangent(t)?;
        Ok(p + u * (focus - p).dot(u))
    }

    /// Arc length from `t0` to `t1` (signed when `t1 < t0`).
    pub fn arclength(&self, t0: f64, t1: f64) -> Result<f64> {
        self.arclength_with_tol(t0, t1, ARCLENGTH_TOL)
    }

    /// Arc length with an explicit quadrature tolerance (absolute and relative).
    /// The parabola uses its closed form `b(t + sinh t cosh t)`.
    pub fn arclength_with_tol(&self, t0: f64, t1: f64, tol: f64) -> Result<f64> {
        match self.kind {
            ConicKind::Parabola => {
                let prim = |t: f64| self.b * (t + t.sinh() * t.cosh());
                Ok(prim(t1) - prim(t0))
            }
            _ => Ok(integrate(|z| self.speed(z), t0, t1, tol, tol)?.value),
        }
    }
}
