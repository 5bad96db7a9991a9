//! Tessellation of surface patches and assembly of composite nodoids.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::conics::{ConicKind, ConicSpec};
use crate::error::{Error, Result};
use crate::numerics::find_root_1d;
use crate::roulettes::{ProfilePoint, RouletteKind, RouletteSpec};
use crate::surfgeom::{PatchDomain, SurfaceSpec};
use crate::vector::Vec3;

/// Default radial tolerance at composite joins.
pub const DEFAULT_JOIN_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Face {
    Triangle([usize; 3]),
    Quad([usize; 4]),
}

impl Face {
    pub fn indices(&self) -> &[usize] {
        match self {
            Face::Triangle(ix) => ix,
            Face::Quad(ix) => ix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// Unit normal per vertex.
    pub normals: Vec<Vec3>,
    pub faces: Vec<Face>,
    /// Whether the v-seam is stitched.
    pub closed_in_v: bool,
}

impl Mesh {
    /// Checks index ranges and normal lengths.
    pub fn validate(&self) -> Result<()> {
        if self.normals.len() != self.vertices.len() {
            return Err(Error::InvalidArgument(format!(
                "{} normals for {} vertices",
                self.normals.len(),
                self.vertices.len()
            )));
        }
        for (k, face) in self.faces.iter().enumerate() {
            if let Some(&i) = face.indices().iter().find(|&&i| i >= self.vertices.len()) {
                return Err(Error::InvalidArgument(format!("face {k} refers to vertex {i}")));
            }
        }
        if let Some(k) = self.normals.iter().position(|n| (n.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidArgument(format!("normal {k} is not unit")));
        }
        Ok(())
    }

    fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for face in &self.faces {
            let ix = face.indices();
            for k in 0..ix.len() {
                let (p, q) = (ix[k], ix[(k + 1) % ix.len()]);
                *counts.entry((p.min(q), p.max(q))).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Undirected edges used by exactly one face.
    pub fn boundary_edges(&self) -> Vec<(usize, usize)> {
        self.edge_counts().into_iter().filter(|&(_, n)| n == 1).map(|(e, _)| e).collect()
    }

    /// Number of connected components of the boundary.
    pub fn boundary_loops(&self) -> usize {
        let edges = self.boundary_edges();
        let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(p, q) in &edges {
            adjacency.entry(p).or_default().push(q);
            adjacency.entry(q).or_default().push(p);
        }
        let mut seen = BTreeSet::new();
        let mut loops = 0;
        for &start in adjacency.keys() {
            if !seen.insert(start) {
                continue;
            }
            loops += 1;
            let mut stack = vec![start];
            while let Some(p) = stack.pop() {
                for &q in &adjacency[&p] {
                    if seen.insert(q) {
                        stack.push(q);
                    }
                }
            }
        }
        loops
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_counts().len() as i64 + self.faces.len() as i64
    }

    /// Triangles of a fan split of every face.
    pub fn triangles(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.faces.iter().flat_map(|face| {
            let ix = face.indices();
            (1..ix.len() - 1).map(move |k| [ix[0], ix[k], ix[k + 1]])
        })
    }

    /// `Σ p0 · (p1 × p2) / 6` over the triangles: the enclosed volume of a
    /// closed mesh whose faces are oriented outwards.
    pub fn signed_volume(&self) -> f64 {
        self.triangles()
            .map(|[i, j, k]| self.vertices[i].dot(self.vertices[j].cross(self.vertices[k])))
            .sum::<f64>()
            / 6.0
    }

    // Appends a ring of vertices and returns the index of its first vertex.
    fn push_ring(&mut self, ring: impl IntoIterator<Item = (Vec3, Vec3)>) -> usize {
        let start = self.vertices.len();
        for (p, n) in ring {
            self.vertices.push(p);
            self.normals.push(n);
        }
        start
    }

    // Quads between two rings of `cols` vertices, wrapping when `closed`.
    fn push_strip(&mut self, lower: usize, upper: usize, cols: usize, closed: bool) {
        let spans = if closed { cols } else { cols - 1 };
        for j in 0..spans {
            let jn = (j + 1) % cols;
            self.faces.push(Face::Quad([lower + j, upper + j, upper + jn, lower + jn]));
        }
    }
}

/// Placement of the `t` rows of a tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    #[default]
    UniformT,
    /// Rows equally spaced in meridian arc length.
    UniformArcLength,
}

/// `n ≥ 2` parameter values in `[t1, t2]`, both ends included.
pub fn sample_parameters(roulette: &RouletteSpec, t1: f64, t2: f64, n: usize, sampling: Sampling) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 samples, got {n}")));
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    match sampling {
        Sampling::UniformT => Ok((0..n).map(|i| if i == n - 1 { t2 } else { t1 + (t2 - t1) * step(i) }).collect()),
        Sampling::UniformArcLength => {
            let total = roulette.arclength(t1, t2);
            let mut ts = Vec::with_capacity(n);
            ts.push(t1);
            for i in 1..n - 1 {
                let target = total * step(i);
                let root = find_root_1d(|t| roulette.arclength(t1, t) - target, t1, t2, 1e-13 * total.max(1.0))?;
                ts.push(root.root);
            }
            ts.push(t2);
            Ok(ts)
        }
    }
}

fn v_columns(patch: &PatchDomain, nv: usize) -> Vec<f64> {
    if patch.is_full_turn() {
        (0..nv).map(|j| patch.v1 + TAU * j as f64 / nv as f64).collect()
    } else {
        (0..nv).map(|j| if j == nv - 1 { patch.v2 } else { patch.v1 + patch.v_span() * j as f64 / (nv - 1) as f64 }).collect()
    }
}

/// `nt × nv` grid of exact surface points and closed-form normals, with
/// quads oriented like `x_t × x_v`. A full turn has `nv` distinct columns and
/// a stitched seam.
pub fn tessellate(spec: &SurfaceSpec, patch: &PatchDomain, nt: usize, nv: usize) -> Result<Mesh> {
    tessellate_sampled(spec, patch, nt, nv, Sampling::UniformT)
}

pub fn tessellate_sampled(spec: &SurfaceSpec, patch: &PatchDomain, nt: usize, nv: usize, sampling: Sampling) -> Result<Mesh> {
    if nt < 2 || nv < 3 {
        return Err(Error::InvalidArgument(format!("need nt ≥ 2 and nv ≥ 3, got nt = {nt}, nv = {nv}")));
    }
    let ts = sample_parameters(&spec.roulette, patch.t1, patch.t2, nt, sampling)?;
    let vs = v_columns(patch, nv);
    let closed = patch.is_full_turn();
    let mut mesh = Mesh { closed_in_v: closed, ..Mesh::default() };
    let mut previous = None;
    for &t in &ts {
        let p = spec.roulette.eval(t)?;
        let start = mesh.push_ring(vs.iter().map(|&v| (spec.point_from_profile(p.g, p.f, v), spec.normal(t, v))));
        if let Some(lower) = previous {
            mesh.push_strip(lower, start, nv, closed);
        }
        previous = Some(start);
    }
    Ok(mesh)
}

/// Settings of [`assemble_composite_nodoid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompositeOptions {
    /// Each piece covers `t ∈ [−T, T]`.
    pub t_max: f64,
    pub periods: usize,
    /// Join the last ring back to the first.
    pub closed: bool,
    /// Rows per piece.
    pub nt: usize,
    pub nv: usize,
    pub join_tol: f64,
    pub sampling: Sampling,
}

impl CompositeOptions {
    pub fn new(t_max: f64, periods: usize) -> Self {
        Self { t_max, periods, closed: false, nt: 64, nv: 64, join_tol: DEFAULT_JOIN_TOL, sampling: Sampling::UniformT }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositeNodoid {
    pub mesh: Mesh,
    /// Meridian in traversal order, one point per ring.
    pub profile: Vec<ProfilePoint>,
    /// `|f¹(T) − f²(T)|`.
    pub join_gap: f64,
    /// For closed assemblies, the volume bounded by the smooth surface with
    /// the same closing band, signed like [`Mesh::signed_volume`].
    pub reference_volume: Option<f64>,
}

/// Radial mismatch `|f¹(T) − f²(T)| = 2ab / √(c² cosh²T − a²)` between the
/// two nodaries of `conic` at `t = ±T`.
pub fn join_gap(conic: &ConicSpec, t_max: f64) -> Result<f64> {
    let c1 = RouletteSpec::new(*conic, RouletteKind::Nodary1)?;
    let c2 = RouletteSpec::new(*conic, RouletteKind::Nodary2)?;
    Ok((c1.radius(t_max) - c2.radius(t_max)).abs())
}

/// Chains `periods` copies of `C₁` (over `−T → T`) followed by `C₂` (over
/// `T → −T`), translated along the axis so consecutive pieces start where
/// the previous one ended, and revolves the result.
///
/// Both rings are kept at every join and connected by a flat annulus of
/// width at most `join_tol`. Normals on the reversed pieces are flipped so
/// that the whole mesh is consistently oriented. With `closed`, a band joins
/// the last ring to the first and the mesh has no boundary.
pub fn assemble_composite_nodoid(conic: &ConicSpec, opts: &CompositeOptions) -> Result<CompositeNodoid> {
    if conic.kind() != ConicKind::Hyperbola {
        return Err(Error::InvalidConic(format!("composite nodoids need a hyperbola, got a {:?}", conic.kind())));
    }
    if !(opts.t_max.is_finite() && opts.t_max > 0.0) {
        return Err(Error::InvalidArgument(format!("T must be positive, got {}", opts.t_max)));
    }
    if opts.periods == 0 {
        return Err(Error::InvalidArgument("periods must be at least 1".into()));
    }
    if opts.nt < 2 || opts.nv < 3 {
        return Err(Error::InvalidArgument(format!("need nt ≥ 2 and nv ≥ 3, got nt = {}, nv = {}", opts.nt, opts.nv)));
    }
    if !(opts.join_tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("join tolerance must be non-negative, got {}", opts.join_tol)));
    }
    let gap = join_gap(conic, opts.t_max)?;
    if gap > opts.join_tol {
        return Err(Error::JoinGap { gap, tolerance: opts.join_tol });
    }

    let t = opts.t_max;
    let pieces = [
        (SurfaceSpec::new(RouletteSpec::new(*conic, RouletteKind::Nodary1)?), false),
        (SurfaceSpec::new(RouletteSpec::new(*conic, RouletteKind::Nodary2)?), true),
    ];
    // Rows of one period, in traversal order, relative to the piece start.
    let mut rows = Vec::new();
    for (surface, reversed) in &pieces {
        let mut ts = sample_parameters(&surface.roulette, -t, t, opts.nt, opts.sampling)?;
        if *reversed {
            ts.reverse();
        }
        let points = surface.roulette.sample(&ts)?;
        let g0 = points[0].g;
        let piece_volume = surface.volume(ts[0], ts[ts.len() - 1])?;
        rows.push((surface, *reversed, ts, points.into_iter().map(|p| ProfilePoint { g: p.g - g0, f: p.f }).collect::<Vec<_>>(), piece_volume));
    }

    let vs: Vec<f64> = (0..opts.nv).map(|j| TAU * j as f64 / opts.nv as f64).collect();
    let mut mesh = Mesh { closed_in_v: true, ..Mesh::default() };
    let mut profile = Vec::with_capacity(2 * opts.periods * opts.nt);
    // π ∮ f² dg along the traversal.
    let mut sweep = 0.0;
    let mut offset = 0.0;
    let mut previous: Option<usize> = None;
    let mut first_ring = None;
    for _ in 0..opts.periods {
        for (surface, reversed, ts, points, piece_volume) in &rows {
            for (&tk, p) in ts.iter().zip(points) {
                let g = p.g + offset;
                let start = mesh.push_ring(vs.iter().map(|&v| {
                    let n = surface.normal(tk, v);
                    (surface.point_from_profile(g, p.f, v), if *reversed { -n } else { n })
                }));
                if let Some(lower) = previous {
                    mesh.push_strip(lower, start, opts.nv, true);
                }
                first_ring.get_or_insert(start);
                previous = Some(start);
                profile.push(ProfilePoint { g, f: p.f });
            }
            offset += points[points.len() - 1].g;
            sweep += piece_volume;
        }
    }

    let reference_volume = if opts.closed {
        let (first, last) = (profile[0], profile[profile.len() - 1]);
        if (first.f - last.f).abs() > opts.join_tol {
            return Err(Error::JoinGap { gap: (first.f - last.f).abs(), tolerance: opts.join_tol });
        }
        mesh.push_strip(previous.expect("at least one ring"), first_ring.expect("at least one ring"), opts.nv, true);
        let frustum = PI * (first.g - last.g) * (last.f * last.f + last.f * first.f + first.f * first.f) / 3.0;
        // Faces follow x_s × x_v, which points outward when the meridian
        // loop is traversed clockwise in the (g, f) half-plane.
        Some(-(sweep + frustum))
    } else {
        None
    };

    Ok(CompositeNodoid { mesh, profile, join_gap: gap, reference_volume })
}
