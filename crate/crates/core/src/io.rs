//! Text serialization: Wavefront OBJ meshes and CSV meridian profiles.
//!
//! Floats are written with 17 significant digits, enough to round-trip any
//! `f64`.

use std::io::{self, Write};

use serde::Serialize;

use crate::error::Result;
use crate::mesh::Mesh;
use crate::surfgeom::SurfaceSpec;

/// One row of a meridian profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct ProfileSample {
    pub t: f64,
    pub g: f64,
    pub f: f64,
    pub H: f64,
    pub K: f64,
}

/// Samples the meridian of `spec` at `ts`, with tabulated curvatures.
pub fn profile_samples(spec: &SurfaceSpec, ts: &[f64]) -> Result<Vec<ProfileSample>> {
    let points = spec.roulette.sample(ts)?;
    Ok(ts
        .iter()
        .zip(points)
        .map(|(&t, p)| {
            let k = spec.curvatures(t);
            ProfileSample { t, g: p.g, f: p.f, H: k.mean, K: k.gaussian }
        })
        .collect())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `v`, `vn` and `f i//i ...` records with 1-based indices.
pub fn write_obj<W: Write>(mesh: &Mesh, mut sink: W) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(sink, "v {} {} {}", num(v.x), num(v.y), num(v.z))?;
    }
    for n in &mesh.normals {
        writeln!(sink, "vn {} {} {}", num(n.x), num(n.y), num(n.z))?;
    }
    for face in &mesh.faces {
        let refs: Vec<String> = face.indices().iter().map(|i| format!("{0}//{0}", i + 1)).collect();
        writeln!(sink, "f {}", refs.join(" "))?;
    }
    sink.flush()
}

/// Writes the header `t,g,f,H,K` and one row per sample.
pub fn write_profile_csv<W: Write>(samples: &[ProfileSample], mut sink: W) -> io::Result<()> {
    writeln!(sink, "t,g,f,H,K")?;
    for s in samples {
        writeln!(sink, "{},{},{},{},{}", num(s.t), num(s.g), num(s.f), num(s.H), num(s.K))?;
    }
    sink.flush()
}
