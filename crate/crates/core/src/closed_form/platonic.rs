//! Equiprobable ensembles on the vertices of the Platonic solids.

use std::fmt;
use std::str::FromStr;

use itertools::iproduct;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlatonicKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicKind {
    pub const ALL: [PlatonicKind; 5] = [
        PlatonicKind::Tetrahedron,
        PlatonicKind::Cube,
        PlatonicKind::Octahedron,
        PlatonicKind::Dodecahedron,
        PlatonicKind::Icosahedron,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PlatonicKind::Tetrahedron => "tetrahedron",
            PlatonicKind::Cube => "cube",
            PlatonicKind::Octahedron => "octahedron",
            PlatonicKind::Dodecahedron => "dodecahedron",
            PlatonicKind::Icosahedron => "icosahedron",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            PlatonicKind::Tetrahedron => 4,
            PlatonicKind::Cube => 8,
            PlatonicKind::Octahedron => 6,
            PlatonicKind::Dodecahedron => 20,
            PlatonicKind::Icosahedron => 12,
        }
    }

    /// Coefficient `k` in the published edge-length form `P = (1 + k a)/N`.
    pub fn published_edge_coefficient(&self) -> f64 {
        match self {
            PlatonicKind::Tetrahedron => (3.0f64 / 8.0).sqrt(),
            PlatonicKind::Cube => 3f64.sqrt() / 2.0,
            PlatonicKind::Octahedron => 2f64.sqrt() / 2.0,
            PlatonicKind::Dodecahedron => 1.0 / 3.0,
            PlatonicKind::Icosahedron => (5.0 + 5f64.sqrt()).sqrt() / (2.0 * 2f64.sqrt()),
        }
    }

    /// Circumradius over edge length.
    pub fn circumradius_per_edge(&self) -> f64 {
        match self {
            PlatonicKind::Tetrahedron => (3.0f64 / 8.0).sqrt(),
            PlatonicKind::Cube => 3f64.sqrt() / 2.0,
            PlatonicKind::Octahedron => 1.0 / 2f64.sqrt(),
            PlatonicKind::Dodecahedron => 3f64.sqrt() * (1.0 + 5f64.sqrt()) / 4.0,
            PlatonicKind::Icosahedron => (10.0 + 2.0 * 5f64.sqrt()).sqrt() / 4.0,
        }
    }

    /// Vertices on the unit sphere.
    pub fn unit_vertices(&self) -> Vec<BlochVector> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let signs = [1.0, -1.0];
        let raw: Vec<BlochVector> = match self {
            PlatonicKind::Tetrahedron => iproduct!(signs, signs, signs)
                .filter(|(x, y, z)| x * y * z > 0.0)
                .map(|(x, y, z)| BlochVector::new(x, y, z))
                .collect(),
            PlatonicKind::Cube => iproduct!(signs, signs, signs)
                .map(|(x, y, z)| BlochVector::new(x, y, z))
                .collect(),
            PlatonicKind::Octahedron => vec![
                BlochVector::X,
                -BlochVector::X,
                BlochVector::Y,
                -BlochVector::Y,
                BlochVector::Z,
                -BlochVector::Z,
            ],
            PlatonicKind::Icosahedron => iproduct!(signs, signs)
                .flat_map(|(s, t)| cyclic(0.0, s, t * phi))
                .collect(),
            PlatonicKind::Dodecahedron => {
                let mut v: Vec<BlochVector> = iproduct!(signs, signs, signs)
                    .map(|(x, y, z)| BlochVector::new(x, y, z))
                    .collect();
                v.extend(iproduct!(signs, signs).flat_map(|(s, t)| cyclic(0.0, s / phi, t * phi)));
                v
            }
        };
        raw.into_iter().map(|v| v / v.norm()).collect()
    }
}

fn cyclic(a: f64, b: f64, c: f64) -> [BlochVector; 3] {
    [
        BlochVector::new(a, b, c),
        BlochVector::new(b, c, a),
        BlochVector::new(c, a, b),
    ]
}

impl fmt::Display for PlatonicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlatonicKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PlatonicKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown solid {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatonicSolid {
    pub kind: PlatonicKind,
    /// Circumradius of the vertex set.
    pub scale: f64,
}

impl PlatonicSolid {
    pub fn new(kind: PlatonicKind, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale <= 1.0) {
            return Err(Error::Parameter(format!("scale {scale} outside (0, 1]")));
        }
        Ok(PlatonicSolid { kind, scale })
    }

    pub fn vertices(&self) -> Vec<BlochVector> {
        self.kind
            .unit_vertices()
            .into_iter()
            .map(|v| v * self.scale)
            .collect()
    }

    /// Edge length, from the geometric circumradius ratio.
    pub fn edge(&self) -> f64 {
        self.scale / self.kind.circumradius_per_edge()
    }

    /// Shortest vertex separation, measured on the generated vertices.
    pub fn measured_edge(&self) -> f64 {
        let v = self.vertices();
        let mut best = f64::INFINITY;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                best = best.min(v[i].distance(&v[j]));
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlatonicReference {
    /// `(1 + b)/N`.
    pub via_radius: f64,
    /// `(1 + k a)/N` with the published coefficient `k`.
    pub via_edge: f64,
    pub published_coefficient: f64,
    /// `b/a` for the generated vertices.
    pub measured_coefficient: f64,
}

impl PlatonicReference {
    pub fn coefficient_confirmed(&self, tol: f64) -> bool {
        (self.published_coefficient - self.measured_coefficient).abs() <= tol
    }
}

/// Equiprobable ensemble on the vertices with both reference values.
pub fn platonic_ensemble(solid: PlatonicSolid) -> Result<(WeightedEnsemble, PlatonicReference)> {
    let vertices = solid.vertices();
    let ensemble = WeightedEnsemble::uniform(&vertices)?;
    let n = vertices.len() as f64;
    let a = solid.measured_edge();
    let k = solid.kind.published_edge_coefficient();
    Ok((
        ensemble,
        PlatonicReference {
            via_radius: (1.0 + solid.scale) / n,
            via_edge: (1.0 + k * a) / n,
            published_coefficient: k,
            measured_coefficient: solid.scale / a,
        },
    ))
}
