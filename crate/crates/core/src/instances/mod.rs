//! Named small polyhedra, the stacked-antiprism family with a known initial
//! cycle, and the text formats for graphs and cycles.

pub mod drawing;
pub mod fixtures;
pub mod format;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{validate_oi3, CycleSeq};
use crate::planar::{
    check_essentially_4_connected, EmbeddingError, FaceId, PlanarEmbedding, RotationTable, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generated instance failed self-validation: {0}")]
    GenerationInvalid(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphName {
    K4,
    Octahedron,
    Cube,
    /// Hub plus a 5-cycle.
    Wheel5,
    /// Hub plus a 6-cycle.
    Wheel6,
    /// Three stacked triangles joined by a prism on each level.
    Tritower,
    Icosahedron,
}

impl GraphName {
    pub const ALL: [GraphName; 7] = [
        GraphName::K4,
        GraphName::Octahedron,
        GraphName::Cube,
        GraphName::Wheel5,
        GraphName::Wheel6,
        GraphName::Tritower,
        GraphName::Icosahedron,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphName::K4 => "k4",
            GraphName::Octahedron => "octahedron",
            GraphName::Cube => "cube",
            GraphName::Wheel5 => "wheel5",
            GraphName::Wheel6 => "wheel6",
            GraphName::Tritower => "tritower",
            GraphName::Icosahedron => "icosahedron",
        }
    }
}

impl fmt::Display for GraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphName {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphName::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| InstanceError::UnknownName(s.to_string()))
    }
}

/// Facts recorded alongside a named graph. Tests recompute them rather than
/// trusting them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownFacts {
    pub vertex_connectivity: usize,
    pub essentially_4_connected: bool,
    pub circumference: usize,
}

#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: GraphName,
    pub embedding: PlanarEmbedding,
    pub facts: KnownFacts,
}

pub fn named_graph(name: GraphName) -> Result<NamedGraph, InstanceError> {
    let (n, faces, facts) = match name {
        GraphName::K4 => {
            (4, vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]], facts(3, true, 4))
        }
        GraphName::Octahedron => {
            let (n, faces) = antiprism_faces(3, false);
            (n, faces, facts(4, true, 6))
        }
        GraphName::Cube => (8, prism_faces(4, 2), facts(3, true, 8)),
        GraphName::Wheel5 => (6, wheel_faces(5), facts(3, true, 6)),
        GraphName::Wheel6 => (7, wheel_faces(6), facts(3, false, 7)),
        GraphName::Tritower => (9, prism_faces(3, 3), facts(3, false, 9)),
        GraphName::Icosahedron => {
            let (n, faces) = antiprism_faces(5, true);
            (n, faces, facts(5, true, 12))
        }
    };
    let embedding = PlanarEmbedding::new(RotationTable::from_faces(n, &faces)?)?;
    Ok(NamedGraph { name, embedding, facts })
}

fn facts(vertex_connectivity: usize, essentially_4_connected: bool, circumference: usize) -> KnownFacts {
    KnownFacts { vertex_connectivity, essentially_4_connected, circumference }
}

/// Triangular faces of the antiprism on rings `u_i = i` and `l_i = k + i`,
/// where `u_i` is adjacent to `l_i` and `l_{i+1}`. When `capped`, apexes
/// `2k` and `2k + 1` are joined to the upper and lower ring; otherwise the
/// two rings bound k-gonal faces.
pub fn antiprism_faces(k: usize, capped: bool) -> (usize, Vec<Vec<VertexId>>) {
    let u = |i: usize| i % k;
    let l = |i: usize| k + i % k;
    let mut faces = Vec::new();
    for i in 0..k {
        faces.push(vec![u(i), l(i), l(i + 1)]);
        faces.push(vec![u(i), l(i + 1), u(i + 1)]);
    }
    if capped {
        let (top, bottom) = (2 * k, 2 * k + 1);
        for i in 0..k {
            faces.push(vec![top, u(i), u(i + 1)]);
            faces.push(vec![bottom, l(i + 1), l(i)]);
        }
        (2 * k + 2, faces)
    } else {
        faces.push((0..k).map(u).collect());
        faces.push((0..k).rev().map(l).collect());
        (2 * k, faces)
    }
}

/// `levels` stacked `k`-gons, vertex `level * k + i`, consecutive levels
/// joined by quadrilaterals.
fn prism_faces(k: usize, levels: usize) -> Vec<Vec<VertexId>> {
    let v = |level: usize, i: usize| level * k + i % k;
    let mut faces = vec![(0..k).map(|i| v(0, i)).collect::<Vec<_>>()];
    for level in 0..levels - 1 {
        for i in 0..k {
            faces.push(vec![v(level, i + 1), v(level, i), v(level + 1, i), v(level + 1, i + 1)]);
        }
    }
    faces.push((0..k).rev().map(|i| v(levels - 1, i)).collect());
    faces
}

/// Rim `0..k`, hub `k`.
fn wheel_faces(k: usize) -> Vec<Vec<VertexId>> {
    let mut faces: Vec<Vec<VertexId>> = (0..k).map(|i| vec![k, i, (i + 1) % k]).collect();
    faces.push((0..k).rev().collect());
    faces
}

/// Inserts a new vertex into each listed face, joined to every vertex of
/// that face. New vertices are numbered from `n` in list order.
pub fn stack_faces(emb: &PlanarEmbedding, faces: &[FaceId]) -> Result<PlanarEmbedding, EmbeddingError> {
    let n = emb.vertex_count();
    let mut stacked = vec![None; emb.faces().len()];
    for (k, &f) in faces.iter().enumerate() {
        stacked[f] = Some(n + k);
    }
    let mut out = Vec::new();
    for f in emb.faces() {
        let vs = emb.face_vertices(f.id);
        match stacked[f.id] {
            None => out.push(vs),
            Some(x) => {
                for i in 0..vs.len() {
                    out.push(vec![vs[i], vs[(i + 1) % vs.len()], x]);
                }
            }
        }
    }
    PlanarEmbedding::new(RotationTable::from_faces(n + faces.len(), &out)?)
}

/// A base graph with a degree-3 vertex stacked into some of its faces and a
/// Hamiltonian cycle of the base, which is an OI3-cycle of the result.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub embedding: PlanarEmbedding,
    pub base: PlanarEmbedding,
    /// `(face of the base, inserted vertex)`.
    pub inserted: Vec<(FaceId, VertexId)>,
    pub initial_cycle: CycleSeq,
}

impl GeneratedInstance {
    fn stacked(
        base: PlanarEmbedding,
        faces: &[FaceId],
        base_cycle: Vec<VertexId>,
    ) -> Result<Self, InstanceError> {
        let embedding = stack_faces(&base, faces)?;
        let n0 = base.vertex_count();
        let inserted = faces.iter().enumerate().map(|(k, &f)| (f, n0 + k)).collect();
        let initial_cycle = CycleSeq::in_graph(&base, base_cycle)
            .map_err(|e| InstanceError::GenerationInvalid(format!("base cycle: {e}")))?;
        if initial_cycle.len() != n0 {
            return Err(InstanceError::GenerationInvalid("base cycle is not Hamiltonian".into()));
        }
        let verdict = check_essentially_4_connected(&embedding);
        if !verdict.essentially_4_connected {
            return Err(InstanceError::GenerationInvalid(format!(
                "not essentially 4-connected (witness {:?})",
                verdict.witness.unwrap_or_default()
            )));
        }
        let report = validate_oi3(&embedding, &initial_cycle)
            .map_err(|e| InstanceError::GenerationInvalid(e.to_string()))?;
        if !report.valid || report.outer.len() != faces.len() {
            return Err(InstanceError::GenerationInvalid(format!(
                "initial cycle is not an OI3-cycle: {:?}",
                report.violations
            )));
        }
        Ok(GeneratedInstance { embedding, base, inserted, initial_cycle })
    }

    pub fn vertex_count(&self) -> usize {
        self.embedding.vertex_count()
    }
}

/// Antiprism on `2k` vertices, capped by two apexes, with a vertex stacked
/// into each of its `4k` triangles: `n = 6k + 2`.
///
/// The initial cycle is the Hamiltonian cycle
/// `u0, top, u1, ..., u(k-1), l0, bottom, l(k-1), ..., l1` of the base.
pub fn gen_inserted_antiprism(k: usize) -> Result<GeneratedInstance, InstanceError> {
    if k < 3 {
        return Err(InstanceError::InvalidParameter(format!("antiprism needs k >= 3, got {k}")));
    }
    let (n0, faces) = antiprism_faces(k, true);
    let base = PlanarEmbedding::new(RotationTable::from_faces(n0, &faces)?)?;
    let (top, bottom) = (2 * k, 2 * k + 1);
    let mut cycle = vec![0, top];
    cycle.extend(1..k);
    cycle.extend([k, bottom]);
    cycle.extend((1..k).rev().map(|i| k + i));
    let all: Vec<FaceId> = (0..base.faces().len()).collect();
    GeneratedInstance::stacked(base, &all, cycle)
}

/// The octahedron with a vertex stacked into each of its 8 faces (`n = 14`),
/// starting from the base Hamiltonian cycle `0 1 2 3 5 4`.
pub fn inserted_octahedron() -> GeneratedInstance {
    let base = named_graph(GraphName::Octahedron).expect("octahedron").embedding;
    let all: Vec<FaceId> = (0..base.faces().len()).collect();
    GeneratedInstance::stacked(base, &all, vec![0, 1, 2, 3, 5, 4]).expect("valid construction")
}
