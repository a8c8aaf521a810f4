//! Cycles, outer-independent 3-cycle (OI3) validation and extensions.
//!
//! An OI3-cycle is a cycle `C` whose complement `B = V(G) \ V(C)` is an
//! independent set of degree-3 vertices. The members of `B` are the *outer
//! vertices* of `C`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::{PlanarEmbedding, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("unknown vertex {vertex} (graph has {n} vertices)")]
    UnknownVertex { vertex: VertexId, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// A cycle as a cyclic vertex sequence.
///
/// The sequence is normalized: it starts at the least vertex id and then
/// proceeds towards the smaller of that vertex's two cycle neighbours, so
/// equal cycles are equal sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleSeq {
    vertices: Vec<VertexId>,
}

impl CycleSeq {
    /// Checks distinctness and length only; adjacency is a property of a host
    /// graph, see [`CycleSeq::in_graph`].
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, CycleError> {
        if vertices.len() < 3 {
            return Err(CycleError::NotACycle(format!("{} vertices, need at least 3", vertices.len())));
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CycleError::NotACycle(format!("vertex {} repeats", w[0])));
        }
        normalize(&mut vertices);
        Ok(CycleSeq { vertices })
    }

    /// Builds the cycle and checks that it lives in `emb`.
    pub fn in_graph(emb: &PlanarEmbedding, vertices: Vec<VertexId>) -> Result<Self, CycleError> {
        let n = emb.vertex_count();
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(CycleError::UnknownVertex { vertex: v, n });
        }
        let cycle = CycleSeq::new(vertices)?;
        cycle.check_edges(emb)?;
        Ok(cycle)
    }

    pub fn check_edges(&self, emb: &PlanarEmbedding) -> Result<(), CycleError> {
        for (u, v) in self.edges() {
            if !emb.has_edge(u, v) {
                return Err(CycleError::NotACycle(format!("{u} and {v} are not adjacent")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Consecutive pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let c = self.vertices.len();
        (0..c).map(move |i| (self.vertices[i], self.vertices[(i + 1) % c]))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.vertices {
            m[v] = true;
        }
        m
    }

    /// Whether `u` and `v` are consecutive on the cycle (in either order).
    pub fn is_cycle_edge(&self, u: VertexId, v: VertexId) -> bool {
        let c = self.vertices.len();
        match self.vertices.iter().position(|&w| w == u) {
            Some(i) => self.vertices[(i + 1) % c] == v || self.vertices[(i + c - 1) % c] == v,
            None => false,
        }
    }
}

impl fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.vertices {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

fn normalize(vertices: &mut [VertexId]) {
    let c = vertices.len();
    let (min_at, _) = vertices.iter().enumerate().min_by_key(|(_, &v)| v).expect("nonempty");
    vertices.rotate_left(min_at);
    if vertices[c - 1] < vertices[1] {
        vertices[1..].reverse();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oi3Violation {
    /// Outer vertex whose degree in `G` is not 3.
    Degree { vertex: VertexId, degree: usize },
    /// Two adjacent vertices both off the cycle.
    AdjacentOutside { vertex: VertexId, neighbor: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oi3Report {
    pub valid: bool,
    /// Vertices off the cycle, ascending.
    pub outer: Vec<VertexId>,
    pub violations: Vec<Oi3Violation>,
}

pub fn validate_oi3(emb: &PlanarEmbedding, cycle: &CycleSeq) -> Result<Oi3Report, CycleError> {
    let n = emb.vertex_count();
    if let Some(&v) = cycle.vertices().iter().find(|&&v| v >= n) {
        return Err(CycleError::UnknownVertex { vertex: v, n });
    }
    cycle.check_edges(emb)?;
    let on = cycle.mask(n);
    let outer: Vec<VertexId> = (0..n).filter(|&v| !on[v]).collect();
    let mut violations = Vec::new();
    for &v in &outer {
        let d = emb.degree(v);
        if d != 3 {
            violations.push(Oi3Violation::Degree { vertex: v, degree: d });
        }
        for &w in emb.neighbors(v) {
            if !on[w] && v < w {
                violations.push(Oi3Violation::AdjacentOutside { vertex: v, neighbor: w });
            }
        }
    }
    Ok(Oi3Report { valid: violations.is_empty(), outer, violations })
}

/// A cycle edge whose ends share an outer neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extendable {
    pub edge: (VertexId, VertexId),
    pub witness: VertexId,
}

/// Extendable edges in cycle order from the least cycle vertex, each with
/// its least witness.
pub fn find_extendable_edges(emb: &PlanarEmbedding, cycle: &CycleSeq, outer: &[VertexId]) -> Vec<Extendable> {
    let n = emb.vertex_count();
    let mut is_outer = vec![false; n];
    for &b in outer {
        is_outer[b] = true;
    }
    let mut out = Vec::new();
    for (x, y) in cycle.edges() {
        let (small, other) = if emb.degree(x) <= emb.degree(y) { (x, y) } else { (y, x) };
        let witness =
            emb.neighbors(small).iter().copied().filter(|&w| is_outer[w] && emb.has_edge(w, other)).min();
        if let Some(witness) = witness {
            out.push(Extendable { edge: (x, y), witness });
        }
    }
    out
}

/// Replaces the cycle edge `x y` by the path `x w y`.
pub fn extend_cycle(
    emb: &PlanarEmbedding,
    cycle: &CycleSeq,
    edge: (VertexId, VertexId),
    witness: VertexId,
) -> Result<CycleSeq, CycleError> {
    let (x, y) = edge;
    let c = cycle.len();
    let Some(i) = cycle.vertices().iter().position(|&v| v == x) else {
        return Err(CycleError::PreconditionViolated(format!("{x} is not on the cycle")));
    };
    let vs = cycle.vertices();
    let insert_at = if vs[(i + 1) % c] == y {
        i + 1
    } else if vs[(i + c - 1) % c] == y {
        i
    } else {
        return Err(CycleError::PreconditionViolated(format!("{x} {y} is not a cycle edge")));
    };
    if witness >= emb.vertex_count() || cycle.contains(witness) {
        return Err(CycleError::PreconditionViolated(format!("witness {witness} is not an outer vertex")));
    }
    if !emb.has_edge(witness, x) || !emb.has_edge(witness, y) {
        return Err(CycleError::PreconditionViolated(format!(
            "witness {witness} is not adjacent to both {x} and {y}"
        )));
    }
    let mut next = vs.to_vec();
    next.insert(insert_at, witness);
    CycleSeq::new(next)
}
