//! The chord-free graph `H = G - chords(C)` and its discharging audit.
//!
//! `H` has vertex set `B ∪ V(C)`, keeps `C` induced, and inherits its
//! rotation system from `G`. A face of `H` is *minor* when at most one outer
//! vertex lies on it and *major* otherwise; a *j-face* has exactly `j` edges
//! of `C` on its boundary.
//!
//! Cycle edges are addressed by index: edge `i` joins `cycle[i]` and
//! `cycle[i + 1]` (indices modulo `c`) of the normalized cycle sequence.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{find_extendable_edges, validate_oi3, CycleError, CycleSeq};
use crate::planar::{EmbeddingError, FaceId, PlanarEmbedding, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BcError {
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("cycle is not an OI3-cycle of the graph")]
    NotOi3,
    #[error("outer set does not match the complement of the cycle")]
    OuterMismatch,
    #[error("cycle edge {edge} is not a C-edge of face {face}")]
    NotACEdgeOfFace { edge: usize, face: FaceId },
}

#[derive(Debug, Clone)]
pub struct BcGraph {
    host: PlanarEmbedding,
    cycle: CycleSeq,
    outer: Vec<VertexId>,
    is_outer: Vec<bool>,
    chords: Vec<(VertexId, VertexId)>,
    position: Vec<Option<usize>>,
    /// Per cycle edge: faces of the forward and backward darts.
    edge_faces: Vec<[FaceId; 2]>,
}

impl BcGraph {
    /// The embedding of `H`.
    pub fn host(&self) -> &PlanarEmbedding {
        &self.host
    }

    pub fn cycle(&self) -> &CycleSeq {
        &self.cycle
    }

    pub fn outer(&self) -> &[VertexId] {
        &self.outer
    }

    pub fn is_outer(&self, v: VertexId) -> bool {
        self.is_outer[v]
    }

    /// Edges of `G` joining two cycle vertices that are not cycle edges.
    pub fn chords(&self) -> &[(VertexId, VertexId)] {
        &self.chords
    }

    /// Position of `v` in the normalized cycle sequence.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.position[v]
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    /// End vertices of cycle edge `i`.
    pub fn edge_vertices(&self, i: usize) -> (VertexId, VertexId) {
        let vs = self.cycle.vertices();
        (vs[i], vs[(i + 1) % vs.len()])
    }

    /// The two faces of `H` incident with cycle edge `i`.
    pub fn edge_faces(&self, i: usize) -> [FaceId; 2] {
        self.edge_faces[i]
    }

    fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let c = self.cycle.len();
        let (pu, pv) = (self.position[u]?, self.position[v]?);
        if (pu + 1) % c == pv {
            Some(pu)
        } else if (pv + 1) % c == pu {
            Some(pv)
        } else {
            None
        }
    }
}

/// Removes the chords of `cycle` from `emb` and re-derives the faces.
pub fn build_bc_graph(
    emb: &PlanarEmbedding,
    cycle: &CycleSeq,
    outer: &[VertexId],
) -> Result<BcGraph, BcError> {
    let report = validate_oi3(emb, cycle)?;
    if !report.valid {
        return Err(BcError::NotOi3);
    }
    if report.outer != outer {
        return Err(BcError::OuterMismatch);
    }
    let n = emb.vertex_count();
    let mut position = vec![None; n];
    for (i, &v) in cycle.vertices().iter().enumerate() {
        position[v] = Some(i);
    }
    let c = cycle.len();
    let chords: Vec<(VertexId, VertexId)> = emb
        .table()
        .edges()
        .into_iter()
        .filter(|&(u, v)| match (position[u], position[v]) {
            (Some(pu), Some(pv)) => (pu + 1) % c != pv && (pv + 1) % c != pu,
            _ => false,
        })
        .collect();
    let host = PlanarEmbedding::new(emb.table().without_edges(&chords))?;
    let mut is_outer = vec![false; n];
    for &b in outer {
        is_outer[b] = true;
    }
    let vs = cycle.vertices();
    let edge_faces = (0..c)
        .map(|i| {
            let (u, v) = (vs[i], vs[(i + 1) % c]);
            let fwd = host.dart(u, v).expect("cycle edge in H");
            [host.dart_face(fwd), host.dart_face(host.twin(fwd))]
        })
        .collect();
    Ok(BcGraph { host, cycle: cycle.clone(), outer: outer.to_vec(), is_outer, chords, position, edge_faces })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaceKind {
    Minor,
    Major,
}

/// Contiguous run of `len` cycle edges starting at edge index `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceClass {
    pub face: FaceId,
    /// Number of C-edges.
    pub j: usize,
    /// Outer vertices on the boundary, in boundary order.
    pub outer: Vec<VertexId>,
    pub kind: FaceKind,
    /// C-edge indices in cycle order.
    pub c_edges: Vec<usize>,
    /// Set exactly when a single outer vertex lies on the face; its C-edges
    /// then form one run along the cycle.
    pub span: Option<Span>,
    /// Middle edge of a single-outer-vertex 3-face.
    pub middle: Option<usize>,
}

impl FaceClass {
    pub fn is_minor(&self) -> bool {
        self.kind == FaceKind::Minor
    }

    pub fn outer_count(&self) -> usize {
        self.outer.len()
    }
}

pub fn classify_faces(bc: &BcGraph) -> Vec<FaceClass> {
    let h = &bc.host;
    let c = bc.cycle_len();
    h.faces()
        .iter()
        .map(|f| {
            let verts = h.face_vertices(f.id);
            let outer: Vec<VertexId> = verts.iter().copied().filter(|&v| bc.is_outer[v]).collect();
            let mut c_edges: Vec<usize> =
                f.darts.iter().filter_map(|&d| bc.edge_index(h.tail(d), h.head(d))).collect();
            c_edges.sort_unstable();
            let j = c_edges.len();
            let kind = if outer.len() <= 1 { FaceKind::Minor } else { FaceKind::Major };
            let span = (outer.len() == 1).then(|| single_outer_span(bc, &verts, outer[0]));
            if let Some(s) = span {
                assert_eq!(s.len, j, "face {} has a broken C-edge run", f.id);
                c_edges = (0..s.len).map(|k| (s.start + k) % c).collect();
            }
            let middle = span.filter(|s| s.len == 3).map(|s| (s.start + 1) % c);
            FaceClass { face: f.id, j, outer, kind, c_edges, span, middle }
        })
        .collect()
}

/// The C-edge run of a face whose only outer vertex is `a`.
fn single_outer_span(bc: &BcGraph, boundary: &[VertexId], a: VertexId) -> Span {
    let c = bc.cycle_len();
    let at = boundary.iter().position(|&v| v == a).expect("outer vertex on face");
    let path: Vec<VertexId> = (1..boundary.len()).map(|k| boundary[(at + k) % boundary.len()]).collect();
    assert!(path.len() >= 2, "outer vertex {a} bounds a face with fewer than two cycle vertices");
    let pos: Vec<usize> = path.iter().map(|&v| bc.position[v].expect("cycle vertex")).collect();
    let forward = (pos[0] + 1) % c == pos[1];
    for w in pos.windows(2) {
        let step_ok = if forward { (w[0] + 1) % c == w[1] } else { (w[1] + 1) % c == w[0] };
        assert!(step_ok, "C-edges of the face at outer vertex {a} are not contiguous");
    }
    let start = if forward { pos[0] } else { pos[pos.len() - 1] };
    Span { start, len: path.len() - 1 }
}

/// The other face of `H` on cycle edge `edge`.
pub fn opposite_face(bc: &BcGraph, edge: usize, face: FaceId) -> Result<FaceId, BcError> {
    let [a, b] = *bc.edge_faces.get(edge).ok_or(BcError::NotACEdgeOfFace { edge, face })?;
    if a == face {
        Ok(b)
    } else if b == face {
        Ok(a)
    } else {
        Err(BcError::NotACEdgeOfFace { edge, face })
    }
}

/// One unit of weight moved from `from` across cycle edge `edge` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: FaceId,
    pub edge: usize,
    pub to: FaceId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightState {
    pub w0: Vec<i64>,
    pub w1: Vec<i64>,
    pub transfers: Vec<Transfer>,
    /// Whether the cycle had no extendable edge, the hypothesis under which
    /// minor faces have at least two C-edges.
    pub extendable_free: bool,
}

impl WeightState {
    pub fn sum_w0(&self) -> i64 {
        self.w0.iter().sum()
    }

    pub fn sum_w1(&self) -> i64 {
        self.w1.iter().sum()
    }
}

/// Initial weights 6 on minor faces and 0 on major faces, then the two
/// transfer rules: a minor 2-face sends 1 across each of its C-edges, a
/// minor 3-face sends 1 across its middle C-edge.
pub fn run_discharging(bc: &BcGraph, emb: &PlanarEmbedding, classes: &[FaceClass]) -> WeightState {
    let w0: Vec<i64> = classes.iter().map(|f| if f.is_minor() { 6 } else { 0 }).collect();
    let mut w1 = w0.clone();
    let mut transfers = Vec::new();
    for f in classes {
        if !f.is_minor() || f.span.is_none() {
            continue;
        }
        let through: Vec<usize> = match f.j {
            2 => f.c_edges.clone(),
            3 => f.middle.into_iter().collect(),
            _ => continue,
        };
        for edge in through {
            let to = opposite_face(bc, edge, f.face).expect("C-edge of its own face");
            w1[f.face] -= 1;
            w1[to] += 1;
            transfers.push(Transfer { from: f.face, edge, to });
        }
    }
    let extendable_free = find_extendable_edges(emb, &bc.cycle, &bc.outer).is_empty();
    WeightState { w0, w1, transfers, extendable_free }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceOverload {
    pub face: FaceId,
    pub j: usize,
    pub w1: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// `|V(H)|`.
    pub order: usize,
    pub c: usize,
    pub mu: usize,
    pub sum_w0: i64,
    pub sum_w1: i64,
    /// `sum_w0 == sum_w1 == 6 mu`.
    pub conserved: bool,
    /// `mu >= |V(H)| - c + 2`.
    pub ineq_i: bool,
    /// `6 mu <= 4 c`.
    pub ineq_ii: bool,
    /// Faces with `w1(f) > 2 j(f)`.
    pub iii_violations: Vec<FaceOverload>,
}

impl BoundsReport {
    pub fn ineq_iii(&self) -> bool {
        self.iii_violations.is_empty()
    }
}

pub fn check_counting_bounds(bc: &BcGraph, classes: &[FaceClass], weights: &WeightState) -> BoundsReport {
    let mu = classes.iter().filter(|f| f.is_minor()).count();
    let order = bc.host.vertex_count();
    let c = bc.cycle_len();
    let (sum_w0, sum_w1) = (weights.sum_w0(), weights.sum_w1());
    let six_mu = 6 * mu as i64;
    let iii_violations = classes
        .iter()
        .filter(|f| weights.w1[f.face] > 2 * f.j as i64)
        .map(|f| FaceOverload { face: f.face, j: f.j, w1: weights.w1[f.face] })
        .collect();
    BoundsReport {
        order,
        c,
        mu,
        sum_w0,
        sum_w1,
        conserved: sum_w0 == six_mu && sum_w1 == six_mu,
        ineq_i: mu + c >= order + 2,
        ineq_ii: 6 * mu <= 4 * c,
        iii_violations,
    }
}
