//! Plane graphs given by rotation systems.
//!
//! A [`RotationTable`] lists, for every vertex, its neighbours in cyclic
//! order. [`PlanarEmbedding::new`] traces the faces of that rotation system
//! and accepts it only when Euler's relation certifies a sphere embedding.
//! Connectivity queries (vertex connectivity, 3-separators, essential
//! 4-connectivity) live here as well; they are brute force and meant for
//! graphs with at most a few hundred vertices.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type DartId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("vertex {vertex} lists neighbour {neighbor}, which is out of range (n = {n})")]
    VertexOutOfRange { vertex: VertexId, neighbor: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} lists neighbour {neighbor} more than once")]
    RepeatedNeighbor { vertex: VertexId, neighbor: VertexId },
    #[error("{u} lists {v} as a neighbour but {v} does not list {u}")]
    AsymmetricRotation { u: VertexId, v: VertexId },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is not a sphere embedding: n - m + f = {n} - {m} + {faces} != 2")]
    NotPlanarEmbedding { n: usize, m: usize, faces: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("inconsistent face list: {0}")]
    InconsistentFaces(String),
}

/// Cyclic neighbour order at every vertex.
///
/// Each rotation is stored starting at its least neighbour, so two tables
/// describing the same rotation system compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationTable {
    rotations: Vec<Vec<VertexId>>,
}

impl RotationTable {
    pub fn new(mut rotations: Vec<Vec<VertexId>>) -> Result<Self, EmbeddingError> {
        let n = rotations.len();
        if n == 0 {
            return Err(EmbeddingError::Empty);
        }
        let mut seen = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            for &w in rot {
                if w >= n {
                    return Err(EmbeddingError::VertexOutOfRange { vertex: v, neighbor: w, n });
                }
                if w == v {
                    return Err(EmbeddingError::SelfLoop(v));
                }
                if seen[w] == v {
                    return Err(EmbeddingError::RepeatedNeighbor { vertex: v, neighbor: w });
                }
                seen[w] = v;
            }
        }
        let mut sorted: Vec<Vec<VertexId>> = rotations.clone();
        for s in &mut sorted {
            s.sort_unstable();
        }
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if sorted[v].binary_search(&u).is_err() {
                    return Err(EmbeddingError::AsymmetricRotation { u, v });
                }
            }
        }
        for rot in &mut rotations {
            if let Some(min_at) = rot.iter().enumerate().min_by_key(|(_, &w)| w).map(|(i, _)| i) {
                rot.rotate_left(min_at);
            }
        }
        Ok(RotationTable { rotations })
    }

    /// Builds the rotation system whose faces are exactly `faces`.
    ///
    /// Every face is a closed walk listed in the traversal orientation used by
    /// [`PlanarEmbedding`]: if `u, v, w` are consecutive on a face then `w`
    /// follows `u` in the rotation at `v`. Each dart must occur exactly once.
    pub fn from_faces(n: usize, faces: &[Vec<VertexId>]) -> Result<Self, EmbeddingError> {
        let mut succ: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
        for face in faces {
            let k = face.len();
            if k < 2 {
                return Err(EmbeddingError::InconsistentFaces(format!("face {face:?} too short")));
            }
            for i in 0..k {
                let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if u >= n || v >= n || w >= n {
                    return Err(EmbeddingError::InconsistentFaces(format!(
                        "face {face:?} mentions a vertex >= {n}"
                    )));
                }
                if succ.insert((v, u), w).is_some() {
                    return Err(EmbeddingError::InconsistentFaces(format!("dart {u}->{v} appears twice")));
                }
            }
        }
        let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &(v, u) in succ.keys() {
            nbrs[v].push(u);
        }
        let mut rotations = Vec::with_capacity(n);
        for (v, mut around) in nbrs.into_iter().enumerate() {
            around.sort_unstable();
            let Some(&first) = around.first() else {
                rotations.push(Vec::new());
                continue;
            };
            let mut rot = vec![first];
            let mut cur = first;
            loop {
                let next = succ[&(v, cur)];
                if next == first {
                    break;
                }
                if rot.len() > around.len() {
                    break;
                }
                rot.push(next);
                cur = next;
            }
            if rot.len() != around.len() {
                return Err(EmbeddingError::InconsistentFaces(format!(
                    "faces around vertex {v} do not close into a single disc"
                )));
            }
            rotations.push(rot);
        }
        RotationTable::new(rotations)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotations.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rotations
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .rotations
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The same rotation system with the listed edges deleted.
    pub fn without_edges(&self, removed: &[(VertexId, VertexId)]) -> RotationTable {
        let mut drop: Vec<Vec<VertexId>> = vec![Vec::new(); self.rotations.len()];
        for &(u, v) in removed {
            drop[u].push(v);
            drop[v].push(u);
        }
        let rotations = self
            .rotations
            .iter()
            .zip(&drop)
            .map(|(rot, d)| rot.iter().copied().filter(|w| !d.contains(w)).collect())
            .collect();
        RotationTable { rotations }.renormalized()
    }

    fn renormalized(mut self) -> Self {
        for rot in &mut self.rotations {
            if let Some(min_at) = rot.iter().enumerate().min_by_key(|(_, &w)| w).map(|(i, _)| i) {
                rot.rotate_left(min_at);
            }
        }
        self
    }
}

/// A face: the closed dart walk bounding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub darts: Vec<DartId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A connected rotation system verified to embed on the sphere.
#[derive(Debug, Clone)]
pub struct PlanarEmbedding {
    table: RotationTable,
    offsets: Vec<usize>,
    tails: Vec<VertexId>,
    heads: Vec<VertexId>,
    twins: Vec<DartId>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
    sorted_adj: Vec<Vec<VertexId>>,
}

impl PlanarEmbedding {
    /// Traces faces and checks connectivity and Euler's relation.
    pub fn new(table: RotationTable) -> Result<Self, EmbeddingError> {
        let n = table.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut tails = Vec::new();
        let mut heads = Vec::new();
        offsets.push(0);
        for v in 0..n {
            for &w in table.rotation(v) {
                tails.push(v);
                heads.push(w);
            }
            offsets.push(tails.len());
        }
        let dart_count = tails.len();
        let sorted_adj: Vec<Vec<VertexId>> = (0..n)
            .map(|v| {
                let mut a = table.rotation(v).to_vec();
                a.sort_unstable();
                a
            })
            .collect();

        // position of w in rotation(v), indexed through sorted_adj
        let mut pos_in_rot: Vec<Vec<usize>> = Vec::with_capacity(n);
        for (v, sorted) in sorted_adj.iter().enumerate() {
            let mut p = vec![0; sorted.len()];
            for (i, &w) in table.rotation(v).iter().enumerate() {
                let k = sorted.binary_search(&w).expect("neighbour present");
                p[k] = i;
            }
            pos_in_rot.push(p);
        }
        let index_of = |v: VertexId, w: VertexId| -> usize {
            let k = sorted_adj[v].binary_search(&w).expect("symmetric table");
            pos_in_rot[v][k]
        };
        let twins: Vec<DartId> =
            (0..dart_count).map(|d| offsets[heads[d]] + index_of(heads[d], tails[d])).collect();

        if !is_connected(&sorted_adj, &vec![false; n]) {
            return Err(EmbeddingError::Disconnected);
        }

        let mut dart_face = vec![usize::MAX; dart_count];
        let mut faces = Vec::new();
        for start in 0..dart_count {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                dart_face[d] = id;
                darts.push(d);
                let t = twins[d];
                let v = heads[d];
                let deg = offsets[v + 1] - offsets[v];
                d = offsets[v] + (t - offsets[v] + 1) % deg;
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, darts });
        }

        let m = dart_count / 2;
        let f = if n == 1 && m == 0 { 1 } else { faces.len() };
        if n + f != m + 2 {
            return Err(EmbeddingError::NotPlanarEmbedding { n, m, faces: f });
        }
        Ok(PlanarEmbedding { table, offsets, tails, heads, twins, dart_face, faces, sorted_adj })
    }

    pub fn table(&self) -> &RotationTable {
        &self.table
    }

    pub fn vertex_count(&self) -> usize {
        self.table.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.tails.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.tails.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.sorted_adj[v].len()
    }

    /// Neighbours of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.sorted_adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.sorted_adj.len() && self.sorted_adj[u].binary_search(&v).is_ok()
    }

    pub fn tail(&self, d: DartId) -> VertexId {
        self.tails[d]
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.heads[d]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twins[d]
    }

    pub fn dart_face(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    /// The dart `u -> v`, if `uv` is an edge.
    pub fn dart(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        let rot = self.table.rotation(u);
        rot.iter().position(|&w| w == v).map(|i| self.offsets[u] + i)
    }

    /// Vertices met along the boundary of `face`, one per dart.
    pub fn face_vertices(&self, face: FaceId) -> Vec<VertexId> {
        self.faces[face].darts.iter().map(|&d| self.tails[d]).collect()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.sorted_adj
    }
}

/// Convenience wrapper matching the table-first call style.
pub fn build_embedding(table: RotationTable) -> Result<PlanarEmbedding, EmbeddingError> {
    PlanarEmbedding::new(table)
}

fn is_connected(adj: &[Vec<VertexId>], removed: &[bool]) -> bool {
    component_sizes(adj, removed).len() <= 1
}

/// Sizes of the components of the graph with `removed` vertices deleted,
/// sorted ascending.
pub(crate) fn component_sizes(adj: &[Vec<VertexId>], removed: &[bool]) -> Vec<usize> {
    let n = adj.len();
    let mut seen = removed.to_vec();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

/// A vertex triple whose removal disconnects the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator3 {
    pub vertices: [VertexId; 3],
    /// Orders of the components left after removal, ascending.
    pub side_sizes: Vec<usize>,
    pub trivial: bool,
}

/// All 3-separators in lexicographic order of their sorted vertex triples.
pub fn enumerate_3_separators(emb: &PlanarEmbedding) -> Vec<Separator3> {
    let adj = emb.adjacency();
    let n = adj.len();
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    let mut removed = vec![false; n];
    for a in 0..n {
        removed[a] = true;
        for b in a + 1..n {
            removed[b] = true;
            for c in b + 1..n {
                removed[c] = true;
                let sizes = component_sizes(adj, &removed);
                if sizes.len() >= 2 {
                    out.push(Separator3 { vertices: [a, b, c], trivial: sizes[0] == 1, side_sizes: sizes });
                }
                removed[c] = false;
            }
            removed[b] = false;
        }
        removed[a] = false;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityVerdict {
    pub vertex_connectivity: usize,
    pub three_connected: bool,
    pub essentially_4_connected: bool,
    /// A separating set certifying a negative verdict: a minimum separator
    /// when the graph is not 3-connected, otherwise the nontrivial
    /// 3-separator whose smallest side is largest.
    pub witness: Option<Vec<VertexId>>,
}

pub fn check_essentially_4_connected(emb: &PlanarEmbedding) -> ConnectivityVerdict {
    let sep = min_vertex_separator(emb);
    let kappa = sep.as_ref().map_or(emb.vertex_count().saturating_sub(1), Vec::len);
    if kappa < 3 {
        return ConnectivityVerdict {
            vertex_connectivity: kappa,
            three_connected: false,
            essentially_4_connected: false,
            witness: sep,
        };
    }
    // prefer the most balanced split, then the lexicographically first
    let mut witness: Option<Separator3> = None;
    for s in enumerate_3_separators(emb).into_iter().filter(|s| !s.trivial) {
        if witness.as_ref().is_none_or(|w| s.side_sizes[0] > w.side_sizes[0]) {
            witness = Some(s);
        }
    }
    ConnectivityVerdict {
        vertex_connectivity: kappa,
        three_connected: true,
        essentially_4_connected: witness.is_none(),
        witness: witness.map(|s| s.vertices.to_vec()),
    }
}

/// Exact vertex connectivity; `n - 1` for complete graphs.
pub fn vertex_connectivity(emb: &PlanarEmbedding) -> usize {
    min_vertex_separator(emb).map_or(emb.vertex_count().saturating_sub(1), |s| s.len())
}

/// A minimum vertex separator, or `None` when the graph is complete.
///
/// Local connectivities are computed by unit-capacity max flow on the
/// vertex-split digraph; only pairs whose first vertex is among the first
/// `κ + 1` vertices need to be examined.
pub fn min_vertex_separator(emb: &PlanarEmbedding) -> Option<Vec<VertexId>> {
    let adj = emb.adjacency();
    let n = adj.len();
    let mut best: Option<Vec<VertexId>> = None;
    for s in 0..n {
        if let Some(b) = &best {
            if s > b.len() {
                break;
            }
        }
        for t in s + 1..n {
            if emb.has_edge(s, t) {
                continue;
            }
            let cap = best.as_ref().map_or(n, Vec::len);
            if let Some(cut) = local_separator(adj, s, t, cap) {
                if best.as_ref().is_none_or(|b| cut.len() < b.len()) {
                    best = Some(cut);
                }
            }
        }
    }
    best
}

/// Minimum `s`-`t` vertex separator for non-adjacent `s`, `t`, provided it is
/// smaller than `cap`.
fn local_separator(adj: &[Vec<VertexId>], s: VertexId, t: VertexId, cap: usize) -> Option<Vec<VertexId>> {
    let n = adj.len();
    // node 2v = v_in, 2v+1 = v_out
    let mut flow = FlowNet::new(2 * n);
    for (v, nbrs) in adj.iter().enumerate() {
        let c = if v == s || v == t { n as i32 } else { 1 };
        flow.add_edge(2 * v, 2 * v + 1, c);
        for &w in nbrs {
            flow.add_edge(2 * v + 1, 2 * w, n as i32);
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut value = 0;
    while value < cap {
        if !flow.augment(source, sink) {
            break;
        }
        value += 1;
    }
    if value >= cap {
        return None;
    }
    let reach = flow.reachable(source);
    let cut: Vec<VertexId> =
        (0..n).filter(|&v| v != s && v != t && reach[2 * v] && !reach[2 * v + 1]).collect();
    debug_assert_eq!(cut.len(), value);
    Some(cut)
}

struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
    next: Vec<usize>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![usize::MAX; nodes], to: Vec::new(), cap: Vec::new(), next: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i32) {
        for (a, b, cc) in [(u, v, c), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(cc);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let nodes = self.head.len();
        let mut via = vec![usize::MAX; nodes];
        let mut seen = vec![false; nodes];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != usize::MAX {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = via[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        false
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut e = self.head[u];
            while e != usize::MAX {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
                e = self.next[e];
            }
        }
        seen
    }
}
