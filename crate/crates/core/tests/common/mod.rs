//! Random essentially 4-connected instances for property tests.
//!
//! A capped antiprism is scrambled by random edge flips that keep it
//! 4-connected, then a random subset of its faces is stacked with degree-3
//! vertices. Any Hamiltonian cycle of the triangulation is an OI3-cycle of
//! the stacked graph.

#![allow(dead_code)]

use e4c_core::instances::{antiprism_faces, stack_faces};
use e4c_core::planar::{vertex_connectivity, FaceId, PlanarEmbedding, RotationTable, VertexId};
use e4c_core::CycleSeq;
use rand::seq::SliceRandom;
use rand::Rng;

pub struct RandomInstance {
    pub base: PlanarEmbedding,
    pub embedding: PlanarEmbedding,
    pub initial: CycleSeq,
}

fn embed(n: usize, faces: &[Vec<VertexId>]) -> PlanarEmbedding {
    PlanarEmbedding::new(RotationTable::from_faces(n, faces).expect("faces")).expect("embedding")
}

/// A 4-connected triangulation on `2k + 2` vertices.
pub fn random_triangulation<R: Rng>(rng: &mut R, k: usize, flips: usize) -> PlanarEmbedding {
    let (n, mut faces) = antiprism_faces(k, true);
    for _ in 0..flips {
        let f = rng.gen_range(0..faces.len());
        let i = rng.gen_range(0..3);
        let (u, v, x) = (faces[f][i], faces[f][(i + 1) % 3], faces[f][(i + 2) % 3]);
        let g = (0..faces.len())
            .find(|&g| (0..3).any(|j| faces[g][j] == v && faces[g][(j + 1) % 3] == u))
            .expect("twin face");
        let y = *faces[g].iter().find(|&&w| w != u && w != v).expect("third vertex");
        let mut next = faces.clone();
        next[f] = vec![x, u, y];
        next[g] = vec![y, v, x];
        let Ok(table) = RotationTable::from_faces(n, &next) else {
            continue;
        };
        let Ok(emb) = PlanarEmbedding::new(table) else {
            continue;
        };
        if vertex_connectivity(&emb) >= 4 {
            faces = next;
        }
    }
    embed(n, &faces)
}

/// Hamiltonian cycle by randomized backtracking.
pub fn random_hamiltonian<R: Rng>(rng: &mut R, emb: &PlanarEmbedding) -> Option<CycleSeq> {
    fn go<R: Rng>(rng: &mut R, emb: &PlanarEmbedding, path: &mut Vec<VertexId>, used: &mut [bool]) -> bool {
        let end = *path.last().unwrap();
        if path.len() == emb.vertex_count() {
            return emb.has_edge(end, path[0]);
        }
        let mut next: Vec<VertexId> = emb.neighbors(end).iter().copied().filter(|&w| !used[w]).collect();
        next.shuffle(rng);
        for w in next {
            used[w] = true;
            path.push(w);
            if go(rng, emb, path, used) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
        false
    }
    let n = emb.vertex_count();
    let start = rng.gen_range(0..n);
    let mut used = vec![false; n];
    used[start] = true;
    let mut path = vec![start];
    go(rng, emb, &mut path, &mut used).then(|| CycleSeq::new(path).expect("cycle"))
}

pub fn random_instance<R: Rng>(rng: &mut R, k: usize, stack_prob: f64) -> RandomInstance {
    let base = random_triangulation(rng, k, 6 * k);
    let faces: Vec<FaceId> = (0..base.faces().len()).filter(|_| rng.gen_bool(stack_prob)).collect();
    let embedding = stack_faces(&base, &faces).expect("stacking");
    let initial = random_hamiltonian(rng, &base).expect("4-connected triangulations are Hamiltonian");
    RandomInstance { base, embedding, initial }
}
