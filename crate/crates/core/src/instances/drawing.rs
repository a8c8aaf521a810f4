//! Builds embeddings from a drawing description: a cycle `0..c` drawn as a
//! circle, outer vertices placed inside or outside it, and chords on either
//! side. Used to write small fixtures by hand.

use crate::cycle::CycleSeq;
use crate::planar::{EmbeddingError, PlanarEmbedding, RotationTable, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Inside,
    Outside,
}

#[derive(Debug, Clone)]
pub struct CycleDrawing {
    c: usize,
    /// Side and cycle positions of each outer vertex; ids start at `c`.
    outer: Vec<(Side, Vec<usize>)>,
    chords: Vec<(Side, usize, usize)>,
}

impl CycleDrawing {
    pub fn new(c: usize) -> Self {
        CycleDrawing { c, outer: Vec::new(), chords: Vec::new() }
    }

    /// Adds an outer vertex inside the circle, joined to the given positions.
    pub fn inner_outer(mut self, at: impl Into<Vec<usize>>) -> Self {
        self.outer.push((Side::Inside, sorted(at.into())));
        self
    }

    /// Adds an outer vertex outside the circle.
    pub fn outer_outer(mut self, at: impl Into<Vec<usize>>) -> Self {
        self.outer.push((Side::Outside, sorted(at.into())));
        self
    }

    pub fn inner_chord(mut self, a: usize, b: usize) -> Self {
        self.chords.push((Side::Inside, a.min(b), a.max(b)));
        self
    }

    pub fn outer_chord(mut self, a: usize, b: usize) -> Self {
        self.chords.push((Side::Outside, a.min(b), a.max(b)));
        self
    }

    pub fn cycle_len(&self) -> usize {
        self.c
    }

    /// Id of the `k`-th outer vertex added.
    pub fn outer_id(&self, k: usize) -> VertexId {
        self.c + k
    }

    pub fn vertex_count(&self) -> usize {
        self.c + self.outer.len()
    }

    pub fn cycle(&self) -> CycleSeq {
        CycleSeq::new((0..self.c).collect()).expect("c >= 3")
    }

    pub fn table(&self) -> Result<RotationTable, EmbeddingError> {
        let c = self.c;
        let dist = |from: usize, to: usize| (to + c - from) % c;
        // (key, tie, neighbour) per side; chords win ties
        let mut inside: Vec<Vec<(usize, u8, VertexId)>> = vec![Vec::new(); c];
        let mut outside: Vec<Vec<(usize, u8, VertexId)>> = vec![Vec::new(); c];
        for &(side, a, b) in &self.chords {
            let lists = if side == Side::Inside { &mut inside } else { &mut outside };
            lists[a].push((dist(a, b), 0, b));
            lists[b].push((dist(b, a), 0, a));
        }
        let mut rotations: Vec<Vec<VertexId>> = vec![Vec::new(); self.vertex_count()];
        for (k, (side, at)) in self.outer.iter().enumerate() {
            let id = c + k;
            for &p in at {
                let others = at.iter().filter(|&&q| q != p).map(|&q| dist(p, q));
                match side {
                    Side::Inside => inside[p].push((others.min().unwrap_or(0), 1, id)),
                    Side::Outside => outside[p].push((others.max().unwrap_or(0), 1, id)),
                }
            }
            rotations[id] = match side {
                Side::Inside => at.clone(),
                Side::Outside => at.iter().rev().copied().collect(),
            };
        }
        for i in 0..c {
            inside[i].sort();
            outside[i].sort_by_key(|&(d, tie, _)| (std::cmp::Reverse(d), tie));
            let rot = &mut rotations[i];
            rot.push((i + 1) % c);
            rot.extend(inside[i].iter().map(|t| t.2));
            rot.push((i + c - 1) % c);
            rot.extend(outside[i].iter().map(|t| t.2));
        }
        RotationTable::new(rotations)
    }

    pub fn embedding(&self) -> Result<PlanarEmbedding, EmbeddingError> {
        PlanarEmbedding::new(self.table()?)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
