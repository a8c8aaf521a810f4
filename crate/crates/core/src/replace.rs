//! Local replacements that lengthen a non-extendable OI3-cycle.
//!
//! Each pattern is anchored at a minor face `f` of `H` with a single outer
//! vertex `a`, and looks at the minor faces across the C-edges of `f`. Cycle
//! vertices along the anchor are named by role letters (`t u v w x y z s`),
//! outer vertices by `a b c d`. A pattern replaces a subpath of the cycle by
//! a longer path with the same ends that picks up outer vertices, possibly
//! using chords of `C`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bc::{opposite_face, BcGraph, FaceClass};
use crate::cycle::{validate_oi3, CycleSeq};
use crate::planar::{FaceId, PlanarEmbedding, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplaceError {
    #[error("cycle has length {0}; detection needs at least 8")]
    CycleTooShort(usize),
    #[error("instance does not match the cycle: {0}")]
    StaleInstance(String),
    #[error("degenerate configuration at face {face}: {reason}")]
    Degenerate { face: FaceId, reason: String },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternId {
    C2b,
    C2c,
    C3a,
    C3b,
    #[serde(rename = "C4a_vx")]
    C4aVx,
    #[serde(rename = "C4a_xz")]
    C4aXz,
    #[serde(rename = "C4b_vy")]
    C4bVy,
    #[serde(rename = "C4b_wy")]
    C4bWy,
    #[serde(rename = "C4c_vy")]
    C4cVy,
    #[serde(rename = "C4c_wy")]
    C4cWy,
    C4d,
    #[serde(rename = "C5_vx")]
    C5Vx,
    #[serde(rename = "C5_xz")]
    C5Xz,
}

/// Static description of a pattern: paths over role letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternSpec {
    pub id: PatternId,
    pub description: &'static str,
    pub replaced: &'static str,
    pub replacement: &'static str,
    /// Chords of `C` the replacement path uses, as role-letter pairs.
    pub chords: &'static [&'static str],
}

const CATALOGUE: [PatternSpec; 13] = [
    PatternSpec {
        id: PatternId::C2b,
        description: "2-face xyz with outer a; opposite 2-face yzu with outer b",
        replaced: "xyzu",
        replacement: "xazybu",
        chords: &[],
    },
    PatternSpec {
        id: PatternId::C2c,
        description: "2-face xyz with outer a; opposite 3-face xyzu with outer b; chord yu",
        replaced: "xyzu",
        replacement: "xazyu",
        chords: &["yu"],
    },
    PatternSpec {
        id: PatternId::C3a,
        description: "3-face vxyz with outer a; 2-faces wvx (outer b) and yzu (outer c) opposite",
        replaced: "wvxyzu",
        replacement: "wbxvazycu",
        chords: &[],
    },
    PatternSpec {
        id: PatternId::C3b,
        description: "3-face vxyz with outer a; 2-face wvx (outer b) and 3-face xyzu (outer c) opposite",
        replaced: "wvxyzu",
        replacement: "wvazyxcu",
        chords: &[],
    },
    PatternSpec {
        id: PatternId::C4aVx,
        description: "4-face vwxyz with outer a; 2-faces tvw (outer b) and wxy (outer c) opposite; chord vx",
        replaced: "vwxyz",
        replacement: "vxwcyz",
        chords: &["vx"],
    },
    PatternSpec {
        id: PatternId::C4aXz,
        description: "4-face vwxyz with outer a; 2-faces tvw (outer b) and wxy (outer c) opposite; chord xz",
        replaced: "vwxyz",
        replacement: "vwcyxz",
        chords: &["xz"],
    },
    PatternSpec {
        id: PatternId::C4bVy,
        description: "4-face vwxyz with outer a; 2-faces tvw (outer b) and xyz (outer c) opposite; chord vy",
        replaced: "tvwxyz",
        replacement: "tbwvyxcz",
        chords: &["vy"],
    },
    PatternSpec {
        id: PatternId::C4bWy,
        description: "4-face vwxyz with outer a; 2-faces tvw (outer b) and xyz (outer c) opposite; chord wy",
        replaced: "tvwxyz",
        replacement: "tvwyxcz",
        chords: &["wy"],
    },
    PatternSpec {
        id: PatternId::C4cVy,
        description:
            "4-face vwxyz with outer a; 3-face tvwx (outer b) and 2-face xyz (outer c) opposite; chord vy",
        replaced: "tvwxyz",
        replacement: "tbxwvyz",
        chords: &["vy"],
    },
    PatternSpec {
        id: PatternId::C4cWy,
        description:
            "4-face vwxyz with outer a; 3-face tvwx (outer b) and 2-face xyz (outer c) opposite; chord wy",
        replaced: "tvwxyz",
        replacement: "tvwyxcz",
        chords: &["wy"],
    },
    PatternSpec {
        id: PatternId::C4d,
        description: "4-face vwxyz with outer a; 2-faces vwx (outer b) and xyz (outer c) opposite; chord wy",
        replaced: "vwxyz",
        replacement: "vwyxcz",
        chords: &["wy"],
    },
    PatternSpec {
        id: PatternId::C5Vx,
        description:
            "5-face svwxyz with outer a; 2-faces from s, w and y opposite (outers b, c, d); chord vx",
        replaced: "svwx",
        replacement: "sbwvx",
        chords: &["vx"],
    },
    PatternSpec {
        id: PatternId::C5Xz,
        description:
            "5-face svwxyz with outer a; 2-faces from s, w and y opposite (outers b, c, d); chord xz",
        replaced: "wxyz",
        replacement: "wcyxz",
        chords: &["xz"],
    },
];

/// All patterns in detection preference order.
pub fn catalogue() -> &'static [PatternSpec] {
    &CATALOGUE
}

impl PatternId {
    pub fn spec(self) -> &'static PatternSpec {
        CATALOGUE.iter().find(|p| p.id == self).expect("every pattern is catalogued")
    }

    /// Length gain of the replacement.
    pub fn increment(self) -> usize {
        let s = self.spec();
        s.replacement.len() - s.replaced.len()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PatternId::C2b => "C2b",
            PatternId::C2c => "C2c",
            PatternId::C3a => "C3a",
            PatternId::C3b => "C3b",
            PatternId::C4aVx => "C4a_vx",
            PatternId::C4aXz => "C4a_xz",
            PatternId::C4bVy => "C4b_vy",
            PatternId::C4bWy => "C4b_wy",
            PatternId::C4cVy => "C4c_vy",
            PatternId::C4cWy => "C4c_wy",
            PatternId::C4d => "C4d",
            PatternId::C5Vx => "C5_vx",
            PatternId::C5Xz => "C5_xz",
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn is_outer_role(r: char) -> bool {
    matches!(r, 'a' | 'b' | 'c' | 'd')
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplacementInstance {
    pub pattern: PatternId,
    /// Anchor face of `H`.
    pub face: FaceId,
    pub binding: BTreeMap<char, VertexId>,
    pub replaced_path: Vec<VertexId>,
    pub replacement_path: Vec<VertexId>,
    pub required_chords: Vec<(VertexId, VertexId)>,
}

impl ReplacementInstance {
    /// Keeps only the roles that occur on the two paths. Configurations may
    /// bind an unused outer role to a vertex that also plays a used one.
    fn from_binding(pattern: PatternId, face: FaceId, mut binding: BTreeMap<char, VertexId>) -> Self {
        let spec = pattern.spec();
        binding.retain(|r, _| spec.replaced.contains(*r) || spec.replacement.contains(*r));
        let path = |roles: &str| roles.chars().map(|r| binding[&r]).collect::<Vec<_>>();
        let required_chords = spec
            .chords
            .iter()
            .map(|pair| {
                let p = path(pair);
                (p[0].min(p[1]), p[0].max(p[1]))
            })
            .collect();
        ReplacementInstance {
            pattern,
            face,
            replaced_path: path(spec.replaced),
            replacement_path: path(spec.replacement),
            required_chords,
            binding,
        }
    }

    /// Outer vertices the replacement absorbs into the cycle.
    pub fn absorbed(&self) -> Vec<VertexId> {
        self.binding.iter().filter(|(r, _)| is_outer_role(**r)).map(|(_, &v)| v).collect()
    }
}

/// The cycle read in one of its two directions.
struct Frame<'a> {
    bc: &'a BcGraph,
    classes: &'a [FaceClass],
    reversed: bool,
    c: usize,
}

impl Frame<'_> {
    fn index(&self, i: isize) -> usize {
        i.rem_euclid(self.c as isize) as usize
    }

    fn vertex(&self, i: isize) -> VertexId {
        let i = self.index(i);
        let seq = self.bc.cycle().vertices();
        if self.reversed {
            seq[self.c - 1 - i]
        } else {
            seq[i]
        }
    }

    /// Forward edge index of frame edge `e` (between frame positions `e`
    /// and `e + 1`).
    fn edge(&self, e: isize) -> usize {
        let e = self.index(e);
        if self.reversed {
            (2 * self.c - 2 - e) % self.c
        } else {
            e
        }
    }

    fn span_start(&self, face: FaceId) -> Option<(usize, usize)> {
        let span = self.classes[face].span?;
        let start =
            if self.reversed { (2 * self.c - 1 - span.start - span.len) % self.c } else { span.start };
        Some((start, span.len))
    }

    fn opposite(&self, e: isize, face: FaceId) -> Result<FaceId, ReplaceError> {
        opposite_face(self.bc, self.edge(e), face).map_err(|e| ReplaceError::Internal(e.to_string()))
    }

    /// Outer vertex of `face` if it is a minor `j`-face whose C-edges start
    /// at frame edge `start`.
    fn minor_face(&self, face: FaceId, j: usize, start: isize) -> Option<VertexId> {
        let (s, len) = self.span_start(face)?;
        (len == j && s == self.index(start)).then(|| self.classes[face].outer[0])
    }
}

/// Scan state for one anchor face in one frame.
struct Anchor<'a, 'b> {
    frame: &'b Frame<'a>,
    emb: &'a PlanarEmbedding,
    face: FaceId,
    start: isize,
    outer: VertexId,
}

impl Anchor<'_, '_> {
    fn p(&self, k: isize) -> VertexId {
        self.frame.vertex(self.start + k)
    }

    /// Minor `j`-face across frame edge `start + across`, starting at
    /// `start + at`.
    fn neighbour(&self, across: isize, j: usize, at: isize) -> Result<Option<VertexId>, ReplaceError> {
        let g = self.frame.opposite(self.start + across, self.face)?;
        Ok(self.frame.minor_face(g, j, self.start + at))
    }

    fn has_chord(&self, binding: &BTreeMap<char, VertexId>, pair: &str) -> bool {
        let mut it = pair.chars().map(|r| binding[&r]);
        let (u, v) = (it.next().expect("pair"), it.next().expect("pair"));
        self.emb.has_edge(u, v)
    }

    fn degenerate(&self, reason: impl Into<String>) -> ReplaceError {
        ReplaceError::Degenerate { face: self.face, reason: reason.into() }
    }

    fn bind(&self, roles: &str, first: isize, outers: &[(char, VertexId)]) -> BTreeMap<char, VertexId> {
        let mut m: BTreeMap<char, VertexId> =
            roles.chars().zip(first..).map(|(r, k)| (r, self.p(k))).collect();
        m.insert('a', self.outer);
        m.extend(outers.iter().copied());
        m
    }

    /// Picks the first alternative whose chords all exist in `G`.
    fn with_chords(
        &self,
        binding: BTreeMap<char, VertexId>,
        alternatives: &[PatternId],
    ) -> Result<ReplacementInstance, ReplaceError> {
        for &id in alternatives {
            if id.spec().chords.iter().all(|pair| self.has_chord(&binding, pair)) {
                return Ok(ReplacementInstance::from_binding(id, self.face, binding));
            }
        }
        Err(self
            .degenerate(format!("configuration of {} without any of its chords", alternatives[0].as_str())))
    }

    fn detect(&self, j: usize) -> Result<Option<ReplacementInstance>, ReplaceError> {
        use PatternId::*;
        match j {
            2 => {
                let roles = "xyzu";
                if let Some(b) = self.neighbour(1, 2, 1)? {
                    let binding = self.bind(roles, 0, &[('b', b)]);
                    return Ok(Some(ReplacementInstance::from_binding(C2b, self.face, binding)));
                }
                if self.neighbour(1, 2, 0)?.is_some() {
                    return Err(self.degenerate("two 2-faces share both C-edges"));
                }
                if let Some(b) = self.neighbour(1, 3, 0)? {
                    let binding = self.bind(roles, 0, &[('b', b)]);
                    return self.with_chords(binding, &[C2c]).map(Some);
                }
            }
            3 => {
                let roles = "wvxyzu";
                if let Some(b) = self.neighbour(0, 2, -1)? {
                    if let Some(c) = self.neighbour(2, 2, 2)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return Ok(Some(ReplacementInstance::from_binding(C3a, self.face, binding)));
                    }
                    if let Some(c) = self.neighbour(2, 3, 1)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return Ok(Some(ReplacementInstance::from_binding(C3b, self.face, binding)));
                    }
                }
            }
            4 => {
                let roles = "tvwxyz";
                let b2 = self.neighbour(0, 2, -1)?;
                if let Some(b) = b2 {
                    if let Some(c) = self.neighbour(1, 2, 1)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return self.with_chords(binding, &[C4aVx, C4aXz]).map(Some);
                    }
                    if let Some(c) = self.neighbour(2, 2, 2)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return self.with_chords(binding, &[C4bVy, C4bWy]).map(Some);
                    }
                }
                if let Some(b) = self.neighbour(0, 3, -1)? {
                    if let Some(c) = self.neighbour(2, 2, 2)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return self.with_chords(binding, &[C4cVy, C4cWy]).map(Some);
                    }
                }
                if let Some(b) = self.neighbour(0, 2, 0)? {
                    if let Some(c) = self.neighbour(2, 2, 2)? {
                        let binding = self.bind(roles, -1, &[('b', b), ('c', c)]);
                        return self.with_chords(binding, &[C4d]).map(Some);
                    }
                }
            }
            5 => {
                let b = self.neighbour(0, 2, 0)?;
                let c = self.neighbour(2, 2, 2)?;
                let d = self.neighbour(4, 2, 4)?;
                if let (Some(b), Some(c), Some(d)) = (b, c, d) {
                    let binding = self.bind("svwxyz", 0, &[('b', b), ('c', c), ('d', d)]);
                    return self.with_chords(binding, &[C5Vx, C5Xz]).map(Some);
                }
            }
            _ => {}
        }
        Ok(None)
    }
}

/// Every instance found, in scan order: faces by id, then pattern family in
/// catalogue order, the forward reading of the cycle before the reversed
/// one.
pub fn detect_all(
    emb: &PlanarEmbedding,
    bc: &BcGraph,
    classes: &[FaceClass],
) -> Result<Vec<ReplacementInstance>, ReplaceError> {
    scan(emb, bc, classes, false)
}

/// The first instance in scan order, see [`detect_all`].
pub fn detect_replacement(
    emb: &PlanarEmbedding,
    bc: &BcGraph,
    classes: &[FaceClass],
) -> Result<Option<ReplacementInstance>, ReplaceError> {
    Ok(scan(emb, bc, classes, true)?.into_iter().next())
}

fn scan(
    emb: &PlanarEmbedding,
    bc: &BcGraph,
    classes: &[FaceClass],
    first_only: bool,
) -> Result<Vec<ReplacementInstance>, ReplaceError> {
    let c = bc.cycle_len();
    if c < 8 {
        return Err(ReplaceError::CycleTooShort(c));
    }
    let frames = [false, true].map(|reversed| Frame { bc, classes, reversed, c });
    let mut out = Vec::new();
    for class in classes {
        if class.span.is_none() || !(2..=5).contains(&class.j) {
            continue;
        }
        for frame in &frames {
            let (start, _) = frame.span_start(class.face).expect("span checked");
            let anchor =
                Anchor { frame, emb, face: class.face, start: start as isize, outer: class.outer[0] };
            if let Some(inst) = anchor.detect(class.j)? {
                check_distinct(&inst)?;
                out.push(inst);
                if first_only {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

fn check_distinct(inst: &ReplacementInstance) -> Result<(), ReplaceError> {
    let mut seen: Vec<VertexId> = inst.binding.values().copied().collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(ReplaceError::Degenerate {
            face: inst.face,
            reason: format!("{} binds a vertex to two roles: {:?}", inst.pattern, inst.binding),
        });
    }
    Ok(())
}

/// Swaps the instance's replaced subpath for its replacement path.
pub fn apply_replacement(
    emb: &PlanarEmbedding,
    cycle: &CycleSeq,
    inst: &ReplacementInstance,
) -> Result<CycleSeq, ReplaceError> {
    let c = cycle.len();
    let path = &inst.replaced_path;
    let stale = |why: &str| ReplaceError::StaleInstance(format!("{}: {why}", inst.pattern));
    if path.len() < 2 || path.len() > c {
        return Err(stale("replaced path has the wrong length"));
    }
    if inst.replacement_path.first() != path.first() || inst.replacement_path.last() != path.last() {
        return Err(stale("paths have different ends"));
    }
    let mut seq = cycle.vertices().to_vec();
    let i = seq.iter().position(|&v| v == path[0]).ok_or_else(|| stale("start not on cycle"))?;
    seq.rotate_left(i);
    if !seq.starts_with(path) {
        seq[1..].reverse();
        if !seq.starts_with(path) {
            return Err(stale("replaced path is not a subpath of the cycle"));
        }
    }
    let mut next = inst.replacement_path.clone();
    next.extend_from_slice(&seq[path.len()..]);
    let out = CycleSeq::in_graph(emb, next).map_err(|e| stale(&e.to_string()))?;
    let report = validate_oi3(emb, &out).map_err(|e| ReplaceError::Internal(e.to_string()))?;
    if !report.valid || out.len() != c + inst.pattern.increment() {
        return Err(ReplaceError::Internal(format!(
            "{} produced an invalid cycle: {:?}",
            inst.pattern, report.violations
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bc::{build_bc_graph, classify_faces};
    use crate::cycle::validate_oi3;
    use crate::instances::drawing::CycleDrawing;
    use crate::instances::{named_graph, GraphName};

    #[test]
    fn catalogue_is_consistent() {
        let cat = catalogue();
        assert_eq!(cat.len(), 13);
        let expected = [2, 1, 3, 2, 1, 1, 2, 1, 1, 1, 1, 1, 1];
        for (p, want) in cat.iter().zip(expected) {
            assert_eq!(p.id.increment(), want, "{}", p.id);
            assert_eq!(p.replaced.chars().next(), p.replacement.chars().next());
            assert_eq!(p.replaced.chars().last(), p.replacement.chars().last());
            // the replaced path runs along the cycle, so it names no outer vertex
            assert!(!p.replaced.chars().any(is_outer_role));
            // the replacement never drops a cycle vertex
            assert!(p.replaced.chars().all(|r| p.replacement.contains(r)));
            for pair in p.chords {
                let pos: Vec<usize> = pair.chars().map(|r| p.replacement.find(r).unwrap()).collect();
                assert_eq!(pos[0].abs_diff(pos[1]), 1, "{} chord {pair} unused", p.id);
            }
        }
    }

    #[test]
    fn octahedron_has_no_instance() {
        let g = named_graph(GraphName::Octahedron).unwrap();
        let cycle = CycleSeq::new(vec![0, 1, 2, 3, 5, 4]).unwrap();
        let bc = build_bc_graph(&g.embedding, &cycle, &[]).unwrap();
        let classes = classify_faces(&bc);
        assert_eq!(detect_replacement(&g.embedding, &bc, &classes), Err(ReplaceError::CycleTooShort(6)));
    }

    fn run(d: &CycleDrawing) -> (PlanarEmbedding, Option<ReplacementInstance>) {
        let e = d.embedding().unwrap();
        let cycle = d.cycle();
        let r = validate_oi3(&e, &cycle).unwrap();
        assert!(r.valid);
        let bc = build_bc_graph(&e, &cycle, &r.outer).unwrap();
        let classes = classify_faces(&bc);
        let inst = detect_replacement(&e, &bc, &classes).unwrap();
        (e, inst)
    }

    #[test]
    fn two_face_against_two_face() {
        let d = CycleDrawing::new(10).inner_outer([0, 2, 6]).outer_outer([1, 3, 7]);
        let (e, inst) = run(&d);
        let inst = inst.unwrap();
        assert_eq!(inst.pattern, PatternId::C2b);
        let (a, b) = (10, 11);
        let fwd = vec![0, a, 2, 1, b, 3];
        let mut rev = fwd.clone();
        rev.reverse();
        assert!(inst.replacement_path == fwd || inst.replacement_path == rev);
        let longer = apply_replacement(&e, &d.cycle(), &inst).unwrap();
        assert_eq!(longer.len(), 12);
    }

    #[test]
    fn stale_instances_are_rejected() {
        let d = CycleDrawing::new(10).inner_outer([0, 2, 6]).outer_outer([1, 3, 7]);
        let (e, inst) = run(&d);
        let inst = inst.unwrap();
        let longer = apply_replacement(&e, &d.cycle(), &inst).unwrap();
        assert!(matches!(apply_replacement(&e, &longer, &inst), Err(ReplaceError::StaleInstance(_))));
    }

    #[test]
    fn one_outer_vertex_on_both_opposite_faces() {
        // b bounds the 2-face on 0 1 2 and the 3-face on 2 3 4 5
        let d = CycleDrawing::new(12).inner_outer([1, 4, 8]).outer_outer([0, 2, 5]);
        let (e, inst) = run(&d);
        let inst = inst.unwrap();
        assert_eq!(inst.pattern, PatternId::C3b);
        assert_eq!(inst.absorbed(), vec![12, 13]);
        assert!(!inst.binding.contains_key(&'b'));
        assert_eq!(apply_replacement(&e, &d.cycle(), &inst).unwrap().len(), 14);
    }

    #[test]
    fn no_instance_when_faces_are_isolated() {
        let d = CycleDrawing::new(12).inner_outer([0, 2, 6]).outer_outer([6, 8, 11]);
        let (_, inst) = run(&d);
        assert_eq!(inst, None);
    }
}
