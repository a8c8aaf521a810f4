//! Exhaustive searches used as ground truth on small graphs: circumference,
//! Hamiltonian cycles and longest OI3-cycles.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{validate_oi3, CycleSeq};
use crate::planar::{check_essentially_4_connected, PlanarEmbedding, VertexId};

/// Hard ceilings imposed by the bitset representations.
const LONGEST_CEILING: usize = 30;
const OI3_CEILING: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(Duration),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub max_n_longest: usize,
    pub max_n_oi3: usize,
    pub time_budget: Option<Duration>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_n_longest: 18, max_n_oi3: 24, time_budget: None }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.max_n_longest == 0 || self.max_n_oi3 == 0 {
            return Err(OracleError::InvalidConfig("thresholds must be positive".into()));
        }
        if self.max_n_longest > LONGEST_CEILING {
            return Err(OracleError::InvalidConfig(format!("max_n_longest is capped at {LONGEST_CEILING}")));
        }
        if self.max_n_oi3 > OI3_CEILING {
            return Err(OracleError::InvalidConfig(format!("max_n_oi3 is capped at {OI3_CEILING}")));
        }
        Ok(())
    }
}

struct Clock {
    start: Instant,
    budget: Option<Duration>,
    ticks: u32,
}

impl Clock {
    fn new(budget: Option<Duration>) -> Self {
        Clock { start: Instant::now(), budget, ticks: 0 }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) {
            if let Some(b) = self.budget {
                if self.start.elapsed() >= b {
                    return Err(OracleError::BudgetExceeded(b));
                }
            }
        }
        Ok(())
    }
}

/// Circumference and a witness of it.
///
/// For each possible least vertex `s` of the cycle, a subset DP records
/// which vertices can end an `s`-path covering exactly a given vertex set.
pub fn longest_cycle_exact(
    emb: &PlanarEmbedding,
    cfg: &OracleConfig,
) -> Result<(usize, CycleSeq), OracleError> {
    cfg.validate()?;
    let n = emb.vertex_count();
    if n > cfg.max_n_longest {
        return Err(OracleError::TooLarge { n, limit: cfg.max_n_longest });
    }
    let mut clock = Clock::new(cfg.time_budget);
    let mut best: Option<(usize, CycleSeq)> = None;
    for s in 0..n {
        let k = n - s;
        if best.as_ref().is_some_and(|b| b.0 >= k) || k < 3 {
            break;
        }
        // local bit i is vertex s + i; `sub` ranges over subsets of bits 1..k
        let nbr: Vec<u32> = (0..k)
            .map(|i| emb.neighbors(s + i).iter().filter(|&&w| w >= s).fold(0u32, |m, &w| m | 1 << (w - s)))
            .collect();
        let mut ends = vec![0u32; 1 << (k - 1)];
        ends[0] = 1;
        let mut found: Option<(usize, usize, usize)> = None;
        for sub in 0..ends.len() {
            clock.tick()?;
            let e = ends[sub];
            if e == 0 {
                continue;
            }
            let mask = (sub as u32) << 1 | 1;
            let len = mask.count_ones() as usize;
            let mut bits = e;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if len >= 3 && nbr[v] & 1 != 0 {
                    let better = match (found, &best) {
                        (Some((l, _, _)), _) => len > l,
                        (None, Some(b)) => len > b.0,
                        (None, None) => true,
                    };
                    if better {
                        found = Some((len, sub, v));
                    }
                }
                let mut next = nbr[v] & !mask;
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    ends[sub | 1 << (w - 1)] |= 1 << w;
                }
            }
        }
        if let Some((len, sub, v)) = found {
            let mut path = vec![s + v];
            let (mut rest, mut cur) = (sub & !(1 << (v - 1)), v);
            while rest != 0 {
                let cand = ends[rest] & nbr[cur];
                let u = cand.trailing_zeros() as usize;
                if cand == 0 {
                    return Err(OracleError::Internal("broken DP reconstruction".into()));
                }
                path.push(s + u);
                rest &= !(1 << (u - 1));
                cur = u;
            }
            path.push(s);
            let cycle = CycleSeq::new(path).map_err(|e| OracleError::Internal(e.to_string()))?;
            best = Some((len, cycle));
        }
    }
    best.ok_or_else(|| OracleError::PreconditionViolated("graph has no cycle".into()))
}

/// Depth-first Hamiltonian cycle search over the vertices in `allowed`.
struct HamSearch<'a> {
    adj: &'a [u64],
    allowed: u64,
    clock: &'a mut Clock,
}

impl HamSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<VertexId>>, OracleError> {
        if self.allowed.count_ones() < 3 {
            return Ok(None);
        }
        let start = self.allowed.trailing_zeros() as usize;
        let mut path = vec![start];
        if self.extend(&mut path, 1 << start)? {
            Ok(Some(path))
        } else {
            Ok(None)
        }
    }

    fn extend(&mut self, path: &mut Vec<VertexId>, visited: u64) -> Result<bool, OracleError> {
        self.clock.tick()?;
        let start = path[0];
        let end = *path.last().expect("nonempty");
        if visited == self.allowed {
            return Ok(path.len() >= 3 && self.adj[end] >> start & 1 == 1);
        }
        let open = self.allowed & !visited;
        // every unvisited vertex still needs two usable neighbours
        let usable = open | 1 << start | 1 << end;
        let mut rest = open;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (self.adj[w] & usable).count_ones() < 2 {
                return Ok(false);
            }
        }
        let mut next = self.adj[end] & open;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            if self.extend(path, visited | 1 << w)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}

fn adjacency_bits(emb: &PlanarEmbedding) -> Vec<u64> {
    (0..emb.vertex_count()).map(|v| emb.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect()
}

/// A longest OI3-cycle, or `None` if the graph has none.
///
/// Tries outer sets of size 0, 1, 2, ... in lexicographic order; each
/// candidate is an independent set of degree-3 vertices, and the rest of the
/// graph is searched for a Hamiltonian cycle.
pub fn search_oi3_cycle(emb: &PlanarEmbedding, cfg: &OracleConfig) -> Result<Option<CycleSeq>, OracleError> {
    cfg.validate()?;
    let n = emb.vertex_count();
    if n > cfg.max_n_oi3 {
        return Err(OracleError::TooLarge { n, limit: cfg.max_n_oi3 });
    }
    let adj = adjacency_bits(emb);
    let cubic: Vec<VertexId> = (0..n).filter(|&v| emb.degree(v) == 3).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut clock = Clock::new(cfg.time_budget);
    for size in 0..=cubic.len().min(n.saturating_sub(3)) {
        let mut picked = Vec::with_capacity(size);
        if let Some(found) = choose_outer(&cubic, &adj, size, 0, 0, &mut picked, &mut |outer| {
            HamSearch { adj: &adj, allowed: all & !outer, clock: &mut clock }.run()
        })? {
            let cycle = CycleSeq::new(found).map_err(|e| OracleError::Internal(e.to_string()))?;
            debug_assert!(validate_oi3(emb, &cycle).is_ok_and(|r| r.valid));
            return Ok(Some(cycle));
        }
    }
    Ok(None)
}

type Found = Option<Vec<VertexId>>;

/// Enumerates independent `size`-subsets of `cubic` from index `from` on and
/// calls `test` on each until it returns a cycle.
fn choose_outer(
    cubic: &[VertexId],
    adj: &[u64],
    size: usize,
    from: usize,
    outer: u64,
    picked: &mut Vec<VertexId>,
    test: &mut dyn FnMut(u64) -> Result<Found, OracleError>,
) -> Result<Found, OracleError> {
    if picked.len() == size {
        return test(outer);
    }
    for i in from..cubic.len() {
        if cubic.len() - i < size - picked.len() {
            break;
        }
        let b = cubic[i];
        if adj[b] & outer != 0 {
            continue;
        }
        picked.push(b);
        let r = choose_outer(cubic, adj, size, i + 1, outer | 1 << b, picked, test)?;
        picked.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

/// Hamiltonian cycle of an essentially 4-connected plane graph on at most
/// 10 vertices; such graphs are known to be Hamiltonian.
pub fn hamiltonian_small(emb: &PlanarEmbedding) -> Result<CycleSeq, OracleError> {
    let n = emb.vertex_count();
    if n > 10 {
        return Err(OracleError::PreconditionViolated(format!("n = {n} exceeds 10")));
    }
    if !check_essentially_4_connected(emb).essentially_4_connected {
        return Err(OracleError::PreconditionViolated("graph is not essentially 4-connected".into()));
    }
    let adj = adjacency_bits(emb);
    let mut clock = Clock::new(None);
    let found = HamSearch { adj: &adj, allowed: (1u64 << n) - 1, clock: &mut clock }.run()?;
    let path = found.ok_or_else(|| OracleError::Internal("no Hamiltonian cycle found".into()))?;
    CycleSeq::new(path).map_err(|e| OracleError::Internal(e.to_string()))
}
