//! The improvement loop and its certificate.
//!
//! Each round first extends the cycle through an outer vertex if some cycle
//! edge allows it, and otherwise applies the first replacement found. At a
//! fixpoint the discharging audit yields `6(n - c + 2) <= 6 mu <= 4c`, so
//! `c >= 3(n + 2)/5`.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bc::{build_bc_graph, check_counting_bounds, classify_faces, run_discharging, FaceOverload};
use crate::cycle::{extend_cycle, find_extendable_edges, validate_oi3, CycleSeq};
use crate::oracle::{hamiltonian_small, search_oi3_cycle, OracleConfig, OracleError};
use crate::planar::{check_essentially_4_connected, PlanarEmbedding, VertexId};
use crate::replace::{apply_replacement, detect_replacement, PatternId, ReplaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("initial cycle is not a valid OI3-cycle: {0}")]
    InitialCycleInvalid(String),
    #[error("cycle of length {0} admits no extension and is too short for replacements")]
    CycleTooShortAtFixpoint(usize),
    #[error("graph is not essentially 4-connected (separator {0:?})")]
    NotEssentially4Connected(Vec<VertexId>),
    #[error("no initial OI3-cycle: n = {0} is above the search threshold and none was supplied")]
    NoInitialCycleFound(usize),
    #[error(transparent)]
    Replace(#[from] ReplaceError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// `⌈3(n + 2)/5⌉`.
pub fn length_bound(n: usize) -> usize {
    (3 * (n + 2)).div_ceil(5)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "pattern", rename_all = "lowercase")]
pub enum StepKind {
    Extend,
    Replace(PatternId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(flatten)]
    pub kind: StepKind,
    pub before: usize,
    pub after: usize,
}

impl Step {
    /// `extend 12 13` or `replace C3a 13 16`.
    pub fn to_line(&self) -> String {
        match self.kind {
            StepKind::Extend => format!("extend {} {}", self.before, self.after),
            StepKind::Replace(p) => format!("replace {p} {} {}", self.before, self.after),
        }
    }
}

/// Record of one run. Wall time is informational and ignored by equality.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EngineTrace {
    pub steps: Vec<Step>,
    pub iterations: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for EngineTrace {
    fn eq(&self, other: &Self) -> bool {
        self.steps == other.steps && self.iterations == other.iterations
    }
}

impl Eq for EngineTrace {}

/// Runs extensions and replacements until neither applies.
///
/// The caller is responsible for `emb` being essentially 4-connected; the
/// check is too expensive to repeat here and [`solve`] performs it.
pub fn improve_to_fixpoint(
    emb: &PlanarEmbedding,
    initial: &CycleSeq,
) -> Result<(CycleSeq, EngineTrace), EngineError> {
    let started = Instant::now();
    let n = emb.vertex_count();
    let report = validate_oi3(emb, initial).map_err(|e| EngineError::InitialCycleInvalid(e.to_string()))?;
    if !report.valid {
        return Err(EngineError::InitialCycleInvalid(format!("{:?}", report.violations)));
    }
    let mut cycle = initial.clone();
    let mut outer = report.outer;
    let mut trace = EngineTrace::default();
    loop {
        if trace.iterations > n {
            return Err(EngineError::Internal(format!("more than {n} iterations")));
        }
        let before = cycle.len();
        let (next, kind) = if let Some(x) = find_extendable_edges(emb, &cycle, &outer).first() {
            let next = extend_cycle(emb, &cycle, x.edge, x.witness)
                .map_err(|e| EngineError::Internal(e.to_string()))?;
            outer.retain(|&b| b != x.witness);
            (next, StepKind::Extend)
        } else {
            if outer.is_empty() {
                break;
            }
            if cycle.len() < 8 {
                return Err(EngineError::CycleTooShortAtFixpoint(cycle.len()));
            }
            let bc = build_bc_graph(emb, &cycle, &outer).map_err(|e| EngineError::Internal(e.to_string()))?;
            let classes = classify_faces(&bc);
            let Some(inst) = detect_replacement(emb, &bc, &classes)? else {
                break;
            };
            let next = apply_replacement(emb, &cycle, &inst)?;
            let absorbed = inst.absorbed();
            outer.retain(|b| !absorbed.contains(b));
            (next, StepKind::Replace(inst.pattern))
        };
        if next.len() <= before {
            return Err(EngineError::Internal("step did not lengthen the cycle".into()));
        }
        trace.steps.push(Step { kind, before, after: next.len() });
        trace.iterations += 1;
        cycle = next;
    }
    trace.elapsed = started.elapsed();
    Ok((cycle, trace))
}

/// Outcome of the discharging audit for one cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub c: usize,
    pub mu: usize,
    /// `⌈3(n + 2)/5⌉`.
    pub bound: usize,
    /// `mu >= n - c + 2`.
    pub ineq_i: bool,
    /// `6 mu <= 4c`.
    pub ineq_ii: bool,
    /// `w1(f) <= 2 j(f)` on every face.
    pub ineq_iii: bool,
    /// `sum w0 = sum w1 = 6 mu`.
    pub conserved: bool,
    pub sum_w0: i64,
    pub sum_w1: i64,
    /// No extendable edge and no replacement.
    pub fixpoint: bool,
    /// `c >= bound`.
    pub meets_bound: bool,
    /// Faces breaking `w1(f) <= 2 j(f)`.
    pub overloads: Vec<FaceOverload>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateParseError {
    #[error("line {0}: expected `key=value`")]
    Malformed(usize),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
}

const CERT_KEYS: [&str; 13] = [
    "n",
    "c",
    "mu",
    "bound",
    "ineq_i",
    "ineq_ii",
    "ineq_iii",
    "conserved",
    "sum_w0",
    "sum_w1",
    "fixpoint",
    "meets_bound",
    "overloads",
];

impl Certificate {
    /// Whether the certificate proves `c >= bound` on its own terms.
    pub fn is_valid(&self) -> bool {
        self.fixpoint && self.ineq_i && self.ineq_ii && self.meets_bound
    }

    /// One `key=value` line per field; overloads as `face:j:w1` tokens.
    pub fn to_kv(&self) -> String {
        let overloads: Vec<String> =
            self.overloads.iter().map(|o| format!("{}:{}:{}", o.face, o.j, o.w1)).collect();
        let mut out = String::new();
        let values: [String; 13] = [
            self.n.to_string(),
            self.c.to_string(),
            self.mu.to_string(),
            self.bound.to_string(),
            self.ineq_i.to_string(),
            self.ineq_ii.to_string(),
            self.ineq_iii.to_string(),
            self.conserved.to_string(),
            self.sum_w0.to_string(),
            self.sum_w1.to_string(),
            self.fixpoint.to_string(),
            self.meets_bound.to_string(),
            overloads.join(" "),
        ];
        for (k, v) in CERT_KEYS.iter().zip(values) {
            writeln!(out, "{k}={v}").expect("string write");
        }
        out
    }

    /// Inverse of [`Certificate::to_kv`]. Blank lines are ignored.
    pub fn from_kv(text: &str) -> Result<Self, CertificateParseError> {
        let mut values: [Option<&str>; 13] = [None; 13];
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(CertificateParseError::Malformed(i + 1))?;
            let slot = CERT_KEYS
                .iter()
                .position(|&key| key == k)
                .ok_or_else(|| CertificateParseError::UnknownKey(k.to_string()))?;
            values[slot] = Some(v);
        }
        let raw = |i: usize| values[i].ok_or(CertificateParseError::MissingKey(CERT_KEYS[i]));
        fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CertificateParseError> {
            v.parse().map_err(|_| CertificateParseError::BadValue { key: key.into(), value: v.into() })
        }
        let field = |i: usize| raw(i).and_then(|v| parse::<i64>(CERT_KEYS[i], v));
        let count = |i: usize| raw(i).and_then(|v| parse::<usize>(CERT_KEYS[i], v));
        let flag = |i: usize| raw(i).and_then(|v| parse::<bool>(CERT_KEYS[i], v));
        let mut cert = Certificate {
            n: count(0)?,
            c: count(1)?,
            mu: count(2)?,
            bound: count(3)?,
            ineq_i: flag(4)?,
            ineq_ii: flag(5)?,
            ineq_iii: flag(6)?,
            conserved: flag(7)?,
            sum_w0: field(8)?,
            sum_w1: field(9)?,
            fixpoint: flag(10)?,
            meets_bound: flag(11)?,
            overloads: Vec::new(),
        };
        for tok in raw(12)?.split_whitespace() {
            let bad = || CertificateParseError::BadValue { key: "overloads".into(), value: tok.into() };
            let parts: Vec<&str> = tok.split(':').collect();
            let [face, j, w1] = parts[..] else {
                return Err(bad());
            };
            cert.overloads.push(FaceOverload {
                face: face.parse().map_err(|_| bad())?,
                j: j.parse().map_err(|_| bad())?,
                w1: w1.parse().map_err(|_| bad())?,
            });
        }
        Ok(cert)
    }
}

/// Audits `cycle`. Fails only if the cycle is not an OI3-cycle, or if the
/// inequalities hold at a fixpoint while the length bound does not, which
/// is arithmetically impossible.
pub fn certify(emb: &PlanarEmbedding, cycle: &CycleSeq) -> Result<Certificate, EngineError> {
    let report = validate_oi3(emb, cycle).map_err(|e| EngineError::InitialCycleInvalid(e.to_string()))?;
    if !report.valid {
        return Err(EngineError::InitialCycleInvalid(format!("{:?}", report.violations)));
    }
    let bc = build_bc_graph(emb, cycle, &report.outer).map_err(|e| EngineError::Internal(e.to_string()))?;
    let classes = classify_faces(&bc);
    let weights = run_discharging(&bc, emb, &classes);
    let bounds = check_counting_bounds(&bc, &classes, &weights);
    let c = cycle.len();
    let fixpoint = weights.extendable_free
        && (report.outer.is_empty() || (c >= 8 && detect_replacement(emb, &bc, &classes)?.is_none()));
    let n = emb.vertex_count();
    let bound = length_bound(n);
    let cert = Certificate {
        n,
        c,
        mu: bounds.mu,
        bound,
        ineq_i: bounds.ineq_i,
        ineq_ii: bounds.ineq_ii,
        ineq_iii: bounds.ineq_iii(),
        conserved: bounds.conserved,
        sum_w0: bounds.sum_w0,
        sum_w1: bounds.sum_w1,
        fixpoint,
        meets_bound: c >= bound,
        overloads: bounds.iii_violations,
    };
    if cert.fixpoint && cert.ineq_i && cert.ineq_ii && !cert.meets_bound {
        return Err(EngineError::Internal(format!("inequalities hold but c = {c} < {bound}")));
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub oracle: OracleConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub cycle: CycleSeq,
    pub certificate: Certificate,
    pub trace: EngineTrace,
}

/// End to end: Hamiltonian search for `n <= 10`, otherwise the improvement
/// loop from `initial`, or from an OI3-cycle found by exhaustive search.
pub fn solve(
    emb: &PlanarEmbedding,
    initial: Option<&CycleSeq>,
    cfg: &SolveConfig,
) -> Result<Solution, EngineError> {
    let verdict = check_essentially_4_connected(emb);
    if !verdict.essentially_4_connected {
        return Err(EngineError::NotEssentially4Connected(verdict.witness.unwrap_or_default()));
    }
    let n = emb.vertex_count();
    if n <= 10 {
        let started = Instant::now();
        let cycle = hamiltonian_small(emb)?;
        let certificate = certify(emb, &cycle)?;
        let trace = EngineTrace { steps: Vec::new(), iterations: 0, elapsed: started.elapsed() };
        return Ok(Solution { cycle, certificate, trace });
    }
    let searched;
    let start = match initial {
        Some(c) => c,
        None if n <= cfg.oracle.max_n_oi3 => {
            searched = search_oi3_cycle(emb, &cfg.oracle)?.ok_or(EngineError::NoInitialCycleFound(n))?;
            &searched
        }
        None => return Err(EngineError::NoInitialCycleFound(n)),
    };
    let (cycle, trace) = improve_to_fixpoint(emb, start)?;
    let certificate = certify(emb, &cycle)?;
    if !certificate.fixpoint {
        return Err(EngineError::Internal("loop stopped before a fixpoint".into()));
    }
    Ok(Solution { cycle, certificate, trace })
}
