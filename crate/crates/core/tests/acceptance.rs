//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p e4c-core --test acceptance`.

mod common;

use std::collections::{HashMap, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use e4c_core::bc::{build_bc_graph, classify_faces, opposite_face};
use e4c_core::cycle::validate_oi3;
use e4c_core::engine::{improve_to_fixpoint, solve, Certificate, EngineTrace, SolveConfig};
use e4c_core::instances::fixtures::replacement_fixtures;
use e4c_core::instances::format::{parse_graph, serialize_graph};
use e4c_core::instances::{gen_inserted_antiprism, inserted_octahedron, named_graph, GraphName};
use e4c_core::oracle::{longest_cycle_exact, OracleConfig};
use e4c_core::planar::{enumerate_3_separators, PlanarEmbedding, RotationTable, VertexId};
use e4c_core::replace::{apply_replacement, catalogue, detect_all, detect_replacement};
use e4c_core::CycleSeq;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock expectations and the growth factor allowed when n doubles.
const BOUND_RUNTIME: Duration = Duration::from_secs(10);
const ORACLE_RUNTIME: Duration = Duration::from_secs(120);
const GROWTH_LIMIT: f64 = 5.0;
const TIMING_REPEATS: usize = 31;
const ROUND_TRIPS: usize = 100;

#[derive(Clone)]
struct Run {
    label: String,
    emb: PlanarEmbedding,
    cycle: CycleSeq,
    certificate: Certificate,
    trace: EngineTrace,
}

/// `⌈3(n + 2)/5⌉` without going through the library.
fn bound(n: usize) -> usize {
    (3 * (n + 2)).div_ceil(5)
}

/// Checks the cycle from scratch: distinct vertices, consecutive ones
/// adjacent, the rest an independent set of degree-3 vertices.
fn check_oi3(emb: &PlanarEmbedding, vs: &[VertexId]) -> Result<(), String> {
    let n = emb.vertex_count();
    let set: HashSet<VertexId> = vs.iter().copied().collect();
    if set.len() != vs.len() || vs.len() < 3 || vs.iter().any(|&v| v >= n) {
        return Err(format!("not a vertex cycle: {vs:?}"));
    }
    for i in 0..vs.len() {
        let (u, v) = (vs[i], vs[(i + 1) % vs.len()]);
        if !emb.table().rotation(u).contains(&v) {
            return Err(format!("{u} {v} is not an edge"));
        }
    }
    for b in (0..n).filter(|v| !set.contains(v)) {
        let rot = emb.table().rotation(b);
        if rot.len() != 3 || rot.iter().any(|w| !set.contains(w)) {
            return Err(format!("off-cycle vertex {b} breaks the OI3 condition"));
        }
    }
    Ok(())
}

/// Discharging recomputed from the rotation table alone.
struct Audit {
    mu: i64,
    sum_w0: i64,
    sum_w1: i64,
    /// `(w1, j)` per face.
    faces: Vec<(i64, i64)>,
}

fn audit(emb: &PlanarEmbedding, vs: &[VertexId]) -> Audit {
    let n = emb.vertex_count();
    let c = vs.len();
    let mut pos = vec![None; n];
    for (i, &v) in vs.iter().enumerate() {
        pos[v] = Some(i);
    }
    let cycle_edge = |u: VertexId, v: VertexId| match (pos[u], pos[v]) {
        (Some(a), Some(b)) => (a + 1) % c == b || (b + 1) % c == a,
        _ => false,
    };
    let chord = |u: VertexId, v: VertexId| pos[u].is_some() && pos[v].is_some() && !cycle_edge(u, v);
    let rot: Vec<Vec<VertexId>> =
        (0..n).map(|v| emb.table().rotation(v).iter().copied().filter(|&w| !chord(v, w)).collect()).collect();
    // face tracing: (u, v) is followed by (v, w) where w follows u around v
    let mut face_of: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut faces: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    for u in 0..n {
        for &v in &rot[u] {
            if face_of.contains_key(&(u, v)) {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (u, v);
            while !face_of.contains_key(&(a, b)) {
                face_of.insert((a, b), id);
                walk.push((a, b));
                let r = &rot[b];
                let i = r.iter().position(|&x| x == a).unwrap();
                (a, b) = (b, r[(i + 1) % r.len()]);
            }
            faces.push(walk);
        }
    }
    let outer_on = |f: &[(VertexId, VertexId)]| -> Vec<VertexId> {
        let mut o: Vec<VertexId> = f.iter().map(|d| d.0).filter(|&v| pos[v].is_none()).collect();
        o.sort_unstable();
        o.dedup();
        o
    };
    let minor: Vec<bool> = faces.iter().map(|f| outer_on(f).len() <= 1).collect();
    let w0: Vec<i64> = minor.iter().map(|&m| if m { 6 } else { 0 }).collect();
    let mut w1 = w0.clone();
    let mut js = Vec::new();
    for (id, f) in faces.iter().enumerate() {
        let c_darts: Vec<(VertexId, VertexId)> =
            f.iter().copied().filter(|&(a, b)| cycle_edge(a, b)).collect();
        js.push(c_darts.len() as i64);
        if !minor[id] {
            continue;
        }
        let senders: Vec<(VertexId, VertexId)> = match c_darts.len() {
            2 => c_darts.clone(),
            3 => {
                // the middle C-edge touches no boundary neighbour of the outer vertex
                let near: Vec<VertexId> = f
                    .iter()
                    .filter(|d| pos[d.0].is_none() || pos[d.1].is_none())
                    .flat_map(|d| [d.0, d.1])
                    .collect();
                c_darts.iter().copied().filter(|d| !near.contains(&d.0) && !near.contains(&d.1)).collect()
            }
            _ => Vec::new(),
        };
        for (a, b) in senders {
            let to = face_of[&(b, a)];
            w1[id] -= 1;
            w1[to] += 1;
        }
    }
    let mu = minor.iter().filter(|&&m| m).count() as i64;
    Audit { mu, sum_w0: w0.iter().sum(), sum_w1: w1.iter().sum(), faces: w1.into_iter().zip(js).collect() }
}

fn corpus_runs(failures: &mut Vec<String>) -> Vec<Run> {
    let cfg = SolveConfig::default();
    let mut runs = Vec::new();
    let mut push =
        |label: String, emb: PlanarEmbedding, initial: Option<CycleSeq>, failures: &mut Vec<String>| {
            match solve(&emb, initial.as_ref(), &cfg) {
                Ok(s) => {
                    runs.push(Run { label, emb, cycle: s.cycle, certificate: s.certificate, trace: s.trace })
                }
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        };
    for name in GraphName::ALL {
        let g = named_graph(name).expect("named graph");
        if g.embedding.vertex_count() <= 10 && g.facts.essentially_4_connected {
            push(name.to_string(), g.embedding, None, failures);
        }
    }
    for k in 3..=8 {
        match gen_inserted_antiprism(k) {
            Ok(inst) => push(format!("antiprism k={k}"), inst.embedding, Some(inst.initial_cycle), failures),
            Err(e) => failures.push(format!("antiprism k={k}: {e}")),
        }
    }
    runs
}

fn extra_runs() -> Vec<Run> {
    let cfg = SolveConfig::default();
    let mut runs = Vec::new();
    let ico = named_graph(GraphName::Icosahedron).unwrap().embedding;
    let oct = inserted_octahedron();
    let mut inputs = vec![
        ("icosahedron".to_string(), ico, None),
        ("inserted octahedron".to_string(), oct.embedding, Some(oct.initial_cycle)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..40 {
        let k = 4 + i % 3;
        let prob = [0.15, 0.5, 1.0][i % 3];
        let inst = common::random_instance(&mut rng, k, prob);
        inputs.push((format!("random #{i}"), inst.embedding, Some(inst.initial)));
    }
    for (label, emb, initial) in inputs {
        let s = solve(&emb, initial.as_ref(), &cfg).unwrap_or_else(|e| panic!("{label}: {e}"));
        runs.push(Run { label, emb, cycle: s.cycle, certificate: s.certificate, trace: s.trace });
    }
    runs
}

fn criterion_1(runs: &[Run], mut failures: Vec<String>, elapsed: Duration) -> Result<String, String> {
    let mut min_slack = i64::MAX;
    for r in runs {
        let n = r.emb.vertex_count();
        if let Err(e) = check_oi3(&r.emb, r.cycle.vertices()) {
            failures.push(format!("{}: {e}", r.label));
        }
        let slack = r.cycle.len() as i64 - bound(n) as i64;
        min_slack = min_slack.min(slack);
        if slack < 0 {
            failures.push(format!("{}: c = {} < {}", r.label, r.cycle.len(), bound(n)));
        }
    }
    if elapsed > BOUND_RUNTIME {
        failures.push(format!("took {elapsed:?}, expected under {BOUND_RUNTIME:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{} instances, min slack {min_slack}, {elapsed:.2?}", runs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_2(runs: &[Run]) -> Result<String, String> {
    let mut failures = Vec::new();
    for r in runs {
        let cert = &r.certificate;
        let a = audit(&r.emb, r.cycle.vertices());
        let (n, c) = (r.emb.vertex_count() as i64, r.cycle.len() as i64);
        let mut bad = Vec::new();
        if !cert.fixpoint {
            bad.push("not a fixpoint".to_string());
        }
        if a.mu < n - c + 2 {
            bad.push(format!("mu = {} < n - c + 2 = {}", a.mu, n - c + 2));
        }
        if a.sum_w0 != 6 * a.mu || a.sum_w1 != 6 * a.mu {
            bad.push(format!("sums {} {} vs 6mu = {}", a.sum_w0, a.sum_w1, 6 * a.mu));
        }
        if let Some((w1, j)) = a.faces.iter().find(|(w1, j)| w1 > &(2 * j)) {
            bad.push(format!("face with w1 = {w1} > 2j = {}", 2 * j));
        }
        if 6 * a.mu > 4 * c {
            bad.push(format!("6mu = {} > 4c = {}", 6 * a.mu, 4 * c));
        }
        if (cert.mu as i64, cert.sum_w0, cert.sum_w1) != (a.mu, a.sum_w0, a.sum_w1) {
            bad.push(format!(
                "certificate (mu, w0, w1) = ({}, {}, {}) disagrees with audit ({}, {}, {})",
                cert.mu, cert.sum_w0, cert.sum_w1, a.mu, a.sum_w0, a.sum_w1
            ));
        }
        if !(cert.ineq_i && cert.ineq_ii && cert.ineq_iii && cert.conserved) {
            bad.push("certificate reports a failed identity".into());
        }
        if !bad.is_empty() {
            failures.push(format!("{}: {}", r.label, bad.join(", ")));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} fixpoints audited", runs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_3(runs: &[Run]) -> Result<String, String> {
    let started = Instant::now();
    let cfg = OracleConfig::default();
    let mut failures = Vec::new();
    let mut checked = 0;
    for r in runs.iter().filter(|r| r.emb.vertex_count() <= 16) {
        let n = r.emb.vertex_count();
        let (circ, witness) = match longest_cycle_exact(&r.emb, &cfg) {
            Ok(x) => x,
            Err(e) => {
                failures.push(format!("{}: oracle {e}", r.label));
                continue;
            }
        };
        checked += 1;
        if witness.len() != circ || witness.check_edges(&r.emb).is_err() {
            failures.push(format!("{}: oracle witness invalid", r.label));
        }
        if r.cycle.len() > circ {
            failures.push(format!("{}: c = {} exceeds circumference {circ}", r.label, r.cycle.len()));
        }
        if n <= 10 && r.cycle.len() != n {
            failures.push(format!("{}: c = {} on n = {n}", r.label, r.cycle.len()));
        }
    }
    let elapsed = started.elapsed();
    if elapsed > ORACLE_RUNTIME {
        failures.push(format!("took {elapsed:?}, expected under {ORACLE_RUNTIME:?}"));
    }
    if failures.is_empty() {
        Ok(format!("{checked} instances with n <= 16, {elapsed:.2?}"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_4() -> Result<String, String> {
    let mut failures = Vec::new();
    let fixtures = replacement_fixtures();
    let covered: HashSet<_> = fixtures.iter().map(|f| f.pattern).collect();
    if covered.len() != catalogue().len() || catalogue().len() != 13 {
        failures.push(format!("{} patterns covered of {}", covered.len(), catalogue().len()));
    }
    for f in &fixtures {
        let result = (|| -> Result<(), String> {
            let emb = f.drawing.embedding().map_err(|e| e.to_string())?;
            let cycle = f.drawing.cycle();
            let report = validate_oi3(&emb, &cycle).map_err(|e| e.to_string())?;
            if !report.valid {
                return Err("fixture is not an OI3-cycle".into());
            }
            check_oi3(&emb, cycle.vertices())?;
            let bc = build_bc_graph(&emb, &cycle, &report.outer).map_err(|e| e.to_string())?;
            let classes = classify_faces(&bc);
            let all = detect_all(&emb, &bc, &classes).map_err(|e| e.to_string())?;
            if all.is_empty() || all.iter().any(|i| i.pattern != f.pattern) {
                let found: Vec<String> = all.iter().map(|i| i.pattern.to_string()).collect();
                return Err(format!("detected {found:?}"));
            }
            let inst = detect_replacement(&emb, &bc, &classes).map_err(|e| e.to_string())?.unwrap();
            let next = apply_replacement(&emb, &cycle, &inst).map_err(|e| e.to_string())?;
            check_oi3(&emb, next.vertices())?;
            let gain = next.len() - cycle.len();
            if gain != f.pattern.increment() {
                return Err(format!("gain {gain}, catalogue says {}", f.pattern.increment()));
            }
            if !cycle.vertices().iter().all(|&v| next.contains(v)) {
                return Err("a cycle vertex was dropped".into());
            }
            Ok(())
        })();
        if let Err(e) = result {
            failures.push(format!("{} ({}): {e}", f.name, f.pattern));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} fixtures", fixtures.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn median_time(emb: &PlanarEmbedding, initial: &CycleSeq) -> Duration {
    let mut times: Vec<Duration> = (0..TIMING_REPEATS)
        .map(|_| {
            let t = Instant::now();
            improve_to_fixpoint(emb, initial).expect("engine run");
            t.elapsed()
        })
        .collect();
    times.sort();
    times[TIMING_REPEATS / 2]
}

fn criterion_5(runs: &[Run]) -> Result<String, String> {
    let mut failures = Vec::new();
    for r in runs {
        let n = r.emb.vertex_count();
        if r.trace.iterations > n || r.trace.iterations != r.trace.steps.len() {
            failures.push(format!("{}: {} iterations on n = {n}", r.label, r.trace.iterations));
        }
    }
    let small = gen_inserted_antiprism(4).map_err(|e| e.to_string())?;
    let large = gen_inserted_antiprism(8).map_err(|e| e.to_string())?;
    // warm-up
    median_time(&small.embedding, &small.initial_cycle);
    let t_small = median_time(&small.embedding, &small.initial_cycle);
    let t_large = median_time(&large.embedding, &large.initial_cycle);
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64().max(1e-9);
    if ratio > GROWTH_LIMIT {
        failures.push(format!("n = 26 -> 50 grew {ratio:.2}x ({t_small:?} -> {t_large:?})"));
    }
    if failures.is_empty() {
        Ok(format!("{} runs within n iterations; n = 26 -> 50 grew {ratio:.2}x", runs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn components_without(emb: &PlanarEmbedding, removed: &[VertexId]) -> usize {
    let n = emb.vertex_count();
    let mut seen = vec![false; n];
    for &v in removed {
        seen[v] = true;
    }
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in emb.table().rotation(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

/// Relabels vertices and rotates each rotation list at random.
fn scramble(rng: &mut ChaCha8Rng, emb: &PlanarEmbedding) -> RotationTable {
    let n = emb.vertex_count();
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(rng);
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        let mut r: Vec<VertexId> = emb.table().rotation(v).iter().map(|&w| perm[w]).collect();
        if !r.is_empty() {
            let k = rng.gen_range(0..r.len());
            r.rotate_left(k);
        }
        rot[perm[v]] = r;
    }
    RotationTable::new(rot).expect("relabelled table")
}

fn criterion_6(runs: &[Run]) -> Result<String, String> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ab1e);
    for i in 0..ROUND_TRIPS {
        let k = 4 + i % 4;
        let inst = common::random_instance(&mut rng, k, [0.0, 0.3, 1.0][i % 3]);
        let table = scramble(&mut rng, &inst.embedding);
        let text = serialize_graph(&table);
        match parse_graph(&text) {
            Ok(back) if back == table && serialize_graph(&back) == text => {}
            Ok(_) => failures.push(format!("table #{i}: round trip changed the table")),
            Err(e) => failures.push(format!("table #{i}: {e}")),
        }
    }
    let mut separators = 0;
    let mut graphs: Vec<(String, PlanarEmbedding)> =
        GraphName::ALL.iter().map(|&g| (g.to_string(), named_graph(g).unwrap().embedding)).collect();
    graphs
        .extend(runs.iter().filter(|r| r.emb.vertex_count() <= 30).map(|r| (r.label.clone(), r.emb.clone())));
    for (label, emb) in &graphs {
        for s in enumerate_3_separators(emb) {
            separators += 1;
            if components_without(emb, &s.vertices) < 2 {
                failures.push(format!("{label}: {:?} does not separate", s.vertices));
            }
        }
    }
    let mut checked_faces = 0;
    for r in runs {
        let report = validate_oi3(&r.emb, &r.cycle).map_err(|e| e.to_string())?;
        let bc = build_bc_graph(&r.emb, &r.cycle, &report.outer).map_err(|e| e.to_string())?;
        for edge in 0..bc.cycle_len() {
            for f in bc.edge_faces(edge) {
                checked_faces += 1;
                let g = opposite_face(&bc, edge, f).map_err(|e| e.to_string())?;
                let back = opposite_face(&bc, edge, g).map_err(|e| e.to_string())?;
                if back != f || g == f {
                    failures.push(format!("{}: edge {edge} face {f} -> {g} -> {back}", r.label));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{ROUND_TRIPS} round trips, {separators} separators re-checked, {checked_faces} opposite-face pairs"
        ))
    } else {
        Err(failures.join("; "))
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let mut corpus_failures = Vec::new();
    let corpus = corpus_runs(&mut corpus_failures);
    let corpus_time = started.elapsed();
    let mut all_runs = corpus.clone();
    all_runs.extend(extra_runs());

    let outcomes: Vec<(u8, &str, Result<String, String>)> = vec![
        (1, "length bound", criterion_1(&corpus, corpus_failures, corpus_time)),
        (2, "certificate identities", criterion_2(&all_runs)),
        (3, "oracle agreement", criterion_3(&all_runs)),
        (4, "replacement catalogue", criterion_4()),
        (5, "complexity trend", criterion_5(&all_runs)),
        (6, "robustness", criterion_6(&all_runs)),
    ];
    let mut ok = true;
    for (id, name, result) in &outcomes {
        match result {
            Ok(detail) => println!("PASS {id} {name}: {detail}"),
            Err(why) => {
                ok = false;
                println!("FAIL {id} {name}: {why}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
