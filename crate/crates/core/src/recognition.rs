//! Deciding whether an abstract graph is an (r,q)-polycycle and building
//! its plane realization.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{find_isomorphism, Graph};
use crate::map::{Dart, PlaneMap};
use crate::pmap;
use crate::polycycle::{Polycycle, Stats};
use crate::tessellation::{geometry_class, Geometry, TessellationPatch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("r and q must be at least 3")]
    Parameters,
    #[error("graph is empty or not connected")]
    NotConnected,
    #[error("girth is {actual:?}, expected {expected}")]
    GirthMismatch { actual: Option<usize>, expected: u32 },
    #[error("vertex {vertex} has degree {degree} > q")]
    DegreeExceeded { vertex: u32, degree: usize },
    #[error("input was rejected at condition {0:?}")]
    Rejected(Condition),
    #[error("realization failed: {0}")]
    Realization(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl Condition {
    pub fn roman(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::Ii => "ii",
            Condition::Iii => "iii",
            Condition::Iv => "iv",
            Condition::V => "v",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// An edge lying on the wrong number of r-cycles.
    Edge { u: u32, v: u32, cycles: usize },
    /// A vertex where the boundary or the cycle sequence breaks.
    Vertex { v: u32 },
    /// Two r-cycles meeting badly.
    Cycles { first: Vec<u32>, second: Vec<u32> },
    /// Counts violating v - e + f = 1.
    Counts { v: usize, e: usize, f: usize },
    /// No edge lies on exactly one r-cycle.
    NoBoundary,
}

impl Witness {
    /// Renames vertices, e.g. back to input ids.
    pub fn map_vertices(&self, f: impl Fn(u32) -> u32) -> Witness {
        match self {
            Witness::Edge { u, v, cycles } => Witness::Edge { u: f(*u), v: f(*v), cycles: *cycles },
            Witness::Vertex { v } => Witness::Vertex { v: f(*v) },
            Witness::Cycles { first, second } => Witness::Cycles {
                first: first.iter().map(|&x| f(x)).collect(),
                second: second.iter().map(|&x| f(x)).collect(),
            },
            w => w.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accepted,
    Rejected,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecognitionReport {
    pub verdict: Verdict,
    pub r: u32,
    pub q: u32,
    pub condition: Option<Condition>,
    pub witness: Option<Witness>,
    pub platonic: bool,
    pub platonic_realization_count: Option<usize>,
    /// Conditions a Platonic skeleton fails, with the first witness each.
    pub platonic_violations: Vec<Condition>,
    pub r_cycles: usize,
    pub stats: Option<Stats>,
    /// Realization in canonical PMAP form.
    pub realization_pmap: Option<String>,
    #[serde(skip)]
    pub realization: Option<Polycycle>,
}

impl RecognitionReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// All r-cycles of `g`, each starting at its smallest vertex with the
/// smaller of the two neighbours second.
pub fn r_cycles(g: &Graph, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(r);
    let mut on = vec![false; g.n()];
    for s in 0..g.n() as u32 {
        let dist = g.bfs(s);
        path.clear();
        path.push(s);
        on[s as usize] = true;
        extend(g, r, s, &dist, &mut path, &mut on, &mut out);
        on[s as usize] = false;
    }
    out
}

fn extend(
    g: &Graph,
    r: usize,
    s: u32,
    dist: &[u32],
    path: &mut Vec<u32>,
    on: &mut [bool],
    out: &mut Vec<Vec<u32>>,
) {
    let u = *path.last().unwrap();
    if path.len() == r {
        if g.has_edge(u, s) && path[1] < path[r - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(u) {
        if w <= s || on[w as usize] {
            continue;
        }
        // w must still be able to return to s in the remaining steps
        if dist[w as usize] as usize > r - path.len() {
            continue;
        }
        on[w as usize] = true;
        path.push(w);
        extend(g, r, s, dist, path, on, out);
        path.pop();
        on[w as usize] = false;
    }
}

pub fn count_r_cycles(g: &Graph, r: usize) -> usize {
    r_cycles(g, r).len()
}

fn key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

fn cycle_edges(c: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    (0..c.len()).map(move |i| key(c[i], c[(i + 1) % c.len()]))
}

fn edge_cycles(g: &Graph, cycles: &[Vec<u32>]) -> HashMap<(u32, u32), Vec<usize>> {
    let mut ec: HashMap<(u32, u32), Vec<usize>> = g.edges().into_iter().map(|e| (e, Vec::new())).collect();
    for (i, c) in cycles.iter().enumerate() {
        for e in cycle_edges(c) {
            ec.get_mut(&e).unwrap().push(i);
        }
    }
    ec
}

/// Evaluates conditions (i)-(v); with `stop_first` returns at most one
/// failure. `strict_iii` forbids single-vertex intersections and skips (v).
fn check_conditions(
    g: &Graph,
    cycles: &[Vec<u32>],
    q: u32,
    stop_first: bool,
    strict_iii: bool,
) -> Vec<(Condition, Witness)> {
    let mut fails = Vec::new();
    let ec = edge_cycles(g, cycles);
    let mut edges: Vec<_> = ec.iter().collect();
    edges.sort();
    // (i)
    if let Some((&(u, v), cs)) = edges.iter().find(|(_, cs)| cs.is_empty() || cs.len() > 2) {
        fails.push((Condition::I, Witness::Edge { u, v, cycles: cs.len() }));
        if stop_first {
            return fails;
        }
    }
    // (ii)
    let boundary: Vec<(u32, u32)> = edges.iter().filter(|(_, cs)| cs.len() == 1).map(|(e, _)| **e).collect();
    let mut bdeg = vec![0usize; g.n()];
    for &(u, v) in &boundary {
        bdeg[u as usize] += 1;
        bdeg[v as usize] += 1;
    }
    let ii = if boundary.is_empty() {
        Some(Witness::NoBoundary)
    } else if let Some(v) = (0..g.n()).find(|&v| bdeg[v] != 0 && bdeg[v] != 2) {
        Some(Witness::Vertex { v: v as u32 })
    } else {
        let bg = Graph::from_edges(g.n(), &boundary);
        let d = bg.bfs(boundary[0].0);
        (0..g.n()).find(|&v| bdeg[v] == 2 && d[v] == u32::MAX).map(|v| Witness::Vertex { v: v as u32 })
    };
    if let Some(w) = ii {
        fails.push((Condition::Ii, w));
        if stop_first {
            return fails;
        }
    }
    // (iii)
    let sets: Vec<Vec<u32>> = cycles
        .iter()
        .map(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s
        })
        .collect();
    'outer: for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let common: Vec<u32> = sets[i].iter().filter(|x| sets[j].binary_search(x).is_ok()).copied().collect();
            let ok = match common.len() {
                0 => true,
                1 => !strict_iii,
                2 => {
                    let e = key(common[0], common[1]);
                    cycle_edges(&cycles[i]).any(|f| f == e) && cycle_edges(&cycles[j]).any(|f| f == e)
                }
                _ => false,
            };
            if !ok {
                fails.push((Condition::Iii, Witness::Cycles { first: cycles[i].clone(), second: cycles[j].clone() }));
                if stop_first {
                    return fails;
                }
                break 'outer;
            }
        }
    }
    // (iv)
    let (v, e, f) = (g.n(), g.edge_count(), cycles.len());
    if v as i64 - e as i64 + f as i64 != 1 {
        fails.push((Condition::Iv, Witness::Counts { v, e, f }));
        if stop_first {
            return fails;
        }
    }
    // (v)
    if !strict_iii {
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, c) in cycles.iter().enumerate() {
            for &x in c {
                through[x as usize].push(i);
            }
        }
        for x in 0..g.n() as u32 {
            let cs = &through[x as usize];
            if cs.is_empty() {
                continue;
            }
            // cycles through x adjacent when they share an edge at x
            let mut adj = vec![0usize; cs.len()];
            let mut links = Vec::new();
            for &y in g.neighbors(x) {
                let on: Vec<usize> = ec[&key(x, y)].iter().map(|c| cs.iter().position(|d| d == c).unwrap()).collect();
                if on.len() == 2 {
                    adj[on[0]] += 1;
                    adj[on[1]] += 1;
                    links.push((on[0] as u32, on[1] as u32));
                }
            }
            let k = cs.len();
            let lg = Graph::from_edges(k, &links);
            let connected = lg.is_connected();
            let max_deg = adj.iter().copied().max().unwrap_or(0);
            let path = connected && max_deg <= 2 && links.len() + 1 == k && k < q as usize;
            let cyc = connected && adj.iter().all(|&d| d == 2) && links.len() == k && k == q as usize;
            if !(path || cyc) {
                fails.push((Condition::V, Witness::Vertex { v: x }));
                break;
            }
        }
    }
    fails
}

fn prechecks(g: &Graph, r: u32, q: u32) -> Result<(), RecognitionError> {
    if r < 3 || q < 3 {
        return Err(RecognitionError::Parameters);
    }
    if g.n() == 0 || !g.is_connected() {
        return Err(RecognitionError::NotConnected);
    }
    let girth = g.girth();
    if girth != Some(r as usize) {
        return Err(RecognitionError::GirthMismatch { actual: girth, expected: r });
    }
    if let Some(v) = (0..g.n() as u32).find(|&v| g.degree(v) > q as usize) {
        return Err(RecognitionError::DegreeExceeded { vertex: v, degree: g.degree(v) });
    }
    Ok(())
}

/// Closed Platonic map of (r^q) whose skeleton is isomorphic to `g`,
/// relabelled onto `g`'s vertices.
fn platonic_match(g: &Graph, r: u32, q: u32) -> Option<PlaneMap> {
    if geometry_class(r, q) != Geometry::Spheric {
        return None;
    }
    let p = TessellationPatch::platonic(r, q)?;
    let m = p.map();
    if m.n() != g.n() || m.edge_count() != g.edge_count() {
        return None;
    }
    let iso = find_isomorphism(&m.to_graph(), g)?;
    Some(m.relabel(&iso))
}

/// Decides whether `g` is an (r,q)-polycycle.
pub fn recognize(g: &Graph, r: u32, q: u32) -> Result<RecognitionReport, RecognitionError> {
    prechecks(g, r, q)?;
    let cycles = r_cycles(g, r as usize);
    let mut report = RecognitionReport {
        verdict: Verdict::Rejected,
        r,
        q,
        condition: None,
        witness: None,
        platonic: false,
        platonic_realization_count: None,
        platonic_violations: Vec::new(),
        r_cycles: cycles.len(),
        stats: None,
        realization_pmap: None,
        realization: None,
    };
    if let Some(closed) = platonic_match(g, r, q) {
        report.platonic = true;
        report.platonic_realization_count = Some(closed.face_count());
        report.platonic_violations = check_conditions(g, &cycles, q, false, false).into_iter().map(|f| f.0).collect();
        let poly = Polycycle::new(r, q, closed).map_err(|e| RecognitionError::Realization(e.to_string()))?;
        return Ok(accept(report, poly));
    }
    if let Some((c, w)) = check_conditions(g, &cycles, q, true, false).into_iter().next() {
        report.condition = Some(c);
        report.witness = Some(w);
        return Ok(report);
    }
    let poly = orient_and_build(g, &cycles, r, q, 0)?;
    Ok(accept(report, poly))
}

fn accept(mut report: RecognitionReport, poly: Polycycle) -> RecognitionReport {
    report.verdict = Verdict::Accepted;
    report.stats = Some(poly.stats());
    report.realization_pmap = Some(pmap::emit(poly.r, poly.q, poly.map()));
    report.realization = Some(poly);
    report
}

/// Orients the r-cycles coherently starting from cycle `seed` and glues
/// them into a disc.
fn orient_and_build(g: &Graph, cycles: &[Vec<u32>], r: u32, q: u32, seed: usize) -> Result<Polycycle, RecognitionError> {
    let ec = edge_cycles(g, cycles);
    let mut oriented: Vec<Option<Vec<u32>>> = vec![None; cycles.len()];
    let has_dart = |c: &[u32], a: u32, b: u32| (0..c.len()).any(|i| c[i] == a && c[(i + 1) % c.len()] == b);
    let seed = seed % cycles.len().max(1);
    oriented[seed] = Some(cycles[seed].clone());
    let mut queue = VecDeque::from([seed]);
    while let Some(i) = queue.pop_front() {
        let c = oriented[i].clone().unwrap();
        for k in 0..c.len() {
            let (a, b) = (c[k], c[(k + 1) % c.len()]);
            for &j in &ec[&key(a, b)] {
                if j == i {
                    continue;
                }
                let mut d = cycles[j].clone();
                if !has_dart(&d, b, a) {
                    d.reverse();
                }
                match &oriented[j] {
                    Some(prev) if prev != &d => {
                        return Err(RecognitionError::Realization("r-cycles cannot be oriented coherently".into()))
                    }
                    Some(_) => {}
                    None => {
                        oriented[j] = Some(d);
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let faces: Vec<Vec<u32>> = oriented
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| RecognitionError::Realization("r-cycles are not face-connected".into()))?;
    Polycycle::from_faces(r, q, g.n(), &faces).map_err(|e| RecognitionError::Realization(e.to_string()))
}

/// Realization of an accepted graph.
pub fn realize(g: &Graph, r: u32, q: u32) -> Result<Polycycle, RecognitionError> {
    let rep = recognize(g, r, q)?;
    match rep.realization {
        Some(p) => Ok(p),
        None => Err(RecognitionError::Rejected(rep.condition.unwrap_or(Condition::I))),
    }
}

/// Realization built from a chosen seed cycle (non-Platonic inputs), or
/// with a chosen exterior face (Platonic inputs).
pub fn realize_with_seed(g: &Graph, r: u32, q: u32, seed: usize) -> Result<Polycycle, RecognitionError> {
    prechecks(g, r, q)?;
    if let Some(closed) = platonic_match(g, r, q) {
        let f = seed % closed.face_count();
        let c = closed.face(f as u32);
        let m = PlaneMap::from_rotation(closed.rotations().to_vec(), Some(Dart(c[0], c[1])))
            .map_err(|e| RecognitionError::Realization(e.to_string()))?;
        return Polycycle::new(r, q, m).map_err(|e| RecognitionError::Realization(e.to_string()));
    }
    let cycles = r_cycles(g, r as usize);
    if let Some((c, _)) = check_conditions(g, &cycles, q, true, false).into_iter().next() {
        return Err(RecognitionError::Rejected(c));
    }
    orient_and_build(g, &cycles, r, q, seed)
}

/// Second recognizer for q = 3: conditions (i)-(iv) with (iii) allowing
/// only edge or empty intersections, and no condition (v).
pub fn accepts_cubic_variant(g: &Graph, r: u32) -> bool {
    if prechecks(g, r, 3).is_err() {
        return false;
    }
    if platonic_match(g, r, 3).is_some() {
        return true;
    }
    let cycles = r_cycles(g, r as usize);
    check_conditions(g, &cycles, 3, true, true).is_empty()
}
