//! Scale-λ isometric hypercube embeddings of polycycles.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::map::Dart;
use crate::pmap;
use crate::polycycle::Polycycle;
use crate::subgraph::{find_embedding, Mode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("screen defined for ({expected_r},{expected_q}) only")]
    WrongPair { expected_r: u32, expected_q: u32 },
}

/// All-pairs shortest path distances.
#[derive(Clone, Debug, Serialize)]
pub struct MetricTable(pub Vec<Vec<u32>>);

impl MetricTable {
    pub fn of(g: &Graph) -> Self {
        MetricTable(g.distances())
    }

    pub fn is_metric(&self) -> bool {
        let d = &self.0;
        let n = d.len();
        (0..n).all(|i| d[i][i] == 0 && (0..n).all(|j| d[i][j] == d[j][i]))
            && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| d[i][j] as u64 <= d[i][k] as u64 + d[k][j] as u64)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Zone {
    /// Crossed edges in order.
    pub edges: Vec<(u32, u32)>,
    pub closed: bool,
}

fn edge_key(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

/// Position of edge `a -> b` in the face to its left.
fn edge_index(poly: &Polycycle, f: u32, a: u32, b: u32) -> usize {
    let c = poly.map().face(f);
    (0..c.len()).find(|&i| c[i] == a && c[(i + 1) % c.len()] == b).expect("edge on face")
}

/// Trains of opposite edges. For odd r the exit edge alternates between the
/// two edges farthest from the entry, so every edge lies on two zones.
pub fn zones(poly: &Polycycle) -> Vec<Zone> {
    let m = poly.map();
    let r = poly.r as usize;
    let turns: &[usize] = if r % 2 == 0 { &[0] } else { &[0, 1] };
    let step = |f: u32, i: usize, t: usize| -> (usize, Option<(u32, usize)>) {
        let c = m.face(f);
        let j = (i + r / 2 + if r % 2 == 0 { 0 } else { t }) % r;
        let (a, b) = (c[j], c[(j + 1) % r]);
        let g = m.face_of(Dart(b, a));
        if g == m.exterior() {
            (j, None)
        } else {
            (j, Some((g, edge_index(poly, g, b, a))))
        }
    };
    let flip = |t: usize| if r % 2 == 0 { 0 } else { 1 - t };
    let mut seen: HashSet<(u32, usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    let trace = |f0: u32, i0: usize, t0: usize, seen: &mut HashSet<(u32, usize, usize)>| -> Zone {
        let c0 = m.face(f0);
        let mut edges = vec![edge_key(c0[i0], c0[(i0 + 1) % r])];
        let (mut f, mut i, mut t) = (f0, i0, t0);
        loop {
            seen.insert((f, i, t));
            let (j, next) = step(f, i, t);
            seen.insert((f, j, flip(t)));
            let c = m.face(f);
            match next {
                None => {
                    edges.push(edge_key(c[j], c[(j + 1) % r]));
                    return Zone { edges, closed: false };
                }
                Some((g, k)) => {
                    let nt = flip(t);
                    if (g, k, nt) == (f0, i0, t0) {
                        return Zone { edges, closed: true };
                    }
                    edges.push(edge_key(c[j], c[(j + 1) % r]));
                    (f, i, t) = (g, k, nt);
                }
            }
        }
    };
    for d in m.exterior_darts() {
        let f = m.face_of(d.rev());
        let i = edge_index(poly, f, d.1, d.0);
        for &t in turns {
            if !seen.contains(&(f, i, t)) {
                out.push(trace(f, i, t, &mut seen));
            }
        }
    }
    for f in m.interior_faces() {
        for i in 0..r {
            for &t in turns {
                if !seen.contains(&(f, i, t)) {
                    out.push(trace(f, i, t, &mut seen));
                }
            }
        }
    }
    out
}

pub fn closed_zone_count(poly: &Polycycle) -> usize {
    zones(poly).iter().filter(|z| z.closed).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingCertificate {
    pub scale: u32,
    pub dimension: usize,
    /// Binary strings, one per vertex.
    pub labels: Vec<String>,
    pub zones_closed: usize,
    pub perimeter: usize,
    /// Whether the coordinates come directly from the zones.
    pub from_zones: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    /// A pair whose scaled distance the zone coordinates get wrong.
    pub pair: Option<(u32, u32)>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum EmbedResult {
    Embeddable(EmbeddingCertificate),
    NotEmbeddable(Obstruction),
}

impl EmbedResult {
    pub fn is_embeddable(&self) -> bool {
        matches!(self, EmbedResult::Embeddable(_))
    }

    pub fn certificate(&self) -> Option<&EmbeddingCertificate> {
        match self {
            EmbedResult::Embeddable(c) => Some(c),
            EmbedResult::NotEmbeddable(_) => None,
        }
    }
}

pub fn scale_for(r: u32) -> u32 {
    if r % 2 == 0 {
        1
    } else {
        2
    }
}

/// Sides of a zone: the two components left after deleting its edges.
fn zone_cut(g: &Graph, z: &Zone) -> Option<Vec<bool>> {
    let cut: HashSet<(u32, u32)> = z.edges.iter().copied().collect();
    if cut.len() != z.edges.len() {
        return None;
    }
    let rest: Vec<(u32, u32)> = g.edges().into_iter().filter(|&(a, b)| !cut.contains(&edge_key(a, b))).collect();
    let h = Graph::from_edges(g.n(), &rest);
    let d = h.bfs(0);
    let side: Vec<bool> = d.iter().map(|&x| x == u32::MAX).collect();
    let other = side.iter().position(|&s| s)?;
    if h.bfs(other as u32).iter().zip(&side).any(|(&x, &s)| s != (x != u32::MAX)) {
        return None;
    }
    z.edges.iter().all(|&(a, b)| side[a as usize] != side[b as usize]).then_some(side)
}

fn first_violation(dist: &[Vec<u32>], cuts: &[Vec<bool>], scale: u32) -> Option<(u32, u32)> {
    let n = dist.len();
    for u in 0..n {
        for v in u + 1..n {
            let h = cuts.iter().filter(|c| c[u] != c[v]).count() as u32;
            if h != scale * dist[u][v] {
                return Some((u as u32, v as u32));
            }
        }
    }
    None
}

fn labels(n: usize, cuts: &[Vec<bool>]) -> Vec<String> {
    (0..n).map(|v| cuts.iter().map(|c| if c[v] { '1' } else { '0' }).collect()).collect()
}

/// Largest vertex count handled by the exact cut search.
pub const EXACT_LIMIT: usize = 128;
const EXACT_NODE_LIMIT: usize = 2_000_000;

type Set = u128;

struct Convex {
    n: usize,
    interval: Vec<Vec<Set>>,
}

impl Convex {
    fn new(dist: &[Vec<u32>]) -> Self {
        let n = dist.len();
        let interval = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        (0..n).filter(|&w| dist[x][w] + dist[w][y] == dist[x][y]).fold(0 as Set, |s, w| s | 1 << w)
                    })
                    .collect()
            })
            .collect();
        Convex { n, interval }
    }

    fn closure(&self, mut s: Set) -> Set {
        loop {
            let mut t = s;
            for x in 0..self.n {
                if s >> x & 1 == 0 {
                    continue;
                }
                for y in x + 1..self.n {
                    if s >> y & 1 == 1 {
                        t |= self.interval[x][y];
                    }
                }
            }
            if t == s {
                return s;
            }
            s = t;
        }
    }
}

/// Convex cuts `S | V-S` separating `u` from `v`, as the side containing `u`.
fn convex_cuts(cx: &Convex, dist: &[Vec<u32>], u: usize, v: usize) -> Vec<Set> {
    let n = cx.n;
    let all: Set = if n == 128 { !0 } else { (1 << n) - 1 };
    let mut s0: Set = 0;
    let mut t0: Set = 0;
    let mut ties = Vec::new();
    for w in 0..n {
        match dist[w][u].cmp(&dist[w][v]) {
            std::cmp::Ordering::Less => s0 |= 1 << w,
            std::cmp::Ordering::Greater => t0 |= 1 << w,
            std::cmp::Ordering::Equal => ties.push(w),
        }
    }
    let mut out = Vec::new();
    fn go(cx: &Convex, all: Set, s: Set, t: Set, ties: &[usize], out: &mut Vec<Set>) {
        let s = cx.closure(s);
        let t = cx.closure(t);
        if s & t != 0 {
            return;
        }
        match ties.iter().find(|&&w| (s | t) >> w & 1 == 0) {
            None => {
                if s | t == all {
                    out.push(s);
                }
            }
            Some(&w) => {
                go(cx, all, s | 1 << w, t, ties, out);
                go(cx, all, s, t | 1 << w, ties, out);
            }
        }
    }
    go(cx, all, s0, t0, &ties, &mut out);
    out
}

/// Exact search: every edge must be crossed by exactly `scale` convex cuts.
/// Returns `None` when the search budget runs out.
fn exact_cuts(g: &Graph, dist: &[Vec<u32>], scale: u32) -> Option<Option<Vec<Set>>> {
    let n = g.n();
    let cx = Convex::new(dist);
    let edges = g.edges();
    let mut cuts: Vec<Set> = Vec::new();
    let mut index: HashMap<Set, usize> = HashMap::new();
    for &(a, b) in &edges {
        for s in convex_cuts(&cx, dist, a as usize, b as usize) {
            let key = if s & 1 == 1 { s } else { !s & if n == 128 { !0 } else { (1 << n) - 1 } };
            index.entry(key).or_insert_with(|| {
                cuts.push(key);
                cuts.len() - 1
            });
        }
    }
    let crosses: Vec<Vec<usize>> = cuts
        .iter()
        .map(|&s| (0..edges.len()).filter(|&e| (s >> edges[e].0 & 1) != (s >> edges[e].1 & 1)).collect())
        .collect();
    let mut need = vec![scale; edges.len()];
    let mut chosen = Vec::new();
    let mut nodes = 0usize;
    fn go(
        crosses: &[Vec<usize>],
        need: &mut [u32],
        chosen: &mut Vec<usize>,
        nodes: &mut usize,
    ) -> Option<bool> {
        *nodes += 1;
        if *nodes > EXACT_NODE_LIMIT {
            return None;
        }
        let feasible = |c: usize, need: &[u32]| crosses[c].iter().all(|&e| need[e] > 0);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in 0..need.len() {
            if need[e] == 0 {
                continue;
            }
            let opts: Vec<usize> =
                (0..crosses.len()).filter(|&c| crosses[c].contains(&e) && feasible(c, need)).collect();
            if best.as_ref().is_none_or(|b| opts.len() < b.1.len()) {
                best = Some((e, opts));
            }
        }
        let Some((_, opts)) = best else { return Some(true) };
        for c in opts {
            for &e in &crosses[c] {
                need[e] -= 1;
            }
            chosen.push(c);
            match go(crosses, need, chosen, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
            for &e in &crosses[c] {
                need[e] += 1;
            }
        }
        Some(false)
    }
    let found = go(&crosses, &mut need, &mut chosen, &mut nodes)?;
    Some(found.then(|| chosen.iter().map(|&c| cuts[c]).collect()))
}

/// Embeds at the scale forced by the parity of r: coordinates from the
/// zones when they work, otherwise from an exact search over convex cuts.
pub fn embed(poly: &Polycycle) -> EmbedResult {
    let g = poly.map().to_graph();
    let n = g.n();
    let dist = g.distances();
    let scale = scale_for(poly.r);
    let zs = zones(poly);
    let k = zs.iter().filter(|z| z.closed).count();
    let d = poly.perimeter();
    let zone_cuts: Option<Vec<Vec<bool>>> = zs.iter().map(|z| zone_cut(&g, z)).collect();
    let mut pair = None;
    if let Some(cuts) = &zone_cuts {
        match first_violation(&dist, cuts, scale) {
            None => {
                return EmbedResult::Embeddable(EmbeddingCertificate {
                    scale,
                    dimension: cuts.len(),
                    labels: labels(n, cuts),
                    zones_closed: k,
                    perimeter: d,
                    from_zones: true,
                })
            }
            Some(p) => pair = Some(p),
        }
    }
    if n > EXACT_LIMIT {
        return EmbedResult::NotEmbeddable(Obstruction { pair, detail: "zone coordinates fail; too large for exact search".into() });
    }
    match exact_cuts(&g, &dist, scale) {
        Some(Some(sets)) => {
            let cuts: Vec<Vec<bool>> = sets.iter().map(|&s| (0..n).map(|v| s >> v & 1 == 1).collect()).collect();
            debug_assert!(first_violation(&dist, &cuts, scale).is_none());
            EmbedResult::Embeddable(EmbeddingCertificate {
                scale,
                dimension: cuts.len(),
                labels: labels(n, &cuts),
                zones_closed: k,
                perimeter: d,
                from_zones: false,
            })
        }
        Some(None) => EmbedResult::NotEmbeddable(Obstruction {
            pair,
            detail: format!("no family of convex cuts crosses every edge exactly {scale} times"),
        }),
        None => EmbedResult::NotEmbeddable(Obstruction { pair, detail: "exact search budget exhausted".into() }),
    }
}

/// Hamming distances equal scaled graph distances.
pub fn verify_certificate(poly: &Polycycle, cert: &EmbeddingCertificate) -> bool {
    let dist = poly.map().to_graph().distances();
    let l: Vec<&[u8]> = cert.labels.iter().map(|s| s.as_bytes()).collect();
    (0..l.len()).all(|u| {
        (0..l.len()).all(|v| {
            l[u].iter().zip(l[v]).filter(|(a, b)| a != b).count() as u32 == cert.scale * dist[u][v]
        })
    })
}

pub fn dimension_bound_check(cert: &EmbeddingCertificate) -> bool {
    let bound = if cert.scale == 1 { cert.perimeter / 2 + cert.zones_closed } else { cert.perimeter + cert.zones_closed };
    cert.dimension <= bound
}

const FORBIDDEN_53: [&str; 2] = [
    include_str!("../fixtures/forbidden-53-a.pmap"),
    include_str!("../fixtures/forbidden-53-b.pmap"),
];
const FORBIDDEN_35: [&str; 2] = [
    include_str!("../fixtures/forbidden-35-a.pmap"),
    include_str!("../fixtures/forbidden-35-b.pmap"),
];

fn fixtures(texts: &[&str]) -> Vec<Polycycle> {
    texts
        .iter()
        .map(|t| {
            let p = pmap::parse(t).expect("fixture parses");
            Polycycle::new(p.r, p.q, p.map).expect("fixture is a polycycle")
        })
        .collect()
}

/// The two proper (5,3)-polycycles with six faces that are not embeddable.
pub fn forbidden_53() -> Vec<Polycycle> {
    fixtures(&FORBIDDEN_53)
}

/// The two proper ten-vertex (3,5)-polycycles that are not embeddable.
pub fn forbidden_35() -> Vec<Polycycle> {
    fixtures(&FORBIDDEN_35)
}

fn screen(poly: &Polycycle, forbidden: &[Polycycle]) -> bool {
    let g = poly.map().to_graph();
    forbidden.iter().all(|f| find_embedding(&f.map().to_graph(), &g, Mode::Induced).is_none())
}

/// True when the polycycle has neither forbidden (5,3) polycycle as an
/// induced subgraph.
pub fn forbidden_screen_53(poly: &Polycycle) -> Result<bool, EmbedError> {
    if (poly.r, poly.q) != (5, 3) {
        return Err(EmbedError::WrongPair { expected_r: 5, expected_q: 3 });
    }
    Ok(screen(poly, &forbidden_53()))
}

/// The (3,5) analogue. Only a conjectured characterisation.
pub fn forbidden_screen_35(poly: &Polycycle) -> Result<bool, EmbedError> {
    if (poly.r, poly.q) != (3, 5) {
        return Err(EmbedError::WrongPair { expected_r: 3, expected_q: 5 });
    }
    Ok(screen(poly, &forbidden_35()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn square_and_pentagon() {
        let sq = catalog::polygon(4, 4);
        let z = zones(&sq);
        assert_eq!((z.len(), closed_zone_count(&sq)), (2, 0));
        let c = embed(&sq).certificate().cloned().unwrap();
        assert_eq!((c.scale, c.dimension), (1, 2));
        let c = embed(&catalog::polygon(5, 3)).certificate().cloned().unwrap();
        assert_eq!((c.scale, c.dimension, c.perimeter), (2, 5, 5));
        assert!(verify_certificate(&catalog::polygon(5, 3), &c));
    }

    #[test]
    fn fixtures_load() {
        assert_eq!(forbidden_53().iter().map(|p| p.p_r()).collect::<Vec<_>>(), [6, 6]);
        assert!(forbidden_35().iter().all(|p| p.map().n() == 10));
        for f in forbidden_53() {
            assert!(!embed(&f).is_embeddable());
            assert!(!forbidden_screen_53(&f).unwrap());
        }
        assert!(forbidden_screen_53(&catalog::polygon(3, 5)).is_err());
    }

    #[test]
    fn metric_table() {
        assert!(MetricTable::of(&catalog::platonic_graph(5, 3)).is_metric());
    }
}
