//! Isomorph-free generation of finite (r,q)-polycycles by attaching one
//! r-gon at a time along a boundary path.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::homomorphism;
use crate::map::{CanonicalForm, PlaneMap};
use crate::polycycle::Polycycle;

/// Default node budget when `POLYCYCLE_BUDGET` is unset.
pub const DEFAULT_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(usize),
    #[error("r and q must be at least 3")]
    Parameters,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Proper,
    Helicene,
    Outerplanar,
}

impl std::str::FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Filter::All),
            "proper" => Ok(Filter::Proper),
            "helicene" => Ok(Filter::Helicene),
            "outerplanar" => Ok(Filter::Outerplanar),
            _ => Err(format!("unknown filter `{s}`")),
        }
    }
}

/// A boundary path `b[start], ..., b[start + k]` along which a new face
/// can be attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub start: usize,
    pub k: usize,
}

/// One isomorphism class (mirror images identified).
#[derive(Clone, Debug)]
pub struct Class {
    pub poly: Polycycle,
    /// Reflection-invariant code.
    pub code: CanonicalForm,
    pub chiral: bool,
    pub proper: bool,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub r: u32,
    pub q: u32,
    pub filter: Filter,
    /// `levels[p - 1]` holds the classes with p faces that pass the filter.
    pub levels: Vec<Vec<Class>>,
    /// Number of polycycles built, including duplicates.
    pub nodes: usize,
}

impl Census {
    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Counts with mirror images kept apart.
    pub fn oriented_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len() + l.iter().filter(|c| c.chiral).count()).collect()
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn classes(&self) -> impl Iterator<Item = &Class> {
        self.levels.iter().flatten()
    }
}

/// Budget from `POLYCYCLE_BUDGET`, or the default.
pub fn budget_from_env() -> usize {
    std::env::var("POLYCYCLE_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

fn limited_distance(map: &PlaneMap, from: u32, to: u32, limit: usize) -> usize {
    if from == to {
        return 0;
    }
    let mut dist = vec![usize::MAX; map.n()];
    let mut frontier = vec![from];
    dist[from as usize] = 0;
    for d in 1..=limit {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in map.rotation(u) {
                if dist[w as usize] == usize::MAX {
                    if w == to {
                        return d;
                    }
                    dist[w as usize] = d;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    usize::MAX
}

/// All valid single-face attachments.
pub fn attachments(poly: &Polycycle) -> Vec<Attachment> {
    let (r, q) = (poly.r as usize, poly.q as usize);
    let m = poly.map();
    let b = m.boundary();
    let len = b.len();
    let vf = m.vertex_faces();
    let mut out = Vec::new();
    for s in 0..len {
        for k in 1..=(r - 1).min(len - 1) {
            let path: Vec<u32> = (0..=k).map(|i| b[(s + i) % len]).collect();
            let (x, y) = (path[0], path[k]);
            if path[1..k].iter().any(|&v| m.degree(v) != q) {
                // later k only add more inner vertices
                break;
            }
            if m.degree(x) + 1 > q || m.degree(y) + 1 > q {
                continue;
            }
            if k == r - 1 && m.has_edge(x, y) {
                continue;
            }
            if limited_distance(m, x, y, k) != k {
                continue;
            }
            let mut faces_hit: HashMap<u32, Vec<usize>> = HashMap::new();
            for (i, &v) in path.iter().enumerate() {
                for &f in &vf[v as usize] {
                    faces_hit.entry(f).or_default().push(i);
                }
            }
            let cell_ok = faces_hit.values().all(|pos| match pos.len() {
                1 => true,
                2 => pos[1] == pos[0] + 1,
                _ => false,
            });
            if !cell_ok {
                continue;
            }
            out.push(Attachment { start: s, k });
        }
    }
    out
}

/// Builds the polycycle obtained by attaching a face.
pub fn attach(poly: &Polycycle, a: Attachment) -> Option<Polycycle> {
    let r = poly.r as usize;
    let m = poly.map();
    let b = m.boundary();
    let len = b.len();
    let n = m.n();
    let mut face: Vec<u32> = (0..=a.k).map(|i| b[(a.start + i) % len]).collect();
    let extra = r - a.k - 1;
    face.extend((0..extra).map(|i| (n + i) as u32));
    let mut faces = m.interior_face_cycles();
    faces.push(face);
    let map = PlaneMap::from_faces(n + extra, &faces).ok()?;
    Some(Polycycle::new_unchecked_girth(poly.r, poly.q, map))
}

pub fn children(poly: &Polycycle) -> Vec<Polycycle> {
    attachments(poly).into_iter().filter_map(|a| attach(poly, a)).collect()
}

/// Canonical representative: the orientation with the smaller code,
/// relabelled canonically.
pub fn canonical_class(poly: &Polycycle) -> (Polycycle, CanonicalForm, bool) {
    let mirror = poly.mirror();
    let c1 = poly.map().canonical_code(false);
    let c2 = mirror.map().canonical_code(false);
    let chiral = c1 != c2;
    let (rep, code) = if c2 < c1 { (mirror, c2) } else { (poly.clone(), c1) };
    let map = rep.map().relabel(&rep.map().canonical_labeling());
    (Polycycle::new_unchecked_girth(poly.r, poly.q, map), code, chiral)
}

fn passes(filter: Filter, c: &Class) -> bool {
    match filter {
        Filter::All => true,
        Filter::Proper => c.proper,
        Filter::Helicene => !c.proper,
        Filter::Outerplanar => c.poly.is_outerplanar(),
    }
}

fn prunes(filter: Filter) -> bool {
    matches!(filter, Filter::Proper | Filter::Outerplanar)
}

fn make_class(poly: &Polycycle) -> Class {
    let (poly, code, chiral) = canonical_class(poly);
    let proper = homomorphism::is_proper(&poly);
    Class { poly, code, chiral, proper }
}

/// All classes with at most `max_faces` faces passing `filter`.
pub fn enumerate(r: u32, q: u32, max_faces: usize, filter: Filter, budget: usize) -> Result<Census, EnumError> {
    let keep = |_: usize, c: &Class| !prunes(filter) || passes(filter, c);
    let mut census = enumerate_pruned(r, q, max_faces, budget, &keep)?;
    census.filter = filter;
    for level in &mut census.levels {
        level.retain(|c| passes(filter, c));
    }
    Ok(census)
}

/// Level-by-level growth where a class at level `p` is expanded further only
/// if `keep(p, class)` holds. Rejected classes are not reported.
pub fn enumerate_pruned(
    r: u32,
    q: u32,
    max_faces: usize,
    budget: usize,
    keep: &(dyn Fn(usize, &Class) -> bool + Sync),
) -> Result<Census, EnumError> {
    if r < 3 || q < 3 {
        return Err(EnumError::Parameters);
    }
    let seed = Polycycle::from_faces(r, q, r as usize, &[(0..r).collect()]).expect("r-gon");
    let mut frontier = vec![make_class(&seed)];
    let mut levels = Vec::new();
    let mut nodes = 1usize;
    for p in 1..=max_faces {
        if p > 1 {
            let kids: Vec<Polycycle> = frontier.par_iter().flat_map_iter(|c| children(&c.poly)).collect();
            nodes += kids.len();
            if nodes > budget {
                return Err(EnumError::BudgetExceeded(budget));
            }
            let mut seen: HashMap<CanonicalForm, Polycycle> = HashMap::new();
            let keyed: Vec<(CanonicalForm, Polycycle)> =
                kids.par_iter().map(|k| (k.map().canonical_code(true), k.clone())).collect();
            for (code, k) in keyed {
                seen.entry(code).or_insert(k);
            }
            let mut next: Vec<Class> = seen.into_values().collect::<Vec<_>>().par_iter().map(make_class).collect();
            next.retain(|c| keep(p, c));
            next.sort_by(|a, b| a.code.cmp(&b.code));
            frontier = next;
        }
        if p == 1 {
            frontier.retain(|c| keep(1, c));
        }
        levels.push(frontier.clone());
        if frontier.is_empty() {
            break;
        }
    }
    while levels.len() < max_faces {
        levels.push(Vec::new());
    }
    Ok(Census { r, q, filter: Filter::All, levels, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_pairs() {
        let c = enumerate(5, 3, 2, Filter::All, 1000).unwrap();
        assert_eq!(c.counts(), vec![1, 1]);
        let c = enumerate(3, 3, 4, Filter::All, 1000).unwrap();
        assert_eq!(c.counts(), vec![1, 1, 1, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(enumerate(4, 4, 8, Filter::All, 10).unwrap_err(), EnumError::BudgetExceeded(10));
    }
}
