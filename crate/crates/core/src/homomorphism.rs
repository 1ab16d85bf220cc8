//! The cell-homomorphism of a polycycle into its tessellation (r^q),
//! obtained by propagating a single flag assignment.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::map::{Dart, Flag, FlagMove, PlaneMap};
use crate::polycycle::{Polycycle, PolycycleError};
use crate::tessellation::{geometry_class, Geometry, TessellationError, TessellationPatch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("flag propagation is inconsistent at {0}")]
    Incidence(String),
    #[error("(3,3) admits no helicene")]
    NoHelicene,
    #[error("polycycle has interior vertices")]
    NotOuterplanar,
    #[error("polycycle is not proper")]
    NotProper,
    #[error("({0},{1}) is not a spheric pair")]
    NotSpheric(u32, u32),
    #[error(transparent)]
    Tessellation(#[from] TessellationError),
    #[error(transparent)]
    Polycycle(#[from] PolycycleError),
}

#[derive(Clone, Debug, Serialize)]
pub struct CellHomomorphism {
    pub r: u32,
    pub q: u32,
    pub base_flag: Flag,
    pub base_image: Flag,
    /// Image vertex in the target patch, per polycycle vertex.
    pub vertex_image: Vec<u32>,
    /// Image edge per polycycle edge `(u, v)`, `u < v`, in sorted order.
    pub edge_image: Vec<((u32, u32), (u32, u32))>,
    /// Image face (patch face id) per interior face of the polycycle.
    pub face_image: BTreeMap<u32, u32>,
    pub vertex_injective: bool,
    pub edge_injective: bool,
    pub face_injective: bool,
    pub max_vertex_degree_of_map: usize,
    pub max_edge_degree: usize,
    pub max_face_degree: usize,
    /// Fiber size -> number of image cells with that fiber size.
    pub vertex_fibers: BTreeMap<usize, usize>,
    pub edge_fibers: BTreeMap<usize, usize>,
    pub face_fibers: BTreeMap<usize, usize>,
    #[serde(skip)]
    pub patch: TessellationPatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Proper,
    Helicene { vertex_overlap_only: bool },
}

impl CellHomomorphism {
    pub fn classify(&self) -> Classification {
        if self.vertex_injective && self.edge_injective && self.face_injective {
            Classification::Proper
        } else {
            Classification::Helicene { vertex_overlap_only: self.edge_injective && !self.vertex_injective }
        }
    }

    pub fn is_proper(&self) -> bool {
        self.classify() == Classification::Proper
    }

    /// Image faces as vertex cycles of the target patch.
    pub fn image_faces(&self) -> Vec<Vec<u32>> {
        let m = self.patch.map();
        self.face_image.values().map(|&f| m.face(f).to_vec()).collect()
    }
}

fn patch_cache() -> &'static Mutex<HashMap<(u32, u32), TessellationPatch>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), TessellationPatch>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A fresh target patch for (r^q); closed for spheric pairs.
fn target_patch(r: u32, q: u32) -> Result<TessellationPatch, HomError> {
    if let Some(p) = patch_cache().lock().unwrap().get(&(r, q)) {
        return Ok(p.clone());
    }
    let p = match geometry_class(r, q) {
        Geometry::Spheric => TessellationPatch::platonic(r, q).expect("spheric pair closes"),
        _ => TessellationPatch::new(r, q)?,
    };
    Ok(p)
}

fn store_patch(p: &TessellationPatch) {
    let mut cache = patch_cache().lock().unwrap();
    let keep = cache.get(&(p.r, p.q)).is_some_and(|old| old.coronas() >= p.coronas());
    // Hyperbolic patches grow exponentially; only cache modest ones.
    if !keep && p.map().n() <= 20_000 {
        cache.insert((p.r, p.q), p.clone());
    }
}

fn flag_index(map: &PlaneMap, f: Flag) -> usize {
    map.dart_index(f.dart).unwrap() * 2 + f.left as usize
}

fn histogram<K: Ord + Clone>(images: impl Iterator<Item = K>) -> (BTreeMap<usize, usize>, usize, bool) {
    let mut count: BTreeMap<K, usize> = BTreeMap::new();
    for k in images {
        *count.entry(k).or_default() += 1;
    }
    let mut hist = BTreeMap::new();
    for &c in count.values() {
        *hist.entry(c).or_default() += 1;
    }
    let max = count.values().copied().max().unwrap_or(0);
    (hist, max, max <= 1)
}

/// Default base flag: first dart of a central interior face (least
/// eccentricity in the face adjacency graph), face on the left.
pub fn default_base_flag(poly: &Polycycle) -> Flag {
    let m = poly.map();
    let faces: Vec<u32> = m.interior_faces().collect();
    let index: HashMap<u32, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut edges = Vec::new();
    for d in m.darts() {
        if let (Some(&a), Some(&b)) = (index.get(&m.face_of(d)), index.get(&m.face_of(d.rev()))) {
            if a < b {
                edges.push((a as u32, b as u32));
            }
        }
    }
    let g = crate::graph::Graph::from_edges(faces.len(), &edges);
    let ecc = |i: usize| g.bfs(i as u32).into_iter().max().unwrap_or(0);
    let f = faces[(0..faces.len()).min_by_key(|&i| ecc(i)).unwrap()];
    let c = m.face(f);
    Flag { dart: Dart(c[0], c[1]), left: true }
}

/// Projects `poly` into (r^q).
pub fn project(poly: &Polycycle) -> Result<CellHomomorphism, HomError> {
    project_into(poly, poly.q, default_base_flag(poly))
}

/// Projects `poly` into (r^target_q) from `base`; requires every vertex
/// degree of `poly` to fit, and interior vertices to have degree
/// `target_q`.
pub fn project_into(poly: &Polycycle, target_q: u32, base: Flag) -> Result<CellHomomorphism, HomError> {
    let r = poly.r;
    let m = poly.map();
    let ext = m.exterior();
    let mut patch = target_patch(r, target_q)?;
    let base_image = patch.base_flag();
    let mut image: Vec<Option<Flag>> = vec![None; m.edge_count() * 4];
    image[flag_index(m, base)] = Some(base_image);
    let mut queue = VecDeque::from([base]);
    while let Some(f) = queue.pop_front() {
        let g = image[flag_index(m, f)].unwrap();
        for mv in [FlagMove::Vertex, FlagMove::Edge, FlagMove::Face] {
            let f2 = m.flag_move(f, mv);
            if m.flag_face(f2) == ext {
                continue;
            }
            let g2 = patch.navigate(g, mv)?;
            let slot = &mut image[flag_index(m, f2)];
            match slot {
                Some(prev) if *prev != g2 => {
                    return Err(HomError::Incidence(format!("flag {:?}", f2)));
                }
                Some(_) => {}
                None => {
                    *slot = Some(g2);
                    queue.push_back(f2);
                }
            }
        }
    }
    store_patch(&patch);
    let pm = patch.map();
    let mut vimg = vec![u32::MAX; m.n()];
    let mut eimg: BTreeMap<(u32, u32), (u32, u32)> = BTreeMap::new();
    let mut fimg: BTreeMap<u32, u32> = BTreeMap::new();
    let key = |d: Dart| (d.0.min(d.1), d.0.max(d.1));
    for f in m.interior_flags() {
        let g = image[flag_index(m, f)]
            .ok_or_else(|| HomError::Incidence(format!("flag {:?} unreached", f)))?;
        let slot = &mut vimg[f.dart.0 as usize];
        if *slot != u32::MAX && *slot != g.dart.0 {
            return Err(HomError::Incidence(format!("vertex {}", f.dart.0)));
        }
        *slot = g.dart.0;
        let e = eimg.entry(key(f.dart)).or_insert(key(g.dart));
        if *e != key(g.dart) {
            return Err(HomError::Incidence(format!("edge {:?}", f.dart)));
        }
        let pf = m.flag_face(f);
        let gf = pm.flag_face(g);
        let e = fimg.entry(pf).or_insert(gf);
        if *e != gf {
            return Err(HomError::Incidence(format!("face {pf}")));
        }
    }
    // local homeomorphism at interior vertices
    let bnd = m.boundary_mask();
    let vf = m.vertex_faces();
    for v in 0..m.n() {
        if !bnd[v] {
            let mut imgs: Vec<u32> = vf[v].iter().map(|f| fimg[f]).collect();
            imgs.sort_unstable();
            imgs.dedup();
            if imgs.len() != target_q as usize {
                return Err(HomError::Incidence(format!("star of vertex {v}")));
            }
        }
    }
    let (vh, vmax, vinj) = histogram(vimg.iter().copied());
    let (eh, emax, einj) = histogram(eimg.values().copied());
    let (fh, fmax, finj) = histogram(fimg.values().copied());
    Ok(CellHomomorphism {
        r,
        q: target_q,
        base_flag: base,
        base_image,
        vertex_image: vimg,
        edge_image: eimg.into_iter().collect(),
        face_image: fimg,
        vertex_injective: vinj,
        edge_injective: einj,
        face_injective: finj,
        max_vertex_degree_of_map: vmax,
        max_edge_degree: emax,
        max_face_degree: fmax,
        vertex_fibers: vh,
        edge_fibers: eh,
        face_fibers: fh,
        patch,
    })
}

pub fn is_proper(poly: &Polycycle) -> bool {
    project(poly).map(|h| h.is_proper()).unwrap_or(false)
}

/// Smallest p_r for which an (r,q)-helicene can exist.
pub fn helicene_threshold(r: u32, q: u32) -> Result<u32, HomError> {
    if (r, q) == (3, 3) {
        return Err(HomError::NoHelicene);
    }
    Ok((q - 2) * (r - 1) + 1)
}

/// Curvature of the polycycle as an exact multiple of pi.
pub fn curvature(poly: &Polycycle) -> Ratio<i64> {
    let (r, q) = (poly.r as i64, poly.q as i64);
    Ratio::new(poly.n_int() as i64 * (2 * (r + q) - r * q), r)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionCheck {
    pub target_q: u32,
    pub proper: bool,
    /// Largest number of image faces at a boundary vertex.
    pub max_boundary_faces: usize,
    /// Boundary angle at most pi everywhere, i.e. at most target_q/2
    /// faces at each boundary image vertex.
    pub convex: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OuterplanarRecord {
    pub doubled: ProjectionCheck,
    /// Projection into (3^{q+2}) when r = 3.
    pub triangular: Option<ProjectionCheck>,
}

/// Projects an outerplanar polycycle into (r^target_q) and measures
/// properness and convexity of the image.
pub fn projection_check(poly: &Polycycle, target_q: u32) -> Result<ProjectionCheck, HomError> {
    let lifted = Polycycle::new(poly.r, target_q, poly.map().clone())?;
    let h = project_into(&lifted, target_q, default_base_flag(&lifted))?;
    let m = lifted.map();
    let vf = m.vertex_faces();
    let bnd = m.boundary_mask();
    // image faces incident with each image vertex of the boundary
    let mut at: HashMap<u32, Vec<u32>> = HashMap::new();
    for (v, fs) in vf.iter().enumerate() {
        let e = at.entry(h.vertex_image[v]).or_default();
        e.extend(fs.iter().map(|f| h.face_image[f]));
    }
    let mut max_boundary_faces = 0;
    for v in 0..m.n() {
        if bnd[v] {
            let mut fs = at[&h.vertex_image[v]].clone();
            fs.sort_unstable();
            fs.dedup();
            max_boundary_faces = max_boundary_faces.max(fs.len());
        }
    }
    Ok(ProjectionCheck {
        target_q,
        proper: h.is_proper(),
        max_boundary_faces,
        convex: 2 * max_boundary_faces <= target_q as usize,
    })
}

pub fn outerplanar_projection(poly: &Polycycle) -> Result<OuterplanarRecord, HomError> {
    if !poly.is_outerplanar() {
        return Err(HomError::NotOuterplanar);
    }
    let doubled = projection_check(poly, 2 * poly.q - 2)?;
    let triangular = if poly.r == 3 { Some(projection_check(poly, poly.q + 2)?) } else { None };
    Ok(OuterplanarRecord { doubled, triangular })
}

/// Complement of the image inside the closed spheric tessellation.
pub fn reciprocal(poly: &Polycycle) -> Result<Polycycle, HomError> {
    if geometry_class(poly.r, poly.q) != Geometry::Spheric {
        return Err(HomError::NotSpheric(poly.r, poly.q));
    }
    let h = project(poly)?;
    if !h.is_proper() {
        return Err(HomError::NotProper);
    }
    let used: std::collections::HashSet<u32> = h.face_image.values().copied().collect();
    let pm = h.patch.map();
    let rest: Vec<Vec<u32>> = (0..pm.face_count() as u32)
        .filter(|f| !used.contains(f))
        .map(|f| pm.face(f).to_vec())
        .collect();
    let mut ids: HashMap<u32, u32> = HashMap::new();
    let faces: Vec<Vec<u32>> = rest
        .iter()
        .map(|c| {
            c.iter()
                .map(|&v| {
                    let k = ids.len() as u32;
                    *ids.entry(v).or_insert(k)
                })
                .collect()
        })
        .collect();
    Ok(Polycycle::from_faces(poly.r, poly.q, ids.len(), &faces)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polygon(r: u32, q: u32) -> Polycycle {
        Polycycle::from_faces(r, q, r as usize, &[(0..r).collect()]).unwrap()
    }

    #[test]
    fn polygon_is_proper() {
        for (r, q) in [(3, 3), (5, 3), (4, 4), (7, 3)] {
            let h = project(&polygon(r, q)).unwrap();
            assert_eq!(h.classify(), Classification::Proper);
        }
    }

    #[test]
    fn thresholds() {
        assert_eq!(helicene_threshold(5, 3), Ok(5));
        assert_eq!(helicene_threshold(3, 5), Ok(7));
        assert_eq!(helicene_threshold(4, 3), Ok(4));
        assert_eq!(helicene_threshold(3, 3), Err(HomError::NoHelicene));
    }

    #[test]
    fn pentagon_reciprocal_has_eleven_faces() {
        let rec = reciprocal(&polygon(5, 3)).unwrap();
        assert_eq!(rec.p_r(), 11);
        assert_eq!(curvature(&rec), Ratio::from_integer(3));
    }
}
