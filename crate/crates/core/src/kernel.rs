//! Kernels (cells away from the boundary) and elementary decompositions.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::catalog::from_patch_faces;
use crate::graph::Graph;
use crate::polycycle::Polycycle;
use crate::tessellation::{geometry_class, Geometry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("({0},{1}) is not a spheric pair")]
    NotSpheric(u32, u32),
    #[error("face {0} touches two kernel components")]
    Overlap(u32),
    #[error("part {0} is not a polycycle")]
    BadPart(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Kernel {
    pub vertices: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
    pub faces: Vec<u32>,
    /// Vertex sets of the connected components.
    pub components: Vec<Vec<u32>>,
}

impl Kernel {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn kernel(poly: &Polycycle) -> Kernel {
    let m = poly.map();
    let bnd = m.boundary_mask();
    let vertices: Vec<u32> = (0..m.n() as u32).filter(|&v| !bnd[v as usize]).collect();
    let edges: Vec<(u32, u32)> =
        m.edges().into_iter().filter(|&(a, b)| !bnd[a as usize] && !bnd[b as usize]).collect();
    let faces: Vec<u32> = m.interior_faces().filter(|&f| m.face(f).iter().all(|&v| !bnd[v as usize])).collect();
    let g = Graph::from_edges(m.n(), &edges);
    let mut comp = vec![usize::MAX; m.n()];
    let mut components = Vec::new();
    for &v in &vertices {
        if comp[v as usize] != usize::MAX {
            continue;
        }
        let d = g.bfs(v);
        let c: Vec<u32> = vertices.iter().copied().filter(|&w| d[w as usize] != u32::MAX).collect();
        for &w in &c {
            comp[w as usize] = components.len();
        }
        components.push(c);
    }
    Kernel { vertices, edges, faces, components }
}

/// An r-gon, or a polycycle with connected non-empty kernel meeting every
/// face.
pub fn is_elementary(poly: &Polycycle) -> bool {
    if poly.p_r() == 1 {
        return true;
    }
    let k = kernel(poly);
    if k.components.len() != 1 {
        return false;
    }
    let m = poly.map();
    let bnd = m.boundary_mask();
    m.interior_faces().all(|f| m.face(f).iter().any(|&v| !bnd[v as usize]))
}

#[derive(Clone, Debug)]
pub struct Part {
    /// Face ids in the decomposed polycycle.
    pub faces: Vec<u32>,
    /// `vertices[local] = original id`.
    pub vertices: Vec<u32>,
    pub poly: Polycycle,
}

#[derive(Clone, Debug, Serialize)]
pub struct GluingEdge {
    pub u: u32,
    pub v: u32,
    pub parts: (usize, usize),
    /// Both endpoints have degree 2 in both parts.
    pub open: bool,
}

#[derive(Clone, Debug)]
pub struct ElementaryDecomposition {
    pub parts: Vec<Part>,
    pub gluing: Vec<GluingEdge>,
}

impl ElementaryDecomposition {
    /// Glues the parts back along their shared vertices.
    pub fn reassemble(&self, r: u32, q: u32) -> Polycycle {
        let faces: Vec<Vec<u32>> = self
            .parts
            .iter()
            .flat_map(|p| {
                p.poly.map().interior_face_cycles().into_iter().map(|c| c.iter().map(|&v| p.vertices[v as usize]).collect())
            })
            .collect();
        from_patch_faces(r, q, &faces)
    }
}

pub fn elementary_decompose(poly: &Polycycle) -> Result<ElementaryDecomposition, KernelError> {
    if geometry_class(poly.r, poly.q) != Geometry::Spheric {
        return Err(KernelError::NotSpheric(poly.r, poly.q));
    }
    let m = poly.map();
    let k = kernel(poly);
    let mut comp_of = vec![usize::MAX; m.n()];
    for (i, c) in k.components.iter().enumerate() {
        for &v in c {
            comp_of[v as usize] = i;
        }
    }
    let mut groups: BTreeMap<(usize, u32), Vec<u32>> = BTreeMap::new();
    for f in m.interior_faces() {
        let mut comps: Vec<usize> =
            m.face(f).iter().map(|&v| comp_of[v as usize]).filter(|&c| c != usize::MAX).collect();
        comps.sort_unstable();
        comps.dedup();
        match comps.len() {
            0 => {
                groups.insert((usize::MAX, f), vec![f]);
            }
            1 => groups.entry((comps[0], u32::MAX)).or_default().push(f),
            _ => return Err(KernelError::Overlap(f)),
        }
    }
    let mut parts = Vec::new();
    let mut part_of_face: HashMap<u32, usize> = HashMap::new();
    for (i, faces) in groups.into_values().enumerate() {
        let mut vertices: Vec<u32> = Vec::new();
        let mut local: HashMap<u32, u32> = HashMap::new();
        let cycles: Vec<Vec<u32>> = faces
            .iter()
            .map(|&f| {
                m.face(f)
                    .iter()
                    .map(|&v| {
                        *local.entry(v).or_insert_with(|| {
                            vertices.push(v);
                            vertices.len() as u32 - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let p = Polycycle::from_faces(poly.r, poly.q, vertices.len(), &cycles).map_err(|_| KernelError::BadPart(i))?;
        for &f in &faces {
            part_of_face.insert(f, i);
        }
        parts.push(Part { faces, vertices, poly: p });
    }
    let degree_in = |part: &Part, v: u32| {
        part.vertices.iter().position(|&w| w == v).map(|l| part.poly.map().degree(l as u32)).unwrap_or(0)
    };
    let mut gluing = Vec::new();
    for d in m.darts() {
        if d.0 > d.1 {
            continue;
        }
        let (f, g) = (m.face_of(d), m.face_of(d.rev()));
        if f == m.exterior() || g == m.exterior() {
            continue;
        }
        let (a, b) = (part_of_face[&f], part_of_face[&g]);
        if a != b {
            let open = [a, b].iter().all(|&p| degree_in(&parts[p], d.0) == 2 && degree_in(&parts[p], d.1) == 2);
            gluing.push(GluingEdge { u: d.0, v: d.1, parts: (a.min(b), a.max(b)), open });
        }
    }
    Ok(ElementaryDecomposition { parts, gluing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn kernels_of_small_cases() {
        assert!(kernel(&catalog::polygon(5, 3)).is_empty());
        let k = kernel(&catalog::star(4, 4));
        assert_eq!(k.vertices.len(), 1);
        assert!(k.edges.is_empty() && k.faces.is_empty());
        assert_eq!(kernel(&catalog::e_family(1)).vertices.len(), 1);
    }

    #[test]
    fn e4_is_elementary() {
        let e4 = catalog::e_family(4);
        assert!(is_elementary(&e4));
        let d = elementary_decompose(&e4).unwrap();
        assert_eq!(d.parts.len(), 1);
    }
}
