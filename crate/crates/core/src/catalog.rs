//! Named small polycycles.

use std::collections::HashMap;

use crate::graph::Graph;
use crate::polycycle::Polycycle;
use crate::recognition::realize;
use crate::tessellation::TessellationPatch;

/// Builds a polycycle from a subset of faces of a closed or open patch.
pub fn from_patch_faces(r: u32, q: u32, faces: &[Vec<u32>]) -> Polycycle {
    let mut ids: HashMap<u32, u32> = HashMap::new();
    let local: Vec<Vec<u32>> = faces
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
    Polycycle::from_faces(r, q, ids.len(), &local).expect("face subset is a polycycle")
}

pub fn polygon(r: u32, q: u32) -> Polycycle {
    Polycycle::from_faces(r, q, r as usize, &[(0..r).collect()]).unwrap()
}

pub fn adjacent_pair(r: u32, q: u32) -> Polycycle {
    let a: Vec<u32> = (0..r).collect();
    let mut b = vec![1, 0];
    b.extend(r..2 * r - 2);
    Polycycle::from_faces(r, q, 2 * r as usize - 2, &[a, b]).unwrap()
}

/// `k` r-gons around a common vertex; `k = q` gives the star.
pub fn fan(r: u32, q: u32, k: u32) -> Polycycle {
    assert!(k >= 1 && k <= q);
    let closed = k == q;
    let spokes: Vec<u32> = (1..=k + u32::from(!closed)).collect();
    let mut next = spokes.len() as u32 + 1;
    let mut faces = Vec::new();
    for i in 0..k as usize {
        let a = spokes[i];
        let b = spokes[(i + 1) % spokes.len()];
        let mut f = vec![0, a];
        for _ in 0..r - 3 {
            f.push(next);
            next += 1;
        }
        f.push(b);
        faces.push(f);
    }
    Polycycle::from_faces(r, q, next as usize, &faces).unwrap()
}

pub fn star(r: u32, q: u32) -> Polycycle {
    fan(r, q, q)
}

/// An r-gon with every face of (r^q) meeting it.
pub fn corona(r: u32, q: u32) -> Polycycle {
    let mut t = TessellationPatch::new(r, q).expect("parameters");
    t.grow_corona().expect("first corona");
    from_patch_faces(r, q, t.faces())
}

/// P2 x Pn: a row of n-1 squares (n vertices per side).
pub fn ladder(n: u32) -> Polycycle {
    assert!(n >= 2);
    let faces: Vec<Vec<u32>> = (0..n - 1).map(|i| vec![i, i + 1, n + i + 1, n + i]).collect();
    Polycycle::from_faces(4, 3, 2 * n as usize, &faces).unwrap()
}

/// Strip of n triangles with all diagonals parallel (the square of a path).
pub fn triangle_strip(n: u32) -> Polycycle {
    assert!(n >= 1);
    let v = n + 2;
    let mut edges = Vec::new();
    for i in 0..v {
        if i + 1 < v {
            edges.push((i, i + 1));
        }
        if i + 2 < v {
            edges.push((i, i + 2));
        }
    }
    realize(&Graph::from_edges(v as usize, &edges), 3, 4).expect("strip realizes")
}

/// Skeleton of the Platonic map (r^q).
pub fn platonic_graph(r: u32, q: u32) -> Graph {
    TessellationPatch::platonic(r, q).expect("spheric pair").map().to_graph()
}

/// The Platonic polycycle (r^q): the closed map minus one face.
pub fn platonic(r: u32, q: u32) -> Polycycle {
    realize(&platonic_graph(r, q), r, q).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deletion {
    Vertex,
    Edge,
    /// Two edges sharing a vertex and lying on a common face.
    P3,
    /// The three edges of a face (only for triangles).
    C3,
}

/// (r^q) with a vertex or some edges deleted, realized as a polycycle.
pub fn platonic_minus(r: u32, q: u32, what: Deletion) -> Option<Polycycle> {
    let patch = TessellationPatch::platonic(r, q)?;
    let m = patch.map();
    let mut g = m.to_graph();
    match what {
        Deletion::Vertex => g = g.remove_vertex(0),
        Deletion::Edge => {
            g.remove_edge(0, m.rotation(0)[0]);
        }
        Deletion::P3 => {
            let f = m.face(0);
            g.remove_edge(f[0], f[1]);
            g.remove_edge(f[1], f[2]);
        }
        Deletion::C3 => {
            let f = m.face(0);
            if f.len() != 3 {
                return None;
            }
            g.remove_edge(f[0], f[1]);
            g.remove_edge(f[1], f[2]);
            g.remove_edge(f[2], f[0]);
        }
    }
    let g = drop_isolated(g);
    realize(&g, r, q).ok()
}

fn drop_isolated(g: Graph) -> Graph {
    let keep: Vec<u32> = (0..g.n() as u32).filter(|&v| g.degree(v) > 0).collect();
    let mut idx = vec![u32::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        idx[v as usize] = i as u32;
    }
    let edges: Vec<(u32, u32)> = g.edges().into_iter().map(|(a, b)| (idx[a as usize], idx[b as usize])).collect();
    Graph::from_edges(keep.len(), &edges)
}

/// Splits a wheel centre x of (3^4) or (3^5): edges xa, xb (a, b adjacent
/// rim vertices) are replaced by x'a, x'b for a new vertex x'.
pub fn vertex_split(q: u32) -> Option<Polycycle> {
    if q != 4 && q != 5 {
        return None;
    }
    let patch = TessellationPatch::platonic(3, q)?;
    let m = patch.map();
    let mut g = m.to_graph();
    let x = 0;
    let (a, b) = (m.rotation(x)[0], m.rotation(x)[1]);
    let x2 = g.n() as u32;
    let mut edges = g.edges();
    edges.retain(|&e| e != (x.min(a), x.max(a)) && e != (x.min(b), x.max(b)));
    edges.push((a, x2));
    edges.push((b, x2));
    g = Graph::from_edges(x2 as usize + 1, &edges);
    realize(&g, 3, q).ok()
}

/// Elementary (5,3)-polycycle whose kernel is a path of `i` vertices:
/// all faces of (5^3) at the path, provided they number i + 2 and leave
/// exactly the path interior. The smallest code wins among candidates.
pub fn e_family(i: usize) -> Polycycle {
    assert!((1..=4).contains(&i));
    let patch = TessellationPatch::platonic(5, 3).unwrap();
    let m = patch.map();
    let g = m.to_graph();
    let mut best: Option<(crate::map::CanonicalForm, Polycycle)> = None;
    let mut paths: Vec<Vec<u32>> = (0..g.n() as u32).map(|v| vec![v]).collect();
    for _ in 1..i {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                g.neighbors(last)
                    .iter()
                    .filter(|w| !p.contains(w))
                    .map(|&w| {
                        let mut q = p.clone();
                        q.push(w);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    for path in paths {
        let faces: Vec<Vec<u32>> = (0..m.face_count() as u32)
            .map(|f| m.face(f).to_vec())
            .filter(|f| path.iter().any(|v| f.contains(v)))
            .collect();
        if faces.len() != i + 2 || faces.len() == m.face_count() {
            continue;
        }
        let p = from_patch_faces(5, 3, &faces);
        if p.n_int() != i {
            continue;
        }
        let code = p.map().canonical_code(true);
        if best.as_ref().is_none_or(|b| code < b.0) {
            best = Some((code, p));
        }
    }
    best.expect("E_i exists").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_sizes() {
        assert_eq!(adjacent_pair(5, 3).p_r(), 2);
        assert_eq!(star(5, 3).n_int(), 1);
        assert_eq!(fan(4, 4, 3).p_r(), 3);
        assert_eq!(ladder(5).p_r(), 4);
        assert_eq!(triangle_strip(4).p_r(), 4);
        let vs = vertex_split(4).unwrap();
        assert_eq!((vs.map().n(), vs.map().edge_count(), vs.p_r()), (7, 12, 6));
        let vs5 = vertex_split(5).unwrap();
        assert_eq!((vs5.map().n(), vs5.p_r(), vs5.n_int()), (13, 18, 7));
        for i in 1..=4 {
            let e = e_family(i);
            assert_eq!((e.p_r(), e.n_int()), (i + 2, i));
        }
    }

    #[test]
    fn platonic_deletions() {
        let sizes = [
            ((3, 3), Deletion::Vertex, 1),
            ((3, 3), Deletion::Edge, 2),
            ((4, 3), Deletion::Vertex, 3),
            ((4, 3), Deletion::Edge, 4),
            ((3, 4), Deletion::Vertex, 4),
            ((3, 4), Deletion::Edge, 6),
            ((3, 4), Deletion::P3, 5),
            ((3, 4), Deletion::C3, 4),
            ((3, 5), Deletion::Vertex, 15),
        ];
        for ((r, q), d, p) in sizes {
            let poly = platonic_minus(r, q, d).unwrap_or_else(|| panic!("({r},{q}) {d:?}"));
            assert_eq!(poly.p_r(), p, "({r},{q}) {d:?}");
        }
        assert_eq!(platonic(5, 3).p_r(), 11);
        assert_eq!(platonic(5, 3).n_int(), 15);
    }
}
