//! Finite patches of the regular tessellations (r^q), grown one corona at
//! a time without coordinates.

use serde::Serialize;
use thiserror::Error;

use crate::map::{rotation_from_faces, Dart, Flag, FlagMove, MapError, PlaneMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spheric,
    Euclidean,
    Hyperbolic,
}

pub fn geometry_class(r: u32, q: u32) -> Geometry {
    let (lhs, rhs) = (r * q, 2 * (r + q));
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => Geometry::Spheric,
        std::cmp::Ordering::Equal => Geometry::Euclidean,
        std::cmp::Ordering::Greater => Geometry::Hyperbolic,
    }
}

/// The five spheric pairs.
pub const SPHERIC_PAIRS: [(u32, u32); 5] = [(3, 3), (4, 3), (3, 4), (5, 3), (3, 5)];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TessellationError {
    #[error("patch is closed; nothing left to grow")]
    Saturated,
    #[error("r and q must be at least 3")]
    Parameters,
    #[error("corona growth failed at boundary vertex {0}")]
    Growth(u32),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A finite portion of (r^q) around a seed face. Vertex ids and darts are
/// stable under growth.
#[derive(Clone, Debug)]
pub struct TessellationPatch {
    pub r: u32,
    pub q: u32,
    n: usize,
    faces: Vec<Vec<u32>>,
    closed: bool,
    coronas: usize,
    offset: usize,
    map: PlaneMap,
}

impl TessellationPatch {
    /// A single r-gon.
    pub fn new(r: u32, q: u32) -> Result<Self, TessellationError> {
        Self::with_offset(r, q, 0)
    }

    /// Like `new`, but every corona starts its boundary walk `offset`
    /// positions later, giving a different vertex numbering.
    pub fn with_offset(r: u32, q: u32, offset: usize) -> Result<Self, TessellationError> {
        if r < 3 || q < 3 {
            return Err(TessellationError::Parameters);
        }
        let face: Vec<u32> = (0..r).collect();
        let map = PlaneMap::from_faces(r as usize, std::slice::from_ref(&face))?;
        Ok(TessellationPatch { r, q, n: r as usize, faces: vec![face], closed: false, coronas: 0, offset, map })
    }

    /// The closed map of a spheric tessellation, one face designated
    /// exterior (the last one grown).
    pub fn platonic(r: u32, q: u32) -> Option<Self> {
        if geometry_class(r, q) != Geometry::Spheric {
            return None;
        }
        let mut p = Self::new(r, q).ok()?;
        while !p.closed {
            p.grow_corona().ok()?;
        }
        Some(p)
    }

    pub fn geometry(&self) -> Geometry {
        geometry_class(self.r, self.q)
    }

    pub fn map(&self) -> &PlaneMap {
        &self.map
    }

    /// Interior faces of an open patch; all faces of a closed one.
    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn coronas(&self) -> usize {
        self.coronas
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Boundary darts eligible for growth (empty once closed).
    pub fn frontier(&self) -> Vec<Dart> {
        if self.closed {
            Vec::new()
        } else {
            self.map.exterior_darts()
        }
    }

    /// Adds one full corona of faces, so every current boundary vertex
    /// becomes interior.
    pub fn grow_corona(&mut self) -> Result<(), TessellationError> {
        if self.closed {
            return Err(TessellationError::Saturated);
        }
        let (r, q) = (self.r as usize, self.q as i64);
        let bnd0 = self.map.boundary().to_vec();
        let len = bnd0.len();
        let s = self.offset % len;
        let bnd: Vec<u32> = (0..len).map(|i| bnd0[(i + s) % len]).collect();
        let delta: Vec<i64> = bnd.iter().map(|&v| q - self.map.interior_face_degree(v) as i64).collect();
        if delta.iter().any(|&d| d < 1) {
            let i = delta.iter().position(|&d| d < 1).unwrap();
            return Err(TessellationError::Growth(bnd[i]));
        }
        let corners: Vec<usize> = (0..len).filter(|&i| delta[i] >= 2).collect();
        let mut new_faces: Vec<Vec<u32>> = Vec::new();
        if corners.is_empty() {
            if len != r {
                return Err(TessellationError::Growth(bnd[0]));
            }
            new_faces.push(bnd.clone());
        } else {
            // Provisional ids for new vertices, merged afterwards.
            let mut parent: Vec<usize> = Vec::new();
            let fresh = |parent: &mut Vec<usize>| {
                parent.push(parent.len());
                (self.n + parent.len() - 1) as u32
            };
            let mut spokes: Vec<Vec<u32>> = vec![Vec::new(); len];
            for &i in &corners {
                for _ in 0..delta[i] - 1 {
                    let t = fresh(&mut parent);
                    spokes[i].push(t);
                }
                let c = bnd[i];
                for w in spokes[i].windows(2) {
                    let mut f = vec![c, w[0]];
                    for _ in 0..r - 3 {
                        f.push(fresh(&mut parent));
                    }
                    f.push(w[1]);
                    new_faces.push(f);
                }
            }
            let mut merges = Vec::new();
            for (ci, &j) in corners.iter().enumerate() {
                let k = corners[(ci + 1) % corners.len()];
                let kk = if k > j { k - j } else { k + len - j };
                let m = r as i64 - kk as i64 - 3;
                let mut f: Vec<u32> = (0..=kk).map(|t| bnd[(j + t) % len]).collect();
                let tk = *spokes[k].last().unwrap();
                let tj = spokes[j][0];
                if m < -1 {
                    return Err(TessellationError::Growth(bnd[j]));
                }
                if m == -1 {
                    merges.push((tk, tj));
                    f.push(tk);
                } else {
                    f.push(tk);
                    for _ in 0..m {
                        f.push(fresh(&mut parent));
                    }
                    f.push(tj);
                }
                new_faces.push(f);
            }
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let base = self.n;
            for (a, b) in merges {
                let (ra, rb) = (find(&mut parent, a as usize - base), find(&mut parent, b as usize - base));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
            let mut dense = vec![u32::MAX; parent.len()];
            let mut next = base as u32;
            for i in 0..parent.len() {
                let root = find(&mut parent, i);
                if dense[root] == u32::MAX {
                    dense[root] = next;
                    next += 1;
                }
                dense[i] = dense[root];
            }
            for f in &mut new_faces {
                for v in f.iter_mut() {
                    if *v as usize >= base {
                        *v = dense[*v as usize - base];
                    }
                }
            }
            self.n = next as usize;
        }
        self.faces.extend(new_faces);
        self.coronas += 1;
        self.rebuild()?;
        if !self.closed {
            let b = self.map.boundary();
            let saturated = b.len() == r
                && b.iter().all(|&v| self.map.interior_face_degree(v) as i64 == q - 1);
            if saturated {
                self.faces.push(b.to_vec());
                self.rebuild()?;
            }
        }
        Ok(())
    }

    fn rebuild(&mut self) -> Result<(), TessellationError> {
        let (rot, outer) = rotation_from_faces(self.n, &self.faces)?;
        match outer {
            Some(d) => {
                self.map = PlaneMap::from_rotation(rot, Some(d))?;
            }
            None => {
                self.closed = true;
                let last = self.faces.last().unwrap();
                self.map = PlaneMap::from_rotation(rot, Some(Dart(last[0], last[1])))?;
            }
        }
        Ok(())
    }

    /// Grows until every vertex within `depth` coronas is interior.
    pub fn grow_to(&mut self, coronas: usize) -> Result<(), TessellationError> {
        while self.coronas < coronas && !self.closed {
            self.grow_corona()?;
        }
        Ok(())
    }

    /// Whether the face of `flag` is a face of the tessellation (always true
    /// once closed).
    pub fn flag_is_built(&self, flag: Flag) -> bool {
        self.closed || self.map.flag_face(flag) != self.map.exterior()
    }

    /// Applies a flag move, growing the patch if the result leaves it.
    pub fn navigate(&mut self, flag: Flag, mv: FlagMove) -> Result<Flag, TessellationError> {
        let out = self.map.flag_move(flag, mv);
        while !self.flag_is_built(out) {
            self.grow_corona()?;
        }
        Ok(out)
    }

    /// A flag of the seed face.
    pub fn base_flag(&self) -> Flag {
        Flag { dart: Dart(self.faces[0][0], self.faces[0][1]), left: true }
    }

    /// Growth-order independent vertex addresses: breadth-first numbering
    /// from the base flag.
    pub fn addresses(&self) -> Vec<u32> {
        self.map.bfs_labels(self.base_flag().dart)
    }

    /// The patch relabelled by addresses.
    pub fn addressed_map(&self) -> PlaneMap {
        self.map.relabel(&self.addresses())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        assert_eq!(geometry_class(5, 3), Geometry::Spheric);
        assert_eq!(geometry_class(4, 4), Geometry::Euclidean);
        assert_eq!(geometry_class(6, 3), Geometry::Euclidean);
        assert_eq!(geometry_class(7, 3), Geometry::Hyperbolic);
    }

    #[test]
    fn platonic_face_counts() {
        let expect = [((3, 3), 4, 4), ((4, 3), 6, 8), ((3, 4), 8, 6), ((5, 3), 12, 20), ((3, 5), 20, 12)];
        for ((r, q), f, v) in expect {
            let p = TessellationPatch::platonic(r, q).unwrap();
            assert!(p.is_closed());
            assert_eq!(p.map().face_count(), f, "({r},{q})");
            assert_eq!(p.n(), v);
            assert!(p.frontier().is_empty());
            assert!((0..v as u32).all(|x| p.map().degree(x) == q as usize));
        }
    }

    #[test]
    fn first_corona_sizes() {
        for ((r, q), f) in [((4, 4), 9), ((5, 3), 6), ((7, 3), 8), ((6, 3), 7), ((3, 6), 13)] {
            let mut p = TessellationPatch::new(r, q).unwrap();
            p.grow_corona().unwrap();
            assert_eq!(p.faces().len(), f, "({r},{q})");
        }
    }

    #[test]
    fn saturated_growth_errors() {
        let mut p = TessellationPatch::platonic(4, 3).unwrap();
        assert_eq!(p.grow_corona(), Err(TessellationError::Saturated));
    }

    #[test]
    fn addresses_independent_of_schedule() {
        let mut a = TessellationPatch::new(7, 3).unwrap();
        let mut b = TessellationPatch::with_offset(7, 3, 3).unwrap();
        a.grow_to(3).unwrap();
        b.grow_to(3).unwrap();
        assert_eq!(a.map().canonical_code(false), b.map().canonical_code(false));
        assert_eq!(a.addressed_map().rotations(), b.addressed_map().rotations());
    }

    #[test]
    fn navigation_periods() {
        let mut p = TessellationPatch::new(4, 4).unwrap();
        let f0 = p.base_flag();
        let mut f = f0;
        for _ in 0..4 {
            f = p.navigate(f, FlagMove::Edge).unwrap();
            f = p.navigate(f, FlagMove::Face).unwrap();
        }
        assert_eq!(f, f0);
        let mut p = TessellationPatch::new(5, 3).unwrap();
        let f0 = p.base_flag();
        let mut f = f0;
        for _ in 0..5 {
            f = p.navigate(f, FlagMove::Vertex).unwrap();
            f = p.navigate(f, FlagMove::Edge).unwrap();
        }
        assert_eq!(f, f0);
    }
}
