//! Validated (r,q)-polycycles.

use serde::Serialize;
use thiserror::Error;

use crate::map::{MapError, PlaneMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolycycleError {
    #[error("r and q must be at least 3 (got r={0}, q={1})")]
    Parameters(u32, u32),
    #[error("interior face {face} has {len} sides, expected {r}")]
    FaceSize { face: u32, len: usize, r: u32 },
    #[error("interior vertex {vertex} has degree {degree}, expected {q}")]
    InteriorDegree { vertex: u32, degree: usize, q: u32 },
    #[error("vertex {vertex} has degree {degree} > {q}")]
    DegreeExceeded { vertex: u32, degree: usize, q: u32 },
    #[error("girth is {actual:?}, expected {r}")]
    Girth { actual: Option<usize>, r: u32 },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Face, vertex and edge counts of a polycycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub v: usize,
    pub e: usize,
    pub p_r: usize,
    pub n_int: usize,
    pub e_int: usize,
    pub perimeter: usize,
}

#[derive(Clone, Debug)]
pub struct Polycycle {
    pub r: u32,
    pub q: u32,
    map: PlaneMap,
}

impl Polycycle {
    pub fn new(r: u32, q: u32, map: PlaneMap) -> Result<Self, PolycycleError> {
        if r < 3 || q < 3 {
            return Err(PolycycleError::Parameters(r, q));
        }
        for f in map.interior_faces() {
            let len = map.face(f).len();
            if len != r as usize {
                return Err(PolycycleError::FaceSize { face: f, len, r });
            }
        }
        let bnd = map.boundary_mask();
        for v in 0..map.n() as u32 {
            let degree = map.degree(v);
            if degree > q as usize {
                return Err(PolycycleError::DegreeExceeded { vertex: v, degree, q });
            }
            if !bnd[v as usize] && degree != q as usize {
                return Err(PolycycleError::InteriorDegree { vertex: v, degree, q });
            }
        }
        let girth = map.to_graph().girth();
        if girth != Some(r as usize) {
            return Err(PolycycleError::Girth { actual: girth, r });
        }
        Ok(Polycycle { r, q, map })
    }

    /// Skips the girth check; for maps whose faces already are the only
    /// short cycles by construction.
    pub(crate) fn new_unchecked_girth(r: u32, q: u32, map: PlaneMap) -> Self {
        debug_assert!(Polycycle::new(r, q, map.clone()).is_ok());
        Polycycle { r, q, map }
    }

    pub fn from_faces(r: u32, q: u32, n: usize, faces: &[Vec<u32>]) -> Result<Self, PolycycleError> {
        Polycycle::new(r, q, PlaneMap::from_faces(n, faces)?)
    }

    pub fn map(&self) -> &PlaneMap {
        &self.map
    }

    pub fn into_map(self) -> PlaneMap {
        self.map
    }

    pub fn p_r(&self) -> usize {
        self.map.face_count() - 1
    }

    pub fn perimeter(&self) -> usize {
        self.map.boundary().len()
    }

    pub fn n_int(&self) -> usize {
        self.map.n() - self.perimeter()
    }

    pub fn e_int(&self) -> usize {
        self.map.edge_count() - self.perimeter()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            v: self.map.n(),
            e: self.map.edge_count(),
            p_r: self.p_r(),
            n_int: self.n_int(),
            e_int: self.e_int(),
            perimeter: self.perimeter(),
        }
    }

    /// Checks `n_int = e_int - p_r + 1 = -Per/2 + p_r (r-2)/2 + 1` in
    /// integers (both sides doubled for the second identity).
    pub fn euler_identities_hold(&self) -> bool {
        let n_int = self.n_int() as i64;
        let e_int = self.e_int() as i64;
        let p = self.p_r() as i64;
        let per = self.perimeter() as i64;
        let r = self.r as i64;
        n_int == e_int - p + 1 && 2 * n_int == -per + p * (r - 2) + 2
    }

    pub fn is_outerplanar(&self) -> bool {
        self.n_int() == 0
    }

    /// Mirror image with the same exterior face.
    pub fn mirror(&self) -> Polycycle {
        Polycycle { r: self.r, q: self.q, map: self.map.mirror() }
    }

    /// Number of interior faces with no interior vertex.
    pub fn faces_without_interior_vertex(&self) -> usize {
        let bnd = self.map.boundary_mask();
        self.map
            .interior_faces()
            .filter(|&f| self.map.face(f).iter().all(|&v| bnd[v as usize]))
            .count()
    }

    /// Numbers of non-boundary edges per interior face.
    pub fn inner_edges_per_face(&self) -> Vec<usize> {
        let ext = self.map.exterior();
        self.map
            .interior_faces()
            .map(|f| {
                let c = self.map.face(f);
                (0..c.len())
                    .filter(|&i| {
                        let d = crate::map::Dart(c[(i + 1) % c.len()], c[i]);
                        self.map.face_of(d) != ext
                    })
                    .count()
            })
            .collect()
    }
}
