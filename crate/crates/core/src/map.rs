//! Combinatorial plane maps stored as rotation systems.
//!
//! Darts are directed edges `u -> v`. Each vertex keeps its neighbours in
//! counterclockwise order; faces are traced so that a face lies to the left
//! of each of its darts. One face is designated exterior.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(pub u32, pub u32);

impl Dart {
    pub fn rev(self) -> Dart {
        Dart(self.1, self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("malformed rotation at vertex {vertex}: {detail}")]
    MalformedRotation { vertex: u32, detail: String },
    #[error("dart {0}->{1} has no reverse dart")]
    MissingReverse(u32, u32),
    #[error("map is not connected")]
    NotConnected,
    #[error("Euler characteristic is {0}, expected 2")]
    Genus(i64),
    #[error("face {0} is not a simple cycle; the map is not 2-connected")]
    NotTwoConnected(usize),
    #[error("outer dart {0}->{1} is not a dart of the map")]
    BadOuter(u32, u32),
    #[error("faces around vertex {0} do not form a single fan")]
    NotADisc(u32),
    #[error("faces close up into a sphere; there is no exterior face")]
    Closed,
    #[error("face {0} is degenerate")]
    BadFace(usize),
}

/// A finite plane map with a designated exterior face.
#[derive(Clone, Debug)]
pub struct PlaneMap {
    rot: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    dart_face: Vec<u32>,
    faces: Vec<Vec<u32>>,
    exterior: u32,
}

/// A flag: the vertex `dart.0`, the edge of `dart`, and the face to the
/// left (`left == true`) or right of `dart`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    pub dart: Dart,
    pub left: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FlagMove {
    /// Keep edge and face, switch to the other endpoint.
    Vertex,
    /// Keep vertex and face, switch to the other edge.
    Edge,
    /// Keep vertex and edge, switch to the other face.
    Face,
}

/// Canonical code of a map under isomorphism fixing the exterior face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u32>);

impl CanonicalForm {
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_le_bytes()).collect()
    }

    /// Short stable hex digest, handy as a record key.
    pub fn hex(&self) -> String {
        // FNV-1a over the bytes; collisions only matter for display.
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.to_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    /// `perm[v]` is the image of vertex `v`.
    pub perm: Vec<u32>,
    pub orientation_preserving: bool,
}

/// Builds a rotation system from oriented faces of a disc or a sphere.
///
/// Every face is a vertex cycle listed counterclockwise. Returns the
/// rotation and, for a disc, one dart of the uncovered (exterior) face.
pub(crate) fn rotation_from_faces(
    n: usize,
    faces: &[Vec<u32>],
) -> Result<(Vec<Vec<u32>>, Option<Dart>), MapError> {
    // succ[v] holds pairs (b, a): ccw successor of neighbour b around v is a.
    let mut succ: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (fi, f) in faces.iter().enumerate() {
        let k = f.len();
        if k < 3 {
            return Err(MapError::BadFace(fi));
        }
        for i in 0..k {
            let a = f[(i + k - 1) % k];
            let v = f[i];
            let b = f[(i + 1) % k];
            if v as usize >= n || a == v || b == v || a == b {
                return Err(MapError::BadFace(fi));
            }
            succ[v as usize].push((b, a));
        }
    }
    let mut rot = vec![Vec::new(); n];
    let mut outer = None;
    for v in 0..n {
        let pairs = &mut succ[v];
        if pairs.is_empty() {
            return Err(MapError::MalformedRotation {
                vertex: v as u32,
                detail: "isolated vertex".into(),
            });
        }
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(MapError::NotADisc(v as u32));
            }
        }
        let next = |b: u32| pairs.binary_search_by(|p| p.0.cmp(&b)).ok().map(|i| pairs[i].1);
        let is_target = |x: u32| pairs.iter().any(|p| p.1 == x);
        let starts: Vec<u32> = pairs.iter().map(|p| p.0).filter(|&b| !is_target(b)).collect();
        let mut targets: Vec<u32> = pairs.iter().map(|p| p.1).collect();
        targets.sort_unstable();
        if targets.windows(2).any(|w| w[0] == w[1]) {
            return Err(MapError::NotADisc(v as u32));
        }
        let (start, open) = match starts.len() {
            0 => (pairs[0].0, false),
            1 => (starts[0], true),
            _ => return Err(MapError::NotADisc(v as u32)),
        };
        let mut order = vec![start];
        let mut cur = start;
        while let Some(nx) = next(cur) {
            if nx == start {
                break;
            }
            if order.len() > pairs.len() + 1 {
                return Err(MapError::NotADisc(v as u32));
            }
            order.push(nx);
            cur = nx;
        }
        let expected = if open { pairs.len() + 1 } else { pairs.len() };
        if order.len() != expected {
            return Err(MapError::NotADisc(v as u32));
        }
        if open && outer.is_none() {
            outer = Some(Dart(v as u32, *order.last().unwrap()));
        }
        rot[v] = order;
    }
    Ok((rot, outer))
}

impl PlaneMap {
    /// Builds a map from ccw neighbour lists. When `outer` is `None` the
    /// exterior is the longest face, ties broken by the smallest dart.
    pub fn from_rotation(rot: Vec<Vec<u32>>, outer: Option<Dart>) -> Result<Self, MapError> {
        let n = rot.len();
        for (v, nb) in rot.iter().enumerate() {
            if nb.len() < 2 {
                return Err(MapError::MalformedRotation {
                    vertex: v as u32,
                    detail: format!("degree {} < 2", nb.len()),
                });
            }
            let mut s = nb.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(MapError::MalformedRotation {
                    vertex: v as u32,
                    detail: "repeated neighbour".into(),
                });
            }
            for &w in nb {
                if w as usize >= n || w as usize == v {
                    return Err(MapError::MalformedRotation {
                        vertex: v as u32,
                        detail: format!("bad neighbour {w}"),
                    });
                }
                if !rot[w as usize].contains(&(v as u32)) {
                    return Err(MapError::MissingReverse(v as u32, w));
                }
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for nb in &rot {
            offsets.push(total);
            total += nb.len();
        }
        offsets.push(total);
        let mut map = PlaneMap { rot, offsets, dart_face: vec![u32::MAX; total], faces: Vec::new(), exterior: 0 };
        let g = map.to_graph();
        if !g.is_connected() {
            return Err(MapError::NotConnected);
        }
        map.trace();
        let euler = n as i64 - (total / 2) as i64 + map.faces.len() as i64;
        if euler != 2 {
            return Err(MapError::Genus(euler));
        }
        for (i, f) in map.faces.iter().enumerate() {
            let mut s = f.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(MapError::NotTwoConnected(i));
            }
        }
        map.exterior = match outer {
            Some(d) => {
                let idx = map.dart_index(d).ok_or(MapError::BadOuter(d.0, d.1))?;
                map.dart_face[idx]
            }
            None => {
                let best = (0..map.faces.len())
                    .max_by(|&a, &b| {
                        map.faces[a]
                            .len()
                            .cmp(&map.faces[b].len())
                            .then_with(|| map.face_min_dart(b).cmp(&map.face_min_dart(a)))
                    })
                    .unwrap();
                best as u32
            }
        };
        Ok(map)
    }

    /// Builds a disc from its interior faces, each listed counterclockwise
    /// on vertices `0..n`.
    pub fn from_faces(n: usize, faces: &[Vec<u32>]) -> Result<Self, MapError> {
        let (rot, outer) = rotation_from_faces(n, faces)?;
        let outer = outer.ok_or(MapError::Closed)?;
        let map = PlaneMap::from_rotation(rot, Some(outer))?;
        if map.faces.len() != faces.len() + 1 {
            return Err(MapError::NotADisc(outer.0));
        }
        Ok(map)
    }

    fn face_min_dart(&self, f: usize) -> Dart {
        let c = &self.faces[f];
        (0..c.len()).map(|i| Dart(c[i], c[(i + 1) % c.len()])).min().unwrap()
    }

    fn trace(&mut self) {
        let n = self.rot.len();
        let mut faces = Vec::new();
        for u in 0..n as u32 {
            for i in 0..self.rot[u as usize].len() {
                let idx = self.offsets[u as usize] + i;
                if self.dart_face[idx] != u32::MAX {
                    continue;
                }
                let fid = faces.len() as u32;
                let mut cycle = Vec::new();
                let mut d = Dart(u, self.rot[u as usize][i]);
                loop {
                    let di = self.dart_index(d).unwrap();
                    if self.dart_face[di] != u32::MAX {
                        break;
                    }
                    self.dart_face[di] = fid;
                    cycle.push(d.0);
                    d = self.face_next(d);
                }
                faces.push(cycle);
            }
        }
        self.faces = faces;
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_face.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn rotation(&self, v: u32) -> &[u32] {
        &self.rot[v as usize]
    }

    pub fn rotations(&self) -> &[Vec<u32>] {
        &self.rot
    }

    pub fn degree(&self, v: u32) -> usize {
        self.rot[v as usize].len()
    }

    pub fn dart_index(&self, d: Dart) -> Option<usize> {
        let nb = self.rot.get(d.0 as usize)?;
        nb.iter().position(|&w| w == d.1).map(|i| self.offsets[d.0 as usize] + i)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.rot.get(u as usize).is_some_and(|nb| nb.contains(&v))
    }

    fn pos(&self, u: u32, v: u32) -> usize {
        self.rot[u as usize].iter().position(|&w| w == v).expect("not a dart")
    }

    /// Next neighbour counterclockwise around `u` after `v`.
    pub fn succ(&self, u: u32, v: u32) -> u32 {
        let nb = &self.rot[u as usize];
        nb[(self.pos(u, v) + 1) % nb.len()]
    }

    /// Next neighbour clockwise around `u` after `v`.
    pub fn pred(&self, u: u32, v: u32) -> u32 {
        let nb = &self.rot[u as usize];
        nb[(self.pos(u, v) + nb.len() - 1) % nb.len()]
    }

    /// Successor of `d` along the face on its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        Dart(d.1, self.pred(d.1, d.0))
    }

    /// Face to the left of `d`.
    pub fn face_of(&self, d: Dart) -> u32 {
        self.dart_face[self.dart_index(d).expect("not a dart")]
    }

    pub fn faces(&self) -> &[Vec<u32>] {
        &self.faces
    }

    pub fn face(&self, f: u32) -> &[u32] {
        &self.faces[f as usize]
    }

    pub fn exterior(&self) -> u32 {
        self.exterior
    }

    pub fn is_exterior(&self, f: u32) -> bool {
        f == self.exterior
    }

    /// Interior face ids in increasing order.
    pub fn interior_faces(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.faces.len() as u32).filter(move |&f| f != self.exterior)
    }

    /// Vertex cycle of the exterior face (clockwise around the disc).
    pub fn boundary(&self) -> &[u32] {
        &self.faces[self.exterior as usize]
    }

    /// Darts with the exterior face on their left.
    pub fn exterior_darts(&self) -> Vec<Dart> {
        let c = self.boundary();
        (0..c.len()).map(|i| Dart(c[i], c[(i + 1) % c.len()])).collect()
    }

    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n()];
        for &v in self.boundary() {
            mask[v as usize] = true;
        }
        mask
    }

    /// Number of interior faces incident to `v`.
    pub fn interior_face_degree(&self, v: u32) -> usize {
        self.rot[v as usize]
            .iter()
            .filter(|&&w| self.face_of(Dart(v, w)) != self.exterior)
            .count()
    }

    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, nb) in self.rot.iter().enumerate() {
            for &v in nb {
                if (u as u32) < v {
                    g.add_edge(u as u32, v);
                }
            }
        }
        g
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.to_graph().edges()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.rot
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().map(move |&v| Dart(u as u32, v)))
    }

    /// Orientation-reversed copy (same exterior face).
    pub fn mirror(&self) -> PlaneMap {
        let rot = self.rot.iter().map(|nb| nb.iter().rev().copied().collect()).collect();
        let outer = self.exterior_darts()[0].rev();
        PlaneMap::from_rotation(rot, Some(outer)).expect("mirror of a valid map")
    }

    /// Applies a vertex relabelling `perm[old] = new`.
    pub fn relabel(&self, perm: &[u32]) -> PlaneMap {
        let mut rot = vec![Vec::new(); self.n()];
        for (u, nb) in self.rot.iter().enumerate() {
            rot[perm[u] as usize] = nb.iter().map(|&w| perm[w as usize]).collect();
        }
        let d = self.exterior_darts()[0];
        PlaneMap::from_rotation(rot, Some(Dart(perm[d.0 as usize], perm[d.1 as usize])))
            .expect("relabelling preserves validity")
    }

    /// Interior faces as ccw vertex cycles (the inverse of `from_faces`).
    pub fn interior_face_cycles(&self) -> Vec<Vec<u32>> {
        self.interior_faces().map(|f| self.faces[f as usize].clone()).collect()
    }

    // --- flags ---

    pub fn flag_vertex(&self, flag: Flag) -> u32 {
        flag.dart.0
    }

    pub fn flag_face(&self, flag: Flag) -> u32 {
        if flag.left {
            self.face_of(flag.dart)
        } else {
            self.face_of(flag.dart.rev())
        }
    }

    /// Applies one of the three flag involutions. Face moves are always
    /// defined combinatorially; callers restricted to interior flags check
    /// `flag_face` of the result.
    pub fn flag_move(&self, flag: Flag, mv: FlagMove) -> Flag {
        let Dart(u, v) = flag.dart;
        match mv {
            FlagMove::Vertex => Flag { dart: Dart(v, u), left: !flag.left },
            FlagMove::Face => Flag { dart: flag.dart, left: !flag.left },
            FlagMove::Edge => {
                if flag.left {
                    Flag { dart: Dart(u, self.succ(u, v)), left: false }
                } else {
                    Flag { dart: Dart(u, self.pred(u, v)), left: true }
                }
            }
        }
    }

    /// Flags whose face is interior.
    pub fn interior_flags(&self) -> Vec<Flag> {
        let mut out = Vec::new();
        for d in self.darts() {
            for left in [true, false] {
                let f = Flag { dart: d, left };
                if self.flag_face(f) != self.exterior {
                    out.push(f);
                }
            }
        }
        out
    }

    // --- canonical forms ---

    /// Breadth-first code from `start`; `ccw == false` reads rotations
    /// clockwise. Returns `None` as soon as the code exceeds `bound`.
    fn bfs_code(&self, start: Dart, ccw: bool, bound: Option<&[u32]>) -> Option<(Vec<u32>, Vec<u32>)> {
        let n = self.n();
        let mut label = vec![0u32; n];
        let mut reference = vec![u32::MAX; n];
        let mut next_label = 1u32;
        let mut code = Vec::with_capacity(self.dart_face.len() + n);
        let mut queue = VecDeque::new();
        label[start.0 as usize] = next_label;
        next_label += 1;
        reference[start.0 as usize] = start.1;
        queue.push_back(start.0);
        let mut tight = bound.is_some();
        let push = |code: &mut Vec<u32>, x: u32, tight: &mut bool| -> bool {
            if *tight {
                let b = bound.unwrap();
                let i = code.len();
                match b.get(i).map(|&y| x.cmp(&y)) {
                    Some(Ordering::Less) => *tight = false,
                    Some(Ordering::Equal) => {}
                    _ => return false,
                }
            }
            code.push(x);
            true
        };
        while let Some(u) = queue.pop_front() {
            let nb = &self.rot[u as usize];
            let k = nb.len();
            let p = nb.iter().position(|&w| w == reference[u as usize]).unwrap();
            for j in 0..k {
                let w = if ccw { nb[(p + j) % k] } else { nb[(p + k - j) % k] };
                if label[w as usize] == 0 {
                    label[w as usize] = next_label;
                    next_label += 1;
                    reference[w as usize] = u;
                    queue.push_back(w);
                }
                if !push(&mut code, label[w as usize], &mut tight) {
                    return None;
                }
            }
            if !push(&mut code, 0, &mut tight) {
                return None;
            }
        }
        Some((code, label))
    }

    /// Breadth-first vertex numbering from `start` (0-based), reading
    /// rotations counterclockwise. Used as a growth-stable address.
    pub fn bfs_labels(&self, start: Dart) -> Vec<u32> {
        self.bfs_code(start, true, None).unwrap().1.iter().map(|&l| l - 1).collect()
    }

    fn starts(&self, allow_reflection: bool) -> Vec<(Dart, bool)> {
        let ext = self.exterior_darts();
        let mut out: Vec<(Dart, bool)> = ext.iter().map(|&d| (d, true)).collect();
        if allow_reflection {
            out.extend(ext.iter().map(|&d| (d.rev(), false)));
        }
        out
    }

    /// Minimal code with the start that realises it.
    fn best_code(&self, allow_reflection: bool) -> (Vec<u32>, Vec<u32>, bool) {
        let mut best: Option<(Vec<u32>, Vec<u32>, bool)> = None;
        for (d, ccw) in self.starts(allow_reflection) {
            if let Some((code, label)) = self.bfs_code(d, ccw, best.as_ref().map(|b| b.0.as_slice())) {
                if best.as_ref().is_none_or(|b| code < b.0) {
                    best = Some((code, label, ccw));
                }
            }
        }
        best.unwrap()
    }

    /// Code invariant under relabelling and, with `allow_reflection`, under
    /// orientation reversal. The exterior face is part of the identity.
    pub fn canonical_code(&self, allow_reflection: bool) -> CanonicalForm {
        CanonicalForm(self.best_code(allow_reflection).0)
    }

    /// Relabelling `perm[old] = new` (0-based) putting the map in canonical
    /// orientation-preserving order.
    pub fn canonical_labeling(&self) -> Vec<u32> {
        self.best_code(false).1.iter().map(|&l| l - 1).collect()
    }

    /// All automorphisms fixing the exterior face setwise.
    pub fn automorphisms(&self) -> Vec<Automorphism> {
        let base = self.exterior_darts()[0];
        let (code0, label0) = self.bfs_code(base, true, None).unwrap();
        let mut out = Vec::new();
        for (d, ccw) in self.starts(true) {
            let Some((code, label)) = self.bfs_code(d, ccw, Some(&code0)) else { continue };
            if code != code0 {
                continue;
            }
            // v has label l from base; its image has label l from d.
            let mut inv = vec![0u32; self.n()];
            for (v, &l) in label.iter().enumerate() {
                inv[l as usize - 1] = v as u32;
            }
            let perm = (0..self.n()).map(|v| inv[label0[v] as usize - 1]).collect();
            out.push(Automorphism { perm, orientation_preserving: ccw });
        }
        out.sort_by(|a, b| b.orientation_preserving.cmp(&a.orientation_preserving).then(a.perm.cmp(&b.perm)));
        out
    }

    /// Brute-force check that `perm` is a map automorphism fixing the
    /// exterior face; returns its orientation character.
    pub fn check_automorphism(&self, perm: &[u32]) -> Option<bool> {
        for orient in [true, false] {
            let ok = (0..self.n() as u32).all(|u| {
                let nb = &self.rot[u as usize];
                let img = &self.rot[perm[u as usize] as usize];
                if nb.len() != img.len() {
                    return false;
                }
                nb.iter().all(|&w| {
                    let a = perm[self.succ(u, w) as usize];
                    let pw = perm[w as usize];
                    if !img.contains(&pw) {
                        return false;
                    }
                    let pu = perm[u as usize];
                    if orient { self.succ(pu, pw) == a } else { self.pred(pu, pw) == a }
                })
            });
            if ok {
                let d = self.exterior_darts()[0];
                let img = Dart(perm[d.0 as usize], perm[d.1 as usize]);
                let f = if orient { self.face_of(img) } else { self.face_of(img.rev()) };
                if f == self.exterior {
                    return Some(orient);
                }
            }
        }
        None
    }

    /// Vertex-to-interior-faces incidence (face ids).
    pub fn vertex_faces(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n()];
        for f in self.interior_faces() {
            for &v in self.face(f) {
                out[v as usize].push(f);
            }
        }
        out
    }

    /// Edge `(min, max)` to its interior faces.
    pub fn edge_faces(&self) -> HashMap<(u32, u32), Vec<u32>> {
        let mut out: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for f in self.interior_faces() {
            let c = self.face(f);
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                out.entry((a.min(b), a.max(b))).or_default().push(f);
            }
        }
        for (a, b) in self.edges() {
            out.entry((a, b)).or_default();
        }
        out
    }
}
