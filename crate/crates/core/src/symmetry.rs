//! Automorphism groups, chirality and transitivity of finite polycycles.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::polycycle::Polycycle;
use crate::tessellation::TessellationPatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixedCell {
    RGonCenter,
    EdgeCenter,
    Vertex,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub group_order: usize,
    pub orientation_preserving_order: usize,
    pub chiral: bool,
    pub fixed_cell: FixedCell,
    pub it: bool,
    pub ig: bool,
    pub ih: bool,
    /// Common number of non-boundary edges per r-gon, if constant.
    pub t: Option<usize>,
    pub t_histogram: BTreeMap<usize, usize>,
    pub divides: bool,
    /// Order of the automorphism group of the whole skeleton, reported only
    /// when it is a Platonic graph.
    pub skeleton_group_order: Option<usize>,
}

fn orbit_count<T: Clone + Eq + std::hash::Hash>(items: &[T], images: impl Fn(usize, &T) -> T, gens: usize) -> usize {
    let index: HashMap<T, usize> = items.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in 0..gens {
        for (i, x) in items.iter().enumerate() {
            let j = index[&images(g, x)];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..items.len()).filter(|&i| find(&mut parent, i) == i).count()
}

pub fn t_statistic(poly: &Polycycle) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for t in poly.inner_edges_per_face() {
        *h.entry(t).or_insert(0) += 1;
    }
    h
}

pub fn symmetry_report(poly: &Polycycle) -> SymmetryReport {
    let m = poly.map();
    let auts = m.automorphisms();
    let group_order = auts.len();
    let orientation_preserving_order = auts.iter().filter(|a| a.orientation_preserving).count();

    let key = |vs: &[u32]| {
        let mut k = vs.to_vec();
        k.sort_unstable();
        k
    };
    let faces: Vec<Vec<u32>> = m.interior_faces().map(|f| key(m.face(f))).collect();
    let edges: Vec<Vec<u32>> = m.edges().into_iter().map(|(a, b)| key(&[a, b])).collect();
    let vertices: Vec<Vec<u32>> = (0..m.n() as u32).map(|v| vec![v]).collect();
    let image = |g: usize, x: &Vec<u32>| key(&x.iter().map(|&v| auts[g].perm[v as usize]).collect::<Vec<_>>());
    let fixed = |x: &Vec<u32>| (0..group_order).all(|g| image(g, x) == *x);

    let fixed_cell = if faces.iter().any(fixed) {
        FixedCell::RGonCenter
    } else if edges.iter().any(fixed) {
        FixedCell::EdgeCenter
    } else if vertices.iter().any(fixed) {
        FixedCell::Vertex
    } else {
        FixedCell::None
    };
    let divides = match fixed_cell {
        FixedCell::RGonCenter => (2 * poly.r as usize) % group_order == 0,
        FixedCell::EdgeCenter => 4 % group_order == 0,
        FixedCell::Vertex => (2 * poly.q as usize) % group_order == 0,
        FixedCell::None => false,
    };
    debug_assert!(divides, "group order {group_order} with fixed cell {fixed_cell:?}");

    let it = orbit_count(&edges, image, group_order) == 1;
    let ig = orbit_count(&vertices, image, group_order) == 1;
    let ih = orbit_count(&faces, image, group_order) == 1;
    let t_histogram = t_statistic(poly);
    let t = (t_histogram.len() == 1).then(|| *t_histogram.keys().next().unwrap());

    let skeleton_group_order = TessellationPatch::platonic(poly.r, poly.q)
        .filter(|p| p.map().n() == m.n() && p.faces().len() == poly.p_r() + 1)
        .map(|_| (poly.p_r() + 1) * group_order);

    SymmetryReport {
        group_order,
        orientation_preserving_order,
        chiral: orientation_preserving_order == group_order,
        fixed_cell,
        it,
        ig,
        ih,
        t,
        t_histogram,
        divides,
        skeleton_group_order,
    }
}

/// Returns `(chiral, achiral)`.
pub fn chiral_census<'a>(polys: impl IntoIterator<Item = &'a Polycycle>) -> (usize, usize) {
    polys.into_iter().fold((0, 0), |(c, a), p| if symmetry_report(p).chiral { (c + 1, a) } else { (c, a + 1) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn polygon_pair_star() {
        let s = symmetry_report(&catalog::polygon(6, 3));
        assert!(s.it && s.ig && s.ih);
        assert_eq!(s.group_order, 12);
        assert_eq!(s.t_histogram, BTreeMap::from([(0, 1)]));

        let s = symmetry_report(&catalog::adjacent_pair(5, 3));
        assert!(s.ih && !s.it && !s.ig);
        assert_eq!((s.group_order, s.fixed_cell), (4, FixedCell::EdgeCenter));
        assert_eq!(s.t, Some(1));

        let s = symmetry_report(&catalog::star(3, 5));
        assert!(s.ih);
        assert_eq!((s.group_order, s.fixed_cell), (10, FixedCell::Vertex));
    }

    #[test]
    fn platonic_skeleton_group() {
        let s = symmetry_report(&catalog::platonic(3, 3));
        assert_eq!(s.group_order, 6);
        assert_eq!(s.skeleton_group_order, Some(24));
        assert!(!s.chiral);
    }
}
