//! Subgraph containment in (r^q): partial, induced and isometric.

use serde::Serialize;

use crate::graph::Graph;
use crate::homomorphism::{project, HomError};
use crate::polycycle::Polycycle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Partial,
    Induced,
    Isometric,
}

/// Largest patch grown for containment checks in infinite tessellations.
const MAX_PATCH_VERTICES: usize = 200_000;

/// Decides whether the proper polycycle's image in (r^q) is induced or
/// isometric (partial always holds for proper polycycles).
pub fn subgraph_test(poly: &Polycycle, mode: Mode) -> Result<bool, HomError> {
    let mut h = project(poly)?;
    if !h.is_proper() {
        return Err(HomError::NotProper);
    }
    let g = poly.map().to_graph();
    if mode == Mode::Partial {
        return Ok(true);
    }
    if !h.patch.is_closed() {
        let extra = match mode {
            Mode::Induced => 1,
            _ => g.distances().iter().flatten().copied().max().unwrap_or(0) as usize / 2 + 1,
        };
        let target = h.patch.coronas() + extra;
        while h.patch.coronas() < target && h.patch.map().n() < MAX_PATCH_VERTICES {
            h.patch.grow_corona()?;
        }
    }
    let big = h.patch.map().to_graph();
    let img = &h.vertex_image;
    Ok(match mode {
        Mode::Partial => true,
        Mode::Induced => induced_under(&g, &big, img),
        Mode::Isometric => isometric_under(&g, &big, img),
    })
}

fn induced_under(small: &Graph, big: &Graph, img: &[u32]) -> bool {
    (0..small.n() as u32).all(|u| {
        (u + 1..small.n() as u32).all(|v| small.has_edge(u, v) == big.has_edge(img[u as usize], img[v as usize]))
    })
}

fn isometric_under(small: &Graph, big: &Graph, img: &[u32]) -> bool {
    (0..small.n() as u32).all(|u| {
        let ds = small.bfs(u);
        let db = big.bfs(img[u as usize]);
        (0..small.n()).all(|v| ds[v] == db[img[v] as usize])
    })
}

/// Backtracking search for an injective map `small -> big` preserving
/// edges, and non-edges in induced mode, and distances in isometric mode.
pub fn find_embedding(small: &Graph, big: &Graph, mode: Mode) -> Option<Vec<u32>> {
    let n = small.n();
    if n > big.n() {
        return None;
    }
    let order = {
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for s in 0..n as u32 {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in small.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    };
    let ds = if mode == Mode::Isometric { small.distances() } else { Vec::new() };
    let db = if mode == Mode::Isometric { big.distances() } else { Vec::new() };
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; big.n()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[u32],
        small: &Graph,
        big: &Graph,
        mode: Mode,
        ds: &[Vec<u32>],
        db: &[Vec<u32>],
        map: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        for w in 0..big.n() as u32 {
            if used[w as usize] || big.degree(w) < small.degree(u) {
                continue;
            }
            let ok = order[..k].iter().all(|&x| {
                let mx = map[x as usize];
                let e = small.has_edge(u, x);
                let f = big.has_edge(w, mx);
                match mode {
                    Mode::Partial => !e || f,
                    Mode::Induced => e == f,
                    Mode::Isometric => ds[u as usize][x as usize] == db[w as usize][mx as usize],
                }
            });
            if !ok {
                continue;
            }
            map[u as usize] = w;
            used[w as usize] = true;
            if go(k + 1, order, small, big, mode, ds, db, map, used) {
                return true;
            }
            used[w as usize] = false;
            map[u as usize] = u32::MAX;
        }
        false
    }
    go(0, &order, small, big, mode, &ds, &db, &mut map, &mut used).then_some(map)
}
