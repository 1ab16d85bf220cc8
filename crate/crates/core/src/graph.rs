//! Abstract simple graphs: the input side of recognition, and the metric
//! side of embedding.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Unweighted simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: expected `<u> <v>`")]
    BadLine { line: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: vertex id {vertex} out of range")]
    BadVertex { line: usize, vertex: u64 },
    #[error("graph is empty")]
    Empty,
}

/// Largest vertex id accepted from text input.
pub const MAX_VERTEX_ID: u64 = 1 << 20;

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `{u, v}`; duplicates are ignored, loops are not allowed.
    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert_ne!(u, v, "self-loop");
        let need = u.max(v) as usize + 1;
        if self.adj.len() < need {
            self.adj.resize(need, Vec::new());
        }
        if let Err(pos) = self.adj[u as usize].binary_search(&v) {
            self.adj[u as usize].insert(pos, v);
            let pos = self.adj[v as usize].binary_search(&u).unwrap_err();
            self.adj[v as usize].insert(pos, u);
        }
    }

    pub fn remove_edge(&mut self, u: u32, v: u32) -> bool {
        match self.adj[u as usize].binary_search(&v) {
            Ok(pos) => {
                self.adj[u as usize].remove(pos);
                let pos = self.adj[v as usize].binary_search(&u).unwrap();
                self.adj[v as usize].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Deletes vertex `v` and renumbers the rest densely, keeping order.
    pub fn remove_vertex(&self, v: u32) -> Graph {
        let n = self.n();
        let map = |x: u32| if x > v { x - 1 } else { x };
        let mut g = Graph::new(n - 1);
        for (a, b) in self.edges() {
            if a != v && b != v {
                g.add_edge(map(a), map(b));
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj
            .get(u as usize)
            .is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    pub fn bfs(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != u32::MAX)
    }

    /// All-pairs shortest path lengths (`u32::MAX` when disconnected).
    pub fn distances(&self) -> Vec<Vec<u32>> {
        (0..self.n() as u32).map(|v| self.bfs(v)).collect()
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let n = self.n();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for s in 0..n as u32 {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            let mut queue = VecDeque::new();
            dist[s as usize] = 0;
            parent[s as usize] = u32::MAX;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u as usize] + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    } else if parent[u as usize] != w {
                        let len = (dist[u as usize] + dist[w as usize] + 1) as usize;
                        best = best.min(len);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Shortest cycle through some vertex, as a vertex sequence; used as a
    /// rejection witness.
    pub fn shortest_cycle(&self) -> Option<Vec<u32>> {
        let g = self.girth()?;
        for s in 0..self.n() as u32 {
            for &t in self.neighbors(s) {
                // path s -> t avoiding edge (s, t)
                let mut dist = vec![u32::MAX; self.n()];
                let mut prev = vec![u32::MAX; self.n()];
                let mut queue = VecDeque::new();
                dist[s as usize] = 0;
                queue.push_back(s);
                while let Some(u) = queue.pop_front() {
                    for &w in self.neighbors(u) {
                        if u == s && w == t {
                            continue;
                        }
                        if dist[w as usize] == u32::MAX {
                            dist[w as usize] = dist[u as usize] + 1;
                            prev[w as usize] = u;
                            queue.push_back(w);
                        }
                    }
                }
                if dist[t as usize] as usize + 1 == g {
                    let mut cycle = vec![t];
                    let mut x = t;
                    while x != s {
                        x = prev[x as usize];
                        cycle.push(x);
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
            }
        }
        None
    }

    /// Parses `<u> <v>` lines. Blank lines and `#` comments are skipped.
    /// Ids are renumbered densely in order of first appearance.
    pub fn parse_edge_list(text: &str) -> Result<(Graph, Vec<u64>), GraphParseError> {
        let mut ids: Vec<u64> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(GraphParseError::BadLine { line: i + 1 });
            };
            let a: u64 = a.parse().map_err(|_| GraphParseError::BadLine { line: i + 1 })?;
            let b: u64 = b.parse().map_err(|_| GraphParseError::BadLine { line: i + 1 })?;
            for x in [a, b] {
                if x > MAX_VERTEX_ID {
                    return Err(GraphParseError::BadVertex { line: i + 1, vertex: x });
                }
            }
            if a == b {
                return Err(GraphParseError::SelfLoop { line: i + 1, vertex: a as u32 });
            }
            let mut id = |x: u64| {
                *index.entry(x).or_insert_with(|| {
                    ids.push(x);
                    ids.len() as u32 - 1
                })
            };
            let (u, v) = (id(a), id(b));
            edges.push((u, v));
        }
        if ids.is_empty() {
            return Err(GraphParseError::Empty);
        }
        Ok((Graph::from_edges(ids.len(), &edges), ids))
    }

    /// Emits `<u> <v>` lines with 1-based ids.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={})", self.n(), self.edge_count())
    }
}

/// Finds an isomorphism `a -> b` by degree-pruned backtracking.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<u32>> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.n() as u32).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n() as u32).map(|v| b.degree(v)).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    // BFS order keeps the partial map connected, which prunes well.
    let order = bfs_order(a);
    let mut map = vec![u32::MAX; a.n()];
    let mut used = vec![false; b.n()];
    fn go(
        k: usize,
        order: &[u32],
        a: &Graph,
        b: &Graph,
        sa: &[usize],
        sb: &[usize],
        map: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..b.n() as u32 {
            if used[w as usize] || sa[v as usize] != sb[w as usize] {
                continue;
            }
            let ok = a.neighbors(v).iter().all(|&x| {
                let mx = map[x as usize];
                mx == u32::MAX || b.has_edge(w, mx)
            }) && (0..a.n() as u32).all(|x| {
                let mx = map[x as usize];
                mx == u32::MAX || a.has_edge(v, x) == b.has_edge(w, mx)
            });
            if !ok {
                continue;
            }
            map[v as usize] = w;
            used[w as usize] = true;
            if go(k + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            map[v as usize] = u32::MAX;
            used[w as usize] = false;
        }
        false
    }
    go(0, &order, a, b, &sa, &sb, &mut map, &mut used).then_some(map)
}

fn bfs_order(g: &Graph) -> Vec<u32> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() as u32 {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in g.neighbors(u) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}
