//! PMAP text format: a header `pmap <r> <q> <n>`, one line `<v>: <ccw
//! neighbours>` per vertex (1-based ids), and an optional `outer: <u> <v>`
//! line naming a dart with the exterior face on its left.

use thiserror::Error;

use crate::map::{Dart, MapError, PlaneMap};

/// Largest vertex count accepted by the parser.
pub const MAX_PMAP_VERTICES: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PmapError {
    #[error("line 1: expected `pmap <r> <q> <n>`")]
    Header,
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("vertex {0} has no rotation line")]
    MissingVertex(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Clone, Debug)]
pub struct Pmap {
    pub r: u32,
    pub q: u32,
    pub map: PlaneMap,
}

fn line_err(line: usize, msg: impl Into<String>) -> PmapError {
    PmapError::Line { line, msg: msg.into() }
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<u32, PmapError> {
    let v: usize = tok.parse().map_err(|_| line_err(line, format!("bad vertex id `{tok}`")))?;
    if v == 0 || v > n {
        return Err(line_err(line, format!("vertex id {v} out of range 1..={n}")));
    }
    Ok((v - 1) as u32)
}

pub fn parse(text: &str) -> Result<Pmap, PmapError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(PmapError::Header)?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 4 || h[0] != "pmap" {
        return Err(PmapError::Header);
    }
    let r: u32 = h[1].parse().map_err(|_| PmapError::Header)?;
    let q: u32 = h[2].parse().map_err(|_| PmapError::Header)?;
    let n: usize = h[3].parse().map_err(|_| PmapError::Header)?;
    if r < 3 || q < 3 || n == 0 || n > MAX_PMAP_VERTICES || r > 1000 || q > 1000 {
        return Err(PmapError::Header);
    }
    let mut rot: Vec<Option<Vec<u32>>> = vec![None; n];
    let mut outer = None;
    for (i, l) in lines {
        let line = i + 1;
        if outer.is_some() {
            return Err(line_err(line, "content after `outer:` line"));
        }
        let (head, rest) = l.split_once(':').ok_or_else(|| line_err(line, "missing `:`"))?;
        let head = head.trim();
        if head == "outer" {
            let t: Vec<&str> = rest.split_whitespace().collect();
            if t.len() != 2 {
                return Err(line_err(line, "outer needs two vertex ids"));
            }
            outer = Some(Dart(parse_id(t[0], n, line)?, parse_id(t[1], n, line)?));
            continue;
        }
        let v = parse_id(head, n, line)?;
        if rot[v as usize].is_some() {
            return Err(line_err(line, format!("duplicate rotation for vertex {}", v + 1)));
        }
        let nb = rest
            .split_whitespace()
            .map(|t| parse_id(t, n, line))
            .collect::<Result<Vec<_>, _>>()?;
        if nb.len() > n {
            return Err(line_err(line, "rotation longer than vertex count"));
        }
        rot[v as usize] = Some(nb);
    }
    let rot = rot
        .into_iter()
        .enumerate()
        .map(|(v, nb)| nb.ok_or(PmapError::MissingVertex(v + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let map = PlaneMap::from_rotation(rot, outer)?;
    Ok(Pmap { r, q, map })
}

/// Emits `map` in canonical numbering: every rotation starts at its
/// smallest neighbour and the outer dart is `1 2`.
pub fn emit(r: u32, q: u32, map: &PlaneMap) -> String {
    let m = map.relabel(&map.canonical_labeling());
    emit_raw(r, q, &m)
}

/// Emits `map` with its current numbering.
pub fn emit_raw(r: u32, q: u32, map: &PlaneMap) -> String {
    let mut out = format!("pmap {r} {q} {}\n", map.n());
    for v in 0..map.n() as u32 {
        let nb = map.rotation(v);
        let s = (0..nb.len()).min_by_key(|&i| nb[i]).unwrap();
        out.push_str(&format!("{}:", v + 1));
        for j in 0..nb.len() {
            out.push_str(&format!(" {}", nb[(s + j) % nb.len()] + 1));
        }
        out.push('\n');
    }
    let d = map.exterior_darts()[0];
    let d = map
        .exterior_darts()
        .into_iter()
        .min()
        .unwrap_or(d);
    out.push_str(&format!("outer: {} {}\n", d.0 + 1, d.1 + 1));
    out
}
