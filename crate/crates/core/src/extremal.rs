//! Maximal numbers of interior vertices, Euler-type bounds, extremal animals
//! and non-extendibility.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::enumeration::{attach, attachments, children, enumerate, enumerate_pruned, Attachment, EnumError, Filter};
use crate::polycycle::Polycycle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtremalError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("closed form known only for (5,3) and (3,5), not ({0},{1})")]
    UnsupportedPair(u32, u32),
    #[error("{0} faces have no interior vertex")]
    PreconditionUnmet(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalRecord {
    pub r: u32,
    pub q: u32,
    pub x: usize,
    pub n_of_x: usize,
    /// Canonical codes (hex) of all polycycles attaining the maximum.
    pub witnesses: Vec<String>,
    #[serde(serialize_with = "ser_ratio")]
    pub density: Ratio<usize>,
    #[serde(skip)]
    pub witness_polys: Vec<Polycycle>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<usize>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

const BEAM: usize = 48;

/// A lower bound for n(x) from a beam search keeping the best partial
/// polycycles at each size.
fn beam_bound(r: u32, q: u32, x: usize) -> usize {
    let seed = Polycycle::from_faces(r, q, r as usize, &[(0..r).collect()]).expect("r-gon");
    let mut beam = vec![seed];
    let mut best = 0;
    for p in 1..=x {
        if p > 1 {
            let mut kids: Vec<Polycycle> = beam.iter().flat_map(children).collect();
            if kids.is_empty() {
                return 0;
            }
            kids.sort_by_key(|k| std::cmp::Reverse(k.n_int()));
            kids.truncate(BEAM);
            beam = kids;
        }
        best = beam.iter().map(Polycycle::n_int).max().unwrap_or(0);
    }
    best
}

/// Exact n(x): maximum number of interior vertices over (r,q)-polycycles
/// with x faces.
pub fn n_max(r: u32, q: u32, x: usize, budget: usize) -> Result<ExtremalRecord, ExtremalError> {
    let lower = beam_bound(r, q, x);
    let gain = r as usize - 2;
    let keep = |p: usize, c: &crate::enumeration::Class| c.poly.n_int() + (x - p) * gain >= lower;
    let census = enumerate_pruned(r, q, x, budget, &keep)?;
    let level = &census.levels[x - 1];
    let n_of_x = level.iter().map(|c| c.poly.n_int()).max().unwrap_or(0);
    let best: Vec<_> = level.iter().filter(|c| c.poly.n_int() == n_of_x).collect();
    Ok(ExtremalRecord {
        r,
        q,
        x,
        n_of_x,
        witnesses: best.iter().map(|c| c.code.hex()).collect(),
        density: Ratio::new(n_of_x, x.max(1)),
        witness_polys: best.iter().map(|c| c.poly.clone()).collect(),
    })
}

/// Closed forms for n(x) in the two non-trivial spheric cases.
pub fn formula_n(r: u32, q: u32, x: usize) -> Result<usize, ExtremalError> {
    let x = x as i64;
    let v = match (r, q) {
        (5, 3) => match x {
            9 => 10,
            10 => 12,
            11 => 15,
            _ => match x % 10 {
                0 | 8 | 9 => x,
                6 | 7 => x - 1,
                _ => x - 2,
            },
        },
        (3, 5) => match x {
            18 => 8,
            19 => 9,
            _ if x % 18 == 0 || x % 18 == 1 => x / 3,
            10 | 12 | 13 | 14 | 28 | 30 | 31 | 32 | 33 | 35 => (x + 1) / 3,
            15 | 16 | 17 | 34 => (x + 4) / 3,
            _ => (x - 2).div_euclid(3),
        },
        _ => return Err(ExtremalError::UnsupportedPair(r, q)),
    };
    Ok(v.max(0) as usize)
}

/// `p/q <= n_int < r p/q` for polycycles whose faces all carry an interior
/// vertex.
pub fn bounds_check(poly: &Polycycle) -> Result<bool, ExtremalError> {
    let missing = poly.faces_without_interior_vertex();
    if missing > 0 {
        return Err(ExtremalError::PreconditionUnmet(missing));
    }
    let (p, n) = (poly.p_r(), poly.n_int());
    let (r, q) = (poly.r as usize, poly.q as usize);
    Ok(p <= q * n && q * n < r * p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnimalFamily {
    Squares,
    Hexagons,
    Triangles,
}

impl AnimalFamily {
    pub fn pair(self) -> (u32, u32) {
        match self {
            AnimalFamily::Squares => (4, 4),
            AnimalFamily::Hexagons => (6, 3),
            AnimalFamily::Triangles => (3, 6),
        }
    }
}

fn ceil_sqrt(n: usize) -> usize {
    let mut m = (n as f64).sqrt() as usize;
    while m * m < n {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= n {
        m -= 1;
    }
    m
}

/// Minimum number of edges of a polyomino, polyhex or polyiamond with `p`
/// cells.
pub fn animal_edge_formula(family: AnimalFamily, p: usize) -> usize {
    match family {
        AnimalFamily::Squares => 2 * p + ceil_sqrt(4 * p),
        AnimalFamily::Hexagons => 3 * p + ceil_sqrt(12 * p - 3),
        AnimalFamily::Triangles => {
            let m = (0..).find(|&m: &usize| 2 * m >= p && (2 * m - p).pow(2) >= 6 * p).unwrap();
            p + m
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnimalRecord {
    pub faces: usize,
    pub min_edges: usize,
    pub formula: usize,
}

/// Minimal edge counts over proper polycycles of the family, for every face
/// count up to `max_faces`.
pub fn extremal_animal_edges(family: AnimalFamily, max_faces: usize, budget: usize) -> Result<Vec<AnimalRecord>, ExtremalError> {
    let (r, q) = family.pair();
    let census = enumerate(r, q, max_faces, Filter::Proper, budget)?;
    Ok(census
        .levels
        .iter()
        .enumerate()
        .map(|(i, level)| AnimalRecord {
            faces: i + 1,
            min_edges: level.iter().map(|c| c.poly.map().edge_count()).min().unwrap_or(0),
            formula: animal_edge_formula(family, i + 1),
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Extendibility {
    pub non_extendible: bool,
    pub witness: Option<Attachment>,
}

pub fn non_extendible(poly: &Polycycle) -> Extendibility {
    let witness = attachments(poly).into_iter().find(|&a| attach(poly, a).is_some());
    Extendibility { non_extendible: witness.is_none(), witness }
}
