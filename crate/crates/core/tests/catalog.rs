use std::collections::BTreeSet;

use polycycle::catalog::{self, Deletion};
use polycycle::enumeration::{enumerate, Filter};
use polycycle::homomorphism::{project, Classification};
use polycycle::recognition::{count_r_cycles, recognize, Condition, Verdict};
use polycycle::{CanonicalForm, Graph, Polycycle};

fn code(p: &Polycycle) -> CanonicalForm {
    p.map().canonical_code(true)
}

/// Number of r-cycles by trying every r-subset and every cyclic order.
fn brute_r_cycles(g: &Graph, r: usize) -> usize {
    fn perms(rest: &mut Vec<u32>, path: &mut Vec<u32>, g: &Graph, count: &mut usize) {
        if rest.is_empty() {
            if g.has_edge(*path.last().unwrap(), path[0]) {
                *count += 1;
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            if g.has_edge(*path.last().unwrap(), v) {
                path.push(v);
                perms(rest, path, g, count);
                path.pop();
            }
            rest.insert(i, v);
        }
    }
    let n = g.n() as u32;
    let mut total = 0;
    let mut subset = Vec::new();
    fn subsets(start: u32, n: u32, r: usize, subset: &mut Vec<u32>, g: &Graph, total: &mut usize) {
        if subset.len() == r {
            let mut rest = subset[1..].to_vec();
            let mut path = vec![subset[0]];
            let mut c = 0;
            perms(&mut rest, &mut path, g, &mut c);
            *total += c / 2;
            return;
        }
        for v in start..n {
            subset.push(v);
            subsets(v + 1, n, r, subset, g, total);
            subset.pop();
        }
    }
    subsets(0, n, r, &mut subset, g, &mut total);
    total
}

#[test]
fn r_cycle_counts_match_brute_force() {
    for (r, q) in [(3, 3), (4, 3), (3, 4), (5, 3)] {
        let g = catalog::platonic_graph(r, q);
        assert_eq!(count_r_cycles(&g, r as usize), brute_r_cycles(&g, r as usize), "({r},{q})");
    }
    let g = catalog::vertex_split(4).unwrap().map().to_graph();
    assert_eq!(count_r_cycles(&g, 3), brute_r_cycles(&g, 3));
}

#[test]
fn deleted_platonic_graphs_are_recognised() {
    for (r, q, what) in [(4, 3, Deletion::Edge), (4, 3, Deletion::Vertex), (3, 4, Deletion::C3), (3, 5, Deletion::Vertex)] {
        let p = catalog::platonic_minus(r, q, what).unwrap();
        let rep = recognize(&p.map().to_graph(), r, q).unwrap();
        assert_eq!(rep.verdict, Verdict::Accepted, "({r},{q}) {what:?}");
        assert_eq!(code(rep.realization.as_ref().unwrap()), code(&p));
    }
}

#[test]
fn platonic_skeletons_have_one_realization_per_face() {
    for (r, q, faces) in [(3, 3, 4), (4, 3, 6), (3, 4, 8), (5, 3, 12), (3, 5, 20)] {
        let rep = recognize(&catalog::platonic_graph(r, q), r, q).unwrap();
        assert!(rep.accepted() && rep.platonic);
        assert_eq!(rep.platonic_realization_count, Some(faces));
    }
}

#[test]
fn bowtie_fails_the_second_condition() {
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
    let rep = recognize(&g, 3, 4).unwrap();
    assert_eq!(rep.verdict, Verdict::Rejected);
    assert_eq!(rep.condition, Some(Condition::Ii));
}

#[test]
fn all_33_polycycles() {
    let c = enumerate(3, 3, 6, Filter::All, 100_000).unwrap();
    let found: BTreeSet<_> = c.classes().map(|c| c.code.clone()).collect();
    let want: BTreeSet<_> = [
        catalog::platonic(3, 3),
        catalog::platonic_minus(3, 3, Deletion::Vertex).unwrap(),
        catalog::platonic_minus(3, 3, Deletion::Edge).unwrap(),
    ]
    .iter()
    .map(code)
    .collect();
    assert_eq!(found, want);
}

#[test]
fn all_43_polycycles_are_cube_pieces_and_ladders() {
    let c = enumerate(4, 3, 10, Filter::All, 1_000_000).unwrap();
    let found: BTreeSet<_> = c.classes().map(|c| c.code.clone()).collect();
    let mut want: BTreeSet<_> = [
        catalog::platonic(4, 3),
        catalog::platonic_minus(4, 3, Deletion::Vertex).unwrap(),
        catalog::platonic_minus(4, 3, Deletion::Edge).unwrap(),
    ]
    .iter()
    .map(code)
    .collect();
    want.extend((2..=11).map(|n| code(&catalog::ladder(n))));
    assert_eq!(found, want);
}

#[test]
fn first_helicenes() {
    let p = catalog::ladder(5);
    assert_eq!(p.p_r(), 4);
    assert!(!project(&p).unwrap().is_proper());
    assert!(project(&catalog::ladder(4)).unwrap().is_proper());
    for (r, q, first) in [(4, 3, 4), (3, 4, 5), (5, 3, 5), (3, 5, 7)] {
        let c = enumerate(r, q, first, Filter::Helicene, 1_000_000).unwrap();
        let counts = c.counts();
        assert!(counts[..first - 1].iter().all(|&x| x == 0) && counts[first - 1] > 0, "({r},{q}) {counts:?}");
    }
}

#[test]
fn vertex_split_helicenes() {
    let vs4 = catalog::vertex_split(4).unwrap();
    assert_eq!(vs4.map().n(), 7);
    let h = project(&vs4).unwrap();
    assert_eq!(h.classify(), Classification::Helicene { vertex_overlap_only: true });
    let vs5 = catalog::vertex_split(5).unwrap();
    let h = project(&vs5).unwrap();
    assert!(!h.is_proper() && h.edge_injective);
}
