use polycycle::catalog::{self, Deletion};
use polycycle::embedding::{
    closed_zone_count, embed, forbidden_35, forbidden_53, forbidden_screen_35, forbidden_screen_53, zones,
};
use polycycle::enumeration::{enumerate, Filter};
use polycycle::extremal::{bounds_check, n_max, non_extendible};
use polycycle::homomorphism::{is_proper, reciprocal};
use polycycle::subgraph::{subgraph_test, Mode};
use polycycle::symmetry::{chiral_census, symmetry_report, FixedCell};
use polycycle::{CanonicalForm, Polycycle};

fn code(p: &Polycycle) -> CanonicalForm {
    p.map().canonical_code(true)
}

#[test]
fn platonic_dimensions() {
    for (r, q, scale, dim) in [(3, 3, 2, 3), (4, 3, 1, 3), (3, 4, 2, 4), (3, 5, 2, 6), (5, 3, 2, 10)] {
        let c = embed(&catalog::platonic(r, q)).certificate().cloned().unwrap();
        assert_eq!((c.scale, c.dimension), (scale, dim), "({r},{q})");
    }
}

#[test]
fn the_ten_listed_non_embeddables() {
    let mut list = vec![
        catalog::platonic_minus(4, 3, Deletion::Edge).unwrap(),
        catalog::platonic_minus(3, 4, Deletion::Edge).unwrap(),
        catalog::platonic_minus(5, 3, Deletion::Edge).unwrap(),
        catalog::platonic_minus(3, 5, Deletion::Edge).unwrap(),
        catalog::vertex_split(4).unwrap(),
        catalog::vertex_split(5).unwrap(),
    ];
    list.extend(forbidden_53());
    list.extend(forbidden_35());
    assert!(list.iter().all(|p| !embed(p).is_embeddable()));
    let helicenes: Vec<bool> = list.iter().map(|p| !is_proper(p)).collect();
    assert_eq!(helicenes, [false, false, false, false, true, true, false, false, false, false]);
    // among the proper ones only one forbidden polycycle of each pair is induced
    let induced: Vec<bool> = list
        .iter()
        .filter(|p| is_proper(p))
        .map(|p| subgraph_test(p, Mode::Induced).unwrap())
        .collect();
    assert_eq!(induced.iter().filter(|&&b| b).count(), 2);
    assert_eq!(induced[..4], [false; 4]);
}

#[test]
fn e_chain_embeds() {
    for i in 1..=3 {
        assert!(embed(&catalog::e_family(i)).is_embeddable(), "E_{i}");
    }
    assert!(!embed(&catalog::e_family(4)).is_embeddable());
}

#[test]
fn proper_53_embeddable_by_size() {
    let c = enumerate(5, 3, 11, Filter::Proper, 1_000_000).unwrap();
    let emb: Vec<usize> = c.levels.iter().map(|l| l.iter().filter(|c| embed(&c.poly).is_embeddable()).count()).collect();
    assert_eq!(emb, [1, 1, 2, 4, 6, 9, 3, 0, 0, 0, 1]);
}

#[test]
fn outerplanar_polycycles_embed() {
    for (r, q) in [(5, 3), (3, 5), (4, 4), (7, 3), (3, 6)] {
        let c = enumerate(r, q, 7, Filter::Outerplanar, 1_000_000).unwrap();
        assert!(c.classes().all(|c| embed(&c.poly).is_embeddable()), "({r},{q})");
    }
}

#[test]
fn screen_53_examples() {
    let c = enumerate(5, 3, 3, Filter::All, 1000).unwrap();
    assert!(c.classes().all(|c| forbidden_screen_53(&c.poly).unwrap()));
    assert!(forbidden_53().iter().all(|f| !forbidden_screen_53(f).unwrap()));
}

/// The (3,5) screen is a conjectured characterisation; these tests only
/// check consistency with the embedding computation.
#[test]
fn conjecture_consistency_35() {
    let c = enumerate(3, 5, 14, Filter::All, 5_000_000).unwrap();
    for cl in c.classes() {
        assert_eq!(forbidden_screen_35(&cl.poly).unwrap(), embed(&cl.poly).is_embeddable(), "{}", cl.code.hex());
    }
    let nonemb_small: Vec<usize> =
        c.levels[..10].iter().map(|l| l.iter().filter(|c| !embed(&c.poly).is_embeddable()).count()).collect();
    assert_eq!(nonemb_small.iter().sum::<usize>(), 1);
    let f = forbidden_35();
    assert_eq!(f.iter().map(|p| p.p_r()).collect::<Vec<_>>(), [10, 12]);
    assert!(f.iter().all(is_proper));
    let excluded = [catalog::platonic(3, 5), catalog::platonic_minus(3, 5, Deletion::Vertex).unwrap()];
    for p in &excluded {
        assert!(embed(p).is_embeddable());
        assert!(!forbidden_screen_35(p).unwrap());
    }
}

#[test]
fn zone_counts() {
    assert_eq!(closed_zone_count(&catalog::platonic(5, 3)), 5);
    assert_eq!(closed_zone_count(&catalog::platonic(3, 5)), 3);
    assert_eq!(closed_zone_count(&catalog::platonic_minus(3, 5, Deletion::Vertex).unwrap()), 1);
    // every edge lies on one zone for even r and on two for odd r
    for (r, q) in [(4, 4), (5, 3), (3, 5), (6, 3)] {
        let p = catalog::corona(r, q);
        let total: usize = zones(&p).iter().map(|z| z.edges.len()).sum();
        let per_edge = if r % 2 == 0 { 1 } else { 2 };
        assert_eq!(total, per_edge * p.map().edge_count(), "({r},{q})");
    }
}

#[test]
fn extremal_multiplicities_35() {
    let counts: Vec<usize> = (1..=16).map(|x| n_max(3, 5, x, 10_000_000).unwrap().witnesses.len()).collect();
    for (i, &c) in counts.iter().enumerate() {
        let x = i + 1;
        let want = match x {
            9 | 11 => 2,
            4 | 7 | 13 | 16 => 3,
            _ => 1,
        };
        assert_eq!(c, want, "x = {x}");
    }
}

#[test]
fn extremal_witnesses_are_proper_and_reciprocal_extremal() {
    for x in 5..=14 {
        let rec = n_max(3, 5, x, 10_000_000).unwrap();
        for w in &rec.witness_polys {
            assert!(is_proper(w) && w.euler_identities_hold());
            let back = reciprocal(w).unwrap();
            let other = n_max(3, 5, back.p_r(), 10_000_000).unwrap();
            assert_eq!(back.n_int(), other.n_of_x, "x = {x}");
        }
    }
}

#[test]
fn unique_extremal_53_when_n_equals_x() {
    for x in [8, 9, 10] {
        let rec = n_max(5, 3, x, 10_000_000).unwrap();
        if rec.n_of_x == x {
            assert_eq!(rec.witnesses.len(), 1);
        }
    }
}

#[test]
fn bound_examples() {
    let d = catalog::platonic(5, 3);
    assert_eq!((d.p_r(), d.n_int()), (11, 15));
    assert_eq!(bounds_check(&d), Ok(true));
    let i = catalog::platonic(3, 5);
    assert_eq!((i.p_r(), i.n_int()), (19, 9));
    assert_eq!(bounds_check(&i), Ok(true));
}

#[test]
fn extension_examples() {
    assert!(non_extendible(&catalog::vertex_split(4).unwrap()).non_extendible);
    let e = non_extendible(&catalog::polygon(6, 3));
    assert!(!e.non_extendible && e.witness.is_some());
}

#[test]
fn symmetry_examples() {
    let s = symmetry_report(&catalog::star(4, 4));
    assert_eq!((s.group_order, s.fixed_cell), (8, FixedCell::Vertex));
    let c = enumerate(3, 3, 3, Filter::All, 1000).unwrap();
    assert_eq!(chiral_census(c.classes().map(|c| &c.poly)), (0, 3));
    let c = enumerate(5, 3, 11, Filter::Proper, 1_000_000).unwrap();
    assert_eq!(chiral_census(c.classes().map(|c| &c.poly)), (12, 27));
    let orders: Vec<Option<usize>> = [(3, 3), (4, 3), (3, 4), (5, 3), (3, 5)]
        .iter()
        .map(|&(r, q)| symmetry_report(&catalog::platonic(r, q)).skeleton_group_order)
        .collect();
    assert_eq!(orders, [Some(24), Some(48), Some(48), Some(120), Some(120)]);
}

#[test]
fn isohedral_polycycles_have_constant_t() {
    for (r, q) in [(3, 3), (4, 3), (3, 4), (5, 3), (3, 5)] {
        let c = enumerate(r, q, 8, Filter::All, 1_000_000).unwrap();
        for cl in c.classes() {
            let s = symmetry_report(&cl.poly);
            if s.ih {
                assert!(s.t.is_some());
            }
        }
    }
    let s = symmetry_report(&catalog::adjacent_pair(5, 3));
    assert_eq!(s.t_histogram.into_iter().collect::<Vec<_>>(), [(1, 2)]);
    assert_eq!(code(&catalog::star(3, 3)), code(&catalog::platonic(3, 3)));
}
