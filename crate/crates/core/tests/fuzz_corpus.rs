//! Replays the checked-in fuzz seeds through the same checks as the fuzz
//! targets.

use std::path::PathBuf;

use polycycle::recognition::recognize;
use polycycle::{pmap, Graph, Polycycle};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn pmap_seeds() {
    let mut parsed = 0;
    for (name, data) in seeds("parse_pmap") {
        let Ok(pm) = pmap::parse(std::str::from_utf8(&data).unwrap()) else { continue };
        parsed += 1;
        let once = pmap::emit(pm.r, pm.q, &pm.map);
        let again = pmap::parse(&once).unwrap();
        assert_eq!(pmap::emit(again.r, again.q, &again.map), once, "{name}");
        if let Ok(p) = Polycycle::new(pm.r, pm.q, pm.map) {
            assert!(p.euler_identities_hold(), "{name}");
        }
    }
    assert!(parsed >= 6);
}

#[test]
fn edge_list_seeds() {
    let mut rejected = 0;
    for (name, data) in seeds("parse_edge_list") {
        match Graph::parse_edge_list(std::str::from_utf8(&data).unwrap()) {
            Ok((g, ids)) => {
                assert_eq!(g.n(), ids.len());
                let (h, _) = Graph::parse_edge_list(&g.to_edge_list()).unwrap();
                assert_eq!((h.n(), h.edge_count()), (g.n(), g.edge_count()), "{name}");
            }
            Err(_) => rejected += 1,
        }
    }
    assert!(rejected >= 2);
}

#[test]
fn recognize_seeds() {
    let mut accepted = 0;
    for (name, data) in seeds("recognize") {
        let (&sel, rest) = data.split_first().unwrap();
        let (r, q) = (3 + (sel % 6) as u32, 3 + (sel / 6 % 5) as u32);
        let (g, _) = Graph::parse_edge_list(std::str::from_utf8(rest).unwrap()).unwrap();
        if let Ok(rep) = recognize(&g, r, q) {
            accepted += rep.accepted() as usize;
            if let Some(p) = &rep.realization {
                assert!(p.euler_identities_hold(), "{name}");
                assert_eq!(p.map().to_graph().edge_count(), g.edge_count(), "{name}");
            }
        }
    }
    assert!(accepted >= 4);
}
