#![no_main]

use libfuzzer_sys::fuzz_target;
use polycycle::recognition::recognize;
use polycycle::Graph;

// First byte picks (r, q); the rest is an edge list.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let (r, q) = (3 + (sel % 6) as u32, 3 + (sel / 6 % 5) as u32);
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok((g, _)) = Graph::parse_edge_list(text) else { return };
    if g.n() > 64 {
        return;
    }
    if let Ok(rep) = recognize(&g, r, q) {
        if let Some(p) = &rep.realization {
            assert!(p.euler_identities_hold());
            assert_eq!(p.map().to_graph().edge_count(), g.edge_count());
        }
    }
});
