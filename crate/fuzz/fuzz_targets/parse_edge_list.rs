#![no_main]

use libfuzzer_sys::fuzz_target;
use polycycle::Graph;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((g, ids)) = Graph::parse_edge_list(text) else { return };
    assert_eq!(g.n(), ids.len());
    let (h, _) = Graph::parse_edge_list(&g.to_edge_list()).expect("emitted edge list parses");
    assert_eq!((h.n(), h.edge_count()), (g.n(), g.edge_count()));
});
