#![no_main]

use libfuzzer_sys::fuzz_target;
use polycycle::{pmap, Polycycle};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(pm) = pmap::parse(text) else { return };
    let once = pmap::emit(pm.r, pm.q, &pm.map);
    let again = pmap::parse(&once).expect("emitted PMAP parses");
    assert_eq!(pmap::emit(again.r, again.q, &again.map), once);
    if let Ok(p) = Polycycle::new(pm.r, pm.q, pm.map) {
        assert!(p.euler_identities_hold());
    }
});
