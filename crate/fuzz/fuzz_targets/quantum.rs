#![no_main]

use libfuzzer_sys::fuzz_target;
use lietori::io::{format_quantum, parse_quantum};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(f) = parse_quantum(text) else { return };
    assert!(f.order > 0);
    assert_eq!(parse_quantum(&format_quantum(&f)).expect("printed form parses"), f);
    let (e, m) = f.reduced();
    assert!(e < m && f.root_order() == m);
});
