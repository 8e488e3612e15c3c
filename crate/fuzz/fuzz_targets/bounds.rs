#![no_main]

use libfuzzer_sys::fuzz_target;
use lietori::classify::Bounds;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(bounds) = text.parse::<Bounds>() else { return };
    assert!(bounds.r >= 1 && bounds.p <= 2);
    let printed = format!(
        "r={},k={},p={},q={},m={},zeta={}",
        bounds.r, bounds.k, bounds.p, bounds.q, bounds.m, bounds.zeta
    );
    assert_eq!(printed.parse::<Bounds>().expect("printed form parses"), bounds);
});
