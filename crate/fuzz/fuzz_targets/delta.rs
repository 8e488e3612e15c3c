#![no_main]

use libfuzzer_sys::fuzz_target;
use lietori::io::parse_delta;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(delta) = parse_delta(text) else { return };
    let n = delta[0].len();
    assert!(delta.iter().all(|v| v.len() == n));
    let printed: Vec<String> =
        delta.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(parse_delta(&printed.join(";")).expect("printed form parses"), delta);
});
