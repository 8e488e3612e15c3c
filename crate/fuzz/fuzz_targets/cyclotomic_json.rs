#![no_main]

use libfuzzer_sys::fuzz_target;
use lietori::exactnum::Cyclotomic;

fuzz_target!(|data: &[u8]| {
    let Ok(x) = serde_json::from_slice::<Cyclotomic>(data) else { return };
    let text = serde_json::to_string(&x).expect("serializable");
    let back: Cyclotomic = serde_json::from_str(&text).expect("serialized form parses");
    assert_eq!(back, x);
    if !x.is_zero() {
        let inv = x.inverse().expect("nonzero elements are invertible");
        assert!((&x * &inv).is_one());
    }
});
