#![no_main]

use libfuzzer_sys::fuzz_target;
use lietori::io::ModelFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = ModelFile::from_json(text) else { return };
    // accepted files re-serialize to an equivalent accepted file
    let again = ModelFile::from_json(&file.to_json()).expect("re-serialized model file parses");
    assert_eq!(again.params(), file.params());
    let params = file.params().expect("checked by from_json");
    let _ = params.validate();
});
