#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::chains::ChainSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = ChainSpec::from_json(text) {
        let json = spec.to_json().expect("valid specs serialize");
        let again = ChainSpec::from_json(&json).expect("serialized spec re-parses");
        assert_eq!(again.to_json().unwrap(), json);
    }
});
