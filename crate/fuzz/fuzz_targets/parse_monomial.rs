#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::poly::parse_monomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_monomial(text) {
        assert_eq!(parse_monomial(&m.to_string()).expect("printed monomial re-parses"), m);
    }
});
