#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::poly::parse_polynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polynomial(text) {
        let again = parse_polynomial(&p.to_string()).expect("printed polynomial re-parses");
        assert_eq!(again, p);
    }
});
