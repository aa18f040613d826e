#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::poly::parse_polynomial_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = parse_polynomial_list(text) {
        let printed: Vec<String> = list.iter().map(|p| p.to_string()).collect();
        let again = parse_polynomial_list(&printed.join("\n")).expect("printed list re-parses");
        assert_eq!(again, list);
    }
});
