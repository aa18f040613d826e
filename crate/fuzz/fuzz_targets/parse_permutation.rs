#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::poly::Permutation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sigma) = text.parse::<Permutation>() {
        let again: Permutation = sigma.to_string().parse().expect("printed permutation re-parses");
        assert_eq!(again, sigma);
    }
});
