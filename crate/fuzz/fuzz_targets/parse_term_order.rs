#![no_main]

use libfuzzer_sys::fuzz_target;
use symideal::poly::TermOrder;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(order) = text.parse::<TermOrder>() {
        let again: TermOrder = order.to_string().parse().expect("printed order re-parses");
        assert_eq!(again, order);
    }
});
