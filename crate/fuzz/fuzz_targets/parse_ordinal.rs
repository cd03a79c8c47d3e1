//! Ordinal literal parser: never panics, and accepted input round-trips
//! through the canonical printer.

#![no_main]

use libfuzzer_sys::fuzz_target;
use superatomic::ordinal::Ordinal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(a) = text.parse::<Ordinal>() {
        let printed = a.to_string();
        let back: Ordinal = printed.parse().expect("canonical print reparses");
        assert_eq!(back, a);
    }
});
