//! Clopen set literal parser: never panics, and accepted sets are
//! canonical (printing and reparsing is the identity).

#![no_main]

use libfuzzer_sys::fuzz_target;
use superatomic::clopen::{parse_clopen, Space};
use superatomic::ordinal::Ordinal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let space = Space::new(Ordinal::omega_pow(4u64)).unwrap();
    if let Ok(u) = parse_clopen(&space, text) {
        let back = parse_clopen(&space, &u.to_string()).expect("canonical print reparses");
        assert_eq!(back, u);
        // Classification must not panic on any accepted set.
        let _ = u.homeo_class();
        let _ = u.order_type();
    }
});
