//! Class and pair literal parser: never panics, round-trips, and the
//! pair calculus stays total on accepted values.

#![no_main]

use libfuzzer_sys::fuzz_target;
use superatomic::clopen::HomeoClass;
use superatomic::sigcalc::{signed, sim, ClassPair};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = text.parse::<HomeoClass>() {
        assert_eq!(c.to_string().parse::<HomeoClass>().unwrap(), c);
    }
    if let Ok(p) = text.parse::<ClassPair>() {
        assert_eq!(p.to_string().parse::<ClassPair>().unwrap(), p.clone());
        assert!(sim(&p, &p));
        let _ = signed(&p);
        let _ = p.add(&p.neg());
    }
});
