//! Homeomorphism s-expression parser: never panics, and accepted maps
//! answer basic queries without violating bijectivity.

#![no_main]

use libfuzzer_sys::fuzz_target;
use superatomic::homeo::parse_homeo;
use superatomic::ordinal::Ordinal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_homeo(2, text) {
        for i in 1..=3u64 {
            let _ = g.pi_of(i);
            let _ = g.signature(i);
        }
        for x in ["1", "w", "w+2", "w^2"] {
            let x: Ordinal = x.parse().unwrap();
            if let Ok(y) = g.eval(&x) {
                assert_eq!(g.eval_inv(&y).unwrap(), x);
            }
        }
    }
});
