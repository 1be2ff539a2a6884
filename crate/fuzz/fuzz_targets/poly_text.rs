#![no_main]

//! Canonical polynomial text must round-trip exactly.

use libfuzzer_sys::fuzz_target;

use ffcovar::fq::Poly;

fuzz_target!(|input: &str| {
    if let Ok(p) = input.parse::<Poly>() {
        let text = p.to_string();
        assert_eq!(text, input);
        assert_eq!(text.parse::<Poly>().unwrap(), p);
    }
});
