#![no_main]

use libfuzzer_sys::fuzz_target;

use ffcovar_cli::{parse_complex, parse_int_list};

fuzz_target!(|input: &str| {
    if let Ok(z) = parse_complex(input) {
        assert!(z.is_finite());
        assert_eq!(parse_complex(&z.to_string()).unwrap(), z);
    }
    let _ = parse_int_list(input);
});
