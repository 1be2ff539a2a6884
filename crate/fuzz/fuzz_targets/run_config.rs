#![no_main]

use libfuzzer_sys::fuzz_target;

use ffcovar_cli::{config_to_args, parse_run_config};

fuzz_target!(|input: &str| {
    if let Ok(entries) = parse_run_config(input) {
        for e in &entries {
            assert!(!e.key.is_empty() && !e.key.starts_with('-'));
            assert_ne!(e.key, "config");
        }
        let args = config_to_args(&entries);
        assert!(args.len() <= 2 * entries.len());
    }
});
