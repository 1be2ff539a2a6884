#![no_main]

use libfuzzer_sys::fuzz_target;

use ffcovar::characters::{CharacterRecord, UnitGroup};
use ffcovar::fq::FieldParams;

fuzz_target!(|input: &str| {
    let Ok(rec) = CharacterRecord::from_json(input) else {
        return;
    };
    assert_eq!(CharacterRecord::from_json(&rec.to_json()).unwrap(), rec);
    // Rebuilding values must validate, never panic; keep groups small.
    let Ok(field) = FieldParams::new(rec.q) else {
        return;
    };
    if let Ok(group) = UnitGroup::new(field, rec.m, 4096) {
        if let Ok(chi) = group.character_from_record(&rec) {
            assert_eq!(chi.record(), rec);
        }
    }
});
