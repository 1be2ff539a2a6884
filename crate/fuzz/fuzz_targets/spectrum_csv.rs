#![no_main]

//! Accepted spectrum files re-encode to files that decode to the same data.

use libfuzzer_sys::fuzz_target;

use ffcovar::lfunc::{read_spectrum_csv, write_spectrum_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(spectra) = read_spectrum_csv(data) else {
        return;
    };
    let mut buf = Vec::new();
    write_spectrum_csv(&spectra, &mut buf).unwrap();
    assert_eq!(read_spectrum_csv(&buf[..]).unwrap(), spectra);
});
