#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // auto-detecting entry point (text fixture or JSON); must never
        // panic, and anything it accepts must survive validation too
        if let Ok(m) = gausschan::io::parse_matrix(s) {
            let _ = gausschan::symplectic::CovarianceMatrix::new(m);
        }
    }
});
