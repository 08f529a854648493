#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = dompoly::parse_poly(text) {
        assert!(!f.leading().eq(&0.into()));
        let again = dompoly::parse_poly(&f.to_string()).expect("display round-trips");
        assert_eq!(again, f);
    }
});
