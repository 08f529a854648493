#![no_main]

use dompoly::bistritz::count_outside_int;
use dompoly::IntPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let coeffs: Vec<i64> = data
        .chunks_exact(2)
        .take(10)
        .map(|c| i16::from_le_bytes([c[0], c[1]]) as i64)
        .collect();
    if coeffs.is_empty() || coeffs[0] == 0 {
        return;
    }
    let f = IntPolynomial::from_i64s(&coeffs);
    if let Ok(report) = count_outside_int(&f) {
        if let Some(nu) = report.outside_count() {
            assert!(nu <= f.degree());
        }
    }
});
