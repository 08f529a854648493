#![no_main]

use dompoly::dominance::{decide, decide_with, Algorithm, DecideOptions};
use dompoly::IntPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // one byte per coefficient, leading first, degree at most 7
    let coeffs: Vec<i64> = data.iter().take(8).map(|&b| b as i8 as i64).collect();
    if coeffs.len() < 2 || coeffs[0] == 0 {
        return;
    }
    let f = IntPolynomial::from_i64s(&coeffs);
    let v = decide(&f).expect("decides");
    let simple = DecideOptions {
        algorithm: Algorithm::Simple,
        filters: false,
    };
    assert_eq!(decide_with(&f, &simple).expect("decides").dominant, v.dominant);
    assert_eq!(decide(&f.negate_argument()).expect("decides").dominant, v.dominant);
});
