#![no_main]

use dompoly::batch::batch_line;
use dompoly::dominance::DecideOptions;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // keep decisions cheap: short lines only
    if text.len() > 64 {
        return;
    }
    if let Some(record) = batch_line(1, text, &DecideOptions::default()) {
        let json = record.to_json();
        let back: serde_json::Value = serde_json::from_str(&json).expect("record is JSON");
        assert_eq!(back["line"], 1);
    }
});
