#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::knot_codes::{parse_knot_table, parse_knot_table_line};

fuzz_target!(|data: &str| {
    let Ok(records) = parse_knot_table(data) else { return };
    for rec in records {
        assert_eq!(parse_knot_table_line(&rec.to_json_line(), 1).ok(), Some(rec));
    }
});
