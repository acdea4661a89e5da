#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::gauss_diagram::parse_pattern_file;

fuzz_target!(|data: &str| {
    let _ = parse_pattern_file(data);
});
