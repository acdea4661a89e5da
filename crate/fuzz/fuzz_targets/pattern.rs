#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::gauss_diagram::parse_pattern;

fuzz_target!(|data: &str| {
    let Ok(p) = parse_pattern(data) else { return };
    assert_eq!(p.n_endpoints(), 2 * p.arrow_count());
    let _ = p.distinct_rotations();
});
