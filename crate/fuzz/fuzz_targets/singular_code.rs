#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::knot_codes::parse_singular_code;
use vassiliev::weight_systems::resolve_singular;

fuzz_target!(|data: &str| {
    let Ok(code) = parse_singular_code(data) else { return };
    if code.double_points().len() <= 6 {
        let terms = resolve_singular(&code);
        assert_eq!(terms.len(), 1 << code.double_points().len());
    }
});
