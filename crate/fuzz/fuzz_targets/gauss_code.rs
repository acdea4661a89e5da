#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::invariants::invariant_report;
use vassiliev::knot_codes::parse_gauss_code;

fuzz_target!(|data: &str| {
    let Ok(code) = parse_gauss_code(data) else { return };
    assert_eq!(parse_gauss_code(&code.to_string()).as_ref(), Ok(&code));
    // Keep the pattern sums cheap.
    if code.len() <= 16 {
        let _ = invariant_report(&code);
    }
});
