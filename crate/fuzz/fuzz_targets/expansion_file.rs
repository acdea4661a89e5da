#![no_main]

use libfuzzer_sys::fuzz_target;
use vassiliev::vassiliev_module::parse_expansion;

fuzz_target!(|data: &str| {
    let Ok(e) = parse_expansion(data) else { return };
    assert_eq!(parse_expansion(&e.to_json()).ok(), Some(e));
});
