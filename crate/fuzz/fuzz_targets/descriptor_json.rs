#![no_main]
use libfuzzer_sys::fuzz_target;
use orddec::MaximalDescriptor;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(d) = MaximalDescriptor::from_json(text) {
        let json = d.to_json();
        assert_eq!(MaximalDescriptor::from_json(&json).unwrap(), d);
    }
});
