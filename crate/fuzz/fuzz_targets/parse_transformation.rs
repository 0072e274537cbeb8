#![no_main]
use libfuzzer_sys::fuzz_target;
use orddec::Transformation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(t) = text.parse::<Transformation>() {
        let line = t.to_string();
        let again: Transformation = line.parse().expect("formatted line parses");
        assert_eq!(again, t);
        assert_eq!(Transformation::parse_with_len(&line, t.n()).unwrap(), t);
        assert!(t.images().iter().all(|&v| v >= 1 && v as usize <= t.n()));
    }
});
