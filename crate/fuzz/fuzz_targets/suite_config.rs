#![no_main]
use libfuzzer_sys::fuzz_target;
use qweyl::report::SuiteConfig;

fuzz_target!(|data: &str| {
    // Invalid input must come back as an error, never a panic.
    if let Ok(c) = SuiteConfig::from_json(data) {
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(SuiteConfig::from_json(&text).unwrap(), c);
    }
});
