#![no_main]
use libfuzzer_sys::fuzz_target;
use qweyl::coeff::RatFunc;

fuzz_target!(|data: &str| {
    if let Ok(f) = data.parse::<RatFunc>() {
        let again: RatFunc = f.to_string().parse().expect("display output parses");
        assert_eq!(again, f);
    }
});
