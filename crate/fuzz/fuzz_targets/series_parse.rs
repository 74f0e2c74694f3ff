#![no_main]
use libfuzzer_sys::fuzz_target;
use qweyl::coeff::Series;

fuzz_target!(|data: &str| {
    if let Ok(s) = data.parse::<Series>() {
        let again: Series = s.to_string().parse().expect("display output parses");
        assert_eq!(again, s);
    }
});
