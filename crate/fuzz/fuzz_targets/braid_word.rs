#![no_main]
use libfuzzer_sys::fuzz_target;
use qweyl::braid::{include_sl_in_gl, Alphabet, BraidWord};

fuzz_target!(|data: &str| {
    for default in [Alphabet::Sl, Alphabet::Gl] {
        let Ok(w) = BraidWord::parse(data, default) else { continue };
        // printed words parse back to themselves
        let again = BraidWord::parse(&w.to_string(), w.alphabet).expect("display output parses");
        assert_eq!(again, w);
        assert!(w.concat(&w.inverse()).unwrap().is_empty());
        if w.alphabet == Alphabet::Sl {
            let _ = include_sl_in_gl(&w);
        }
    }
});
