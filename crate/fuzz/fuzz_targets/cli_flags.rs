#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let args: Vec<&str> = data.split(['\n', ' ', '\0']).filter(|a| !a.is_empty()).collect();
    // --config reads a file; keep the fuzzer away from the filesystem
    if args.iter().any(|a| a.starts_with("--config") || a.starts_with("--out")) {
        return;
    }
    let argv = std::iter::once("qweyl").chain(args);
    if let Ok(Some(c)) = qweyl_cli::config_from_args(argv) {
        c.validate().expect("accepted flags give a valid config");
    }
});
