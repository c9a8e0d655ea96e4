#![no_main]

use cyclic_stab::cli::Config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = toml::from_str::<Config>(s);
});
