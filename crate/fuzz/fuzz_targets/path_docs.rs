#![no_main]

use cyclic_stab::cli::LoopsDoc;
use cyclic_stab::stab::PathDoc;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<PathDoc>(data) {
        assert_eq!(serde_json::from_str::<PathDoc>(&serde_json::to_string(&p).unwrap()).unwrap(), p);
    }
    let _ = serde_json::from_slice::<LoopsDoc>(data);
});
