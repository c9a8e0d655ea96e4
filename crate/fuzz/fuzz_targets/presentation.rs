#![no_main]

use cyclic_stab::catgraph::{cycle_basis, CategoryPresentation, Diagram};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(c) = serde_json::from_slice::<CategoryPresentation>(data) else { return };
    if c.validate().is_ok() {
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<CategoryPresentation>(&text).unwrap(), c);
        if let Ok(d) = Diagram::full(&c) {
            let _ = cycle_basis(&d);
        }
    }
});
