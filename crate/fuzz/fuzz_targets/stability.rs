#![no_main]

use std::sync::OnceLock;

use cyclic_stab::catgraph::CategoryPresentation;
use cyclic_stab::mf::build_an_equivariant;
use cyclic_stab::stab::{validate_stability, StabilityCondition};
use libfuzzer_sys::fuzz_target;

fn a2() -> &'static CategoryPresentation {
    static C: OnceLock<CategoryPresentation> = OnceLock::new();
    C.get_or_init(|| build_an_equivariant(2, 3).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = serde_json::from_slice::<StabilityCondition>(data) else { return };
    if s.triple.check_ids(a2()).is_ok() {
        let _ = validate_stability(&s, a2(), None);
    }
});
