#![no_main]

use std::sync::OnceLock;

use cyclic_stab::catgraph::CategoryPresentation;
use cyclic_stab::charge::{maslov_indices, validate_triple, ChargeTriple};
use cyclic_stab::mf::build_an_equivariant;
use libfuzzer_sys::fuzz_target;

fn a2() -> &'static CategoryPresentation {
    static C: OnceLock<CategoryPresentation> = OnceLock::new();
    C.get_or_init(|| build_an_equivariant(2, 3).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(r) = serde_json::from_slice::<ChargeTriple>(data) else { return };
    if r.check_ids(a2()).is_ok() {
        let _ = validate_triple(&r, a2());
        let _ = maslov_indices(&r, a2());
    }
});
