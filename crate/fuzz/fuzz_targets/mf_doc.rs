#![no_main]

use cyclic_stab::mf::{MatrixFactorization, MfDoc};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = serde_json::from_slice::<MfDoc>(data) else { return };
    if let Ok(x) = MatrixFactorization::from_doc(&doc) {
        assert_eq!(MatrixFactorization::from_doc(&x.to_doc()).unwrap(), x);
    }
});
