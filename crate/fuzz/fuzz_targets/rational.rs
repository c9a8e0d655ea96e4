#![no_main]

use cyclic_stab::polymat::Q;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = s.parse::<Q>() {
        assert_eq!(q.to_string().parse::<Q>().unwrap(), q);
    }
    if let Ok(q) = serde_json::from_str::<Q>(s) {
        assert_eq!(serde_json::from_str::<Q>(&serde_json::to_string(&q).unwrap()).unwrap(), q);
    }
});
