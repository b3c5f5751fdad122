#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    g2real_fuzz::cubic_elem(data);
});
