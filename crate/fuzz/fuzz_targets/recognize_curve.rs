#![no_main]

use cai_core::recognize::recognize;
use cai_core::{parse_unipoly, ParamCurve};
use libfuzzer_sys::fuzz_target;

/// Larger degrees make exact arithmetic slow without finding new paths.
const MAX_DEGREE: usize = 16;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Some((x, y)) = s.split_once('\n') else { return };
    let (Ok(x), Ok(y)) = (parse_unipoly(x), parse_unipoly(y)) else { return };
    if x.degree().unwrap_or(0) > MAX_DEGREE || y.degree().unwrap_or(0) > MAX_DEGREE {
        return;
    }
    let curve = ParamCurve::new(x, y);
    if let Ok(r) = recognize(&curve) {
        let residual = r.defining().eval_composed(&[curve.x.clone(), curve.y.clone()]).unwrap();
        assert!(residual.is_zero());
    }
});
