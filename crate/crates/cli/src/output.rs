// SPDX-License-Identifier: Apache-2.0

//! Number presentation: 12 significant digits by default, 12 decimal places
//! where a fixed layout is wanted.

use serde_json::value::RawValue;

/// Rounds to 12 significant digits. Negative zero becomes zero.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// A JSON number written with exactly 12 decimal places.
pub fn fixed12(x: f64) -> Box<RawValue> {
    let mut s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s.remove(0);
    }
    RawValue::from_string(s).expect("decimal literal is valid JSON")
}

pub fn fixed12_vec(xs: impl IntoIterator<Item = f64>) -> Vec<Box<RawValue>> {
    xs.into_iter().map(fixed12).collect()
}

/// CSV cell for a value already passed through [`sig12`]: plain decimals in a
/// readable range, exponent notation outside it.
pub fn csv_number(x: f64) -> String {
    let x = sig12(x);
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
