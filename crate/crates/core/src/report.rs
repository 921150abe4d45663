//! Fixed-precision number formatting for JSON reports.

use serde::Serializer;

pub fn round6(x: f64) -> f64 {
    let r = (x * 1e6).round() / 1e6;
    // Avoid printing -0.0.
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn round2(x: f64) -> f64 {
    let r = (x * 1e2).round() / 1e2;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn fixed6<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round6(*x))
}

pub fn fixed6_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_f64(round6(*v)),
        None => s.serialize_none(),
    }
}

pub fn fixed6_array<S: Serializer, const N: usize>(x: &[f64; N], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| round6(*v)))
}
