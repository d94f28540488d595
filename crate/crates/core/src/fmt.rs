//! Numeric text formatting shared by the CSV and JSON emitters.
//!
//! Every float is printed as `{:.16e}` (17 significant digits, '.' decimal,
//! no locale), which both CSV readers and JSON parsers accept and which
//! roundtrips any f64 exactly. A fixed format keeps outputs byte-identical
//! across runs and worker counts.

pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}
