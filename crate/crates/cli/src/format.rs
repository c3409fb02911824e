//! Fixed number formatting shared by every report: 12 significant digits in
//! scientific notation, negative zero printed as zero.

use num_complex::Complex64;

pub fn real(x: f64) -> String {
    format!("{:.11e}", x + 0.0)
}

pub fn complex(z: Complex64) -> String {
    format!("{:.11e}{:+.11e}i", z.re + 0.0, z.im + 0.0)
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}
