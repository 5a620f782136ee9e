use std::fs::File;
use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64;
use serde::Serialize;
use voidsurf::linalg::{CMat3, CVec3};
use voidsurf::secular::SecularScan;
use voidsurf::wavefield::FieldSample;

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` rounded to six significant digits, for human-readable reports.
pub fn short(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let digits = 5 - x.abs().log10().floor() as i32;
    if (0..=10).contains(&digits) {
        let s = format!("{:.*}", digits as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).with_context(|| format!("cannot create {}", path.display()))
}

pub fn write_scan(path: &Path, scan: &SecularScan) -> Result<()> {
    let mut w = csv_writer(path)?;
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    match &scan.legacy_values {
        Some(legacy) => {
            w.write_record(["v", "det_M", "R_legacy"])?;
            for ((v, d), r) in scan.speeds.iter().zip(&scan.det_values).zip(legacy) {
                w.write_record([num(*v), opt(*d), opt(*r)])?;
            }
        }
        None => {
            w.write_record(["v", "det_M"])?;
            for (v, d) in scan.speeds.iter().zip(&scan.det_values) {
                w.write_record([num(*v), opt(*d)])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_field(path: &Path, samples: &[FieldSample]) -> Result<()> {
    let mut w = csv_writer(path)?;
    w.write_record(["x1", "x2", "u1", "u2", "zeta"])?;
    for s in samples {
        w.write_record([num(s.x1), num(s.x2), num(s.u1), num(s.u2), num(s.zeta)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Complex numbers are stored as `[re, im]` pairs.
pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn matrix(m: &CMat3) -> [[Pair; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| pair(m[(i, j)])))
}

pub fn vector(v: &CVec3) -> [Pair; 3] {
    std::array::from_fn(|i| pair(v[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn num_has_seventeen_significant_digits() {
        let s = num(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        for x in [0.1 + 0.2, -1.0 / 3.0, 6.02e23, 5e-324] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn short_uses_six_significant_digits() {
        assert_eq!(short(323.0769230769231), "323.077");
        assert_eq!(short(5815.384615384614), "5815.38");
        assert_eq!(short(0.24287597360131313), "0.242876");
        assert_eq!(short(1.5), "1.5");
        assert_eq!(short(-969.230769230769), "-969.231");
    }
}
