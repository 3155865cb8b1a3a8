//! Cosines at rational multiples of pi.

use std::f64::consts::PI;

/// `cos(n * pi / m)`.
///
/// The angle is reduced modulo `2 pi` in integers and folded into
/// `[0, pi / 4]` before any floating-point work, so the multiples of `pi / 2`
/// come out exact and symmetric angles give bitwise-identical magnitudes.
pub fn cos_pi_ratio(n: i64, m: u64) -> f64 {
    assert!(m > 0, "denominator must be positive");
    let m = m as i128;
    let mut n = (n as i128).rem_euclid(2 * m);
    if n > m {
        n = 2 * m - n;
    }
    if n == 0 {
        return 1.0;
    }
    if n == m {
        return -1.0;
    }
    if 2 * n == m {
        return 0.0;
    }
    if 2 * n > m {
        return -folded(m - n, m);
    }
    folded(n, m)
}

// 0 < n < m / 2
fn folded(n: i128, m: i128) -> f64 {
    if 4 * n > m {
        (((m - 2 * n) as f64) * PI / ((2 * m) as f64)).sin()
    } else {
        ((n as f64) * PI / (m as f64)).cos()
    }
}

/// Table of `cos(k * pi / m)` for `k = 0..=2m - 1`.
pub fn cos_table(m: u64) -> Vec<f64> {
    (0..2 * m as i64).map(|k| cos_pi_ratio(k, m)).collect()
}
